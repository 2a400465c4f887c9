#include "metric_mend/oracle.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>

namespace metric_mend::oracle {

namespace {

class Meter {
public:
    explicit Meter(OracleBudget budget) : max_(budget.max_work) {}
    void tick() {
        if (++used_ > max_) throw BudgetExceeded("oracle work budget of " + std::to_string(max_) + " exceeded");
    }

private:
    std::uint64_t used_ = 0;
    std::uint64_t max_;
};

using Adjacency = std::vector<std::vector<Incidence>>;

Adjacency sorted_adjacency(const Graph& g) {
    Adjacency adj(g.vertex_count());
    for (EdgeId id = 0; id < g.edge_count(); ++id) {
        const Edge& e = g.edge(id);
        adj[e.u].push_back({e.v, id});
        adj[e.v].push_back({e.u, id});
    }
    for (auto& list : adj) {
        std::sort(list.begin(), list.end(), [](const Incidence& a, const Incidence& b) { return a.neighbor < b.neighbor; });
    }
    return adj;
}

// cycle_vertices[i] and cycle_vertices[i+1] (cyclically) are joined by cycle_edges[i].
std::optional<CycleWitness> classify(const Graph& g, const std::vector<VertexId>& cycle_vertices,
                                     const std::vector<EdgeId>& cycle_edges) {
    const std::size_t k = cycle_edges.size();
    std::size_t top_pos = 0;
    for (std::size_t i = 1; i < k; ++i) {
        const Weight& w = g.weight(cycle_edges[i]);
        const Weight& best = g.weight(cycle_edges[top_pos]);
        if (w > best || (w == best && cycle_edges[i] < cycle_edges[top_pos])) top_pos = i;
    }
    Weight rest(0);
    for (std::size_t i = 0; i < k; ++i) {
        if (i != top_pos) rest += g.weight(cycle_edges[i]);
    }
    Weight deficit = g.weight(cycle_edges[top_pos]) - rest;
    if (!deficit.is_positive()) return std::nullopt;

    CycleWitness c;
    c.top = cycle_edges[top_pos];
    c.deficit = deficit;
    // Walking forward from the top's far vertex ends at its near vertex.
    for (std::size_t step = 1; step < k; ++step) c.nontop.push_back(cycle_edges[(top_pos + step) % k]);
    const VertexId far = cycle_vertices[(top_pos + 1) % k];
    if (far != g.edge(c.top).u) std::reverse(c.nontop.begin(), c.nontop.end());
    return c;
}

struct CycleSearch {
    const Graph& g;
    const Adjacency& adj;
    std::optional<std::size_t> max_len;
    Meter& meter;
    CycleInventory& out;
    std::vector<VertexId> vertices;
    std::vector<EdgeId> edges;
    std::vector<bool> on_path;

    void extend(VertexId root, VertexId current) {
        for (const auto& [next, id] : adj[current]) {
            meter.tick();
            if (next == root) {
                // Each cycle is seen in both directions; keep the one whose second vertex is smaller than its last.
                if (vertices.size() >= 3 && vertices[1] < vertices.back()) {
                    edges.push_back(id);
                    if (auto c = classify(g, vertices, edges)) out.cycles.push_back(std::move(*c));
                    edges.pop_back();
                }
                continue;
            }
            if (next < root || on_path[next]) continue;
            if (max_len && edges.size() + 2 > *max_len) continue;
            vertices.push_back(next);
            edges.push_back(id);
            on_path[next] = true;
            extend(root, next);
            on_path[next] = false;
            edges.pop_back();
            vertices.pop_back();
        }
    }
};

struct CoverSearch {
    std::vector<std::vector<EdgeId>> eligible;  // per cycle
    std::vector<EdgeId> last_eligible;
    std::size_t edge_count;
    Meter& meter;

    std::vector<int> hits;  // per edge: how many times chosen (0/1)
    std::vector<EdgeId> chosen;
    std::vector<EdgeSet> found;
    bool first_only = false;

    bool hit(std::size_t c) const {
        return std::any_of(eligible[c].begin(), eligible[c].end(), [&](EdgeId e) { return hits[e] > 0; });
    }

    void search(std::size_t target, EdgeId start) {
        meter.tick();
        // The largest id still worth picking: beyond it some unhit cycle can no longer be hit.
        std::size_t limit = edge_count;
        bool all_hit = true;
        for (std::size_t c = 0; c < eligible.size(); ++c) {
            if (hit(c)) continue;
            all_hit = false;
            limit = std::min<std::size_t>(limit, last_eligible[c] + 1);
        }
        if (all_hit) {
            if (chosen.size() == target) found.push_back(chosen);
            return;
        }
        if (chosen.size() == target) return;
        for (std::size_t i = start; i < limit; ++i) {
            if (edge_count - i < target - chosen.size()) break;
            chosen.push_back(static_cast<EdgeId>(i));
            ++hits[i];
            search(target, static_cast<EdgeId>(i + 1));
            --hits[i];
            chosen.pop_back();
            if (first_only && !found.empty()) return;
        }
    }
};

std::vector<EdgeSet> min_covers(const CycleInventory& inventory, std::size_t edge_count, CoverKind kind,
                                OracleBudget budget, bool first_only) {
    if (kind == CoverKind::top) throw std::invalid_argument("exact search supports regular and nontop covers");
    Meter meter(budget);
    CoverSearch s{{}, {}, edge_count, meter, std::vector<int>(edge_count, 0), {}, {}, first_only};
    for (const auto& c : inventory.cycles) {
        std::vector<EdgeId> el = c.nontop;
        if (kind == CoverKind::regular) el.push_back(c.top);
        std::sort(el.begin(), el.end());
        s.last_eligible.push_back(el.back());
        s.eligible.push_back(std::move(el));
    }
    for (std::size_t target = 0; target <= edge_count; ++target) {
        s.search(target, 0);
        if (!s.found.empty()) return s.found;
    }
    throw std::logic_error("no cover exists, which is impossible for a nonempty edge set");
}

template <typename Feasible>
std::vector<std::size_t> smallest_deletion(std::size_t m, OracleBudget budget, Feasible feasible) {
    Meter meter(budget);
    std::vector<std::size_t> pick;
    std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t target) {
        meter.tick();
        if (pick.size() == target) return feasible(pick);
        for (std::size_t i = start; i + (target - pick.size()) <= m; ++i) {
            pick.push_back(i);
            if (rec(i + 1, target)) return true;
            pick.pop_back();
        }
        return false;
    };
    for (std::size_t target = 0; target <= m; ++target) {
        pick.clear();
        if (rec(0, target)) return pick;
    }
    throw std::logic_error("deleting every edge must be feasible");
}

// Hop distances from `from` over the topology minus `removed`.
std::vector<std::size_t> hops(const reductions::Topology& t, const std::vector<std::size_t>& removed, VertexId from) {
    std::vector<bool> gone(t.edges.size(), false);
    for (std::size_t i : removed) gone.at(i) = true;
    std::vector<std::vector<VertexId>> adj(t.vertex_count);
    for (std::size_t i = 0; i < t.edges.size(); ++i) {
        if (gone[i]) continue;
        adj[t.edges[i].first].push_back(t.edges[i].second);
        adj[t.edges[i].second].push_back(t.edges[i].first);
    }
    constexpr auto unreached = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> dist(t.vertex_count, unreached);
    std::deque<VertexId> queue{from};
    dist[from] = 0;
    while (!queue.empty()) {
        VertexId v = queue.front();
        queue.pop_front();
        for (VertexId w : adj[v]) {
            if (dist[w] == unreached) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

}  // namespace

CycleInventory enumerate_unbalanced_cycles(const Graph& g, std::optional<std::size_t> max_len, OracleBudget budget) {
    Meter meter(budget);
    const Adjacency adj = sorted_adjacency(g);
    CycleInventory inventory;
    CycleSearch search{g, adj, max_len, meter, inventory, {}, {}, std::vector<bool>(g.vertex_count(), false)};
    for (VertexId root = 0; root < g.vertex_count(); ++root) {
        search.vertices = {root};
        search.on_path[root] = true;
        search.extend(root, root);
        search.on_path[root] = false;
    }
    for (const auto& c : inventory.cycles) inventory.distinct_deficits.push_back(c.deficit);
    auto& d = inventory.distinct_deficits;
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
    return inventory;
}

bool covers_inventory(const CycleInventory& inventory, std::span<const EdgeId> cover, CoverKind kind) {
    auto in = [&](EdgeId e) { return std::find(cover.begin(), cover.end(), e) != cover.end(); };
    return std::all_of(inventory.cycles.begin(), inventory.cycles.end(), [&](const CycleWitness& c) {
        const bool top_hit = in(c.top);
        const bool nontop_hit = std::any_of(c.nontop.begin(), c.nontop.end(), in);
        switch (kind) {
            case CoverKind::regular: return top_hit || nontop_hit;
            case CoverKind::nontop: return nontop_hit;
            case CoverKind::top: return top_hit;
        }
        return false;
    });
}

CoverSolution exact_min_cover(const CycleInventory& inventory, std::size_t edge_count, CoverKind kind,
                              OracleBudget budget) {
    CoverSolution solution;
    solution.kind = kind == CoverKind::nontop ? ProblemKind::gmvid : ProblemKind::gmvd;
    solution.edges = min_covers(inventory, edge_count, kind, budget, true).front();
    solution.roles.assign(solution.edges.size(),
                          kind == CoverKind::nontop ? EdgeRole::increase : EdgeRole::unassigned);
    solution.layer_deficits.assign(inventory.distinct_deficits.rbegin(), inventory.distinct_deficits.rend());
    return solution;
}

CoverSolution exact_min_cover(const Graph& g, CoverKind kind, OracleBudget budget) {
    return exact_min_cover(enumerate_unbalanced_cycles(g, std::nullopt, budget), g.edge_count(), kind, budget);
}

std::vector<EdgeSet> all_min_covers(const CycleInventory& inventory, std::size_t edge_count, CoverKind kind,
                                    OracleBudget budget) {
    return min_covers(inventory, edge_count, kind, budget, false);
}

PathCount brute_count(const CycleInventory& inventory, const Weight& delta, EdgeId e, CycleRole role) {
    PathCount n = 0;
    for (const auto& c : inventory.cycles) {
        if (c.deficit != delta) continue;
        const bool plays = role == CycleRole::top ? c.top == e
                                                  : std::find(c.nontop.begin(), c.nontop.end(), e) != c.nontop.end();
        if (plays) ++n;
    }
    return n;
}

PathCount brute_count(const Graph& g, const Weight& delta, EdgeId e, CycleRole role, OracleBudget budget) {
    return brute_count(enumerate_unbalanced_cycles(g, std::nullopt, budget), delta, e, role);
}

PathCensus brute_shortest_paths(const Graph& g, VertexId a, VertexId b, OracleBudget budget) {
    PathCensus census;
    if (a == b) return {Distance(Weight(0)), 1};
    Meter meter(budget);
    const Adjacency adj = sorted_adjacency(g);
    std::vector<bool> on_path(g.vertex_count(), false);
    std::function<void(VertexId, const Weight&)> walk = [&](VertexId v, const Weight& length) {
        meter.tick();
        if (v == b) {
            Distance d(length);
            if (d < census.distance) {
                census.distance = d;
                census.count = 1;
            } else if (d == census.distance) {
                ++census.count;
            }
            return;
        }
        on_path[v] = true;
        for (const auto& [next, id] : adj[v]) {
            if (!on_path[next]) walk(next, length + g.weight(id));
        }
        on_path[v] = false;
    };
    walk(a, Weight(0));
    return census;
}

bool multicut_feasible(const reductions::MulticutInstance& mc, const std::vector<std::size_t>& removed) {
    for (auto [s, t] : mc.demands) {
        if (hops(mc.graph, removed, s)[t] != std::numeric_limits<std::size_t>::max()) return false;
    }
    return true;
}

bool lbcut_feasible(const reductions::LbCutInstance& lb, const std::vector<std::size_t>& removed) {
    const auto d = hops(lb.graph, removed, lb.source)[lb.sink];
    return d == std::numeric_limits<std::size_t>::max() || d > lb.bound;
}

std::vector<std::size_t> brute_force_multicut(const reductions::MulticutInstance& mc, OracleBudget budget) {
    reductions::validate(mc.graph);
    return smallest_deletion(mc.graph.edges.size(), budget,
                             [&](const std::vector<std::size_t>& r) { return multicut_feasible(mc, r); });
}

std::vector<std::size_t> brute_force_lbcut(const reductions::LbCutInstance& lb, OracleBudget budget) {
    reductions::validate(lb.graph);
    return smallest_deletion(lb.graph.edges.size(), budget,
                             [&](const std::vector<std::size_t>& r) { return lbcut_feasible(lb, r); });
}

}  // namespace metric_mend::oracle
