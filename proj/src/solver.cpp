#include "metric_mend/solver.hpp"

#include <algorithm>
#include <stdexcept>

namespace metric_mend {

std::string to_string(ProblemKind kind) {
    switch (kind) {
        case ProblemKind::gmvd: return "gmvd";
        case ProblemKind::gmvid: return "gmvid";
        case ProblemKind::gmvdd: return "gmvdd";
    }
    return "?";
}

std::optional<ProblemKind> parse_problem_kind(std::string_view text) {
    if (text == "gmvd") return ProblemKind::gmvd;
    if (text == "gmvid") return ProblemKind::gmvid;
    if (text == "gmvdd") return ProblemKind::gmvdd;
    return std::nullopt;
}

CoverKind required_cover(ProblemKind kind) {
    switch (kind) {
        case ProblemKind::gmvd: return CoverKind::regular;
        case ProblemKind::gmvid: return CoverKind::nontop;
        case ProblemKind::gmvdd: return CoverKind::top;
    }
    throw std::invalid_argument("unknown problem kind");
}

std::string to_string(EdgeRole role) {
    switch (role) {
        case EdgeRole::increase: return "increase";
        case EdgeRole::decrease: return "decrease";
        case EdgeRole::unassigned: return "unassigned";
    }
    return "?";
}

EdgeSet CoverSolution::edge_set() const {
    EdgeSet s(edges.begin(), edges.end());
    std::sort(s.begin(), s.end());
    return s;
}

namespace {

bool is_layer_top(const Edge& f, const DistanceTables& tables, const Weight& delta) {
    return Distance(f.weight) == tables.dist(f.u, f.v) + Distance(delta);
}

void require_counts(const DistanceTables& tables) {
    if (!tables.has_counts()) throw std::invalid_argument("distance tables were built without path counts");
}

// Contribution of candidate top f to the non-top count of e, per orientation.
void add_nontop(const Edge& e, const Edge& f, const Distance& target, const DistanceTables& tables, PathCount& sum) {
    const Distance we(e.weight);
    if (tables.dist(f.u, e.u) + we + tables.dist(e.v, f.v) == target) {
        sum += tables.path_count(f.u, e.u) * tables.path_count(e.v, f.v);
    }
    if (tables.dist(f.v, e.u) + we + tables.dist(e.v, f.u) == target) {
        sum += tables.path_count(f.v, e.u) * tables.path_count(e.v, f.u);
    }
}

}  // namespace

PathCount count_top(const Graph& g, const DistanceTables& tables, const Weight& delta, EdgeId e) {
    require_counts(tables);
    const Edge& edge = g.edge(e);
    if (is_layer_top(edge, tables, delta)) return tables.path_count(edge.u, edge.v);
    return 0;
}

PathCount count_nontop(const Graph& g, const DistanceTables& tables, const Weight& delta, EdgeId e) {
    require_counts(tables);
    const Edge& edge = g.edge(e);
    PathCount sum = 0;
    for (const Edge& f : g.edges()) add_nontop(edge, f, Distance(f.weight - delta), tables, sum);
    return sum;
}

CountReport count_layer(const Graph& g, const DistanceTables& tables, const Weight& delta, ProblemKind kind) {
    require_counts(tables);
    std::vector<EdgeId> tops;
    std::vector<Distance> targets;
    for (EdgeId id = 0; id < g.edge_count(); ++id) {
        if (is_layer_top(g.edge(id), tables, delta)) {
            tops.push_back(id);
            targets.emplace_back(g.weight(id) - delta);
        }
    }

    CountReport report(g.edge_count());
    for (EdgeId id = 0; id < g.edge_count(); ++id) {
        const Edge& e = g.edge(id);
        auto& r = report[id];
        if (std::binary_search(tops.begin(), tops.end(), id)) r.top = tables.path_count(e.u, e.v);
        for (std::size_t k = 0; k < tops.size(); ++k) add_nontop(e, g.edge(tops[k]), targets[k], tables, r.nontop);
        r.count = kind == ProblemKind::gmvid ? r.nontop : r.top + r.nontop;
    }
    return report;
}

CoverSolution greedy_solve(const Graph& g, ProblemKind kind) {
    if (kind == ProblemKind::gmvdd) throw std::invalid_argument("greedy_solve handles gmvd and gmvid only");
    if (!g.all_weights_positive()) throw GraphError("instance weights must be strictly positive");

    CoverSolution solution;
    solution.kind = kind;
    std::vector<bool> alive(g.edge_count(), true);

    while (true) {
        std::vector<EdgeId> origin;
        Graph work = g.subgraph(alive, &origin);
        auto tables = all_pairs_shortest_paths(work);
        Weight delta = graph_deficit(work, tables);
        if (delta.is_zero()) break;

        auto counts = count_layer(work, tables, delta, kind);
        // Working ids preserve lexicographic order, so the first maximum is the tie-break winner.
        EdgeId best = 0;
        for (EdgeId id = 1; id < counts.size(); ++id) {
            if (counts[id].count > counts[best].count) best = id;
        }
        if (counts.empty() || counts[best].count == 0) {
            throw InternalInconsistency("graph deficit is " + delta.to_string() +
                                        " but no edge lies on a cycle of that deficit");
        }

        if (solution.layer_deficits.empty() || solution.layer_deficits.back() != delta) {
            solution.layer_deficits.push_back(delta);
        }
        const EdgeId chosen = origin[best];
        solution.steps.push_back({chosen, delta, counts[best].count});
        solution.edges.push_back(chosen);
        solution.roles.push_back(kind == ProblemKind::gmvid ? EdgeRole::increase : EdgeRole::unassigned);
        alive[chosen] = false;
    }
    return solution;
}

EdgeSet solve_decrease_only(const Graph& g, const DistanceTables& tables) { return overweight_edges(g, tables); }

CoverSolution solve(const Graph& g, ProblemKind kind) {
    if (kind != ProblemKind::gmvdd) return greedy_solve(g, kind);
    CoverSolution solution;
    solution.kind = kind;
    auto tables = all_pairs_shortest_paths(g, PathCounting::distances_only);
    solution.edges = solve_decrease_only(g, tables);
    solution.roles.assign(solution.edges.size(), EdgeRole::decrease);
    if (Weight delta = graph_deficit(g, tables); delta.is_positive()) solution.layer_deficits.push_back(delta);
    return solution;
}

}  // namespace metric_mend
