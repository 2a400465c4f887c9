#include "metric_mend/cover_check.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "dijkstra.hpp"

namespace metric_mend {

bool verify_witness(const Graph& g, const CycleWitness& c, std::string* why) {
    auto fail = [&](const std::string& reason) {
        if (why) *why = reason;
        return false;
    };
    if (c.top >= g.edge_count()) return fail("top edge id out of range");
    if (c.nontop.size() < 2) return fail("cycle has fewer than 3 edges");

    const Edge& top = g.edge(c.top);
    std::vector<bool> used_edge(g.edge_count(), false);
    std::vector<bool> used_vertex(g.vertex_count(), false);
    used_edge[c.top] = true;
    used_vertex[top.u] = true;

    VertexId at = top.u;
    Weight rest;
    for (EdgeId id : c.nontop) {
        if (id >= g.edge_count()) return fail("non-top edge id out of range");
        if (used_edge[id]) return fail("edge repeated in cycle");
        used_edge[id] = true;
        const Edge& e = g.edge(id);
        if (e.u != at && e.v != at) return fail("non-top edges do not form a path");
        at = e.other(at);
        if (used_vertex[at]) return fail("cycle revisits a vertex");
        used_vertex[at] = true;
        if (e.weight >= top.weight) return fail("top edge is not strictly the heaviest");
        rest += e.weight;
    }
    if (at != top.v) return fail("path does not end at the top edge's other endpoint");
    Weight deficit = top.weight - rest;
    if (!deficit.is_positive()) return fail("cycle is balanced");
    if (deficit != c.deficit) return fail("recorded deficit does not match edge weights");
    return true;
}

std::string describe_witness(const Graph& g, const CycleWitness& c) {
    std::ostringstream out;
    out << "top " << describe_edge(g, c.top) << " w=" << g.weight(c.top) << ", path";
    for (EdgeId id : c.nontop) out << ' ' << describe_edge(g, id);
    out << ", deficit " << c.deficit;
    return out.str();
}

std::optional<CycleWitness> find_uncovered_cycle(const Graph& g, std::span<const EdgeId> top_cover,
                                                 std::span<const EdgeId> nontop_cover) {
    const auto in_top = edge_mask(g, top_cover);
    const auto excluded = edge_mask(g, nontop_cover);
    detail::IntegerDijkstra search(g);
    std::map<VertexId, detail::IntegerTree> trees;

    for (EdgeId id = 0; id < g.edge_count(); ++id) {
        if (in_top[id]) continue;
        const Edge& e = g.edge(id);
        auto it = trees.find(e.u);
        if (it == trees.end()) it = trees.emplace(e.u, search.run(e.u, &excluded, false)).first;
        const auto& tree = it->second;
        if (!tree.reached[e.v] || !(tree.dist[e.v] < search.scaled_weight(id))) continue;

        CycleWitness w;
        w.top = id;
        for (VertexId at = e.v; at != e.u;) {
            EdgeId step = *tree.parent[at];
            w.nontop.push_back(step);
            at = g.edge(step).other(at);
        }
        std::reverse(w.nontop.begin(), w.nontop.end());
        w.deficit = search.unscale(search.scaled_weight(id) - tree.dist[e.v]);
        return w;
    }
    return std::nullopt;
}

CoverVerdict validate_cover(const Graph& g, std::span<const EdgeId> cover, CoverKind kind) {
    switch (kind) {
        case CoverKind::regular: return {find_uncovered_cycle(g, cover, cover)};
        case CoverKind::nontop: return {find_uncovered_cycle(g, {}, cover)};
        case CoverKind::top: return {find_uncovered_cycle(g, cover, {})};
    }
    throw std::invalid_argument("unknown cover kind");
}

std::string to_string(CoverKind kind) {
    switch (kind) {
        case CoverKind::regular: return "regular";
        case CoverKind::nontop: return "nontop";
        case CoverKind::top: return "top";
    }
    return "?";
}

std::optional<CoverKind> parse_cover_kind(std::string_view text) {
    if (text == "regular") return CoverKind::regular;
    if (text == "nontop") return CoverKind::nontop;
    if (text == "top") return CoverKind::top;
    return std::nullopt;
}

}  // namespace metric_mend
