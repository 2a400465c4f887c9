#include "metric_mend/shortest_paths.hpp"

#include "dijkstra.hpp"

namespace metric_mend {

DistanceTables::DistanceTables(std::size_t n, std::vector<Distance> dist, std::vector<PathCount> counts)
    : n_(n), dist_(std::move(dist)), counts_(std::move(counts)) {}

DistanceTables all_pairs_shortest_paths(const Graph& g, PathCounting counting) {
    const bool with_counts = counting == PathCounting::with_counts;
    if (with_counts && !g.all_weights_positive()) {
        throw GraphError("shortest-path counts require strictly positive weights");
    }
    const std::size_t n = g.vertex_count();
    detail::IntegerDijkstra search(g);
    std::vector<Distance> dist(n * n, Distance::infinity());
    std::vector<PathCount> counts;
    if (with_counts) counts.assign(n * n, 0);

    for (VertexId s = 0; s < n; ++s) {
        auto tree = search.run(s, nullptr, with_counts);
        for (VertexId v = 0; v < n; ++v) {
            if (!tree.reached[v]) continue;
            dist[s * n + v] = search.unscale(tree.dist[v]);
            if (with_counts) counts[s * n + v] = std::move(tree.count[v]);
        }
    }
    return DistanceTables(n, std::move(dist), std::move(counts));
}

Weight graph_deficit(const Graph& g, const DistanceTables& tables) {
    Weight best;
    for (const auto& e : g.edges()) {
        const Distance& d = tables.dist(e.u, e.v);
        // The edge itself is a u-v path, so d is finite and at most w(e).
        Weight gap = e.weight - d.weight();
        if (gap > best) best = std::move(gap);
    }
    return best;
}

Weight graph_deficit(const Graph& g) {
    return graph_deficit(g, all_pairs_shortest_paths(g, PathCounting::distances_only));
}

bool is_metric(const Graph& g) { return graph_deficit(g).is_zero(); }

EdgeSet overweight_edges(const Graph& g, const DistanceTables& tables) {
    EdgeSet out;
    for (EdgeId id = 0; id < g.edge_count(); ++id) {
        const auto& e = g.edge(id);
        if (Distance(e.weight) > tables.dist(e.u, e.v)) out.push_back(id);
    }
    return out;
}

Distance shortest_distance(const Graph& g, VertexId a, VertexId b, const std::vector<bool>& excluded) {
    detail::IntegerDijkstra search(g);
    auto tree = search.run(a, &excluded, false);
    if (!tree.reached[b]) return Distance::infinity();
    return search.unscale(tree.dist[b]);
}

}  // namespace metric_mend
