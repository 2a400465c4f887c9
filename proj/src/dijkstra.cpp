#include "dijkstra.hpp"

namespace metric_mend::detail {

IntegerDijkstra::IntegerDijkstra(const Graph& g) : graph_(g), scale_(common_denominator(g)) {
    weights_.reserve(g.edge_count());
    for (const auto& e : g.edges()) {
        mpq_class scaled = e.weight.value() * scale_;
        weights_.push_back(scaled.get_num());
    }
}

IntegerTree IntegerDijkstra::run(VertexId source, const std::vector<bool>* excluded, bool with_counts) const {
    const std::size_t n = graph_.vertex_count();
    IntegerTree tree;
    tree.dist.assign(n, 0);
    tree.reached.assign(n, false);
    tree.parent.assign(n, std::nullopt);
    if (with_counts) tree.count.assign(n, 0);
    std::vector<bool> done(n, false);

    tree.reached[source] = true;
    if (with_counts) tree.count[source] = 1;

    for (std::size_t round = 0; round < n; ++round) {
        std::size_t best = n;
        for (std::size_t v = 0; v < n; ++v) {
            if (done[v] || !tree.reached[v]) continue;
            if (best == n || tree.dist[v] < tree.dist[best]) best = v;
        }
        if (best == n) break;
        done[best] = true;
        for (const auto& [nb, id] : graph_.neighbors(static_cast<VertexId>(best))) {
            if (excluded && (*excluded)[id]) continue;
            if (done[nb]) continue;
            mpz_class candidate = tree.dist[best] + weights_[id];
            if (!tree.reached[nb] || candidate < tree.dist[nb]) {
                tree.reached[nb] = true;
                tree.dist[nb] = std::move(candidate);
                tree.parent[nb] = id;
                if (with_counts) tree.count[nb] = tree.count[best];
            } else if (with_counts && candidate == tree.dist[nb]) {
                tree.count[nb] += tree.count[best];
            }
        }
    }
    return tree;
}

}  // namespace metric_mend::detail
