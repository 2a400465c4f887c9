#pragma once

// Internal single-source shortest paths over weights scaled to integers.

#include <optional>
#include <vector>

#include "metric_mend/graph.hpp"

namespace metric_mend::detail {

struct IntegerTree {
    std::vector<mpz_class> dist;
    std::vector<bool> reached;
    std::vector<PathCount> count;              // empty unless counts were requested
    std::vector<std::optional<EdgeId>> parent;  // edge used to reach each vertex
};

/// Dijkstra with the dense O(n^2 + m) frontier scan; the graph sizes we care
/// about are small enough that a heap buys nothing. Weights must be
/// nonnegative; path counts additionally require strictly positive weights.
class IntegerDijkstra {
public:
    explicit IntegerDijkstra(const Graph& g);

    [[nodiscard]] const mpz_class& scale() const { return scale_; }
    [[nodiscard]] const mpz_class& scaled_weight(EdgeId id) const { return weights_[id]; }
    [[nodiscard]] Weight unscale(const mpz_class& value) const { return Weight(value, scale_); }

    /// Edges flagged in `excluded` are ignored.
    [[nodiscard]] IntegerTree run(VertexId source, const std::vector<bool>* excluded, bool with_counts) const;

private:
    const Graph& graph_;
    mpz_class scale_;
    std::vector<mpz_class> weights_;
};

}  // namespace metric_mend::detail
