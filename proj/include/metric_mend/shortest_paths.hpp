#pragma once

#include <vector>

#include "metric_mend/graph.hpp"

namespace metric_mend {

enum class PathCounting { with_counts, distances_only };

/// All-pairs shortest-path distances, and optionally the number of distinct
/// shortest paths for every vertex pair.
///
/// dist(v, v) = 0 and path_count(v, v) = 1. Disconnected pairs have an
/// infinite distance and a zero count.
class DistanceTables {
public:
    DistanceTables() = default;
    DistanceTables(std::size_t n, std::vector<Distance> dist, std::vector<PathCount> counts);

    [[nodiscard]] std::size_t vertex_count() const { return n_; }
    [[nodiscard]] bool has_counts() const { return !counts_.empty(); }
    [[nodiscard]] const Distance& dist(VertexId a, VertexId b) const { return dist_[a * n_ + b]; }
    /// Precondition: has_counts().
    [[nodiscard]] const PathCount& path_count(VertexId a, VertexId b) const { return counts_[a * n_ + b]; }

private:
    std::size_t n_ = 0;
    std::vector<Distance> dist_;
    std::vector<PathCount> counts_;
};

/// Exact distances by repeated single-source search. Counting requires
/// strictly positive weights (a zero-weight edge makes "number of shortest
/// paths" ill-defined) and throws GraphError otherwise.
DistanceTables all_pairs_shortest_paths(const Graph& g, PathCounting counting = PathCounting::with_counts);

/// max over edges of w(e) - d(endpoints), which is never negative.
/// Equals the largest cycle deficit when that is positive, 0 otherwise.
Weight graph_deficit(const Graph& g, const DistanceTables& tables);
Weight graph_deficit(const Graph& g);

/// True iff every edge weight equals the shortest-path distance between its endpoints.
bool is_metric(const Graph& g);

/// Edges with w(e) > d(endpoints): the tops of all unbalanced cycles.
EdgeSet overweight_edges(const Graph& g, const DistanceTables& tables);

/// Shortest distance from a to b ignoring edges flagged in `excluded`.
Distance shortest_distance(const Graph& g, VertexId a, VertexId b, const std::vector<bool>& excluded);

}  // namespace metric_mend
