#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "metric_mend/weight.hpp"

namespace metric_mend {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

/// Sorted, duplicate-free list of edge ids.
using EdgeSet = std::vector<EdgeId>;

/// Raised when a graph would violate its structural invariants.
class GraphError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when an algorithm reaches a state its correctness argument rules out.
class InternalInconsistency : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Undirected edge with u < v.
struct Edge {
    VertexId u = 0;
    VertexId v = 0;
    Weight weight;

    [[nodiscard]] VertexId other(VertexId x) const { return x == u ? v : u; }
    friend bool operator==(const Edge&, const Edge&) = default;
};

struct Incidence {
    VertexId neighbor;
    EdgeId edge;
};

/// Simple undirected graph with exact nonnegative weights.
///
/// Edges are stored sorted by (u, v), so an EdgeId is also the edge's rank in
/// lexicographic order. That rank is the tie-break order used throughout.
/// The graph is immutable once built; derive modified copies with
/// with_weight() / subgraph().
class Graph {
public:
    Graph() = default;
    /// Edges may be given in any orientation and order. Throws GraphError on
    /// self-loops, parallel edges, out-of-range ids or negative weights.
    Graph(std::size_t vertex_count, std::vector<Edge> edges);

    [[nodiscard]] std::size_t vertex_count() const { return vertex_count_; }
    [[nodiscard]] std::size_t edge_count() const { return edges_.size(); }
    [[nodiscard]] std::span<const Edge> edges() const { return edges_; }
    [[nodiscard]] const Edge& edge(EdgeId id) const { return edges_.at(id); }
    [[nodiscard]] const Weight& weight(EdgeId id) const { return edges_.at(id).weight; }
    [[nodiscard]] std::span<const Incidence> neighbors(VertexId v) const { return adjacency_.at(v); }
    [[nodiscard]] std::optional<EdgeId> find_edge(VertexId a, VertexId b) const;

    /// Largest edge weight, or zero for an edgeless graph.
    [[nodiscard]] Weight max_weight() const;
    [[nodiscard]] bool all_weights_positive() const;

    [[nodiscard]] Graph with_weight(EdgeId id, Weight w) const;
    [[nodiscard]] Graph with_weights(std::vector<Weight> weights) const;

    /// Keeps only edges with keep[id] set. Edge ids are renumbered; the
    /// returned map sends each new id to its id in *this.
    [[nodiscard]] Graph subgraph(const std::vector<bool>& keep, std::vector<EdgeId>* origin = nullptr) const;

    /// Every weight multiplied by factor (factor > 0).
    [[nodiscard]] Graph scaled(const Weight& factor) const;

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.vertex_count_ == b.vertex_count_ && a.edges_ == b.edges_;
    }

private:
    std::size_t vertex_count_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<Incidence>> adjacency_;
};

/// Least common multiple of all edge-weight denominators (1 for an edgeless graph).
mpz_class common_denominator(const Graph& g);

/// Membership mask over the edges of g.
std::vector<bool> edge_mask(const Graph& g, std::span<const EdgeId> edges);

/// Sorts and deduplicates; throws GraphError on ids outside g.
EdgeSet normalize_edge_set(const Graph& g, std::vector<EdgeId> edges);

/// "(u,v)" for diagnostics.
std::string describe_edge(const Graph& g, EdgeId id);

}  // namespace metric_mend
