#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "metric_mend/graph.hpp"
#include "metric_mend/solver.hpp"

namespace metric_mend::reductions {

using VertexPair = std::pair<VertexId, VertexId>;

/// Unweighted simple graph given as an edge list.
struct Topology {
    std::size_t vertex_count = 0;
    std::vector<VertexPair> edges;
};

/// Delete as few edges as possible so that every demand pair is disconnected.
struct MulticutInstance {
    Topology graph;
    std::vector<VertexPair> demands;
};

/// Delete as few edges as possible so that no source-sink path of length <= bound remains.
struct LbCutInstance {
    Topology graph;
    VertexId source = 0;
    VertexId sink = 0;
    std::uint64_t bound = 1;
};

/// Where an edge of a reduced instance came from.
struct EdgeOrigin {
    enum class Kind {
        source_edge,   // index: edge index in the source topology / input graph
        demand,        // index: demand pair index
        length_bound,  // the added (s,t) edge of an LB-cut reduction
        gadget_left,   // (s_i, v_ij); index: i, gadget: j
        gadget_right   // (t_i, v_ij); index: i, gadget: j
    };
    Kind kind = Kind::source_edge;
    std::size_t index = 0;
    std::size_t gadget = 0;
};

std::string to_string(EdgeOrigin::Kind kind);

struct ReductionArtifact {
    Graph instance;
    ProblemKind kind = ProblemKind::gmvid;
    std::vector<EdgeOrigin> back_map;  // parallel to instance.edges()
    std::vector<EdgeId> added_edges;   // edges not originating from the source's edges
    std::size_t first_added_vertex = 0;  // vertices [first_added_vertex, n) were introduced

    /// Source-edge indices of the cover edges that map back to source edges, sorted.
    [[nodiscard]] std::vector<std::size_t> translate(std::span<const EdgeId> cover) const;
};

/// Unit weights on the source edges, weight n on one new edge per demand pair.
/// Throws GraphError when a demand pair is already an edge (or is not a pair
/// of distinct vertices, or repeats).
ReductionArtifact multicut_to_gmvid(const MulticutInstance& mc);

/// Unit weights on the source edges plus an (s,t) edge of weight bound + 1.
ReductionArtifact lbcut_to_gmvid(const LbCutInstance& lb);

/// For every top edge (s_i,t_i) of an unbalanced cycle, appends |E|+1 gadget
/// vertices v_ij, each joined to s_i with weight L = 1 + max w and to t_i with
/// weight L - w(s_i,t_i). Gadget vertex ids start at n and run over i then j.
/// s_i is the smaller endpoint.
ReductionArtifact gmvid_to_gmvd(const Graph& g);

/// Validates and normalizes a topology (no loops, no parallel edges, ids in range).
void validate(const Topology& t);

// Text formats: the core edge-list header "n m" followed by m lines "u v"
// (an optional trailing weight of 1 is accepted), then either a demand block
//     D k
//     s t      (k lines)
// or a single line "LB s t L".
MulticutInstance parse_multicut(std::string_view text);
LbCutInstance parse_lbcut(std::string_view text);
std::string serialize_multicut(const MulticutInstance& mc);
std::string serialize_lbcut(const LbCutInstance& lb);

/// JSON sidecar describing back_map and the added objects.
std::string back_map_json(const ReductionArtifact& artifact);

/// Parameters for gen_random.
struct RandomGraphParams {
    std::size_t vertex_count = 8;
    Weight density{1};  // edge probability in (0, 1]
    std::uint64_t weight_max = 10;
    std::size_t violations = 0;
    std::uint64_t seed = 0;
    std::uint64_t max_denominator = 1;  // weights are p/q with q <= max_denominator
};

/// Random metric graph with `violations` edges perturbed afterwards.
///
/// Edges appear independently with probability `density`; weights are then
/// replaced by shortest-path distances so the base is metric. Each perturbed
/// edge is either raised by a random positive amount or scaled down by a
/// random factor in (0,1). If the perturbation happens to leave the graph
/// metric it is redrawn (and, failing that, the whole graph is redrawn).
/// Deterministic in the seed. Throws std::invalid_argument on bad parameters
/// or when no violating graph could be produced.
Graph gen_random(const RandomGraphParams& params);

}  // namespace metric_mend::reductions
