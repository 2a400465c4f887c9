#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "metric_mend/cover_check.hpp"
#include "metric_mend/graph.hpp"
#include "metric_mend/shortest_paths.hpp"

namespace metric_mend {

/// gmvd: change any weights; gmvid: increase only; gmvdd: decrease only.
enum class ProblemKind { gmvd, gmvid, gmvdd };

std::string to_string(ProblemKind kind);
std::optional<ProblemKind> parse_problem_kind(std::string_view text);

/// The cover notion a valid solution of this kind must satisfy.
CoverKind required_cover(ProblemKind kind);

enum class EdgeRole { increase, decrease, unassigned };
std::string to_string(EdgeRole role);

/// Per-edge cycle counts at one deficit layer.
struct EdgeCounts {
    PathCount top;     // cycles of the layer deficit whose top edge is e
    PathCount nontop;  // cycles of the layer deficit containing e as a non-top edge
    PathCount count;   // top + nontop for gmvd, nontop for gmvid
};
using CountReport = std::vector<EdgeCounts>;

/// Number of unbalanced cycles of deficit `delta` with top edge e, where
/// delta must be the graph deficit: csp(s,t) if w(e) = d(s,t) + delta, else 0.
PathCount count_top(const Graph& g, const DistanceTables& tables, const Weight& delta, EdgeId e);

/// Number of unbalanced cycles of deficit `delta` (the graph deficit)
/// containing e = (s,t) as a non-top edge. Linear scan over candidate top
/// edges f = (a,b): add csp(a,s)*csp(t,b) when w(f) = d(a,s) + w(e) + d(t,b) + delta,
/// and csp(b,s)*csp(t,a) when w(f) = d(b,s) + w(e) + d(t,a) + delta.
PathCount count_nontop(const Graph& g, const DistanceTables& tables, const Weight& delta, EdgeId e);

/// Counts for every edge at once. Only edges with w(f) = d(f) + delta can be
/// tops of a max-deficit cycle, so they are filtered out first and the
/// per-edge scan runs over that short list instead of all of E.
CountReport count_layer(const Graph& g, const DistanceTables& tables, const Weight& delta, ProblemKind kind);

struct SelectionStep {
    EdgeId edge;  // id in the input graph
    Weight deficit;
    PathCount count;
};

struct CoverSolution {
    ProblemKind kind = ProblemKind::gmvd;
    std::vector<EdgeId> edges;          // selection order, ids in the input graph
    std::vector<EdgeRole> roles;        // parallel to `edges`
    std::vector<Weight> layer_deficits; // distinct deficits met, strictly decreasing
    std::vector<SelectionStep> steps;   // empty for gmvdd

    [[nodiscard]] EdgeSet edge_set() const;
};

/// Deficit-layered greedy hitting set. Each round recomputes all-pairs
/// distances and path counts on the working graph, stops once its deficit is
/// zero, and otherwise deletes the edge with the largest count (ties to the
/// smallest (u,v)). For gmvd the count is top + non-top occurrences, for
/// gmvid non-top occurrences only. Weights are never modified.
///
/// Throws InternalInconsistency if every count is zero while the deficit is
/// positive.
CoverSolution greedy_solve(const Graph& g, ProblemKind kind);

/// Exact decrease-only optimum: every edge strictly heavier than the
/// shortest path between its endpoints.
EdgeSet solve_decrease_only(const Graph& g, const DistanceTables& tables);

/// greedy_solve for gmvd/gmvid, solve_decrease_only wrapped as a solution for gmvdd.
CoverSolution solve(const Graph& g, ProblemKind kind);

}  // namespace metric_mend
