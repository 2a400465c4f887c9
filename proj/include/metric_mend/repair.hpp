#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "metric_mend/cover_check.hpp"
#include "metric_mend/graph.hpp"
#include "metric_mend/solver.hpp"

namespace metric_mend {

/// A cover that does not satisfy the precondition of the requested operation.
class CoverRejected : public std::invalid_argument {
public:
    CoverRejected(const std::string& message, std::optional<CycleWitness> witness)
        : std::invalid_argument(message), witness_(std::move(witness)) {}
    [[nodiscard]] const std::optional<CycleWitness>& witness() const { return witness_; }

private:
    std::optional<CycleWitness> witness_;
};

/// Regular cover split into increase-only and decrease-only edges such that
/// every unbalanced cycle is non-top covered by `increase` or top covered by
/// `decrease`.
struct SplitCover {
    EdgeSet increase;
    EdgeSet decrease;
};

/// True iff find_uncovered_cycle(g, decrease, increase) finds nothing.
bool is_valid_split(const Graph& g, const SplitCover& split);

/// Assigns cover edges one at a time, in id order, to the increase side when
/// that keeps every unbalanced cycle top covered by (decrease + rest) or
/// non-top covered by (increase + rest), otherwise to the decrease side.
/// Throws CoverRejected if `cover` is not a regular cover, and
/// InternalInconsistency if neither side is admissible for some edge.
SplitCover split_cover(const Graph& g, std::span<const EdgeId> cover);

enum class StepMode {
    unit,    // one scaled unit per round
    batched  // the largest certified jump, capped by the deficit of the cycle being fixed
};

struct RepairOptions {
    StepMode mode = StepMode::batched;
    /// Positive integer making every weight integral when multiplied in; the
    /// least common denominator is computed when absent.
    std::optional<mpz_class> scale_hint;
};

struct WeightChange {
    EdgeId edge;
    Weight before;
    Weight after;
};

struct RepairOutcome {
    Graph graph;
    std::vector<WeightChange> changed;  // sorted by edge id
    std::size_t steps = 0;
};

/// Adjusts weights of cover edges until the graph is metric.
///
/// Works on weights scaled to integers. Each round takes some unbalanced
/// cycle C with top t and tries, in order: raising a non-top edge f of C that
/// is in `increase` (safe up to the shortest f-endpoint path avoiding
/// `increase`, never above the original maximum weight L), then lowering t if
/// it is in `decrease` (safe while no cycle escapes the split). A move never
/// exceeds the deficit of C, so the loop stops at the first metric state.
///
/// For gmvid the split must have an empty decrease side and `increase` must
/// be a non-top cover; for gmvd the split must be valid. Violations throw
/// CoverRejected. A round with no safe move throws InternalInconsistency.
RepairOutcome repair_weights(const Graph& g, const SplitCover& split, ProblemKind kind, RepairOptions options = {});

struct LiftResult {
    Graph graph;
    std::vector<EdgeId> lifted;
    std::vector<EdgeId> unresolved;  // zero edges with no positive alternative path
};

/// Raises each zero-weight edge of a metric graph to the shortest distance
/// between its endpoints over the other edges, when that is positive and
/// finite. With `caps`, the new weight is additionally capped at caps[e]
/// (for instance the edge's original weight).
LiftResult lift_zero_edges(const Graph& g, std::span<const Weight> caps = {});

/// Feasibility LP over a_i_j (i < j) in CPLEX-like LP text: fixed values for
/// edges outside S, triangle rows for every ordered triple, lower bounds for
/// the free pairs (w(e) for cover edges under gmvid, 0 otherwise).
/// Rational constants are printed as p/q.
std::string export_lp(const Graph& g, std::span<const EdgeId> cover, ProblemKind kind);

}  // namespace metric_mend
