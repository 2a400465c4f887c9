#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "metric_mend/cover_check.hpp"
#include "metric_mend/graph.hpp"
#include "metric_mend/reductions.hpp"
#include "metric_mend/solver.hpp"

// Exponential-time ground truth for small instances. Nothing here calls the
// shortest-path or cover-checking code: cycles and paths are enumerated
// directly, so the oracle can be used to test those components.
namespace metric_mend::oracle {

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Upper bound on search nodes visited by one oracle call.
struct OracleBudget {
    std::uint64_t max_work = 20'000'000;
};

struct CycleInventory {
    std::vector<CycleWitness> cycles;
    std::vector<Weight> distinct_deficits;  // ascending
};

/// Every simple cycle of length >= 3 (at most max_len edges) with positive
/// deficit, each exactly once. The top is the heaviest edge, ties to the
/// smaller edge id. Cycles are listed in discovery order: by smallest vertex,
/// then depth-first over increasing neighbor ids.
CycleInventory enumerate_unbalanced_cycles(const Graph& g, std::optional<std::size_t> max_len = std::nullopt,
                                           OracleBudget budget = {});

/// True iff `cover` (sorted or not) hits every inventory cycle as `kind` requires.
bool covers_inventory(const CycleInventory& inventory, std::span<const EdgeId> cover, CoverKind kind);

/// Minimum cover of the given kind (regular or nontop), the lexicographically
/// first one among sorted id vectors of that size. The returned solution has
/// kind gmvd for regular and gmvid for nontop.
CoverSolution exact_min_cover(const Graph& g, CoverKind kind, OracleBudget budget = {});
CoverSolution exact_min_cover(const CycleInventory& inventory, std::size_t edge_count, CoverKind kind,
                              OracleBudget budget = {});

/// Every minimum cover of the given kind, sorted lexicographically.
std::vector<EdgeSet> all_min_covers(const CycleInventory& inventory, std::size_t edge_count, CoverKind kind,
                                    OracleBudget budget = {});

enum class CycleRole { top, nontop };

/// Inventory cycles with deficit exactly `delta` in which e plays `role`.
PathCount brute_count(const CycleInventory& inventory, const Weight& delta, EdgeId e, CycleRole role);
PathCount brute_count(const Graph& g, const Weight& delta, EdgeId e, CycleRole role, OracleBudget budget = {});

struct PathCensus {
    Distance distance = Distance::infinity();
    PathCount count = 0;  // simple paths of length `distance`; 1 for a == b
};

/// Shortest a-b distance and number of shortest simple paths by listing all simple paths.
PathCensus brute_shortest_paths(const Graph& g, VertexId a, VertexId b, OracleBudget budget = {});

/// Whether deleting the source edges with the given indices separates every demand pair.
bool multicut_feasible(const reductions::MulticutInstance& mc, const std::vector<std::size_t>& removed);

/// Whether deleting the given source edges pushes the hop distance from source to sink above the bound.
bool lbcut_feasible(const reductions::LbCutInstance& lb, const std::vector<std::size_t>& removed);

/// Lexicographically first minimum edge deletion set (edge indices, sorted).
std::vector<std::size_t> brute_force_multicut(const reductions::MulticutInstance& mc, OracleBudget budget = {});
std::vector<std::size_t> brute_force_lbcut(const reductions::LbCutInstance& lb, OracleBudget budget = {});

}  // namespace metric_mend::oracle
