#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "metric_mend/graph.hpp"

namespace metric_mend {

/// An explicit unbalanced cycle: the top edge plus the path of non-top edges
/// running from top.u to top.v.
struct CycleWitness {
    EdgeId top = 0;
    std::vector<EdgeId> nontop;
    Weight deficit;

    friend bool operator==(const CycleWitness&, const CycleWitness&) = default;
};

/// Re-derives the witness invariants from g: simple cycle of length >= 3,
/// top strictly heaviest, recorded deficit = w(top) - sum(nontop) > 0.
/// On failure `why` (if given) receives the reason.
bool verify_witness(const Graph& g, const CycleWitness& c, std::string* why = nullptr);

std::string describe_witness(const Graph& g, const CycleWitness& c);

/// Finds an unbalanced cycle that escapes the pair (top_cover, nontop_cover):
/// its top edge is not in top_cover and none of its non-top edges lie in
/// nontop_cover.
///
/// Such a cycle exists iff some edge e = (u,v) outside top_cover has a u-v
/// path avoiding nontop_cover that is strictly lighter than e. A path lighter
/// than e cannot use e, so one shortest-path tree per endpoint on
/// G - nontop_cover decides every edge. Edges are tried in id order and the
/// first escaping cycle is returned. Zero weights are allowed.
std::optional<CycleWitness> find_uncovered_cycle(const Graph& g, std::span<const EdgeId> top_cover,
                                                 std::span<const EdgeId> nontop_cover);

enum class CoverKind { regular, nontop, top };

struct CoverVerdict {
    std::optional<CycleWitness> witness;  // empty when the cover is valid
    [[nodiscard]] bool ok() const { return !witness.has_value(); }
};

/// regular: some edge of every unbalanced cycle; nontop: some non-top edge;
/// top: the top edge.
CoverVerdict validate_cover(const Graph& g, std::span<const EdgeId> cover, CoverKind kind);

std::string to_string(CoverKind kind);
std::optional<CoverKind> parse_cover_kind(std::string_view text);

}  // namespace metric_mend
