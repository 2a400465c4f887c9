#include "metric_mend/repair.hpp"

#include <algorithm>
#include <sstream>

#include "metric_mend/shortest_paths.hpp"

namespace metric_mend {

namespace {

EdgeSet set_minus(const EdgeSet& a, EdgeId drop) {
    EdgeSet out;
    for (EdgeId id : a) {
        if (id != drop) out.push_back(id);
    }
    return out;
}

EdgeSet set_union(const EdgeSet& a, const EdgeSet& b) {
    EdgeSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace

bool is_valid_split(const Graph& g, const SplitCover& split) {
    return !find_uncovered_cycle(g, split.decrease, split.increase).has_value();
}

SplitCover split_cover(const Graph& g, std::span<const EdgeId> cover) {
    EdgeSet rest = normalize_edge_set(g, {cover.begin(), cover.end()});
    if (auto verdict = validate_cover(g, rest, CoverKind::regular); !verdict.ok()) {
        throw CoverRejected("not a regular cover: " + describe_witness(g, *verdict.witness), verdict.witness);
    }

    SplitCover split;
    const EdgeSet order = rest;
    for (EdgeId b : order) {
        const EdgeSet others = set_minus(rest, b);
        // Case 1: b joins the increase side.
        if (!find_uncovered_cycle(g, set_union(split.decrease, others), set_union(split.increase, rest))) {
            split.increase.insert(std::upper_bound(split.increase.begin(), split.increase.end(), b), b);
        } else if (!find_uncovered_cycle(g, set_union(split.decrease, rest), set_union(split.increase, others))) {
            split.decrease.insert(std::upper_bound(split.decrease.begin(), split.decrease.end(), b), b);
        } else {
            throw InternalInconsistency("edge " + describe_edge(g, b) +
                                        " can join neither the increase nor the decrease side");
        }
        rest = others;
    }
    return split;
}

RepairOutcome repair_weights(const Graph& g, const SplitCover& split, ProblemKind kind, RepairOptions options) {
    const EdgeSet increase = normalize_edge_set(g, split.increase);
    const EdgeSet decrease = normalize_edge_set(g, split.decrease);
    EdgeSet overlap;
    std::set_intersection(increase.begin(), increase.end(), decrease.begin(), decrease.end(),
                          std::back_inserter(overlap));
    if (!overlap.empty()) throw CoverRejected("an edge cannot be both increased and decreased", std::nullopt);

    switch (kind) {
        case ProblemKind::gmvid:
            if (!decrease.empty()) throw CoverRejected("increase-only repair takes no decrease edges", std::nullopt);
            if (auto verdict = validate_cover(g, increase, CoverKind::nontop); !verdict.ok()) {
                throw CoverRejected("not a non-top cover: " + describe_witness(g, *verdict.witness), verdict.witness);
            }
            break;
        case ProblemKind::gmvd:
            if (auto w = find_uncovered_cycle(g, decrease, increase)) {
                throw CoverRejected("split leaves a cycle uncovered: " + describe_witness(g, *w), w);
            }
            break;
        case ProblemKind::gmvdd:
            throw std::invalid_argument("decrease-only instances are repaired by lowering to shortest distances");
    }

    mpz_class scale = options.scale_hint ? *options.scale_hint : common_denominator(g);
    if (scale <= 0) throw std::invalid_argument("scale hint must be positive");
    Graph work = g.scaled(Weight(mpq_class(scale)));
    if (!std::all_of(work.edges().begin(), work.edges().end(), [](const Edge& e) { return e.weight.is_integer(); })) {
        throw std::invalid_argument("scale hint " + scale.get_str() + " does not make all weights integral");
    }

    const Weight ceiling = work.max_weight();
    const std::vector<bool> in_increase = edge_mask(g, increase);
    const std::vector<bool> in_decrease = edge_mask(g, decrease);
    const bool unit = options.mode == StepMode::unit;
    auto escapes = [&](const Graph& h) { return find_uncovered_cycle(h, decrease, increase).has_value(); };

    // Each round moves one cover weight monotonically within [0, L].
    const mpz_class round_limit = mpz_class(increase.size() + decrease.size()) * ceiling.numerator() + 1;

    RepairOutcome outcome;
    while (auto cycle = find_uncovered_cycle(work, {}, {})) {
        if (mpz_class(outcome.steps) > round_limit) {
            throw InternalInconsistency("repair exceeded the |S|*L round bound");
        }
        bool moved = false;

        EdgeSet candidates(cycle->nontop.begin(), cycle->nontop.end());
        std::sort(candidates.begin(), candidates.end());
        for (EdgeId f : candidates) {
            if (!in_increase[f]) continue;
            const Edge& edge = work.edge(f);
            Weight room = ceiling - edge.weight;
            Distance detour = shortest_distance(work, edge.u, edge.v, in_increase);
            if (detour.is_finite()) room = std::min(room, detour.weight() - edge.weight);
            if (room < Weight(1)) continue;
            Weight amount = unit ? Weight(1) : std::min(room, cycle->deficit);
            Graph next = work.with_weight(f, edge.weight + amount);
            if (escapes(next)) {
                throw InternalInconsistency("raising " + describe_edge(g, f) + " within its detour bound broke the cover");
            }
            work = std::move(next);
            moved = true;
            break;
        }

        if (!moved && in_decrease[cycle->top]) {
            const Weight current = work.weight(cycle->top);
            auto safe = [&](const Weight& amount) { return !escapes(work.with_weight(cycle->top, current - amount)); };
            Weight upper = unit ? Weight(1) : std::min(cycle->deficit, current);
            if (upper >= Weight(1) && safe(Weight(1))) {
                // Safety is monotone in the amount: lowering further only adds light paths.
                mpz_class lo = 1;
                mpz_class hi = upper.numerator();
                while (lo < hi) {
                    mpz_class mid = (lo + hi + 1) / 2;
                    if (safe(Weight(mpq_class(mid)))) {
                        lo = mid;
                    } else {
                        hi = mid - 1;
                    }
                }
                work = work.with_weight(cycle->top, current - Weight(mpq_class(lo)));
                moved = true;
            }
        }

        if (!moved) {
            throw InternalInconsistency("no safe move for unbalanced cycle " + describe_witness(work, *cycle));
        }
        ++outcome.steps;
    }

    const Weight inverse(mpz_class(1), scale);
    outcome.graph = work.scaled(inverse);
    for (EdgeId id = 0; id < g.edge_count(); ++id) {
        if (outcome.graph.weight(id) != g.weight(id)) {
            outcome.changed.push_back({id, g.weight(id), outcome.graph.weight(id)});
        }
    }
    return outcome;
}

LiftResult lift_zero_edges(const Graph& g, std::span<const Weight> caps) {
    if (!caps.empty() && caps.size() != g.edge_count()) throw std::invalid_argument("caps must cover every edge");
    if (!is_metric(g)) throw std::invalid_argument("lift_zero_edges expects a metric graph");

    LiftResult result{g, {}, {}};
    bool progress = true;
    while (progress) {
        progress = false;
        for (EdgeId id = 0; id < result.graph.edge_count(); ++id) {
            if (!result.graph.weight(id).is_zero()) continue;
            const Edge& e = result.graph.edge(id);
            std::vector<bool> without(result.graph.edge_count(), false);
            without[id] = true;
            Distance alternative = shortest_distance(result.graph, e.u, e.v, without);
            if (alternative.is_infinite() || alternative.weight().is_zero()) continue;
            Weight lifted = alternative.weight();
            if (!caps.empty()) lifted = std::min(lifted, caps[id]);
            if (!lifted.is_positive()) continue;
            result.graph = result.graph.with_weight(id, lifted);
            result.lifted.push_back(id);
            progress = true;
        }
    }
    std::sort(result.lifted.begin(), result.lifted.end());
    for (EdgeId id = 0; id < result.graph.edge_count(); ++id) {
        if (result.graph.weight(id).is_zero()) result.unresolved.push_back(id);
    }
    return result;
}

std::string export_lp(const Graph& g, std::span<const EdgeId> cover, ProblemKind kind) {
    const std::size_t n = g.vertex_count();
    const auto in_cover = edge_mask(g, cover);
    auto var = [](std::size_t a, std::size_t b) {
        if (a > b) std::swap(a, b);
        return "a_" + std::to_string(a) + "_" + std::to_string(b);
    };

    std::ostringstream out;
    out << "\\ metric feasibility: " << to_string(kind) << ", n=" << n << ", m=" << g.edge_count()
        << ", |S|=" << cover.size() << '\n';
    out << "Minimize\n obj: 0\n";
    out << "Subject To\n";
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                out << " tri_" << i << '_' << j << "_via_" << k << ": " << var(i, j) << " - " << var(i, k) << " - "
                    << var(k, j) << " <= 0\n";
            }
        }
    }
    out << "Bounds\n";
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            auto id = g.find_edge(static_cast<VertexId>(i), static_cast<VertexId>(j));
            if (id && !in_cover[*id]) {
                out << ' ' << var(i, j) << " = " << g.weight(*id) << '\n';
            } else if (id && kind == ProblemKind::gmvid) {
                out << ' ' << var(i, j) << " >= " << g.weight(*id) << '\n';
            } else if (id && kind == ProblemKind::gmvdd) {
                out << " 0 <= " << var(i, j) << " <= " << g.weight(*id) << '\n';
            } else {
                out << ' ' << var(i, j) << " >= 0\n";
            }
        }
    }
    out << "End\n";
    return out.str();
}

}  // namespace metric_mend
