// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "metric_mend/instance_io.hpp"
#include "metric_mend/oracle.hpp"
#include "metric_mend/reductions.hpp"
#include "metric_mend/repair.hpp"
#include "metric_mend/shortest_paths.hpp"
#include "metric_mend/solver.hpp"

using namespace metric_mend;
namespace red = metric_mend::reductions;

namespace {

constexpr std::uint64_t kCorpusSize = 600;

struct Criterion {
    std::string title;
    std::size_t checks = 0;
    std::size_t failed = 0;
    std::vector<std::string> failures;  // first few only
    std::string note;

    void expect(bool ok, const std::function<std::string()>& what) {
        ++checks;
        if (ok) return;
        ++failed;
        if (failures.size() < 5) failures.push_back(what());
    }
    void fail(const std::string& what) {
        ++failed;
        failures.push_back(what);
    }
    [[nodiscard]] bool passed() const { return failed == 0 && checks > 0; }
};

struct Entry {
    std::uint64_t index;
    Graph g;
    oracle::CycleInventory inventory;
    DistanceTables tables;
    Weight delta;
};

std::string tag(std::uint64_t i) { return "corpus #" + std::to_string(i); }

bool repair_contract(const Graph& g, const SplitCover& split, const Graph& out) {
    if (!is_metric(out)) return false;
    const Weight ceiling = g.max_weight();
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Weight& before = g.weight(e);
        const Weight& after = out.weight(e);
        const bool up = std::binary_search(split.increase.begin(), split.increase.end(), e);
        const bool down = std::binary_search(split.decrease.begin(), split.decrease.end(), e);
        if (!up && !down && after != before) return false;
        if (up && after < before) return false;
        if (down && after > before) return false;
        if (after > ceiling || after.is_negative()) return false;
    }
    return true;
}

void counting(const std::vector<Entry>& corpus, Criterion& c) {
    std::size_t layered = 0;
    for (const auto& en : corpus) {
        if (en.delta.is_zero()) continue;
        ++layered;
        for (EdgeId e = 0; e < en.g.edge_count(); ++e) {
            const auto top = count_top(en.g, en.tables, en.delta, e);
            const auto nontop = count_nontop(en.g, en.tables, en.delta, e);
            c.expect(top == oracle::brute_count(en.inventory, en.delta, e, oracle::CycleRole::top),
                     [&] { return tag(en.index) + " top count of " + describe_edge(en.g, e); });
            c.expect(nontop == oracle::brute_count(en.inventory, en.delta, e, oracle::CycleRole::nontop),
                     [&] { return tag(en.index) + " non-top count of " + describe_edge(en.g, e); });
        }
    }
    c.note = std::to_string(corpus.size()) + " instances, " + std::to_string(layered) + " with positive deficit, " +
             std::to_string(c.checks) + " edge counts compared";
}

void greedy_validity(const std::vector<Entry>& corpus, Criterion& c) {
    for (const auto& en : corpus) {
        const Graph& g = en.g;
        auto regular = greedy_solve(g, ProblemKind::gmvd);
        c.expect(validate_cover(g, regular.edge_set(), CoverKind::regular).ok(),
                 [&] { return tag(en.index) + " gmvd cover invalid"; });
        c.expect(oracle::covers_inventory(en.inventory, regular.edges, CoverKind::regular),
                 [&] { return tag(en.index) + " gmvd cover misses an enumerated cycle"; });
        auto split = split_cover(g, regular.edges);
        for (auto mode : {StepMode::unit, StepMode::batched}) {
            auto out = repair_weights(g, split, ProblemKind::gmvd, {mode, std::nullopt});
            auto lifted = lift_zero_edges(out.graph, {});
            c.expect(repair_contract(g, split, out.graph) && is_metric(lifted.graph),
                     [&] { return tag(en.index) + " gmvd repair contract"; });
        }

        auto increase = greedy_solve(g, ProblemKind::gmvid);
        c.expect(validate_cover(g, increase.edge_set(), CoverKind::nontop).ok(),
                 [&] { return tag(en.index) + " gmvid cover invalid"; });
        c.expect(oracle::covers_inventory(en.inventory, increase.edges, CoverKind::nontop),
                 [&] { return tag(en.index) + " gmvid cover misses an enumerated cycle"; });
        SplitCover up{increase.edge_set(), {}};
        for (auto mode : {StepMode::unit, StepMode::batched}) {
            auto out = repair_weights(g, up, ProblemKind::gmvid, {mode, std::nullopt});
            c.expect(repair_contract(g, up, out.graph), [&] { return tag(en.index) + " gmvid repair contract"; });
        }
    }
    c.note = std::to_string(corpus.size()) + " instances, gmvd and gmvid, unit and batched repair";
}

void approximation(const std::vector<Entry>& corpus, Criterion& c) {
    double max_ratio = 1.0;
    std::size_t solved = 0;
    for (const auto& en : corpus) {
        for (auto [kind, cover] : {std::pair{ProblemKind::gmvd, CoverKind::regular},
                                   std::pair{ProblemKind::gmvid, CoverKind::nontop}}) {
            auto greedy = greedy_solve(en.g, kind);
            CoverSolution opt;
            try {
                opt = oracle::exact_min_cover(en.inventory, en.g.edge_count(), cover);
            } catch (const oracle::BudgetExceeded&) {
                continue;
            }
            ++solved;
            const double s = static_cast<double>(greedy.edges.size());
            const double o = static_cast<double>(opt.edges.size());
            if (opt.edges.empty()) {
                c.expect(greedy.edges.empty(), [&] { return tag(en.index) + " nonempty greedy on a metric graph"; });
                continue;
            }
            const double u = static_cast<double>(en.inventory.cycles.size());
            const double bound = static_cast<double>(greedy.layer_deficits.size()) * (1.0 + std::log(u)) * o;
            c.expect(s <= bound + 1e-9, [&] {
                return tag(en.index) + " " + to_string(kind) + " |S|=" + std::to_string(greedy.edges.size()) +
                       " exceeds bound " + std::to_string(bound);
            });
            const double ratio = s / o;
            c.expect(std::isfinite(ratio) && ratio >= 1.0, [&] { return tag(en.index) + " ratio below 1"; });
            max_ratio = std::max(max_ratio, ratio);
        }
    }
    std::ostringstream note;
    note << solved << " exact optima; empirical max |S|/OPT = " << max_ratio;
    c.note = note.str();
}

void split_realization(const std::vector<Entry>& corpus, Criterion& c) {
    std::size_t covers = 0;
    auto try_split = [&](const Entry& en, const EdgeSet& cover, const char* what) {
        ++covers;
        try {
            auto split = split_cover(en.g, cover);
            EdgeSet joined;
            std::set_union(split.increase.begin(), split.increase.end(), split.decrease.begin(), split.decrease.end(),
                           std::back_inserter(joined));
            c.expect(is_valid_split(en.g, split) && joined == cover,
                     [&] { return tag(en.index) + " " + what + " split fails the checker"; });
        } catch (const std::exception& e) {
            c.expect(false, [&] { return tag(en.index) + " " + what + ": " + e.what(); });
        }
    };
    for (const auto& en : corpus) {
        try_split(en, greedy_solve(en.g, ProblemKind::gmvd).edge_set(), "greedy cover");
        for (const auto& cover : oracle::all_min_covers(en.inventory, en.g.edge_count(), CoverKind::regular)) {
            try_split(en, cover, "minimum cover");
        }
        // The full edge set and top-only covers are valid regular covers too.
        EdgeSet all(en.g.edge_count());
        for (EdgeId e = 0; e < all.size(); ++e) all[e] = e;
        try_split(en, all, "all edges");
        try_split(en, overweight_edges(en.g, en.tables), "overweight edges");
    }
    c.note = std::to_string(covers) + " valid regular covers split";
}

red::Topology random_topology(std::mt19937_64& rng, std::size_t n, std::size_t max_edges) {
    std::vector<red::VertexPair> pairs;
    for (VertexId a = 0; a < n; ++a) {
        for (VertexId b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
    }
    std::shuffle(pairs.begin(), pairs.end(), rng);
    const std::size_t m = std::uniform_int_distribution<std::size_t>(1, std::min(max_edges, pairs.size()))(rng);
    pairs.resize(m);
    std::sort(pairs.begin(), pairs.end());
    return {n, pairs};
}

void reductions_equivalence(Criterion& c) {
    std::mt19937_64 rng(20241015);
    std::size_t multicuts = 0;
    std::size_t lbcuts = 0;
    std::size_t gadgets = 0;
    while (multicuts < 120) {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(3, 5)(rng);
        red::MulticutInstance mc{random_topology(rng, n, 8), {}};
        std::vector<red::VertexPair> free;
        for (VertexId a = 0; a < n; ++a) {
            for (VertexId b = a + 1; b < n; ++b) {
                if (std::find(mc.graph.edges.begin(), mc.graph.edges.end(), red::VertexPair{a, b}) == mc.graph.edges.end()) {
                    free.emplace_back(a, b);
                }
            }
        }
        if (free.empty()) continue;
        std::shuffle(free.begin(), free.end(), rng);
        free.resize(std::uniform_int_distribution<std::size_t>(1, std::min<std::size_t>(3, free.size()))(rng));
        mc.demands = free;
        ++multicuts;
        auto art = red::multicut_to_gmvid(mc);
        auto source = oracle::brute_force_multicut(mc);
        auto cover = oracle::exact_min_cover(art.instance, CoverKind::nontop);
        auto mapped = art.translate(cover.edges);
        c.expect(source.size() == cover.edges.size(), [&] { return "multicut: " + red::serialize_multicut(mc); });
        c.expect(mapped.size() == cover.edges.size() && oracle::multicut_feasible(mc, mapped),
                 [&] { return "multicut back-map: " + red::serialize_multicut(mc); });
    }
    while (lbcuts < 120) {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(3, 6)(rng);
        red::LbCutInstance lb{random_topology(rng, n, 9), 0, 0, std::uniform_int_distribution<std::uint64_t>(1, 4)(rng)};
        lb.source = static_cast<VertexId>(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng));
        lb.sink = static_cast<VertexId>(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng));
        const auto key = std::minmax(lb.source, lb.sink);
        if (lb.source == lb.sink ||
            std::find(lb.graph.edges.begin(), lb.graph.edges.end(), red::VertexPair{key.first, key.second}) !=
                lb.graph.edges.end()) {
            continue;
        }
        ++lbcuts;
        auto art = red::lbcut_to_gmvid(lb);
        auto source = oracle::brute_force_lbcut(lb);
        auto cover = oracle::exact_min_cover(art.instance, CoverKind::nontop);
        auto mapped = art.translate(cover.edges);
        c.expect(source.size() == cover.edges.size(), [&] { return "lb-cut: " + red::serialize_lbcut(lb); });
        c.expect(mapped.size() == cover.edges.size() && oracle::lbcut_feasible(lb, mapped),
                 [&] { return "lb-cut back-map: " + red::serialize_lbcut(lb); });
    }
    std::uint64_t seed = 0;
    while (gadgets < 60) {
        red::RandomGraphParams p;
        p.vertex_count = 4 + seed % 2;
        p.density = fixtures::w(seed % 2 ? "1/2" : "3/4");
        p.weight_max = 6;
        p.violations = 1 + seed % 2;
        p.seed = 0xaced00 + seed++;
        Graph g;
        try {
            g = red::gen_random(p);
        } catch (const std::invalid_argument&) {
            continue;
        }
        if (g.edge_count() > 6) continue;
        ++gadgets;
        auto art = red::gmvid_to_gmvd(g);
        const auto source = oracle::exact_min_cover(g, CoverKind::nontop);
        const auto inventory = oracle::enumerate_unbalanced_cycles(art.instance);
        const auto optima = oracle::all_min_covers(inventory, art.instance.edge_count(), CoverKind::regular);
        c.expect(optima.front().size() == source.edges.size(),
                 [&] { return "gmvid->gmvd optimum differs on\n" + serialize_instance(g); });
        for (const auto& cover : optima) {
            c.expect(std::all_of(cover.begin(), cover.end(),
                                 [&](EdgeId e) { return art.back_map[e].kind == red::EdgeOrigin::Kind::source_edge; }),
                     [&] { return "gmvid->gmvd optimum uses a gadget edge on\n" + serialize_instance(g); });
        }
    }
    c.note = std::to_string(multicuts) + " multicut, " + std::to_string(lbcuts) + " LB-cut, " + std::to_string(gadgets) +
             " gmvid->gmvd instances";
}

void decrease_only(const std::vector<Entry>& corpus, Criterion& c) {
    for (const auto& en : corpus) {
        const Graph& g = en.g;
        EdgeSet expected;
        std::vector<Weight> lowered;
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            const auto census = oracle::brute_shortest_paths(g, g.edge(e).u, g.edge(e).v);
            if (Distance(g.weight(e)) > census.distance) expected.push_back(e);
            lowered.push_back(census.distance.weight());
        }
        auto sol = solve(g, ProblemKind::gmvdd);
        c.expect(sol.edges == expected, [&] { return tag(en.index) + " decrease-only set differs"; });
        c.expect(is_metric(g.with_weights(lowered)), [&] { return tag(en.index) + " lowering left a violation"; });
    }
    c.note = std::to_string(corpus.size()) + " instances against enumerated shortest paths";
}

void characterization(const std::vector<Entry>& corpus, Criterion& c) {
    std::size_t metric = 0;
    for (const auto& en : corpus) {
        const bool a = is_metric(en.g);
        const bool b = en.inventory.cycles.empty();
        const bool d = en.delta.is_zero();
        metric += a ? 1 : 0;
        c.expect(a == b && b == d, [&] { return tag(en.index) + " characterizations disagree"; });
    }
    c.note = std::to_string(metric) + " metric and " + std::to_string(corpus.size() - metric) + " non-metric instances";
}

void determinism(const std::vector<Entry>& corpus, Criterion& c) {
    const Weight factor = fixtures::w("7/3");
    for (const auto& en : corpus) {
        const Graph& g = en.g;
        c.expect(serialize_instance(fixtures::corpus_graph(en.index)) == serialize_instance(g),
                 [&] { return tag(en.index) + " regenerated instance differs"; });
        const Graph scaled = g.scaled(factor);
        for (auto kind : {ProblemKind::gmvd, ProblemKind::gmvid}) {
            auto first = greedy_solve(g, kind);
            auto second = greedy_solve(g, kind);
            auto stretched = greedy_solve(scaled, kind);
            c.expect(first.edges == second.edges, [&] { return tag(en.index) + " repeated solve differs"; });
            c.expect(first.edges == stretched.edges, [&] { return tag(en.index) + " scaled greedy sequence differs"; });
        }
        std::vector<EdgeSet> candidates{greedy_solve(g, ProblemKind::gmvd).edge_set(),
                                        greedy_solve(g, ProblemKind::gmvid).edge_set(),
                                        overweight_edges(g, en.tables),
                                        {}};
        std::mt19937_64 rng(en.index);
        for (int k = 0; k < 4; ++k) {
            EdgeSet s;
            for (EdgeId e = 0; e < g.edge_count(); ++e) {
                if (rng() % 3 == 0) s.push_back(e);
            }
            candidates.push_back(s);
        }
        for (const auto& s : candidates) {
            for (auto kind : {CoverKind::regular, CoverKind::nontop, CoverKind::top}) {
                auto a = validate_cover(g, s, kind);
                auto b = validate_cover(scaled, s, kind);
                c.expect(a.ok() == b.ok(), [&] { return tag(en.index) + " scaled verdict differs"; });
            }
        }
    }
    c.note = "repeat and 7/3-scaled runs on " + std::to_string(corpus.size()) + " instances";
}

void scaling(Criterion& c) {
    using Clock = std::chrono::steady_clock;
    const auto started = Clock::now();
    const std::vector<std::size_t> sizes{20, 40, 80};
    constexpr int kTrials = 5;
    constexpr double kMaxDoublingFactor = 32.0;  // n^5 per doubling
    std::vector<double> medians;
    for (std::size_t n : sizes) {
        std::vector<double> times;
        for (int t = 0; t < kTrials; ++t) {
            red::RandomGraphParams p;
            p.vertex_count = n;
            p.density = fixtures::w("1/2");
            p.weight_max = 20;
            p.max_denominator = 2;
            p.violations = 5;
            p.seed = 9000 + static_cast<std::uint64_t>(t);
            const Graph g = red::gen_random(p);
            const auto t0 = Clock::now();
            auto sol = greedy_solve(g, ProblemKind::gmvd);
            times.push_back(std::chrono::duration<double>(Clock::now() - t0).count());
            c.expect(validate_cover(g, sol.edge_set(), CoverKind::regular).ok(),
                     [&] { return "n=" + std::to_string(n) + " cover invalid"; });
        }
        std::sort(times.begin(), times.end());
        medians.push_back(times[kTrials / 2]);
    }
    std::ostringstream note;
    note.precision(3);
    note << "median solve seconds";
    for (std::size_t i = 0; i < sizes.size(); ++i) note << " n=" << sizes[i] << ":" << medians[i];
    for (std::size_t i = 1; i < sizes.size(); ++i) {
        const double factor = medians[i] / std::max(medians[i - 1], 1e-6);
        note << (i == 1 ? "; doubling factors " : ", ") << factor;
        c.expect(factor <= kMaxDoublingFactor, [&] { return "doubling factor " + std::to_string(factor); });
    }
    const double total = std::chrono::duration<double>(Clock::now() - started).count();
    c.expect(total < 300.0, [&] { return "scaling run took " + std::to_string(total) + " s"; });
    note << " (limit " << kMaxDoublingFactor << ")";
    c.note = note.str();
}

}  // namespace

int main() {
    std::vector<Entry> corpus;
    for (std::uint64_t i = 0; i < kCorpusSize; ++i) {
        Graph g = fixtures::corpus_graph(i);
        auto tables = all_pairs_shortest_paths(g);
        Weight delta = graph_deficit(g, tables);
        corpus.push_back({i, g, oracle::enumerate_unbalanced_cycles(g), std::move(tables), delta});
    }

    std::vector<Criterion> criteria{
        {"1 cycle count equivalence"}, {"2 greedy validity and repair"},  {"3 approximation bound"},
        {"4 split realization"},          {"5 reduction optimum equivalence"}, {"6 decrease-only exactness"},
        {"7 metric characterization"},    {"8 determinism and 7/3 scaling"},   {"9 asymptotic sanity"},
    };
    std::vector<std::function<void(Criterion&)>> runs{
        [&](Criterion& c) { counting(corpus, c); },       [&](Criterion& c) { greedy_validity(corpus, c); },
        [&](Criterion& c) { approximation(corpus, c); },  [&](Criterion& c) { split_realization(corpus, c); },
        [&](Criterion& c) { reductions_equivalence(c); }, [&](Criterion& c) { decrease_only(corpus, c); },
        [&](Criterion& c) { characterization(corpus, c); }, [&](Criterion& c) { determinism(corpus, c); },
        [&](Criterion& c) { scaling(c); },
    };

    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto& c = criteria[i];
        const auto t0 = std::chrono::steady_clock::now();
        try {
            runs[i](c);
        } catch (const std::exception& e) {
            c.fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        all = all && c.passed();
        std::printf("criterion %-36s %s  [%zu checks, %zu failed, %.1fs] %s\n", c.title.c_str(),
                    c.passed() ? "PASS" : "FAIL", c.checks, c.failed, secs, c.note.c_str());
        for (const auto& f : c.failures) std::printf("    %s\n", f.c_str());
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
