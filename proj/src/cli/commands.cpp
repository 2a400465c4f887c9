#include "metric_mend/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>

#include "metric_mend/instance_io.hpp"
#include "metric_mend/oracle.hpp"
#include "metric_mend/reductions.hpp"
#include "metric_mend/repair.hpp"
#include "metric_mend/shortest_paths.hpp"
#include "metric_mend/solver.hpp"

namespace metric_mend::cli {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string format = "text";
    std::uint64_t budget = 0;
    std::uint64_t seed = 0;

    std::string instance;
    std::string cover;
    std::string kind = "gmvd";
    std::string mode = "batched";
    std::string out;
    std::string report;
    bool repair = false;

    std::string from;

    std::size_t n = 6;
    std::string density = "1";
    std::uint64_t weight_max = 10;
    std::size_t violations = 1;
    std::uint64_t max_denominator = 1;
    std::size_t trials = 20;
};

double millis(Clock::time_point since) {
    const double ms = std::chrono::duration<double, std::milli>(Clock::now() - since).count();
    return std::round(ms * 1000.0) / 1000.0;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
}

template <typename Parse>
auto parse_file(const std::string& path, Parse parse) {
    const std::string text = read_file(path);
    try {
        return parse(text);
    } catch (const ParseError& e) {
        throw InputError(path + ": " + e.what());
    }
}

Graph load_instance(const std::string& path) {
    return parse_file(path, [](const std::string& text) { return parse_instance(text); });
}

ProblemKind problem_kind(const std::string& text) {
    auto kind = parse_problem_kind(text);
    if (!kind) throw InputError("unknown kind '" + text + "' (expected gmvd, gmvid or gmvdd)");
    return *kind;
}

// Cover kinds accept both cover names and the problem they certify.
CoverKind cover_kind(const std::string& text) {
    if (auto k = parse_cover_kind(text)) return *k;
    if (auto p = parse_problem_kind(text)) return required_cover(*p);
    throw InputError("unknown cover kind '" + text + "'");
}

StepMode step_mode(const std::string& text) {
    if (text == "unit") return StepMode::unit;
    if (text == "batched") return StepMode::batched;
    throw InputError("unknown mode '" + text + "' (expected unit or batched)");
}

json edge_json(const Graph& g, EdgeId id) { return json{{"u", g.edge(id).u}, {"v", g.edge(id).v}}; }

json witness_json(const Graph& g, const CycleWitness& c) {
    json nontop = json::array();
    for (EdgeId e : c.nontop) nontop.push_back(edge_json(g, e));
    return json{{"top", edge_json(g, c.top)}, {"nontop", nontop}, {"deficit", c.deficit.to_string()}};
}

json weights_json(const std::vector<Weight>& ws) {
    json out = json::array();
    for (const auto& w : ws) out.push_back(w.to_string());
    return out;
}

// What happened to the weights, and checks recomputed from the final graph.
struct RepairResult {
    Graph graph;
    std::vector<WeightChange> changed;
    std::size_t steps = 0;
    std::vector<EdgeId> lifted;
    std::vector<EdgeId> unresolved;
    SplitCover split;
};

RepairResult run_repair(const Graph& g, const EdgeSet& cover, ProblemKind kind, StepMode mode) {
    RepairResult r{g, {}, 0, {}, {}, {}};
    if (kind == ProblemKind::gmvdd) {
        if (auto verdict = validate_cover(g, cover, CoverKind::top); !verdict.ok()) {
            throw CoverRejected("not a top cover: " + describe_witness(g, *verdict.witness), verdict.witness);
        }
        auto t = all_pairs_shortest_paths(g, PathCounting::distances_only);
        std::vector<Weight> ws;
        for (const auto& e : g.edges()) ws.push_back(e.weight);
        for (EdgeId e : cover) {
            ws[e] = t.dist(g.edge(e).u, g.edge(e).v).weight();
            if (ws[e] != g.weight(e)) r.changed.push_back({e, g.weight(e), ws[e]});
        }
        r.graph = g.with_weights(std::move(ws));
        r.split.decrease = cover;
        return r;
    }
    r.split = kind == ProblemKind::gmvd ? split_cover(g, cover) : SplitCover{cover, {}};
    RepairOutcome outcome = repair_weights(g, r.split, kind, {mode, std::nullopt});
    std::vector<Weight> caps;
    for (const auto& e : g.edges()) caps.push_back(e.weight);
    LiftResult lift = lift_zero_edges(outcome.graph, caps);
    r.graph = lift.graph;
    r.steps = outcome.steps;
    r.lifted = lift.lifted;
    r.unresolved = lift.unresolved;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (r.graph.weight(e) != g.weight(e)) r.changed.push_back({e, g.weight(e), r.graph.weight(e)});
    }
    return r;
}

struct Verdicts {
    json checks = json::object();
    std::vector<std::string> failures;

    void record(const std::string& name, bool ok, const std::string& detail = {}) {
        checks[name] = ok;
        if (!ok) failures.push_back(detail.empty() ? name : name + ": " + detail);
    }
    [[nodiscard]] bool ok() const { return failures.empty(); }
};

void verify_repair(const Graph& input, const Graph& output, const SplitCover& split, Verdicts& v) {
    v.record("metric", is_metric(output));
    const Weight ceiling = input.max_weight();
    bool only_cover = true;
    bool monotone = true;
    bool bounded = true;
    for (EdgeId e = 0; e < input.edge_count(); ++e) {
        const Weight& before = input.weight(e);
        const Weight& after = output.weight(e);
        const bool up = std::binary_search(split.increase.begin(), split.increase.end(), e);
        const bool down = std::binary_search(split.decrease.begin(), split.decrease.end(), e);
        if (!up && !down && after != before) only_cover = false;
        if ((up && after < before) || (down && after > before)) monotone = false;
        if (after > ceiling || after.is_negative()) bounded = false;
    }
    v.record("only_cover_changed", only_cover);
    v.record("monotone_per_role", monotone);
    v.record("within_bounds", bounded);
}

json repair_json(const Graph& g, const RepairResult& r) {
    json changed = json::array();
    for (const auto& c : r.changed) {
        json item = edge_json(g, c.edge);
        item["before"] = c.before.to_string();
        item["after"] = c.after.to_string();
        changed.push_back(item);
    }
    json lifted = json::array();
    for (EdgeId e : r.lifted) lifted.push_back(edge_json(g, e));
    json unresolved = json::array();
    for (EdgeId e : r.unresolved) unresolved.push_back(edge_json(g, e));
    return json{{"steps", r.steps}, {"changed", changed}, {"lifted_zero_edges", lifted},
                {"unresolved_zero_edges", unresolved}};
}

void emit(const Options& o, const json& report, const std::function<void(std::ostream&)>& text, std::ostream& out) {
    const std::string machine = report.dump(2) + "\n";
    if (!o.report.empty()) write_file(o.report, machine);
    if (o.format == "machine") {
        out << machine;
    } else {
        text(out);
    }
}

int finish(const Verdicts& v, std::ostream& err) {
    if (v.ok()) return exit_ok;
    for (const auto& f : v.failures) err << "verification failed: " << f << '\n';
    return exit_internal;
}

std::string check_line(const Verdicts& v) {
    std::string line;
    for (const auto& [name, value] : v.checks.items()) {
        line += (line.empty() ? "" : ", ") + name + "=" + (value.get<bool>() ? "yes" : "NO");
    }
    return line;
}

json instance_json(const Graph& g) {
    return json{{"n", g.vertex_count()}, {"m", g.edge_count()}, {"deficit", graph_deficit(g).to_string()}};
}

int cmd_solve(const Options& o, std::ostream& out, std::ostream& err) {
    const ProblemKind kind = problem_kind(o.kind);
    const StepMode mode = step_mode(o.mode);
    const Graph g = load_instance(o.instance);
    json timings = json::object();

    auto t0 = Clock::now();
    CoverSolution sol = solve(g, kind);
    timings["solve"] = millis(t0);
    const EdgeSet cover = sol.edge_set();

    std::optional<RepairResult> repaired;
    if (o.repair) {
        t0 = Clock::now();
        repaired = run_repair(g, cover, kind, mode);
        timings["repair"] = millis(t0);
        if (kind == ProblemKind::gmvd) {
            for (std::size_t i = 0; i < sol.edges.size(); ++i) {
                const auto& inc = repaired->split.increase;
                sol.roles[i] = std::binary_search(inc.begin(), inc.end(), sol.edges[i]) ? EdgeRole::increase
                                                                                        : EdgeRole::decrease;
            }
        }
        if (!o.out.empty()) write_file(o.out, serialize_instance(repaired->graph));
    }

    t0 = Clock::now();
    Verdicts v;
    v.record("cover_valid", validate_cover(g, cover, required_cover(kind)).ok());
    if (repaired) {
        const Graph written = o.out.empty() ? repaired->graph : load_instance(o.out);
        verify_repair(g, written, repaired->split, v);
    }
    timings["verify"] = millis(t0);

    json instance = instance_json(g);
    instance["layers"] = sol.layer_deficits.size();
    json edges = json::array();
    for (std::size_t i = 0; i < sol.edges.size(); ++i) {
        json item = edge_json(g, sol.edges[i]);
        item["role"] = to_string(sol.roles[i]);
        edges.push_back(item);
    }
    json report{{"command", "solve"},
                {"kind", to_string(kind)},
                {"instance", instance},
                {"solution", {{"size", sol.edges.size()}, {"edges", edges}, {"layer_deficits", weights_json(sol.layer_deficits)}}},
                {"repair", repaired ? repair_json(g, *repaired) : json(nullptr)},
                {"verification", v.checks},
                {"timings_ms", timings}};

    emit(o, report, [&](std::ostream& s) {
        s << "instance: n=" << g.vertex_count() << " m=" << g.edge_count() << " deficit=" << instance["deficit"].get<std::string>()
          << " layers=" << sol.layer_deficits.size() << '\n';
        s << "solution (" << to_string(kind) << "): " << sol.edges.size() << " edge(s)\n";
        for (std::size_t i = 0; i < sol.edges.size(); ++i) {
            s << "  " << describe_edge(g, sol.edges[i]) << ' ' << to_string(sol.roles[i]) << '\n';
        }
        if (repaired) {
            s << "repair: " << repaired->steps << " step(s), " << repaired->changed.size() << " weight(s) changed\n";
            for (const auto& c : repaired->changed) {
                s << "  " << describe_edge(g, c.edge) << ' ' << c.before << " -> " << c.after << '\n';
            }
            if (!repaired->unresolved.empty()) s << "  " << repaired->unresolved.size() << " zero weight(s) could not be lifted\n";
        }
        s << "verification: " << check_line(v) << '\n';
    }, out);
    return finish(v, err);
}

int cmd_check(const Options& o, std::ostream& out) {
    const CoverKind kind = cover_kind(o.kind);
    const Graph g = load_instance(o.instance);
    const EdgeSet cover = parse_file(o.cover, [&](const std::string& text) { return parse_cover(text, g); });
    const CoverVerdict verdict = validate_cover(g, cover, kind);
    json report{{"command", "check"}, {"kind", to_string(kind)}, {"cover_size", cover.size()}, {"ok", verdict.ok()},
                {"witness", verdict.ok() ? json(nullptr) : witness_json(g, *verdict.witness)}};
    emit(o, report, [&](std::ostream& s) {
        if (verdict.ok()) {
            s << "ok\n";
        } else {
            s << "not a " << to_string(kind) << " cover; uncovered cycle: " << describe_witness(g, *verdict.witness) << '\n';
        }
    }, out);
    return verdict.ok() ? exit_ok : exit_negative;
}

int cmd_repair(const Options& o, std::ostream& out, std::ostream& err) {
    const ProblemKind kind = problem_kind(o.kind);
    const Graph g = load_instance(o.instance);
    const EdgeSet cover = parse_file(o.cover, [&](const std::string& text) { return parse_cover(text, g); });
    auto t0 = Clock::now();
    RepairResult r = run_repair(g, cover, kind, step_mode(o.mode));
    json timings{{"repair", millis(t0)}};
    if (!o.out.empty()) write_file(o.out, serialize_instance(r.graph));

    t0 = Clock::now();
    Verdicts v;
    verify_repair(g, o.out.empty() ? r.graph : load_instance(o.out), r.split, v);
    timings["verify"] = millis(t0);

    json split{{"increase", json::array()}, {"decrease", json::array()}};
    for (EdgeId e : r.split.increase) split["increase"].push_back(edge_json(g, e));
    for (EdgeId e : r.split.decrease) split["decrease"].push_back(edge_json(g, e));
    json report{{"command", "repair"}, {"kind", to_string(kind)}, {"instance", instance_json(g)}, {"split", split},
                {"repair", repair_json(g, r)}, {"verification", v.checks}, {"timings_ms", timings}};
    emit(o, report, [&](std::ostream& s) {
        s << "split: " << r.split.increase.size() << " increase, " << r.split.decrease.size() << " decrease\n";
        s << "repair: " << r.steps << " step(s), " << r.changed.size() << " weight(s) changed\n";
        for (const auto& c : r.changed) s << "  " << describe_edge(g, c.edge) << ' ' << c.before << " -> " << c.after << '\n';
        if (o.out.empty()) s << serialize_instance(r.graph) << '\n';
        s << "verification: " << check_line(v) << '\n';
    }, out);
    return finish(v, err);
}

// Optimum equivalence between a source problem and its reduced instance, when the oracle budget allows.
std::string reduction_check(const std::function<std::pair<std::size_t, std::size_t>()>& optima,
                            Verdicts& v) {
    try {
        auto [source, reduced] = optima();
        v.record("optimum_equal", source == reduced,
                 "source optimum " + std::to_string(source) + " vs reduced optimum " + std::to_string(reduced));
        return std::to_string(source) + " = " + std::to_string(reduced);
    } catch (const oracle::BudgetExceeded&) {
        return "skipped (oracle budget exceeded)";
    }
}

int cmd_reduce(const Options& o, std::ostream& out, std::ostream& err) {
    const oracle::OracleBudget budget{o.budget};
    reductions::ReductionArtifact art;
    Verdicts v;
    std::string optimum;
    if (o.from == "multicut") {
        auto mc = parse_file(o.instance, [](const std::string& t) { return reductions::parse_multicut(t); });
        art = reductions::multicut_to_gmvid(mc);
        optimum = reduction_check([&] {
            auto cut = oracle::brute_force_multicut(mc, budget);
            auto cover = oracle::exact_min_cover(art.instance, CoverKind::nontop, budget);
            v.record("back_mapped_feasible", oracle::multicut_feasible(mc, art.translate(cover.edges)));
            return std::pair{cut.size(), cover.edges.size()};
        }, v);
    } else if (o.from == "lbcut") {
        auto lb = parse_file(o.instance, [](const std::string& t) { return reductions::parse_lbcut(t); });
        art = reductions::lbcut_to_gmvid(lb);
        optimum = reduction_check([&] {
            auto cut = oracle::brute_force_lbcut(lb, budget);
            auto cover = oracle::exact_min_cover(art.instance, CoverKind::nontop, budget);
            v.record("back_mapped_feasible", oracle::lbcut_feasible(lb, art.translate(cover.edges)));
            return std::pair{cut.size(), cover.edges.size()};
        }, v);
    } else if (o.from == "gmvid2gmvd") {
        const Graph g = load_instance(o.instance);
        art = reductions::gmvid_to_gmvd(g);
        optimum = reduction_check([&] {
            auto source = oracle::exact_min_cover(g, CoverKind::nontop, budget);
            auto reduced = oracle::exact_min_cover(art.instance, CoverKind::regular, budget);
            return std::pair{source.edges.size(), reduced.edges.size()};
        }, v);
    } else {
        throw InputError("unknown reduction '" + o.from + "' (expected multicut, lbcut or gmvid2gmvd)");
    }
    write_file(o.out, serialize_instance(art.instance));
    write_file(o.out + ".map.json", reductions::back_map_json(art));
    Verdicts written;
    written.record("instance_round_trip", load_instance(o.out) == art.instance);
    for (const auto& [name, value] : written.checks.items()) v.record(name, value.get<bool>());

    json report{{"command", "reduce"},
                {"from", o.from},
                {"target_kind", to_string(art.kind)},
                {"instance", instance_json(art.instance)},
                {"added_vertices", art.instance.vertex_count() - art.first_added_vertex},
                {"added_edges", art.added_edges.size()},
                {"optimum", optimum},
                {"verification", v.checks}};
    emit(o, report, [&](std::ostream& s) {
        s << "reduced " << o.from << " to " << to_string(art.kind) << ": n=" << art.instance.vertex_count()
          << " m=" << art.instance.edge_count() << " (" << art.added_edges.size() << " added edge(s))\n";
        s << "wrote " << o.out << " and " << o.out << ".map.json\n";
        s << "optimum check: " << optimum << '\n';
    }, out);
    return finish(v, err);
}

reductions::RandomGraphParams generator_params(const Options& o, std::uint64_t seed) {
    reductions::RandomGraphParams p;
    p.vertex_count = o.n;
    auto density = Weight::parse(o.density);
    if (!density) throw InputError("density must be a rational such as 1/2");
    p.density = *density;
    p.weight_max = o.weight_max;
    p.violations = o.violations;
    p.max_denominator = o.max_denominator;
    p.seed = seed;
    return p;
}

int cmd_generate(const Options& o, std::ostream& out, std::ostream& err) {
    const Graph g = reductions::gen_random(generator_params(o, o.seed));
    Verdicts v;
    v.record("planted", o.violations == 0 ? is_metric(g) : graph_deficit(g).is_positive());
    const std::string text = serialize_instance(g) + "\n";
    if (o.out.empty()) {
        out << text;
    } else {
        write_file(o.out, text);
    }
    return finish(v, err);
}

int cmd_oracle(const Options& o, std::ostream& out) {
    const CoverKind kind = cover_kind(o.kind);
    if (kind == CoverKind::top) throw InputError("the exact search handles regular and nontop covers");
    const Graph g = load_instance(o.instance);
    const oracle::OracleBudget budget{o.budget};
    auto inventory = oracle::enumerate_unbalanced_cycles(g, std::nullopt, budget);
    auto best = oracle::exact_min_cover(inventory, g.edge_count(), kind, budget);
    json cover = json::array();
    for (EdgeId e : best.edges) cover.push_back(edge_json(g, e));
    json report{{"command", "oracle"},
                {"kind", to_string(kind)},
                {"instance", instance_json(g)},
                {"unbalanced_cycles", inventory.cycles.size()},
                {"distinct_deficits", weights_json(inventory.distinct_deficits)},
                {"optimum", best.edges.size()},
                {"cover", cover}};
    emit(o, report, [&](std::ostream& s) {
        s << "unbalanced cycles: " << inventory.cycles.size() << ", distinct deficits: " << inventory.distinct_deficits.size()
          << '\n';
        s << "minimum " << to_string(kind) << " cover: " << best.edges.size() << " edge(s)\n";
        s << serialize_cover(g, best.edges);
    }, out);
    return exit_ok;
}

std::string ratio_text(std::size_t size, std::size_t opt) {
    if (opt == 0) return size == 0 ? "1" : "inf";
    return Weight(mpz_class(std::to_string(size)), mpz_class(std::to_string(opt))).to_string();
}

int cmd_bench(const Options& o, std::ostream& out, std::ostream& err) {
    const ProblemKind kind = problem_kind(o.kind);
    const oracle::OracleBudget budget{o.budget};
    json trials = json::array();
    std::size_t verified = 0;
    std::size_t with_opt = 0;
    std::optional<Weight> max_ratio;
    json timings = json::array();
    std::vector<std::string> failures;

    for (std::size_t i = 0; i < o.trials; ++i) {
        const std::uint64_t seed = o.seed + i;
        const Graph g = reductions::gen_random(generator_params(o, seed));
        auto t0 = Clock::now();
        CoverSolution sol = solve(g, kind);
        const double solve_ms = millis(t0);
        const EdgeSet cover = sol.edge_set();

        Verdicts v;
        v.record("cover_valid", validate_cover(g, cover, required_cover(kind)).ok());
        RepairResult r = run_repair(g, cover, kind, StepMode::batched);
        verify_repair(g, r.graph, r.split, v);
        if (v.ok()) {
            ++verified;
        } else {
            for (const auto& f : v.failures) failures.push_back("seed " + std::to_string(seed) + ": " + f);
        }

        json trial{{"seed", seed}, {"n", g.vertex_count()}, {"m", g.edge_count()}, {"deficit", graph_deficit(g).to_string()},
                   {"size", sol.edges.size()}, {"layers", sol.layer_deficits.size()}, {"verified", v.ok()}};
        if (kind == ProblemKind::gmvdd) {
            trial["oracle"] = "exact";
            trial["optimum"] = sol.edges.size();
            trial["ratio"] = "1";
        } else {
            try {
                auto opt = oracle::exact_min_cover(g, required_cover(kind), budget);
                trial["oracle"] = "ok";
                trial["optimum"] = opt.edges.size();
                trial["ratio"] = ratio_text(sol.edges.size(), opt.edges.size());
                ++with_opt;
                if (!opt.edges.empty()) {
                    Weight ratio(mpz_class(std::to_string(sol.edges.size())), mpz_class(std::to_string(opt.edges.size())));
                    if (!max_ratio || ratio > *max_ratio) max_ratio = ratio;
                }
            } catch (const oracle::BudgetExceeded&) {
                trial["oracle"] = "budget_exceeded";
                trial["optimum"] = nullptr;
                trial["ratio"] = nullptr;
            }
        }
        trials.push_back(trial);
        timings.push_back(json{{"seed", seed}, {"solve", solve_ms}});
    }

    json report{{"command", "bench"},
                {"kind", to_string(kind)},
                {"params", {{"n", o.n}, {"density", o.density}, {"weight_max", o.weight_max}, {"violations", o.violations},
                            {"max_denominator", o.max_denominator}, {"trials", o.trials}, {"seed", o.seed},
                            {"oracle_budget", o.budget}}},
                {"summary", {{"verified", verified}, {"with_optimum", with_opt},
                             {"max_ratio", max_ratio ? json(max_ratio->to_string()) : json(nullptr)}}},
                {"trials", trials},
                {"timings_ms", timings}};
    emit(o, report, [&](std::ostream& s) {
        s << "bench " << to_string(kind) << ": " << o.trials << " trial(s), " << verified << " verified, " << with_opt
          << " with optimum";
        if (max_ratio) s << ", max ratio " << *max_ratio;
        s << '\n';
        for (const auto& t : trials) {
            s << "  seed " << t["seed"].get<std::uint64_t>() << ": n=" << t["n"].get<std::size_t>()
              << " m=" << t["m"].get<std::size_t>() << " |S|=" << t["size"].get<std::size_t>() << " opt="
              << (t["optimum"].is_null() ? std::string("?") : std::to_string(t["optimum"].get<std::size_t>())) << '\n';
        }
    }, out);
    if (failures.empty()) return exit_ok;
    for (const auto& f : failures) err << "verification failed: " << f << '\n';
    return exit_internal;
}

int cmd_export_lp(const Options& o, std::ostream& out) {
    const ProblemKind kind = problem_kind(o.kind);
    const Graph g = load_instance(o.instance);
    EdgeSet cover;
    if (!o.cover.empty()) cover = parse_file(o.cover, [&](const std::string& text) { return parse_cover(text, g); });
    const std::string lp = export_lp(g, cover, kind);
    if (o.out.empty()) {
        out << lp;
    } else {
        write_file(o.out, lp);
    }
    return exit_ok;
}

}  // namespace

std::uint64_t budget_from_env(std::uint64_t fallback) {
    const char* raw = std::getenv("METRIC_MEND_BUDGET");
    if (raw == nullptr || *raw == '\0') return fallback;
    std::string_view text(raw);
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || value == 0) {
        throw std::invalid_argument("METRIC_MEND_BUDGET must be a positive integer, got '" + std::string(text) + "'");
    }
    return value;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    try {
        o.budget = budget_from_env(oracle::OracleBudget{}.max_work);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return exit_input;
    }

    CLI::App app{"Minimum metric violation covers: solve, repair, check, reduce, generate, oracle, bench, export-lp.",
                 "metric_mend"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "machine"}));
    app.add_option("--oracle-budget", o.budget, "Work cap for exact oracles (default from METRIC_MEND_BUDGET)");
    app.add_option("--seed", o.seed, "Random seed for generate and bench");
    app.footer(
        "Instance files: 'n m' then m lines 'u v w' (w positive integer, p/q or decimal; '#' comments).\n"
        "Cover files: one 'u v' per line. Multicut files: edge list 'u v', then 'D k' and k lines 's t'.\n"
        "LB-cut files: edge list, then 'LB s t L'.\n"
        "Exit codes: 0 ok, 1 negative verdict, 2 input error, 3 failed self-verification.");

    auto* solve_cmd = app.add_subcommand("solve", "Greedy cover, optionally followed by weight repair");
    solve_cmd->add_option("instance", o.instance, "Instance file")->required();
    solve_cmd->add_option("--kind", o.kind, "gmvd, gmvid or gmvdd");
    solve_cmd->add_flag("--repair", o.repair, "Repair the weights with the computed cover");
    solve_cmd->add_option("--mode", o.mode, "Repair steps: unit or batched");
    solve_cmd->add_option("--out", o.out, "Write the repaired instance here");
    solve_cmd->add_option("--report", o.report, "Write the JSON report here");

    auto* repair_cmd = app.add_subcommand("repair", "Repair weights using a given cover");
    repair_cmd->add_option("instance", o.instance, "Instance file")->required();
    repair_cmd->add_option("cover", o.cover, "Cover file")->required();
    repair_cmd->add_option("--kind", o.kind, "gmvd, gmvid or gmvdd");
    repair_cmd->add_option("--mode", o.mode, "unit or batched");
    repair_cmd->add_option("--out", o.out, "Write the repaired instance here");
    repair_cmd->add_option("--report", o.report, "Write the JSON report here");

    auto* check_cmd = app.add_subcommand("check", "Check that an edge set covers every unbalanced cycle");
    check_cmd->add_option("instance", o.instance, "Instance file")->required();
    check_cmd->add_option("cover", o.cover, "Cover file")->required();
    check_cmd->add_option("--kind", o.kind, "regular, nontop, top (or gmvd, gmvid, gmvdd)");

    auto* reduce_cmd = app.add_subcommand("reduce", "Build a reduced instance with a back-map sidecar");
    reduce_cmd->add_option("source", o.instance, "Source problem file")->required();
    reduce_cmd->add_option("--from", o.from, "multicut, lbcut or gmvid2gmvd")->required();
    reduce_cmd->add_option("--out", o.out, "Reduced instance path; the back-map goes to <out>.map.json")->required();

    auto* generate_cmd = app.add_subcommand("generate", "Random metric graph with planted violations");
    generate_cmd->add_option("--n", o.n, "Vertex count");
    generate_cmd->add_option("--density", o.density, "Edge probability in (0,1]");
    generate_cmd->add_option("--weight-max", o.weight_max, "Largest numerator per unit denominator");
    generate_cmd->add_option("--violations", o.violations, "Edges to perturb");
    generate_cmd->add_option("--max-denominator", o.max_denominator, "Largest weight denominator");
    generate_cmd->add_option("--out", o.out, "Output file (default stdout)");

    auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive cycle inventory and exact minimum cover");
    oracle_cmd->add_option("instance", o.instance, "Instance file")->required();
    oracle_cmd->add_option("--kind", o.kind, "regular or nontop (or gmvd, gmvid)");

    auto* bench_cmd = app.add_subcommand("bench", "Solve random instances and compare against the oracle");
    bench_cmd->add_option("--kind", o.kind, "gmvd, gmvid or gmvdd");
    bench_cmd->add_option("--n", o.n, "Vertex count");
    bench_cmd->add_option("--density", o.density, "Edge probability in (0,1]");
    bench_cmd->add_option("--weight-max", o.weight_max, "Largest numerator per unit denominator");
    bench_cmd->add_option("--violations", o.violations, "Edges to perturb");
    bench_cmd->add_option("--max-denominator", o.max_denominator, "Largest weight denominator");
    bench_cmd->add_option("--trials", o.trials, "Number of instances; seeds are seed, seed+1, ...");
    bench_cmd->add_option("--report", o.report, "Write the JSON report here");

    auto* lp_cmd = app.add_subcommand("export-lp", "Write the metric feasibility LP for a cover");
    lp_cmd->add_option("instance", o.instance, "Instance file")->required();
    lp_cmd->add_option("cover", o.cover, "Cover file (default: empty cover)");
    lp_cmd->add_option("--kind", o.kind, "gmvd, gmvid or gmvdd");
    lp_cmd->add_option("--out", o.out, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_input;
    }

    try {
        if (solve_cmd->parsed()) return cmd_solve(o, out, err);
        if (repair_cmd->parsed()) return cmd_repair(o, out, err);
        if (check_cmd->parsed()) return cmd_check(o, out);
        if (reduce_cmd->parsed()) return cmd_reduce(o, out, err);
        if (generate_cmd->parsed()) return cmd_generate(o, out, err);
        if (oracle_cmd->parsed()) return cmd_oracle(o, out);
        if (bench_cmd->parsed()) return cmd_bench(o, out, err);
        if (lp_cmd->parsed()) return cmd_export_lp(o, out);
    } catch (const InternalInconsistency& e) {
        err << "internal inconsistency: " << e.what() << '\n';
        return exit_internal;
    } catch (const CoverRejected& e) {
        err << "error: " << e.what() << '\n';
        return exit_input;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return exit_input;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_input;
    } catch (const oracle::BudgetExceeded& e) {
        err << "error: " << e.what() << " (raise --oracle-budget or METRIC_MEND_BUDGET)\n";
        return exit_input;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return exit_input;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return exit_internal;
    }
    return exit_input;
}

}  // namespace metric_mend::cli
