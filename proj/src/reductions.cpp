#include "metric_mend/reductions.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "metric_mend/instance_io.hpp"
#include "metric_mend/shortest_paths.hpp"

namespace metric_mend::reductions {

std::string to_string(EdgeOrigin::Kind kind) {
    switch (kind) {
        case EdgeOrigin::Kind::source_edge: return "source_edge";
        case EdgeOrigin::Kind::demand: return "demand";
        case EdgeOrigin::Kind::length_bound: return "length_bound";
        case EdgeOrigin::Kind::gadget_left: return "gadget_left";
        case EdgeOrigin::Kind::gadget_right: return "gadget_right";
    }
    return "?";
}

std::vector<std::size_t> ReductionArtifact::translate(std::span<const EdgeId> cover) const {
    std::vector<std::size_t> out;
    for (EdgeId id : cover) {
        const auto& origin = back_map.at(id);
        if (origin.kind == EdgeOrigin::Kind::source_edge) out.push_back(origin.index);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void validate(const Topology& t) {
    std::set<VertexPair> seen;
    for (auto [a, b] : t.edges) {
        if (a >= t.vertex_count || b >= t.vertex_count) throw GraphError("edge endpoint out of range");
        if (a == b) throw GraphError("self-loop at vertex " + std::to_string(a));
        if (!seen.insert(std::minmax(a, b)).second) {
            throw GraphError("parallel edge (" + std::to_string(std::min(a, b)) + "," + std::to_string(std::max(a, b)) +
                             ")");
        }
    }
}

namespace {

using OriginMap = std::map<VertexPair, EdgeOrigin>;

// Builds the weighted instance and aligns back_map with the graph's sorted edge ids.
ReductionArtifact assemble(std::size_t n, std::vector<Edge> edges, const OriginMap& origins, ProblemKind kind,
                           std::size_t first_added_vertex) {
    ReductionArtifact art;
    art.instance = Graph(n, std::move(edges));
    art.kind = kind;
    art.first_added_vertex = first_added_vertex;
    for (EdgeId id = 0; id < art.instance.edge_count(); ++id) {
        const Edge& e = art.instance.edge(id);
        const EdgeOrigin& origin = origins.at({e.u, e.v});
        art.back_map.push_back(origin);
        if (origin.kind != EdgeOrigin::Kind::source_edge) art.added_edges.push_back(id);
    }
    return art;
}

VertexPair ordered(VertexId a, VertexId b) { return std::minmax(a, b); }

}  // namespace

ReductionArtifact multicut_to_gmvid(const MulticutInstance& mc) {
    validate(mc.graph);
    const std::size_t n = mc.graph.vertex_count;
    std::vector<Edge> edges;
    OriginMap origins;
    for (std::size_t i = 0; i < mc.graph.edges.size(); ++i) {
        auto [a, b] = mc.graph.edges[i];
        edges.push_back({a, b, Weight(1)});
        origins[ordered(a, b)] = {EdgeOrigin::Kind::source_edge, i, 0};
    }
    for (std::size_t i = 0; i < mc.demands.size(); ++i) {
        auto [s, t] = mc.demands[i];
        if (s >= n || t >= n || s == t) throw GraphError("demand " + std::to_string(i) + " is not a pair of distinct vertices");
        auto key = ordered(s, t);
        if (auto it = origins.find(key); it != origins.end()) {
            throw GraphError(it->second.kind == EdgeOrigin::Kind::demand
                                 ? "demand (" + std::to_string(s) + "," + std::to_string(t) + ") repeats"
                                 : "demand (" + std::to_string(s) + "," + std::to_string(t) + ") is already an edge");
        }
        edges.push_back({s, t, Weight(static_cast<long>(n))});
        origins[key] = {EdgeOrigin::Kind::demand, i, 0};
    }
    return assemble(n, std::move(edges), origins, ProblemKind::gmvid, n);
}

ReductionArtifact lbcut_to_gmvid(const LbCutInstance& lb) {
    validate(lb.graph);
    const std::size_t n = lb.graph.vertex_count;
    if (lb.source >= n || lb.sink >= n || lb.source == lb.sink) throw GraphError("source and sink must be distinct vertices");
    if (lb.bound == 0) throw GraphError("length bound must be positive");
    std::vector<Edge> edges;
    OriginMap origins;
    for (std::size_t i = 0; i < lb.graph.edges.size(); ++i) {
        auto [a, b] = lb.graph.edges[i];
        edges.push_back({a, b, Weight(1)});
        origins[ordered(a, b)] = {EdgeOrigin::Kind::source_edge, i, 0};
    }
    auto key = ordered(lb.source, lb.sink);
    if (origins.count(key)) throw GraphError("(source, sink) is already an edge");
    edges.push_back({lb.source, lb.sink, Weight(mpq_class(mpz_class(std::to_string(lb.bound)) + 1))});
    origins[key] = {EdgeOrigin::Kind::length_bound, 0, 0};
    return assemble(n, std::move(edges), origins, ProblemKind::gmvid, n);
}

ReductionArtifact gmvid_to_gmvd(const Graph& g) {
    const std::size_t n = g.vertex_count();
    const std::size_t copies = g.edge_count() + 1;
    const EdgeSet tops = overweight_edges(g, all_pairs_shortest_paths(g, PathCounting::distances_only));
    const Weight heavy = g.max_weight() + Weight(1);

    std::vector<Edge> edges(g.edges().begin(), g.edges().end());
    OriginMap origins;
    for (EdgeId id = 0; id < g.edge_count(); ++id) origins[{g.edge(id).u, g.edge(id).v}] = {EdgeOrigin::Kind::source_edge, id, 0};

    for (std::size_t i = 0; i < tops.size(); ++i) {
        const Edge& top = g.edge(tops[i]);
        const Weight light = heavy - top.weight;
        for (std::size_t j = 0; j < copies; ++j) {
            auto gadget = static_cast<VertexId>(n + i * copies + j);
            edges.push_back({top.u, gadget, heavy});
            edges.push_back({top.v, gadget, light});
            origins[ordered(top.u, gadget)] = {EdgeOrigin::Kind::gadget_left, i, j};
            origins[ordered(top.v, gadget)] = {EdgeOrigin::Kind::gadget_right, i, j};
        }
    }
    return assemble(n + tops.size() * copies, std::move(edges), origins, ProblemKind::gmvd, n);
}

namespace {

struct TopologyPrefix {
    Topology topology;
    std::vector<detail::TokenLine> trailer;
};

TopologyPrefix parse_topology_prefix(std::string_view text) {
    auto lines = detail::tokenize_lines(text);
    if (lines.empty()) throw ParseError(0, "empty input: expected header line 'n m'");
    const auto& header = lines.front();
    if (header.tokens.size() != 2) throw ParseError(header.number, "header must be 'n m'");
    TopologyPrefix out;
    out.topology.vertex_count = detail::parse_index(header.tokens[0], header.number, "vertex count");
    std::size_t m = detail::parse_index(header.tokens[1], header.number, "edge count");
    if (out.topology.vertex_count == 0) throw ParseError(header.number, "vertex count must be positive");
    if (lines.size() < m + 1) throw ParseError(lines.back().number, "fewer edge lines than announced");
    for (std::size_t i = 1; i <= m; ++i) {
        const auto& ln = lines[i];
        if (ln.tokens.size() != 2 && !(ln.tokens.size() == 3 && ln.tokens[2] == "1")) {
            throw ParseError(ln.number, "edge line must be 'u v' (an optional weight must be 1)");
        }
        auto a = detail::parse_index(ln.tokens[0], ln.number, "vertex id");
        auto b = detail::parse_index(ln.tokens[1], ln.number, "vertex id");
        if (a >= out.topology.vertex_count || b >= out.topology.vertex_count) {
            throw ParseError(ln.number, "vertex id out of range");
        }
        out.topology.edges.emplace_back(static_cast<VertexId>(a), static_cast<VertexId>(b));
    }
    try {
        validate(out.topology);
    } catch (const GraphError& e) {
        throw ParseError(0, e.what());
    }
    out.trailer.assign(lines.begin() + static_cast<std::ptrdiff_t>(m + 1), lines.end());
    return out;
}

VertexId parse_vertex(std::string_view token, std::size_t line, std::size_t n) {
    auto v = detail::parse_index(token, line, "vertex id");
    if (v >= n) throw ParseError(line, "vertex id out of range");
    return static_cast<VertexId>(v);
}

void write_topology(std::ostringstream& out, const Topology& t) {
    out << t.vertex_count << ' ' << t.edges.size() << '\n';
    for (auto [a, b] : t.edges) out << a << ' ' << b << '\n';
}

}  // namespace

MulticutInstance parse_multicut(std::string_view text) {
    auto prefix = parse_topology_prefix(text);
    MulticutInstance mc{std::move(prefix.topology), {}};
    const auto& trailer = prefix.trailer;
    if (trailer.empty()) return mc;
    const auto& head = trailer.front();
    if (head.tokens.size() != 2 || head.tokens[0] != "D") throw ParseError(head.number, "expected demand header 'D k'");
    std::size_t k = detail::parse_index(head.tokens[1], head.number, "demand count");
    if (trailer.size() != k + 1) throw ParseError(trailer.back().number, "demand count does not match demand lines");
    for (std::size_t i = 1; i <= k; ++i) {
        const auto& ln = trailer[i];
        if (ln.tokens.size() != 2) throw ParseError(ln.number, "demand line must be 's t'");
        mc.demands.emplace_back(parse_vertex(ln.tokens[0], ln.number, mc.graph.vertex_count),
                                parse_vertex(ln.tokens[1], ln.number, mc.graph.vertex_count));
    }
    return mc;
}

LbCutInstance parse_lbcut(std::string_view text) {
    auto prefix = parse_topology_prefix(text);
    if (prefix.trailer.size() != 1) throw ParseError(0, "expected exactly one 'LB s t L' line after the edges");
    const auto& ln = prefix.trailer.front();
    if (ln.tokens.size() != 4 || ln.tokens[0] != "LB") throw ParseError(ln.number, "expected 'LB s t L'");
    LbCutInstance lb;
    lb.graph = std::move(prefix.topology);
    lb.source = parse_vertex(ln.tokens[1], ln.number, lb.graph.vertex_count);
    lb.sink = parse_vertex(ln.tokens[2], ln.number, lb.graph.vertex_count);
    lb.bound = detail::parse_index(ln.tokens[3], ln.number, "length bound");
    return lb;
}

std::string serialize_multicut(const MulticutInstance& mc) {
    std::ostringstream out;
    write_topology(out, mc.graph);
    out << "D " << mc.demands.size() << '\n';
    for (auto [s, t] : mc.demands) out << s << ' ' << t << '\n';
    return out.str();
}

std::string serialize_lbcut(const LbCutInstance& lb) {
    std::ostringstream out;
    write_topology(out, lb.graph);
    out << "LB " << lb.source << ' ' << lb.sink << ' ' << lb.bound << '\n';
    return out.str();
}

std::string back_map_json(const ReductionArtifact& artifact) {
    nlohmann::json doc;
    doc["kind"] = to_string(artifact.kind);
    doc["vertex_count"] = artifact.instance.vertex_count();
    doc["first_added_vertex"] = artifact.first_added_vertex;
    auto& edges = doc["edges"] = nlohmann::json::array();
    for (EdgeId id = 0; id < artifact.instance.edge_count(); ++id) {
        const Edge& e = artifact.instance.edge(id);
        const EdgeOrigin& o = artifact.back_map[id];
        nlohmann::json item{{"u", e.u}, {"v", e.v}, {"weight", e.weight.to_string()}, {"origin", to_string(o.kind)},
                            {"index", o.index}};
        if (o.kind == EdgeOrigin::Kind::gadget_left || o.kind == EdgeOrigin::Kind::gadget_right) item["gadget"] = o.gadget;
        edges.push_back(std::move(item));
    }
    doc["added_edges"] = artifact.added_edges;
    return doc.dump(2);
}

namespace {

// Portable uniform draw: std::uniform_int_distribution is not specified
// bit-for-bit across standard libraries, and generated instances must be
// reproducible from the seed alone.
class Draw {
public:
    explicit Draw(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

    bool chance(const Weight& p) {
        if (p >= Weight(1)) return true;
        const std::uint64_t den = p.denominator().get_ui();
        return below(den) < p.numerator().get_ui();
    }

private:
    std::mt19937_64 engine_;
};

Weight random_weight(Draw& draw, const RandomGraphParams& p) {
    std::uint64_t q = draw.between(1, p.max_denominator);
    std::uint64_t num = draw.between(1, p.weight_max * q);
    return Weight(mpz_class(std::to_string(num)), mpz_class(std::to_string(q)));
}

Graph metric_base(Draw& draw, const RandomGraphParams& p) {
    std::vector<Edge> edges;
    for (VertexId u = 0; u < p.vertex_count; ++u) {
        for (VertexId v = u + 1; v < p.vertex_count; ++v) {
            if (draw.chance(p.density)) edges.push_back({u, v, random_weight(draw, p)});
        }
    }
    Graph g(p.vertex_count, std::move(edges));
    auto tables = all_pairs_shortest_paths(g, PathCounting::distances_only);
    std::vector<Weight> metric;
    for (const auto& e : g.edges()) metric.push_back(tables.dist(e.u, e.v).weight());
    return g.with_weights(std::move(metric));
}

Graph perturb(Draw& draw, const Graph& base, const RandomGraphParams& p) {
    std::vector<EdgeId> ids(base.edge_count());
    for (EdgeId i = 0; i < ids.size(); ++i) ids[i] = i;
    std::vector<Weight> weights;
    for (const auto& e : base.edges()) weights.push_back(e.weight);
    for (std::size_t k = 0; k < p.violations; ++k) {
        std::swap(ids[k], ids[k + draw.below(ids.size() - k)]);
        EdgeId id = ids[k];
        if (draw.below(2) == 0) {
            weights[id] += random_weight(draw, p);
        } else {
            std::uint64_t q = draw.between(2, 4);
            std::uint64_t num = draw.between(1, q - 1);
            weights[id] *= Weight(mpz_class(std::to_string(num)), mpz_class(std::to_string(q)));
        }
    }
    return base.with_weights(std::move(weights));
}

}  // namespace

Graph gen_random(const RandomGraphParams& p) {
    if (p.vertex_count < 3) throw std::invalid_argument("gen_random needs at least 3 vertices");
    if (!p.density.is_positive() || p.density > Weight(1)) throw std::invalid_argument("density must lie in (0, 1]");
    if (!p.density.denominator().fits_ulong_p()) throw std::invalid_argument("density denominator too large");
    if (p.weight_max == 0) throw std::invalid_argument("weight_max must be at least 1");
    if (p.max_denominator == 0) throw std::invalid_argument("max_denominator must be at least 1");
    if (p.violations > p.vertex_count * (p.vertex_count - 1) / 2) {
        throw std::invalid_argument("more violations requested than vertex pairs");
    }

    constexpr int kGraphAttempts = 64;
    constexpr int kPerturbAttempts = 32;
    Draw draw(p.seed);
    for (int attempt = 0; attempt < kGraphAttempts; ++attempt) {
        Graph base = metric_base(draw, p);
        if (p.violations == 0) return base;
        if (base.edge_count() < p.violations) continue;
        for (int k = 0; k < kPerturbAttempts; ++k) {
            Graph g = perturb(draw, base, p);
            if (!is_metric(g)) return g;
        }
    }
    throw std::invalid_argument("could not plant a triangle violation with these parameters");
}

}  // namespace metric_mend::reductions
