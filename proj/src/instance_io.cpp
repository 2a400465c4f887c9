#include "metric_mend/instance_io.hpp"

#include <charconv>
#include <set>
#include <sstream>

namespace metric_mend {

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

namespace detail {

std::vector<TokenLine> tokenize_lines(std::string_view text) {
    std::vector<TokenLine> out;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        ++number;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        TokenLine tl{number, {}};
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
            std::size_t j = i;
            while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
            if (j > i) tl.tokens.push_back(line.substr(i, j - i));
            i = j;
        }
        if (!tl.tokens.empty()) out.push_back(std::move(tl));
        if (end == text.size()) break;
        pos = end + 1;
    }
    return out;
}

std::size_t parse_index(std::string_view token, std::size_t line, const char* what) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw ParseError(line, std::string("expected ") + what + ", got '" + std::string(token) + "'");
    }
    return value;
}

}  // namespace detail

using detail::parse_index;

Graph parse_instance(std::string_view text) {
    auto lines = detail::tokenize_lines(text);
    if (lines.empty()) throw ParseError(0, "empty instance: expected header line 'n m'");
    const auto& header = lines.front();
    if (header.tokens.size() != 2) throw ParseError(header.number, "header must be 'n m'");
    std::size_t n = parse_index(header.tokens[0], header.number, "vertex count");
    std::size_t m = parse_index(header.tokens[1], header.number, "edge count");
    if (n == 0) throw ParseError(header.number, "vertex count must be positive");
    if (lines.size() - 1 != m) {
        std::size_t where = lines.size() - 1 > m ? lines[m + 1].number : lines.back().number;
        throw ParseError(where, "header announces " + std::to_string(m) + " edges but " +
                                    std::to_string(lines.size() - 1) + " edge lines follow");
    }

    std::vector<Edge> edges;
    edges.reserve(m);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& ln = lines[i];
        if (ln.tokens.size() != 3) throw ParseError(ln.number, "edge line must be 'u v w'");
        std::size_t u = parse_index(ln.tokens[0], ln.number, "vertex id");
        std::size_t v = parse_index(ln.tokens[1], ln.number, "vertex id");
        if (u >= n || v >= n) {
            throw ParseError(ln.number, "vertex id out of range [0, " + std::to_string(n) + ")");
        }
        if (u == v) throw ParseError(ln.number, "self-loop at vertex " + std::to_string(u));
        auto w = Weight::parse(ln.tokens[2]);
        if (!w) throw ParseError(ln.number, "malformed weight '" + std::string(ln.tokens[2]) + "'");
        if (!w->is_positive()) throw ParseError(ln.number, "weight must be positive");
        if (!seen.insert(std::minmax(u, v)).second) {
            throw ParseError(ln.number, "duplicate edge (" + std::to_string(std::min(u, v)) + "," +
                                            std::to_string(std::max(u, v)) + ")");
        }
        edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v), std::move(*w)});
    }
    return Graph(n, std::move(edges));
}

std::string serialize_instance(const Graph& g) {
    std::ostringstream out;
    out << g.vertex_count() << ' ' << g.edge_count();
    for (const auto& e : g.edges()) out << '\n' << e.u << ' ' << e.v << ' ' << e.weight;
    return out.str();
}

EdgeSet parse_cover(std::string_view text, const Graph& g) {
    std::vector<EdgeId> ids;
    for (const auto& ln : detail::tokenize_lines(text)) {
        if (ln.tokens.size() != 2) throw ParseError(ln.number, "cover line must be 'u v'");
        std::size_t u = parse_index(ln.tokens[0], ln.number, "vertex id");
        std::size_t v = parse_index(ln.tokens[1], ln.number, "vertex id");
        if (u >= g.vertex_count() || v >= g.vertex_count()) throw ParseError(ln.number, "vertex id out of range");
        auto id = g.find_edge(static_cast<VertexId>(u), static_cast<VertexId>(v));
        if (!id) {
            throw ParseError(ln.number,
                             "(" + std::to_string(u) + "," + std::to_string(v) + ") is not an edge of the instance");
        }
        ids.push_back(*id);
    }
    return normalize_edge_set(g, std::move(ids));
}

std::string serialize_cover(const Graph& g, std::span<const EdgeId> cover) {
    std::ostringstream out;
    for (EdgeId id : cover) out << g.edge(id).u << ' ' << g.edge(id).v << '\n';
    return out.str();
}

}  // namespace metric_mend
