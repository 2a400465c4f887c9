#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "metric_mend/graph.hpp"

namespace metric_mend {

/// Malformed input text. line() is 1-based, or 0 when the error is not tied to a line.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& message);
    [[nodiscard]] std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Edge-list instance format:
///
///     # comment
///     n m
///     u v w        (m lines; w a positive integer, p/q, or exact decimal)
///
/// Vertices are 0-based; edges are unordered and at most one per pair.
Graph parse_instance(std::string_view text);

/// Canonical text: header line then edges in (u, v) order, no trailing newline.
std::string serialize_instance(const Graph& g);

/// Cover files list one edge per line as "u v"; '#' starts a comment.
EdgeSet parse_cover(std::string_view text, const Graph& g);
std::string serialize_cover(const Graph& g, std::span<const EdgeId> cover);

namespace detail {

/// Non-empty lines with comments stripped, tokenized on whitespace.
struct TokenLine {
    std::size_t number;
    std::vector<std::string_view> tokens;
};
std::vector<TokenLine> tokenize_lines(std::string_view text);

std::size_t parse_index(std::string_view token, std::size_t line, const char* what);

}  // namespace detail

}  // namespace metric_mend
