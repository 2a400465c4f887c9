#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "metric_mend/graph.hpp"
#include "metric_mend/reductions.hpp"

namespace fixtures {

using metric_mend::Graph;
using metric_mend::Weight;

inline Weight w(const std::string& text) { return *Weight::parse(text); }

inline Graph make(std::size_t n, const std::vector<std::tuple<unsigned, unsigned, std::string>>& edges) {
    std::vector<metric_mend::Edge> list;
    for (const auto& [u, v, weight] : edges) list.push_back({u, v, w(weight)});
    return Graph(n, std::move(list));
}

// Triangle with weights (0,1)=1, (1,2)=1, (0,2)=5.
inline Graph k3() { return make(3, {{0, 1, "1"}, {1, 2, "1"}, {0, 2, "5"}}); }

// Unit 4-cycle a-b-c-d (0-1-2-3) with chord (a,c) of weight 5.
inline Graph square_with_chord() {
    return make(4, {{0, 1, "1"}, {1, 2, "1"}, {2, 3, "1"}, {0, 3, "1"}, {0, 2, "5"}});
}

inline Graph unit_square() { return make(4, {{0, 1, "1"}, {1, 2, "1"}, {2, 3, "1"}, {0, 3, "1"}}); }

inline metric_mend::EdgeId id(const Graph& g, unsigned a, unsigned b) { return *g.find_edge(a, b); }

// Corpus entry `index`: n in [4,8], rational weights, 0-3 planted violations.
inline metric_mend::reductions::RandomGraphParams corpus_params(std::uint64_t index) {
    metric_mend::reductions::RandomGraphParams p;
    p.vertex_count = 4 + index % 5;
    static const char* densities[] = {"1/2", "2/3", "1"};
    p.density = w(densities[(index / 5) % 3]);
    p.weight_max = 12;
    p.max_denominator = 1 + (index / 15) % 3;
    p.violations = (index / 3) % 4;
    p.seed = 0x5eed0000ULL + index;
    return p;
}

inline Graph corpus_graph(std::uint64_t index) { return metric_mend::reductions::gen_random(corpus_params(index)); }

}  // namespace fixtures
