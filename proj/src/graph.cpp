#include "metric_mend/graph.hpp"

#include <algorithm>
#include <numeric>

namespace metric_mend {

Graph::Graph(std::size_t vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)), adjacency_(vertex_count) {
    for (auto& e : edges_) {
        if (e.u >= vertex_count_ || e.v >= vertex_count_) {
            throw GraphError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                             ") references a vertex outside [0, " + std::to_string(vertex_count_) + ")");
        }
        if (e.u == e.v) throw GraphError("self-loop at vertex " + std::to_string(e.u));
        if (e.weight.is_negative()) throw GraphError("negative weight on edge (" + std::to_string(e.u) + "," +
                                                     std::to_string(e.v) + ")");
        if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
    for (std::size_t i = 1; i < edges_.size(); ++i) {
        if (edges_[i - 1].u == edges_[i].u && edges_[i - 1].v == edges_[i].v) {
            throw GraphError("parallel edge (" + std::to_string(edges_[i].u) + "," + std::to_string(edges_[i].v) + ")");
        }
    }
    for (EdgeId id = 0; id < edges_.size(); ++id) {
        adjacency_[edges_[id].u].push_back({edges_[id].v, id});
        adjacency_[edges_[id].v].push_back({edges_[id].u, id});
    }
}

std::optional<EdgeId> Graph::find_edge(VertexId a, VertexId b) const {
    if (a > b) std::swap(a, b);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{a, b}, [](const Edge& e, const auto& key) {
        return std::tie(e.u, e.v) < std::tie(key.first, key.second);
    });
    if (it == edges_.end() || it->u != a || it->v != b) return std::nullopt;
    return static_cast<EdgeId>(it - edges_.begin());
}

Weight Graph::max_weight() const {
    Weight best;
    for (const auto& e : edges_) best = std::max(best, e.weight);
    return best;
}

bool Graph::all_weights_positive() const {
    return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.weight.is_positive(); });
}

Graph Graph::with_weight(EdgeId id, Weight w) const {
    if (w.is_negative()) throw GraphError("negative weight");
    Graph copy = *this;
    copy.edges_.at(id).weight = std::move(w);
    return copy;
}

Graph Graph::with_weights(std::vector<Weight> weights) const {
    if (weights.size() != edges_.size()) throw GraphError("weight vector size does not match edge count");
    Graph copy = *this;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i].is_negative()) throw GraphError("negative weight");
        copy.edges_[i].weight = std::move(weights[i]);
    }
    return copy;
}

Graph Graph::subgraph(const std::vector<bool>& keep, std::vector<EdgeId>* origin) const {
    std::vector<Edge> kept;
    if (origin) origin->clear();
    for (EdgeId id = 0; id < edges_.size(); ++id) {
        if (id < keep.size() && keep[id]) {
            kept.push_back(edges_[id]);
            if (origin) origin->push_back(id);
        }
    }
    // Already sorted; the constructor keeps the order, so ids in `origin` line up.
    return Graph(vertex_count_, std::move(kept));
}

Graph Graph::scaled(const Weight& factor) const {
    if (!factor.is_positive()) throw GraphError("scale factor must be positive");
    Graph copy = *this;
    for (auto& e : copy.edges_) e.weight *= factor;
    return copy;
}

mpz_class common_denominator(const Graph& g) {
    mpz_class l = 1;
    for (const auto& e : g.edges()) {
        mpz_class d = e.weight.denominator();
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    return l;
}

std::vector<bool> edge_mask(const Graph& g, std::span<const EdgeId> edges) {
    std::vector<bool> mask(g.edge_count(), false);
    for (EdgeId id : edges) mask.at(id) = true;
    return mask;
}

EdgeSet normalize_edge_set(const Graph& g, std::vector<EdgeId> edges) {
    for (EdgeId id : edges) {
        if (id >= g.edge_count()) throw GraphError("edge id " + std::to_string(id) + " out of range");
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

std::string describe_edge(const Graph& g, EdgeId id) {
    const auto& e = g.edge(id);
    return "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")";
}

}  // namespace metric_mend
