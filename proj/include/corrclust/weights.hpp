#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

#include "corrclust/clustering.hpp"
#include "corrclust/graph.hpp"

namespace corrclust {

// Normal weight function: 1 on every pair, plus additive increments on edges
// cut by stored reference clusterings. All weights are carried as doubled
// integers (weight2 = 2*w) so that half-integral increments stay exact; no
// floating point ever enters a cost computation.
//
// A layer (L, beta2) adds beta2/2 to the weight of every edge whose endpoints
// lie in different clusters of L. Non-edges always weigh exactly 1. The pair
// weight is evaluated by membership tests against the stored clusterings, so
// no dense matrix is materialized. Immutable after construction.
class WeightFn {
public:
    struct Layer {
        std::shared_ptr<const Clustering> cut;
        std::int64_t beta2;
    };

    static WeightFn unit() { return WeightFn(); }

    // Returns a copy with one more increment layer; beta2 = 2*beta > 0.
    WeightFn with_layer(std::shared_ptr<const Clustering> cut, std::int64_t beta2) const {
        if (!cut) throw std::invalid_argument("weight layer: null clustering");
        if (beta2 <= 0) throw std::invalid_argument("weight layer: increment must be positive");
        WeightFn w = *this;
        w.layers_.push_back(Layer{std::move(cut), beta2});
        return w;
    }

    // Doubled weight of the edge (u, v); caller guarantees uv is an edge.
    std::int64_t weight2_edge(Vertex u, Vertex v) const {
        std::int64_t w2 = 2;
        for (const Layer& l : layers_)
            if (!l.cut->same(u, v)) w2 += l.beta2;
        return w2;
    }

    // Doubled weight of an arbitrary pair (2 on non-edges).
    std::int64_t weight2(const Graph& g, Vertex u, Vertex v) const {
        if (u == v) throw std::invalid_argument("weight2: u == v");
        return g.has_edge(u, v) ? weight2_edge(u, v) : 2;
    }

    // Doubled upper bound W on any single edge weight.
    std::int64_t bound2() const {
        std::int64_t b = 2;
        for (const Layer& l : layers_) b += l.beta2;
        return b;
    }

    std::size_t layer_count() const { return layers_.size(); }
    bool is_unit() const { return layers_.empty(); }
    const std::vector<Layer>& layers() const { return layers_; }

    // Doubled weighted degree of v.
    std::int64_t weighted_degree2(const Graph& g, Vertex v) const {
        std::int64_t d2 = 0;
        for (Vertex u : g.neighbors(v)) d2 += weight2_edge(v, u);
        return d2;
    }

private:
    std::vector<Layer> layers_;
};

// The flip: add beta to every edge currently cut by l. Values of beta must be
// half-integral (the cost representation is doubled integers).
inline WeightFn flip_weights(const WeightFn& w, const Clustering& l, double beta) {
    double b2 = beta * 2.0;
    auto beta2 = static_cast<std::int64_t>(b2);
    if (static_cast<double>(beta2) != b2)
        throw std::invalid_argument("flip_weights: beta must be a multiple of 0.5");
    return w.with_layer(std::make_shared<Clustering>(l), beta2);
}

}  // namespace corrclust
