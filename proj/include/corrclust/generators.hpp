#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "corrclust/clustering.hpp"
#include "corrclust/graph.hpp"
#include "corrclust/rng.hpp"

namespace corrclust {

// Grid graph over dims[0] x dims[1] x dims[2] coordinate triples, vertices
// numbered row-major, with an edge between two vertices iff their coordinate
// Hamming distance is at most `radius`.
inline Graph gen_hamming(const std::array<int, 3>& dims, int radius) {
    for (int d : dims)
        if (d <= 0) throw std::invalid_argument("gen_hamming: dims must be positive");
    const std::size_t n = static_cast<std::size_t>(dims[0]) * dims[1] * dims[2];
    auto coord = [&](std::size_t v) {
        std::array<int, 3> c{};
        c[2] = static_cast<int>(v) % dims[2];
        c[1] = (static_cast<int>(v) / dims[2]) % dims[1];
        c[0] = static_cast<int>(v) / (dims[1] * dims[2]);
        return c;
    };
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (std::size_t u = 0; u < n; ++u) {
        auto cu = coord(u);
        for (std::size_t v = u + 1; v < n; ++v) {
            auto cv = coord(v);
            int dist = (cu[0] != cv[0]) + (cu[1] != cv[1]) + (cu[2] != cv[2]);
            if (dist <= radius)
                edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
        }
    }
    return Graph::from_edges(n, std::move(edges));
}

// Clustering of the Hamming grid by one coordinate axis (0, 1 or 2).
inline Clustering hamming_axis_clustering(const std::array<int, 3>& dims, int axis) {
    if (axis < 0 || axis > 2) throw std::invalid_argument("axis must be 0, 1 or 2");
    const std::size_t n = static_cast<std::size_t>(dims[0]) * dims[1] * dims[2];
    std::vector<std::uint32_t> a(n);
    for (std::size_t v = 0; v < n; ++v) {
        int z = static_cast<int>(v) % dims[2];
        int y = (static_cast<int>(v) / dims[2]) % dims[1];
        int x = static_cast<int>(v) / (dims[1] * dims[2]);
        a[v] = static_cast<std::uint32_t>(axis == 0 ? x : axis == 1 ? y : z);
    }
    return Clustering::from_assignment(std::move(a));
}

// Planted-partition instance: k blocks of `size` vertices; each intra-block
// pair is an edge with probability p_in, each inter-block pair with
// probability p_out. Pure function of (parameters, seed). Returns the graph
// and the planted ground-truth partition.
inline std::pair<Graph, Clustering> gen_planted(int k, int size, double p_in, double p_out,
                                                std::uint64_t seed) {
    if (k <= 0 || size <= 0) throw std::invalid_argument("gen_planted: k and size must be positive");
    if (p_in < 0 || p_in > 1 || p_out < 0 || p_out > 1)
        throw std::invalid_argument("gen_planted: probabilities must lie in [0, 1]");
    const std::size_t n = static_cast<std::size_t>(k) * size;
    SplitRng rng(seed);
    std::vector<std::pair<Vertex, Vertex>> edges;
    std::vector<std::uint32_t> block(n);
    for (std::size_t v = 0; v < n; ++v) block[v] = static_cast<std::uint32_t>(v / size);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) {
            double p = block[u] == block[v] ? p_in : p_out;
            if (rng.real01() < p)
                edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
        }
    return {Graph::from_edges(n, std::move(edges)), Clustering::from_assignment(std::move(block))};
}

// Erdos-Renyi instance, for randomized invariant checks.
inline Graph gen_gnp(std::size_t n, double p, std::uint64_t seed) {
    SplitRng rng(seed);
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (rng.real01() < p) edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    return Graph::from_edges(n, std::move(edges));
}

// Uniformly random clustering (each vertex assigned one of `max_clusters`
// labels), for randomized invariant checks.
inline Clustering random_clustering(std::size_t n, std::size_t max_clusters, SplitRng& rng) {
    if (max_clusters == 0) throw std::invalid_argument("random_clustering: need at least one label");
    std::vector<std::uint32_t> a(n);
    for (std::size_t v = 0; v < n; ++v) a[v] = static_cast<std::uint32_t>(rng.below(max_clusters));
    return Clustering::from_assignment(std::move(a));
}

}  // namespace corrclust
