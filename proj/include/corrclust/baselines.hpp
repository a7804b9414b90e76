#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "corrclust/clustering.hpp"
#include "corrclust/cost.hpp"
#include "corrclust/graph.hpp"
#include "corrclust/preclustering.hpp"
#include "corrclust/rational.hpp"
#include "corrclust/rng.hpp"
#include "corrclust/weights.hpp"

namespace corrclust {

// Classic random-pivot baseline: pick a uniformly random unclustered vertex
// and cluster it with all its unclustered neighbors, repeat.
inline Clustering acn_pivot(const Graph& g, SplitRng& rng) {
    const std::size_t n = g.vertex_count();
    std::vector<char> clustered(n, 0);
    std::vector<Vertex> unclustered(n);
    for (std::size_t v = 0; v < n; ++v) unclustered[v] = static_cast<Vertex>(v);
    std::vector<std::vector<Vertex>> clusters;
    while (!unclustered.empty()) {
        std::size_t pick = static_cast<std::size_t>(rng.below(unclustered.size()));
        Vertex p = unclustered[pick];
        std::vector<Vertex> cl{p};
        for (Vertex u : g.neighbors(p))
            if (!clustered[u]) cl.push_back(u);
        for (Vertex u : cl) clustered[u] = 1;
        std::vector<Vertex> rest;
        rest.reserve(unclustered.size());
        for (Vertex u : unclustered)
            if (!clustered[u]) rest.push_back(u);
        unclustered = std::move(rest);
        clusters.push_back(std::move(cl));
    }
    return Clustering::from_clusters(n, clusters);
}

// Exact expected unit-weight cost of the random-pivot baseline, by dynamic
// programming over the subset of still-unclustered vertices. Exponential in
// n; intended for small instances only.
inline Rat acn_expected_cost(const Graph& g, int limit = 16) {
    const std::size_t n = g.vertex_count();
    if (n > static_cast<std::size_t>(limit))
        throw std::length_error("acn_expected_cost: instance too large");
    if (n == 0) return Rat(0);
    std::vector<std::optional<Rat>> memo(std::size_t{1} << n);

    // cost charged when pivot p is chosen inside the unclustered set S:
    // missing pairs inside the new cluster plus edges it cuts to S.
    auto creation_cost = [&](std::uint32_t mask, Vertex p) -> std::int64_t {
        std::uint32_t cl = std::uint32_t{1} << p;
        for (Vertex u : g.neighbors(p))
            if (mask & (std::uint32_t{1} << u)) cl |= std::uint32_t{1} << u;
        std::int64_t nonedges = 0, cut = 0;
        for (Vertex a = 0; a < n; ++a) {
            if (!(cl & (std::uint32_t{1} << a))) continue;
            for (Vertex b = a + 1; b < n; ++b) {
                if (cl & (std::uint32_t{1} << b)) {
                    if (!g.has_edge(a, b)) ++nonedges;
                }
            }
            for (Vertex b : g.neighbors(a))
                if ((mask & (std::uint32_t{1} << b)) && !(cl & (std::uint32_t{1} << b))) ++cut;
        }
        return nonedges + cut;
    };

    auto rec = [&](auto&& self, std::uint32_t mask) -> Rat {
        if (mask == 0) return Rat(0);
        if (memo[mask]) return *memo[mask];
        int cnt = __builtin_popcount(mask);
        Rat total(0);
        for (Vertex p = 0; p < n; ++p) {
            if (!(mask & (std::uint32_t{1} << p))) continue;
            std::uint32_t cl = std::uint32_t{1} << p;
            for (Vertex u : g.neighbors(p))
                if (mask & (std::uint32_t{1} << u)) cl |= std::uint32_t{1} << u;
            total += Rat(creation_cost(mask, p)) + self(self, mask & ~cl);
        }
        Rat out = total * Rat(1, cnt);
        memo[mask] = out;
        return out;
    };
    return rec(rec, static_cast<std::uint32_t>((std::uint64_t{1} << n) - 1));
}

// Result of an exhaustive partition search.
struct OracleResult {
    Clustering clustering;
    std::int64_t cost2 = 0;
    std::uint64_t partitions_examined = 0;
};

namespace detail {

// DFS over restricted-growth strings: vertex i joins an existing block or
// opens a new one. Visits complete partitions in lexicographic string order,
// so keeping the first strict minimum makes the tie-break deterministic.
// With prune=true, branches whose partial cost already reaches the incumbent
// are abandoned (the first minimum found is still the lexicographically
// smallest, since costs only grow along a branch).
struct PartitionSearch {
    const Graph& g;
    const WeightFn& w;
    bool prune;
    // optional feasibility hooks for the good-clustering variant
    const PreclusteredInstance* pc = nullptr;
    double delta = 0.0;

    std::vector<std::uint32_t> assignment;
    std::vector<std::vector<Vertex>> blocks;
    std::int64_t best2 = INT64_MAX;
    std::vector<std::uint32_t> best_assignment;
    std::uint64_t examined = 0;

    PartitionSearch(const Graph& g_, const WeightFn& w_, bool prune_)
        : g(g_), w(w_), prune(prune_) {}

    bool pair_allowed(Vertex u, Vertex v) const {
        if (!pc) return true;
        return pc->pair_class(u, v) != PrePairClass::NonAdmissible;
    }

    bool complete_ok() const {
        if (!pc) return true;
        for (const auto& b : blocks) {
            if (b.empty()) continue;
            if (!is_good_cluster(b, *pc, g, delta)) return false;
        }
        return true;
    }

    void run(Vertex v, std::int64_t partial2) {
        const std::size_t n = g.vertex_count();
        if (v == n) {
            ++examined;
            if (partial2 < best2 && complete_ok()) {
                best2 = partial2;
                best_assignment = assignment;
            }
            return;
        }
        // weighted edges from v back into already-assigned vertices
        std::int64_t back2 = 0;
        for (Vertex u : g.neighbors(v))
            if (u < v) back2 += w.weight2_edge(u, v);

        for (std::size_t b = 0; b <= blocks.size(); ++b) {
            std::int64_t step2;
            if (b < blocks.size()) {
                bool ok = true;
                std::int64_t ew2 = 0, missing = 0;
                for (Vertex u : blocks[b]) {
                    if (pc && !pair_allowed(u, v)) { ok = false; break; }
                    if (g.has_edge(u, v)) ew2 += w.weight2_edge(u, v);
                    else ++missing;
                }
                if (!ok) continue;
                step2 = (back2 - ew2) + 2 * missing;
            } else {
                step2 = back2;
            }
            std::int64_t next2 = partial2 + step2;
            if (prune && next2 >= best2) continue;
            assignment[v] = static_cast<std::uint32_t>(b);
            if (b == blocks.size()) blocks.emplace_back();
            blocks[b].push_back(v);
            run(v + 1, next2);
            blocks[b].pop_back();
            if (b + 1 == blocks.size() && blocks[b].empty()) blocks.pop_back();
        }
    }
};

}  // namespace detail

// Exact optimum by exhaustive partition enumeration (restricted-growth
// order, first minimum kept). prune=false visits exactly Bell(n) partitions.
inline OracleResult brute_force_opt(const Graph& g, const WeightFn& w, int limit = 12,
                                    bool prune = true) {
    const std::size_t n = g.vertex_count();
    if (n > static_cast<std::size_t>(limit))
        throw std::length_error("brute_force_opt: instance above oracle limit");
    if (n == 0) return OracleResult{Clustering(), 0, 1};
    detail::PartitionSearch search(g, w, prune);
    search.assignment.assign(n, 0);
    search.run(0, 0);
    OracleResult out;
    out.clustering = Clustering::from_assignment(search.best_assignment);
    out.cost2 = search.best2;
    out.partitions_examined = search.examined;
    return out;
}

inline OracleResult brute_force_opt(const Graph& g, int limit = 12, bool prune = true) {
    return brute_force_opt(g, WeightFn::unit(), limit, prune);
}

// Optimum over clusterings whose every cluster is good for (pc, delta).
// All-singletons is always good, so a result always exists. Non-admissible
// pairs prune branches early; atom and size conditions are checked on
// complete partitions.
inline OracleResult brute_force_good_opt(const Graph& g, const WeightFn& w,
                                         const PreclusteredInstance& pc, double delta,
                                         int limit = 12) {
    const std::size_t n = g.vertex_count();
    if (n > static_cast<std::size_t>(limit))
        throw std::length_error("brute_force_good_opt: instance above oracle limit");
    if (n == 0) return OracleResult{Clustering(), 0, 1};
    detail::PartitionSearch search(g, w, /*prune=*/false);
    search.pc = &pc;
    search.delta = delta;
    search.assignment.assign(n, 0);
    search.run(0, 0);
    OracleResult out;
    out.clustering = Clustering::from_assignment(search.best_assignment);
    out.cost2 = search.best2;
    out.partitions_examined = search.examined;
    return out;
}

// Bell numbers, for enumeration-count assertions.
inline std::uint64_t bell_number(int n) {
    std::vector<std::vector<std::uint64_t>> tri(static_cast<std::size_t>(n) + 1);
    tri[0] = {1};
    for (int i = 1; i <= n; ++i) {
        tri[i].resize(static_cast<std::size_t>(i) + 1);
        tri[i][0] = tri[i - 1][i - 1];
        for (int j = 1; j <= i; ++j) tri[i][j] = tri[i][j - 1] + tri[i - 1][j - 1];
    }
    return tri[n][0];
}

}  // namespace corrclust
