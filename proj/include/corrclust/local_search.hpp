#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "corrclust/clustering.hpp"
#include "corrclust/cost.hpp"
#include "corrclust/graph.hpp"
#include "corrclust/preclustering.hpp"
#include "corrclust/sampling.hpp"
#include "corrclust/weights.hpp"

namespace corrclust {

// Strategy for producing candidate swap-in sets. Exhaustive enumerates every
// nonempty vertex subset and is the test oracle; it refuses instances above
// its vertex limit. FixedFamily restricts moves to a given candidate list.
// Sampled delegates candidate generation to the sampled descent and needs a
// preclustered instance.
struct SearchEngine {
    enum class Mode { Exhaustive, FixedFamily, Sampled };

    Mode mode = Mode::Exhaustive;
    int exhaustive_limit = 16;
    std::vector<std::vector<Vertex>> family;
    const PreclusteredInstance* precluster = nullptr;
    SampleConfig sample;
    std::int64_t min_improvement2 = 0;  // accept a move only if it saves at least this much

    static SearchEngine exhaustive(int limit = 16) {
        SearchEngine e;
        e.mode = Mode::Exhaustive;
        e.exhaustive_limit = limit;
        return e;
    }
    static SearchEngine fixed_family(std::vector<std::vector<Vertex>> candidates) {
        SearchEngine e;
        e.mode = Mode::FixedFamily;
        e.family = std::move(candidates);
        return e;
    }
    static SearchEngine sampled(const PreclusteredInstance& pc, SampleConfig cfg) {
        SearchEngine e;
        e.mode = Mode::Sampled;
        e.precluster = &pc;
        e.sample = cfg;
        return e;
    }
};

// True iff no subset swap-in improves the cost: for all nonempty S,
// cost(c + S) >= cost(c). Enumerates all 2^n - 1 subsets.
inline bool is_local_optimum(const Graph& g, const WeightFn& w, const Clustering& c,
                             int limit = 16) {
    const std::size_t n = g.vertex_count();
    if (n > static_cast<std::size_t>(limit))
        throw std::length_error("is_local_optimum: instance above exhaustive limit");
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<Vertex> s;
        for (std::size_t v = 0; v < n; ++v)
            if (mask & (std::uint64_t{1} << v)) s.push_back(static_cast<Vertex>(v));
        if (delta_cost2(g, w, c, s) < 0) return false;
    }
    return true;
}

namespace detail {

// Best improving candidate among the given sets; ties broken by the
// lexicographically smallest vertex set. Returns improvement 0 if none.
struct BestMove {
    std::int64_t delta2 = 0;
    std::vector<Vertex> set;
};

inline BestMove best_move_over(const Graph& g, const WeightFn& w, const Clustering& c,
                               const std::vector<std::vector<Vertex>>& candidates) {
    BestMove best;
    for (const auto& s : candidates) {
        if (s.empty()) continue;
        std::int64_t d2 = delta_cost2(g, w, c, s);
        if (d2 < best.delta2 ||
            (d2 == best.delta2 && d2 < 0 &&
             std::lexicographical_compare(s.begin(), s.end(), best.set.begin(), best.set.end()))) {
            best.delta2 = d2;
            best.set = s;
        }
    }
    return best;
}

inline BestMove best_move_exhaustive(const Graph& g, const WeightFn& w, const Clustering& c) {
    const std::size_t n = g.vertex_count();
    BestMove best;
    std::vector<Vertex> s;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        s.clear();
        for (std::size_t v = 0; v < n; ++v)
            if (mask & (std::uint64_t{1} << v)) s.push_back(static_cast<Vertex>(v));
        std::int64_t d2 = delta_cost2(g, w, c, s);
        if (d2 < best.delta2 ||
            (d2 == best.delta2 && d2 < 0 &&
             std::lexicographical_compare(s.begin(), s.end(), best.set.begin(), best.set.end()))) {
            best.delta2 = d2;
            best.set = s;
        }
    }
    return best;
}

}  // namespace detail

// Iterated best-improving descent. Deterministic given the seed: Exhaustive
// and FixedFamily take the best improving move each step (ties by smallest
// candidate set); Sampled runs the round-based sampled descent from `start`.
inline Clustering run_local_search(const Graph& g, const WeightFn& w, const Clustering& start,
                                   const SearchEngine& engine, std::uint64_t seed) {
    if (start.vertex_count() != g.vertex_count())
        throw std::invalid_argument("run_local_search: start does not partition V(G)");
    switch (engine.mode) {
        case SearchEngine::Mode::Exhaustive: {
            if (g.vertex_count() > static_cast<std::size_t>(engine.exhaustive_limit))
                throw std::length_error("run_local_search: instance above exhaustive limit");
            Clustering cur = start;
            while (true) {
                auto mv = detail::best_move_exhaustive(g, w, cur);
                if (mv.delta2 >= 0 || -mv.delta2 < engine.min_improvement2) break;
                cur = add_cluster(cur, mv.set);
            }
            return cur;
        }
        case SearchEngine::Mode::FixedFamily: {
            Clustering cur = start;
            while (true) {
                auto mv = detail::best_move_over(g, w, cur, engine.family);
                if (mv.delta2 >= 0 || -mv.delta2 < engine.min_improvement2) break;
                cur = add_cluster(cur, mv.set);
            }
            return cur;
        }
        case SearchEngine::Mode::Sampled: {
            if (!engine.precluster)
                throw std::invalid_argument("run_local_search: sampled engine needs preclustering");
            SplitRng rng(seed);
            return sampled_descent(g, *engine.precluster, w, engine.sample, start, rng);
        }
    }
    throw std::logic_error("run_local_search: unknown engine mode");
}

// True iff no single-vertex extraction improves the cost.
inline bool is_clean(const Graph& g, const WeightFn& w, const Clustering& c) {
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (delta_cost2(g, w, c, {v}) < 0) return false;
    return true;
}

// Singleton cleanup under unit weights: repeatedly extract any vertex
// adjacent to fewer than half of the other members of its cluster. Scan order
// is ascending vertex id with a restart after each extraction; dirtiness is
// 2 d(v, C\{v}) < |C| - 1. Every extraction strictly decreases the cost.
inline Clustering cleaning_pass(const Graph& g, const Clustering& c) {
    Clustering cur = c;
    const std::size_t n = g.vertex_count();
    bool changed = true;
    while (changed) {
        changed = false;
        for (Vertex v = 0; v < n && !changed; ++v) {
            const auto& cl = cur.cluster(cur.cluster_of(v));
            if (cl.size() <= 1) continue;
            std::size_t inside = 0;
            for (Vertex u : cl)
                if (u != v && g.has_edge(u, v)) ++inside;
            if (2 * inside < cl.size() - 1) {
                cur = add_cluster(cur, {v});
                changed = true;
            }
        }
    }
    return cur;
}

// The four pairwise-cost inequalities a local optimum satisfies against any
// other clustering, evaluated exactly in doubled units. lhs <= rhs per entry.
struct LocalOptimumInequalities {
    struct Line {
        std::int64_t lhs2 = 0;
        std::int64_t rhs2 = 0;
        bool holds() const { return lhs2 <= rhs2; }
    };
    Line swap_sum;       // aggregated swap-in inequality
    Line cost_with_int;  // bound keeping the internal-minus term
    Line cost_basic;     // bound after dropping it
    Line cost_ls_minus;  // bound with the local optimum's own minus cost

    bool all_hold() const {
        return swap_sum.holds() && cost_with_int.holds() && cost_basic.holds() &&
               cost_ls_minus.holds();
    }
};

inline LocalOptimumInequalities local_optimum_inequalities(const Graph& g, const WeightFn& w,
                                                           const Clustering& ls,
                                                           const Clustering& other) {
    PairCells cells = tally_pairs(g, w, ls, other);
    const std::int64_t plus_ext_int = cells.plus(1, 0);
    const std::int64_t plus_ext_ext = cells.plus(1, 1);
    const std::int64_t minus_int_int = cells.minus(0, 0);
    const std::int64_t minus_int_ext = cells.minus(0, 1);
    const std::int64_t cost_other = cells.plus(0, 1) + cells.plus(1, 1) +
                                    cells.minus(0, 0) + cells.minus(1, 0);
    const std::int64_t minus_other = cells.minus(0, 0) + cells.minus(1, 0);
    const std::int64_t plus_other = cells.plus(0, 1) + cells.plus(1, 1);
    const std::int64_t cost_ls = plus_ext_int + plus_ext_ext + minus_int_int + minus_int_ext;
    const std::int64_t minus_ls = minus_int_int + minus_int_ext;

    LocalOptimumInequalities out;
    out.swap_sum.lhs2 = plus_ext_int + 2 * plus_ext_ext + minus_int_int + 2 * minus_int_ext;
    out.swap_sum.rhs2 = minus_other + 2 * plus_other;
    out.cost_with_int.lhs2 = cost_ls;
    out.cost_with_int.rhs2 = 2 * cost_other - minus_other - minus_int_ext - plus_ext_ext;
    out.cost_basic.lhs2 = cost_ls;
    out.cost_basic.rhs2 = 2 * cost_other - minus_other - plus_ext_ext;
    out.cost_ls_minus.lhs2 = cost_ls;
    out.cost_ls_minus.rhs2 = 2 * cost_other - minus_ls - plus_ext_ext;
    return out;
}

}  // namespace corrclust
