#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "corrclust/clustering.hpp"
#include "corrclust/graph.hpp"
#include "corrclust/weights.hpp"

namespace corrclust {

// Disagreement cost of a clustering, split into the two pair classes. All
// values are doubled integers: plus2 is twice the weight of cut edges, minus2
// twice the number of non-edge pairs kept internal.
struct CostBreakdown {
    std::int64_t plus2 = 0;
    std::int64_t minus2 = 0;

    std::int64_t total2() const { return plus2 + minus2; }
    double plus() const { return static_cast<double>(plus2) / 2.0; }
    double minus() const { return static_cast<double>(minus2) / 2.0; }
    double total() const { return static_cast<double>(total2()) / 2.0; }
};

inline CostBreakdown cost(const Graph& g, const WeightFn& w, const Clustering& c) {
    if (c.vertex_count() != g.vertex_count())
        throw std::invalid_argument("cost: clustering does not partition V(G)");
    CostBreakdown out;
    for (Vertex u = 0; u < g.vertex_count(); ++u)
        for (Vertex v : g.neighbors(u))
            if (u < v && !c.same(u, v)) out.plus2 += w.weight2_edge(u, v);
    for (const auto& cl : c.clusters()) {
        std::int64_t pairs = static_cast<std::int64_t>(cl.size()) *
                             static_cast<std::int64_t>(cl.size() - 1) / 2;
        std::int64_t inside_edges = 0;
        std::vector<char> member(g.vertex_count(), 0);
        for (Vertex v : cl) member[v] = 1;
        for (Vertex v : cl) inside_edges += static_cast<std::int64_t>(g.degree_into(v, member));
        inside_edges /= 2;
        out.minus2 += 2 * (pairs - inside_edges);
    }
    return out;
}

inline CostBreakdown cost(const Graph& g, const Clustering& c) {
    return cost(g, WeightFn::unit(), c);
}

// cost(c + s) - cost(c), touching only pairs with an endpoint in s.
// Agrees exactly with recomputation from scratch.
inline std::int64_t delta_cost2(const Graph& g, const WeightFn& w, const Clustering& c,
                                const std::vector<Vertex>& s) {
    if (s.empty()) throw std::invalid_argument("delta_cost: empty set");
    const std::size_t n = c.vertex_count();
    if (n != g.vertex_count()) throw std::invalid_argument("delta_cost: size mismatch");
    std::vector<char> in_s(n, 0);
    for (Vertex v : s) {
        if (v >= n) throw std::invalid_argument("delta_cost: unknown vertex");
        if (in_s[v]) throw std::invalid_argument("delta_cost: duplicate vertex");
        in_s[v] = 1;
    }
    std::int64_t delta2 = 0;
    for (Vertex u : s) {
        // Edge pairs at u. An edge pays its weight while external.
        std::vector<char> adj_mark(n, 0);
        for (Vertex v : g.neighbors(u)) {
            adj_mark[v] = 1;
            if (in_s[v] && v < u) continue;  // each in-s pair once
            bool before_int = c.same(u, v);
            bool after_int = in_s[v] != 0;
            if (before_int == after_int) continue;
            std::int64_t w2 = w.weight2_edge(u, v);
            delta2 += w2 * (static_cast<std::int64_t>(before_int) -
                            static_cast<std::int64_t>(after_int));
        }
        // Non-edge pairs at u. A non-edge pays 1 while internal.
        for (Vertex v = 0; v < n; ++v) {
            if (v == u || adj_mark[v]) continue;
            if (in_s[v] && v < u) continue;
            bool before_int = c.same(u, v);
            bool after_int = in_s[v] != 0;
            if (before_int == after_int) continue;
            delta2 += 2 * (static_cast<std::int64_t>(after_int) -
                           static_cast<std::int64_t>(before_int));
        }
    }
    return delta2;
}

inline std::int64_t delta_cost2(const Graph& g, const Clustering& c,
                                const std::vector<Vertex>& s) {
    return delta_cost2(g, WeightFn::unit(), c, s);
}

// Doubled weight totals of every pair bucketed by (edge class, internal or
// external in A, internal or external in B). Index order:
// [0=plus,1=minus][0=int(A),1=ext(A)][0=int(B),1=ext(B)].
struct PairCells {
    std::int64_t w2[2][2][2] = {};

    std::int64_t plus(int a, int b) const { return w2[0][a][b]; }
    std::int64_t minus(int a, int b) const { return w2[1][a][b]; }
};

inline PairCells tally_pairs(const Graph& g, const WeightFn& w, const Clustering& a,
                             const Clustering& b) {
    const std::size_t n = g.vertex_count();
    if (a.vertex_count() != n || b.vertex_count() != n)
        throw std::invalid_argument("tally_pairs: size mismatch");
    PairCells cells;
    for (Vertex u = 0; u < n; ++u) {
        std::vector<char> adj_mark(n, 0);
        for (Vertex v : g.neighbors(u)) adj_mark[v] = 1;
        for (Vertex v = u + 1; v < n; ++v) {
            int e = adj_mark[v] ? 0 : 1;
            int ia = a.same(u, v) ? 0 : 1;
            int ib = b.same(u, v) ? 0 : 1;
            cells.w2[e][ia][ib] += e == 0 ? w.weight2_edge(u, v) : 2;
        }
    }
    return cells;
}

}  // namespace corrclust
