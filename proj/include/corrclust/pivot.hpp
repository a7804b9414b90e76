#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "corrclust/clustering.hpp"
#include "corrclust/cost.hpp"
#include "corrclust/graph.hpp"
#include "corrclust/weights.hpp"

namespace corrclust {

using Triple = std::array<std::uint32_t, 3>;

// Per-vertex coordinate triples (cluster ids in three input clusterings) and
// the vertex groups sharing a triple. Cluster ids follow each input's
// first-appearance numbering, so the index is deterministic.
struct CoordinateIndex {
    std::vector<Triple> coords;
    std::map<Triple, std::vector<Vertex>> groups;

    static CoordinateIndex build(const Clustering& cx, const Clustering& cy,
                                 const Clustering& cz) {
        const std::size_t n = cx.vertex_count();
        if (cy.vertex_count() != n || cz.vertex_count() != n)
            throw std::invalid_argument("pivot: clusterings over different vertex sets");
        CoordinateIndex ix;
        ix.coords.resize(n);
        for (Vertex v = 0; v < n; ++v) {
            ix.coords[v] = {cx.cluster_of(v), cy.cluster_of(v), cz.cluster_of(v)};
            ix.groups[ix.coords[v]].push_back(v);
        }
        return ix;
    }

    static int distance(const Triple& a, const Triple& b) {
        return (a[0] != b[0]) + (a[1] != b[1]) + (a[2] != b[2]);
    }
};

// 3-way pivot combination. Repeatedly takes the coordinate triple holding the
// most unassigned vertices (ties: lexicographically smallest triple) and
// clusters every unassigned vertex within Hamming distance 1 of it.
inline Clustering pivot3(const Clustering& cx, const Clustering& cy, const Clustering& cz) {
    CoordinateIndex ix = CoordinateIndex::build(cx, cy, cz);
    const std::size_t n = ix.coords.size();
    std::map<Triple, std::size_t> unassigned_count;
    for (const auto& [t, members] : ix.groups) unassigned_count[t] = members.size();
    std::vector<char> assigned(n, 0);
    std::size_t remaining = n;
    std::vector<std::vector<Vertex>> out_clusters;

    while (remaining > 0) {
        Triple best{};
        std::size_t best_count = 0;
        for (const auto& [t, cnt] : unassigned_count) {
            // std::map iterates triples in lexicographic order, so the first
            // strict maximum seen is the lexicographically smallest one.
            if (cnt > best_count) { best = t; best_count = cnt; }
        }
        std::vector<Vertex> cluster;
        for (Vertex v = 0; v < n; ++v) {
            if (assigned[v]) continue;
            if (CoordinateIndex::distance(ix.coords[v], best) <= 1) cluster.push_back(v);
        }
        for (Vertex v : cluster) {
            assigned[v] = 1;
            --remaining;
            --unassigned_count[ix.coords[v]];
        }
        out_clusters.push_back(std::move(cluster));
    }
    return Clustering::from_clusters(n, out_clusters);
}

// Pair census by Hamming distance between endpoint coordinate triples.
// count[e][i] and weight2[e][i] with e = 0 for edges, 1 for non-edges,
// i = distance 0..3. Special pairs are E-_0..2 and E+_2..3; the rest are
// normal.
struct PairDistanceTable {
    std::int64_t count[2][4] = {};
    std::int64_t weight2[2][4] = {};

    std::int64_t plus_count(int i) const { return count[0][i]; }
    std::int64_t minus_count(int i) const { return count[1][i]; }

    std::int64_t special_count() const {
        return count[1][0] + count[1][1] + count[1][2] + count[0][2] + count[0][3];
    }
    std::int64_t normal_count() const {
        return count[0][0] + count[0][1] + count[1][3];
    }
};

inline PairDistanceTable classify_pairs(const Graph& g, const WeightFn& w, const Clustering& cx,
                                        const Clustering& cy, const Clustering& cz) {
    CoordinateIndex ix = CoordinateIndex::build(cx, cy, cz);
    const std::size_t n = g.vertex_count();
    if (ix.coords.size() != n) throw std::invalid_argument("classify_pairs: size mismatch");
    PairDistanceTable t;
    for (Vertex u = 0; u < n; ++u) {
        std::vector<char> adj_mark(n, 0);
        for (Vertex v : g.neighbors(u)) adj_mark[v] = 1;
        for (Vertex v = u + 1; v < n; ++v) {
            int e = adj_mark[v] ? 0 : 1;
            int d = CoordinateIndex::distance(ix.coords[u], ix.coords[v]);
            t.count[e][d] += 1;
            t.weight2[e][d] += e == 0 ? w.weight2_edge(u, v) : 2;
        }
    }
    return t;
}

inline PairDistanceTable classify_pairs(const Graph& g, const Clustering& cx,
                                        const Clustering& cy, const Clustering& cz) {
    return classify_pairs(g, WeightFn::unit(), cx, cy, cz);
}

// Checks, by direct counting, that the pivot combination (a) never cuts a
// distance-0 edge, (b) never keeps a distance-3 non-edge internal, and
// (c) pays for at most twice the number of special pairs.
struct PivotLemmaReport {
    bool no_cut_distance0 = false;
    bool no_internal_distance3 = false;
    bool special_covers_half = false;
    std::int64_t paid_pairs = 0;     // |(E+ ∩ Ext) ∪ (E- ∩ Int)| of the result
    std::int64_t special_pairs = 0;  // all special pairs in the graph
    Clustering result;

    bool all_hold() const {
        return no_cut_distance0 && no_internal_distance3 && special_covers_half;
    }
};

inline PivotLemmaReport verify_pivot_lemma(const Graph& g, const Clustering& cx,
                                           const Clustering& cy, const Clustering& cz) {
    PivotLemmaReport rep;
    rep.result = pivot3(cx, cy, cz);
    CoordinateIndex ix = CoordinateIndex::build(cx, cy, cz);
    const std::size_t n = g.vertex_count();
    std::int64_t cut_d0 = 0, int_d3 = 0;
    PairDistanceTable t = classify_pairs(g, cx, cy, cz);
    for (Vertex u = 0; u < n; ++u) {
        std::vector<char> adj_mark(n, 0);
        for (Vertex v : g.neighbors(u)) adj_mark[v] = 1;
        for (Vertex v = u + 1; v < n; ++v) {
            bool edge = adj_mark[v] != 0;
            bool internal = rep.result.same(u, v);
            int d = CoordinateIndex::distance(ix.coords[u], ix.coords[v]);
            if (edge && !internal) {
                ++rep.paid_pairs;
                if (d == 0) ++cut_d0;
            }
            if (!edge && internal) {
                ++rep.paid_pairs;
                if (d == 3) ++int_d3;
            }
        }
    }
    rep.special_pairs = t.special_count();
    rep.no_cut_distance0 = cut_d0 == 0;
    rep.no_internal_distance3 = int_d3 == 0;
    rep.special_covers_half = 2 * rep.special_pairs >= rep.paid_pairs;
    return rep;
}

// Checks the two coverage bounds of the special-pair census against the three
// input clusterings, exactly, under any normal weight function.
struct SpecialBoundReport {
    std::int64_t minus_special2 = 0;   // w(E-_0 ∪ E-_1 ∪ E-_2), doubled
    std::int64_t minus_cover2 = 0;     // sum of w(E- ∩ Int(C.)) over inputs
    std::int64_t plus_special2 = 0;    // w(E+_2 ∪ E+_3), doubled
    std::int64_t plus_cover2 = 0;      // pairwise w(E+ ∩ Ext ∩ Ext) sum
    bool minus_bound_holds = false;
    bool plus_bound_holds = false;

    bool all_hold() const { return minus_bound_holds && plus_bound_holds; }
};

inline SpecialBoundReport verify_special_bound(const Graph& g, const WeightFn& w,
                                               const Clustering& cx, const Clustering& cy,
                                               const Clustering& cz) {
    CoordinateIndex ix = CoordinateIndex::build(cx, cy, cz);
    const std::size_t n = g.vertex_count();
    SpecialBoundReport rep;
    for (Vertex u = 0; u < n; ++u) {
        std::vector<char> adj_mark(n, 0);
        for (Vertex v : g.neighbors(u)) adj_mark[v] = 1;
        for (Vertex v = u + 1; v < n; ++v) {
            int d = CoordinateIndex::distance(ix.coords[u], ix.coords[v]);
            if (adj_mark[v]) {
                std::int64_t w2 = w.weight2_edge(u, v);
                if (d >= 2) rep.plus_special2 += w2;
                std::int64_t cuts2 = 0;
                if (!cx.same(u, v) && !cy.same(u, v)) cuts2 += w2;
                if (!cy.same(u, v) && !cz.same(u, v)) cuts2 += w2;
                if (!cz.same(u, v) && !cx.same(u, v)) cuts2 += w2;
                rep.plus_cover2 += cuts2;
            } else {
                if (d <= 2) rep.minus_special2 += 2;
                std::int64_t ints2 = 0;
                if (cx.same(u, v)) ints2 += 2;
                if (cy.same(u, v)) ints2 += 2;
                if (cz.same(u, v)) ints2 += 2;
                rep.minus_cover2 += ints2;
            }
        }
    }
    rep.minus_bound_holds = rep.minus_special2 <= rep.minus_cover2;
    rep.plus_bound_holds = rep.plus_special2 <= rep.plus_cover2;
    return rep;
}

inline SpecialBoundReport verify_special_bound(const Graph& g, const Clustering& cx,
                                               const Clustering& cy, const Clustering& cz) {
    return verify_special_bound(g, WeightFn::unit(), cx, cy, cz);
}

}  // namespace corrclust
