#pragma once

#include <algorithm>
#include <cmath>
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

// Knobs of the sampled search. eta is the batch parameter; sample sequences
// have length eta0 = eta^5 and neighbor samples length eta_prime. The size
// grid resolution is fixed at eps' = 1/eta^2. s is how many vertices of N(r)
// each round may look at. The sampled-size guarantee (s > 1e6 eta^6 eps^-27)
// only matters when require_size_guarantee is set; desk-scale runs leave it
// off and use small s.
struct SampleConfig {
    int eta = 2;
    int eta_prime = 8;
    double gamma = 1e-3;
    std::size_t s = 64;
    std::uint64_t seed = 1;
    bool require_size_guarantee = false;
    // GenerateCluster admission threshold tau * W * |N(r)| with tau = tau_num/tau_den.
    int tau_num = 6;
    int tau_den_power = 1;  // 1 -> 6/eta, 2 -> 6/eta^2
    int samples_per_batch = 1;
    int stagnation_factor = 8;

    int eta0() const {
        long long v = 1;
        for (int i = 0; i < 5; ++i) v *= eta;
        return static_cast<int>(v);
    }
    Rat eps_prime() const { return Rat(1, static_cast<long long>(eta) * eta); }

    void validate(double eps) const {
        if (eta < 2) throw std::invalid_argument("sample config: eta must be >= 2");
        if (eta_prime < 1) throw std::invalid_argument("sample config: eta_prime must be >= 1");
        if (require_size_guarantee) {
            long double need = 1e6L;
            for (int i = 0; i < 6; ++i) need *= eta;
            for (int i = 0; i < 27; ++i) need /= eps;
            if (static_cast<long double>(s) <= need)
                throw std::invalid_argument("sample config: s too small for the size guarantee");
        }
    }
};

// Weighted violated-pair totals at v when the candidate set K (with v in K by
// convention) is carved out of the clustering: stays2 is the cost incident to
// v in c + (K \ {v}), moves2 in c + (K ∪ {v}) = c + K. Doubled units.
struct StayMoveCosts {
    std::int64_t stays2 = 0;
    std::int64_t moves2 = 0;
};

namespace detail {

struct VertexContext {
    std::int64_t dw2 = 0;        // weighted degree, doubled
    std::int64_t dw2_cv = 0;     // weighted edges into C(v), doubled
    std::int64_t d_cv = 0;       // plain edges into C(v)
    std::int64_t cv_size = 0;    // |C(v)|
};

inline VertexContext vertex_context(const Graph& g, const WeightFn& w, const Clustering& c,
                                    Vertex v) {
    VertexContext ctx;
    ctx.cv_size = static_cast<std::int64_t>(c.cluster_size_of(v));
    for (Vertex u : g.neighbors(v)) {
        std::int64_t w2 = w.weight2_edge(v, u);
        ctx.dw2 += w2;
        if (c.same(u, v)) {
            ctx.dw2_cv += w2;
            ctx.d_cv += 1;
        }
    }
    return ctx;
}

}  // namespace detail

inline StayMoveCosts stay_move_costs(const Graph& g, const WeightFn& w, const Clustering& c,
                                     const std::vector<Vertex>& k, Vertex v) {
    if (std::find(k.begin(), k.end(), v) == k.end())
        throw std::invalid_argument("stay_move_costs: v must be a member of K");
    detail::VertexContext ctx = detail::vertex_context(g, w, c, v);
    std::int64_t k_size = 0, d_vk = 0, dw2_vk = 0;       // over K \ {v}
    std::int64_t cvk_size = 0, d_cvk = 0, dw2_cvk = 0;   // over C(v) ∩ (K \ {v})
    for (Vertex u : k) {
        if (u == v) continue;
        ++k_size;
        bool edge = g.has_edge(u, v);
        std::int64_t w2 = edge ? w.weight2_edge(u, v) : 0;
        if (edge) { ++d_vk; dw2_vk += w2; }
        if (c.same(u, v)) {
            ++cvk_size;
            if (edge) { ++d_cvk; dw2_cvk += w2; }
        }
    }
    StayMoveCosts out;
    // v keeps its cluster, which loses its K-members.
    out.stays2 = ctx.dw2 - ctx.dw2_cv + dw2_cvk +
                 2 * (ctx.cv_size - cvk_size - 1 - ctx.d_cv + d_cvk);
    // v joins K; pairs inside K are |K|-1 many around v.
    out.moves2 = ctx.dw2 - dw2_vk + 2 * (k_size - d_vk);
    return out;
}

// Direct-count oracle for the same two quantities: build the swapped
// clustering and count violated pairs incident to v. Used to cross-check the
// closed forms.
inline StayMoveCosts stay_move_costs_direct(const Graph& g, const WeightFn& w,
                                            const Clustering& c, const std::vector<Vertex>& k,
                                            Vertex v) {
    if (std::find(k.begin(), k.end(), v) == k.end())
        throw std::invalid_argument("stay_move_costs_direct: v must be a member of K");
    auto violated_at = [&](const Clustering& cc) {
        std::int64_t total2 = 0;
        for (Vertex u = 0; u < g.vertex_count(); ++u) {
            if (u == v) continue;
            bool edge = g.has_edge(u, v);
            bool internal = cc.same(u, v);
            if (edge && !internal) total2 += w.weight2_edge(u, v);
            if (!edge && internal) total2 += 2;
        }
        return total2;
    };
    StayMoveCosts out;
    std::vector<Vertex> without_v;
    for (Vertex u : k)
        if (u != v) without_v.push_back(u);
    out.stays2 = violated_at(without_v.empty() ? c : add_cluster(c, without_v));
    out.moves2 = violated_at(add_cluster(c, k));
    return out;
}

// Sampled estimates of the stay/move costs from a with-replacement sample S
// of the candidate set and a size guess s_tilde. Exact rationals in doubled
// units. Exhaustive averaging over samples of K (v in K) reproduces
// stay_move_costs exactly; the sample term skips u_i = v so that drawing v
// itself contributes nothing.
inline Rat est_cost_stays2(const Graph& g, const WeightFn& w, const Clustering& c,
                           const std::vector<Vertex>& sample, std::int64_t s_tilde, Vertex v) {
    if (sample.empty()) throw std::invalid_argument("est_cost_stays: empty sample");
    detail::VertexContext ctx = detail::vertex_context(g, w, c, v);
    std::int64_t sum = 0;
    for (Vertex u : sample) {
        if (u == v || !c.same(u, v)) continue;
        std::int64_t w2 = g.has_edge(u, v) ? w.weight2_edge(u, v) : 0;
        sum += w2 + 2 * (w2 > 0 ? 1 : 0) - 2;
    }
    Rat scaled = Rat(s_tilde, static_cast<long long>(sample.size())) * Rat(sum);
    return Rat(ctx.dw2 - ctx.dw2_cv + 2 * (ctx.cv_size - ctx.d_cv) - 2) + scaled;
}

inline Rat est_cost_moves2(const Graph& g, const WeightFn& w, const Clustering& c,
                           const std::vector<Vertex>& sample, std::int64_t s_tilde, Vertex v) {
    (void)c;  // the move estimate does not look at v's current cluster
    if (sample.empty()) throw std::invalid_argument("est_cost_moves: empty sample");
    std::int64_t dw2 = w.weighted_degree2(g, v);
    std::int64_t sum = 0;
    for (Vertex u : sample) {
        if (u == v) continue;
        std::int64_t w2 = g.has_edge(u, v) ? w.weight2_edge(u, v) : 0;
        sum += w2 + 2 * (w2 > 0 ? 1 : 0);
    }
    Rat scaled = Rat(s_tilde, static_cast<long long>(sample.size())) * Rat(sum);
    return Rat(dw2 + 2 * s_tilde - 2) - scaled;
}

// Stay-minus-move estimate that never evaluates the weighted degree d_w(v):
// the d_w(v) terms cancel in the difference and the remaining d_w(v, C(v))
// term is replaced by uniform neighbor samples. Expectation over the neighbor
// draws equals est_cost_stays2 - est_cost_moves2 for the same S and s_tilde.
// The draws are passed explicitly so tests can enumerate them; the rng
// overload samples eta_prime neighbors uniformly.
inline Rat est_cost_diff_sampled2(const Graph& g, const WeightFn& w, const Clustering& c,
                                  const std::vector<Vertex>& sample, std::int64_t s_tilde,
                                  Vertex v, const std::vector<Vertex>& neighbor_draws) {
    if (g.degree(v) == 0) throw std::invalid_argument("est_cost_diff_sampled: isolated vertex");
    if (sample.empty()) throw std::invalid_argument("est_cost_diff_sampled: empty sample");
    if (neighbor_draws.empty())
        throw std::invalid_argument("est_cost_diff_sampled: no neighbor draws");
    const auto& nbrs = g.neighbors(v);
    std::int64_t neighbor_sum2 = 0;
    for (Vertex x : neighbor_draws)
        if (c.same(x, v)) neighbor_sum2 += w.weight2_edge(x, v);
    Rat neighbor_term = Rat(static_cast<long long>(nbrs.size()),
                            static_cast<long long>(neighbor_draws.size())) *
                        Rat(neighbor_sum2);

    std::int64_t stay_sum = 0, move_sum = 0;
    for (Vertex u : sample) {
        if (u == v) continue;
        std::int64_t w2 = g.has_edge(u, v) ? w.weight2_edge(u, v) : 0;
        std::int64_t base = w2 + 2 * (w2 > 0 ? 1 : 0);
        move_sum += base;
        if (c.same(u, v)) stay_sum += base - 2;
    }
    std::int64_t cv_size = static_cast<std::int64_t>(c.cluster_size_of(v));
    std::int64_t d_cv = 0;
    for (Vertex u : nbrs) d_cv += c.same(u, v) ? 1 : 0;

    Rat scaled = Rat(s_tilde, static_cast<long long>(sample.size())) * Rat(stay_sum + move_sum);
    return -neighbor_term + Rat(2 * (cv_size - d_cv) - 2 * s_tilde) + scaled;
}

inline Rat est_cost_diff_sampled2(const Graph& g, const WeightFn& w, const Clustering& c,
                                  const std::vector<Vertex>& sample, std::int64_t s_tilde,
                                  Vertex v, int eta_prime, SplitRng& rng) {
    if (g.degree(v) == 0) throw std::invalid_argument("est_cost_diff_sampled: isolated vertex");
    const auto& nbrs = g.neighbors(v);
    std::vector<Vertex> draws(static_cast<std::size_t>(eta_prime));
    for (auto& x : draws) x = nbrs[static_cast<std::size_t>(rng.below(nbrs.size()))];
    return est_cost_diff_sampled2(g, w, c, sample, s_tilde, v, draws);
}

namespace detail {

// Per-vertex sample aggregates that make the stay/move estimates an O(1)
// evaluation for every size guess: for a fixed sample S,
//   est_stays(s~) = stays_base2 + (s~ / eta0) * stay_sum2
//   est_moves(s~) = moves_base2 + 2 s~ - (s~ / eta0) * move_sum2.
struct SampleAggregates {
    std::int64_t stays_base2 = 0;
    std::int64_t moves_base2 = 0;
    std::int64_t stay_sum2 = 0;
    std::int64_t move_sum2 = 0;
    std::int64_t eta0 = 1;

    Rat stays2(std::int64_t s_tilde) const {
        return Rat(stays_base2) + Rat(s_tilde, eta0) * Rat(stay_sum2);
    }
    Rat moves2(std::int64_t s_tilde) const {
        return Rat(moves_base2 + 2 * s_tilde) - Rat(s_tilde, eta0) * Rat(move_sum2);
    }
};

inline SampleAggregates sample_aggregates(const Graph& g, const WeightFn& w, const Clustering& c,
                                          const std::vector<Vertex>& sample, Vertex v) {
    VertexContext ctx = vertex_context(g, w, c, v);
    SampleAggregates agg;
    agg.eta0 = static_cast<std::int64_t>(sample.size());
    agg.stays_base2 = ctx.dw2 - ctx.dw2_cv + 2 * (ctx.cv_size - ctx.d_cv) - 2;
    agg.moves_base2 = ctx.dw2 - 2;
    for (Vertex u : sample) {
        if (u == v) continue;
        std::int64_t w2 = g.has_edge(u, v) ? w.weight2_edge(u, v) : 0;
        std::int64_t base = w2 + 2 * (w2 > 0 ? 1 : 0);
        agg.move_sum2 += base;
        if (c.same(u, v)) agg.stay_sum2 += base - 2;
    }
    return agg;
}

}  // namespace detail

// One grown candidate cluster. Starts from K(r), walks D(r) in eta batches of
// near-equal size (ascending vertex id, remainder on the first batches), and
// admits v when the sampled stay cost exceeds the sampled move cost by the
// threshold tau * W * |N(r)|.
inline std::vector<Vertex> generate_cluster(const Graph& g, const WeightFn& w,
                                            const Clustering& c, const PreclusteredInstance& pc,
                                            Vertex r,
                                            const std::vector<std::vector<Vertex>>& samples,
                                            const std::vector<std::int64_t>& sizes,
                                            const SampleConfig& cfg,
                                            const Neighborhoods* nbh_hint = nullptr) {
    const int eta = cfg.eta;
    if (static_cast<int>(samples.size()) != eta || static_cast<int>(sizes.size()) != eta)
        throw std::invalid_argument("generate_cluster: need eta samples and eta sizes");
    Neighborhoods local;
    const Neighborhoods& nbh = nbh_hint ? *nbh_hint : (local = neighborhoods(pc, g, r), local);

    std::vector<Vertex> grown = nbh.k;
    const std::size_t dn = nbh.d.size();
    long long tau_den = cfg.eta;
    for (int p = 1; p < cfg.tau_den_power; ++p) tau_den *= cfg.eta;
    Rat threshold2 = Rat(cfg.tau_num * w.bound2() * static_cast<long long>(nbh.n.size()), tau_den);

    std::size_t base = dn / static_cast<std::size_t>(eta);
    std::size_t extra = dn % static_cast<std::size_t>(eta);
    std::size_t pos = 0;
    for (int i = 0; i < eta; ++i) {
        std::size_t len = base + (static_cast<std::size_t>(i) < extra ? 1 : 0);
        for (std::size_t t = 0; t < len; ++t) {
            Vertex v = nbh.d[pos + t];
            if (samples[i].empty()) continue;  // no information, no admission
            detail::SampleAggregates agg = detail::sample_aggregates(g, w, c, samples[i], v);
            if (agg.stays2(sizes[i]) > agg.moves2(sizes[i]) + threshold2) grown.push_back(v);
        }
        pos += len;
    }
    std::sort(grown.begin(), grown.end());
    return grown;
}


// The symmetric difference s_prime xor C(r), the sample space of the
// improvement estimator.
inline std::vector<Vertex> swap_symmetric_difference(const Clustering& c,
                                                     const std::vector<Vertex>& s_prime,
                                                     Vertex r) {
    std::vector<char> in_sp(c.vertex_count(), 0);
    for (Vertex v : s_prime) in_sp[v] = 1;
    std::vector<Vertex> sym;
    for (Vertex v : s_prime)
        if (!c.same(v, r)) sym.push_back(v);
    for (Vertex v : c.cluster(c.cluster_of(r)))
        if (!in_sp[v]) sym.push_back(v);
    std::sort(sym.begin(), sym.end());
    return sym;
}

// Sampled estimate of cost(c) - cost(c + s_prime) from uniform draws over the
// symmetric difference s_prime xor C(r). Each sampled vertex u contributes
// the full pair-cost change over pairs into stable vertices plus half the
// change over pairs into other symmetric-difference vertices, so the
// exhaustive average over draw tuples equals the exact improvement. Draws are
// explicit here; the rng overload samples eta_prime of them uniformly.
inline Rat est_improvement2(const Graph& g, const WeightFn& w, const Clustering& c,
                            const std::vector<Vertex>& s_prime, Vertex r,
                            const std::vector<Vertex>& draws) {
    const std::size_t n = g.vertex_count();
    std::vector<Vertex> sym = swap_symmetric_difference(c, s_prime, r);
    if (sym.empty()) return Rat(0);
    if (draws.empty()) throw std::invalid_argument("est_improvement: no draws");

    std::vector<char> in_sp(n, 0);
    for (Vertex v : s_prime) in_sp[v] = 1;
    std::vector<char> in_sym(n, 0);
    for (Vertex v : sym) in_sym[v] = 1;

    auto pair_delta2 = [&](Vertex u, Vertex v) -> std::int64_t {
        // cost(c, uv) - cost(c + s_prime, uv), doubled
        bool before_int = c.same(u, v);
        bool after_int = in_sp[u] && in_sp[v] ? true : (!in_sp[u] && !in_sp[v] ? before_int : false);
        if (before_int == after_int) return 0;
        if (g.has_edge(u, v)) {
            std::int64_t w2 = w.weight2_edge(u, v);
            return w2 * (static_cast<std::int64_t>(!before_int) -
                         static_cast<std::int64_t>(!after_int));
        }
        return 2 * (static_cast<std::int64_t>(before_int) - static_cast<std::int64_t>(after_int));
    };

    Rat acc(0);
    for (Vertex u : draws) {
        std::int64_t full2 = 0, within2 = 0;
        for (Vertex v = 0; v < n; ++v) {
            if (v == u) continue;
            std::int64_t d2 = pair_delta2(u, v);
            if (d2 == 0) continue;
            full2 += d2;
            if (in_sym[v]) within2 += d2;
        }
        acc += Rat(full2) - Rat(within2, 2);
    }
    return Rat(static_cast<long long>(sym.size()), static_cast<long long>(draws.size())) * acc;
}

inline Rat est_improvement2(const Graph& g, const WeightFn& w, const Clustering& c,
                            const std::vector<Vertex>& s_prime, Vertex r, int eta_prime,
                            SplitRng& rng) {
    std::vector<Vertex> sym = swap_symmetric_difference(c, s_prime, r);
    if (sym.empty()) return Rat(0);
    std::vector<Vertex> draws(static_cast<std::size_t>(eta_prime));
    for (auto& u : draws) u = sym[static_cast<std::size_t>(rng.below(sym.size()))];
    return est_improvement2(g, w, c, s_prime, r, draws);
}

// Size grid for the sampled search: eps*d(r)*(1+eps')^k / 2 for k = 0 up to
// log_{1+eps'}(4/eps), rounded to integers >= 1, deduplicated.
inline std::vector<std::int64_t> size_grid(double eps, std::size_t deg, const SampleConfig& cfg) {
    double ep = cfg.eps_prime().to_double();
    int kmax = static_cast<int>(std::floor(std::log(4.0 / eps) / std::log1p(ep) + 1e-12));
    std::vector<std::int64_t> out;
    double val = eps * static_cast<double>(deg) / 2.0;
    for (int k = 0; k <= kmax; ++k) {
        auto s = static_cast<std::int64_t>(std::llround(val));
        out.push_back(std::max<std::int64_t>(1, s));
        val *= 1.0 + ep;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

struct SampledSearchStats {
    std::int64_t rounds = 0;
    std::int64_t pivot_rounds = 0;
    std::int64_t accepted_moves = 0;
    std::int64_t accepted_singletons = 0;
    std::int64_t initial_cost2 = 0;
    std::int64_t final_cost2 = 0;
    std::int64_t combinations_last_pivot = 0;  // candidates enumerated at the last pivot
    std::int64_t grid_size_last_pivot = 0;     // size-grid length at the last pivot
    std::vector<std::int64_t> cost_trace2;     // cost after each accepted move
};

struct CandidateSearch {
    std::int64_t best_delta2 = 0;
    std::vector<Vertex> best_set;
    std::int64_t combinations = 0;
};

namespace detail {

// Enumerates every (sample tuple, size-grid^eta) combination around pivot r
// and returns the best strict improvement found. Admission decisions reuse
// per-vertex sample aggregates, so a combination costs O(|D(r)|) beyond its
// exact delta evaluation; the admissions are identical to running
// generate_cluster on the same samples and sizes.
inline CandidateSearch enumerate_candidates(
    const Graph& g, const WeightFn& w, const Clustering& c, const Neighborhoods& nbh,
    const std::vector<std::vector<std::vector<Vertex>>>& sample_tuples,
    const std::vector<std::int64_t>& grid, const SampleConfig& cfg) {
    const int eta = cfg.eta;
    long long tau_den = cfg.eta;
    for (int p = 1; p < cfg.tau_den_power; ++p) tau_den *= cfg.eta;
    Rat threshold2 = Rat(cfg.tau_num * w.bound2() * static_cast<long long>(nbh.n.size()), tau_den);

    const std::size_t dn = nbh.d.size();
    std::vector<int> batch_of(dn);
    {
        std::size_t batch_base = dn / static_cast<std::size_t>(eta);
        std::size_t batch_extra = dn % static_cast<std::size_t>(eta);
        std::size_t pos = 0;
        for (int i = 0; i < eta; ++i) {
            std::size_t len = batch_base + (static_cast<std::size_t>(i) < batch_extra ? 1 : 0);
            for (std::size_t t = 0; t < len; ++t) batch_of[pos + t] = i;
            pos += len;
        }
    }

    CandidateSearch out;
    std::vector<std::size_t> grid_index(eta, 0);
    std::vector<SampleAggregates> aggs(dn);
    std::vector<std::vector<Vertex>> candidates;
    for (const auto& tup : sample_tuples) {
        for (std::size_t t = 0; t < dn; ++t)
            aggs[t] = sample_aggregates(g, w, c, tup[batch_of[t]], nbh.d[t]);
        std::fill(grid_index.begin(), grid_index.end(), 0);
        while (true) {
            ++out.combinations;
            std::vector<Vertex> grown = nbh.k;
            for (std::size_t t = 0; t < dn; ++t) {
                std::int64_t s_tilde = grid[grid_index[batch_of[t]]];
                if (aggs[t].stays2(s_tilde) > aggs[t].moves2(s_tilde) + threshold2)
                    grown.push_back(nbh.d[t]);
            }
            std::sort(grown.begin(), grown.end());
            candidates.push_back(std::move(grown));
            int pos = eta - 1;
            while (pos >= 0 && ++grid_index[pos] == grid.size()) grid_index[pos--] = 0;
            if (pos < 0) break;
        }
    }
    // nearby size guesses usually admit the same set; evaluate each distinct
    // candidate once
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (auto& grown : candidates) {
        std::int64_t d2 = delta_cost2(g, w, c, grown);
        if (d2 < out.best_delta2) {
            out.best_delta2 = d2;
            out.best_set = std::move(grown);
        }
    }
    return out;
}

}  // namespace detail

// Round-based sampled descent from an explicit starting clustering. Each
// round tries one uniform singleton extraction, then with probability
// 1/(n d(r)) pivots on r: draws eta subsets T^i of N(r), enumerates the
// sample/size-grid combinations, and swaps in the best grown cluster if it
// improves the cost by at least gamma |E_adm| / n. Rounds without a pivot
// still count toward the stagnation window of
// stagnation_factor * n * ceil(log2 n) rounds.
inline Clustering sampled_descent(const Graph& g, const PreclusteredInstance& pc,
                                  const WeightFn& w, const SampleConfig& cfg, Clustering current,
                                  SplitRng& rng, SampledSearchStats* stats = nullptr) {
    cfg.validate(pc.epsilon);
    const std::size_t n = g.vertex_count();
    if (n == 0) return current;

    SampledSearchStats local_stats;
    SampledSearchStats& st = stats ? *stats : local_stats;
    std::int64_t cur_cost2 = cost(g, w, current).total2();
    st.initial_cost2 = cur_cost2;
    st.cost_trace2.push_back(cur_cost2);

    // pivot distribution: r with probability 1/(n d(r)); skip otherwise
    std::vector<double> cum(n, 0.0);
    double acc = 0.0;
    for (Vertex v = 0; v < n; ++v) {
        if (g.degree(v) > 0) acc += 1.0 / (static_cast<double>(n) * g.degree(v));
        cum[v] = acc;
    }

    int log2n = 0;
    while ((std::size_t{1} << log2n) < n) ++log2n;
    const std::int64_t window =
        std::max<std::int64_t>(1, static_cast<std::int64_t>(cfg.stagnation_factor) *
                                      static_cast<std::int64_t>(n) * std::max(log2n, 1));
    const long double accept_bar2 =  // doubled improvement threshold, gamma |E_adm| / n
        2.0L * static_cast<long double>(cfg.gamma) *
        static_cast<long double>(pc.admissible_pairs) / static_cast<long double>(n);

    std::vector<std::optional<Neighborhoods>> nbh_cache(n);
    std::int64_t quiet = 0;
    while (quiet < window) {
        ++st.rounds;
        ++quiet;

        Vertex r_single = static_cast<Vertex>(rng.below(n));
        if (current.cluster_size_of(r_single) > 1) {
            std::int64_t d2 = delta_cost2(g, w, current, {r_single});
            if (d2 < 0) {
                current = add_cluster(current, {r_single});
                cur_cost2 += d2;
                st.cost_trace2.push_back(cur_cost2);
                ++st.accepted_singletons;
                quiet = 0;
            }
        }

        double roll = rng.real01();
        if (roll >= acc) continue;  // no pivot this round
        Vertex r = static_cast<Vertex>(
            std::lower_bound(cum.begin(), cum.end(), roll) - cum.begin());
        if (r >= n || g.degree(r) == 0) continue;
        ++st.pivot_rounds;

        if (!nbh_cache[r]) nbh_cache[r] = neighborhoods(pc, g, r);
        const Neighborhoods& nbh = *nbh_cache[r];
        if (nbh.n.size() <= 1 && nbh.k.size() <= 1) continue;

        std::vector<std::int64_t> grid = size_grid(pc.epsilon, g.degree(r), cfg);
        st.grid_size_last_pivot = static_cast<std::int64_t>(grid.size());
        const int eta = cfg.eta;
        const std::size_t t_len = std::min(cfg.s, nbh.n.size());
        if (t_len == 0) continue;

        // T^i: uniform subsets of N(r); S^i: with-replacement samples of T^i.
        std::vector<std::vector<Vertex>> t_sets(eta);
        for (int i = 0; i < eta; ++i) {
            auto idx = rng.sample_indices(nbh.n.size(), t_len);
            t_sets[i].reserve(idx.size());
            for (auto id : idx) t_sets[i].push_back(nbh.n[id]);
        }
        std::vector<std::vector<std::vector<Vertex>>> sample_tuples;
        for (int rep = 0; rep < cfg.samples_per_batch; ++rep) {
            std::vector<std::vector<Vertex>> tup(eta);
            for (int i = 0; i < eta; ++i) {
                tup[i].resize(static_cast<std::size_t>(cfg.eta0()));
                for (auto& slot : tup[i])
                    slot = t_sets[i][static_cast<std::size_t>(rng.below(t_sets[i].size()))];
            }
            sample_tuples.push_back(std::move(tup));
        }

        CandidateSearch found =
            detail::enumerate_candidates(g, w, current, nbh, sample_tuples, grid, cfg);
        st.combinations_last_pivot = found.combinations;

        if (found.best_delta2 < 0 &&
            static_cast<long double>(-found.best_delta2) >= accept_bar2) {
            current = add_cluster(current, found.best_set);
            cur_cost2 += found.best_delta2;
            st.cost_trace2.push_back(cur_cost2);
            ++st.accepted_moves;
            quiet = 0;
        }
    }
    st.final_cost2 = cur_cost2;
    return current;
}

// The full sampled search: precluster-provided atoms plus singletons as the
// start, then sampled descent until the stagnation window passes quietly.
inline Clustering faster_local_search(const Graph& g, const PreclusteredInstance& pc,
                                      const WeightFn& w, const SampleConfig& cfg, SplitRng& rng,
                                      SampledSearchStats* stats = nullptr) {
    return sampled_descent(g, pc, w, cfg, atoms_plus_singletons(pc), rng, stats);
}

}  // namespace corrclust
