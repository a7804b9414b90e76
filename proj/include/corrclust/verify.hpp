#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "corrclust/baselines.hpp"
#include "corrclust/clustering.hpp"
#include "corrclust/cost.hpp"
#include "corrclust/flip_pipeline.hpp"
#include "corrclust/generators.hpp"
#include "corrclust/graph.hpp"
#include "corrclust/local_search.hpp"
#include "corrclust/pivot.hpp"
#include "corrclust/preclustering.hpp"
#include "corrclust/report.hpp"
#include "corrclust/sampling.hpp"
#include "corrclust/weights.hpp"

namespace corrclust {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

namespace verify_detail {

inline void record(std::vector<CheckResult>& out, const std::string& name, bool pass,
                   const std::string& detail = "") {
    out.push_back(CheckResult{name, pass, detail});
}

inline Graph random_graph(SplitRng& rng, std::size_t n_min, std::size_t n_max) {
    std::size_t n = n_min + static_cast<std::size_t>(rng.below(n_max - n_min + 1));
    double p = 0.15 + 0.7 * rng.real01();
    return gen_gnp(n, p, rng.next());
}

// Enumerates all partitions of 0..n-1 in restricted-growth order.
inline void for_each_partition(std::size_t n, const std::function<void(const Clustering&)>& fn) {
    std::vector<std::uint32_t> a(n, 0);
    std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t v, std::uint32_t maxid) {
        if (v == n) {
            fn(Clustering::from_assignment(a));
            return;
        }
        for (std::uint32_t b = 0; b <= maxid + 1 && b <= v; ++b) {
            a[v] = b;
            rec(v + 1, std::max(maxid, b));
        }
    };
    if (n == 0) return;
    a[0] = 0;
    rec(1, 0);
}

// Enumerates all length-k sequences over pool (with repetition).
inline void for_each_tuple(const std::vector<Vertex>& pool, int k,
                           const std::function<void(const std::vector<Vertex>&)>& fn) {
    std::vector<Vertex> cur(static_cast<std::size_t>(k), pool.empty() ? 0 : pool[0]);
    std::function<void(int)> rec = [&](int pos) {
        if (pos == k) {
            fn(cur);
            return;
        }
        for (Vertex p : pool) {
            cur[static_cast<std::size_t>(pos)] = p;
            rec(pos + 1);
        }
    };
    if (!pool.empty()) rec(0);
}

// Pivot combination replay that also asserts the chosen triple held the
// maximum unassigned count at every step.
inline bool pivot_argmax_monotone(const Clustering& cx, const Clustering& cy,
                                  const Clustering& cz) {
    CoordinateIndex ix = CoordinateIndex::build(cx, cy, cz);
    const std::size_t n = ix.coords.size();
    std::map<Triple, std::size_t> cnt;
    for (const auto& [t, mem] : ix.groups) cnt[t] = mem.size();
    std::vector<char> assigned(n, 0);
    std::size_t remaining = n;
    while (remaining > 0) {
        Triple best{};
        std::size_t best_count = 0;
        for (const auto& [t, c] : cnt)
            if (c > best_count) { best = t; best_count = c; }
        for (const auto& [t, c] : cnt)
            if (c > best_count) return false;  // argmax violated
        std::size_t taken = 0;
        for (Vertex v = 0; v < n; ++v) {
            if (assigned[v]) continue;
            if (CoordinateIndex::distance(ix.coords[v], best) <= 1) {
                assigned[v] = 1;
                --cnt[ix.coords[v]];
                ++taken;
            }
        }
        if (taken == 0) return false;
        remaining -= taken;
    }
    return true;
}

}  // namespace verify_detail

// ---- graph-core invariants ------------------------------------------------

inline std::vector<CheckResult> verify_graph_suite(int trials, std::uint64_t seed) {
    using namespace verify_detail;
    std::vector<CheckResult> out;
    SplitRng root(seed);

    bool identity_ok = true, delta_ok = true, degenerate_ok = true, extraction_ok = true;
    std::string detail;
    for (int t = 0; t < trials; ++t) {
        SplitRng rng = root.fork(static_cast<std::uint64_t>(t));
        Graph g = random_graph(rng, 4, 30);
        const std::size_t n = g.vertex_count();
        Clustering l = random_clustering(n, 1 + rng.below(n), rng);
        Clustering c = random_clustering(n, 1 + rng.below(n), rng);
        WeightFn w0 = WeightFn::unit();

        // flip identity: cost_{w + beta·cut(l)}(c) = cost_w(c) + beta·w0(E+ ∩ Ext(l) ∩ Ext(c))
        for (std::int64_t beta2 : {1, 2}) {
            WeightFn w1 = w0.with_layer(std::make_shared<Clustering>(l), beta2);
            std::int64_t lhs = cost(g, w1, c).total2();
            std::int64_t both_cut = 0;
            for (Vertex u = 0; u < n; ++u)
                for (Vertex v : g.neighbors(u))
                    if (u < v && !l.same(u, v) && !c.same(u, v)) ++both_cut;
            std::int64_t rhs = cost(g, w0, c).total2() + beta2 * both_cut;
            if (lhs != rhs) identity_ok = false;
        }

        // delta vs recompute on a random set
        std::size_t k = 1 + rng.below(n);
        std::vector<Vertex> s;
        for (auto id : rng.sample_indices(n, k)) s.push_back(id);
        WeightFn w1 = w0.with_layer(std::make_shared<Clustering>(l), 1);
        std::int64_t d2 = delta_cost2(g, w1, c, s);
        std::int64_t full = cost(g, w1, add_cluster(c, s)).total2() - cost(g, w1, c).total2();
        if (d2 != full) delta_ok = false;

        if (cost(g, w0, Clustering::singletons(n)).minus2 != 0) degenerate_ok = false;
        if (cost(g, w0, Clustering::single_cluster(n)).plus2 != 0) degenerate_ok = false;

        // any vertex in a cluster of size > 2 d(v) + 1 has an improving extraction
        for (const Clustering& big : {Clustering::single_cluster(n), c}) {
            for (Vertex v = 0; v < n; ++v)
                if (big.cluster_size_of(v) > 2 * g.degree(v) + 1 &&
                    delta_cost2(g, w0, big, {v}) >= 0)
                    extraction_ok = false;
        }
    }
    record(out, "graph/flip-cost-identity", identity_ok);
    record(out, "graph/delta-vs-recompute", delta_ok);
    record(out, "graph/singletons-and-one-cluster", degenerate_ok);
    record(out, "graph/oversize-cluster-extraction", extraction_ok);
    return out;
}

// ---- local-search invariants ------------------------------------------------

inline std::vector<CheckResult> verify_local_suite(int trials, std::uint64_t seed) {
    using namespace verify_detail;
    std::vector<CheckResult> out;
    SplitRng root(seed);
    SearchEngine engine = SearchEngine::exhaustive();

    bool ineq_ok = true, two_approx_ok = true, idempotent_ok = true;
    for (int t = 0; t < trials; ++t) {
        SplitRng rng = root.fork(static_cast<std::uint64_t>(t));
        Graph g = random_graph(rng, 4, 8);
        const std::size_t n = g.vertex_count();
        WeightFn w0 = WeightFn::unit();
        Clustering ls = run_local_search(g, w0, Clustering::singletons(n), engine, rng.next());

        for_each_partition(n, [&](const Clustering& c) {
            if (!local_optimum_inequalities(g, w0, ls, c).all_hold()) ineq_ok = false;
        });

        OracleResult opt = brute_force_opt(g, w0);
        if (cost(g, w0, ls).total2() > 2 * opt.cost2) two_approx_ok = false;
        if (run_local_search(g, w0, ls, engine, rng.next()) != ls) idempotent_ok = false;
    }
    record(out, "local/local-optimum-inequalities", ineq_ok);
    record(out, "local/two-approximation", two_approx_ok);
    record(out, "local/idempotent", idempotent_ok);
    return out;
}

// ---- pivot invariants -------------------------------------------------------

inline std::vector<CheckResult> verify_pivot_suite(int trials, std::uint64_t seed) {
    using namespace verify_detail;
    std::vector<CheckResult> out;
    SplitRng root(seed);

    int pass_lemma = 0, pass_bounds = 0, pass_valid = 0, pass_monotone = 0;
    for (int t = 0; t < trials; ++t) {
        SplitRng rng = root.fork(static_cast<std::uint64_t>(t));
        Graph g = random_graph(rng, 4, 30);
        const std::size_t n = g.vertex_count();
        Clustering cx = random_clustering(n, 1 + rng.below(n), rng);
        Clustering cy = random_clustering(n, 1 + rng.below(n), rng);
        Clustering cz = random_clustering(n, 1 + rng.below(n), rng);

        Clustering combined = pivot3(cx, cy, cz);
        bool valid = combined.vertex_count() == n;
        for (const auto& cl : combined.clusters())
            if (cl.empty()) valid = false;
        pass_valid += valid;
        pass_monotone += pivot_argmax_monotone(cx, cy, cz);
        pass_lemma += verify_pivot_lemma(g, cx, cy, cz).all_hold();
        pass_bounds += verify_special_bound(g, cx, cy, cz).all_hold();
    }
    std::ostringstream ss;
    ss << pass_lemma << "/" << trials << " pass";
    record(out, "pivot/partition-valid", pass_valid == trials);
    record(out, "pivot/argmax-monotone", pass_monotone == trials);
    record(out, "pivot/crux-lemma", pass_lemma == trials, ss.str());
    record(out, "pivot/special-coverage-bounds", pass_bounds == trials);
    return out;
}

// ---- flip-pipeline invariants -------------------------------------------------

inline std::vector<CheckResult> verify_flip_suite(int trials, std::uint64_t seed) {
    using namespace verify_detail;
    std::vector<CheckResult> out;
    SplitRng root(seed);
    SearchEngine engine = SearchEngine::exhaustive();
    WeightFn w0 = WeightFn::unit();

    bool best_ok = true, ls1_ok = true, aggregate_ok = true, bound_ok = true;
    for (int t = 0; t < trials; ++t) {
        SplitRng rng = root.fork(static_cast<std::uint64_t>(t));
        Graph g = random_graph(rng, 4, 8);
        PipelineTrace tr = two_round(g, engine, rng.next());
        std::int64_t c1 = tr.solutions[0].original_cost2;
        std::int64_t c2 = tr.solutions[1].original_cost2;
        std::int64_t best = tr.best().original_cost2;
        if (best != std::min(c1, c2)) best_ok = false;

        OracleResult opt = brute_force_opt(g, w0);
        if (8 * best > 15 * opt.cost2) bound_ok = false;

        // competitive-failure implications, evaluated exactly
        const Clustering& ls1 = tr.solutions[0].clustering;
        const Clustering& ls2 = tr.solutions[1].clustering;
        PairCells cells1 = tally_pairs(g, w0, ls1, opt.clustering);
        std::int64_t lhs1 = (cells1.minus(0, 0) + cells1.minus(1, 0)) + cells1.plus(1, 1);
        // if minus(OPT) + w(E+ ∩ Ext(Ls1) ∩ Ext(OPT)) >= (1/8) cost(OPT), Ls1 is (2-1/8)-competitive
        if (8 * lhs1 >= opt.cost2 && 8 * c1 > 15 * opt.cost2) ls1_ok = false;

        bool fail1 = 8 * c1 > 15 * opt.cost2;
        bool fail2 = 8 * c2 > 15 * opt.cost2;
        if (fail1 && fail2) {
            PairCells cells2 = tally_pairs(g, w0, ls2, opt.clustering);
            PairCells cells12 = tally_pairs(g, w0, ls1, ls2);
            std::int64_t six = (cells1.minus(0, 0) + cells1.minus(1, 0))  // minus cost of OPT
                               + (cells1.minus(0, 0) + cells1.minus(0, 1))  // minus cost of Ls1
                               + (cells2.minus(0, 0) + cells2.minus(0, 1))  // minus cost of Ls2
                               + cells1.plus(1, 1) + cells2.plus(1, 1) + cells12.plus(1, 1);
            if (2 * six >= opt.cost2) aggregate_ok = false;
        }
    }
    record(out, "flip/two-round-best-of-two", best_ok);
    record(out, "flip/two-round-15-8-bound", bound_ok);
    record(out, "flip/first-round-competitive-implication", ls1_ok);
    record(out, "flip/special-cost-aggregate", aggregate_ok);

    // structural replay of a two-iteration pipeline
    {
        SplitRng rng = root.fork(0xf11f);
        Graph g = random_graph(rng, 5, 7);
        FlipSchedule sched;
        sched.beta = 0.5;
        sched.k = 2;
        sched.engine = engine;
        std::uint64_t s0 = rng.next();
        PipelineTrace tr = iterated_flipping(g, sched, nullptr, s0);

        Clustering start = Clustering::singletons(g.vertex_count());
        Clustering c0p = run_local_search(g, w0, start, engine, s0 + 1);
        WeightFn w1 = flip_weights(w0, c0p, 0.5);
        Clustering c1 = run_local_search(g, w1, start, engine, s0 + 2);
        WeightFn w1p = flip_weights(w1, c1, 0.5);
        Clustering c1p = run_local_search(g, w1p, start, engine, s0 + 3);
        Clustering c1pp = pivot3(c0p, c1, c1p);
        WeightFn w2 = flip_weights(w0, c1p, 0.5);
        Clustering c2 = run_local_search(g, w2, start, engine, s0 + 4);
        WeightFn w2p = flip_weights(w2, c2, 0.5);
        Clustering c2p = run_local_search(g, w2p, start, engine, s0 + 5);
        Clustering c2pp = pivot3(c1p, c2, c2p);

        std::vector<std::string> labels{"C0'", "C1", "C1'", "C1''", "C2", "C2'", "C2''"};
        std::vector<Clustering> expect{c0p, c1, c1p, c1pp, c2, c2p, c2pp};
        bool structure_ok = tr.solutions.size() == labels.size();
        for (std::size_t i = 0; structure_ok && i < labels.size(); ++i)
            structure_ok = tr.solutions[i].label == labels[i] &&
                           tr.solutions[i].clustering == expect[i];
        // at most two layers in any weight function used, max weight 2
        structure_ok = structure_ok && w2p.layer_count() == 2 && w2p.bound2() == 4;
        record(out, "flip/structural-replay", structure_ok);
    }
    return out;
}

// ---- preclustering invariants --------------------------------------------------

inline std::vector<CheckResult> verify_precluster_suite(int trials, std::uint64_t seed) {
    using namespace verify_detail;
    std::vector<CheckResult> out;
    SplitRng root(seed);

    bool valid_ok = true, sizes_ok = true, partition_ok = true;
    bool dtn_ok = true, initial_ok = true;
    for (int t = 0; t < trials; ++t) {
        SplitRng rng = root.fork(static_cast<std::uint64_t>(t));
        Graph g = random_graph(rng, 6, 24);
        const std::size_t n = g.vertex_count();
        double eps = 0.1;
        PreclusteredInstance pc = precluster(g, eps);

        GoodnessReport rep = validate_good_instance(g, pc);
        if (!rep.adm_degree_ok || !rep.degree_similarity_ok) valid_ok = false;

        for (Vertex v = 0; v < n; ++v) {
            Neighborhoods nb = neighborhoods(pc, g, v);
            if (g.degree(v) == 0) {
                if (nb.n.size() != 1 || pc.adm_degree(v) != 0) sizes_ok = false;
                continue;
            }
            double lim = 6.0 / (eps * eps * eps) * static_cast<double>(g.degree(v));
            if (static_cast<double>(nb.n.size()) > lim) sizes_ok = false;
            for (Vertex u : nb.n) {
                if (g.degree(u) == 0) continue;
                double lim2 = 12.0 / (eps * eps * eps * eps) * static_cast<double>(g.degree(u));
                if (static_cast<double>(nb.n.size()) > lim2) sizes_ok = false;
            }
        }

        std::int64_t atomic = 0, admissible = 0, non_adm = 0;
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v) {
                switch (pc.pair_class(u, v)) {
                    case PrePairClass::Atomic: ++atomic; break;
                    case PrePairClass::Admissible: ++admissible; break;
                    case PrePairClass::NonAdmissible: ++non_adm; break;
                }
            }
        std::int64_t all_pairs = static_cast<std::int64_t>(n) * (n - 1) / 2;
        if (atomic + admissible + non_adm != all_pairs) partition_ok = false;
        if (admissible != pc.admissible_pairs) partition_ok = false;
    }

    // the two structural bounds on small instances with a brute-force reference
    SplitRng rng2 = root.fork(0xabc);
    for (int t = 0; t < std::max(trials / 4, 4); ++t) {
        SplitRng rng = rng2.fork(static_cast<std::uint64_t>(t));
        Graph g = random_graph(rng, 5, 8);
        double eps = 0.3;
        PreclusteredInstance pc = precluster(g, eps);
        WeightFn w0 = WeightFn::unit();

        // reference is the optimal good clustering, which cannot split atoms
        std::int64_t init2 = cost(g, w0, atoms_plus_singletons(pc)).total2();
        std::int64_t good2 = brute_force_good_opt(g, w0, pc, eps).cost2;
        long double bound = static_cast<long double>(good2) +
                            8.0L * static_cast<long double>(pc.admissible_pairs) / eps;
        if (static_cast<long double>(init2) > bound) initial_ok = false;

        OracleResult good = brute_force_good_opt(g, w0, pc, eps / 2);
        for (const auto& cl : good.clustering.clusters()) {
            if (cl.size() <= 1) continue;
            for (Vertex v : cl) {
                Neighborhoods nb = neighborhoods(pc, g, v);
                long double lhs = powl(static_cast<long double>(eps), 8) / 576.0L *
                                  static_cast<long double>(nb.d.size()) *
                                  static_cast<long double>(nb.n.size());
                std::int64_t rhs = 0;
                for (Vertex u : cl) rhs += static_cast<std::int64_t>(pc.adm_degree(u));
                if (lhs > static_cast<long double>(rhs)) dtn_ok = false;
            }
        }
    }
    record(out, "precluster/goodness-conditions", valid_ok);
    record(out, "precluster/neighborhood-size-bounds", sizes_ok);
    record(out, "precluster/pair-classes-partition", partition_ok);
    record(out, "precluster/good-cluster-reach-bound", dtn_ok);
    record(out, "precluster/initial-cost-bound", initial_ok);
    return out;
}

// ---- estimator invariants -------------------------------------------------------

inline std::vector<CheckResult> verify_estimator_suite(int trials, std::uint64_t seed) {
    using namespace verify_detail;
    std::vector<CheckResult> out;
    SplitRng root(seed);

    bool unbiased_ok = true, noisy_ok = true, diff_ok = true, improvement_ok = true;
    int cases = 0;
    for (int t = 0; t < std::max(trials / 10, 3); ++t) {
        SplitRng rng = root.fork(static_cast<std::uint64_t>(t));
        Graph g = random_graph(rng, 4, 6);
        const std::size_t n = g.vertex_count();
        Clustering base = random_clustering(n, 1 + rng.below(n), rng);
        Clustering layer = random_clustering(n, 1 + rng.below(n), rng);
        for (WeightFn w :
             {WeightFn::unit(), WeightFn::unit().with_layer(std::make_shared<Clustering>(layer), 2)}) {
            for (Vertex v = 0; v < n; ++v) {
                // K: v plus up to three random partners
                std::vector<Vertex> k{v};
                for (auto u : rng.sample_indices(n, 1 + rng.below(3)))
                    if (u != v) k.push_back(u);
                std::sort(k.begin(), k.end());
                k.erase(std::unique(k.begin(), k.end()), k.end());
                StayMoveCosts exact = stay_move_costs(g, w, base, k, v);
                StayMoveCosts direct = stay_move_costs_direct(g, w, base, k, v);
                if (exact.stays2 != direct.stays2 || exact.moves2 != direct.moves2)
                    unbiased_ok = false;

                auto s = static_cast<std::int64_t>(k.size());
                for (int eta0 = 1; eta0 <= 3; ++eta0) {
                    Rat stays_sum(0), moves_sum(0);
                    std::int64_t tuples = 0;
                    for_each_tuple(k, eta0, [&](const std::vector<Vertex>& tup) {
                        stays_sum += est_cost_stays2(g, w, base, tup, s, v);
                        moves_sum += est_cost_moves2(g, w, base, tup, s, v);
                        ++tuples;
                    });
                    if (stays_sum * Rat(1, tuples) != Rat(exact.stays2)) unbiased_ok = false;
                    if (moves_sum * Rat(1, tuples) != Rat(exact.moves2)) unbiased_ok = false;
                    ++cases;

                    // size-noise robustness: |est(s~) - est(s)| <= 2 eps' W s for
                    // every s~ within (1 +- eps') s, with eps' = 1/eta^2
                    int eta = 2;
                    Rat epsp(1, eta * eta);
                    Rat bound = Rat(2) * epsp * Rat(w.bound2()) * Rat(s);  // doubled via bound2
                    std::vector<Vertex> tup(static_cast<std::size_t>(eta0), k[0]);
                    for (std::int64_t stilde = s - 1; stilde <= s + 1; ++stilde) {
                        if (stilde < 1) continue;
                        Rat scale = (Rat(stilde) - Rat(s)).abs() * Rat(1, s);
                        if (scale > epsp) continue;
                        Rat ds = (est_cost_stays2(g, w, base, tup, stilde, v) -
                                  est_cost_stays2(g, w, base, tup, s, v))
                                     .abs();
                        Rat dm = (est_cost_moves2(g, w, base, tup, stilde, v) -
                                  est_cost_moves2(g, w, base, tup, s, v))
                                     .abs();
                        if (ds > bound || dm > bound) noisy_ok = false;
                    }

                    // neighbor-sampled difference: exhaustive mean over neighbor draws
                    if (g.degree(v) > 0) {
                        const auto& nbrs = g.neighbors(v);
                        for (int etap = 1; etap <= 2; ++etap) {
                            Rat acc(0);
                            std::int64_t count = 0;
                            for_each_tuple(nbrs, etap, [&](const std::vector<Vertex>& xs) {
                                acc += est_cost_diff_sampled2(g, w, base, tup, s, v, xs);
                                ++count;
                            });
                            Rat expect = est_cost_stays2(g, w, base, tup, s, v) -
                                         est_cost_moves2(g, w, base, tup, s, v);
                            if (acc * Rat(1, count) != expect) diff_ok = false;
                        }
                    }
                }
            }

            // improvement estimator: exhaustive mean equals -delta over the swap
            for (int rep = 0; rep < 3; ++rep) {
                Vertex r = static_cast<Vertex>(rng.below(n));
                std::size_t kk = 1 + rng.below(3);
                std::vector<Vertex> sp;
                for (auto u : rng.sample_indices(n, kk)) sp.push_back(u);
                std::vector<Vertex> sym = swap_symmetric_difference(base, sp, r);
                if (sym.empty() || sym.size() > 4) continue;
                std::int64_t d2 = delta_cost2(g, w, base, sp);
                for (int etap = 1; etap <= 2; ++etap) {
                    Rat acc(0);
                    std::int64_t count = 0;
                    for_each_tuple(sym, etap, [&](const std::vector<Vertex>& us) {
                        acc += est_improvement2(g, w, base, sp, r, us);
                        ++count;
                    });
                    if (acc * Rat(1, count) != Rat(-d2)) improvement_ok = false;
                }
            }
        }
    }
    // size-noise bound over a larger candidate set, where the (1 +- eps')
    // window actually spans several integers
    {
        SplitRng rng = root.fork(0xbead);
        Graph g = gen_gnp(40, 0.3, rng.next());
        Clustering c = random_clustering(40, 6, rng);
        WeightFn w = WeightFn::unit();
        std::vector<Vertex> k;
        for (auto id : rng.sample_indices(40, 24)) k.push_back(id);
        Vertex v = k[0];
        auto s = static_cast<std::int64_t>(k.size());
        const int eta = 2;
        Rat epsp(1, eta * eta);
        Rat bound = Rat(2) * epsp * Rat(w.bound2()) * Rat(s);
        for (int rep = 0; rep < 20; ++rep) {
            std::vector<Vertex> tup(8);
            for (auto& slot : tup) slot = k[static_cast<std::size_t>(rng.below(k.size()))];
            for (std::int64_t stilde = s - 6; stilde <= s + 6; ++stilde) {
                if ((Rat(stilde) - Rat(s)).abs() * Rat(1, s) > epsp) continue;
                Rat ds = (est_cost_stays2(g, w, c, tup, stilde, v) -
                          est_cost_stays2(g, w, c, tup, s, v))
                             .abs();
                Rat dm = (est_cost_moves2(g, w, c, tup, stilde, v) -
                          est_cost_moves2(g, w, c, tup, s, v))
                             .abs();
                if (ds > bound || dm > bound) noisy_ok = false;
            }
        }
    }

    std::ostringstream ss;
    ss << cases << " exhaustive cases";
    record(out, "estimators/unbiased", unbiased_ok, ss.str());
    record(out, "estimators/size-noise-bound", noisy_ok);
    record(out, "estimators/neighbor-sampled-difference", diff_ok);
    record(out, "estimators/improvement-mean", improvement_ok);

    // scaled-down concentration check; the acceptance suite runs it at the
    // full |K| = 1000, 1000-trial size
    {
        SplitRng rng = root.fork(0xc0c0);
        auto [g, truth] = gen_planted(6, 50, 0.15, 0.03, rng.next());
        (void)truth;
        const std::size_t n = g.vertex_count();
        Clustering c = random_clustering(n, 8, rng);
        auto layer = std::make_shared<Clustering>(random_clustering(n, 5, rng));
        WeightFn w = WeightFn::unit().with_layer(layer, 2);
        std::vector<Vertex> k;
        for (auto id : rng.sample_indices(n, 250)) k.push_back(id);
        Vertex v = k[static_cast<std::size_t>(rng.below(k.size()))];
        StayMoveCosts exact = stay_move_costs(g, w, c, k, v);
        const int eta = 4;
        const int eta0 = 1024;
        auto s = static_cast<std::int64_t>(k.size());
        Rat tol = Rat(1, eta * eta) * Rat(w.bound2()) * Rat(s);
        int deviant = 0;
        const int trials2 = 200;
        std::vector<Vertex> sample(eta0);
        for (int t2 = 0; t2 < trials2; ++t2) {
            SplitRng trial = rng.fork(static_cast<std::uint64_t>(t2));
            for (auto& slot : sample) slot = k[static_cast<std::size_t>(trial.below(k.size()))];
            bool bad =
                (est_cost_stays2(g, w, c, sample, s, v) - Rat(exact.stays2)).abs() > tol ||
                (est_cost_moves2(g, w, c, sample, s, v) - Rat(exact.moves2)).abs() > tol;
            deviant += bad;
        }
        std::ostringstream cs;
        cs << deviant << "/" << trials2 << " beyond (1/eta^2)Ws";
        record(out, "estimators/concentration-smoke",
               static_cast<double>(deviant) / trials2 <= 0.59, cs.str());
    }
    return out;
}

// ---- sampled-search invariants -----------------------------------------------------

inline std::vector<CheckResult> verify_sampled_suite(int trials, std::uint64_t seed) {
    using namespace verify_detail;
    std::vector<CheckResult> out;
    SplitRng root(seed);

    bool containment_ok = true, monotone_ok = true, rounds_ok = true;
    bool combos_ok = true, single_improvement_ok = true;
    for (int t = 0; t < std::max(trials / 50, 2); ++t) {
        SplitRng rng = root.fork(static_cast<std::uint64_t>(t));
        auto [g, planted] = gen_planted(3, 8, 0.85, 0.1, rng.next());
        (void)planted;
        PreclusteredInstance pc = precluster(g, 0.2);
        WeightFn w0 = WeightFn::unit();
        SampleConfig cfg;
        cfg.eta = 2;
        cfg.gamma = 1e-3;
        cfg.s = 16;
        cfg.stagnation_factor = 2;

        // generate_cluster output always sits between K(r) and N(r)
        for (int rep = 0; rep < 20; ++rep) {
            Vertex r = static_cast<Vertex>(rng.below(g.vertex_count()));
            if (g.degree(r) == 0) continue;
            Neighborhoods nb = neighborhoods(pc, g, r);
            std::vector<std::vector<Vertex>> samples(2);
            std::vector<std::int64_t> sizes(2);
            for (int i = 0; i < 2; ++i) {
                sizes[i] = 1 + static_cast<std::int64_t>(rng.below(8));
                for (int j = 0; j < 8; ++j)
                    samples[i].push_back(nb.n[static_cast<std::size_t>(rng.below(nb.n.size()))]);
            }
            Clustering c = random_clustering(g.vertex_count(), 4, rng);
            auto grown = generate_cluster(g, w0, c, pc, r, samples, sizes, cfg, &nb);
            if (!std::includes(grown.begin(), grown.end(), nb.k.begin(), nb.k.end()))
                containment_ok = false;
            if (!std::includes(nb.n.begin(), nb.n.end(), grown.begin(), grown.end()))
                containment_ok = false;

            // brute-force swap bound for clusters inside N(r) against a
            // search-maintained clustering (atoms + singletons here)
            Clustering maintained = atoms_plus_singletons(pc);
            std::size_t kk = 1 + rng.below(std::min<std::size_t>(nb.n.size(), 6));
            std::vector<Vertex> cand;
            for (auto id : rng.sample_indices(nb.n.size(), kk)) cand.push_back(nb.n[id]);
            std::int64_t d2 = delta_cost2(g, w0, maintained, cand);
            long double cap = 49.0L * static_cast<long double>(w0.bound2()) *
                              powl(0.2L, -6) * static_cast<long double>(cand.size()) *
                              static_cast<long double>(nb.n.size());
            if (static_cast<long double>(-d2) > cap) single_improvement_ok = false;
        }

        SampledSearchStats stats;
        SplitRng run_rng = rng.fork(77);
        faster_local_search(g, pc, w0, cfg, run_rng, &stats);
        for (std::size_t i = 1; i < stats.cost_trace2.size(); ++i)
            if (stats.cost_trace2[i] > stats.cost_trace2[i - 1]) monotone_ok = false;
        if (pc.admissible_pairs > 0 && cfg.gamma > 0) {
            long double per_move = 2.0L * cfg.gamma * pc.admissible_pairs /
                                   static_cast<long double>(g.vertex_count());
            long double max_moves = static_cast<long double>(stats.initial_cost2) / per_move;
            if (static_cast<long double>(stats.accepted_moves) > max_moves) rounds_ok = false;
        }
        if (stats.pivot_rounds > 0) {
            // candidates per pivot = (#sample tuples) * (#grid sizes)^eta
            std::int64_t expect = cfg.samples_per_batch;
            for (int i = 0; i < cfg.eta; ++i) expect *= stats.grid_size_last_pivot;
            if (stats.combinations_last_pivot != expect) combos_ok = false;
        }
    }
    record(out, "sampled/grown-cluster-containment", containment_ok);
    record(out, "sampled/cost-trace-monotone", monotone_ok);
    record(out, "sampled/accepted-move-budget", rounds_ok);
    record(out, "sampled/single-swap-improvement-cap", single_improvement_ok);
    record(out, "sampled/combination-count", combos_ok);
    return out;
}

// ---- baseline invariants ---------------------------------------------------------

inline std::vector<CheckResult> verify_baseline_suite(int trials, std::uint64_t seed) {
    using namespace verify_detail;
    std::vector<CheckResult> out;
    SplitRng root(seed);

    bool bell_ok = bell_number(4) == 15 && bell_number(5) == 52;
    {
        Graph g4 = gen_gnp(4, 0.5, 123);
        Graph g5 = gen_gnp(5, 0.5, 321);
        bell_ok = bell_ok && brute_force_opt(g4, 12, /*prune=*/false).partitions_examined == 15;
        bell_ok = bell_ok && brute_force_opt(g5, 12, /*prune=*/false).partitions_examined == 52;
    }

    bool oracle_ok = true, acn_ok = true;
    for (int t = 0; t < trials; ++t) {
        SplitRng rng = root.fork(static_cast<std::uint64_t>(t));
        Graph g = random_graph(rng, 4, 6);
        WeightFn w0 = WeightFn::unit();
        OracleResult opt = brute_force_opt(g, w0);

        SplitRng acn_rng = rng.fork(1);
        Clustering acn = acn_pivot(g, acn_rng);
        PipelineTrace tworound = two_round(g, SearchEngine::exhaustive(), rng.next());
        if (cost(g, w0, acn).total2() < opt.cost2) oracle_ok = false;
        if (tworound.best().original_cost2 < opt.cost2) oracle_ok = false;

        Rat expected = acn_expected_cost(g);
        if (expected > Rat(3) * Rat(opt.cost2, 2)) acn_ok = false;
    }
    record(out, "baselines/bell-counts", bell_ok);
    record(out, "baselines/oracle-lower-bounds", oracle_ok);
    record(out, "baselines/acn-three-approx-expectation", acn_ok);
    return out;
}

// ---- harness invariants -----------------------------------------------------------

inline std::vector<CheckResult> verify_harness_suite(int trials, std::uint64_t seed) {
    using namespace verify_detail;
    std::vector<CheckResult> out;
    SplitRng root(seed);

    RunReport rep;
    rep.algorithm = "acn";
    rep.params = {{"trials", 3}};
    rep.seed = 99;
    rep.cost2 = 1351;
    rep.num_clusters = 7;
    rep.runtime_ms = 1.25;
    rep.instance = "hamming:3,5,5:2";
    bool roundtrip_ok = RunReport::from_json(rep.to_json()) == rep;

    bool pure_ok = true;
    for (int t = 0; t < std::min(trials, 8); ++t) {
        std::uint64_t s = root.next();
        auto [g1, c1] = gen_planted(3, 5, 0.8, 0.2, s);
        auto [g2, c2] = gen_planted(3, 5, 0.8, 0.2, s);
        if (!(g1 == g2) || c1 != c2) pure_ok = false;
    }

    Graph hamming = gen_hamming({3, 5, 5}, 2);
    bool hamming_ok = hamming.vertex_count() == 75;
    for (Vertex v = 0; v < hamming.vertex_count(); ++v)
        if (hamming.degree(v) != 42) hamming_ok = false;
    hamming_ok = hamming_ok && gen_hamming({2, 2, 2}, 3).edge_count() == 28;

    record(out, "harness/report-roundtrip", roundtrip_ok);
    record(out, "harness/generator-purity", pure_ok);
    record(out, "harness/hamming-structure", hamming_ok);
    return out;
}

// Runs a named suite; "all" runs everything.
inline std::vector<CheckResult> run_verify_suite(const std::string& suite, int trials,
                                                 std::uint64_t seed) {
    std::vector<CheckResult> out;
    auto append = [&](std::vector<CheckResult> v) {
        out.insert(out.end(), v.begin(), v.end());
    };
    bool all = suite == "all";
    bool known = all;
    if (all || suite == "graph") { append(verify_graph_suite(trials, seed)); known = true; }
    if (all || suite == "local") { append(verify_local_suite(std::min(trials, 40), seed)); known = true; }
    if (all || suite == "pivot") { append(verify_pivot_suite(trials, seed)); known = true; }
    if (all || suite == "flip") { append(verify_flip_suite(std::min(trials, 50), seed)); known = true; }
    if (all || suite == "precluster") { append(verify_precluster_suite(std::min(trials, 60), seed)); known = true; }
    if (all || suite == "estimators") { append(verify_estimator_suite(trials, seed)); known = true; }
    if (all || suite == "sampled") { append(verify_sampled_suite(trials, seed)); known = true; }
    if (all || suite == "baselines") { append(verify_baseline_suite(std::min(trials, 60), seed)); known = true; }
    if (all || suite == "harness") { append(verify_harness_suite(trials, seed)); known = true; }
    if (!known) throw std::invalid_argument("unknown verify suite: " + suite);
    return out;
}

}  // namespace corrclust
