#include <catch2/catch.hpp>

#include "corrclust/corrclust.hpp"

using namespace corrclust;

namespace {

Graph two_triangles() {
    return Graph::from_edges(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}});
}

Graph cycle4() { return Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}); }

}  // namespace

TEST_CASE("acn pivot") {
    Graph cliques = two_triangles();
    Clustering expected = Clustering::from_clusters(6, {{0, 1, 2}, {3, 4, 5}});
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        SplitRng rng(seed);
        REQUIRE(acn_pivot(cliques, rng) == expected);
    }

    // on the path, every pivot order costs exactly 1
    Graph path = Graph::from_edges(3, {{0, 1}, {1, 2}});
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        SplitRng rng(seed);
        REQUIRE(cost(path, WeightFn::unit(), acn_pivot(path, rng)).total2() == 2);
    }
    REQUIRE(acn_expected_cost(path) == Rat(1));

    // 4-cycle: the first pivot always builds a triangle-shaped cluster with
    // one missing pair and two cut edges, total cost 3 = 1.5x the optimum
    REQUIRE(acn_expected_cost(cycle4()) == Rat(3));
    REQUIRE(brute_force_opt(cycle4()).cost2 == 2 * 2);
    REQUIRE(acn_expected_cost(cycle4()) <= Rat(3) * Rat(brute_force_opt(cycle4()).cost2, 2));
}

TEST_CASE("acn expectation matches a long simulation") {
    SplitRng rng(64);
    for (int t = 0; t < 3; ++t) {
        SplitRng trial = rng.fork(static_cast<std::uint64_t>(t));
        Graph g = gen_gnp(6, 0.3 + 0.2 * t, trial.next());
        Rat exact = acn_expected_cost(g);
        std::int64_t sum2 = 0;
        const int runs = 20000;
        for (int s = 0; s < runs; ++s) {
            SplitRng r = trial.fork(static_cast<std::uint64_t>(s));
            sum2 += cost(g, WeightFn::unit(), acn_pivot(g, r)).total2();
        }
        double mean = static_cast<double>(sum2) / (2.0 * runs);
        REQUIRE(mean == Approx(exact.to_double()).margin(0.35));
    }
}

TEST_CASE("brute force oracle") {
    Graph k5 = gen_hamming({5, 1, 1}, 3);
    OracleResult opt = brute_force_opt(k5);
    REQUIRE(opt.cost2 == 0);
    REQUIRE(opt.clustering == Clustering::single_cluster(5));

    Graph path = Graph::from_edges(3, {{0, 1}, {1, 2}});
    REQUIRE(brute_force_opt(path).cost2 == 2 * 1);

    REQUIRE(brute_force_opt(cycle4()).cost2 == 2 * 2);

    // restricted-growth enumeration visits exactly Bell(n) partitions
    REQUIRE(bell_number(4) == 15);
    REQUIRE(bell_number(5) == 52);
    REQUIRE(brute_force_opt(cycle4(), 12, /*prune=*/false).partitions_examined == 15);
    Graph g5 = gen_gnp(5, 0.5, 9);
    REQUIRE(brute_force_opt(g5, 12, /*prune=*/false).partitions_examined == 52);

    Graph big = gen_gnp(14, 0.5, 10);
    REQUIRE_THROWS_AS(brute_force_opt(big, 12), std::length_error);

    // pruning never changes the optimum
    SplitRng rng(60);
    for (int t = 0; t < 10; ++t) {
        SplitRng trial = rng.fork(static_cast<std::uint64_t>(t));
        Graph g = gen_gnp(4 + trial.below(4), 0.2 + 0.6 * trial.real01(), trial.next());
        REQUIRE(brute_force_opt(g, 12, true).cost2 == brute_force_opt(g, 12, false).cost2);
    }
}

TEST_CASE("good-clustering oracle") {
    WeightFn w0 = WeightFn::unit();

    // vacuous restriction: no atoms, every pair admissible, delta = 0
    Graph g = gen_gnp(6, 0.5, 61);
    std::vector<std::vector<Vertex>> adm(6);
    for (Vertex u = 0; u < 6; ++u)
        for (Vertex v = 0; v < 6; ++v)
            if (u != v) adm[u].push_back(v);
    PreclusteredInstance pc = make_preclustered(g, 0.3, {}, std::move(adm));
    REQUIRE(brute_force_good_opt(g, w0, pc, 0.0).cost2 == brute_force_opt(g, w0).cost2);

    // restriction can only raise the cost
    SplitRng rng(62);
    for (int t = 0; t < 8; ++t) {
        SplitRng trial = rng.fork(static_cast<std::uint64_t>(t));
        Graph gg = gen_gnp(5 + trial.below(3), 0.3 + 0.5 * trial.real01(), trial.next());
        PreclusteredInstance pcg = precluster(gg, 0.3);
        REQUIRE(brute_force_good_opt(gg, w0, pcg, 0.15).cost2 >= brute_force_opt(gg, w0).cost2);
    }

    // two clique atoms joined by one edge: the good optimum keeps the atoms
    Graph joined = Graph::from_edges(
        6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}, {2, 3}});
    PreclusteredInstance pcj = precluster(joined, 0.1);
    REQUIRE(pcj.atoms.size() == 2);
    OracleResult good = brute_force_good_opt(joined, w0, pcj, 0.1);
    REQUIRE(good.cost2 == 2 * 1);
    REQUIRE(good.clustering == Clustering::from_clusters(6, {{0, 1, 2}, {3, 4, 5}}));
}

TEST_CASE("oracle lower-bounds every solver output") {
    WeightFn w0 = WeightFn::unit();
    SplitRng rng(63);
    for (int t = 0; t < 12; ++t) {
        SplitRng trial = rng.fork(static_cast<std::uint64_t>(t));
        Graph g = gen_gnp(4 + trial.below(4), 0.2 + 0.7 * trial.real01(), trial.next());
        std::int64_t opt2 = brute_force_opt(g, w0).cost2;

        SplitRng acn_rng = trial.fork(1);
        REQUIRE(cost(g, w0, acn_pivot(g, acn_rng)).total2() >= opt2);
        REQUIRE(two_round(g, SearchEngine::exhaustive(), trial.next()).best().original_cost2 >=
                opt2);

        Rat expectation = acn_expected_cost(g);
        REQUIRE(expectation <= Rat(3) * Rat(opt2, 2));
    }
}
