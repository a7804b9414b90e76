#include <catch2/catch.hpp>

#include "corrclust/corrclust.hpp"

using namespace corrclust;

namespace {

Graph two_triangles() {
    return Graph::from_edges(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}});
}

Graph k3_plus_pendant() {
    return Graph::from_edges(4, {{0, 1}, {0, 2}, {1, 2}, {2, 3}});
}

}  // namespace

TEST_CASE("flip weights on the hard instance") {
    const std::array<int, 3> dims{3, 5, 5};
    Graph grid = gen_hamming(dims, 2);
    WeightFn w0 = WeightFn::unit();
    Clustering ycl = hamming_axis_clustering(dims, 1);

    WeightFn flipped = flip_weights(w0, ycl, 1.0);
    // the y clustering pays only for cut edges, all of which just doubled
    REQUIRE(cost(grid, flipped, ycl).total2() == 2 * 2100);
    REQUIRE(cost(grid, w0, ycl).total2() == 2 * 1050);
}

TEST_CASE("two_round on disjoint cliques") {
    PipelineTrace tr = two_round(two_triangles(), SearchEngine::exhaustive(), 11);
    REQUIRE(tr.best().original_cost2 == 0);
    REQUIRE(tr.solutions.size() == 2);
    REQUIRE(tr.solutions[0].label == "Ls1");
    REQUIRE(tr.solutions[1].label == "Ls2");
}

TEST_CASE("two_round hard instance reproduces the 14/9 ratio") {
    const std::array<int, 3> dims{3, 5, 5};
    Graph grid = gen_hamming(dims, 2);
    Clustering ycl = hamming_axis_clustering(dims, 1);
    Clustering zcl = hamming_axis_clustering(dims, 2);

    // steer the search with the y and z slices only (plus singleton escapes)
    std::vector<std::vector<Vertex>> family;
    for (int axis = 1; axis <= 2; ++axis) {
        Clustering by_axis = hamming_axis_clustering(dims, axis);
        for (const auto& cl : by_axis.clusters()) family.push_back(cl);
    }
    for (Vertex v = 0; v < grid.vertex_count(); ++v) family.push_back({v});

    PipelineTrace tr = two_round(grid, SearchEngine::fixed_family(family), 1);
    REQUIRE(tr.solutions[0].clustering == ycl);
    REQUIRE(tr.solutions[1].clustering == zcl);
    REQUIRE(tr.best().original_cost2 == 2 * 1050);

    // ratio against the x-slice optimum is exactly 14/9
    std::int64_t opt2 = 2 * 675;
    REQUIRE(tr.best().original_cost2 * 9 == opt2 * 14);
}

TEST_CASE("two_round guarantee on small random instances") {
    SplitRng rng(41);
    for (int t = 0; t < 25; ++t) {
        SplitRng trial = rng.fork(static_cast<std::uint64_t>(t));
        Graph g = gen_gnp(4 + trial.below(5), 0.2 + 0.6 * trial.real01(), trial.next());
        PipelineTrace tr = two_round(g, SearchEngine::exhaustive(), trial.next());
        OracleResult opt = brute_force_opt(g);
        REQUIRE(8 * tr.best().original_cost2 <= 15 * opt.cost2);
        std::int64_t c1 = tr.solutions[0].original_cost2;
        std::int64_t c2 = tr.solutions[1].original_cost2;
        REQUIRE(tr.best().original_cost2 == std::min(c1, c2));
    }
}

TEST_CASE("iterated_flipping structure") {
    Graph cliques = two_triangles();
    FlipSchedule sched;
    sched.k = 0;
    PipelineTrace tr = iterated_flipping(cliques, sched, nullptr, 3);
    REQUIRE(tr.solutions.size() == 1);
    REQUIRE(tr.solutions[0].label == "C0'");

    sched.k = 2;
    PipelineTrace tr2 = iterated_flipping(cliques, sched, nullptr, 3);
    REQUIRE(tr2.best().original_cost2 == 0);
    REQUIRE(tr2.solutions.size() == 7);
    std::vector<std::string> labels;
    for (const auto& e : tr2.solutions) labels.push_back(e.label);
    REQUIRE(labels == std::vector<std::string>{"C0'", "C1", "C1'", "C1''", "C2", "C2'", "C2''"});

    sched.k = -1;
    REQUIRE_THROWS_AS(iterated_flipping(cliques, sched, nullptr, 3), std::invalid_argument);
}

TEST_CASE("iterated_flipping stays within twice the optimum on random instances") {
    SplitRng rng(42);
    for (int t = 0; t < 6; ++t) {
        SplitRng trial = rng.fork(static_cast<std::uint64_t>(t));
        Graph g = gen_gnp(4 + trial.below(4), 0.3 + 0.5 * trial.real01(), trial.next());
        FlipSchedule sched;
        sched.k = 6;
        OracleResult opt = brute_force_opt(g);
        PipelineTrace tr = iterated_flipping(g, sched, nullptr, trial.next(), &opt.clustering);
        REQUIRE(tr.best().original_cost2 <= 2 * opt.cost2);
        // one b value per refined solution
        REQUIRE(tr.b_values.size() == static_cast<std::size_t>(sched.k) + 1);
        for (const Rat& b : tr.b_values) REQUIRE(b >= Rat(0));
    }
}

TEST_CASE("iterations_for_alpha") {
    REQUIRE(iterations_for_alpha(0.1) == 39);
    REQUIRE_THROWS_AS(iterations_for_alpha(2.0 / 13.0), std::invalid_argument);
}

TEST_CASE("b_value") {
    Graph g = k3_plus_pendant();
    OracleResult opt = brute_force_opt(g);
    REQUIRE(opt.cost2 == 2);  // cut the pendant edge
    REQUIRE(opt.clustering == Clustering::from_clusters(4, {{0, 1, 2}, {3}}));

    // against itself: numerator = minus(ref) + 2 plus(ref)
    CostBreakdown ref_cost = cost(g, WeightFn::unit(), opt.clustering);
    Rat self = b_value(opt.clustering, opt.clustering, g);
    REQUIRE(self == Rat(ref_cost.minus2 + 2 * ref_cost.plus2, ref_cost.total2()));
    REQUIRE(self == Rat(2));

    // all singletons against any nonzero reference: numerator is twice the
    // reference's cut weight restricted to the singleton cut, at most 2 plus(ref)
    Graph k4 = gen_hamming({4, 1, 1}, 3);
    Clustering ref = Clustering::from_clusters(4, {{0, 1}, {2, 3}});
    Rat b = b_value(Clustering::singletons(4), ref, k4);
    CostBreakdown rc = cost(k4, WeightFn::unit(), ref);
    REQUIRE(b <= Rat(2 * rc.plus2, rc.total2()));

    // internal sets equal and disjoint cuts: numerator reduces to minus(ref)
    Graph path4 = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
    Clustering same = Clustering::from_clusters(4, {{0, 1}, {2, 3}});
    Rat bb = b_value(same, same, path4);
    CostBreakdown pc = cost(path4, WeightFn::unit(), same);
    REQUIRE(bb == Rat(pc.minus2 + 2 * pc.plus2, pc.total2()));

    Graph k3 = Graph::from_edges(3, {{0, 1}, {0, 2}, {1, 2}});
    REQUIRE_THROWS_AS(
        b_value(Clustering::singletons(3), Clustering::single_cluster(3), k3),
        std::domain_error);
}

TEST_CASE("pipelines run on the sampled engine") {
    auto [g, truth] = gen_planted(4, 6, 0.9, 0.05, 9);
    (void)truth;
    PreclusteredInstance pc = precluster(g, 0.1);
    SampleConfig cfg;
    cfg.eta = 2;
    cfg.s = 16;
    cfg.gamma = 1e-15;
    cfg.tau_num = 2;
    cfg.tau_den_power = 2;
    cfg.stagnation_factor = 2;
    SearchEngine engine = SearchEngine::sampled(pc, cfg);
    WeightFn w0 = WeightFn::unit();

    PipelineTrace two = two_round(g, engine, 5);
    REQUIRE(two.solutions.size() == 2);
    REQUIRE(two.best().original_cost2 ==
            std::min(two.solutions[0].original_cost2, two.solutions[1].original_cost2));
    REQUIRE(cost(g, w0, two.best().clustering).total2() == two.best().original_cost2);

    FlipSchedule sched;
    sched.k = 1;
    sched.epsilon = 0.1;
    sched.gamma = 1e-15;  // inside the approximate-local-optimum budget
    sched.engine = engine;
    PipelineTrace tr = iterated_flipping(g, sched, &pc, 5);
    REQUIRE(tr.solutions.size() == 4);
    for (const auto& e : tr.solutions)
        REQUIRE(cost(g, w0, e.clustering).total2() == e.original_cost2);

    // gamma outside the budget is rejected when preclustering is active
    sched.gamma = 1e-3;
    REQUIRE_THROWS_AS(iterated_flipping(g, sched, &pc, 5), std::invalid_argument);
    sched.gamma = 1e-15;
    sched.epsilon = 0.3;
    REQUIRE_THROWS_AS(iterated_flipping(g, sched, &pc, 5), std::invalid_argument);
}

TEST_CASE("intermediate weight functions carry at most two layers") {
    Graph g = gen_gnp(6, 0.5, 77);
    WeightFn w0 = WeightFn::unit();
    SplitRng rng(78);
    Clustering a = random_clustering(6, 3, rng);
    Clustering b = random_clustering(6, 3, rng);
    WeightFn wi = flip_weights(w0, a, 0.5);
    WeightFn wi_prime = flip_weights(wi, b, 0.5);
    REQUIRE(wi_prime.layer_count() == 2);
    REQUIRE(wi_prime.bound2() == 4);  // max edge weight 2 at beta = 0.5
}
