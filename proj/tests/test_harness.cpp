#include <catch2/catch.hpp>

#include "corrclust/corrclust.hpp"

using namespace corrclust;

TEST_CASE("hamming generator") {
    Graph grid = gen_hamming({3, 5, 5}, 2);
    REQUIRE(grid.vertex_count() == 75);
    for (Vertex v = 0; v < 75; ++v) REQUIRE(grid.degree(v) == 42);

    Graph k8 = gen_hamming({2, 2, 2}, 3);
    REQUIRE(k8.vertex_count() == 8);
    REQUIRE(k8.edge_count() == 28);  // complete graph

    REQUIRE_THROWS_AS(gen_hamming({0, 2, 2}, 1), std::invalid_argument);
}

TEST_CASE("planted generator") {
    auto [cliques, truth] = gen_planted(4, 5, 1.0, 0.0, 3);
    REQUIRE(cost(cliques, WeightFn::unit(), truth).total2() == 0);
    REQUIRE(truth.cluster_count() == 4);

    auto [empty, truth2] = gen_planted(3, 4, 0.0, 0.0, 3);
    REQUIRE(empty.edge_count() == 0);
    REQUIRE(truth2.cluster_count() == 3);

    auto [a, ca] = gen_planted(3, 6, 0.7, 0.1, 42);
    auto [b, cb] = gen_planted(3, 6, 0.7, 0.1, 42);
    REQUIRE(a == b);
    REQUIRE(ca == cb);
    auto [c, cc] = gen_planted(3, 6, 0.7, 0.1, 43);
    (void)cc;
    REQUIRE_FALSE(a == c);

    REQUIRE_THROWS_AS(gen_planted(3, 4, 1.5, 0.0, 1), std::invalid_argument);
}

TEST_CASE("run report JSON round trip") {
    RunReport rep;
    rep.algorithm = "two_round";
    rep.params = {{"epsilon", 0.1}, {"k", 4}};
    rep.seed = 17;
    rep.cost2 = 2101;
    rep.num_clusters = 5;
    rep.runtime_ms = 12.75;
    rep.instance = "planted:5,20,0.9,0.05";

    nlohmann::json j = rep.to_json();
    REQUIRE(j.at("schema_version") == 1);
    REQUIRE(j.at("cost") == 1050.5);
    RunReport back = RunReport::from_json(j);
    REQUIRE(back == rep);

    // a second round trip through text is still exact
    nlohmann::json reparsed = nlohmann::json::parse(j.dump());
    REQUIRE(RunReport::from_json(reparsed) == rep);
}

TEST_CASE("splittable rng") {
    SplitRng a(5);
    SplitRng b(5);
    for (int i = 0; i < 16; ++i) REQUIRE(a.next() == b.next());

    // forked streams do not disturb the parent sequence
    SplitRng c(5);
    SplitRng d(5);
    (void)c.fork(1);
    for (int i = 0; i < 16; ++i) REQUIRE(c.next() == d.next());

    // and differ from it
    SplitRng parent(5);
    SplitRng child = parent.fork(1);
    bool all_equal = true;
    SplitRng parent2(5);
    for (int i = 0; i < 8; ++i) all_equal = all_equal && (child.next() == parent2.next());
    REQUIRE_FALSE(all_equal);

    SplitRng r(9);
    for (int i = 0; i < 200; ++i) {
        auto v = r.below(7);
        REQUIRE(v < 7);
    }
    auto sample = r.sample_indices(10, 4);
    REQUIRE(sample.size() == 4);
    for (std::size_t i = 1; i < sample.size(); ++i) REQUIRE(sample[i - 1] < sample[i]);
}

TEST_CASE("verify suites are green") {
    // small trial counts; the acceptance binary runs the full-strength checks
    for (const char* suite : {"graph", "pivot", "baselines", "harness"}) {
        auto checks = run_verify_suite(suite, 10, 2024);
        for (const auto& c : checks) {
            INFO(c.name);
            REQUIRE(c.pass);
        }
    }
    REQUIRE_THROWS_AS(run_verify_suite("nope", 5, 1), std::invalid_argument);
}
