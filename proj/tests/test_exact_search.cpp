#include <catch2/catch.hpp>

#include "corrclust/corrclust.hpp"

using namespace corrclust;

namespace {

Graph two_triangles() {
    return Graph::from_edges(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}});
}

// Independent oracle for local optimality: recompute full costs for every
// subset swap instead of using delta_cost.
bool local_opt_by_recompute(const Graph& g, const WeightFn& w, const Clustering& c) {
    const std::size_t n = g.vertex_count();
    std::int64_t base = cost(g, w, c).total2();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<Vertex> s;
        for (std::size_t v = 0; v < n; ++v)
            if (mask & (std::uint64_t{1} << v)) s.push_back(static_cast<Vertex>(v));
        if (cost(g, w, add_cluster(c, s)).total2() < base) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("is_local_optimum") {
    WeightFn w0 = WeightFn::unit();

    Graph cliques = two_triangles();
    Clustering as_cliques = Clustering::from_clusters(6, {{0, 1, 2}, {3, 4, 5}});
    REQUIRE(is_local_optimum(cliques, w0, as_cliques));

    Graph k3 = Graph::from_edges(3, {{0, 1}, {0, 2}, {1, 2}});
    REQUIRE_FALSE(is_local_optimum(k3, w0, Clustering::singletons(3)));

    Graph path = Graph::from_edges(3, {{0, 1}, {1, 2}});
    Clustering split = Clustering::from_clusters(3, {{0, 1}, {2}});
    REQUIRE(local_opt_by_recompute(path, w0, split));  // oracle over all 7 subsets
    REQUIRE(is_local_optimum(path, w0, split));

    Graph big = gen_gnp(20, 0.5, 5);
    REQUIRE_THROWS_AS(is_local_optimum(big, w0, Clustering::singletons(20)), std::length_error);
}

TEST_CASE("run_local_search with the exhaustive engine") {
    WeightFn w0 = WeightFn::unit();
    SearchEngine engine = SearchEngine::exhaustive();

    Graph cliques = two_triangles();
    Clustering as_cliques = Clustering::from_clusters(6, {{0, 1, 2}, {3, 4, 5}});
    REQUIRE(run_local_search(cliques, w0, as_cliques, engine, 1) == as_cliques);

    Graph k3 = Graph::from_edges(3, {{0, 1}, {0, 2}, {1, 2}});
    Clustering out = run_local_search(k3, w0, Clustering::singletons(3), engine, 1);
    REQUIRE(out == Clustering::single_cluster(3));
    REQUIRE(cost(k3, w0, out).total2() == 0);

    Graph big = gen_gnp(20, 0.5, 6);
    REQUIRE_THROWS_AS(
        run_local_search(big, w0, Clustering::singletons(20), engine, 1), std::length_error);
}

TEST_CASE("fixed-family engine keeps the axis clustering") {
    const std::array<int, 3> dims{3, 5, 5};
    Graph grid = gen_hamming(dims, 2);
    WeightFn w0 = WeightFn::unit();

    std::vector<std::vector<Vertex>> family;
    for (int axis = 0; axis < 3; ++axis) {
        Clustering by = hamming_axis_clustering(dims, axis);
        for (const auto& cl : by.clusters()) family.push_back(cl);
    }
    for (Vertex v = 0; v < grid.vertex_count(); ++v) family.push_back({v});

    Clustering ycl = hamming_axis_clustering(dims, 1);
    // no family member improves the y clustering
    for (const auto& s : family) REQUIRE(delta_cost2(grid, w0, ycl, s) >= 0);
    Clustering out = run_local_search(grid, w0, ycl, SearchEngine::fixed_family(family), 3);
    REQUIRE(out == ycl);
}

TEST_CASE("cleaning pass") {
    Graph cliques = two_triangles();
    Clustering as_cliques = Clustering::from_clusters(6, {{0, 1, 2}, {3, 4, 5}});
    REQUIRE(cleaning_pass(cliques, as_cliques) == as_cliques);

    // star on 5 vertices, everything in one cluster; ascending scan with
    // restart peels leaves 1 and 2, then {0, 3, 4} is stable: each member is
    // adjacent to at least half of the other two.
    Graph star = Graph::from_edges(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    Clustering all = Clustering::single_cluster(5);
    Clustering cleaned = cleaning_pass(star, all);
    REQUIRE(cleaned == Clustering::from_clusters(5, {{0, 3, 4}, {1}, {2}}));
    WeightFn w0 = WeightFn::unit();
    REQUIRE(cost(star, w0, cleaned).total2() <= cost(star, w0, all).total2());

    Graph edge = Graph::from_edges(2, {{0, 1}});
    REQUIRE(cleaning_pass(edge, Clustering::single_cluster(2)) == Clustering::single_cluster(2));

    // final state: no vertex in a non-singleton cluster is adjacent to fewer
    // than half of the other members
    SplitRng rng(31);
    for (int t = 0; t < 25; ++t) {
        SplitRng trial = rng.fork(static_cast<std::uint64_t>(t));
        Graph g = gen_gnp(4 + trial.below(12), 0.2 + 0.6 * trial.real01(), trial.next());
        const std::size_t n = g.vertex_count();
        Clustering c = random_clustering(n, 1 + trial.below(4), trial);
        Clustering cleaned_c = cleaning_pass(g, c);
        REQUIRE(cost(g, w0, cleaned_c).total2() <= cost(g, w0, c).total2());
        for (Vertex v = 0; v < n; ++v) {
            const auto& cl = cleaned_c.cluster(cleaned_c.cluster_of(v));
            if (cl.size() <= 1) continue;
            std::size_t inside = 0;
            for (Vertex u : cl)
                if (u != v && g.has_edge(u, v)) ++inside;
            REQUIRE(2 * inside >= cl.size() - 1);
        }
    }
}

TEST_CASE("is_clean matches the singleton-swap criterion") {
    Graph star = Graph::from_edges(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    WeightFn w0 = WeightFn::unit();
    REQUIRE_FALSE(is_clean(star, w0, Clustering::single_cluster(5)));
    REQUIRE(is_clean(star, w0, Clustering::singletons(5)));
}

TEST_CASE("local optimum inequalities, two-approximation, idempotence") {
    WeightFn w0 = WeightFn::unit();
    SearchEngine engine = SearchEngine::exhaustive();
    SplitRng rng(2024);
    for (int t = 0; t < 15; ++t) {
        SplitRng trial = rng.fork(static_cast<std::uint64_t>(t));
        Graph g = gen_gnp(4 + trial.below(4), 0.2 + 0.6 * trial.real01(), trial.next());
        const std::size_t n = g.vertex_count();
        Clustering ls = run_local_search(g, w0, Clustering::singletons(n), engine, trial.next());
        REQUIRE(is_local_optimum(g, w0, ls));

        for (int r = 0; r < 25; ++r) {
            Clustering other = random_clustering(n, 1 + trial.below(n), trial);
            REQUIRE(local_optimum_inequalities(g, w0, ls, other).all_hold());
        }
        OracleResult opt = brute_force_opt(g, w0);
        REQUIRE(cost(g, w0, ls).total2() <= 2 * opt.cost2);
        REQUIRE(run_local_search(g, w0, ls, engine, trial.next()) == ls);
    }
}
