#include <catch2/catch.hpp>

#include <memory>

#include "corrclust/corrclust.hpp"

using namespace corrclust;

namespace {

Graph disjoint_cliques(const std::vector<int>& sizes) {
    std::size_t n = 0;
    for (int s : sizes) n += static_cast<std::size_t>(s);
    std::vector<std::pair<Vertex, Vertex>> edges;
    Vertex base = 0;
    for (int s : sizes) {
        for (int i = 0; i < s; ++i)
            for (int j = i + 1; j < s; ++j)
                edges.emplace_back(base + i, base + j);
        base += static_cast<Vertex>(s);
    }
    return Graph::from_edges(n, std::move(edges));
}

}  // namespace

TEST_CASE("compute_atoms recovers planted structure") {
    Graph cliques = disjoint_cliques({4, 3, 5});
    auto atoms = compute_atoms(cliques, 0.1);
    REQUIRE(atoms.size() == 3);
    REQUIRE(atoms[0] == std::vector<Vertex>{0, 1, 2, 3});
    REQUIRE(atoms[1] == std::vector<Vertex>{4, 5, 6});
    REQUIRE(atoms[2] == std::vector<Vertex>{7, 8, 9, 10, 11});

    Graph empty = Graph::from_edges(6, {});
    REQUIRE(compute_atoms(empty, 0.1).empty());

    // K10 minus one edge: still one atom, every vertex adjacent to >= 8 of 9
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex i = 0; i < 10; ++i)
        for (Vertex j = i + 1; j < 10; ++j)
            if (!(i == 0 && j == 1)) edges.emplace_back(i, j);
    Graph near_clique = Graph::from_edges(10, std::move(edges));
    auto atoms2 = compute_atoms(near_clique, 0.1);
    REQUIRE(atoms2.size() == 1);
    REQUIRE(atoms2[0].size() == 10);

    REQUIRE_THROWS_AS(compute_atoms(empty, 1.5), std::invalid_argument);
}

TEST_CASE("compute_admissible") {
    Graph empty = Graph::from_edges(5, {});
    auto adm_empty = compute_admissible(empty, 0.5, {});
    for (const auto& lst : adm_empty) REQUIRE(lst.empty());

    // complete graph, no atoms: every pair admissible at eps = 0.5
    Graph k6 = gen_hamming({6, 1, 1}, 3);
    auto adm = compute_admissible(k6, 0.5, {});
    for (Vertex v = 0; v < 6; ++v) REQUIRE(adm[v].size() == 5);

    // cliques of very different size: degree similarity rules out cross pairs
    Graph mixed = disjoint_cliques({5, 50});
    auto adm2 = compute_admissible(mixed, 0.5, {});
    for (Vertex u = 0; u < 5; ++u)
        for (Vertex v : adm2[u]) REQUIRE(v < 5);
}

TEST_CASE("validate_good_instance") {
    Graph k6 = gen_hamming({6, 1, 1}, 3);
    PreclusteredInstance pc = precluster(k6, 0.5);
    GoodnessReport rep = validate_good_instance(k6, pc);
    REQUIRE(rep.all_hold());
    REQUIRE(rep.adm_degree_witnesses.empty());

    // declared admissible pair with degrees 1 and 100 violates degree bounds
    std::vector<std::pair<Vertex, Vertex>> star_edges;
    for (Vertex leaf = 1; leaf <= 100; ++leaf) star_edges.emplace_back(0, leaf);
    Graph star = Graph::from_edges(101, std::move(star_edges));
    std::vector<std::vector<Vertex>> adm(101);
    adm[0].push_back(1);
    adm[1].push_back(0);
    PreclusteredInstance bad = make_preclustered(star, 0.5, {}, std::move(adm));
    GoodnessReport rep2 = validate_good_instance(star, bad);
    REQUIRE_FALSE(rep2.degree_similarity_ok);
    REQUIRE(rep2.degree_similarity_witnesses.size() == 1);
    REQUIRE(rep2.degree_similarity_witnesses[0] == std::pair<Vertex, Vertex>{0, 1});

    // no atoms: the density condition is vacuous
    REQUIRE(rep2.atom_density_ok);

    // same violation with the high-degree endpoint on the larger id
    std::vector<std::pair<Vertex, Vertex>> star_edges2;
    for (Vertex leaf = 0; leaf < 100; ++leaf) star_edges2.emplace_back(leaf, 100);
    Graph star2 = Graph::from_edges(101, std::move(star_edges2));
    std::vector<std::vector<Vertex>> adm2(101);
    adm2[100].push_back(0);
    adm2[0].push_back(100);
    PreclusteredInstance bad2 = make_preclustered(star2, 0.5, {}, std::move(adm2));
    REQUIRE_FALSE(validate_good_instance(star2, bad2).degree_similarity_ok);
}

TEST_CASE("is_good_cluster") {
    Graph cliques = disjoint_cliques({4, 4});
    PreclusteredInstance pc = precluster(cliques, 0.1);
    REQUIRE(pc.atoms.size() == 2);

    REQUIRE(is_good_cluster({0, 1, 2, 3}, pc, cliques, 0.1)); // a full atom
    REQUIRE_FALSE(is_good_cluster({0, 1, 2}, pc, cliques, 0.1));  // broken atom
    REQUIRE_FALSE(is_good_cluster({0}, pc, cliques, 0.1));  // singleton of an atom member
    std::vector<Vertex> both{0, 1, 2, 3, 4, 5, 6, 7};
    REQUIRE_FALSE(is_good_cluster(both, pc, cliques, 0.1));  // two atoms together

    // a singleton of an atom-free vertex is vacuously good, regardless of degree
    Graph withfree = Graph::from_edges(5, {{0, 1}, {0, 2}, {1, 2}, {3, 4}});
    PreclusteredInstance pcf = precluster_with_atoms(withfree, 0.3, {{0, 1, 2}});
    REQUIRE(is_good_cluster({3}, pcf, withfree, 0.3));
    REQUIRE(is_good_cluster({4}, pcf, withfree, 0.3));

    // atoms plus singletons is always a good clustering
    REQUIRE(is_good_clustering(atoms_plus_singletons(pcf), pcf, withfree, 0.3));
}

TEST_CASE("neighborhoods") {
    // atom-free vertex with no admissible partners
    Graph empty = Graph::from_edges(3, {});
    PreclusteredInstance pc0 = precluster(empty, 0.5);
    Neighborhoods nb0 = neighborhoods(pc0, empty, 1);
    REQUIRE(nb0.n == std::vector<Vertex>{1});
    REQUIRE(nb0.k == std::vector<Vertex>{1});
    REQUIRE(nb0.d.empty());

    // complete graph, atoms suppressed: N(r) = V, D(r) = V \ {r}
    Graph k6 = gen_hamming({6, 1, 1}, 3);
    PreclusteredInstance pc1 = precluster_with_atoms(k6, 0.5, {});
    Neighborhoods nb1 = neighborhoods(pc1, k6, 2);
    REQUIRE(nb1.n.size() == 6);
    REQUIRE(nb1.k == std::vector<Vertex>{2});
    REQUIRE(nb1.d.size() == 5);

    // vertex inside an atom spanning its whole component
    Graph cliques = disjoint_cliques({4, 4});
    PreclusteredInstance pc2 = precluster(cliques, 0.1);
    Neighborhoods nb2 = neighborhoods(pc2, cliques, 0);
    REQUIRE(nb2.n == std::vector<Vertex>{0, 1, 2, 3});
    REQUIRE(nb2.k == std::vector<Vertex>{0, 1, 2, 3});
    REQUIRE(nb2.d.empty());
}

TEST_CASE("split_small_atom_clusters") {
    // no atoms: unchanged
    Graph k6 = gen_hamming({6, 1, 1}, 3);
    PreclusteredInstance pc = precluster_with_atoms(k6, 0.5, {});
    Clustering c = Clustering::from_clusters(6, {{0, 1, 2}, {3, 4, 5}});
    REQUIRE(split_small_atom_clusters(c, pc, k6) == c);

    // cluster of 1000 with an atom of one vertex at eps = 0.9:
    // 576 * 1 < 0.9^21 * 1000 is false, so the cluster stays intact
    {
        std::vector<std::pair<Vertex, Vertex>> edges;
        for (Vertex i = 0; i < 1000; ++i)
            for (Vertex j = i + 1; j < 1000; ++j) edges.emplace_back(i, j);
        Graph big = Graph::from_edges(1000, std::move(edges));
        std::vector<std::vector<Vertex>> adm(1000);
        for (Vertex u = 0; u < 1000; ++u)
            for (Vertex v = 0; v < 1000; ++v)
                if (u != v) adm[u].push_back(v);
        // pairs into the one-vertex atom keep an atom-free endpoint, so the
        // all-pairs admissible lists stay legal
        PreclusteredInstance pc_big = make_preclustered(big, 0.9, {{0}}, std::move(adm));
        Clustering one = Clustering::single_cluster(1000);
        REQUIRE(split_small_atom_clusters(one, pc_big, big) == one);
    }

    // cluster equal to its atom: ratio 1, never split
    Graph cliques = disjoint_cliques({4, 4});
    PreclusteredInstance pc2 = precluster(cliques, 0.1);
    Clustering atoms_cl = atoms_plus_singletons(pc2);
    REQUIRE(split_small_atom_clusters(atoms_cl, pc2, cliques) == atoms_cl);

    // splitting mechanics on a synthetic oversized cluster
    {
        const std::size_t n = 1500;
        std::vector<std::pair<Vertex, Vertex>> edges;
        for (Vertex i = 0; i < n; ++i)
            for (Vertex j = i + 1; j < n; ++j) edges.emplace_back(i, j);
        Graph big = Graph::from_edges(n, std::move(edges));
        std::vector<std::vector<Vertex>> adm(n);
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = 0; v < n; ++v) {
                if (u == v) continue;
                if (u <= 1 && v <= 1) continue;  // atomic pair
                adm[u].push_back(v);
            }
        PreclusteredInstance pc_big = make_preclustered(big, 0.99, {{0, 1}}, std::move(adm));
        Clustering one = Clustering::single_cluster(n);
        // 576 * 2 = 1152 < 0.99^21 * 1500 ~ 1216, so the atom splits out
        Clustering split = split_small_atom_clusters(one, pc_big, big);
        REQUIRE(split.cluster_count() == 2);
        REQUIRE(split.cluster(split.cluster_of(0)) == std::vector<Vertex>{0, 1});
    }

    // a clustering breaking an atom is rejected
    PreclusteredInstance pc3 = precluster(cliques, 0.1);
    Clustering broken = Clustering::from_clusters(8, {{0, 1}, {2, 3}, {4, 5, 6, 7}});
    REQUIRE_THROWS_AS(split_small_atom_clusters(broken, pc3, cliques), std::invalid_argument);
}

TEST_CASE("atoms file round trip") {
    Graph cliques = disjoint_cliques({3, 4});
    PreclusteredInstance pc = precluster(cliques, 0.1);
    std::ostringstream out;
    pc.write_atoms(out);
    std::istringstream in(out.str());
    auto atoms = PreclusteredInstance::read_atoms(in);
    REQUIRE(atoms == pc.atoms);

    PreclusteredInstance rebuilt = precluster_with_atoms(cliques, 0.1, atoms);
    REQUIRE(rebuilt.atoms == pc.atoms);
    REQUIRE(rebuilt.admissible_pairs == pc.admissible_pairs);
}

TEST_CASE("initial clustering and its cost bound") {
    Graph cliques = disjoint_cliques({3, 3});
    PreclusteredInstance pc = precluster(cliques, 0.1);
    Clustering init = atoms_plus_singletons(pc);
    REQUIRE(cost(cliques, WeightFn::unit(), init).total2() == 0);

    // the bound is relative to the optimal good clustering, whose clusters
    // respect the atoms
    SplitRng rng(55);
    for (int t = 0; t < 12; ++t) {
        SplitRng trial = rng.fork(static_cast<std::uint64_t>(t));
        Graph g = gen_gnp(5 + trial.below(4), 0.2 + 0.6 * trial.real01(), trial.next());
        PreclusteredInstance pcg = precluster(g, 0.3);
        std::int64_t init2 = cost(g, WeightFn::unit(), atoms_plus_singletons(pcg)).total2();
        std::int64_t good2 = brute_force_good_opt(g, WeightFn::unit(), pcg, 0.3).cost2;
        long double bound = good2 + 8.0L * static_cast<long double>(pcg.admissible_pairs) / 0.3L;
        REQUIRE(static_cast<long double>(init2) <= bound);
    }
}

TEST_CASE("admissible pairs export") {
    Graph k4 = gen_hamming({4, 1, 1}, 3);
    PreclusteredInstance pc = precluster_with_atoms(k4, 0.5, {});
    std::ostringstream out;
    pc.write_admissible(out);
    REQUIRE(out.str() == "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
}
