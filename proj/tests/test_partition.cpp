#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/oracles.hpp"
#include "treeram/errors.hpp"
#include "treeram/experiment.hpp"
#include "treeram/product_embed.hpp"

using namespace treeram;

TEST_CASE("compute_s reach parameter") {
    CHECK(compute_s(10, 3, TreewidthProfile::constant(1)).k == 4);
    CHECK(compute_s(10, 2, TreewidthProfile::constant(1)).k == 3);
    CHECK(compute_s(10, 4, TreewidthProfile::constant(1)).k == 4);
    CHECK(compute_s(10, 5, TreewidthProfile::constant(1)).k == 5);
}

TEST_CASE("compute_s hand-evaluated case") {
    // n=1: a single sum term of value t(1)+1 = 2, so s = floor(3 + 3*2) = 9
    auto params = compute_s(1, 2, TreewidthProfile::constant(1));
    CHECK(params.k == 3);
    CHECK(params.terms == 1);
    CHECK(params.s == 9);
}

TEST_CASE("compute_s monotone in n") {
    auto profile = TreewidthProfile::constant(5);
    CHECK(compute_s(1000, 3, profile).s >= compute_s(100, 3, profile).s);
}

TEST_CASE("compute_s case (ii) closed form") {
    auto profile = TreewidthProfile::sqrt_scaled(1.0);
    auto params = compute_s(256, 3, profile);
    REQUIRE(params.scaled_upper.has_value());
    REQUIRE(params.scaled_lower.has_value());
    CHECK(std::string(params.case_tag) == "ii");
    CHECK(*params.scaled_lower < static_cast<double>(params.s));
    CHECK(static_cast<double>(params.s) <= *params.scaled_upper + 1e-9);
}

TEST_CASE("recursive partition collapses small graphs to one bag") {
    Graph p10 = path_graph(10);
    auto vpt = recursive_partition(p10, 2, TreewidthProfile::constant(1));
    CHECK(vpt.tree.vertex_count() == 1);
    CHECK(vpt.bags[0].size() == 10);
    CHECK(verify_partition_tree(p10, vpt).pass);
}

TEST_CASE("recursive partition on a long path actually recurses") {
    Graph path = path_graph(1500);
    auto vpt = recursive_partition(path, 2, TreewidthProfile::constant(1));
    CHECK(vpt.tree.vertex_count() > 1);
    CHECK(verify_partition_tree(path, vpt).pass);
}

TEST_CASE("recursive partition on a long bounded-degree tree") {
    Graph tree = oracle::random_tree_bounded(3000, 3, 11);
    auto vpt = recursive_partition(tree, 3, TreewidthProfile::constant(1));
    CHECK(vpt.tree.vertex_count() > 1);
    CHECK(verify_partition_tree(tree, vpt).pass);
}

TEST_CASE("recursive partition on grids and random trees (degenerate sizes)") {
    Graph grid = grid_graph(8, 8);
    auto vpt = recursive_partition(grid, 4, TreewidthProfile::ceil_sqrt_plus(1));
    CHECK(verify_partition_tree(grid, vpt).pass);
    CHECK(grid.edge_count() == 112);

    Graph tree = oracle::random_tree_bounded(200, 3, 5);
    auto tree_vpt = recursive_partition(tree, 3, TreewidthProfile::constant(1));
    CHECK(verify_partition_tree(tree, tree_vpt).pass);
}

TEST_CASE("tree power factorization identity at k=1") {
    Graph tree = path_graph(7);
    std::vector<std::int32_t> parent = {-1, 0, 1, 2, 3, 4, 5};
    auto fact = tree_power_factorization(tree, parent, 1);
    CHECK(fact.tree == tree);
    CHECK(fact.multiplicity == 1);
    for (std::size_t v = 0; v < 7; ++v) CHECK(fact.node_map[v] == v);
    CHECK(verify_tree_power(tree, 1, fact).pass);
}

TEST_CASE("tree power factorization on a path") {
    Graph tree = path_graph(7);
    std::vector<std::int32_t> parent = {-1, 0, 1, 2, 3, 4, 5};
    auto fact = tree_power_factorization(tree, parent, 2);
    CHECK(verify_tree_power(tree, 2, fact).pass);
    CHECK(fact.tree.vertex_count() <= 7);
}

TEST_CASE("tree power factorization on a complete binary tree") {
    // depth 4: 31 vertices
    EdgeList edges;
    std::vector<std::int32_t> parent(31, -1);
    for (std::size_t v = 1; v < 31; ++v) {
        parent[v] = static_cast<std::int32_t>((v - 1) / 2);
        edges.emplace_back(static_cast<Vertex>((v - 1) / 2), static_cast<Vertex>(v));
    }
    Graph tree(31, std::move(edges));
    auto fact = tree_power_factorization(tree, parent, 3);
    CHECK(fact.multiplicity <= 64); // 2^{2k}
    CHECK(fact.tree.max_degree() <= 9); // 1 + 2^3
    CHECK(verify_tree_power(tree, 3, fact).pass);
}

TEST_CASE("tree power rejects non-binary trees") {
    Graph star = star_graph(5);
    std::vector<std::int32_t> parent = {-1, 0, 0, 0, 0, 0};
    CHECK_THROWS_AS(tree_power_factorization(star, parent, 2), InputError);
}

TEST_CASE("embed_into_product on tiny graphs") {
    Graph edge(2, {{0, 1}});
    auto pe = embed_into_product(edge, 2, TreewidthProfile::constant(1));
    CHECK(pe.clique_size >= 2);
    CHECK(verify_product_embedding(pe).pass);
}

TEST_CASE("embed_into_product end to end with real recursion") {
    Graph path = path_graph(1500);
    auto pe = embed_into_product(path, 2, TreewidthProfile::constant(1));
    auto report = verify_product_embedding(pe);
    CHECK(report.pass);
    CHECK(pe.tree.vertex_count() > 1);

    double s = pe.certificate["s"].get<double>();
    double k = pe.certificate["k"].get<double>();
    CHECK(static_cast<double>(pe.tree.vertex_count()) <= 1500.0 / s + 1.0 + 1e-9);
    CHECK(static_cast<double>(pe.tree.max_degree()) <= std::pow(2.0, k) + 1.0 + 1e-9);
}

TEST_CASE("embed_into_product on a bounded-treewidth random graph") {
    Graph g = random_partial_ktree(150, 2, 3, 42);
    auto pe = embed_into_product(g, 3, TreewidthProfile::constant(2));
    CHECK(verify_product_embedding(pe).pass);
}

TEST_CASE("verify_partition_tree catches distance violations") {
    Graph path = path_graph(6);
    VertexPartitionTree vpt;
    vpt.tree = path_graph(2);
    vpt.parent = {-1, 0};
    vpt.bags = {{0, 1, 2, 3}, {4, 5}}; // fine for k = 1
    vpt.k = 1;
    vpt.s = 2;
    CHECK(verify_partition_tree(path, vpt).pass);

    VertexPartitionTree far;
    far.tree = path_graph(3);
    far.parent = {-1, 0, 1};
    far.bags = {{0, 1}, {4, 5}, {2, 3}};
    far.k = 1;
    far.s = 1;
    auto report = verify_partition_tree(path, far);
    CHECK_FALSE(report.pass); // edge {1,2} spans bag distance 2
}
