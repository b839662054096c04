#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/oracles.hpp"
#include "treeram/errors.hpp"
#include "treeram/separator.hpp"
#include "treeram/tree_decomposition.hpp"

using namespace treeram;

TEST_CASE("decomposition widths on known graphs") {
    Graph tree = oracle::random_tree(15, 2);
    CHECK(tree_decomposition(tree, DecompositionMode::Heuristic).width == 1);
    CHECK(tree_decomposition(tree, DecompositionMode::Exact).width == 1);

    CHECK(tree_decomposition(cycle_graph(6), DecompositionMode::Exact).width == 2);
    CHECK(tree_decomposition(complete_graph(5), DecompositionMode::Exact).width == 4);
    CHECK(tree_decomposition(complete_graph(5), DecompositionMode::Heuristic).width == 4);
}

TEST_CASE("exact mode guard") {
    Graph big = oracle::gnp(31, 0.1, 1);
    CHECK_THROWS_AS(tree_decomposition(big, DecompositionMode::Exact), SizeGuardError);
}

TEST_CASE("decompositions validate") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Graph g = oracle::gnp(18, 0.25, seed);
        auto td = tree_decomposition(g, DecompositionMode::Heuristic);
        CHECK(validate_tree_decomposition(g, td).pass);

        auto exact = tree_decomposition(g, DecompositionMode::Exact);
        CHECK(validate_tree_decomposition(g, exact).pass);
        CHECK(exact.width <= td.width);
        CHECK(exact.width >= degeneracy(g));
    }
}

TEST_CASE("validation catches broken decompositions") {
    Graph g = path_graph(4);
    auto td = tree_decomposition(g, DecompositionMode::Heuristic);
    auto broken = td;
    broken.bags[0].clear(); // lose a vertex and an edge
    CHECK_FALSE(validate_tree_decomposition(g, broken).pass);
}

TEST_CASE("balanced separator on tiny graphs") {
    {
        Graph single(1, {});
        auto td = tree_decomposition(single, DecompositionMode::Heuristic);
        auto triple = balanced_separator(single, td);
        CHECK(triple.s == std::vector<Vertex>{0});
        CHECK(triple.a.empty());
        CHECK(triple.b.empty());
    }
    {
        Graph p9 = path_graph(9);
        auto td = tree_decomposition(p9, DecompositionMode::Exact);
        auto triple = balanced_separator(p9, td);
        CHECK(triple.s.size() <= 2);
        CHECK(triple.a.size() <= 6);
        CHECK(triple.b.size() <= 6);
        CHECK(validate_separator(p9, triple).pass);
    }
    {
        Graph k3 = complete_graph(3);
        auto td = tree_decomposition(k3, DecompositionMode::Exact);
        auto triple = balanced_separator(k3, td);
        CHECK(triple.s.size() <= 3);
        CHECK(triple.a.size() <= 2);
        CHECK(triple.b.size() <= 2);
        CHECK(validate_separator(k3, triple).pass);
    }
}

TEST_CASE("balanced separator: 200 random bounded-degree graphs") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        std::size_t n = 2 + seed % 29; // within the exact guard
        Graph g = oracle::random_bounded_degree(n, 4, 2.5 / static_cast<double>(n), seed);
        auto td = tree_decomposition(g, DecompositionMode::Exact);
        auto triple = balanced_separator(g, td);

        CHECK(triple.s.size() <= static_cast<std::size_t>(td.width) + 1);
        CHECK(std::max(triple.a.size(), triple.b.size()) <= (2 * n + 2) / 3);
        CHECK(validate_separator(g, triple).pass);
    }
}

TEST_CASE("balanced separator rejects invalid decompositions") {
    Graph g = path_graph(5);
    TreeDecomposition bogus;
    bogus.tree = path_graph(2);
    bogus.bags = {{0, 1}, {3, 4}}; // vertex 2 uncovered
    bogus.width = 1;
    CHECK_THROWS_AS(balanced_separator(g, bogus), InputError);
}
