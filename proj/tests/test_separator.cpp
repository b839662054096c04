#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/oracles.hpp"
#include "treeram/errors.hpp"
#include "treeram/separator.hpp"

using namespace treeram;

TEST_CASE("profile presets") {
    auto c = TreewidthProfile::parse("const:3");
    CHECK(c(10) == doctest::Approx(3));
    CHECK_FALSE(c.alpha.has_value());

    auto s = TreewidthProfile::parse("sqrt:2");
    CHECK(s(16) == doctest::Approx(8));
    CHECK(s.alpha.has_value());

    auto cs = TreewidthProfile::parse("csqrt:1");
    CHECK(cs(10) == doctest::Approx(5)); // ceil(sqrt(10)) + 1

    CHECK_THROWS(TreewidthProfile::parse("cubic:1"));
}

TEST_CASE("ceil log base 3/2") {
    CHECK(ceil_log_3_2(1) == 0);
    CHECK(ceil_log_3_2(2) == 2);  // (3/2)^2 = 2.25 >= 2
    CHECK(ceil_log_3_2(3) == 3);  // 3.375 >= 3
    CHECK(ceil_log_3_2(8) == 6);  // (3/2)^6 = 11.39 >= 8, (3/2)^5 = 7.59 < 8
}

TEST_CASE("ordering base case") {
    Graph single(1, {});
    auto ordering = separator_ordering(single, TreewidthProfile::constant(1));
    REQUIRE(ordering.order.size() == 1);
    CHECK(ordering.sets[0] == std::vector<Vertex>{0});
    CHECK(verify_separator_ordering(single, ordering, ordering.size_bound).pass);
}

TEST_CASE("ordering on paths and cycles") {
    {
        Graph p8 = path_graph(8);
        auto profile = TreewidthProfile::constant(1);
        auto ordering = separator_ordering(p8, profile);
        CHECK(verify_separator_ordering(p8, ordering, ordering.size_bound).pass);
    }
    {
        Graph c6 = cycle_graph(6);
        auto profile = TreewidthProfile::constant(2);
        auto ordering = separator_ordering(c6, profile);
        CHECK(verify_separator_ordering(c6, ordering, ordering.size_bound).pass);
    }
}

TEST_CASE("ordering bound violation surfaces as certificate failure") {
    // K5 has treewidth 4; a unit profile cannot host its separators
    Graph k5 = complete_graph(5);
    CHECK_THROWS_AS(separator_ordering(k5, TreewidthProfile::constant(1)), CertificateFailure);
}

TEST_CASE("ordering on random bounded-degree graphs with exact widths") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        std::size_t n = 2 + seed % 24;
        Graph g = oracle::random_bounded_degree(n, 3, 2.0 / static_cast<double>(n), seed);
        auto exact = tree_decomposition(g, DecompositionMode::Exact);
        auto profile = TreewidthProfile::constant(std::max(1, exact.width));
        auto ordering = separator_ordering(g, profile);
        CHECK(verify_separator_ordering(g, ordering, ordering.size_bound).pass);
    }
}

TEST_CASE("colored separator: single color on a path") {
    Graph p9 = path_graph(9);
    VertexColoring coloring(9, 0);
    auto triple = colored_separator(p9, coloring, 1, TreewidthProfile::constant(1));
    CHECK(validate_separator(p9, triple).pass);
    std::size_t a_colored = triple.a.size(), b_colored = triple.b.size();
    CHECK(a_colored <= 4); // 9/2 sharpened below ceil
    CHECK(b_colored <= 4);
    double bound = colored_separator_bound(TreewidthProfile::constant(1), 9, 1);
    CHECK(static_cast<double>(triple.s.size()) <= bound + 1e-9);
}

TEST_CASE("colored separator: no colors reduces to a free split") {
    Graph p5 = path_graph(5);
    VertexColoring coloring(5, -1);
    auto triple = colored_separator(p5, coloring, 2, TreewidthProfile::constant(1));
    CHECK(validate_separator(p5, triple).pass);
}

TEST_CASE("colored separator: alternating colors on a cycle") {
    Graph c8 = cycle_graph(8);
    VertexColoring coloring(8);
    for (std::size_t v = 0; v < 8; ++v) coloring[v] = static_cast<int>(v % 2);
    auto triple = colored_separator(c8, coloring, 2, TreewidthProfile::constant(2));
    CHECK(validate_separator(c8, triple).pass);
    for (int color = 0; color < 2; ++color) {
        std::size_t total = 4, a_count = 0, b_count = 0;
        for (Vertex v : triple.a)
            if (coloring[v] == color) ++a_count;
        for (Vertex v : triple.b)
            if (coloring[v] == color) ++b_count;
        CHECK(a_count <= total / 2);
        CHECK(b_count <= total / 2);
    }
}

TEST_CASE("colored separator composition on random graphs") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        Rng rng(seed);
        std::size_t n = 4 + rng.below(26);
        Graph g = oracle::random_bounded_degree(n, 3, 2.0 / static_cast<double>(n), seed + 1000);
        auto exact = tree_decomposition(g, DecompositionMode::Exact);
        auto profile = TreewidthProfile::constant(std::max(1, exact.width));
        std::uint32_t k = 1 + static_cast<std::uint32_t>(rng.below(3));
        VertexColoring coloring(n, -1);
        for (std::size_t v = 0; v < n; ++v)
            if (rng.bernoulli(0.7)) coloring[v] = static_cast<int>(rng.below(k));

        auto triple = colored_separator(g, coloring, k, profile);
        CHECK(validate_separator(g, triple).pass);
        CHECK(static_cast<double>(triple.s.size()) <=
              colored_separator_bound(profile, n, k) + 1e-9);
        for (std::uint32_t color = 0; color < k; ++color) {
            std::size_t total = 0, a_count = 0, b_count = 0;
            for (std::size_t v = 0; v < n; ++v)
                if (coloring[v] == static_cast<int>(color)) ++total;
            for (Vertex v : triple.a)
                if (coloring[v] == static_cast<int>(color)) ++a_count;
            for (Vertex v : triple.b)
                if (coloring[v] == static_cast<int>(color)) ++b_count;
            CHECK(2 * a_count <= total);
            CHECK(2 * b_count <= total);
        }
    }
}
