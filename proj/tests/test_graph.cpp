#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "support/oracles.hpp"
#include "treeram/coloring.hpp"
#include "treeram/errors.hpp"
#include "treeram/graph.hpp"
#include "treeram/io.hpp"
#include "treeram/product_embedding.hpp"

using namespace treeram;

TEST_CASE("strong product identity and small cases") {
    Graph k1 = complete_graph(1);
    Graph p3 = path_graph(3);
    CHECK(strong_product(k1, p3) == p3);

    Graph k2 = complete_graph(2);
    CHECK(strong_product(k2, k2) == complete_graph(4));

    // e(P3 ⊠ P3) via the edge-count identity
    Graph prod = strong_product(p3, p3);
    CHECK(prod.edge_count() == 20);
    CHECK(prod.edge_count() == oracle::strong_product_edge_count(p3, p3));
}

TEST_CASE("strong product edge-count identity on random inputs") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Graph g = oracle::gnp(2 + seed % 6, 0.4, seed);
        Graph h = oracle::gnp(1 + seed % 5, 0.5, seed + 100);
        Graph prod = strong_product(g, h);
        CHECK(prod.edge_count() == oracle::strong_product_edge_count(g, h));
        CHECK(prod.vertex_count() == g.vertex_count() * h.vertex_count());
    }
}

TEST_CASE("strong product commutes up to coordinate swap") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Graph g = oracle::gnp(4, 0.5, seed);
        Graph h = oracle::gnp(3, 0.5, seed + 50);
        Graph gh = strong_product(g, h);
        Graph hg = strong_product(h, g);
        std::vector<Vertex> perm(hg.vertex_count());
        for (std::size_t hv = 0; hv < h.vertex_count(); ++hv)
            for (std::size_t gv = 0; gv < g.vertex_count(); ++gv)
                perm[hv * g.vertex_count() + gv] =
                    static_cast<Vertex>(gv * h.vertex_count() + hv);
        CHECK(relabel(hg, perm) == gh);
    }
}

TEST_CASE("graph power") {
    Graph t = oracle::random_tree(12, 7);
    CHECK(graph_power(t, 1) == t);

    Graph p4 = path_graph(4);
    Graph p4sq = graph_power(p4, 2);
    EdgeList expected = {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}};
    CHECK(p4sq == Graph(4, expected));

    CHECK(graph_power(star_graph(3), 2) == complete_graph(4));
}

TEST_CASE("graph power monotone in k") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Graph g = oracle::gnp(10, 0.2, seed);
        for (unsigned k = 1; k <= 3; ++k) {
            Graph a = graph_power(g, k);
            Graph b = graph_power(g, k + 1);
            for (const auto& [u, v] : a.edges()) CHECK(b.has_edge(u, v));
        }
    }
}

TEST_CASE("greedy coloring") {
    Graph empty(5, {});
    std::vector<Vertex> order = {0, 1, 2, 3, 4};
    auto colors = greedy_coloring(empty, order);
    for (auto c : colors) CHECK(c == 0);

    Graph k4 = complete_graph(4);
    auto k4_colors = greedy_coloring(k4, {2, 0, 3, 1});
    CHECK(*std::max_element(k4_colors.begin(), k4_colors.end()) == 3);
    CHECK(is_proper_coloring(k4, k4_colors));

    Graph c5 = cycle_graph(5);
    auto c5_colors = greedy_coloring(c5, {0, 1, 2, 3, 4});
    CHECK(is_proper_coloring(c5, c5_colors));
    CHECK(*std::max_element(c5_colors.begin(), c5_colors.end()) == 2);

    CHECK_THROWS_AS(greedy_coloring(k4, {0, 0, 1, 2}), InputError);
}

TEST_CASE("greedy coloring stays within max degree + 1") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        Graph g = oracle::gnp(14, 0.3, seed);
        std::vector<Vertex> order(14);
        for (std::size_t i = 0; i < 14; ++i) order[i] = static_cast<Vertex>(i);
        Rng rng(seed);
        rng.shuffle(order);
        auto colors = greedy_coloring(g, order);
        CHECK(is_proper_coloring(g, colors));
        CHECK(*std::max_element(colors.begin(), colors.end()) <= g.max_degree());
    }
}

TEST_CASE("edge list io") {
    std::istringstream in("3\n0 1\n1 2\n");
    Graph g = read_graph(in);
    CHECK(g == path_graph(3));

    std::istringstream bad("2\n0 5\n");
    CHECK_THROWS_WITH_AS(read_graph(bad), "line 2: endpoint out of range", ParseError);

    std::istringstream dup("3\n0 1\n1 0\n");
    CHECK_THROWS_AS(read_graph(dup), ParseError);

    std::istringstream junk("3\n0 x\n");
    CHECK_THROWS_AS(read_graph(junk), ParseError);

    std::istringstream commented("# header\n4  # count\n0 1\n\n2 3 # tail\n");
    Graph with_comments = read_graph(commented);
    CHECK(with_comments.vertex_count() == 4);
    CHECK(with_comments.edge_count() == 2);
}

TEST_CASE("graph io round trip") {
    Graph g = oracle::gnp(20, 0.3, 99);
    std::ostringstream out;
    write_graph(out, g);
    std::istringstream in(out.str());
    CHECK(read_graph(in) == g);
}

TEST_CASE("coloring io round trip") {
    Graph g = oracle::gnp(10, 0.5, 5);
    EdgeColoring coloring;
    coloring.k = 3;
    Rng rng(17);
    for (std::size_t i = 0; i < g.edge_count(); ++i)
        coloring.colors.push_back(static_cast<std::uint8_t>(rng.below(3)));
    std::ostringstream out;
    write_coloring(out, g, coloring);
    std::istringstream in(out.str());
    EdgeColoring back = read_coloring(in, g);
    CHECK(back.colors == coloring.colors);

    std::istringstream missing("0 1 0\n");
    CHECK_THROWS_AS(read_coloring(missing, g), ParseError);
}

TEST_CASE("verify_product_embedding basics") {
    Graph t = oracle::random_tree(8, 3);
    ProductEmbedding identity;
    identity.tree = t;
    identity.clique_size = 1;
    identity.source = t;
    for (std::size_t v = 0; v < 8; ++v) identity.map.emplace_back(static_cast<Vertex>(v), 0);
    CHECK(verify_product_embedding(identity).pass);

    // C4, two vertices per node of P2
    ProductEmbedding c4;
    c4.tree = path_graph(2);
    c4.clique_size = 2;
    c4.source = cycle_graph(4);
    c4.map = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    CHECK(verify_product_embedding(c4).pass);

    ProductEmbedding dup = c4;
    dup.map[3] = dup.map[2];
    auto report = verify_product_embedding(dup);
    CHECK_FALSE(report.pass);
    CHECK(report.has("injectivity"));
}

TEST_CASE("verify_product_embedding agrees with literal product membership") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        Rng rng(seed);
        Graph tree = oracle::random_tree(2 + seed % 5, seed);
        std::uint32_t s = 1 + static_cast<std::uint32_t>(rng.below(3));
        Graph product = strong_product(tree, complete_graph(s));

        std::size_t n = 2 + rng.below(tree.vertex_count() * s - 1);
        auto spots = rng.sample_without_replacement(
            static_cast<std::uint32_t>(tree.vertex_count() * s), static_cast<std::uint32_t>(n));

        // source edges: random subset of pairs, some crossing non-adjacent nodes
        EdgeList edges;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (rng.bernoulli(0.3))
                    edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));

        ProductEmbedding pe;
        pe.tree = tree;
        pe.clique_size = s;
        pe.source = Graph(n, edges);
        for (std::size_t i = 0; i < n; ++i)
            pe.map.emplace_back(spots[i] / s, spots[i] % s);

        bool brute = true;
        for (const auto& [u, v] : pe.source.edges()) {
            Vertex pu = pe.map[u].first * s + pe.map[u].second;
            Vertex pv = pe.map[v].first * s + pe.map[v].second;
            if (!product.has_edge(pu, pv)) brute = false;
        }
        CHECK(verify_product_embedding(pe).pass == brute);
    }
}
