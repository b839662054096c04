#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/oracles.hpp"
#include "treeram/congestion.hpp"
#include "treeram/density.hpp"
#include "treeram/errors.hpp"

using namespace treeram;

TEST_CASE("dense pair: complete and empty") {
    auto complete = oracle::random_pair(8, 8, 1.0, 0);
    BipartitePair pair{&complete.host, complete.x, complete.y};
    CHECK(check_dense_pair(pair, 0.25, 1.0, 1.0, CheckMode::Exhaustive).pass);

    auto empty = oracle::random_pair(8, 8, 0.0, 0);
    BipartitePair empty_pair{&empty.host, empty.x, empty.y};
    auto cert = check_dense_pair(empty_pair, 0.25, 0.5, 1.0, CheckMode::Exhaustive);
    CHECK_FALSE(cert.pass);
    CHECK(cert.witness_density == doctest::Approx(0));
}

TEST_CASE("dense pair guard") {
    auto inst = oracle::random_pair(17, 4, 0.5, 1);
    BipartitePair pair{&inst.host, inst.x, inst.y};
    CHECK_THROWS_AS(check_dense_pair(pair, 0.25, 0.5, 1.0, CheckMode::Exhaustive),
                    SizeGuardError);
}

TEST_CASE("dense pair exhaustive agrees with full enumeration") {
    int refuted = 0;
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        Rng rng(seed);
        std::size_t nx = 1 + rng.below(9), ny = 1 + rng.below(9);
        double p = 0.2 + 0.6 * rng.real01();
        auto inst = oracle::random_pair(nx, ny, p, seed + 500);
        double eps = 0.15 + 0.2 * rng.real01();
        double alpha = 0.3 + 0.4 * rng.real01();
        BipartitePair pair{&inst.host, inst.x, inst.y};
        auto cert = check_dense_pair(pair, eps, alpha, 1.0, CheckMode::Exhaustive);
        bool brute = oracle::dense_pair_brute(inst, eps, alpha, 1.0);
        CHECK(cert.pass == brute);
        if (!cert.pass) {
            ++refuted;
            // the witness must actually refute
            double d = pair_density(inst.host, cert.witness_x, cert.witness_y);
            CHECK(d < (alpha - eps) * 1.0);
        }
    }
    CHECK(refuted > 0); // instances exercise both verdicts
}

TEST_CASE("dense pair sampled refutations are sound") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Rng rng(seed);
        auto inst = oracle::random_pair(12, 12, 0.3 + 0.4 * rng.real01(), seed);
        BipartitePair pair{&inst.host, inst.x, inst.y};
        auto cert = check_dense_pair(pair, 0.25, 0.6, 1.0, CheckMode::Sampled, seed);
        if (!cert.pass) {
            double d = pair_density(inst.host, cert.witness_x, cert.witness_y);
            CHECK(d < cert.threshold);
            CHECK(cert.witness_x.size() >= qualifying_size(0.25, 12));
            CHECK(cert.witness_y.size() >= qualifying_size(0.25, 12));
        }
    }
}

TEST_CASE("uniformity: complete passes, isolated half refutes") {
    auto complete = oracle::random_pair(8, 8, 1.0, 0);
    BipartitePair pair{&complete.host, complete.x, complete.y};
    CHECK(check_uniform(pair, 0.3, 1.0, CheckMode::Exhaustive).pass);

    // half of Y isolated: low-side violation at lambda = 0.5
    EdgeList edges;
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(6 + j));
    Graph host(12, std::move(edges));
    std::vector<Vertex> x = {0, 1, 2, 3, 4, 5}, y = {6, 7, 8, 9, 10, 11};
    BipartitePair half{&host, x, y};
    auto cert = check_uniform(half, 0.5, 0.5, CheckMode::Exhaustive);
    CHECK_FALSE(cert.pass);
    CHECK_FALSE(cert.violated_high);
}

TEST_CASE("uniformity exhaustive agrees with full enumeration") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        Rng rng(seed);
        std::size_t nx = 2 + rng.below(8), ny = 2 + rng.below(8);
        auto inst = oracle::random_pair(nx, ny, 0.5, seed + 900);
        double lambda = 0.3 + 0.3 * rng.real01();
        BipartitePair pair{&inst.host, inst.x, inst.y};
        auto cert = check_uniform(pair, lambda, 0.5, CheckMode::Exhaustive);
        CHECK(cert.pass == oracle::uniform_pair_brute(inst, lambda, 0.5));
    }
}

TEST_CASE("auxiliary incidence graph") {
    Graph g = path_graph(4);
    // k=1: incidences are exactly the edges between family and U
    auto aux = build_auxiliary_graph(g, 1, {{0}, {2}}, {1});
    CHECK(aux.edge_count == 2);

    Graph k4 = complete_graph(4);
    auto aux2 = build_auxiliary_graph(k4, 2, {{0, 1}}, {2, 3});
    CHECK(aux2.edge_count == 2);

    Graph empty(6, {});
    auto aux3 = build_auxiliary_graph(empty, 2, {{0, 1}, {2, 3}}, {4, 5});
    CHECK(aux3.edge_count == 0);

    CHECK_THROWS_AS(build_auxiliary_graph(k4, 2, {{0, 1}, {1, 2}}, {3}), InputError);
    CHECK_THROWS_AS(build_auxiliary_graph(k4, 2, {{0, 1}}, {1, 3}), InputError);
}

TEST_CASE("congestion: empty graph passes, K6 refutes at tiny p") {
    Graph empty(8, {});
    CHECK(check_congestion(empty, 1, 0.5, 0.5, CheckMode::Exhaustive).pass);

    auto cert = check_congestion(complete_graph(6), 1, 1.0, 0.01, CheckMode::Exhaustive);
    CHECK_FALSE(cert.pass);
    CHECK(static_cast<double>(cert.witness_edges) > cert.witness_bound);
    // re-verify the witness through the incidence builder
    auto aux = build_auxiliary_graph(complete_graph(6), 1, cert.witness_family, cert.witness_u);
    CHECK(aux.edge_count == cert.witness_edges);
}

TEST_CASE("congestion guard") {
    CHECK_THROWS_AS(check_congestion(oracle::gnp(15, 0.3, 0), 1, 0.5, 0.5,
                                     CheckMode::Exhaustive),
                    SizeGuardError);
    CHECK_THROWS_AS(check_congestion(oracle::gnp(10, 0.3, 0), 3, 0.5, 0.5,
                                     CheckMode::Exhaustive),
                    SizeGuardError);
}

TEST_CASE("congestion exhaustive agrees with recursive enumeration") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        Rng rng(seed);
        std::uint32_t k = 1 + static_cast<std::uint32_t>(rng.below(2));
        std::size_t n = 4 + rng.below(k == 1 ? 7 : 4);
        Graph g = oracle::gnp(n, 0.3 + 0.4 * rng.real01(), seed + 300);
        double xi = 0.2 + 0.4 * rng.real01();
        double p = 0.2 + 0.6 * rng.real01();
        auto cert = check_congestion(g, k, xi, p, CheckMode::Exhaustive);
        CHECK(cert.pass == oracle::congestion_brute(g, k, xi, p));
    }
}

TEST_CASE("bad family membership") {
    // everything complete: neighborhood pairs stay dense, so never bad
    Graph complete = complete_graph(12);
    std::vector<Vertex> x = {0, 1, 2, 3}, y = {4, 5, 6, 7}, z = {8, 9, 10, 11};
    BadFamilyParams params{0.5, 0.25, 0.5, 0.5, 0.5, 1.0};
    auto cert = check_bad_family(complete, x, y, z, BadFamilyVariant::OneSided, params);
    CHECK(cert.cond_a);
    CHECK(cert.cond_b);
    CHECK_FALSE(cert.is_bad);
    CHECK(cert.bad_x.empty());

    // X-Y complete, Y-Z nearly complete but one hole; every x sees the
    // non-dense (Y, Z) pair at the tighter eps'
    EdgeList edges;
    for (Vertex a : x)
        for (Vertex b : y) edges.emplace_back(a, b);
    for (Vertex b : y)
        for (Vertex c : z)
            if (!(b == 4 && c == 8)) edges.emplace_back(b, c);
    Graph holed(12, std::move(edges));
    auto bad = check_bad_family(holed, x, y, z, BadFamilyVariant::OneSided, params);
    CHECK(bad.cond_a);
    CHECK(bad.cond_b);
    CHECK(bad.is_bad);
    CHECK(bad.bad_x.size() == 4);

    // mu > 1 can never be bad
    BadFamilyParams impossible{0.5, 0.25, 0.5, 1.5, 0.5, 1.0};
    CHECK_FALSE(check_bad_family(holed, x, y, z, BadFamilyVariant::OneSided, impossible).is_bad);
}

TEST_CASE("bad family two-sided variant") {
    Graph complete = complete_graph(9);
    std::vector<Vertex> x = {0, 1, 2}, y = {3, 4, 5}, z = {6, 7, 8};
    BadFamilyParams params{0.5, 0.25, 0.5, 0.5, 0.5, 1.0};
    auto cert = check_bad_family(complete, x, y, z, BadFamilyVariant::TwoSided, params);
    CHECK(cert.cond_a);
    CHECK_FALSE(cert.is_bad);

    CHECK_THROWS_AS(
        check_bad_family(complete, x, y, {5, 6, 7}, BadFamilyVariant::TwoSided, params),
        InputError);
}
