#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/oracles.hpp"
#include "treeram/errors.hpp"
#include "treeram/prepare_h.hpp"

using namespace treeram;

namespace {

// random H placed injectively into base ⊠ K_s with a degree cap
struct WitnessedInstance {
    Graph h;
    Graph base;
    std::vector<std::pair<Vertex, std::uint32_t>> psi;
    std::uint32_t s;
};

WitnessedInstance random_witnessed(std::uint32_t delta, std::uint64_t seed) {
    Rng rng(seed);
    WitnessedInstance inst;
    std::size_t tau = 2 + rng.below(4);
    inst.base = oracle::random_tree(tau, seed + 1);
    inst.s = 3 + static_cast<std::uint32_t>(rng.below(4));
    std::size_t slots = tau * inst.s;
    std::size_t n = std::min<std::size_t>(slots, 6 + rng.below(14));

    auto picks = rng.sample_without_replacement(static_cast<std::uint32_t>(slots),
                                                static_cast<std::uint32_t>(n));
    for (auto p : picks) inst.psi.emplace_back(p / inst.s, p % inst.s);

    EdgeList edges;
    std::vector<std::size_t> degree(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            bool allowed = inst.psi[i].first == inst.psi[j].first ||
                           inst.base.has_edge(inst.psi[i].first, inst.psi[j].first);
            if (!allowed || degree[i] >= delta || degree[j] >= delta) continue;
            if (rng.bernoulli(0.35)) {
                edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
                ++degree[i];
                ++degree[j];
            }
        }
    inst.h = Graph(n, std::move(edges));
    return inst;
}

} // namespace

TEST_CASE("delta tilde formula") {
    CHECK(delta_tilde_of(2) == 21);
    CHECK(delta_tilde_of(3) == 88);
    CHECK(delta_tilde_of(4) == 265);
}

TEST_CASE("edgeless H: everything trivially valid") {
    Graph h(6, {});
    Graph base = path_graph(2);
    std::vector<std::pair<Vertex, std::uint32_t>> psi;
    for (std::size_t v = 0; v < 6; ++v)
        psi.emplace_back(static_cast<Vertex>(v / 3), static_cast<std::uint32_t>(v % 3));
    auto prep = prepare_h(h, base, psi, 3, 2);
    CHECK(verify_preparation(h, prep).pass);
    for (auto ld : prep.left_degree) CHECK(ld == 0);
}

TEST_CASE("preparation rejects invalid witnesses") {
    Graph h = path_graph(2);
    Graph base(2, {});
    // edge between different, non-adjacent base vertices
    std::vector<std::pair<Vertex, std::uint32_t>> psi = {{0, 0}, {1, 0}};
    CHECK_THROWS_AS(prepare_h(h, base, psi, 2, 2), InputError);

    std::vector<std::pair<Vertex, std::uint32_t>> repeated = {{0, 0}, {0, 0}};
    CHECK_THROWS_AS(prepare_h(h, path_graph(2), repeated, 2, 2), InputError);
}

TEST_CASE("preparation properties on random witnessed instances") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        std::uint32_t delta = 2 + static_cast<std::uint32_t>(seed % 2);
        auto inst = random_witnessed(delta, seed);
        auto prep = prepare_h(inst.h, inst.base, inst.psi, inst.s, delta);
        auto report = verify_preparation(inst.h, prep);
        CHECK(report.pass);
        CHECK(prep.delta_tilde == delta_tilde_of(delta));
        CHECK(prep.classes.size() == inst.base.vertex_count() * prep.delta_tilde);

        // class count per base vertex never exceeds delta_tilde (nonempty slots)
        for (std::size_t b = 0; b < inst.base.vertex_count(); ++b) {
            std::size_t nonempty = 0;
            for (std::uint32_t a = 0; a < prep.delta_tilde; ++a)
                if (!prep.classes[b * prep.delta_tilde + a].empty()) ++nonempty;
            CHECK(nonempty <= prep.delta_tilde);
        }
    }
}

TEST_CASE("class order follows the base BFS order") {
    auto inst = random_witnessed(2, 7);
    auto prep = prepare_h(inst.h, inst.base, inst.psi, inst.s, 2);
    // vertices of an earlier base position always sit in lower class indices
    std::vector<std::uint32_t> position(inst.base.vertex_count());
    for (std::size_t i = 0; i < prep.base_order.size(); ++i)
        position[prep.base_order[i]] = static_cast<std::uint32_t>(i);
    for (std::size_t v = 0; v < inst.h.vertex_count(); ++v) {
        std::uint32_t expected_block = position[inst.psi[v].first];
        CHECK(prep.class_of[v] / prep.delta_tilde == expected_block);
    }
}
