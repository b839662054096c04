#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/oracles.hpp"
#include "treeram/dense_embed.hpp"
#include "treeram/errors.hpp"
#include "treeram/experiment.hpp"
#include "treeram/sparse_embed.hpp"

using namespace treeram;

namespace {

MonoStructure full_part_structure(const ColoredHost& host, std::uint8_t color) {
    MonoStructure structure;
    structure.color = color;
    for (std::size_t x = 0; x < host.base.vertex_count(); ++x) {
        structure.base_map.push_back(static_cast<Vertex>(x));
        structure.subsets.push_back(host.part(static_cast<Vertex>(x)));
    }
    return structure;
}

} // namespace

TEST_CASE("dense embed: single vertex") {
    Graph j = complete_graph(3); // K1 ⊠ K3
    auto host = color_host(build_blowup_host(j, 6, 1.0, 0, true), 1, ColorStrategy::Random, 0);
    auto structure = full_part_structure(host, 0);

    Graph h(1, {});
    auto result = dense_embed(host, structure, h, Graph(1, {}), {0}, {0}, 2, 1);
    CHECK(result.success);
    CHECK(verify_embedding_map(host, h, result.map).pass);
}

TEST_CASE("dense embed: P4 into P2 ⊠ K2 with complete structure") {
    Graph tree = path_graph(2);
    Graph j = strong_product(tree, complete_graph(3)); // delta + 1 = 3 classes
    auto host = color_host(build_blowup_host(j, 16, 1.0, 0, true), 1, ColorStrategy::Random, 0);
    auto structure = full_part_structure(host, 0);

    Graph h = path_graph(4);
    std::vector<Vertex> node_of = {0, 0, 1, 1};
    std::vector<std::uint32_t> class_of = {0, 1, 0, 1};
    auto result = dense_embed(host, structure, h, tree, node_of, class_of, 2, 1);
    CHECK(result.success);
    CHECK(verify_embedding_map(host, h, result.map).pass);
}

TEST_CASE("dense embed input validation") {
    Graph tree = path_graph(2);
    Graph j = strong_product(tree, complete_graph(3));
    auto host = color_host(build_blowup_host(j, 8, 1.0, 0, true), 1, ColorStrategy::Random, 0);
    auto structure = full_part_structure(host, 0);
    Graph h = path_graph(2);
    // adjacent vertices in the same node and class
    CHECK_THROWS_AS(dense_embed(host, structure, h, tree, {0, 0}, {0, 0}, 2, 1), InputError);
    // edge across non-adjacent tree nodes
    Graph far_tree = path_graph(3);
    Graph far_j = strong_product(far_tree, complete_graph(3));
    auto far_host =
        color_host(build_blowup_host(far_j, 8, 1.0, 0, true), 1, ColorStrategy::Random, 0);
    auto far_structure = full_part_structure(far_host, 0);
    CHECK_THROWS_AS(
        dense_embed(far_host, far_structure, h, far_tree, {0, 2}, {0, 0}, 2, 1), InputError);
}

TEST_CASE("dense embed: 6-cycle over P3 under random 2-colorings") {
    Graph tree = path_graph(3);
    Graph h = cycle_graph(6);
    std::vector<Vertex> node_of = {0, 1, 2, 2, 1, 0}; // snake witness into P3 ⊠ K2
    std::vector<std::uint32_t> class_of = {0, 0, 0, 1, 1, 1};
    Graph j = strong_product(tree, complete_graph(3));
    auto host = build_blowup_host(j, 80, 1.0, 0, true);

    int successes = 0;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto colored = color_host(host, 2, ColorStrategy::Random, seed);
        StructureParams params;
        params.alpha = 0.25;
        params.epsilon = 0.125;
        params.lambda = 0.25;
        params.seed = seed;
        auto found = find_monochromatic_dense_structure(colored, j, params);
        if (!std::holds_alternative<MonoStructure>(found)) continue;
        auto result = dense_embed(colored, std::get<MonoStructure>(found), h, tree, node_of,
                                  class_of, 2, 2);
        if (!result.success) continue;
        REQUIRE(verify_embedding_map(colored, h, result.map).pass);
        ++successes;
    }
    CHECK(successes >= 27);
}

TEST_CASE("sparse embed: path over two blocks with complete pairs") {
    Graph h = path_graph(8);
    auto instance = natural_block_witness(h, 4, false);
    auto prep = prepare_h(h, *instance.witness_base, instance.witness_map, 4, 2);
    Graph j = strong_product(*instance.witness_base, complete_graph(prep.delta_tilde));

    auto host = color_host(build_blowup_host(j, 8, 1.0, 0, false), 1, ColorStrategy::Random, 0);
    StructureParams sparams;
    sparams.alpha = 0.5;
    sparams.epsilon = 0.125;
    sparams.lambda = 0.5;
    sparams.seed = 3;
    auto found = find_monochromatic_dense_structure(host, j, sparams);
    REQUIRE(std::holds_alternative<MonoStructure>(found));

    SparseParams params;
    params.rho = 0.5;
    params.p = 1.0;
    params.mu = 1.0 / 16;
    params.eps_ladder = {0.125};
    params.certified = true;
    params.recompute_candidates = true;
    params.seed = 11;
    auto result =
        sparse_embed(host, std::get<MonoStructure>(found), j, h, prep, params);
    CHECK(result.success);
    CHECK(result.all_monotone);
    CHECK(result.all_bounds);
    CHECK(result.all_formula);
    CHECK(verify_embedding_map(host, h, result.map).pass);
}

TEST_CASE("sparse embed under p < 1") {
    Graph h = path_graph(16);
    auto instance = natural_block_witness(h, 8, false);
    auto prep = prepare_h(h, *instance.witness_base, instance.witness_map, 8, 2);
    Graph j = strong_product(*instance.witness_base, complete_graph(prep.delta_tilde));

    auto bare = build_blowup_host(j, 32, 0.7, 5, false);
    auto host = color_host(bare, 1, ColorStrategy::Random, 0);
    StructureParams sparams;
    sparams.alpha = 0.5;
    sparams.epsilon = 0.125;
    sparams.lambda = 0.5;
    sparams.seed = 4;
    auto found = find_monochromatic_dense_structure(host, j, sparams);
    REQUIRE(std::holds_alternative<MonoStructure>(found));

    SparseParams params;
    params.rho = 0.5;
    params.p = 0.7;
    params.mu = 1.0 / 16;
    params.eps_ladder = {0.125};
    params.recompute_candidates = true;
    params.seed = 12;
    auto result = sparse_embed(host, std::get<MonoStructure>(found), j, h, prep, params);
    CHECK(result.all_monotone);
    CHECK(result.all_bounds);
    CHECK(result.all_formula);
    if (result.success) {
        CHECK(verify_embedding_map(host, h, result.map).pass);
    } else {
        CHECK(result.failure.contains("stage"));
    }
}

TEST_CASE("sparse embed: starved pair fails with a named witness") {
    Graph h = path_graph(8);
    auto instance = natural_block_witness(h, 4, false);
    auto prep = prepare_h(h, *instance.witness_base, instance.witness_map, 4, 2);
    Graph j = strong_product(*instance.witness_base, complete_graph(prep.delta_tilde));

    // find the pattern edge carrying H's block-crossing edge {3,4} and delete
    // its host block entirely
    std::uint32_t pu = prep.class_of[3], pv = prep.class_of[4];
    Vertex ju = prep.class_to_base[pu] * prep.delta_tilde + pu % prep.delta_tilde;
    Vertex jv = prep.class_to_base[pv] * prep.delta_tilde + pv % prep.delta_tilde;
    EdgeList kept;
    for (auto e : j.edges())
        if (!(e == std::make_pair(std::min(ju, jv), std::max(ju, jv)))) kept.push_back(e);
    Graph j_minus(j.vertex_count(), kept);

    auto host =
        color_host(build_blowup_host(j_minus, 8, 1.0, 0, false), 1, ColorStrategy::Random, 0);
    MonoStructure structure = full_part_structure(host, 0);

    SparseParams params;
    params.rho = 0.5;
    params.p = 1.0;
    params.mu = 1.0 / 16;
    params.eps_ladder = {0.125};
    params.recompute_candidates = true;
    auto result = sparse_embed(host, structure, j, h, prep, params);
    CHECK_FALSE(result.success);
    CHECK(result.failure["stage"] == "hall");
    CHECK(result.failure["witness"]["witness_valid"].get<bool>());
    // diagnostics name the starved class and its pattern location
    CHECK(result.failure.contains("class_pattern_vertex"));
}

TEST_CASE("sparse embed rejects an H edge outside the pattern") {
    Graph h = path_graph(8);
    auto instance = natural_block_witness(h, 4, false);
    auto prep = prepare_h(h, *instance.witness_base, instance.witness_map, 4, 2);
    Graph j = strong_product(*instance.witness_base, complete_graph(prep.delta_tilde));

    std::uint32_t pu = prep.class_of[3], pv = prep.class_of[4];
    Vertex ju = prep.class_to_base[pu] * prep.delta_tilde + pu % prep.delta_tilde;
    Vertex jv = prep.class_to_base[pv] * prep.delta_tilde + pv % prep.delta_tilde;
    EdgeList kept;
    for (auto e : j.edges())
        if (!(e == std::make_pair(std::min(ju, jv), std::max(ju, jv)))) kept.push_back(e);
    Graph j_minus(j.vertex_count(), kept);

    auto host =
        color_host(build_blowup_host(j_minus, 8, 1.0, 0, false), 1, ColorStrategy::Random, 0);
    MonoStructure structure = full_part_structure(host, 0);
    SparseParams params;
    // passing the pruned pattern makes the H edge span a pattern non-edge
    CHECK_THROWS_AS(sparse_embed(host, structure, j_minus, h, prep, params), InputError);
}
