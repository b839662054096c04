#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>

#include "support/oracles.hpp"
#include "treeram/errors.hpp"
#include "treeram/experiment.hpp"
#include "treeram/io.hpp"
#include "treeram/tree_decomposition.hpp"

using namespace treeram;

TEST_CASE("grid instances") {
    auto instance = generate_instance(InstanceFamily::Grid, 9, 4, 0);
    CHECK(instance.graph.vertex_count() == 9);
    CHECK(instance.graph.edge_count() == 12);
    CHECK(instance.graph.max_degree() == 4);
    REQUIRE(instance.witness_base.has_value());
    CHECK(instance.witness_base->vertex_count() == 3);
    CHECK(instance.witness_s == 3);

    ProductEmbedding pe;
    pe.tree = *instance.witness_base;
    pe.clique_size = instance.witness_s;
    pe.map = instance.witness_map;
    pe.source = instance.graph;
    CHECK(verify_product_embedding(pe).pass);

    CHECK_THROWS_AS(generate_instance(InstanceFamily::Grid, 10, 4, 0), InputError);
}

TEST_CASE("random bounded-treewidth instances") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto instance = generate_instance(InstanceFamily::RandomBoundedTw, 40, 4, seed);
        CHECK(instance.graph.vertex_count() == 40);
        CHECK(instance.graph.max_degree() <= 4);
    }
    // the intact K_{w+1} keeps the treewidth exactly w
    Graph g = random_partial_ktree(20, 3, 4, 7);
    CHECK(tree_decomposition(g, DecompositionMode::Exact).width == 3);
    Graph g2 = random_partial_ktree(24, 2, 3, 8);
    CHECK(tree_decomposition(g2, DecompositionMode::Exact).width == 2);
}

TEST_CASE("from-file passthrough") {
    Graph g = oracle::random_bounded_degree(15, 3, 0.3, 3);
    std::string path = "/tmp/treeram_test_instance.graph";
    write_graph_file(path, g);
    auto instance = generate_instance(InstanceFamily::FromFile, 0, 3, 0, path);
    CHECK(instance.graph == g);
    std::remove(path.c_str());
}

TEST_CASE("single trial with one color always succeeds") {
    ExperimentConfig config;
    config.family = InstanceFamily::Grid;
    config.n = 9;
    config.delta = 4;
    config.colors = 1;
    config.mode = HostMode::Dense;
    config.m = 20;
    config.trials = 1;
    config.seed = 7;
    auto report = run_experiment(config);
    CHECK(report.successes == 1);
    CHECK(report.success_rate == doctest::Approx(1.0));
    CHECK(report.trials[0].verified);
}

TEST_CASE("dense experiment reports are deterministic") {
    ExperimentConfig config;
    config.family = InstanceFamily::Grid;
    config.n = 9;
    config.delta = 4;
    config.colors = 2;
    config.mode = HostMode::Dense;
    config.m = 24;
    config.trials = 4;
    config.seed = 17;
    auto a = run_experiment(config);
    auto b = run_experiment(config);
    CHECK(report_to_json(a).dump(2) == report_to_json(b).dump(2));
    CHECK(report_to_csv(a) == report_to_csv(b));
}

TEST_CASE("sparse experiment over a from-file path") {
    Graph path = path_graph(12);
    std::string file = "/tmp/treeram_test_sparse.graph";
    write_graph_file(file, path);

    ExperimentConfig config;
    config.family = InstanceFamily::FromFile;
    config.input_path = file;
    config.delta = 2;
    config.colors = 1;
    config.mode = HostMode::Sparse;
    config.profile = "const:1";
    config.m = 24;
    config.p = 1.0;
    config.trials = 2;
    config.seed = 23;
    config.force_recompute = true;
    auto report = run_experiment(config);
    CHECK(report.successes == 2);
    CHECK(report.invariant_summary["all_monotone"].get<bool>());
    CHECK(report.invariant_summary["all_bounds"].get<bool>());
    CHECK(report.invariant_summary["all_formula"].get<bool>());

    auto again = run_experiment(config);
    CHECK(report_to_json(report).dump(2) == report_to_json(again).dump(2));
    std::remove(file.c_str());
}

TEST_CASE("config json round trip") {
    ExperimentConfig config;
    config.family = InstanceFamily::RandomBoundedTw;
    config.n = 50;
    config.delta = 3;
    config.colors = 2;
    config.mode = HostMode::Sparse;
    config.p = 0.7;
    config.trials = 9;
    config.seed = 99;
    auto j = config_to_json(config);
    auto back = config_from_json(j);
    CHECK(config_to_json(back) == j);
}

TEST_CASE("host edge counts in reports match the built host") {
    ExperimentConfig config;
    config.family = InstanceFamily::Grid;
    config.n = 9;
    config.delta = 4;
    config.colors = 1;
    config.mode = HostMode::Dense;
    config.m = 12;
    config.trials = 1;
    config.seed = 3;
    auto report = run_experiment(config);

    Graph tree = path_graph(3);
    Graph pattern = strong_product(tree, complete_graph(5));
    auto host = build_blowup_host(pattern, 12, 1.0, config.seed, true);
    CHECK(report.host["edges"].get<std::size_t>() == host.graph.edge_count());
    CHECK(report.host["vertices"].get<std::size_t>() == host.graph.vertex_count());
}
