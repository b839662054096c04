#include <benchmark/benchmark.h>

#include "treeram/blowup.hpp"
#include "treeram/density.hpp"
#include "treeram/hall.hpp"
#include "treeram/necklace.hpp"
#include "treeram/product_embed.hpp"
#include "treeram/rng.hpp"
#include "treeram/tree_decomposition.hpp"

using namespace treeram;

namespace {

Graph bench_gnp(std::size_t n, double p, std::uint64_t seed) {
    Rng rng(seed);
    EdgeList edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (rng.bernoulli(p))
                edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
    return Graph(n, std::move(edges));
}

void bm_strong_product(benchmark::State& state) {
    Graph g = path_graph(static_cast<std::size_t>(state.range(0)));
    Graph h = complete_graph(8);
    for (auto _ : state) benchmark::DoNotOptimize(strong_product(g, h));
}
BENCHMARK(bm_strong_product)->Arg(32)->Arg(128);

void bm_graph_power(benchmark::State& state) {
    Graph g = bench_gnp(static_cast<std::size_t>(state.range(0)), 0.05, 1);
    for (auto _ : state) benchmark::DoNotOptimize(graph_power(g, 3));
}
BENCHMARK(bm_graph_power)->Arg(64)->Arg(256);

void bm_min_fill(benchmark::State& state) {
    Graph g = bench_gnp(static_cast<std::size_t>(state.range(0)), 0.08, 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(tree_decomposition(g, DecompositionMode::Heuristic));
}
BENCHMARK(bm_min_fill)->Arg(40)->Arg(120);

void bm_necklace(benchmark::State& state) {
    Rng rng(3);
    ColorSequence colors(static_cast<std::size_t>(state.range(0)));
    for (auto& c : colors) c = static_cast<int>(rng.below(3));
    for (auto _ : state) benchmark::DoNotOptimize(necklace_split(colors, 3));
}
BENCHMARK(bm_necklace)->Arg(64)->Arg(512);

void bm_hall(benchmark::State& state) {
    Rng rng(4);
    std::vector<std::vector<Vertex>> sets(static_cast<std::size_t>(state.range(0)));
    for (auto& set : sets) {
        auto picks = rng.sample_without_replacement(120, 12);
        set.assign(picks.begin(), picks.end());
    }
    for (auto _ : state) benchmark::DoNotOptimize(hall_matching(sets));
}
BENCHMARK(bm_hall)->Arg(32)->Arg(96);

void bm_dense_check(benchmark::State& state) {
    Graph host = bench_gnp(2 * static_cast<std::size_t>(state.range(0)), 0.5, 5);
    std::vector<Vertex> x, y;
    for (std::int64_t i = 0; i < state.range(0); ++i) {
        x.push_back(static_cast<Vertex>(i));
        y.push_back(static_cast<Vertex>(state.range(0) + i));
    }
    BipartitePair pair{&host, x, y};
    for (auto _ : state)
        benchmark::DoNotOptimize(
            check_dense_pair(pair, 0.125, 0.25, 1.0, CheckMode::Sampled, 7));
}
BENCHMARK(bm_dense_check)->Arg(64)->Arg(256);

void bm_embed_into_product(benchmark::State& state) {
    Graph g = path_graph(static_cast<std::size_t>(state.range(0)));
    auto profile = TreewidthProfile::constant(1);
    for (auto _ : state) benchmark::DoNotOptimize(embed_into_product(g, 2, profile));
}
BENCHMARK(bm_embed_into_product)->Arg(512)->Arg(1024);

void bm_blowup(benchmark::State& state) {
    Graph base = strong_product(path_graph(4), complete_graph(5));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            build_blowup_host(base, static_cast<std::uint32_t>(state.range(0)), 0.5, 11, false));
}
BENCHMARK(bm_blowup)->Arg(16)->Arg(64);

} // namespace

BENCHMARK_MAIN();
