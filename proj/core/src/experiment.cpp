#include "treeram/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <future>
#include <set>
#include <sstream>
#include <thread>

#include "treeram/dense_embed.hpp"
#include "treeram/errors.hpp"
#include "treeram/io.hpp"
#include "treeram/rng.hpp"

namespace treeram {

namespace {

std::string family_name(InstanceFamily family) {
    switch (family) {
        case InstanceFamily::Grid: return "grid";
        case InstanceFamily::RandomBoundedTw: return "random-bounded-tw";
        case InstanceFamily::FromFile: return "from-file";
    }
    return "grid";
}

InstanceFamily family_from_name(const std::string& name) {
    if (name == "grid") return InstanceFamily::Grid;
    if (name == "random-bounded-tw") return InstanceFamily::RandomBoundedTw;
    if (name == "from-file") return InstanceFamily::FromFile;
    throw InputError("unknown instance family: " + name);
}

} // namespace

nlohmann::json config_to_json(const ExperimentConfig& config) {
    nlohmann::json j;
    j["family"] = family_name(config.family);
    j["input"] = config.input_path;
    j["n"] = config.n;
    j["delta"] = config.delta;
    j["colors"] = config.colors;
    j["profile"] = config.profile;
    j["mode"] = config.mode == HostMode::Dense ? "dense" : "sparse";
    j["color_strategy"] = config.color_strategy;
    j["p"] = config.p;
    j["m"] = config.m;
    j["rho"] = config.rho;
    j["epsilon"] = config.epsilon;
    j["mu"] = config.mu;
    j["lambda"] = config.lambda;
    j["trials"] = config.trials;
    j["seed"] = config.seed;
    j["budget_secs"] = config.budget_secs;
    j["force_recompute"] = config.force_recompute;
    return j;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
    ExperimentConfig config;
    config.family = family_from_name(j.value("family", "grid"));
    config.input_path = j.value("input", std::string());
    config.n = j.value("n", std::size_t(36));
    config.delta = j.value("delta", 4u);
    config.colors = j.value("colors", 2u);
    config.profile = j.value("profile", std::string("csqrt:1"));
    config.mode = j.value("mode", std::string("dense")) == "sparse" ? HostMode::Sparse
                                                                    : HostMode::Dense;
    config.color_strategy = j.value("color_strategy", std::string("random"));
    config.p = j.value("p", 1.0);
    config.m = j.value("m", 0u);
    config.rho = j.value("rho", 0.0);
    config.epsilon = j.value("epsilon", 0.125);
    config.mu = j.value("mu", 0.0);
    config.lambda = j.value("lambda", 0.25);
    config.trials = j.value("trials", 10u);
    config.seed = j.value("seed", std::uint64_t(0));
    config.budget_secs = j.value("budget_secs", 30.0);
    config.force_recompute = j.value("force_recompute", false);
    return config;
}

Graph random_partial_ktree(std::size_t n, std::uint32_t width, std::uint32_t delta,
                           std::uint64_t seed) {
    if (width < 1) throw InputError("random_partial_ktree: width must be >= 1");
    if (delta < width) throw InputError("random_partial_ktree: need delta >= width");
    if (n < width + 1) throw InputError("random_partial_ktree: need n >= width + 1");

    Rng rng(Rng::derive(seed, 0x7c7ee));
    // grow a width-tree, then prune for the degree cap
    std::vector<std::set<Vertex>> adj(n);
    auto connect = [&](Vertex a, Vertex b) {
        adj[a].insert(b);
        adj[b].insert(a);
    };
    std::vector<std::vector<Vertex>> cliques;
    for (std::size_t i = 0; i <= width; ++i)
        for (std::size_t j = i + 1; j <= width; ++j)
            connect(static_cast<Vertex>(i), static_cast<Vertex>(j));
    for (std::size_t skip = 0; skip <= width; ++skip) {
        std::vector<Vertex> clique;
        for (std::size_t i = 0; i <= width; ++i)
            if (i != skip) clique.push_back(static_cast<Vertex>(i));
        cliques.push_back(clique);
    }
    for (std::size_t v = width + 1; v < n; ++v) {
        const auto& pick = cliques[static_cast<std::size_t>(rng.below(cliques.size()))];
        for (Vertex u : pick) connect(static_cast<Vertex>(v), u);
        for (std::size_t drop = 0; drop < pick.size(); ++drop) {
            std::vector<Vertex> next;
            for (std::size_t i = 0; i < pick.size(); ++i)
                if (i != drop) next.push_back(pick[i]);
            next.push_back(static_cast<Vertex>(v));
            cliques.push_back(std::move(next));
        }
    }

    // prune: drop edges at overfull vertices, highest neighbor first, keeping
    // the initial clique intact so the treewidth stays exactly `width`
    auto protected_edge = [&](Vertex a, Vertex b) {
        return a <= width && b <= width;
    };
    for (std::size_t v = n; v-- > 0;) {
        while (adj[v].size() > delta) {
            Vertex drop = UINT32_MAX;
            for (auto it = adj[v].rbegin(); it != adj[v].rend(); ++it)
                if (!protected_edge(static_cast<Vertex>(v), *it)) {
                    drop = *it;
                    break;
                }
            if (drop == UINT32_MAX) break;
            adj[v].erase(drop);
            adj[drop].erase(static_cast<Vertex>(v));
        }
    }

    EdgeList edges;
    for (std::size_t v = 0; v < n; ++v)
        for (Vertex w : adj[v])
            if (v < w) edges.emplace_back(static_cast<Vertex>(v), w);
    return Graph(n, std::move(edges));
}

Instance natural_block_witness(const Graph& h, std::uint32_t s, bool cyclic) {
    Instance instance;
    instance.graph = h;
    const std::size_t n = h.vertex_count();
    const std::size_t blocks = (n + s - 1) / s;
    if (cyclic && blocks >= 3)
        instance.witness_base = cycle_graph(blocks);
    else if (blocks >= 2)
        instance.witness_base = path_graph(blocks);
    else
        instance.witness_base = Graph(1, {});
    instance.witness_s = s;
    instance.witness_map.reserve(n);
    for (std::size_t v = 0; v < n; ++v)
        instance.witness_map.emplace_back(static_cast<Vertex>(v / s),
                                          static_cast<std::uint32_t>(v % s));
    return instance;
}

Instance generate_instance(InstanceFamily family, std::size_t n, std::uint32_t delta,
                           std::uint64_t seed, const std::string& path) {
    Instance instance;
    switch (family) {
        case InstanceFamily::Grid: {
            auto side = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
            if (side < 1 || side * side != n)
                throw InputError("grid family needs a square n, got " + std::to_string(n));
            instance.graph = grid_graph(side, side);
            instance.witness_base = path_graph(side);
            instance.witness_s = static_cast<std::uint32_t>(side);
            instance.witness_map.reserve(n);
            for (std::size_t r = 0; r < side; ++r)
                for (std::size_t c = 0; c < side; ++c)
                    instance.witness_map.emplace_back(static_cast<Vertex>(c),
                                                      static_cast<std::uint32_t>(r));
            break;
        }
        case InstanceFamily::RandomBoundedTw: {
            std::uint32_t width = std::min<std::uint32_t>(3, delta);
            instance.graph = random_partial_ktree(n, width, delta, seed);
            break;
        }
        case InstanceFamily::FromFile: {
            instance.graph = read_graph_file(path);
            if (instance.graph.max_degree() > delta)
                throw InputError("from-file instance exceeds the degree bound");
            break;
        }
    }
    return instance;
}

namespace {

struct PipelineContext {
    Graph h;
    Graph base;                                     // witness base (tree or cycle)
    std::vector<std::pair<Vertex, std::uint32_t>> psi;
    std::uint32_t s = 1;
    std::vector<Vertex> node_of;
    std::vector<std::uint32_t> class_of;            // dense mode: proper class per node
    Graph pattern;                                  // J
    std::uint32_t pattern_width = 1;                // delta+1 (dense) or delta_tilde (sparse)
    std::optional<HPreparation> prep;               // sparse mode
};

// shared per-experiment setup: witness, classes, pattern graph
PipelineContext build_context(const ExperimentConfig& config, const Instance& instance,
                              nlohmann::json& certificate_out) {
    PipelineContext ctx;
    ctx.h = instance.graph;

    if (instance.witness_base) {
        ctx.base = *instance.witness_base;
        ctx.psi = instance.witness_map;
        ctx.s = instance.witness_s;
        ProductEmbedding pe;
        pe.tree = ctx.base;
        pe.clique_size = ctx.s;
        pe.map = ctx.psi;
        pe.source = ctx.h;
        if (ctx.base.is_tree()) {
            auto report = verify_product_embedding(pe);
            certificate_out["witness"] = to_json(report);
        }
    } else {
        auto profile = TreewidthProfile::parse(config.profile);
        ProductEmbedding pe = embed_into_product(ctx.h, config.delta, profile);
        auto report = verify_product_embedding(pe);
        certificate_out["witness"] = to_json(report);
        certificate_out["product_embedding"] = pe.certificate;
        ctx.base = pe.tree;
        ctx.psi = pe.map;
        ctx.s = pe.clique_size;
    }

    ctx.node_of.resize(ctx.h.vertex_count());
    for (std::size_t v = 0; v < ctx.h.vertex_count(); ++v) ctx.node_of[v] = ctx.psi[v].first;

    if (config.mode == HostMode::Dense) {
        ctx.pattern_width = config.delta + 1;
        // per-node proper classes
        ctx.class_of.assign(ctx.h.vertex_count(), 0);
        for (std::size_t node = 0; node < ctx.base.vertex_count(); ++node) {
            std::vector<Vertex> members;
            for (std::size_t v = 0; v < ctx.h.vertex_count(); ++v)
                if (ctx.node_of[v] == node) members.push_back(static_cast<Vertex>(v));
            if (members.empty()) continue;
            Graph local = induced_subgraph(ctx.h, members);
            std::vector<Vertex> order(members.size());
            for (std::size_t i = 0; i < members.size(); ++i) order[i] = static_cast<Vertex>(i);
            auto colors = greedy_coloring(local, order);
            for (std::size_t i = 0; i < members.size(); ++i)
                ctx.class_of[members[i]] = colors[i];
        }
        ctx.pattern = strong_product(ctx.base, complete_graph(ctx.pattern_width));
    } else {
        ctx.prep = prepare_h(ctx.h, ctx.base, ctx.psi, ctx.s, config.delta);
        ctx.pattern_width = ctx.prep->delta_tilde;
        ctx.pattern = strong_product(ctx.base, complete_graph(ctx.pattern_width));
    }
    return ctx;
}

TrialOutcome run_trial(const ExperimentConfig& config, const PipelineContext& ctx,
                       const ColoredHost& bare_host, std::uint32_t trial) {
    TrialOutcome outcome;
    outcome.trial = trial;
    outcome.seed = config.seed ^ static_cast<std::uint64_t>(trial);

    const double rho = config.rho > 0 ? config.rho : 1.0 / (2.0 * config.colors);
    const auto budget = std::chrono::duration<double>(config.budget_secs);
    auto stage_start = std::chrono::steady_clock::now();
    auto stage_guard = [&](const char* stage) {
        if (std::chrono::steady_clock::now() - stage_start > budget) {
            outcome.stage = "budget";
            outcome.detail = {{"at", stage}};
            return true;
        }
        stage_start = std::chrono::steady_clock::now();
        return false;
    };

    ColorStrategy strategy = config.color_strategy == "adversarial"
                                 ? ColorStrategy::AdversarialMajority
                                 : ColorStrategy::Random;
    ColoredHost colored = color_host(bare_host, config.colors, strategy, outcome.seed);
    if (stage_guard("color")) return outcome;

    StructureParams sparams;
    sparams.epsilon = config.epsilon;
    sparams.alpha = rho;
    sparams.lambda = config.lambda;
    sparams.seed = outcome.seed;
    auto found = find_monochromatic_dense_structure(colored, ctx.pattern, sparams);
    if (stage_guard("structure")) return outcome;
    if (std::holds_alternative<StructureFailure>(found)) {
        outcome.stage = "structure";
        outcome.detail = std::get<StructureFailure>(found).diagnostics;
        return outcome;
    }
    const auto& structure = std::get<MonoStructure>(found);

    EmbeddingMap map;
    if (config.mode == HostMode::Dense) {
        auto dense = dense_embed(colored, structure, ctx.h, ctx.base, ctx.node_of, ctx.class_of,
                                 config.delta, config.colors);
        if (stage_guard("embed")) return outcome;
        if (!dense.success) {
            outcome.stage = "embed";
            outcome.detail = dense.failure;
            return outcome;
        }
        map = dense.map;
    } else {
        SparseParams params;
        params.rho = rho;
        params.p = config.p;
        params.mu = config.mu > 0 ? config.mu
                                  : 1.0 / (4.0 * config.delta * config.delta);
        params.eps_ladder = {config.epsilon};
        params.certified = true;
        params.recompute_candidates =
            config.force_recompute || bare_host.graph.vertex_count() <= 200;
        params.seed = outcome.seed;
        auto sparse = sparse_embed(colored, structure, ctx.pattern, ctx.h, *ctx.prep, params);
        if (stage_guard("embed")) return outcome;
        outcome.detail["monotone"] = sparse.all_monotone;
        outcome.detail["bounds"] = sparse.all_bounds;
        outcome.detail["formula"] = sparse.all_formula;
        if (!sparse.success) {
            outcome.stage = "embed";
            outcome.detail["failure"] = sparse.failure;
            return outcome;
        }
        map = sparse.map;
    }

    auto verification = verify_embedding_map(colored, ctx.h, map);
    if (!verification.pass) {
        outcome.stage = "verify";
        outcome.detail["verify"] = to_json(verification);
        return outcome;
    }
    outcome.success = true;
    outcome.verified = true;
    outcome.detail["color"] = map.color;
    return outcome;
}

} // namespace

nlohmann::json report_to_json(const ExperimentReport& report, bool include_timing) {
    nlohmann::json j;
    j["config"] = report.config;
    j["structure_certificate"] = report.structure_certificate;
    j["host"] = report.host;
    auto trials = nlohmann::json::array();
    for (const auto& t : report.trials)
        trials.push_back({{"trial", t.trial},
                          {"seed", t.seed},
                          {"success", t.success},
                          {"stage", t.stage},
                          {"verified", t.verified},
                          {"detail", t.detail}});
    j["trials"] = trials;
    j["aggregate"] = {{"successes", report.successes},
                      {"trials", report.trials.size()},
                      {"success_rate", report.success_rate},
                      {"ci_low", report.rate_ci_low},
                      {"ci_high", report.rate_ci_high}};
    j["invariants"] = report.invariant_summary;
    if (include_timing) j["wall_ms"] = report.wall_ms;
    return j;
}

std::string report_to_csv(const ExperimentReport& report) {
    std::ostringstream out;
    out << "trial,seed,success,stage,verified\n";
    for (const auto& t : report.trials)
        out << t.trial << "," << t.seed << "," << (t.success ? 1 : 0) << "," << t.stage << ","
            << (t.verified ? 1 : 0) << "\n";
    return out.str();
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
    auto start = std::chrono::steady_clock::now();
    ExperimentReport report;
    report.config = config_to_json(config);

    Instance instance =
        generate_instance(config.family, config.n, config.delta, config.seed, config.input_path);
    PipelineContext ctx = build_context(config, instance, report.structure_certificate);

    std::uint32_t m = config.m;
    if (m == 0) m = config.mode == HostMode::Dense ? 30 * ctx.s : 8 * ctx.s;

    const bool rebuild_per_trial = config.p < 1.0;
    ColoredHost shared_host;
    if (!rebuild_per_trial)
        shared_host = build_blowup_host(ctx.pattern, m, config.p, config.seed,
                                        config.mode == HostMode::Dense);

    auto host_edges = [&](const ColoredHost& host) {
        report.host["vertices"] = host.graph.vertex_count();
        report.host["edges"] = host.graph.edge_count();
        double tau = static_cast<double>(ctx.base.vertex_count());
        double s = static_cast<double>(ctx.s);
        double dense_formula = tau * s * s;
        report.host["tau"] = tau;
        report.host["s"] = ctx.s;
        report.host["m"] = m;
        report.host["tau_s2"] = dense_formula;
        report.host["edges_over_tau_s2"] =
            static_cast<double>(host.graph.edge_count()) / dense_formula;
        if (config.mode == HostMode::Sparse && s > 1) {
            double sparse_formula =
                tau * s * s * std::pow(std::log(s) / s, 1.0 / config.delta);
            report.host["sparse_formula"] = sparse_formula;
            report.host["edges_over_sparse_formula"] =
                static_cast<double>(host.graph.edge_count()) / sparse_formula;
        }
    };
    if (!rebuild_per_trial) host_edges(shared_host);

    // trial-level parallelism; aggregation order fixed by trial index
    std::uint32_t threads = config.threads;
    if (threads == 0)
        threads = std::min<std::uint32_t>(std::max(1u, std::thread::hardware_concurrency()), 8);
    threads = std::min(threads, std::max(config.trials, 1u));

    report.trials.resize(config.trials);
    std::atomic<std::uint32_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::uint32_t t = next.fetch_add(1);
            if (t >= config.trials) break;
            if (rebuild_per_trial) {
                ColoredHost host =
                    build_blowup_host(ctx.pattern, m, config.p,
                                      Rng::derive(config.seed, 0xb10b ^ t),
                                      config.mode == HostMode::Dense);
                report.trials[t] = run_trial(config, ctx, host, t);
            } else {
                report.trials[t] = run_trial(config, ctx, shared_host, t);
            }
        }
    };
    if (threads <= 1 || config.trials <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::uint32_t i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& thread : pool) thread.join();
    }
    if (rebuild_per_trial && config.trials > 0) {
        ColoredHost host = build_blowup_host(ctx.pattern, m, config.p,
                                             Rng::derive(config.seed, 0xb10b ^ 0u),
                                             config.mode == HostMode::Dense);
        host_edges(host);
    }

    bool monotone = true, bounds = true, formula = true;
    for (const auto& t : report.trials) {
        if (t.success) ++report.successes;
        if (t.detail.contains("monotone")) monotone = monotone && t.detail["monotone"].get<bool>();
        if (t.detail.contains("bounds")) bounds = bounds && t.detail["bounds"].get<bool>();
        if (t.detail.contains("formula")) formula = formula && t.detail["formula"].get<bool>();
    }
    if (config.mode == HostMode::Sparse) {
        report.invariant_summary["all_monotone"] = monotone;
        report.invariant_summary["all_bounds"] = bounds;
        report.invariant_summary["all_formula"] = formula;
    }
    const double trials = std::max<double>(1, config.trials);
    report.success_rate = static_cast<double>(report.successes) / trials;
    // normal-approximation binomial interval
    double se = std::sqrt(report.success_rate * (1 - report.success_rate) / trials);
    report.rate_ci_low = std::max(0.0, report.success_rate - 1.96 * se);
    report.rate_ci_high = std::min(1.0, report.success_rate + 1.96 * se);

    report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                               start)
                         .count();
    return report;
}

} // namespace treeram
