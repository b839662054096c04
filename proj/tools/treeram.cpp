// Command-line front end: decompose, necklace, host, color, embed,
// experiment, verify. Exit codes: 0 success, 1 verified-failure result,
// 2 usage or parse errors.

#include <fstream>
#include <map>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "treeram/dense_embed.hpp"
#include "treeram/errors.hpp"
#include "treeram/experiment.hpp"
#include "treeram/io.hpp"
#include "treeram/product_embed.hpp"

using namespace treeram;
using nlohmann::json;

namespace {

void emit(const json& payload, const std::string& output) {
    if (output.empty()) {
        std::cout << payload.dump(2) << "\n";
    } else {
        write_text_file(output, payload.dump(2) + "\n");
    }
}

json load_json(const std::string& path) {
    return json::parse(read_text_file(path));
}

int cmd_decompose(const std::string& input, const std::string& output,
                  const std::string& profile_text, std::uint32_t delta) {
    Graph g = read_graph_file(input);
    auto profile = TreewidthProfile::parse(profile_text);
    std::uint32_t bound = delta ? delta : std::max<std::uint32_t>(2, g.max_degree());
    ProductEmbedding pe = embed_into_product(g, bound, profile);
    auto report = verify_product_embedding(pe);

    json out = product_embedding_to_json(pe);
    out["k"] = pe.certificate.value("k", 0);
    out["s"] = pe.certificate.value("s", 0);
    out["s_prime"] = pe.clique_size;
    auto tree_edges = json::array();
    for (const auto& [u, v] : pe.tree.edges()) tree_edges.push_back({u, v});
    out["tree_edges"] = tree_edges;
    out["verification"] = to_json(report);
    emit(out, output);
    return report.pass ? 0 : 1;
}

int cmd_necklace(const std::string& colors_text, std::uint32_t k, double budget_secs,
                 const std::string& output) {
    // one-line color string: letters/digits are colors by first appearance,
    // '.', '-', '_' uncolored
    ColorSequence colors;
    std::map<char, int> palette;
    for (char c : colors_text) {
        if (c == '.' || c == '-' || c == '_') {
            colors.push_back(-1);
            continue;
        }
        auto [it, fresh] = palette.try_emplace(c, static_cast<int>(palette.size()));
        colors.push_back(it->second);
    }
    if (k == 0) k = std::max<std::uint32_t>(1, palette.size());
    if (palette.size() > k)
        throw InputError("color string uses " + std::to_string(palette.size()) +
                         " colors, but k = " + std::to_string(k));

    auto budget_steps = static_cast<std::uint64_t>(budget_secs * 2e6);
    NecklaceSplit split = necklace_split(colors, k, budget_steps);
    auto report = verify_necklace_split(colors, k, split);

    json out;
    out["n"] = split.n;
    out["k"] = k;
    out["cuts"] = split.cuts;
    out["side"] = split.side;
    out["r"] = split.r();
    out["x"] = split.x_positions();
    out["y"] = split.y_positions();
    out["verification"] = to_json(report);
    emit(out, output);
    return report.pass ? 0 : 1;
}

int cmd_host(const std::string& input, std::uint32_t m, double p, std::uint64_t seed,
             const std::string& within, const std::string& output) {
    Graph base = read_graph_file(input);
    ColoredHost host = build_blowup_host(base, m, p, seed, within == "complete");
    emit(host_to_json(host), output);
    return 0;
}

int cmd_color(const std::string& input, std::uint32_t k, const std::string& strategy,
              std::uint64_t seed, const std::string& file, const std::string& output) {
    ColoredHost host = host_from_json(load_json(input));
    ColoredHost colored;
    if (strategy == "from-file") {
        EdgeColoring coloring = read_coloring_file(file, host.graph);
        if (coloring.k > k) throw InputError("coloring file uses more than k colors");
        colored = color_host(host, k, ColorStrategy::FromFile, seed, &coloring.colors);
    } else if (strategy == "adversarial") {
        colored = color_host(host, k, ColorStrategy::AdversarialMajority, seed);
    } else {
        colored = color_host(host, k, ColorStrategy::Random, seed);
    }
    emit(host_to_json(colored), output);
    return 0;
}

int cmd_embed(const std::string& host_path, const std::string& h_path, std::uint32_t s,
              const std::string& mode, std::uint32_t delta, double rho, double epsilon,
              double lambda, std::uint64_t seed, const std::string& output) {
    ColoredHost host = host_from_json(load_json(host_path));
    if (!host.coloring) throw InputError("embed: host must be colored first");
    Graph h = read_graph_file(h_path);
    if (delta == 0) delta = std::max<std::uint32_t>(2, h.max_degree());

    // blocks of s consecutive vertices as the witness
    bool cyclic = false;
    {
        // treat a closing edge {0, n-1} as a cycle-shaped instance
        cyclic = h.has_edge(0, static_cast<Vertex>(h.vertex_count() - 1)) &&
                 h.vertex_count() > 2 * s;
    }
    Instance instance = natural_block_witness(h, s, cyclic);

    ExperimentConfig config;
    config.mode = mode == "sparse" ? HostMode::Sparse : HostMode::Dense;
    config.delta = delta;
    config.colors = host.coloring->k;
    config.p = host.p;
    config.rho = rho;
    config.epsilon = epsilon;
    config.lambda = lambda;
    config.seed = seed;

    json result;
    StructureParams sparams;
    sparams.epsilon = epsilon;
    sparams.alpha = rho > 0 ? rho : 1.0 / (2.0 * config.colors);
    sparams.lambda = lambda;
    sparams.seed = seed;

    if (config.mode == HostMode::Dense) {
        std::vector<Vertex> node_of(h.vertex_count());
        for (std::size_t v = 0; v < h.vertex_count(); ++v)
            node_of[v] = instance.witness_map[v].first;
        std::vector<std::uint32_t> class_of(h.vertex_count(), 0);
        for (std::size_t node = 0; node < instance.witness_base->vertex_count(); ++node) {
            std::vector<Vertex> members;
            for (std::size_t v = 0; v < h.vertex_count(); ++v)
                if (node_of[v] == node) members.push_back(static_cast<Vertex>(v));
            if (members.empty()) continue;
            Graph local = induced_subgraph(h, members);
            std::vector<Vertex> order(members.size());
            for (std::size_t i = 0; i < members.size(); ++i) order[i] = static_cast<Vertex>(i);
            auto colors = greedy_coloring(local, order);
            for (std::size_t i = 0; i < members.size(); ++i) class_of[members[i]] = colors[i];
        }
        Graph pattern = strong_product(*instance.witness_base, complete_graph(delta + 1));
        auto found = find_monochromatic_dense_structure(host, pattern, sparams);
        if (std::holds_alternative<StructureFailure>(found)) {
            result["success"] = false;
            result["stage"] = "structure";
            result["diagnostics"] = std::get<StructureFailure>(found).diagnostics;
            emit(result, output);
            return 1;
        }
        auto dense = dense_embed(host, std::get<MonoStructure>(found), h,
                                 *instance.witness_base, node_of, class_of, delta,
                                 config.colors);
        if (!dense.success) {
            result["success"] = false;
            result["stage"] = "embed";
            result["failure"] = dense.failure;
            emit(result, output);
            return 1;
        }
        auto verification = verify_embedding_map(host, h, dense.map);
        result["success"] = true;
        result["embedding"] = embedding_map_to_json(dense.map);
        result["verification"] = to_json(verification);
        result["h"] = {{"n", h.vertex_count()}};
        emit(result, output);
        return verification.pass ? 0 : 1;
    }

    HPreparation prep = prepare_h(h, *instance.witness_base, instance.witness_map, s, delta);
    Graph pattern = strong_product(*instance.witness_base, complete_graph(prep.delta_tilde));
    auto found = find_monochromatic_dense_structure(host, pattern, sparams);
    if (std::holds_alternative<StructureFailure>(found)) {
        result["success"] = false;
        result["stage"] = "structure";
        result["diagnostics"] = std::get<StructureFailure>(found).diagnostics;
        emit(result, output);
        return 1;
    }
    SparseParams params;
    params.rho = sparams.alpha;
    params.p = host.p;
    params.mu = 1.0 / (4.0 * delta * delta);
    params.eps_ladder = {epsilon};
    params.seed = seed;
    params.recompute_candidates = host.graph.vertex_count() <= 200;
    auto sparse = sparse_embed(host, std::get<MonoStructure>(found), pattern, h, prep, params);
    result["success"] = sparse.success;
    result["invariants"] = {{"monotone", sparse.all_monotone},
                            {"bounds", sparse.all_bounds},
                            {"formula", sparse.all_formula}};
    if (!sparse.success) {
        result["stage"] = "embed";
        result["failure"] = sparse.failure;
        emit(result, output);
        return 1;
    }
    auto verification = verify_embedding_map(host, h, sparse.map);
    result["embedding"] = embedding_map_to_json(sparse.map);
    result["verification"] = to_json(verification);
    emit(result, output);
    return verification.pass ? 0 : 1;
}

int cmd_experiment(const std::string& config_path, const json& overrides,
                   const std::string& output, const std::string& csv, bool timing) {
    json merged = config_path.empty() ? json::object() : load_json(config_path);
    for (const auto& [key, value] : overrides.items()) merged[key] = value;
    ExperimentConfig config = config_from_json(merged);
    ExperimentReport report = run_experiment(config);
    emit(report_to_json(report, timing), output);
    if (!csv.empty()) write_text_file(csv, report_to_csv(report));
    std::cerr << "experiment: " << report.successes << "/" << report.trials.size()
              << " trials succeeded in " << report.wall_ms << " ms\n";
    return 0;
}

int cmd_verify(const std::string& input, const std::string& host_path,
               const std::string& h_path) {
    json payload = load_json(input);
    std::string type = payload.value("type", "");
    if (type == "product_embedding") {
        ProductEmbedding pe = product_embedding_from_json(payload);
        auto report = verify_product_embedding(pe);
        std::cout << to_json(report).dump(2) << "\n";
        return report.pass ? 0 : 1;
    }
    if (payload.contains("embedding")) {
        if (host_path.empty() || h_path.empty())
            throw InputError("verify: embedding results need --host and --h");
        ColoredHost host = host_from_json(load_json(host_path));
        Graph h = read_graph_file(h_path);
        EmbeddingMap map = embedding_map_from_json(payload.at("embedding"));
        auto report = verify_embedding_map(host, h, map);
        std::cout << to_json(report).dump(2) << "\n";
        return report.pass ? 0 : 1;
    }
    throw InputError("verify: unrecognized certificate payload");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"treewidth product-structure and Ramsey embedding toolkit"};
    app.require_subcommand(1);

    std::string input, output, csv, profile = "csqrt:1", colors_text, within = "empty";
    std::string strategy = "random", coloring_file, mode = "dense", host_path, h_path;
    std::string config_path;
    std::uint32_t k = 0, m = 1, delta = 0, s = 4, trials = 0;
    std::uint64_t seed = 0;
    double p = 1.0, budget = 10.0, rho = 0, epsilon = 0.125, lambda = 0.25;
    bool timing = false;
    json overrides = json::object();

    auto* decompose = app.add_subcommand("decompose", "embed a graph into tree ⊠ K_s");
    decompose->add_option("--input", input)->required();
    decompose->add_option("--output", output);
    decompose->add_option("--profile", profile);
    decompose->add_option("--delta", delta);

    auto* necklace = app.add_subcommand("necklace", "split a colored sequence");
    necklace->add_option("--colors", colors_text)->required();
    necklace->add_option("--k", k);
    necklace->add_option("--budget-secs", budget);
    necklace->add_option("--output", output);

    auto* host = app.add_subcommand("host", "build a blow-up host");
    host->add_option("--input", input)->required();
    host->add_option("--m", m)->required();
    host->add_option("--p", p);
    host->add_option("--seed", seed);
    host->add_option("--within", within)->check(CLI::IsMember({"complete", "empty"}));
    host->add_option("--output", output);

    auto* color = app.add_subcommand("color", "color a host's edges");
    color->add_option("--input", input)->required();
    color->add_option("--k", k)->required();
    color->add_option("--strategy", strategy)
        ->check(CLI::IsMember({"random", "adversarial", "from-file"}));
    color->add_option("--seed", seed);
    color->add_option("--coloring", coloring_file);
    color->add_option("--output", output);

    auto* embed = app.add_subcommand("embed", "find a monochromatic embedding");
    embed->add_option("--host", host_path)->required();
    embed->add_option("--h", h_path)->required();
    embed->add_option("--s", s)->required();
    embed->add_option("--mode", mode)->check(CLI::IsMember({"dense", "sparse"}));
    embed->add_option("--delta", delta);
    embed->add_option("--rho", rho);
    embed->add_option("--epsilon", epsilon);
    embed->add_option("--lambda", lambda);
    embed->add_option("--seed", seed);
    embed->add_option("--output", output);

    auto* experiment = app.add_subcommand("experiment", "run a seeded experiment batch");
    experiment->add_option("--config", config_path);
    experiment->add_option("--output", output);
    experiment->add_option("--csv", csv);
    experiment->add_flag("--timing", timing);
    experiment->add_option("--family", [&overrides](CLI::results_t r) {
        overrides["family"] = r[0];
        return true;
    });
    experiment->add_option("--n", [&overrides](CLI::results_t r) {
        overrides["n"] = std::stoull(r[0]);
        return true;
    });
    experiment->add_option("--delta", [&overrides](CLI::results_t r) {
        overrides["delta"] = std::stoul(r[0]);
        return true;
    });
    experiment->add_option("--k", [&overrides](CLI::results_t r) {
        overrides["colors"] = std::stoul(r[0]);
        return true;
    });
    experiment->add_option("--mode", [&overrides](CLI::results_t r) {
        overrides["mode"] = r[0];
        return true;
    });
    experiment->add_option("--p", [&overrides](CLI::results_t r) {
        overrides["p"] = std::stod(r[0]);
        return true;
    });
    experiment->add_option("--m", [&overrides](CLI::results_t r) {
        overrides["m"] = std::stoul(r[0]);
        return true;
    });
    experiment->add_option("--trials", [&overrides](CLI::results_t r) {
        overrides["trials"] = std::stoul(r[0]);
        return true;
    });
    experiment->add_option("--seed", [&overrides](CLI::results_t r) {
        overrides["seed"] = std::stoull(r[0]);
        return true;
    });
    experiment->add_option("--input", [&overrides](CLI::results_t r) {
        overrides["input"] = r[0];
        return true;
    });
    experiment->add_option("--profile", [&overrides](CLI::results_t r) {
        overrides["profile"] = r[0];
        return true;
    });
    experiment->add_option("--budget-secs", [&overrides](CLI::results_t r) {
        overrides["budget_secs"] = std::stod(r[0]);
        return true;
    });

    auto* verify = app.add_subcommand("verify", "re-verify a certificate or embedding");
    verify->add_option("--input", input)->required();
    verify->add_option("--host", host_path);
    verify->add_option("--h", h_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (decompose->parsed()) return cmd_decompose(input, output, profile, delta);
        if (necklace->parsed()) return cmd_necklace(colors_text, k, budget, output);
        if (host->parsed()) return cmd_host(input, m, p, seed, within, output);
        if (color->parsed()) return cmd_color(input, k, strategy, seed, coloring_file, output);
        if (embed->parsed())
            return cmd_embed(host_path, h_path, s, mode, delta, rho, epsilon, lambda, seed,
                             output);
        if (experiment->parsed()) return cmd_experiment(config_path, overrides, output, csv, timing);
        if (verify->parsed()) return cmd_verify(input, host_path, h_path);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const BudgetError& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return 1;
    } catch (const CertificateFailure& e) {
        std::cerr << "certificate failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
