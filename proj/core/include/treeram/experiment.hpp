#ifndef TREERAM_EXPERIMENT_HPP
#define TREERAM_EXPERIMENT_HPP

#include <optional>
#include <string>

#include "treeram/product_embed.hpp"
#include "treeram/sparse_embed.hpp"

namespace treeram {

enum class InstanceFamily { Grid, RandomBoundedTw, FromFile };
enum class HostMode { Dense, Sparse };

struct ExperimentConfig {
    InstanceFamily family = InstanceFamily::Grid;
    std::string input_path;      // from-file family
    std::size_t n = 36;
    std::uint32_t delta = 4;
    std::uint32_t colors = 2;    // k
    std::string profile = "csqrt:1";
    HostMode mode = HostMode::Dense;
    std::string color_strategy = "random"; // random | adversarial
    double p = 1.0;
    std::uint32_t m = 0;         // blow-up part size; 0 = auto
    double rho = 0;              // 0 = auto 1/(2k)
    double epsilon = 0.125;
    double mu = 0;               // 0 = auto 1/(4*delta^2)
    double lambda = 0.25;
    std::uint32_t trials = 10;
    std::uint64_t seed = 0;
    double budget_secs = 30;     // per pipeline stage
    std::uint32_t threads = 0;   // 0 = auto
    bool force_recompute = false; // full candidate recomputation in sparse runs
};

nlohmann::json config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const nlohmann::json& j);

struct Instance {
    Graph graph;
    // natural product witness, when the family provides one
    std::optional<Graph> witness_base;
    std::vector<std::pair<Vertex, std::uint32_t>> witness_map;
    std::uint32_t witness_s = 0;
};

Instance generate_instance(InstanceFamily family, std::size_t n, std::uint32_t delta,
                           std::uint64_t seed, const std::string& path = "");

// Random width-w partial k-tree with an intact K_{w+1} (so the treewidth is
// exactly w) and maximum degree at most delta (requires delta >= w).
Graph random_partial_ktree(std::size_t n, std::uint32_t width, std::uint32_t delta,
                           std::uint64_t seed);

// Blocks of s consecutive vertices; base is a path, or a cycle for graphs
// whose closing edge joins the last block to the first.
Instance natural_block_witness(const Graph& h, std::uint32_t s, bool cyclic);

struct TrialOutcome {
    std::uint32_t trial = 0;
    std::uint64_t seed = 0;
    bool success = false;
    std::string stage; // empty on success; structure|embed|verify|budget
    bool verified = false;
    nlohmann::json detail = nlohmann::json::object();
};

struct ExperimentReport {
    nlohmann::json config = nlohmann::json::object();
    nlohmann::json structure_certificate = nlohmann::json::object();
    nlohmann::json host = nlohmann::json::object();
    std::vector<TrialOutcome> trials;
    std::size_t successes = 0;
    double success_rate = 0;
    double rate_ci_low = 0, rate_ci_high = 0;
    nlohmann::json invariant_summary = nlohmann::json::object();
    double wall_ms = 0; // excluded from the canonical serialization
};

// Canonical report bytes are timing-free so fixed (config, seed) reruns are
// byte-identical; pass include_timing for human-facing output.
nlohmann::json report_to_json(const ExperimentReport& report, bool include_timing = false);

std::string report_to_csv(const ExperimentReport& report);

ExperimentReport run_experiment(const ExperimentConfig& config);

} // namespace treeram

#endif
