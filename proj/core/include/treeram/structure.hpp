#ifndef TREERAM_STRUCTURE_HPP
#define TREERAM_STRUCTURE_HPP

#include <optional>
#include <variant>

#include <json.hpp>

#include "treeram/blowup.hpp"
#include "treeram/certificates.hpp"
#include "treeram/density.hpp"

namespace treeram {

// Injective homomorphism pattern -> target (edges map to edges), smallest
// image in lexicographic backtracking order; nullopt if none exists.
std::optional<std::vector<Vertex>> injective_homomorphism(const Graph& pattern,
                                                          const Graph& target);

// One color plus, per pattern vertex, a base vertex of the host and a subset
// of its part such that every pattern edge spans a dense pair in that color.
struct MonoStructure {
    std::uint8_t color = 0;
    std::vector<Vertex> base_map;              // pattern vertex -> base vertex
    std::vector<std::vector<Vertex>> subsets;  // pattern vertex -> host vertices
};

struct StructureFailure {
    nlohmann::json diagnostics;
};

using StructureResult = std::variant<MonoStructure, StructureFailure>;

struct StructureParams {
    double epsilon = 0.125; // density slack
    double alpha = 0.25;    // density base
    double lambda = 0.25;   // subset fraction of each part
    std::uint32_t retries = 20;
    std::uint64_t seed = 0;
    SampleBudget budget = {};
    CheckMode mode = CheckMode::Sampled;
};

// Search: order colors by how many part-pairs they dominate (majority count),
// keep the base edges whose full-part density in that color clears the
// (alpha - eps) p threshold, look for an injective homomorphism of the target
// pattern into that base subgraph, then draw lambda-fraction subsets and
// certify every pattern edge with check_dense_pair, resampling subsets on
// failure.
StructureResult find_monochromatic_dense_structure(const ColoredHost& host,
                                                   const Graph& pattern,
                                                   const StructureParams& params);

// Final embedding artifact: injective map from a pattern graph into one color
// class of a host.
struct EmbeddingMap {
    std::uint8_t color = 0;
    std::vector<Vertex> image; // pattern vertex -> host vertex
};

CertificateReport verify_embedding_map(const ColoredHost& host, const Graph& pattern,
                                       const EmbeddingMap& map);

nlohmann::json embedding_map_to_json(const EmbeddingMap& map);
EmbeddingMap embedding_map_from_json(const nlohmann::json& j);

} // namespace treeram

#endif
