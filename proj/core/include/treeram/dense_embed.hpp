#ifndef TREERAM_DENSE_EMBED_HPP
#define TREERAM_DENSE_EMBED_HPP

#include "treeram/structure.hpp"

namespace treeram {

struct DenseResult {
    bool success = false;
    EmbeddingMap map;
    nlohmann::json log = nlohmann::json::object();
    nlohmann::json failure = nlohmann::json::object();
};

// Greedy vertex-by-vertex embedding of H into a monochromatic structure
// shaped like tree ⊠ K_{delta+1}. H vertex x (tree node t, class i) targets
// the structure subset of pattern vertex t*(delta+1)+i. A vertex is viable if
// unused and its color-degree into every unembedded neighbor's candidate set
// keeps that set above a 1/(4k) fraction; the lowest-index viable vertex is
// chosen. Failure reports the step and the starved vertex.
DenseResult dense_embed(const ColoredHost& host, const MonoStructure& structure, const Graph& h,
                        const Graph& tree, const std::vector<Vertex>& node_of,
                        const std::vector<std::uint32_t>& class_of, std::uint32_t delta,
                        std::uint32_t num_colors);

} // namespace treeram

#endif
