#ifndef TREERAM_PRODUCT_EMBEDDING_HPP
#define TREERAM_PRODUCT_EMBEDDING_HPP

#include <json.hpp>

#include "treeram/certificates.hpp"
#include "treeram/graph.hpp"

namespace treeram {

// Witness that `source` is a subgraph of tree ⊠ K_{clique_size}: each source
// vertex gets a (tree node, slot) coordinate. Valid iff the map is injective,
// the tree really is a tree, and every source edge lands on equal or adjacent
// tree nodes.
struct ProductEmbedding {
    Graph tree;
    std::uint32_t clique_size = 1;
    std::vector<std::pair<Vertex, std::uint32_t>> map; // source vertex -> (node, slot)
    Graph source;

    nlohmann::json certificate = nlohmann::json::object();
};

CertificateReport verify_product_embedding(const ProductEmbedding& pe);

nlohmann::json product_embedding_to_json(const ProductEmbedding& pe);
ProductEmbedding product_embedding_from_json(const nlohmann::json& j);

} // namespace treeram

#endif
