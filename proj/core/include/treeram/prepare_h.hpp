#ifndef TREERAM_PREPARE_H_HPP
#define TREERAM_PREPARE_H_HPP

#include "treeram/certificates.hpp"
#include "treeram/graph.hpp"

namespace treeram {

// Embedding-order preparation of H given a witness into base ⊠ K_s. Vertices
// are grouped by base vertex, properly colored in the third power of H (so
// same-color vertices are at H-distance >= 4), refined by left-degree, and the
// classes are concatenated along a BFS order of the base. Every base vertex
// owns exactly delta_tilde = Delta^4 + 2*Delta + 1 class slots, some empty.
struct HPreparation {
    std::uint32_t delta = 2;
    std::uint32_t delta_tilde = 21;
    std::vector<std::vector<Vertex>> classes;  // size v(base) * delta_tilde
    std::vector<std::uint32_t> class_of;       // H vertex -> class index
    std::vector<std::uint32_t> left_degree;    // per class, 0 for empty classes
    std::vector<Vertex> base_order;            // BFS order of the base from vertex 0
    std::vector<Vertex> class_to_base;         // class index -> base vertex
};

std::uint32_t delta_tilde_of(std::uint32_t delta);

// psi[v] = (base vertex, slot); must be a valid witness of H ⊆ base ⊠ K_s.
HPreparation prepare_h(const Graph& h, const Graph& base,
                       const std::vector<std::pair<Vertex, std::uint32_t>>& psi,
                       std::uint32_t s, std::uint32_t delta);

// Checks the partition, the distance >= 4 property inside classes, the
// equal-left-degree property and the per-base class budget.
CertificateReport verify_preparation(const Graph& h, const HPreparation& prep);

} // namespace treeram

#endif
