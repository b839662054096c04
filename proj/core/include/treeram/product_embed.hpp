#ifndef TREERAM_PRODUCT_EMBED_HPP
#define TREERAM_PRODUCT_EMBED_HPP

#include "treeram/partition_tree.hpp"
#include "treeram/product_embedding.hpp"

namespace treeram {

// Full pipeline: compute_s -> recursive_partition -> tree_power_factorization
// -> slot assignment. Graphs with n <= 2s short-circuit to a one-node tree
// with clique size n. The embedded certificate records k, s, s', the measured
// host tree size/degree and the bounds n/s + 1 and 1 + 2^k.
ProductEmbedding embed_into_product(const Graph& g, std::uint32_t delta,
                                    const TreewidthProfile& profile);

} // namespace treeram

#endif
