#ifndef TREERAM_PARTITION_TREE_HPP
#define TREERAM_PARTITION_TREE_HPP

#include <optional>

#include "treeram/separator.hpp"

namespace treeram {

// Reach parameter k = ceil(log2(Delta)) + 2 and bag budget
// s = floor(k + k * sum_{i=0}^{ceil(log_{3/2} n)} (t((2/3)^i n) + 1)).
struct SParameters {
    std::size_t n = 0;
    std::uint32_t delta = 2;
    std::uint32_t k = 3;
    std::uint64_t s = 0;
    double sum_value = 0;  // the inner sum
    int terms = 0;         // ceil(log_{3/2} n) + 1
    // present when the profile carries a scaling exponent alpha
    std::optional<double> scaled_upper; // k + k/(1-(2/3)^alpha) t(n) + k(ceil(log_{3/2}n)+1)
    std::optional<double> scaled_lower; // k (t(n) + 1)
    const char* case_tag = "i";
};

SParameters compute_s(std::size_t n, std::uint32_t delta, const TreewidthProfile& profile);

// Rooted binary tree with a bag per node. Bags partition V(G); non-leaf bags
// have exactly 2s vertices, leaves at most 2s; adjacent G-vertices sit in
// bags at tree distance at most k.
struct VertexPartitionTree {
    Graph tree;
    std::vector<std::int32_t> parent;         // -1 at the root (node 0)
    std::vector<std::vector<Vertex>> bags;    // sorted
    std::uint32_t k = 3;
    std::uint64_t s = 0;
};

CertificateReport verify_partition_tree(const Graph& g, const VertexPartitionTree& vpt);

// Recursive construction: colored separator on the running class sequence,
// a 2s-bag X containing C_1 ∪ S, class shift C_i <- C_{i+1}, and a fresh
// neighborhood class N(X) at index k. Class budgets |C_i| <= 2^{i-1} s are
// asserted at every call.
VertexPartitionTree recursive_partition(const Graph& g, std::uint32_t delta,
                                        const TreewidthProfile& profile);

// Contracts depth-k windows of a rooted binary tree into a host tree T' and
// maps every vertex to the parent block of its own block, so vertices at tree
// distance <= k land on equal or adjacent T' nodes. The returned multiplicity
// is the max number of vertices sharing a T' node (at most 2^{2k}); the
// host degree satisfies Delta(T') <= 1 + 2^k. k = 1 is the identity.
struct TreePowerFactorization {
    Graph tree;                    // T'
    std::vector<Vertex> node_map;  // V(T) -> V(T')
    std::uint32_t multiplicity = 1;
};

TreePowerFactorization tree_power_factorization(const Graph& tree,
                                                const std::vector<std::int32_t>& parent,
                                                std::uint32_t k);

CertificateReport verify_tree_power(const Graph& tree, std::uint32_t k,
                                    const TreePowerFactorization& factorization);

} // namespace treeram

#endif
