#include "treeram/product_embed.hpp"

#include <algorithm>

#include "treeram/errors.hpp"

namespace treeram {

ProductEmbedding embed_into_product(const Graph& g, std::uint32_t delta,
                                    const TreewidthProfile& profile) {
    if (g.max_degree() > delta)
        throw InputError("embed_into_product: graph degree exceeds the declared bound");
    const std::size_t n = g.vertex_count();

    ProductEmbedding pe;
    pe.source = g;

    if (n == 0) {
        pe.tree = Graph(1, {});
        pe.clique_size = 1;
        pe.certificate["degenerate"] = true;
        return pe;
    }

    SParameters params = compute_s(n, delta, profile);
    pe.certificate["k"] = params.k;
    pe.certificate["s"] = params.s;
    pe.certificate["case"] = params.case_tag;
    if (params.scaled_upper) {
        pe.certificate["scaled_upper"] = *params.scaled_upper;
        pe.certificate["scaled_lower"] = *params.scaled_lower;
    }

    if (n <= 2 * params.s) {
        // everything fits in one bag; the tree and the factorization collapse
        pe.tree = Graph(1, {});
        pe.clique_size = static_cast<std::uint32_t>(n);
        pe.map.reserve(n);
        for (std::size_t v = 0; v < n; ++v)
            pe.map.emplace_back(0, static_cast<std::uint32_t>(v));
        pe.certificate["degenerate"] = true;
        pe.certificate["s_prime"] = n;
        pe.certificate["multiplicity"] = 1;
        pe.certificate["tree_vertices"] = 1;
        pe.certificate["tree_max_degree"] = 0;
        pe.certificate["tree_vertices_bound"] = static_cast<double>(n) / params.s + 1.0;
        pe.certificate["tree_degree_bound"] = (1u << params.k) + 1;
        return pe;
    }

    VertexPartitionTree vpt = recursive_partition(g, delta, profile);
    TreePowerFactorization fact = tree_power_factorization(vpt.tree, vpt.parent, params.k);

    const std::uint64_t bag_stride = 2 * params.s;
    pe.tree = fact.tree;
    pe.clique_size = static_cast<std::uint32_t>(fact.multiplicity * bag_stride);

    // rank of each partition node among the nodes sharing its host image
    std::vector<std::uint32_t> rank(vpt.tree.vertex_count(), 0);
    {
        std::vector<std::uint32_t> counter(fact.tree.vertex_count(), 0);
        for (std::size_t v = 0; v < vpt.tree.vertex_count(); ++v)
            rank[v] = counter[fact.node_map[v]]++;
    }

    pe.map.assign(n, {0, 0});
    for (std::size_t node = 0; node < vpt.bags.size(); ++node) {
        Vertex image = fact.node_map[node];
        for (std::size_t i = 0; i < vpt.bags[node].size(); ++i) {
            Vertex v = vpt.bags[node][i];
            pe.map[v] = {image,
                         static_cast<std::uint32_t>(rank[node] * bag_stride + i)};
        }
    }

    pe.certificate["degenerate"] = false;
    pe.certificate["s_prime"] = pe.clique_size;
    pe.certificate["multiplicity"] = fact.multiplicity;
    pe.certificate["partition_nodes"] = vpt.tree.vertex_count();
    pe.certificate["tree_vertices"] = fact.tree.vertex_count();
    pe.certificate["tree_max_degree"] = fact.tree.max_degree();
    pe.certificate["tree_vertices_bound"] = static_cast<double>(n) / params.s + 1.0;
    pe.certificate["tree_degree_bound"] = (1u << params.k) + 1;
    return pe;
}

} // namespace treeram
