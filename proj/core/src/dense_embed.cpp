#include "treeram/dense_embed.hpp"

#include <algorithm>
#include <numeric>

#include "treeram/errors.hpp"

namespace treeram {

DenseResult dense_embed(const ColoredHost& host, const MonoStructure& structure, const Graph& h,
                        const Graph& tree, const std::vector<Vertex>& node_of,
                        const std::vector<std::uint32_t>& class_of, std::uint32_t delta,
                        std::uint32_t num_colors) {
    const std::size_t n = h.vertex_count();
    if (node_of.size() != n || class_of.size() != n)
        throw InputError("dense_embed: node/class assignment does not cover H");
    const std::uint32_t classes = delta + 1;

    auto pattern_index = [&](std::size_t v) {
        return node_of[v] * classes + class_of[v];
    };
    for (std::size_t v = 0; v < n; ++v) {
        if (node_of[v] >= tree.vertex_count()) throw InputError("dense_embed: node out of range");
        if (class_of[v] >= classes) throw InputError("dense_embed: class out of range");
        if (pattern_index(v) >= structure.subsets.size())
            throw InputError("dense_embed: structure does not cover the pattern");
    }
    for (const auto& [u, v] : h.edges()) {
        bool same_node = node_of[u] == node_of[v];
        if (same_node && class_of[u] == class_of[v])
            throw InputError("dense_embed: adjacent vertices share a class");
        if (!same_node && !tree.has_edge(node_of[u], node_of[v]))
            throw InputError("dense_embed: edge spans non-adjacent tree nodes");
    }

    auto adjacency = color_adjacency(host, structure.color);
    const std::size_t host_n = host.graph.vertex_count();

    std::vector<Bitset> candidates(n);
    std::vector<std::size_t> subset_size(n);
    for (std::size_t v = 0; v < n; ++v) {
        Bitset bits(host_n);
        for (Vertex w : structure.subsets[pattern_index(v)]) bits.set(w);
        subset_size[v] = bits.count();
        candidates[v] = std::move(bits);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
        if (node_of[l] != node_of[r]) return node_of[l] < node_of[r];
        if (class_of[l] != class_of[r]) return class_of[l] < class_of[r];
        return l < r;
    });

    const std::uint64_t factor = 4ULL * num_colors;
    Bitset used(host_n);
    std::vector<std::int64_t> image(n, -1);
    std::vector<std::uint32_t> embedded_neighbors(n, 0);

    DenseResult result;
    auto steps = nlohmann::json::array();
    for (std::size_t step = 0; step < order.size(); ++step) {
        std::size_t x = order[step];
        std::vector<std::size_t> open_neighbors;
        for (Vertex w : h.neighbors(static_cast<Vertex>(x)))
            if (image[w] < 0) open_neighbors.push_back(w);

        std::int64_t chosen = -1;
        auto host_candidates = candidates[x].to_vector();
        for (Vertex y : host_candidates) {
            if (used.test(y)) continue;
            bool viable = true;
            for (std::size_t w : open_neighbors) {
                std::size_t kept = adjacency[y].intersection_count(candidates[w]);
                if (factor * kept < candidates[w].count()) {
                    viable = false;
                    break;
                }
            }
            if (viable) {
                chosen = y;
                break;
            }
        }
        if (chosen < 0) {
            result.failure = {{"step", step},
                              {"vertex", x},
                              {"candidates_left", host_candidates.size()},
                              {"open_neighbors", open_neighbors.size()}};
            result.log["steps"] = steps;
            return result;
        }

        image[x] = chosen;
        used.set(static_cast<std::size_t>(chosen));
        std::size_t min_fraction_num = SIZE_MAX, min_fraction_den = 1;
        for (std::size_t w : open_neighbors) {
            candidates[w] &= adjacency[static_cast<std::size_t>(chosen)];
            ++embedded_neighbors[w];
        }
        // invariant: |C(z)| >= (1/4k)^i |U| for every unembedded z
        bool invariant_ok = true;
        for (std::size_t z = 0; z < n; ++z) {
            if (image[z] >= 0) continue;
            std::uint64_t scale = 1;
            for (std::uint32_t i = 0; i < embedded_neighbors[z]; ++i) scale *= factor;
            if (scale * candidates[z].count() < subset_size[z]) invariant_ok = false;
            if (candidates[z].count() * min_fraction_den <
                min_fraction_num * 1) { // track min candidate size
                min_fraction_num = candidates[z].count();
            }
        }
        steps.push_back({{"step", step},
                         {"vertex", x},
                         {"image", chosen},
                         {"invariant_ok", invariant_ok},
                         {"min_candidate", min_fraction_num == SIZE_MAX ? 0 : min_fraction_num}});
    }

    result.success = true;
    result.map.color = structure.color;
    result.map.image.assign(n, 0);
    for (std::size_t v = 0; v < n; ++v) result.map.image[v] = static_cast<Vertex>(image[v]);
    result.log["steps"] = steps;
    return result;
}

} // namespace treeram
