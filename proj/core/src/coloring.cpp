#include "treeram/coloring.hpp"

#include <algorithm>

#include "treeram/errors.hpp"

namespace treeram {

std::vector<std::uint32_t> greedy_coloring(const Graph& g, const std::vector<Vertex>& order) {
    const std::size_t n = g.vertex_count();
    if (order.size() != n) throw InputError("greedy_coloring: order is not a permutation");
    std::vector<bool> seen(n, false);
    for (Vertex v : order) {
        if (v >= n || seen[v]) throw InputError("greedy_coloring: order is not a permutation");
        seen[v] = true;
    }

    std::vector<std::uint32_t> color(n, UINT32_MAX);
    std::vector<std::uint32_t> used;
    for (Vertex v : order) {
        used.clear();
        for (Vertex w : g.neighbors(v))
            if (color[w] != UINT32_MAX) used.push_back(color[w]);
        std::sort(used.begin(), used.end());
        std::uint32_t c = 0;
        for (std::uint32_t u : used) {
            if (u > c) break;
            if (u == c) ++c;
        }
        color[v] = c;
    }
    return color;
}

bool is_proper_coloring(const Graph& g, const std::vector<std::uint32_t>& colors) {
    if (colors.size() != g.vertex_count()) return false;
    for (const auto& [u, v] : g.edges())
        if (colors[u] == colors[v]) return false;
    return true;
}

} // namespace treeram
