#ifndef TREERAM_COLORING_HPP
#define TREERAM_COLORING_HPP

#include <cstdint>
#include <vector>

#include "treeram/graph.hpp"

namespace treeram {

// Total assignment of colors in [0, k) to the edges of a graph, aligned with
// the graph's canonical sorted edge order.
struct EdgeColoring {
    std::uint32_t k = 1;
    std::vector<std::uint8_t> colors; // colors[i] colors graph.edges()[i]

    bool valid_for(const Graph& g) const {
        if (colors.size() != g.edge_count()) return false;
        for (auto c : colors)
            if (c >= k) return false;
        return true;
    }
};

// First-fit proper vertex coloring along the given order (a permutation of
// V(G)). Uses at most max_degree+1 colors and is deterministic in the order.
std::vector<std::uint32_t> greedy_coloring(const Graph& g, const std::vector<Vertex>& order);

bool is_proper_coloring(const Graph& g, const std::vector<std::uint32_t>& colors);

} // namespace treeram

#endif
