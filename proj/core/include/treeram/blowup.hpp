#ifndef TREERAM_BLOWUP_HPP
#define TREERAM_BLOWUP_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "treeram/bitset.hpp"
#include "treeram/coloring.hpp"
#include "treeram/graph.hpp"

namespace treeram {

// Blow-up of a base graph: part V_v = {v*m .. v*m + m - 1} per base vertex v.
// Between adjacent parts, edges are sampled independently with probability p
// (all present at p = 1); inside parts, complete or empty per the pipeline
// flag. The edge set is a deterministic function of (base, m, p, seed,
// within_complete), so hosts serialize as recipes.
struct ColoredHost {
    Graph graph;
    Graph base;
    std::uint32_t part_size = 1;
    double p = 1.0;
    std::uint64_t seed = 0;
    bool within_complete = false;
    std::optional<EdgeColoring> coloring;

    Vertex part_of(Vertex host_vertex) const { return host_vertex / part_size; }
    std::vector<Vertex> part(Vertex base_vertex) const {
        std::vector<Vertex> out(part_size);
        for (std::uint32_t i = 0; i < part_size; ++i) out[i] = base_vertex * part_size + i;
        return out;
    }
    std::uint8_t color_of_edge(std::size_t edge_index) const {
        return coloring->colors[edge_index];
    }
};

ColoredHost build_blowup_host(const Graph& base, std::uint32_t m, double p, std::uint64_t seed,
                              bool within_complete);

enum class ColorStrategy { Random, AdversarialMajority, FromFile };

// Random: independent uniform color per edge. Adversarial-majority: within
// every part-pair block, each edge gets the currently least-used color, which
// starves whichever color is densest. FromFile: explicit per-edge colors in
// canonical (sorted) edge order.
ColoredHost color_host(const ColoredHost& host, std::uint32_t k, ColorStrategy strategy,
                       std::uint64_t seed,
                       const std::vector<std::uint8_t>* file_colors = nullptr);

// Subgraph spanned by the edges of one color.
Graph color_subgraph(const ColoredHost& host, std::uint8_t color);

// Per-vertex adjacency bitsets restricted to one color.
std::vector<Bitset> color_adjacency(const ColoredHost& host, std::uint8_t color);

nlohmann::json host_to_json(const ColoredHost& host);
ColoredHost host_from_json(const nlohmann::json& j);

} // namespace treeram

#endif
