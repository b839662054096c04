#include "treeram/blowup.hpp"

#include <algorithm>
#include <map>

#include "treeram/errors.hpp"
#include "treeram/rng.hpp"

namespace treeram {

ColoredHost build_blowup_host(const Graph& base, std::uint32_t m, double p, std::uint64_t seed,
                              bool within_complete) {
    if (m < 1) throw InputError("build_blowup_host: part size must be >= 1");
    if (!(p > 0 && p <= 1)) throw InputError("build_blowup_host: p must lie in (0,1]");

    const std::size_t parts = base.vertex_count();
    EdgeList edges;
    if (within_complete)
        for (std::size_t v = 0; v < parts; ++v)
            for (std::uint32_t j = 0; j < m; ++j)
                for (std::uint32_t l = j + 1; l < m; ++l)
                    edges.emplace_back(static_cast<Vertex>(v * m + j),
                                       static_cast<Vertex>(v * m + l));

    // cross edges in canonical order: base edges ascending, then (j, l)
    // row-major; one Bernoulli draw per slot keeps the recipe reproducible
    Rng rng(seed);
    for (const auto& [a, b] : base.edges()) {
        for (std::uint32_t j = 0; j < m; ++j)
            for (std::uint32_t l = 0; l < m; ++l) {
                bool keep = p >= 1.0 || rng.bernoulli(p);
                if (keep)
                    edges.emplace_back(static_cast<Vertex>(a * m + j),
                                       static_cast<Vertex>(b * m + l));
            }
    }

    ColoredHost host;
    host.graph = Graph(parts * m, std::move(edges));
    host.base = base;
    host.part_size = m;
    host.p = p;
    host.seed = seed;
    host.within_complete = within_complete;
    return host;
}

ColoredHost color_host(const ColoredHost& host, std::uint32_t k, ColorStrategy strategy,
                       std::uint64_t seed, const std::vector<std::uint8_t>* file_colors) {
    if (k < 1 || k > 255) throw InputError("color_host: k must lie in [1,255]");
    ColoredHost out = host;
    EdgeColoring coloring;
    coloring.k = k;
    const std::size_t edge_count = host.graph.edge_count();
    coloring.colors.assign(edge_count, 0);

    switch (strategy) {
        case ColorStrategy::Random: {
            Rng rng(Rng::derive(seed, 0xc010f));
            for (std::size_t i = 0; i < edge_count; ++i)
                coloring.colors[i] = static_cast<std::uint8_t>(rng.below(k));
            break;
        }
        case ColorStrategy::AdversarialMajority: {
            // balance counts within every part-pair block
            std::map<std::pair<Vertex, Vertex>, std::vector<std::uint32_t>> block_counts;
            for (std::size_t i = 0; i < edge_count; ++i) {
                const auto& [u, v] = host.graph.edges()[i];
                Vertex pu = host.part_of(u), pv = host.part_of(v);
                auto& counts = block_counts[{std::min(pu, pv), std::max(pu, pv)}];
                if (counts.empty()) counts.assign(k, 0);
                std::uint32_t pick = 0;
                for (std::uint32_t c = 1; c < k; ++c)
                    if (counts[c] < counts[pick]) pick = c;
                coloring.colors[i] = static_cast<std::uint8_t>(pick);
                ++counts[pick];
            }
            break;
        }
        case ColorStrategy::FromFile: {
            if (!file_colors) throw InputError("color_host: missing file colors");
            if (file_colors->size() != edge_count)
                throw InputError("color_host: coloring covers " +
                                 std::to_string(file_colors->size()) + " edges, host has " +
                                 std::to_string(edge_count));
            for (auto c : *file_colors)
                if (c >= k) throw InputError("color_host: color out of range");
            coloring.colors = *file_colors;
            break;
        }
    }
    out.coloring = std::move(coloring);
    return out;
}

Graph color_subgraph(const ColoredHost& host, std::uint8_t color) {
    if (!host.coloring) throw InputError("color_subgraph: host is uncolored");
    EdgeList edges;
    for (std::size_t i = 0; i < host.graph.edge_count(); ++i)
        if (host.coloring->colors[i] == color) edges.push_back(host.graph.edges()[i]);
    return Graph(host.graph.vertex_count(), std::move(edges));
}

std::vector<Bitset> color_adjacency(const ColoredHost& host, std::uint8_t color) {
    if (!host.coloring) throw InputError("color_adjacency: host is uncolored");
    const std::size_t n = host.graph.vertex_count();
    std::vector<Bitset> adjacency(n, Bitset(n));
    for (std::size_t i = 0; i < host.graph.edge_count(); ++i) {
        if (host.coloring->colors[i] != color) continue;
        const auto& [u, v] = host.graph.edges()[i];
        adjacency[u].set(v);
        adjacency[v].set(u);
    }
    return adjacency;
}

nlohmann::json host_to_json(const ColoredHost& host) {
    nlohmann::json out;
    out["type"] = "host";
    auto base_edges = nlohmann::json::array();
    for (const auto& [u, v] : host.base.edges()) base_edges.push_back({u, v});
    out["base"] = {{"n", host.base.vertex_count()}, {"edges", base_edges}};
    out["m"] = host.part_size;
    out["p"] = host.p;
    out["seed"] = host.seed;
    out["within"] = host.within_complete ? "complete" : "empty";
    if (host.coloring) {
        out["k"] = host.coloring->k;
        out["colors"] = host.coloring->colors;
    }
    return out;
}

ColoredHost host_from_json(const nlohmann::json& j) {
    EdgeList base_edges;
    for (const auto& e : j.at("base").at("edges"))
        base_edges.emplace_back(e.at(0).get<Vertex>(), e.at(1).get<Vertex>());
    Graph base(j.at("base").at("n").get<std::size_t>(), std::move(base_edges));
    ColoredHost host = build_blowup_host(base, j.at("m").get<std::uint32_t>(),
                                         j.at("p").get<double>(),
                                         j.at("seed").get<std::uint64_t>(),
                                         j.at("within").get<std::string>() == "complete");
    if (j.contains("colors")) {
        EdgeColoring coloring;
        coloring.k = j.at("k").get<std::uint32_t>();
        coloring.colors = j.at("colors").get<std::vector<std::uint8_t>>();
        if (!coloring.valid_for(host.graph))
            throw InputError("host_from_json: coloring does not match the rebuilt host");
        host.coloring = std::move(coloring);
    }
    return host;
}

} // namespace treeram
