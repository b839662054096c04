#include "treeram/structure.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "treeram/errors.hpp"
#include "treeram/rng.hpp"

namespace treeram {

namespace {

struct HomSearch {
    const Graph& pattern;
    const Graph& target;
    std::vector<Vertex> order;       // pattern vertices, high degree first
    std::vector<std::int64_t> image; // -1 unassigned
    std::vector<bool> used;

    bool extend(std::size_t depth) {
        if (depth == order.size()) return true;
        Vertex pv = order[depth];
        for (std::size_t tv = 0; tv < target.vertex_count(); ++tv) {
            if (used[tv]) continue;
            if (target.degree(static_cast<Vertex>(tv)) < pattern.degree(pv)) continue;
            bool ok = true;
            for (Vertex pw : pattern.neighbors(pv)) {
                if (image[pw] < 0) continue;
                if (!target.has_edge(static_cast<Vertex>(tv),
                                     static_cast<Vertex>(image[pw]))) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            image[pv] = static_cast<std::int64_t>(tv);
            used[tv] = true;
            if (extend(depth + 1)) return true;
            image[pv] = -1;
            used[tv] = false;
        }
        return false;
    }
};

} // namespace

std::optional<std::vector<Vertex>> injective_homomorphism(const Graph& pattern,
                                                          const Graph& target) {
    if (pattern.vertex_count() > target.vertex_count()) return std::nullopt;
    HomSearch search{pattern, target};
    search.order.resize(pattern.vertex_count());
    std::iota(search.order.begin(), search.order.end(), 0);
    std::stable_sort(search.order.begin(), search.order.end(), [&](Vertex l, Vertex r) {
        return pattern.degree(l) > pattern.degree(r);
    });
    search.image.assign(pattern.vertex_count(), -1);
    search.used.assign(target.vertex_count(), false);
    if (!search.extend(0)) return std::nullopt;
    std::vector<Vertex> out(pattern.vertex_count());
    for (std::size_t v = 0; v < out.size(); ++v) out[v] = static_cast<Vertex>(search.image[v]);
    return out;
}

StructureResult find_monochromatic_dense_structure(const ColoredHost& host,
                                                   const Graph& pattern,
                                                   const StructureParams& params) {
    if (!host.coloring) throw InputError("find_monochromatic_dense_structure: uncolored host");
    const std::uint32_t k = host.coloring->k;
    const auto m = static_cast<double>(host.part_size);
    const double threshold = (params.alpha - params.epsilon) * host.p;

    nlohmann::json diagnostics = nlohmann::json::object();
    diagnostics["colors"] = nlohmann::json::array();

    // per part-pair color counts
    std::map<std::pair<Vertex, Vertex>, std::vector<std::size_t>> block_counts;
    for (std::size_t i = 0; i < host.graph.edge_count(); ++i) {
        const auto& [u, v] = host.graph.edges()[i];
        Vertex a = host.part_of(u), b = host.part_of(v);
        if (a == b) continue; // within-part edges never carry pattern edges
        auto& counts = block_counts[{std::min(a, b), std::max(a, b)}];
        if (counts.empty()) counts.assign(k, 0);
        ++counts[host.coloring->colors[i]];
    }

    // plurality order: colors by number of part-pairs they dominate
    std::vector<std::size_t> majority(k, 0);
    for (const auto& [block, counts] : block_counts) {
        std::size_t best = 0;
        for (std::uint32_t c = 1; c < k; ++c)
            if (counts[c] > counts[best]) best = c;
        ++majority[best];
    }
    std::vector<std::uint32_t> color_order(k);
    std::iota(color_order.begin(), color_order.end(), 0);
    std::stable_sort(color_order.begin(), color_order.end(),
                     [&](std::uint32_t l, std::uint32_t r) { return majority[l] > majority[r]; });

    const auto subset_size =
        std::max<std::uint32_t>(1, static_cast<std::uint32_t>(params.lambda * m));

    for (std::uint32_t color : color_order) {
        nlohmann::json color_log;
        color_log["color"] = color;

        // base edges whose full-part density in this color clears the threshold
        EdgeList kept;
        for (const auto& [a, b] : host.base.edges()) {
            auto it = block_counts.find({a, b});
            double density =
                it == block_counts.end() ? 0.0 : static_cast<double>(it->second[color]) / (m * m);
            if (density >= threshold - 1e-12) kept.emplace_back(a, b);
        }
        Graph base_color(host.base.vertex_count(), std::move(kept));
        color_log["kept_base_edges"] = base_color.edge_count();

        auto hom = injective_homomorphism(pattern, base_color);
        color_log["homomorphism"] = hom.has_value();
        if (!hom) {
            diagnostics["colors"].push_back(color_log);
            continue;
        }

        Graph sub = color_subgraph(host, static_cast<std::uint8_t>(color));
        for (std::uint32_t retry = 0; retry <= params.retries; ++retry) {
            Rng rng(Rng::derive(params.seed, (static_cast<std::uint64_t>(color) << 32) | retry));
            std::vector<std::vector<Vertex>> subsets(pattern.vertex_count());
            for (std::size_t x = 0; x < pattern.vertex_count(); ++x) {
                auto local = rng.sample_without_replacement(host.part_size, subset_size);
                for (auto i : local)
                    subsets[x].push_back((*hom)[x] * host.part_size + i);
            }

            bool all_dense = true;
            for (const auto& [px, py] : pattern.edges()) {
                BipartitePair pair{&sub, subsets[px], subsets[py]};
                auto cert = check_dense_pair(pair, params.epsilon, params.alpha, host.p,
                                             params.mode,
                                             Rng::derive(params.seed, px * 7919 + py), params.budget);
                if (!cert.pass) {
                    all_dense = false;
                    color_log["failed_pair"] = {(*hom)[px], (*hom)[py]};
                    color_log["failed_density"] = cert.witness_density;
                    break;
                }
            }
            if (all_dense) {
                MonoStructure structure;
                structure.color = static_cast<std::uint8_t>(color);
                structure.base_map = *hom;
                structure.subsets = std::move(subsets);
                return structure;
            }
        }
        color_log["retries_exhausted"] = true;
        diagnostics["colors"].push_back(color_log);
    }

    return StructureFailure{diagnostics};
}

CertificateReport verify_embedding_map(const ColoredHost& host, const Graph& pattern,
                                       const EmbeddingMap& map) {
    CertificateReport report;
    if (!host.coloring) {
        report.add("host", "host is uncolored");
        return report;
    }
    if (map.image.size() != pattern.vertex_count()) {
        report.add("size", "image does not cover the pattern");
        return report;
    }
    std::vector<bool> used(host.graph.vertex_count(), false);
    for (std::size_t v = 0; v < map.image.size(); ++v) {
        Vertex h = map.image[v];
        if (h >= host.graph.vertex_count()) {
            report.add("range", "vertex " + std::to_string(v) + " maps out of range");
            continue;
        }
        if (used[h])
            report.add("injectivity", "host vertex " + std::to_string(h) + " used twice");
        used[h] = true;
    }
    for (const auto& [u, v] : pattern.edges()) {
        std::size_t index = host.graph.edge_index(map.image[u], map.image[v]);
        if (index >= host.graph.edge_count()) {
            report.add("edge", "pattern edge {" + std::to_string(u) + "," + std::to_string(v) +
                                   "} has no host edge");
            continue;
        }
        if (host.coloring->colors[index] != map.color)
            report.add("color", "pattern edge {" + std::to_string(u) + "," + std::to_string(v) +
                                    "} maps to a wrong-color edge");
    }
    report.metrics["color"] = map.color;
    report.metrics["vertices"] = map.image.size();
    return report;
}

nlohmann::json embedding_map_to_json(const EmbeddingMap& map) {
    return {{"color", map.color}, {"image", map.image}};
}

EmbeddingMap embedding_map_from_json(const nlohmann::json& j) {
    EmbeddingMap map;
    map.color = j.at("color").get<std::uint8_t>();
    map.image = j.at("image").get<std::vector<Vertex>>();
    return map;
}

} // namespace treeram
