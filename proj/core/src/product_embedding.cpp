#include "treeram/product_embedding.hpp"

#include <algorithm>
#include <set>

namespace treeram {

CertificateReport verify_product_embedding(const ProductEmbedding& pe) {
    CertificateReport report;
    const std::size_t tn = pe.tree.vertex_count();

    if (tn == 0) report.add("tree_empty", "tree has no vertices");
    if (tn > 0 && pe.tree.edge_count() != tn - 1)
        report.add("tree_acyclic", "tree has " + std::to_string(pe.tree.edge_count()) +
                                       " edges, expected " + std::to_string(tn - 1));
    if (tn > 0 && !pe.tree.is_connected())
        report.add("tree_connected", "tree is disconnected");

    if (pe.clique_size < 1) report.add("clique_size", "clique size must be positive");

    if (pe.map.size() != pe.source.vertex_count())
        report.add("map_size", "map covers " + std::to_string(pe.map.size()) +
                                   " vertices, source has " +
                                   std::to_string(pe.source.vertex_count()));

    std::set<std::pair<Vertex, std::uint32_t>> images;
    for (std::size_t x = 0; x < pe.map.size(); ++x) {
        const auto& [node, slot] = pe.map[x];
        if (node >= tn)
            report.add("node_range", "vertex " + std::to_string(x) + " maps to tree node " +
                                         std::to_string(node) + " out of range");
        if (slot >= pe.clique_size)
            report.add("slot_range", "vertex " + std::to_string(x) + " maps to slot " +
                                         std::to_string(slot) + " >= s'");
        if (!images.insert(pe.map[x]).second)
            report.add("injectivity", "duplicate image (" + std::to_string(node) + "," +
                                          std::to_string(slot) + ") at vertex " +
                                          std::to_string(x));
    }

    if (pe.map.size() == pe.source.vertex_count()) {
        for (const auto& [u, v] : pe.source.edges()) {
            Vertex tu = pe.map[u].first, tv = pe.map[v].first;
            if (tu >= tn || tv >= tn) continue; // already reported
            if (tu != tv && !pe.tree.has_edge(tu, tv))
                report.add("adjacency", "edge {" + std::to_string(u) + "," + std::to_string(v) +
                                            "} maps to non-adjacent tree nodes " +
                                            std::to_string(tu) + "," + std::to_string(tv));
        }
    }

    report.metrics["tree_vertices"] = tn;
    report.metrics["tree_max_degree"] = tn ? pe.tree.max_degree() : 0;
    report.metrics["clique_size"] = pe.clique_size;
    report.metrics["source_vertices"] = pe.source.vertex_count();
    report.metrics["source_edges"] = pe.source.edge_count();
    return report;
}

namespace {

nlohmann::json edges_to_json(const Graph& g) {
    auto arr = nlohmann::json::array();
    for (const auto& [u, v] : g.edges()) arr.push_back({u, v});
    return arr;
}

Graph graph_from_json(std::size_t n, const nlohmann::json& arr) {
    EdgeList edges;
    for (const auto& e : arr) edges.emplace_back(e.at(0).get<Vertex>(), e.at(1).get<Vertex>());
    return Graph(n, std::move(edges));
}

} // namespace

nlohmann::json product_embedding_to_json(const ProductEmbedding& pe) {
    nlohmann::json out;
    out["type"] = "product_embedding";
    out["tree"] = {{"n", pe.tree.vertex_count()}, {"edges", edges_to_json(pe.tree)}};
    out["clique_size"] = pe.clique_size;
    auto assignment = nlohmann::json::array();
    for (const auto& [node, slot] : pe.map) assignment.push_back({node, slot});
    out["assignment"] = assignment;
    out["source"] = {{"n", pe.source.vertex_count()}, {"edges", edges_to_json(pe.source)}};
    out["certificate"] = pe.certificate;
    return out;
}

ProductEmbedding product_embedding_from_json(const nlohmann::json& j) {
    ProductEmbedding pe;
    pe.tree = graph_from_json(j.at("tree").at("n").get<std::size_t>(), j.at("tree").at("edges"));
    pe.clique_size = j.at("clique_size").get<std::uint32_t>();
    for (const auto& entry : j.at("assignment"))
        pe.map.emplace_back(entry.at(0).get<Vertex>(), entry.at(1).get<std::uint32_t>());
    pe.source =
        graph_from_json(j.at("source").at("n").get<std::size_t>(), j.at("source").at("edges"));
    if (j.contains("certificate")) pe.certificate = j.at("certificate");
    return pe;
}

} // namespace treeram
