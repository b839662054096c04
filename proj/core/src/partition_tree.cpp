#include "treeram/partition_tree.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>

#include "treeram/errors.hpp"

namespace treeram {

SParameters compute_s(std::size_t n, std::uint32_t delta, const TreewidthProfile& profile) {
    if (n < 1) throw InputError("compute_s: n must be >= 1");
    if (delta < 2) throw InputError("compute_s: delta must be >= 2");

    SParameters params;
    params.n = n;
    params.delta = delta;
    std::uint32_t k = 2;
    std::uint64_t pow2 = 1;
    while (pow2 < delta) {
        pow2 <<= 1;
        ++k;
    }
    params.k = k; // ceil(log2(delta)) + 2

    params.terms = ceil_log_3_2(n) + 1;
    params.sum_value = ordering_size_bound(profile, n);
    params.s = static_cast<std::uint64_t>(
        std::floor(static_cast<double>(k) + static_cast<double>(k) * params.sum_value + 1e-9));

    if (profile.alpha) {
        double alpha = *profile.alpha;
        double tn = profile(static_cast<double>(n));
        double shrink = 1.0 - std::pow(2.0 / 3.0, alpha);
        params.scaled_upper =
            k + static_cast<double>(k) / shrink * tn + static_cast<double>(k) * params.terms;
        params.scaled_lower = static_cast<double>(k) * (tn + 1.0);
        params.case_tag = "ii";
    }
    return params;
}

CertificateReport verify_partition_tree(const Graph& g, const VertexPartitionTree& vpt) {
    CertificateReport report;
    const std::size_t n = g.vertex_count();
    const std::size_t nodes = vpt.tree.vertex_count();

    if (!vpt.tree.is_tree() && nodes != 1)
        report.add("tree", "partition tree is not a tree");
    if (vpt.bags.size() != nodes) report.add("shape", "bag count mismatch");
    if (vpt.parent.size() != nodes) report.add("shape", "parent vector mismatch");

    // binary: at most two children per node
    std::vector<std::uint32_t> child_count(nodes, 0);
    for (std::size_t v = 0; v < vpt.parent.size(); ++v) {
        if (vpt.parent[v] >= 0) ++child_count[static_cast<std::size_t>(vpt.parent[v])];
    }
    for (std::size_t v = 0; v < nodes; ++v)
        if (child_count[v] > 2)
            report.add("binary", "node " + std::to_string(v) + " has " +
                                     std::to_string(child_count[v]) + " children");

    // bags partition V(G)
    std::vector<std::int64_t> owner(n, -1);
    for (std::size_t b = 0; b < vpt.bags.size(); ++b) {
        for (Vertex v : vpt.bags[b]) {
            if (v >= n) {
                report.add("range", "bag contains out-of-range vertex");
                continue;
            }
            if (owner[v] != -1)
                report.add("partition", "vertex " + std::to_string(v) + " in two bags");
            owner[v] = static_cast<std::int64_t>(b);
        }
    }
    for (std::size_t v = 0; v < n; ++v)
        if (owner[v] == -1) report.add("partition", "vertex " + std::to_string(v) + " unassigned");

    // bag sizes
    for (std::size_t b = 0; b < vpt.bags.size(); ++b) {
        bool leaf = child_count[b] == 0;
        if (!leaf && vpt.bags[b].size() != 2 * vpt.s)
            report.add("bag_size", "non-leaf bag " + std::to_string(b) + " has " +
                                       std::to_string(vpt.bags[b].size()) + " vertices, want " +
                                       std::to_string(2 * vpt.s));
        if (leaf && vpt.bags[b].size() > 2 * vpt.s)
            report.add("bag_size", "leaf bag " + std::to_string(b) + " exceeds 2s");
    }

    if (report.pass) {
        // distance <= k for every edge
        std::vector<std::vector<int>> dist(nodes);
        for (std::size_t b = 0; b < nodes; ++b)
            dist[b] = vpt.tree.bfs_distances(static_cast<Vertex>(b));
        std::size_t max_seen = 0;
        for (const auto& [u, v] : g.edges()) {
            auto bu = static_cast<std::size_t>(owner[u]);
            auto bv = static_cast<std::size_t>(owner[v]);
            int d = dist[bu][bv];
            max_seen = std::max(max_seen, static_cast<std::size_t>(d));
            if (d < 0 || d > static_cast<int>(vpt.k))
                report.add("distance", "edge {" + std::to_string(u) + "," + std::to_string(v) +
                                           "} spans bag distance " + std::to_string(d));
        }
        report.metrics["max_edge_bag_distance"] = max_seen;
    }
    report.metrics["nodes"] = nodes;
    report.metrics["k"] = vpt.k;
    report.metrics["s"] = vpt.s;
    return report;
}

namespace {

struct BuildNode {
    std::vector<Vertex> bag;
    std::int32_t parent = -1;
};

class PartitionBuilder {
public:
    PartitionBuilder(const Graph& g, const SParameters& params, const TreewidthProfile& profile)
        : g_(g), params_(params), profile_(profile) {}

    std::vector<BuildNode> take() && { return std::move(nodes_); }

    // classes[i] sorted; returns index of the subtree root
    std::uint32_t build(const std::vector<Vertex>& subset,
                        std::vector<std::vector<Vertex>> classes, std::int32_t parent) {
        const std::uint64_t s = params_.s;
        for (std::size_t i = 0; i < classes.size(); ++i) {
            if (classes[i].size() > (static_cast<std::uint64_t>(1) << i) * s)
                throw CertificateFailure("recursive_partition: class budget violated (|C_" +
                                             std::to_string(i + 1) + "| = " +
                                             std::to_string(classes[i].size()) + " > 2^" +
                                             std::to_string(i) + " s)",
                                         subset.size());
        }

        if (subset.size() <= 2 * s) {
            nodes_.push_back({subset, parent});
            return static_cast<std::uint32_t>(nodes_.size() - 1);
        }

        Graph sub = induced_subgraph(g_, subset);
        VertexColoring local_colors(subset.size(), -1);
        for (std::size_t i = 0; i < classes.size(); ++i)
            for (Vertex v : classes[i])
                local_colors[local_index(subset, v)] = static_cast<int>(i);

        SeparatorTriple triple = colored_separator(sub, local_colors, params_.k, profile_);
        std::vector<Vertex> sep = lift(subset, triple.s);
        if (sep.size() > s)
            throw CertificateFailure("recursive_partition: separator larger than s",
                                     subset.size());

        // X := C_1 ∪ S padded to exactly 2s with lowest-indexed spare vertices
        std::vector<bool> in_x(g_.vertex_count(), false);
        std::vector<Vertex> x;
        for (Vertex v : classes[0])
            if (!in_x[v]) {
                in_x[v] = true;
                x.push_back(v);
            }
        for (Vertex v : sep)
            if (!in_x[v]) {
                in_x[v] = true;
                x.push_back(v);
            }
        for (Vertex v : subset) {
            if (x.size() >= 2 * s) break;
            if (!in_x[v]) {
                in_x[v] = true;
                x.push_back(v);
            }
        }
        std::sort(x.begin(), x.end());

        std::vector<Vertex> side_a = strip(lift(subset, triple.a), in_x);
        std::vector<Vertex> side_b = strip(lift(subset, triple.b), in_x);

        // neighborhood of X inside the current subset
        std::vector<bool> near_x(g_.vertex_count(), false);
        {
            std::vector<bool> in_subset(g_.vertex_count(), false);
            for (Vertex v : subset) in_subset[v] = true;
            for (Vertex v : x)
                for (Vertex w : g_.neighbors(v))
                    if (in_subset[w] && !in_x[w]) near_x[w] = true;
        }

        std::uint32_t node = static_cast<std::uint32_t>(nodes_.size());
        nodes_.push_back({x, parent});

        for (const auto& side : {side_a, side_b}) {
            if (side.empty()) continue;
            std::vector<std::vector<Vertex>> next(params_.k);
            std::vector<bool> taken(g_.vertex_count(), false);
            for (std::size_t i = 0; i + 1 < params_.k; ++i) {
                next[i] = intersect(classes[i + 1], side);
                for (Vertex v : next[i]) taken[v] = true;
            }
            for (Vertex v : side)
                if (near_x[v] && !taken[v]) next[params_.k - 1].push_back(v);
            build(side, std::move(next), static_cast<std::int32_t>(node));
        }
        return node;
    }

private:
    static std::uint32_t local_index(const std::vector<Vertex>& subset, Vertex v) {
        auto it = std::lower_bound(subset.begin(), subset.end(), v);
        return static_cast<std::uint32_t>(it - subset.begin());
    }
    static std::vector<Vertex> lift(const std::vector<Vertex>& subset,
                                    const std::vector<Vertex>& local) {
        std::vector<Vertex> out;
        out.reserve(local.size());
        for (Vertex v : local) out.push_back(subset[v]);
        std::sort(out.begin(), out.end());
        return out;
    }
    static std::vector<Vertex> strip(std::vector<Vertex> values, const std::vector<bool>& mask) {
        values.erase(std::remove_if(values.begin(), values.end(),
                                    [&](Vertex v) { return mask[v]; }),
                     values.end());
        return values;
    }
    static std::vector<Vertex> intersect(const std::vector<Vertex>& lhs,
                                         const std::vector<Vertex>& rhs) {
        std::vector<Vertex> out;
        std::set_intersection(lhs.begin(), lhs.end(), rhs.begin(), rhs.end(),
                              std::back_inserter(out));
        return out;
    }

    const Graph& g_;
    const SParameters& params_;
    const TreewidthProfile& profile_;
    std::vector<BuildNode> nodes_;
};

} // namespace

VertexPartitionTree recursive_partition(const Graph& g, std::uint32_t delta,
                                        const TreewidthProfile& profile) {
    if (g.vertex_count() == 0) throw InputError("recursive_partition: empty graph");
    if (g.max_degree() > delta)
        throw InputError("recursive_partition: graph degree exceeds the declared bound");

    SParameters params = compute_s(g.vertex_count(), delta, profile);

    std::vector<Vertex> all(g.vertex_count());
    for (std::size_t v = 0; v < g.vertex_count(); ++v) all[v] = static_cast<Vertex>(v);

    PartitionBuilder builder(g, params, profile);
    builder.build(all, std::vector<std::vector<Vertex>>(params.k), -1);
    auto nodes = std::move(builder).take();

    VertexPartitionTree vpt;
    vpt.k = params.k;
    vpt.s = params.s;
    EdgeList tree_edges;
    for (std::size_t v = 0; v < nodes.size(); ++v) {
        vpt.bags.push_back(std::move(nodes[v].bag));
        vpt.parent.push_back(nodes[v].parent);
        if (nodes[v].parent >= 0)
            tree_edges.emplace_back(static_cast<Vertex>(nodes[v].parent),
                                    static_cast<Vertex>(v));
    }
    vpt.tree = Graph(nodes.size(), std::move(tree_edges));
    return vpt;
}

TreePowerFactorization tree_power_factorization(const Graph& tree,
                                                const std::vector<std::int32_t>& parent,
                                                std::uint32_t k) {
    const std::size_t n = tree.vertex_count();
    if (k < 1) throw InputError("tree_power_factorization: k must be >= 1");
    if (!tree.is_tree()) throw InputError("tree_power_factorization: input is not a tree");
    if (parent.size() != n) throw InputError("tree_power_factorization: parent vector mismatch");
    if (tree.max_degree() > 3)
        throw InputError("tree_power_factorization: tree is not binary (degree > 3)");

    TreePowerFactorization out;
    if (k == 1) {
        out.tree = tree;
        out.node_map.resize(n);
        for (std::size_t v = 0; v < n; ++v) out.node_map[v] = static_cast<Vertex>(v);
        out.multiplicity = 1;
        return out;
    }

    std::size_t root_count = 0;
    Vertex root = 0;
    for (std::size_t v = 0; v < n; ++v)
        if (parent[v] < 0) {
            root = static_cast<Vertex>(v);
            ++root_count;
        }
    if (root_count != 1) throw InputError("tree_power_factorization: need exactly one root");

    // depths along the parent chain (parent array is acyclic since tree)
    std::vector<std::uint32_t> depth(n, UINT32_MAX);
    depth[root] = 0;
    std::queue<Vertex> queue;
    queue.push(root);
    std::vector<std::vector<Vertex>> children(n);
    for (std::size_t v = 0; v < n; ++v)
        if (parent[v] >= 0) children[static_cast<std::size_t>(parent[v])].push_back(
            static_cast<Vertex>(v));
    while (!queue.empty()) {
        Vertex v = queue.front();
        queue.pop();
        for (Vertex c : children[v]) {
            depth[c] = depth[v] + 1;
            queue.push(c);
        }
    }
    for (std::size_t v = 0; v < n; ++v)
        if (depth[v] == UINT32_MAX)
            throw InputError("tree_power_factorization: parent vector disagrees with tree");

    // block root: nearest ancestor (possibly self) at depth ≡ 0 (mod k)
    std::vector<Vertex> block_root(n);
    for (std::size_t v = 0; v < n; ++v) {
        Vertex w = static_cast<Vertex>(v);
        while (depth[w] % k != 0) w = static_cast<Vertex>(parent[w]);
        block_root[v] = w;
    }

    // block ids in increasing block-root order
    std::vector<Vertex> roots;
    for (std::size_t v = 0; v < n; ++v)
        if (block_root[v] == v) roots.push_back(static_cast<Vertex>(v));
    std::vector<std::uint32_t> block_id(n, UINT32_MAX);
    for (std::size_t i = 0; i < roots.size(); ++i) block_id[roots[i]] = static_cast<std::uint32_t>(i);

    EdgeList block_edges;
    std::vector<std::uint32_t> parent_block(roots.size());
    for (std::size_t i = 0; i < roots.size(); ++i) {
        Vertex r = roots[i];
        if (r == root) {
            parent_block[i] = static_cast<std::uint32_t>(i);
            continue;
        }
        std::uint32_t up = block_id[block_root[static_cast<std::size_t>(parent[r])]];
        parent_block[i] = up;
        block_edges.emplace_back(static_cast<Vertex>(up), static_cast<Vertex>(i));
    }
    out.tree = Graph(roots.size(), std::move(block_edges));

    out.node_map.resize(n);
    std::vector<std::uint32_t> load(roots.size(), 0);
    for (std::size_t v = 0; v < n; ++v) {
        std::uint32_t block = block_id[block_root[v]];
        std::uint32_t image = parent_block[block];
        out.node_map[v] = static_cast<Vertex>(image);
        ++load[image];
    }
    out.multiplicity = *std::max_element(load.begin(), load.end());
    return out;
}

CertificateReport verify_tree_power(const Graph& tree, std::uint32_t k,
                                    const TreePowerFactorization& factorization) {
    CertificateReport report;
    const std::size_t n = tree.vertex_count();
    if (factorization.node_map.size() != n) {
        report.add("shape", "node map size mismatch");
        return report;
    }
    if (!factorization.tree.is_tree() && factorization.tree.vertex_count() != 1)
        report.add("tree", "host is not a tree");
    if (factorization.tree.vertex_count() > n)
        report.add("size", "host tree larger than input tree");

    std::vector<std::uint32_t> load(factorization.tree.vertex_count(), 0);
    for (Vertex image : factorization.node_map) {
        if (image >= factorization.tree.vertex_count()) {
            report.add("range", "node map image out of range");
            return report;
        }
        ++load[image];
    }
    std::uint32_t multiplicity = *std::max_element(load.begin(), load.end());
    if (multiplicity > factorization.multiplicity)
        report.add("multiplicity", "declared multiplicity too small");

    std::size_t degree_bound = (static_cast<std::size_t>(1) << k) + 1;
    if (factorization.tree.max_degree() > degree_bound)
        report.add("degree", "host degree " + std::to_string(factorization.tree.max_degree()) +
                                 " exceeds 1 + 2^k = " + std::to_string(degree_bound));

    // all pairs at distance <= k map to equal or adjacent host nodes
    for (std::size_t v = 0; v < n; ++v) {
        auto dist = tree.bfs_distances(static_cast<Vertex>(v));
        for (std::size_t w = v + 1; w < n; ++w) {
            if (dist[w] < 0 || dist[w] > static_cast<int>(k)) continue;
            Vertex iv = factorization.node_map[v], iw = factorization.node_map[w];
            if (iv != iw && !factorization.tree.has_edge(iv, iw))
                report.add("reach", "vertices " + std::to_string(v) + "," + std::to_string(w) +
                                        " at distance " + std::to_string(dist[w]) +
                                        " map to non-adjacent host nodes");
        }
    }
    report.metrics["multiplicity"] = multiplicity;
    report.metrics["host_vertices"] = factorization.tree.vertex_count();
    report.metrics["host_max_degree"] = factorization.tree.max_degree();
    return report;
}

} // namespace treeram
