#include "treeram/graph.hpp"

#include <algorithm>
#include <queue>
#include <string>

#include "treeram/errors.hpp"

namespace treeram {

Graph::Graph(std::size_t vertex_count, EdgeList edges) : n_(vertex_count) {
    for (auto& [u, v] : edges) {
        if (u == v)
            throw InputError("self-loop at vertex " + std::to_string(u));
        if (u >= n_ || v >= n_)
            throw InputError("endpoint out of range: {" + std::to_string(u) + "," +
                             std::to_string(v) + "} with n=" + std::to_string(n_));
        if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    auto dup = std::adjacent_find(edges.begin(), edges.end());
    if (dup != edges.end())
        throw InputError("duplicate edge {" + std::to_string(dup->first) + "," +
                         std::to_string(dup->second) + "}");
    edges_ = std::move(edges);

    offsets_.assign(n_ + 1, 0);
    for (const auto& [u, v] : edges_) {
        ++offsets_[u + 1];
        ++offsets_[v + 1];
    }
    for (std::size_t i = 0; i < n_; ++i) offsets_[i + 1] += offsets_[i];
    adjacency_.resize(2 * edges_.size());
    std::vector<std::uint32_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (const auto& [u, v] : edges_) {
        adjacency_[cursor[u]++] = v;
        adjacency_[cursor[v]++] = u;
    }
    for (std::size_t v = 0; v < n_; ++v) {
        auto begin = adjacency_.begin() + offsets_[v];
        auto end = adjacency_.begin() + offsets_[v + 1];
        std::sort(begin, end);
    }
}

std::size_t Graph::max_degree() const {
    std::size_t best = 0;
    for (std::size_t v = 0; v < n_; ++v) best = std::max(best, degree(static_cast<Vertex>(v)));
    return best;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
    if (u == v || u >= n_ || v >= n_) return false;
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::size_t Graph::edge_index(Vertex u, Vertex v) const {
    if (u > v) std::swap(u, v);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), std::make_pair(u, v));
    if (it == edges_.end() || *it != std::make_pair(u, v)) return edges_.size();
    return static_cast<std::size_t>(it - edges_.begin());
}

std::vector<int> Graph::bfs_distances(Vertex source) const {
    std::vector<int> dist(n_, -1);
    if (source >= n_) return dist;
    std::queue<Vertex> queue;
    dist[source] = 0;
    queue.push(source);
    while (!queue.empty()) {
        Vertex v = queue.front();
        queue.pop();
        for (Vertex w : neighbors(v)) {
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                queue.push(w);
            }
        }
    }
    return dist;
}

std::vector<std::uint32_t> Graph::component_ids(std::size_t* count) const {
    std::vector<std::uint32_t> id(n_, UINT32_MAX);
    std::uint32_t next = 0;
    std::vector<Vertex> stack;
    for (std::size_t start = 0; start < n_; ++start) {
        if (id[start] != UINT32_MAX) continue;
        stack.push_back(static_cast<Vertex>(start));
        id[start] = next;
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            for (Vertex w : neighbors(v)) {
                if (id[w] == UINT32_MAX) {
                    id[w] = next;
                    stack.push_back(w);
                }
            }
        }
        ++next;
    }
    if (count) *count = next;
    return id;
}

bool Graph::is_connected() const {
    if (n_ == 0) return true;
    std::size_t count = 0;
    component_ids(&count);
    return count <= 1;
}

bool Graph::is_forest() const {
    std::size_t count = 0;
    component_ids(&count);
    return edge_count() + count == vertex_count() || vertex_count() == 0;
}

bool Graph::is_tree() const {
    return n_ >= 1 && edge_count() == n_ - 1 && is_connected();
}

Graph strong_product(const Graph& g, const Graph& h) {
    const std::size_t hn = h.vertex_count();
    EdgeList edges;
    edges.reserve(g.vertex_count() * h.edge_count() + hn * g.edge_count() +
                  2 * g.edge_count() * h.edge_count());
    auto id = [hn](std::size_t gv, std::size_t hv) {
        return static_cast<Vertex>(gv * hn + hv);
    };
    for (std::size_t gv = 0; gv < g.vertex_count(); ++gv)
        for (const auto& [h1, h2] : h.edges())
            edges.emplace_back(id(gv, h1), id(gv, h2));
    for (const auto& [g1, g2] : g.edges()) {
        for (std::size_t hv = 0; hv < hn; ++hv)
            edges.emplace_back(id(g1, hv), id(g2, hv));
        for (const auto& [h1, h2] : h.edges()) {
            edges.emplace_back(id(g1, h1), id(g2, h2));
            edges.emplace_back(id(g1, h2), id(g2, h1));
        }
    }
    return Graph(g.vertex_count() * hn, std::move(edges));
}

Graph graph_power(const Graph& g, unsigned k) {
    if (k < 1) throw InputError("graph_power: k must be >= 1");
    if (k == 1) return g;
    EdgeList edges;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        auto dist = g.bfs_distances(static_cast<Vertex>(v));
        for (std::size_t w = v + 1; w < g.vertex_count(); ++w)
            if (dist[w] >= 1 && dist[w] <= static_cast<int>(k))
                edges.emplace_back(static_cast<Vertex>(v), static_cast<Vertex>(w));
    }
    return Graph(g.vertex_count(), std::move(edges));
}

Graph induced_subgraph(const Graph& g, const std::vector<Vertex>& vertices) {
    std::vector<std::uint32_t> index(g.vertex_count(), UINT32_MAX);
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (vertices[i] >= g.vertex_count())
            throw InputError("induced_subgraph: vertex out of range");
        if (index[vertices[i]] != UINT32_MAX)
            throw InputError("induced_subgraph: repeated vertex");
        index[vertices[i]] = static_cast<std::uint32_t>(i);
    }
    EdgeList edges;
    for (Vertex v : vertices)
        for (Vertex w : g.neighbors(v))
            if (v < w && index[w] != UINT32_MAX)
                edges.emplace_back(index[v], index[w]);
    return Graph(vertices.size(), std::move(edges));
}

Graph relabel(const Graph& g, const std::vector<Vertex>& perm) {
    if (perm.size() != g.vertex_count()) throw InputError("relabel: permutation size mismatch");
    EdgeList edges;
    edges.reserve(g.edge_count());
    for (const auto& [u, v] : g.edges()) edges.emplace_back(perm[u], perm[v]);
    return Graph(g.vertex_count(), std::move(edges));
}

Graph path_graph(std::size_t n) {
    EdgeList edges;
    for (std::size_t i = 0; i + 1 < n; ++i)
        edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(i + 1));
    return Graph(n, std::move(edges));
}

Graph cycle_graph(std::size_t n) {
    if (n < 3) throw InputError("cycle_graph: need at least 3 vertices");
    EdgeList edges;
    for (std::size_t i = 0; i + 1 < n; ++i)
        edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(i + 1));
    edges.emplace_back(static_cast<Vertex>(0), static_cast<Vertex>(n - 1));
    return Graph(n, std::move(edges));
}

Graph complete_graph(std::size_t n) {
    EdgeList edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
    return Graph(n, std::move(edges));
}

Graph complete_bipartite(std::size_t a, std::size_t b) {
    EdgeList edges;
    for (std::size_t i = 0; i < a; ++i)
        for (std::size_t j = 0; j < b; ++j)
            edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(a + j));
    return Graph(a + b, std::move(edges));
}

Graph star_graph(std::size_t leaves) {
    EdgeList edges;
    for (std::size_t i = 0; i < leaves; ++i)
        edges.emplace_back(static_cast<Vertex>(0), static_cast<Vertex>(i + 1));
    return Graph(leaves + 1, std::move(edges));
}

Graph grid_graph(std::size_t rows, std::size_t cols) {
    EdgeList edges;
    auto id = [cols](std::size_t r, std::size_t c) {
        return static_cast<Vertex>(r * cols + c);
    };
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            if (c + 1 < cols) edges.emplace_back(id(r, c), id(r, c + 1));
            if (r + 1 < rows) edges.emplace_back(id(r, c), id(r + 1, c));
        }
    return Graph(rows * cols, std::move(edges));
}

} // namespace treeram
