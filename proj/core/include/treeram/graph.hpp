#ifndef TREERAM_GRAPH_HPP
#define TREERAM_GRAPH_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace treeram {

using Vertex = std::uint32_t;
using EdgeList = std::vector<std::pair<Vertex, Vertex>>;

// Finite simple undirected graph over dense vertex ids [0, n).
// Immutable after construction; edges are stored normalized (u < v) and
// sorted, so equal graphs compare equal structurally.
class Graph {
public:
    Graph() = default;
    Graph(std::size_t vertex_count, EdgeList edges);

    std::size_t vertex_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    const EdgeList& edges() const { return edges_; }

    std::span<const Vertex> neighbors(Vertex v) const {
        return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
    }
    std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
    std::size_t max_degree() const;
    bool has_edge(Vertex u, Vertex v) const;

    // Index of normalized edge {u,v} in edges(), or edge_count() if absent.
    std::size_t edge_index(Vertex u, Vertex v) const;

    // BFS distances from source; -1 where unreachable.
    std::vector<int> bfs_distances(Vertex source) const;

    // Component id per vertex, ids in discovery order from vertex 0.
    std::vector<std::uint32_t> component_ids(std::size_t* count = nullptr) const;

    bool is_connected() const;
    bool is_tree() const; // acyclic and connected (the one-vertex graph counts)
    bool is_forest() const;

    bool operator==(const Graph& other) const {
        return n_ == other.n_ && edges_ == other.edges_;
    }

private:
    std::size_t n_ = 0;
    EdgeList edges_;
    std::vector<std::uint32_t> offsets_;
    std::vector<Vertex> adjacency_;
};

// Strong product with vertex indexing (g, h) -> g*v(H) + h. Two product
// vertices are adjacent iff each coordinate pair is equal or adjacent and
// the vertices differ. Empty factors yield the empty product.
Graph strong_product(const Graph& g, const Graph& h);

// Edge {u,v} present iff 1 <= dist(u,v) <= k, by per-vertex BFS.
Graph graph_power(const Graph& g, unsigned k);

// Induced subgraph on the given (sorted, distinct) vertices; vertex i of the
// result corresponds to vertices[i].
Graph induced_subgraph(const Graph& g, const std::vector<Vertex>& vertices);

// Image of g under a vertex permutation (perm[v] = new id of v).
Graph relabel(const Graph& g, const std::vector<Vertex>& perm);

Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph complete_graph(std::size_t n);
Graph complete_bipartite(std::size_t a, std::size_t b);
Graph star_graph(std::size_t leaves);
Graph grid_graph(std::size_t rows, std::size_t cols);

} // namespace treeram

#endif
