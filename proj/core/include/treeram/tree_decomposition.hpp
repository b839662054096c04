#ifndef TREERAM_TREE_DECOMPOSITION_HPP
#define TREERAM_TREE_DECOMPOSITION_HPP

#include <vector>

#include "treeram/certificates.hpp"
#include "treeram/graph.hpp"

namespace treeram {

struct TreeDecomposition {
    Graph tree;                           // acyclic, connected
    std::vector<std::vector<Vertex>> bags; // sorted vertex sets, one per tree node
    int width = -1;                        // max bag size - 1

    std::size_t node_count() const { return bags.size(); }
};

enum class DecompositionMode { Exact, Heuristic };

// Exact mode runs a width-feasibility search over elimination orders and is
// guarded at 30 vertices. Heuristic mode runs min-fill elimination (min-degree
// tie-break) and returns a valid decomposition whose width may exceed the
// optimum.
inline constexpr std::size_t kExactTreewidthGuard = 30;

TreeDecomposition tree_decomposition(const Graph& g, DecompositionMode mode);

// Best width over a small family of deterministic elimination heuristics.
// Used where a caller-supplied width budget must be met if at all possible.
TreeDecomposition tree_decomposition_best_effort(const Graph& g);

// Decomposition induced by eliminating vertices in the given order; width is
// the max fill-degree seen.
TreeDecomposition decomposition_from_elimination(const Graph& g,
                                                 const std::vector<Vertex>& order);

// Checks coverage of vertices and edges plus the connected-subtree condition.
CertificateReport validate_tree_decomposition(const Graph& g, const TreeDecomposition& td);

// Lower bound used to anchor the exact search (degeneracy <= treewidth).
int degeneracy(const Graph& g);

} // namespace treeram

#endif
