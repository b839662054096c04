#include "treeram/tree_decomposition.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <set>
#include <unordered_set>

#include "treeram/errors.hpp"

namespace treeram {

namespace {

using AdjSets = std::vector<std::set<Vertex>>;

AdjSets adjacency_sets(const Graph& g) {
    AdjSets adj(g.vertex_count());
    for (const auto& [u, v] : g.edges()) {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    return adj;
}

std::size_t fill_in_count(const AdjSets& adj, Vertex v) {
    std::size_t missing = 0;
    const auto& nb = adj[v];
    for (auto it = nb.begin(); it != nb.end(); ++it) {
        auto jt = it;
        for (++jt; jt != nb.end(); ++jt)
            if (!adj[*it].count(*jt)) ++missing;
    }
    return missing;
}

void eliminate(AdjSets& adj, Vertex v) {
    const auto nb = adj[v];
    for (Vertex a : nb)
        for (Vertex b : nb)
            if (a < b) {
                adj[a].insert(b);
                adj[b].insert(a);
            }
    for (Vertex a : nb) adj[a].erase(v);
    adj[v].clear();
}

// Elimination heuristics differ only in the vertex score.
enum class Pick { MinFill, MinDegree, MinFillHighIndex };

std::vector<Vertex> elimination_order(const Graph& g, Pick pick) {
    const std::size_t n = g.vertex_count();
    AdjSets adj = adjacency_sets(g);
    std::vector<bool> done(n, false);
    std::vector<Vertex> order;
    order.reserve(n);
    for (std::size_t step = 0; step < n; ++step) {
        Vertex best = UINT32_MAX;
        std::uint64_t best_score = UINT64_MAX;
        for (std::size_t v = 0; v < n; ++v) {
            if (done[v]) continue;
            std::uint64_t primary, secondary;
            switch (pick) {
                case Pick::MinFill:
                case Pick::MinFillHighIndex:
                    primary = fill_in_count(adj, static_cast<Vertex>(v));
                    secondary = adj[v].size();
                    break;
                case Pick::MinDegree:
                    primary = adj[v].size();
                    secondary = fill_in_count(adj, static_cast<Vertex>(v));
                    break;
            }
            std::uint64_t score = (primary << 32) | secondary;
            bool better = score < best_score ||
                          (score == best_score && pick == Pick::MinFillHighIndex);
            if (best == UINT32_MAX || better) {
                best = static_cast<Vertex>(v);
                best_score = score;
            }
        }
        done[best] = true;
        order.push_back(best);
        eliminate(adj, best);
    }
    return order;
}

} // namespace

TreeDecomposition decomposition_from_elimination(const Graph& g,
                                                 const std::vector<Vertex>& order) {
    const std::size_t n = g.vertex_count();
    if (order.size() != n) throw InputError("elimination order must cover all vertices");
    if (n == 0) {
        TreeDecomposition td;
        td.tree = Graph(1, {});
        td.bags = {{}};
        td.width = -1;
        return td;
    }

    AdjSets adj = adjacency_sets(g);
    std::vector<std::uint32_t> position(n);
    for (std::size_t i = 0; i < n; ++i) position[order[i]] = static_cast<std::uint32_t>(i);

    TreeDecomposition td;
    td.bags.resize(n);
    EdgeList tree_edges;
    int width = 0;
    for (std::size_t i = 0; i < n; ++i) {
        Vertex v = order[i];
        std::vector<Vertex> bag(adj[v].begin(), adj[v].end());
        bag.push_back(v);
        std::sort(bag.begin(), bag.end());
        width = std::max(width, static_cast<int>(bag.size()) - 1);

        // Attach to the bag of the earliest-eliminated remaining neighbor;
        // isolated remainders chain to the next bag to keep the tree connected.
        if (!adj[v].empty()) {
            std::uint32_t parent = UINT32_MAX;
            for (Vertex w : adj[v]) parent = std::min(parent, position[w]);
            tree_edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(parent));
        } else if (i + 1 < n) {
            tree_edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(i + 1));
        }
        td.bags[i] = std::move(bag);
        eliminate(adj, v);
    }
    td.tree = Graph(n, std::move(tree_edges));
    td.width = n ? width : -1;
    return td;
}

namespace {

// Width-w feasibility of the elimination game over bitmask adjacency, with
// memoization on the set of eliminated vertices (the fill graph depends only
// on that set). Simplicial vertices of degree <= w are eliminated without
// branching, which collapses the search on sparse graphs.
class ExactSearch {
public:
    ExactSearch(const Graph& g, int w) : w_(w), n_(g.vertex_count()) {
        adj_.assign(n_, 0);
        for (const auto& [u, v] : g.edges()) {
            adj_[u] |= (1ULL << v);
            adj_[v] |= (1ULL << u);
        }
    }

    bool run(std::vector<Vertex>& order_out) {
        order_.clear();
        visited_.clear();
        done_mask_ = 0;
        if (!dfs(0)) return false;
        order_out = order_;
        return true;
    }

private:
    bool is_simplicial(std::size_t v) const {
        std::uint64_t nb = adj_[v];
        while (nb) {
            auto u = static_cast<std::size_t>(std::countr_zero(nb));
            nb &= nb - 1;
            if (adj_[v] & ~adj_[u] & ~(1ULL << u)) return false;
        }
        return true;
    }

    // removes v, adds fill among its neighbors; returns rows to restore
    std::vector<std::pair<std::size_t, std::uint64_t>> eliminate_masked(std::size_t v) {
        std::vector<std::pair<std::size_t, std::uint64_t>> saved;
        std::uint64_t nb = adj_[v];
        std::uint64_t rest = nb;
        while (rest) {
            auto u = static_cast<std::size_t>(std::countr_zero(rest));
            rest &= rest - 1;
            saved.emplace_back(u, adj_[u]);
            adj_[u] = (adj_[u] | nb) & ~(1ULL << u) & ~(1ULL << v);
        }
        saved.emplace_back(v, adj_[v]);
        adj_[v] = 0;
        done_mask_ |= (1ULL << v);
        order_.push_back(static_cast<Vertex>(v));
        return saved;
    }

    void undo(const std::vector<std::pair<std::size_t, std::uint64_t>>& saved) {
        for (auto it = saved.rbegin(); it != saved.rend(); ++it) adj_[it->first] = it->second;
        std::size_t v = saved.back().first;
        done_mask_ &= ~(1ULL << v);
        order_.pop_back();
    }

    // minor-min-width lower bound of the remaining graph: repeatedly contract
    // a minimum-degree vertex into its smallest-degree neighbor
    int remaining_lower_bound() const {
        std::vector<std::uint64_t> adj = adj_;
        std::uint64_t alive = ~done_mask_ & ((n_ == 64 ? ~0ULL : (1ULL << n_) - 1));
        int bound = 0;
        while (std::popcount(alive) >= 2) {
            std::size_t best = SIZE_MAX, best_deg = SIZE_MAX;
            std::uint64_t scan = alive;
            while (scan) {
                auto v = static_cast<std::size_t>(std::countr_zero(scan));
                scan &= scan - 1;
                auto deg = static_cast<std::size_t>(std::popcount(adj[v]));
                if (deg < best_deg) {
                    best_deg = deg;
                    best = v;
                }
            }
            bound = std::max(bound, static_cast<int>(best_deg));
            if (best_deg == 0) {
                alive &= ~(1ULL << best);
                continue;
            }
            // contract into the lowest-degree neighbor
            std::uint64_t nb = adj[best];
            std::size_t partner = SIZE_MAX, partner_deg = SIZE_MAX;
            while (nb) {
                auto u = static_cast<std::size_t>(std::countr_zero(nb));
                nb &= nb - 1;
                auto deg = static_cast<std::size_t>(std::popcount(adj[u]));
                if (deg < partner_deg) {
                    partner_deg = deg;
                    partner = u;
                }
            }
            adj[partner] = (adj[partner] | adj[best]) & ~(1ULL << partner) & ~(1ULL << best);
            std::uint64_t touch = adj[best];
            while (touch) {
                auto u = static_cast<std::size_t>(std::countr_zero(touch));
                touch &= touch - 1;
                adj[u] = (adj[u] & ~(1ULL << best)) | (u == partner ? 0 : (1ULL << partner));
                adj[u] &= ~(1ULL << u);
            }
            alive &= ~(1ULL << best);
        }
        return bound;
    }

    bool dfs(std::size_t eliminated) {
        if (eliminated == n_) return true;

        // forced move: a low-degree simplicial vertex can always go first
        for (std::size_t v = 0; v < n_; ++v) {
            if (done_mask_ & (1ULL << v)) continue;
            if (std::popcount(adj_[v]) <= w_ && is_simplicial(v)) {
                auto saved = eliminate_masked(v);
                if (dfs(eliminated + 1)) return true;
                undo(saved);
                return false;
            }
        }

        if (remaining_lower_bound() > w_) return false;
        if (!visited_.insert(done_mask_).second) return false;

        // branch on low-degree vertices first
        std::vector<std::pair<int, std::size_t>> candidates;
        for (std::size_t v = 0; v < n_; ++v) {
            if (done_mask_ & (1ULL << v)) continue;
            int deg = std::popcount(adj_[v]);
            if (deg <= w_) candidates.emplace_back(deg, v);
        }
        std::sort(candidates.begin(), candidates.end());
        for (const auto& [deg, v] : candidates) {
            auto saved = eliminate_masked(v);
            if (dfs(eliminated + 1)) return true;
            undo(saved);
        }
        return false;
    }

    int w_;
    std::size_t n_;
    std::vector<std::uint64_t> adj_;
    std::uint64_t done_mask_ = 0;
    std::vector<Vertex> order_;
    std::unordered_set<std::uint64_t> visited_;
};

} // namespace

int degeneracy(const Graph& g) {
    const std::size_t n = g.vertex_count();
    AdjSets adj = adjacency_sets(g);
    std::vector<bool> done(n, false);
    int best = 0;
    for (std::size_t step = 0; step < n; ++step) {
        Vertex v = UINT32_MAX;
        for (std::size_t u = 0; u < n; ++u)
            if (!done[u] && (v == UINT32_MAX || adj[u].size() < adj[v].size()))
                v = static_cast<Vertex>(u);
        best = std::max(best, static_cast<int>(adj[v].size()));
        done[v] = true;
        for (Vertex w : adj[v]) adj[w].erase(v);
        adj[v].clear();
    }
    return best;
}

TreeDecomposition tree_decomposition(const Graph& g, DecompositionMode mode) {
    if (mode == DecompositionMode::Heuristic)
        return decomposition_from_elimination(g, elimination_order(g, Pick::MinFill));

    if (g.vertex_count() > kExactTreewidthGuard)
        throw SizeGuardError("exact treewidth is guarded at " +
                             std::to_string(kExactTreewidthGuard) + " vertices, got " +
                             std::to_string(g.vertex_count()));

    auto heuristic = decomposition_from_elimination(g, elimination_order(g, Pick::MinFill));
    int lower = degeneracy(g);
    if (heuristic.width <= lower) return heuristic;

    for (int w = lower; w < heuristic.width; ++w) {
        ExactSearch search(g, w);
        std::vector<Vertex> order;
        if (search.run(order)) return decomposition_from_elimination(g, order);
    }
    return heuristic;
}

TreeDecomposition tree_decomposition_best_effort(const Graph& g) {
    TreeDecomposition best = decomposition_from_elimination(g, elimination_order(g, Pick::MinFill));
    for (Pick pick : {Pick::MinDegree, Pick::MinFillHighIndex}) {
        auto td = decomposition_from_elimination(g, elimination_order(g, pick));
        if (td.width < best.width) best = std::move(td);
    }
    return best;
}

CertificateReport validate_tree_decomposition(const Graph& g, const TreeDecomposition& td) {
    CertificateReport report;
    const std::size_t n = g.vertex_count();

    if (td.bags.size() != td.tree.vertex_count())
        report.add("shape", "bag count differs from tree node count");
    if (!td.tree.is_tree() && !(td.tree.vertex_count() == 1 && td.tree.edge_count() == 0))
        report.add("tree", "decomposition tree is not a tree");

    std::vector<std::vector<std::uint32_t>> holding(n);
    int width = -1;
    for (std::size_t b = 0; b < td.bags.size(); ++b) {
        width = std::max(width, static_cast<int>(td.bags[b].size()) - 1);
        for (Vertex v : td.bags[b]) {
            if (v >= n) {
                report.add("bag_range", "bag " + std::to_string(b) + " contains out-of-range vertex");
                continue;
            }
            holding[v].push_back(static_cast<std::uint32_t>(b));
        }
    }
    if (width != td.width) report.add("width", "declared width does not match bags");

    for (std::size_t v = 0; v < n; ++v)
        if (holding[v].empty())
            report.add("vertex_coverage", "vertex " + std::to_string(v) + " is in no bag");

    for (const auto& [u, v] : g.edges()) {
        bool found = false;
        for (std::uint32_t b : holding[u]) {
            if (std::binary_search(td.bags[b].begin(), td.bags[b].end(), v)) {
                found = true;
                break;
            }
        }
        if (!found)
            report.add("edge_coverage", "edge {" + std::to_string(u) + "," + std::to_string(v) +
                                            "} is in no bag");
    }

    // connected-subtree condition per vertex
    for (std::size_t v = 0; v < n; ++v) {
        if (holding[v].size() <= 1) continue;
        std::set<std::uint32_t> nodes(holding[v].begin(), holding[v].end());
        std::vector<std::uint32_t> stack = {*nodes.begin()};
        std::set<std::uint32_t> seen = {*nodes.begin()};
        while (!stack.empty()) {
            std::uint32_t b = stack.back();
            stack.pop_back();
            for (Vertex w : td.tree.neighbors(b))
                if (nodes.count(w) && !seen.count(w)) {
                    seen.insert(w);
                    stack.push_back(w);
                }
        }
        if (seen.size() != nodes.size())
            report.add("subtree", "bags of vertex " + std::to_string(v) + " are disconnected");
    }

    report.metrics["width"] = td.width;
    report.metrics["nodes"] = td.bags.size();
    return report;
}

} // namespace treeram
