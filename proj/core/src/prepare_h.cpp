#include "treeram/prepare_h.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include "treeram/coloring.hpp"
#include "treeram/errors.hpp"

namespace treeram {

std::uint32_t delta_tilde_of(std::uint32_t delta) {
    return delta * delta * delta * delta + 2 * delta + 1;
}

HPreparation prepare_h(const Graph& h, const Graph& base,
                       const std::vector<std::pair<Vertex, std::uint32_t>>& psi,
                       std::uint32_t s, std::uint32_t delta) {
    const std::size_t n = h.vertex_count();
    if (psi.size() != n) throw InputError("prepare_h: witness does not cover H");
    if (h.max_degree() > delta) throw InputError("prepare_h: H degree exceeds the bound");
    {
        std::set<std::pair<Vertex, std::uint32_t>> images;
        for (const auto& [node, slot] : psi) {
            if (node >= base.vertex_count() || slot >= s)
                throw InputError("prepare_h: witness image out of range");
            if (!images.insert({node, slot}).second)
                throw InputError("prepare_h: witness is not injective");
        }
        for (const auto& [u, v] : h.edges())
            if (psi[u].first != psi[v].first && !base.has_edge(psi[u].first, psi[v].first))
                throw InputError("prepare_h: witness violates product adjacency");
    }

    HPreparation prep;
    prep.delta = delta;
    prep.delta_tilde = delta_tilde_of(delta);

    // BFS order of the base from vertex 0 (components chained by lowest id)
    {
        std::vector<bool> seen(base.vertex_count(), false);
        for (std::size_t start = 0; start < base.vertex_count(); ++start) {
            if (seen[start]) continue;
            std::queue<Vertex> queue;
            queue.push(static_cast<Vertex>(start));
            seen[start] = true;
            while (!queue.empty()) {
                Vertex v = queue.front();
                queue.pop();
                prep.base_order.push_back(v);
                for (Vertex w : base.neighbors(v))
                    if (!seen[w]) {
                        seen[w] = true;
                        queue.push(w);
                    }
            }
        }
    }
    std::vector<std::uint32_t> base_position(base.vertex_count());
    for (std::size_t i = 0; i < prep.base_order.size(); ++i)
        base_position[prep.base_order[i]] = static_cast<std::uint32_t>(i);

    // group H by base vertex
    std::vector<std::vector<Vertex>> groups(base.vertex_count());
    for (std::size_t v = 0; v < n; ++v) groups[psi[v].first].push_back(static_cast<Vertex>(v));

    // parents of x: earlier neighbors in the BFS order
    Graph h3 = graph_power(h, 3);

    const std::size_t q = base.vertex_count() * prep.delta_tilde;
    prep.classes.assign(q, {});
    prep.class_of.assign(n, 0);
    prep.left_degree.assign(q, 0);
    prep.class_to_base.assign(q, 0);
    for (std::size_t i = 0; i < prep.base_order.size(); ++i)
        for (std::uint32_t a = 0; a < prep.delta_tilde; ++a)
            prep.class_to_base[i * prep.delta_tilde + a] = prep.base_order[i];

    for (std::size_t i = 0; i < prep.base_order.size(); ++i) {
        Vertex x = prep.base_order[i];
        const auto& group = groups[x];
        if (group.empty()) continue;

        // membership in earlier groups of parents ∪ own group
        std::vector<bool> in_parent_groups(n, false);
        for (Vertex p : base.neighbors(x))
            if (base_position[p] < base_position[x])
                for (Vertex v : groups[p]) in_parent_groups[v] = true;

        Graph local = induced_subgraph(h3, group);
        std::vector<Vertex> order(group.size());
        for (std::size_t j = 0; j < group.size(); ++j) order[j] = static_cast<Vertex>(j);
        auto f = greedy_coloring(local, order);

        // left degree: neighbors in earlier-colored own-group vertices or in
        // parent groups
        std::vector<std::uint32_t> group_color(n, UINT32_MAX);
        for (std::size_t j = 0; j < group.size(); ++j) group_color[group[j]] = f[j];
        std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<Vertex>> refined;
        for (std::size_t j = 0; j < group.size(); ++j) {
            Vertex v = group[j];
            std::uint32_t ldeg = 0;
            for (Vertex w : h.neighbors(v)) {
                if (in_parent_groups[w]) ++ldeg;
                else if (group_color[w] != UINT32_MAX && group_color[w] < f[j]) ++ldeg;
            }
            refined[{f[j], ldeg}].push_back(v);
        }
        if (refined.size() > prep.delta_tilde)
            throw InputError("prepare_h: class budget exceeded"); // cannot happen for valid input

        std::uint32_t slot = 0;
        for (const auto& [key, members] : refined) {
            std::uint32_t index = static_cast<std::uint32_t>(i) * prep.delta_tilde + slot;
            prep.classes[index] = members;
            std::sort(prep.classes[index].begin(), prep.classes[index].end());
            prep.left_degree[index] = key.second;
            for (Vertex v : members) prep.class_of[v] = index;
            ++slot;
        }
    }
    return prep;
}

CertificateReport verify_preparation(const Graph& h, const HPreparation& prep) {
    CertificateReport report;
    const std::size_t n = h.vertex_count();

    std::vector<std::int64_t> owner(n, -1);
    for (std::size_t c = 0; c < prep.classes.size(); ++c)
        for (Vertex v : prep.classes[c]) {
            if (v >= n) {
                report.add("range", "class contains out-of-range vertex");
                continue;
            }
            if (owner[v] != -1) report.add("partition", "vertex in two classes");
            owner[v] = static_cast<std::int64_t>(c);
            if (prep.class_of[v] != c) report.add("class_of", "class_of mismatch");
        }
    for (std::size_t v = 0; v < n; ++v)
        if (owner[v] == -1)
            report.add("partition", "vertex " + std::to_string(v) + " unassigned");

    // distance >= 4 inside classes
    for (std::size_t c = 0; c < prep.classes.size(); ++c) {
        const auto& members = prep.classes[c];
        for (std::size_t i = 0; i < members.size(); ++i) {
            auto dist = h.bfs_distances(members[i]);
            for (std::size_t j = i + 1; j < members.size(); ++j)
                if (dist[members[j]] >= 0 && dist[members[j]] < 4)
                    report.add("distance", "class " + std::to_string(c) +
                                               " holds vertices at distance " +
                                               std::to_string(dist[members[j]]));
        }
    }

    // equal left degree at the class threshold
    for (std::size_t c = 0; c < prep.classes.size(); ++c) {
        for (Vertex v : prep.classes[c]) {
            std::uint32_t ldeg = 0;
            for (Vertex w : h.neighbors(v))
                if (prep.class_of[w] < c) ++ldeg;
            if (ldeg != prep.left_degree[c])
                report.add("left_degree", "vertex " + std::to_string(v) +
                                              " has left degree " + std::to_string(ldeg) +
                                              ", class says " +
                                              std::to_string(prep.left_degree[c]));
        }
    }

    report.metrics["classes_total"] = prep.classes.size();
    std::size_t nonempty = 0;
    for (const auto& members : prep.classes)
        if (!members.empty()) ++nonempty;
    report.metrics["classes_nonempty"] = nonempty;
    report.metrics["delta_tilde"] = prep.delta_tilde;
    return report;
}

} // namespace treeram
