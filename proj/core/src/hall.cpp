#include "treeram/hall.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

namespace treeram {

namespace {

struct Matcher {
    const std::vector<std::vector<std::uint32_t>>& adj; // set -> compact element ids
    std::vector<std::int32_t>& owner;                   // element -> set or -1
    std::vector<bool> element_seen;
    std::vector<bool> set_seen;

    bool augment(std::uint32_t set_index) {
        set_seen[set_index] = true;
        for (std::uint32_t e : adj[set_index]) {
            if (element_seen[e]) continue;
            element_seen[e] = true;
            if (owner[e] < 0 || augment(static_cast<std::uint32_t>(owner[e]))) {
                owner[e] = static_cast<std::int32_t>(set_index);
                return true;
            }
        }
        return false;
    }
};

} // namespace

HallResult hall_matching(const std::vector<std::vector<Vertex>>& sets) {
    // compact the ground set
    std::unordered_map<Vertex, std::uint32_t> id;
    std::vector<Vertex> elements;
    std::vector<std::vector<std::uint32_t>> adj(sets.size());
    for (std::size_t i = 0; i < sets.size(); ++i) {
        for (Vertex v : sets[i]) {
            auto [it, fresh] = id.try_emplace(v, static_cast<std::uint32_t>(elements.size()));
            if (fresh) elements.push_back(v);
            adj[i].push_back(it->second);
        }
        std::sort(adj[i].begin(), adj[i].end());
        adj[i].erase(std::unique(adj[i].begin(), adj[i].end()), adj[i].end());
    }

    std::vector<std::int32_t> owner(elements.size(), -1);
    Matcher matcher{adj, owner};
    for (std::uint32_t i = 0; i < sets.size(); ++i) {
        matcher.element_seen.assign(elements.size(), false);
        matcher.set_seen.assign(sets.size(), false);
        if (!matcher.augment(i)) {
            // sets visited in the failed search form a Hall witness
            HallResult result;
            for (std::uint32_t j = 0; j < sets.size(); ++j)
                if (matcher.set_seen[j]) result.deficient.push_back(j);
            return result;
        }
    }

    HallResult result;
    result.complete = true;
    result.representative.assign(sets.size(), 0);
    for (std::size_t e = 0; e < elements.size(); ++e)
        if (owner[e] >= 0) result.representative[static_cast<std::size_t>(owner[e])] = elements[e];
    return result;
}

bool verify_hall_witness(const std::vector<std::vector<Vertex>>& sets,
                         const std::vector<std::uint32_t>& witness) {
    if (witness.empty()) return false;
    std::set<Vertex> united;
    for (std::uint32_t i : witness) {
        if (i >= sets.size()) return false;
        united.insert(sets[i].begin(), sets[i].end());
    }
    return united.size() < witness.size();
}

} // namespace treeram
