#include "treeram/separator.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "treeram/errors.hpp"

namespace treeram {

double TreewidthProfile::operator()(double x) const {
    if (x < 0) x = 0;
    switch (kind) {
        case Kind::Constant: return c;
        case Kind::SqrtScaled: return c * std::sqrt(x);
        case Kind::LogScaled: return c * std::log2(x + 1.0);
        case Kind::CeilSqrtPlus: return std::ceil(std::sqrt(x)) + c;
    }
    return c;
}

std::string TreewidthProfile::describe() const {
    switch (kind) {
        case Kind::Constant: return "const:" + std::to_string(c);
        case Kind::SqrtScaled: return "sqrt:" + std::to_string(c);
        case Kind::LogScaled: return "log:" + std::to_string(c);
        case Kind::CeilSqrtPlus: return "csqrt:" + std::to_string(c);
    }
    return "";
}

TreewidthProfile TreewidthProfile::constant(double value) {
    return {Kind::Constant, value, std::nullopt};
}
TreewidthProfile TreewidthProfile::sqrt_scaled(double factor) {
    return {Kind::SqrtScaled, factor, 0.5};
}
TreewidthProfile TreewidthProfile::log_scaled(double factor) {
    return {Kind::LogScaled, factor, std::nullopt};
}
TreewidthProfile TreewidthProfile::ceil_sqrt_plus(double offset) {
    return {Kind::CeilSqrtPlus, offset, std::nullopt};
}

TreewidthProfile TreewidthProfile::parse(const std::string& text) {
    auto colon = text.find(':');
    std::string name = colon == std::string::npos ? text : text.substr(0, colon);
    double value = colon == std::string::npos ? 1.0 : std::stod(text.substr(colon + 1));
    if (name == "const") return constant(value);
    if (name == "sqrt") return sqrt_scaled(value);
    if (name == "log") return log_scaled(value);
    if (name == "csqrt") return ceil_sqrt_plus(value);
    throw InputError("unknown profile '" + text + "' (expected const:/sqrt:/log:/csqrt:)");
}

CertificateReport validate_separator(const Graph& g, const SeparatorTriple& triple) {
    CertificateReport report;
    const std::size_t n = g.vertex_count();
    std::vector<int> where(n, -1);
    auto place = [&](const std::vector<Vertex>& part, int tag, const char* name) {
        for (Vertex v : part) {
            if (v >= n) {
                report.add("range", std::string(name) + " contains out-of-range vertex");
                continue;
            }
            if (where[v] != -1)
                report.add("disjoint", "vertex " + std::to_string(v) + " appears twice");
            where[v] = tag;
        }
    };
    place(triple.s, 0, "S");
    place(triple.a, 1, "A");
    place(triple.b, 2, "B");
    for (std::size_t v = 0; v < n; ++v)
        if (where[v] == -1)
            report.add("cover", "vertex " + std::to_string(v) + " is unassigned");
    for (const auto& [u, v] : g.edges())
        if ((where[u] == 1 && where[v] == 2) || (where[u] == 2 && where[v] == 1))
            report.add("crossing", "edge {" + std::to_string(u) + "," + std::to_string(v) +
                                       "} connects A and B");
    report.metrics["s_size"] = triple.s.size();
    report.metrics["a_size"] = triple.a.size();
    report.metrics["b_size"] = triple.b.size();
    return report;
}

namespace {

// Groups components (sizes known <= (2/3)n for a workable bag) into two sides
// of at most (2/3)n each; returns false when this bag does not work.
bool group_components(std::size_t n, const std::vector<std::vector<Vertex>>& components,
                      std::vector<Vertex>& a, std::vector<Vertex>& b) {
    a.clear();
    b.clear();
    const double limit = 2.0 * static_cast<double>(n) / 3.0 + 1e-9;
    std::vector<std::size_t> index(components.size());
    for (std::size_t i = 0; i < index.size(); ++i) index[i] = i;
    std::sort(index.begin(), index.end(), [&](std::size_t lhs, std::size_t rhs) {
        if (components[lhs].size() != components[rhs].size())
            return components[lhs].size() > components[rhs].size();
        return components[lhs] < components[rhs];
    });

    std::size_t total = 0;
    for (const auto& comp : components) total += comp.size();

    std::size_t a_size = 0;
    if (!index.empty() &&
        static_cast<double>(components[index[0]].size()) * 3 >= static_cast<double>(n)) {
        // one big side: the largest component alone
        a = components[index[0]];
        a_size = a.size();
        for (std::size_t i = 1; i < index.size(); ++i)
            b.insert(b.end(), components[index[i]].begin(), components[index[i]].end());
    } else {
        // accumulate until B = rest fits
        std::size_t i = 0;
        double need = static_cast<double>(total) - limit;
        while (i < index.size() && static_cast<double>(a_size) < need) {
            a.insert(a.end(), components[index[i]].begin(), components[index[i]].end());
            a_size += components[index[i]].size();
            ++i;
        }
        for (; i < index.size(); ++i)
            b.insert(b.end(), components[index[i]].begin(), components[index[i]].end());
    }
    if (static_cast<double>(a.size()) > limit || static_cast<double>(b.size()) > limit)
        return false;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return true;
}

} // namespace

SeparatorTriple balanced_separator(const Graph& g, const TreeDecomposition& td) {
    auto valid = validate_tree_decomposition(g, td);
    if (!valid.pass) throw InputError("balanced_separator: invalid tree decomposition");

    const std::size_t n = g.vertex_count();
    std::vector<bool> in_bag(n, false);
    std::vector<int> comp(n, -1);
    std::vector<Vertex> stack;

    for (std::size_t bag_index = 0; bag_index < td.bags.size(); ++bag_index) {
        const auto& bag = td.bags[bag_index];
        std::fill(in_bag.begin(), in_bag.end(), false);
        for (Vertex v : bag) in_bag[v] = true;
        std::fill(comp.begin(), comp.end(), -1);

        std::vector<std::vector<Vertex>> components;
        for (std::size_t start = 0; start < n; ++start) {
            if (in_bag[start] || comp[start] != -1) continue;
            components.emplace_back();
            auto& current = components.back();
            comp[start] = static_cast<int>(components.size()) - 1;
            stack.assign(1, static_cast<Vertex>(start));
            while (!stack.empty()) {
                Vertex v = stack.back();
                stack.pop_back();
                current.push_back(v);
                for (Vertex w : g.neighbors(v))
                    if (!in_bag[w] && comp[w] == -1) {
                        comp[w] = comp[v];
                        stack.push_back(w);
                    }
            }
        }

        SeparatorTriple triple;
        if (group_components(n, components, triple.a, triple.b)) {
            triple.s = bag;
            return triple;
        }
    }
    // A centroid bag always satisfies the grouping rule, so this is a
    // decomposition bug rather than a reachable state.
    throw InputError("balanced_separator: no bag admits a balanced grouping");
}

int ceil_log_3_2(std::size_t n) {
    if (n <= 1) return 0;
    // smallest j with 3^j >= n * 2^j
    __int128 pow3 = 1, pow2 = 1;
    int j = 0;
    while (pow3 < static_cast<__int128>(n) * pow2) {
        pow3 *= 3;
        pow2 *= 2;
        ++j;
    }
    return j;
}

double ordering_size_bound(const TreewidthProfile& profile, std::size_t n) {
    double total = 0;
    double x = static_cast<double>(n);
    int terms = ceil_log_3_2(n);
    for (int j = 0; j <= terms; ++j) {
        total += profile(x) + 1.0;
        x *= 2.0 / 3.0;
    }
    return total;
}

namespace {

struct OrderingBuilder {
    const Graph& g;
    const TreewidthProfile& profile;

    // subset sorted ascending (global ids); appends to order/sets
    void run(const std::vector<Vertex>& subset, std::vector<Vertex>& order,
             std::vector<std::vector<Vertex>>& sets) {
        if (subset.empty()) return;
        if (subset.size() == 1) {
            order.push_back(subset[0]);
            sets.push_back({subset[0]});
            return;
        }

        Graph sub = induced_subgraph(g, subset);
        const double budget = profile(static_cast<double>(subset.size())) + 1.0 + 1e-9;

        TreeDecomposition td = tree_decomposition(sub, DecompositionMode::Heuristic);
        if (static_cast<double>(td.width + 1) > budget) {
            auto alt = tree_decomposition_best_effort(sub);
            if (alt.width < td.width) td = std::move(alt);
        }
        if (static_cast<double>(td.width + 1) > budget &&
            sub.vertex_count() <= kExactTreewidthGuard) {
            auto exact = tree_decomposition(sub, DecompositionMode::Exact);
            if (exact.width < td.width) td = std::move(exact);
        }
        if (static_cast<double>(td.width + 1) > budget)
            throw CertificateFailure(
                "separator_ordering: no separator within profile budget on a subgraph of " +
                    std::to_string(subset.size()) + " vertices (width " +
                    std::to_string(td.width) + ", budget t(x)+1 = " + std::to_string(budget) +
                    ")",
                subset.size());

        SeparatorTriple triple = balanced_separator(sub, td);
        auto lift = [&](const std::vector<Vertex>& local) {
            std::vector<Vertex> out;
            out.reserve(local.size());
            for (Vertex v : local) out.push_back(subset[v]);
            std::sort(out.begin(), out.end());
            return out;
        };
        std::vector<Vertex> sep = lift(triple.s);
        std::vector<Vertex> side_a = lift(triple.a);
        std::vector<Vertex> side_b = lift(triple.b);

        std::size_t begin_a = order.size();
        run(side_a, order, sets);
        std::size_t end_a = order.size();
        for (Vertex v : sep) {
            order.push_back(v);
            sets.push_back(sep);
        }
        run(side_b, order, sets);

        // fold the level separator into every set from both branches
        for (std::size_t i = begin_a; i < end_a; ++i) merge_into(sets[i], sep);
        for (std::size_t i = end_a + sep.size(); i < order.size(); ++i) merge_into(sets[i], sep);
    }

    static void merge_into(std::vector<Vertex>& target, const std::vector<Vertex>& extra) {
        std::vector<Vertex> merged;
        merged.reserve(target.size() + extra.size());
        std::set_union(target.begin(), target.end(), extra.begin(), extra.end(),
                       std::back_inserter(merged));
        target = std::move(merged);
    }
};

} // namespace

SeparatorOrdering separator_ordering(const Graph& g, const TreewidthProfile& profile) {
    SeparatorOrdering result;
    std::vector<Vertex> all(g.vertex_count());
    for (std::size_t v = 0; v < g.vertex_count(); ++v) all[v] = static_cast<Vertex>(v);
    OrderingBuilder builder{g, profile};
    builder.run(all, result.order, result.sets);
    result.size_bound = ordering_size_bound(profile, g.vertex_count());
    return result;
}

CertificateReport verify_separator_ordering(const Graph& g, const SeparatorOrdering& ordering,
                                            double size_bound) {
    CertificateReport report;
    const std::size_t n = g.vertex_count();
    if (ordering.order.size() != n || ordering.sets.size() != n) {
        report.add("shape", "ordering does not cover the graph");
        return report;
    }
    std::vector<std::uint32_t> position(n);
    std::vector<bool> seen(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        Vertex v = ordering.order[i];
        if (v >= n || seen[v]) {
            report.add("permutation", "order is not a permutation");
            return report;
        }
        seen[v] = true;
        position[v] = static_cast<std::uint32_t>(i);
    }

    std::size_t max_set = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& sep = ordering.sets[i];
        max_set = std::max(max_set, sep.size());
        if (!std::binary_search(sep.begin(), sep.end(), ordering.order[i]))
            report.add("membership",
                       "S(v_" + std::to_string(i + 1) + ") does not contain v_" +
                           std::to_string(i + 1));
        if (static_cast<double>(sep.size()) > size_bound + 1e-9)
            report.add("size_bound", "|S(v_" + std::to_string(i + 1) + ")| = " +
                                         std::to_string(sep.size()) + " exceeds bound " +
                                         std::to_string(size_bound));
        for (const auto& [u, w] : g.edges()) {
            bool u_in = std::binary_search(sep.begin(), sep.end(), u);
            bool w_in = std::binary_search(sep.begin(), sep.end(), w);
            if (u_in || w_in) continue;
            std::uint32_t pu = position[u], pw = position[w];
            if ((pu < i && pw > i) || (pw < i && pu > i))
                report.add("separation", "edge {" + std::to_string(u) + "," + std::to_string(w) +
                                             "} crosses position " + std::to_string(i + 1));
        }
    }
    report.metrics["max_set_size"] = max_set;
    report.metrics["size_bound"] = size_bound;
    return report;
}

double colored_separator_bound(const TreewidthProfile& profile, std::size_t n, std::uint32_t k) {
    return static_cast<double>(k) + static_cast<double>(k) * ordering_size_bound(profile, n);
}

SeparatorTriple colored_separator(const Graph& g, const VertexColoring& coloring,
                                  std::uint32_t k, const TreewidthProfile& profile,
                                  std::uint64_t necklace_budget) {
    const std::size_t n = g.vertex_count();
    if (coloring.size() != n) throw InputError("colored_separator: coloring size mismatch");

    SeparatorOrdering ordering = separator_ordering(g, profile);

    ColorSequence position_colors(n);
    for (std::size_t i = 0; i < n; ++i) position_colors[i] = coloring[ordering.order[i]];
    NecklaceSplit split = necklace_split(position_colors, k, necklace_budget);

    std::set<Vertex> sep;
    for (std::uint32_t cut : split.cuts) {
        // first element of the cut's right interval separates the two intervals
        const auto& level_set = ordering.sets[cut];
        sep.insert(level_set.begin(), level_set.end());
    }

    std::vector<std::vector<Vertex>> class_members(k);
    std::vector<Vertex> a, b;
    for (std::size_t pos = 0; pos < n; ++pos) {
        Vertex v = ordering.order[pos];
        if (sep.count(v)) continue;
        if (split.side[split.interval_of(pos)] == 0)
            a.push_back(v);
        else
            b.push_back(v);
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());

    // sharpen ceil(|c|/2) to |c|/2: move one vertex per overfull color into S
    std::vector<std::size_t> total(k, 0);
    for (std::size_t v = 0; v < n; ++v)
        if (coloring[v] >= 0) ++total[static_cast<std::size_t>(coloring[v])];
    for (std::uint32_t c = 0; c < k; ++c) {
        double half = static_cast<double>(total[c]) / 2.0;
        for (std::vector<Vertex>* part : {&a, &b}) {
            std::size_t count = 0;
            for (Vertex v : *part)
                if (coloring[v] == static_cast<int>(c)) ++count;
            if (static_cast<double>(count) > half + 1e-9) {
                auto it = std::find_if(part->begin(), part->end(), [&](Vertex v) {
                    return coloring[v] == static_cast<int>(c);
                });
                sep.insert(*it);
                part->erase(it);
            }
        }
    }

    SeparatorTriple triple;
    triple.s.assign(sep.begin(), sep.end());
    triple.a = std::move(a);
    triple.b = std::move(b);
    return triple;
}

} // namespace treeram
