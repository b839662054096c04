#include "treeram/sparse_embed.hpp"

#include <algorithm>
#include <cmath>

#include "treeram/errors.hpp"
#include "treeram/hall.hpp"
#include "treeram/rng.hpp"

namespace treeram {

namespace {

double step_bound(double rho, double p, std::uint32_t ldeg, std::size_t m) {
    return std::pow(rho * p / 2.0, static_cast<double>(ldeg)) * static_cast<double>(m);
}

} // namespace

SparseResult sparse_embed(const ColoredHost& host, const MonoStructure& structure,
                          const Graph& pattern, const Graph& h, const HPreparation& prep,
                          const SparseParams& params) {
    const std::size_t n = h.vertex_count();
    const std::size_t q = prep.classes.size();
    if (prep.class_of.size() != n) throw InputError("sparse_embed: preparation mismatch");

    // class index (bfs position i, slot a) -> pattern vertex (natural base id, a)
    const std::uint32_t dt = prep.delta_tilde;
    std::vector<std::uint32_t> class_to_pattern(q);
    for (std::size_t c = 0; c < q; ++c) {
        Vertex base_vertex = prep.class_to_base[c];
        std::uint32_t slot = static_cast<std::uint32_t>(c % dt);
        class_to_pattern[c] = base_vertex * dt + slot;
    }
    if (structure.subsets.size() != pattern.vertex_count())
        throw InputError("sparse_embed: structure does not cover the pattern");
    for (std::size_t c = 0; c < q; ++c)
        if (class_to_pattern[c] >= structure.subsets.size())
            throw InputError("sparse_embed: pattern index out of range");

    // every H edge must span a pattern edge
    for (const auto& [u, v] : h.edges()) {
        std::uint32_t cu = prep.class_of[u], cv = prep.class_of[v];
        if (cu == cv) throw InputError("sparse_embed: adjacent vertices share a class");
        if (!pattern.has_edge(class_to_pattern[cu], class_to_pattern[cv]))
            throw InputError("sparse_embed: H edge spans a non-edge of the pattern");
    }

    auto adjacency = color_adjacency(host, structure.color);
    Graph mono = color_subgraph(host, structure.color);
    const std::size_t host_n = host.graph.vertex_count();

    std::vector<Bitset> candidates(n);
    std::vector<std::size_t> part_m(n);
    for (std::size_t v = 0; v < n; ++v) {
        Bitset bits(host_n);
        for (Vertex w : structure.subsets[class_to_pattern[prep.class_of[v]]]) bits.set(w);
        part_m[v] = bits.count();
        candidates[v] = std::move(bits);
    }

    std::vector<std::int64_t> image(n, -1);
    std::vector<std::uint32_t> ldeg(n, 0);

    SparseResult result;
    auto steps = nlohmann::json::array();
    const std::size_t two_delta = 2 * prep.delta;

    for (std::size_t cur = 0; cur < q; ++cur) {
        const auto& w_class = prep.classes[cur];
        if (w_class.empty()) continue;

        // filter candidates of the class by (b') and (c')
        std::vector<std::vector<Vertex>> filtered(w_class.size());
        for (std::size_t yi = 0; yi < w_class.size(); ++yi) {
            Vertex y = w_class[yi];
            std::vector<Vertex> right;
            for (Vertex z : h.neighbors(y))
                if (prep.class_of[z] > cur) right.push_back(z);

            // future edges touched by y's right-neighbors
            std::vector<std::pair<Vertex, Vertex>> touched;
            for (Vertex z : right)
                for (Vertex zp : h.neighbors(z))
                    if (zp != y && prep.class_of[zp] > cur && image[zp] < 0) {
                        Vertex lo = std::min(z, zp), hi = std::max(z, zp);
                        if (std::find(touched.begin(), touched.end(),
                                      std::make_pair(lo, hi)) == touched.end())
                            touched.emplace_back(lo, hi);
                    }

            auto y_candidates = candidates[y].to_vector();
            for (Vertex v : y_candidates) {
                bool good = true;
                // (b'): degree into each later neighbor's candidate set
                for (Vertex z : right) {
                    std::size_t have = adjacency[v].intersection_count(candidates[z]);
                    std::size_t j = std::min<std::size_t>(ldeg[y] + ldeg[z], two_delta);
                    double need =
                        (params.rho - params.eps_at(j)) * params.p *
                        static_cast<double>(candidates[z].count());
                    if (static_cast<double>(have) < need - 1e-12) {
                        good = false;
                        break;
                    }
                }
                // (c'): candidate pairs of touched future edges stay dense
                if (good) {
                    for (const auto& [z, zp] : touched) {
                        Bitset cz = candidates[z];
                        bool z_right = h.has_edge(y, z);
                        if (z_right) cz &= adjacency[v];
                        Bitset czp = candidates[zp];
                        if (h.has_edge(y, zp)) czp &= adjacency[v];
                        std::size_t j =
                            std::min<std::size_t>(ldeg[z] + ldeg[zp] + 1, two_delta);
                        BipartitePair pair{&mono, cz.to_vector(), czp.to_vector()};
                        auto cert = check_dense_pair(
                            pair, params.eps_at(j), params.rho, params.p, CheckMode::Sampled,
                            Rng::derive(params.seed, (cur << 20) ^ (v * 131) ^ z),
                            params.pair_budget);
                        if (!cert.pass) {
                            good = false;
                            break;
                        }
                    }
                }
                if (good) filtered[yi].push_back(v);
            }
        }

        auto hall = hall_matching(filtered);
        if (!hall.complete) {
            nlohmann::json witness;
            auto ys = nlohmann::json::array();
            std::vector<std::vector<Vertex>> witness_sets;
            for (auto i : hall.deficient) {
                ys.push_back(w_class[i]);
                witness_sets.push_back(filtered[i]);
            }
            witness["vertices"] = ys;
            witness["indices"] = hall.deficient;
            witness["witness_valid"] = verify_hall_witness(filtered, hall.deficient);
            std::size_t united = 0;
            {
                Bitset u(host_n);
                for (const auto& set : witness_sets)
                    for (Vertex v : set) u.set(v);
                united = u.count();
            }
            witness["union_size"] = united;
            result.failure = {{"stage", "hall"},
                              {"ell", cur},
                              {"class_pattern_vertex", class_to_pattern[cur]},
                              {"class_base_vertex", prep.class_to_base[cur]},
                              {"witness", witness}};
            result.invariant_log["steps"] = steps;
            return result;
        }

        // extend the embedding and shrink candidate sets
        for (std::size_t yi = 0; yi < w_class.size(); ++yi)
            image[w_class[yi]] = hall.representative[yi];

        bool monotone_ok = true, bound_ok = true, formula_ok = true;
        std::size_t min_candidate = SIZE_MAX;
        for (std::size_t z = 0; z < n; ++z) {
            if (image[z] >= 0 || prep.class_of[z] <= cur) continue;
            Vertex in_class_neighbor = UINT32_MAX;
            for (Vertex w : h.neighbors(static_cast<Vertex>(z)))
                if (prep.class_of[w] == cur) {
                    if (in_class_neighbor != UINT32_MAX)
                        throw InputError("sparse_embed: two neighbors in one class "
                                         "(distance-4 property violated)");
                    in_class_neighbor = w;
                }
            if (in_class_neighbor != UINT32_MAX) {
                Bitset before = candidates[z];
                candidates[z] &= adjacency[static_cast<std::size_t>(image[in_class_neighbor])];
                ++ldeg[z];
                if (params.certified && !candidates[z].is_subset_of(before)) monotone_ok = false;
            }
            if (params.certified) {
                double bound = step_bound(params.rho, params.p, ldeg[z], part_m[z]);
                if (static_cast<double>(candidates[z].count()) < bound - 1e-9) bound_ok = false;
                min_candidate = std::min(min_candidate, candidates[z].count());
                if (params.recompute_candidates) {
                    Bitset fresh(host_n);
                    for (Vertex w :
                         structure.subsets[class_to_pattern[prep.class_of[z]]])
                        fresh.set(w);
                    for (Vertex w : h.neighbors(static_cast<Vertex>(z)))
                        if (image[w] >= 0)
                            fresh &= adjacency[static_cast<std::size_t>(image[w])];
                    if (!(fresh == candidates[z])) formula_ok = false;
                }
            }
        }
        result.all_monotone = result.all_monotone && monotone_ok;
        result.all_bounds = result.all_bounds && bound_ok;
        result.all_formula = result.all_formula && formula_ok;
        steps.push_back({{"ell", cur},
                         {"class_size", w_class.size()},
                         {"monotone_ok", monotone_ok},
                         {"bound_ok", bound_ok},
                         {"formula_ok", formula_ok},
                         {"min_candidate", min_candidate == SIZE_MAX ? 0 : min_candidate}});
    }

    result.success = true;
    result.map.color = structure.color;
    result.map.image.assign(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
        if (image[v] < 0) {
            result.success = false;
            result.failure = {{"stage", "unembedded"}, {"vertex", v}};
            break;
        }
        result.map.image[v] = static_cast<Vertex>(image[v]);
    }
    result.invariant_log["steps"] = steps;
    return result;
}

} // namespace treeram
