#include "treeram/congestion.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <set>

#include "treeram/errors.hpp"
#include "treeram/rng.hpp"

namespace treeram {

AuxiliaryIncidence build_auxiliary_graph(const Graph& g, std::uint32_t k,
                                         const std::vector<std::vector<Vertex>>& family,
                                         const std::vector<Vertex>& u) {
    if (k < 1) throw InputError("build_auxiliary_graph: k must be >= 1");
    std::vector<bool> used(g.vertex_count(), false);
    for (Vertex v : u) {
        if (v >= g.vertex_count()) throw InputError("build_auxiliary_graph: U out of range");
        used[v] = true;
    }
    for (const auto& set : family) {
        if (set.size() != k) throw InputError("build_auxiliary_graph: set of wrong size");
        for (Vertex v : set) {
            if (v >= g.vertex_count())
                throw InputError("build_auxiliary_graph: family vertex out of range");
            if (used[v]) throw InputError("build_auxiliary_graph: family sets must be "
                                          "pairwise disjoint and avoid U");
            used[v] = true;
        }
    }

    AuxiliaryIncidence aux;
    aux.family = family;
    aux.u = u;
    aux.incident.resize(family.size());
    for (std::size_t f = 0; f < family.size(); ++f) {
        for (std::size_t j = 0; j < u.size(); ++j) {
            bool common = true;
            for (Vertex w : family[f])
                if (!g.has_edge(w, u[j])) {
                    common = false;
                    break;
                }
            if (common) {
                aux.incident[f].push_back(static_cast<std::uint32_t>(j));
                ++aux.edge_count;
            }
        }
    }
    return aux;
}

namespace {

double congestion_bound(std::size_t n, std::uint32_t k, double xi, double p, std::size_t f,
                        std::size_t u) {
    double pk = std::pow(p, static_cast<double>(k));
    return pk * static_cast<double>(f) * static_cast<double>(u) +
           6.0 * xi * static_cast<double>(n) * pk * static_cast<double>(f);
}

// max sum of |N(v) ∩ U| over f vertices outside U, per f (prefix sums of the
// descending degree sequence)
std::vector<std::size_t> best_singletons(const Graph& g, std::uint32_t umask,
                                         std::vector<Vertex>& order_out) {
    std::vector<std::pair<std::size_t, Vertex>> items;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        if (umask & (1u << v)) continue;
        std::size_t deg = 0;
        for (Vertex w : g.neighbors(static_cast<Vertex>(v)))
            if (umask & (1u << w)) ++deg;
        items.emplace_back(deg, static_cast<Vertex>(v));
    }
    std::sort(items.begin(), items.end(), [](const auto& l, const auto& r) {
        if (l.first != r.first) return l.first > r.first;
        return l.second < r.second;
    });
    std::vector<std::size_t> prefix = {0};
    order_out.clear();
    for (const auto& [deg, v] : items) {
        prefix.push_back(prefix.back() + deg);
        order_out.push_back(v);
    }
    return prefix;
}

// max-weight selection of exactly f disjoint pairs from `mask`, weight of
// {a,b} = |N(a) ∩ N(b) ∩ U|; DP over subsets, lowest set bit matched or
// skipped
struct PairPacking {
    std::vector<std::vector<long long>> best; // best[mask][f]
    std::vector<std::uint32_t> adj_mask;

    void run(const Graph& g, std::uint32_t umask, std::uint32_t ground) {
        const std::size_t n = g.vertex_count();
        adj_mask.assign(n, 0);
        for (std::size_t v = 0; v < n; ++v)
            for (Vertex w : g.neighbors(static_cast<Vertex>(v)))
                adj_mask[v] |= (1u << w);

        std::size_t fmax = static_cast<std::size_t>(std::popcount(ground)) / 2;
        best.assign(ground + 1, {});
        for (std::uint32_t mask = 0; mask <= ground; ++mask) {
            if ((mask & ground) != mask) continue;
            auto& row = best[mask];
            row.assign(fmax + 2, LLONG_MIN);
            row[0] = 0;
            if (mask == 0) continue;
            unsigned a = static_cast<unsigned>(std::countr_zero(mask));
            std::uint32_t rest = mask & (mask - 1);
            // a unmatched
            for (std::size_t f = 0; f <= fmax; ++f)
                if (best[rest][f] != LLONG_MIN) row[f] = std::max(row[f], best[rest][f]);
            // a matched with b
            std::uint32_t others = rest;
            while (others) {
                unsigned b = static_cast<unsigned>(std::countr_zero(others));
                others &= others - 1;
                std::uint32_t sub = mask & ~(1u << a) & ~(1u << b);
                long long w = std::popcount(adj_mask[a] & adj_mask[b] & umask);
                for (std::size_t f = 0; f + 1 <= fmax + 1; ++f)
                    if (best[sub][f] != LLONG_MIN && f + 1 < row.size())
                        row[f + 1] = std::max(row[f + 1], best[sub][f] + w);
            }
        }
    }

    // reconstruct one optimal family of exactly f pairs
    std::vector<std::vector<Vertex>> reconstruct(std::uint32_t umask, std::uint32_t mask,
                                                 std::size_t f) const {
        std::vector<std::vector<Vertex>> family;
        while (f > 0) {
            unsigned a = static_cast<unsigned>(std::countr_zero(mask));
            std::uint32_t rest = mask & (mask - 1);
            if (best[rest].size() > f && best[rest][f] == best[mask][f]) {
                mask = rest;
                continue;
            }
            std::uint32_t others = rest;
            bool advanced = false;
            while (others) {
                unsigned b = static_cast<unsigned>(std::countr_zero(others));
                others &= others - 1;
                std::uint32_t sub = mask & ~(1u << a) & ~(1u << b);
                long long w = std::popcount(adj_mask[a] & adj_mask[b] & umask);
                if (best[sub][f - 1] != LLONG_MIN && best[sub][f - 1] + w == best[mask][f]) {
                    family.push_back({static_cast<Vertex>(std::min(a, b)),
                                      static_cast<Vertex>(std::max(a, b))});
                    mask = sub;
                    --f;
                    advanced = true;
                    break;
                }
            }
            if (!advanced) break; // defensive; cannot happen for a valid table
        }
        return family;
    }
};

std::vector<Vertex> mask_to_vec(std::uint32_t mask) {
    std::vector<Vertex> out;
    while (mask) {
        out.push_back(static_cast<Vertex>(std::countr_zero(mask)));
        mask &= mask - 1;
    }
    return out;
}

} // namespace

CongestionCertificate check_congestion(const Graph& g, std::uint32_t k, double xi, double p,
                                       CheckMode mode, std::uint64_t seed) {
    if (k < 1) throw InputError("check_congestion: k must be >= 1");
    if (!(xi > 0) || !(p > 0 && p <= 1))
        throw InputError("check_congestion: xi must be positive and p in (0,1]");

    CongestionCertificate cert;
    cert.mode = mode;
    cert.k = k;
    cert.xi = xi;
    cert.p = p;

    const std::size_t n = g.vertex_count();
    const auto family_limit = static_cast<std::size_t>(std::floor(xi * static_cast<double>(n) + 1e-9));
    if (family_limit == 0 || n == 0) return cert;

    if (mode == CheckMode::Exhaustive) {
        if (n > kCongestionVertexGuard || k > kCongestionKGuard)
            throw SizeGuardError("exhaustive congestion check guarded at " +
                                 std::to_string(kCongestionVertexGuard) + " vertices, k <= " +
                                 std::to_string(kCongestionKGuard));
        const std::uint32_t full = (1u << n) - 1;
        for (std::uint32_t umask = 0; umask <= full; ++umask) {
            const auto usize = static_cast<std::size_t>(std::popcount(umask));
            if (usize > family_limit) continue;
            std::uint32_t ground = full & ~umask;

            if (k == 1) {
                std::vector<Vertex> order;
                auto prefix = best_singletons(g, umask, order);
                std::size_t fmax = std::min(family_limit, order.size());
                for (std::size_t f = std::max<std::size_t>(usize, 1); f <= fmax; ++f) {
                    double bound = congestion_bound(n, k, xi, p, f, usize);
                    if (static_cast<double>(prefix[f]) > bound + 1e-12) {
                        cert.pass = false;
                        cert.witness_u = mask_to_vec(umask);
                        for (std::size_t i = 0; i < f; ++i)
                            cert.witness_family.push_back({order[i]});
                        cert.witness_edges = prefix[f];
                        cert.witness_bound = bound;
                        return cert;
                    }
                }
            } else {
                PairPacking packing;
                packing.run(g, umask, ground);
                std::size_t fmax =
                    std::min(family_limit, static_cast<std::size_t>(std::popcount(ground)) / 2);
                for (std::size_t f = std::max<std::size_t>(usize, 1); f <= fmax; ++f) {
                    long long lhs = packing.best[ground][f];
                    if (lhs == LLONG_MIN) continue;
                    double bound = congestion_bound(n, k, xi, p, f, usize);
                    if (static_cast<double>(lhs) > bound + 1e-12) {
                        cert.pass = false;
                        cert.witness_u = mask_to_vec(umask);
                        cert.witness_family = packing.reconstruct(umask, ground, f);
                        cert.witness_edges = static_cast<std::size_t>(lhs);
                        cert.witness_bound = bound;
                        return cert;
                    }
                }
            }
        }
        return cert;
    }

    // sampled: greedy families over seeded U candidates; sound refutations only
    Rng rng(Rng::derive(seed, 0xc0963571ULL));
    std::vector<std::uint32_t> u_sizes;
    for (std::size_t size = 1; size <= std::min(n, family_limit); size = size * 2 + 1)
        u_sizes.push_back(static_cast<std::uint32_t>(size));
    for (std::uint32_t trial = 0; trial < 64; ++trial) {
        std::uint32_t usize = u_sizes[trial % u_sizes.size()];
        auto u = rng.sample_without_replacement(static_cast<std::uint32_t>(n), usize);
        std::vector<Vertex> uvec(u.begin(), u.end());
        std::vector<bool> in_u(n, false);
        for (Vertex v : uvec) in_u[v] = true;

        // greedy family: repeatedly take the disjoint k-set with max common
        // degree into U
        std::vector<bool> taken(n, false);
        std::vector<std::vector<Vertex>> family;
        std::size_t edges = 0;
        while (family.size() < family_limit) {
            std::vector<Vertex> best_set;
            std::size_t best_deg = 0;
            if (k == 1) {
                for (std::size_t v = 0; v < n; ++v) {
                    if (in_u[v] || taken[v]) continue;
                    std::size_t deg = 0;
                    for (Vertex w : g.neighbors(static_cast<Vertex>(v)))
                        if (in_u[w]) ++deg;
                    if (deg > best_deg) {
                        best_deg = deg;
                        best_set = {static_cast<Vertex>(v)};
                    }
                }
            } else {
                for (std::size_t a = 0; a < n; ++a) {
                    if (in_u[a] || taken[a]) continue;
                    for (std::size_t b = a + 1; b < n; ++b) {
                        if (in_u[b] || taken[b]) continue;
                        std::size_t deg = 0;
                        for (Vertex w : uvec)
                            if (g.has_edge(static_cast<Vertex>(a), w) &&
                                g.has_edge(static_cast<Vertex>(b), w))
                                ++deg;
                        if (deg > best_deg) {
                            best_deg = deg;
                            best_set = {static_cast<Vertex>(a), static_cast<Vertex>(b)};
                        }
                    }
                }
            }
            if (best_set.empty()) break;
            for (Vertex v : best_set) taken[v] = true;
            family.push_back(best_set);
            edges += best_deg;

            std::size_t f = family.size();
            if (f < std::max<std::size_t>(uvec.size(), 1)) continue;
            double bound = congestion_bound(n, k, xi, p, f, uvec.size());
            if (static_cast<double>(edges) > bound + 1e-12) {
                // verify via the incidence builder before refuting
                auto aux = build_auxiliary_graph(g, k, family, uvec);
                if (static_cast<double>(aux.edge_count) > bound + 1e-12) {
                    cert.pass = false;
                    cert.witness_u = uvec;
                    cert.witness_family = family;
                    cert.witness_edges = aux.edge_count;
                    cert.witness_bound = bound;
                    return cert;
                }
            }
        }
    }
    return cert;
}

BadFamilyCertificate check_bad_family(const Graph& host, const std::vector<Vertex>& x,
                                      const std::vector<Vertex>& y,
                                      const std::vector<Vertex>& z, BadFamilyVariant variant,
                                      const BadFamilyParams& params) {
    if (x.size() > kDensePairGuard || y.size() > kDensePairGuard || z.size() > kDensePairGuard)
        throw SizeGuardError("check_bad_family guarded at " + std::to_string(kDensePairGuard) +
                             " vertices per part");
    {
        std::set<Vertex> all;
        for (const auto* part : {&x, &y, &z})
            for (Vertex v : *part)
                if (!all.insert(v).second)
                    throw InputError("check_bad_family: parts must be pairwise disjoint");
    }

    BadFamilyCertificate cert;
    cert.required = qualifying_size(params.mu, x.size());

    BipartitePair xy{&host, x, y};
    cert.cond_a =
        check_dense_pair(xy, params.eta, params.alpha, params.p, CheckMode::Exhaustive).pass;
    if (variant == BadFamilyVariant::TwoSided) {
        BipartitePair xz{&host, x, z};
        cert.cond_a = cert.cond_a &&
                      check_dense_pair(xz, params.eta, params.alpha, params.p,
                                       CheckMode::Exhaustive)
                          .pass;
    }
    BipartitePair yz{&host, y, z};
    cert.cond_b =
        check_dense_pair(yz, params.eps, params.alpha, params.p, CheckMode::Exhaustive).pass;

    for (Vertex v : x) {
        std::vector<Vertex> ny, nz;
        for (Vertex w : y)
            if (host.has_edge(v, w)) ny.push_back(w);
        if (variant == BadFamilyVariant::OneSided) {
            nz = z;
        } else {
            for (Vertex w : z)
                if (host.has_edge(v, w)) nz.push_back(w);
        }
        BipartitePair pair{&host, ny, nz};
        if (!check_dense_pair(pair, params.eps_prime, params.alpha, params.p,
                              CheckMode::Exhaustive)
                 .pass)
            cert.bad_x.push_back(v);
    }

    // mu > 1 makes condition (c) unsatisfiable
    cert.is_bad = cert.cond_a && cert.cond_b && params.mu <= 1.0 &&
                  cert.bad_x.size() >= cert.required;
    return cert;
}

} // namespace treeram
