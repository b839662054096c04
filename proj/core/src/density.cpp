#include "treeram/density.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "treeram/errors.hpp"
#include "treeram/rng.hpp"

namespace treeram {

std::size_t qualifying_size(double fraction, std::size_t n) {
    double raw = fraction * static_cast<double>(n);
    auto q = static_cast<std::size_t>(std::ceil(raw - 1e-9));
    return std::max<std::size_t>(q, 1);
}

std::size_t count_cross_edges(const Graph& host, const std::vector<Vertex>& x,
                              const std::vector<Vertex>& y) {
    std::vector<bool> in_y(host.vertex_count(), false);
    for (Vertex v : y) in_y[v] = true;
    std::size_t total = 0;
    for (Vertex v : x)
        for (Vertex w : host.neighbors(v))
            if (in_y[w]) ++total;
    return total;
}

double pair_density(const Graph& host, const std::vector<Vertex>& x,
                    const std::vector<Vertex>& y) {
    if (x.empty() || y.empty()) return 0;
    return static_cast<double>(count_cross_edges(host, x, y)) /
           (static_cast<double>(x.size()) * static_cast<double>(y.size()));
}

namespace {

// bit i of mask_of[j] = edge between y[j] and x[i]
std::vector<std::uint32_t> cross_masks(const Graph& host, const std::vector<Vertex>& x,
                                       const std::vector<Vertex>& y) {
    std::vector<std::uint32_t> masks(y.size(), 0);
    for (std::size_t j = 0; j < y.size(); ++j)
        for (std::size_t i = 0; i < x.size(); ++i)
            if (host.has_edge(y[j], x[i])) masks[j] |= (1u << i);
    return masks;
}

struct ExtremeResult {
    double density = 0;
    std::vector<std::size_t> chosen; // indices into the other side
};

// Given degrees of side-B elements into a fixed A-subset, the B-subset of
// size q minimizing (resp. maximizing) density is the q smallest (largest)
// degrees; ascending prefix averages are monotone, so size exactly q is
// extremal among sizes >= q.
ExtremeResult extreme_subset(const std::vector<std::size_t>& degrees, std::size_t q,
                             std::size_t a_size, bool maximize) {
    std::vector<std::size_t> order(degrees.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
        if (degrees[l] != degrees[r]) return maximize ? degrees[l] > degrees[r]
                                                      : degrees[l] < degrees[r];
        return l < r;
    });
    ExtremeResult result;
    std::size_t sum = 0;
    for (std::size_t i = 0; i < q; ++i) {
        sum += degrees[order[i]];
        result.chosen.push_back(order[i]);
    }
    result.density = static_cast<double>(sum) /
                     (static_cast<double>(a_size) * static_cast<double>(q));
    return result;
}

void guard_pair(const BipartitePair& pair) {
    if (!pair.host) throw InputError("bipartite pair has no host graph");
    if (pair.x.size() > kDensePairGuard || pair.y.size() > kDensePairGuard)
        throw SizeGuardError("exhaustive density check guarded at " +
                             std::to_string(kDensePairGuard) + " vertices per side");
}

std::vector<Vertex> pick(const std::vector<Vertex>& from, const std::vector<std::size_t>& idx) {
    std::vector<Vertex> out;
    out.reserve(idx.size());
    for (std::size_t i : idx) out.push_back(from[i]);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::size_t> degrees_into(const Graph& host, const std::vector<Vertex>& side,
                                      const std::vector<Vertex>& subset) {
    std::vector<bool> mark(host.vertex_count(), false);
    for (Vertex v : subset) mark[v] = true;
    std::vector<std::size_t> deg(side.size(), 0);
    for (std::size_t i = 0; i < side.size(); ++i)
        for (Vertex w : host.neighbors(side[i]))
            if (mark[w]) ++deg[i];
    return deg;
}

} // namespace

DensityCertificate check_dense_pair(const BipartitePair& pair, double epsilon, double alpha,
                                    double p, CheckMode mode, std::uint64_t seed,
                                    const SampleBudget& budget) {
    if (!(epsilon > 0 && epsilon <= 1) || !(alpha > 0 && alpha <= 1) || !(p > 0 && p <= 1))
        throw InputError("check_dense_pair: parameters must lie in (0,1]");

    DensityCertificate cert;
    cert.mode = mode;
    cert.epsilon = epsilon;
    cert.alpha = alpha;
    cert.p = p;
    cert.threshold = (alpha - epsilon) * p;

    const auto& x = pair.x;
    const auto& y = pair.y;
    if (x.empty() || y.empty()) return cert; // no qualifying subsets
    const std::size_t qx = qualifying_size(epsilon, x.size());
    const std::size_t qy = qualifying_size(epsilon, y.size());
    if (qx > x.size() || qy > y.size()) return cert;

    if (mode == CheckMode::Exhaustive) {
        guard_pair(pair);
        auto masks = cross_masks(*pair.host, x, y);
        std::vector<std::size_t> deg(y.size());
        for (std::uint32_t xmask = 1; xmask < (1u << x.size()); ++xmask) {
            auto size = static_cast<std::size_t>(std::popcount(xmask));
            if (size < qx) continue;
            ++cert.samples;
            for (std::size_t j = 0; j < y.size(); ++j)
                deg[j] = static_cast<std::size_t>(std::popcount(masks[j] & xmask));
            auto worst = extreme_subset(deg, qy, size, false);
            if (worst.density < cert.threshold - 1e-12) {
                cert.pass = false;
                for (std::size_t i = 0; i < x.size(); ++i)
                    if (xmask & (1u << i)) cert.witness_x.push_back(x[i]);
                cert.witness_y = pick(y, worst.chosen);
                cert.witness_density = worst.density;
                return cert;
            }
        }
        return cert;
    }

    // sampled: alternate extremal responses from several seeded starts
    Rng rng(Rng::derive(seed, 0x7a1d));
    double best = 2.0;
    std::vector<Vertex> best_x, best_y;
    for (std::uint32_t restart = 0; restart < budget.restarts; ++restart) {
        std::vector<Vertex> cur_x;
        if (restart == 0) {
            cur_x = x;
        } else {
            auto idx = rng.sample_without_replacement(static_cast<std::uint32_t>(x.size()),
                                                      static_cast<std::uint32_t>(qx));
            for (auto i : idx) cur_x.push_back(x[i]);
        }
        std::vector<Vertex> cur_y;
        for (std::uint32_t round = 0; round < budget.rounds; ++round) {
            auto deg_y = degrees_into(*pair.host, y, cur_x);
            auto worst_y = extreme_subset(deg_y, qy, cur_x.size(), false);
            cur_y = pick(y, worst_y.chosen);
            auto deg_x = degrees_into(*pair.host, x, cur_y);
            auto worst_x = extreme_subset(deg_x, qx, cur_y.size(), false);
            cur_x = pick(x, worst_x.chosen);
            ++cert.samples;
            double density = pair_density(*pair.host, cur_x, cur_y);
            if (density < best) {
                best = density;
                best_x = cur_x;
                best_y = cur_y;
            } else {
                break; // fixpoint
            }
        }
    }
    if (best < cert.threshold - 1e-12) {
        cert.pass = false;
        cert.witness_x = best_x;
        cert.witness_y = best_y;
        cert.witness_density = pair_density(*pair.host, best_x, best_y); // re-verified
        if (cert.witness_density >= cert.threshold - 1e-12) cert.pass = true;
    }
    return cert;
}

UniformityCertificate check_uniform(const BipartitePair& pair, double lambda, double p,
                                    CheckMode mode, std::uint64_t seed,
                                    const SampleBudget& budget) {
    if (!(lambda > 0 && lambda <= 1) || !(p > 0 && p <= 1))
        throw InputError("check_uniform: parameters must lie in (0,1]");

    UniformityCertificate cert;
    cert.mode = mode;
    cert.lambda = lambda;
    cert.p = p;
    cert.low = (1 - lambda) * p;
    cert.high = (1 + lambda) * p;

    const auto& x = pair.x;
    const auto& y = pair.y;
    if (x.empty() || y.empty()) return cert;
    const std::size_t qx = qualifying_size(lambda, x.size());
    const std::size_t qy = qualifying_size(lambda, y.size());
    if (qx > x.size() || qy > y.size()) return cert;

    if (mode == CheckMode::Exhaustive) {
        guard_pair(pair);
        auto masks = cross_masks(*pair.host, x, y);
        std::vector<std::size_t> deg(y.size());
        for (std::uint32_t xmask = 1; xmask < (1u << x.size()); ++xmask) {
            auto size = static_cast<std::size_t>(std::popcount(xmask));
            if (size < qx) continue;
            ++cert.samples;
            for (std::size_t j = 0; j < y.size(); ++j)
                deg[j] = static_cast<std::size_t>(std::popcount(masks[j] & xmask));
            auto low_side = extreme_subset(deg, qy, size, false);
            auto high_side = extreme_subset(deg, qy, size, true);
            bool low_bad = low_side.density < cert.low - 1e-12;
            bool high_bad = high_side.density > cert.high + 1e-12;
            if (low_bad || high_bad) {
                cert.pass = false;
                cert.violated_high = !low_bad ? true : false;
                const auto& side = low_bad ? low_side : high_side;
                for (std::size_t i = 0; i < x.size(); ++i)
                    if (xmask & (1u << i)) cert.witness_x.push_back(x[i]);
                cert.witness_y = pick(y, side.chosen);
                cert.witness_density = side.density;
                return cert;
            }
        }
        return cert;
    }

    Rng rng(Rng::derive(seed, 0x7a1e));
    for (bool maximize : {false, true}) {
        double best = maximize ? -1.0 : 2.0;
        std::vector<Vertex> best_x, best_y;
        for (std::uint32_t restart = 0; restart < budget.restarts; ++restart) {
            std::vector<Vertex> cur_x;
            if (restart == 0) {
                cur_x = x;
            } else {
                auto idx = rng.sample_without_replacement(static_cast<std::uint32_t>(x.size()),
                                                          static_cast<std::uint32_t>(qx));
                for (auto i : idx) cur_x.push_back(x[i]);
            }
            std::vector<Vertex> cur_y;
            for (std::uint32_t round = 0; round < budget.rounds; ++round) {
                auto deg_y = degrees_into(*pair.host, y, cur_x);
                cur_y = pick(y, extreme_subset(deg_y, qy, cur_x.size(), maximize).chosen);
                auto deg_x = degrees_into(*pair.host, x, cur_y);
                cur_x = pick(x, extreme_subset(deg_x, qx, cur_y.size(), maximize).chosen);
                ++cert.samples;
                double density = pair_density(*pair.host, cur_x, cur_y);
                bool improved = maximize ? density > best : density < best;
                if (improved) {
                    best = density;
                    best_x = cur_x;
                    best_y = cur_y;
                } else {
                    break;
                }
            }
        }
        bool bad = maximize ? best > cert.high + 1e-12 : best < cert.low - 1e-12;
        if (bad) {
            cert.pass = false;
            cert.violated_high = maximize;
            cert.witness_x = best_x;
            cert.witness_y = best_y;
            cert.witness_density = pair_density(*pair.host, best_x, best_y);
            return cert;
        }
    }
    return cert;
}

} // namespace treeram
