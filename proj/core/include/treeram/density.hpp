#ifndef TREERAM_DENSITY_HPP
#define TREERAM_DENSITY_HPP

#include <cstdint>
#include <vector>

#include "treeram/graph.hpp"

namespace treeram {

struct BipartitePair {
    const Graph* host = nullptr;
    std::vector<Vertex> x, y; // disjoint vertex sets of *host
};

enum class CheckMode { Exhaustive, Sampled };

// Budget for sampled refutation search.
struct SampleBudget {
    std::uint32_t restarts = 8;
    std::uint32_t rounds = 12; // alternation rounds per restart
};

inline constexpr std::size_t kDensePairGuard = 16;

struct DensityCertificate {
    bool pass = true;
    CheckMode mode = CheckMode::Exhaustive;
    double epsilon = 0, alpha = 0, p = 1;
    double threshold = 0; // (alpha - epsilon) * p
    // populated when refuted
    std::vector<Vertex> witness_x, witness_y;
    double witness_density = 0;
    std::uint64_t samples = 0;
};

// (eps, alpha, p)-denseness: every X' ⊆ X, Y' ⊆ Y with |X'| >= eps|X| and
// |Y'| >= eps|Y| has pairwise density at least (alpha - eps) p. Exhaustive
// mode (sides <= 16) is exact; sampled mode refutes only with a re-verified
// witness and passes heuristically otherwise.
DensityCertificate check_dense_pair(const BipartitePair& pair, double epsilon, double alpha,
                                    double p, CheckMode mode, std::uint64_t seed = 0,
                                    const SampleBudget& budget = {});

struct UniformityCertificate {
    bool pass = true;
    CheckMode mode = CheckMode::Exhaustive;
    double lambda = 0, p = 1;
    double low = 0, high = 0; // (1 -/+ lambda) p
    bool violated_high = false;
    std::vector<Vertex> witness_x, witness_y;
    double witness_density = 0;
    std::uint64_t samples = 0;
};

// (lambda, p)-uniformity on a bipartite pair: every U ⊆ X, W ⊆ Y with
// |U| >= lambda|X|, |W| >= lambda|Y| has density inside [(1-lambda)p,
// (1+lambda)p].
UniformityCertificate check_uniform(const BipartitePair& pair, double lambda, double p,
                                    CheckMode mode, std::uint64_t seed = 0,
                                    const SampleBudget& budget = {});

// Number of host edges between the two (disjoint) sets.
std::size_t count_cross_edges(const Graph& host, const std::vector<Vertex>& x,
                              const std::vector<Vertex>& y);

double pair_density(const Graph& host, const std::vector<Vertex>& x,
                    const std::vector<Vertex>& y);

// Minimal qualifying subset size: smallest integer >= fraction * n, at least 1.
std::size_t qualifying_size(double fraction, std::size_t n);

} // namespace treeram

#endif
