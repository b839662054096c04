#ifndef TREERAM_CONGESTION_HPP
#define TREERAM_CONGESTION_HPP

#include "treeram/density.hpp"
#include "treeram/graph.hpp"

namespace treeram {

// Bipartite incidence between a family of pairwise disjoint k-sets and a
// vertex set U: (K, v) is incident iff v is a common neighbor of all of K.
struct AuxiliaryIncidence {
    std::vector<std::vector<Vertex>> family;
    std::vector<Vertex> u;
    std::vector<std::vector<std::uint32_t>> incident; // per family set: indices into u
    std::size_t edge_count = 0;
};

AuxiliaryIncidence build_auxiliary_graph(const Graph& g, std::uint32_t k,
                                         const std::vector<std::vector<Vertex>>& family,
                                         const std::vector<Vertex>& u);

inline constexpr std::size_t kCongestionVertexGuard = 14;
inline constexpr std::uint32_t kCongestionKGuard = 2;

struct CongestionCertificate {
    bool pass = true;
    CheckMode mode = CheckMode::Exhaustive;
    std::uint32_t k = 1;
    double xi = 0, p = 1;
    // populated when refuted
    std::vector<Vertex> witness_u;
    std::vector<std::vector<Vertex>> witness_family;
    std::size_t witness_edges = 0;
    double witness_bound = 0;
};

// Congestion property: every U and every family F of pairwise disjoint k-sets
// avoiding U with |F| <= xi*N and |U| <= |F| satisfies
// e(F, U) <= p^k |F| |U| + 6 xi N p^k |F|. Exhaustive mode is exact and
// guarded at 14 vertices / k <= 2; sampled mode refutes with a verified
// witness only.
CongestionCertificate check_congestion(const Graph& g, std::uint32_t k, double xi, double p,
                                       CheckMode mode, std::uint64_t seed = 0);

enum class BadFamilyVariant { OneSided, TwoSided };

struct BadFamilyParams {
    double alpha, eps_prime, eps, mu, eta, p;
};

struct BadFamilyCertificate {
    bool is_bad = false;
    bool cond_a = false; // left pair(s) dense
    bool cond_b = false; // (Y,Z) dense
    std::vector<Vertex> bad_x; // x whose neighborhood pair fails denseness
    std::size_t required = 0;  // ceil(mu |X|)
};

// Decides membership in the bad family: (a) (X,Y) -- and (X,Z) in the
// two-sided variant -- is (eta, alpha, p)-dense, (b) (Y,Z) is (eps, alpha,
// p)-dense, (c) at least mu|X| vertices x have a non-(eps', alpha, p)-dense
// pair (N(x) ∩ Y, Z) (one-sided) or (N(x) ∩ Y, N(x) ∩ Z) (two-sided).
// Decided exhaustively; all three sets are guarded at 16 vertices.
BadFamilyCertificate check_bad_family(const Graph& host, const std::vector<Vertex>& x,
                                      const std::vector<Vertex>& y,
                                      const std::vector<Vertex>& z, BadFamilyVariant variant,
                                      const BadFamilyParams& params);

} // namespace treeram

#endif
