#ifndef TREERAM_SEPARATOR_HPP
#define TREERAM_SEPARATOR_HPP

#include <optional>
#include <string>

#include "treeram/necklace.hpp"
#include "treeram/tree_decomposition.hpp"

namespace treeram {

// Monotone upper bound t(x) on the treewidth of any x-vertex subgraph,
// optionally with a scaling exponent alpha such that t(lambda*x) <=
// lambda^alpha * t(x) (enables the closed-form clique-size bound).
struct TreewidthProfile {
    enum class Kind { Constant, SqrtScaled, LogScaled, CeilSqrtPlus };

    Kind kind = Kind::Constant;
    double c = 1.0;
    std::optional<double> alpha;

    double operator()(double x) const;
    std::string describe() const;

    static TreewidthProfile constant(double value);
    static TreewidthProfile sqrt_scaled(double factor);    // factor * sqrt(x), alpha = 1/2
    static TreewidthProfile log_scaled(double factor);     // factor * log2(x+1)
    static TreewidthProfile ceil_sqrt_plus(double offset); // ceil(sqrt(x)) + offset

    // Parses "const:3", "sqrt:1.5", "log:2", "csqrt:1".
    static TreewidthProfile parse(const std::string& text);
};

struct SeparatorTriple {
    std::vector<Vertex> s, a, b; // sorted; disjoint; cover V(G)
};

CertificateReport validate_separator(const Graph& g, const SeparatorTriple& triple);

// Walks the decomposition bags (smallest index first) to one whose removal
// leaves components groupable into two sides of at most (2/3)n vertices.
SeparatorTriple balanced_separator(const Graph& g, const TreeDecomposition& td);

struct SeparatorOrdering {
    std::vector<Vertex> order;                  // v_1..v_n
    std::vector<std::vector<Vertex>> sets;      // aligned to positions; S(v_i) contains v_i
    double size_bound = 0;                      // sum_j (t((2/3)^j n) + 1)
};

// Number of terms minus one in the recursion bound: ceil(log_{3/2} n).
int ceil_log_3_2(std::size_t n);

double ordering_size_bound(const TreewidthProfile& profile, std::size_t n);

// Balanced-separator recursion: order = A-order, S, B-order with
// S(v) = S_sub(v) ∪ S. Each level must fit a separator of size at most
// t(x)+1 for the current subgraph size x; if no decomposition within the
// budget is found, throws CertificateFailure naming the subgraph size.
SeparatorOrdering separator_ordering(const Graph& g, const TreewidthProfile& profile);

CertificateReport verify_separator_ordering(const Graph& g, const SeparatorOrdering& ordering,
                                            double size_bound);

// Vertex colors in [0,k), -1 for uncolored.
using VertexColoring = std::vector<int>;

// Ordering + necklace split + union of the S(x_j) at the cuts, then one
// correction vertex per color to sharpen ceil(|c|/2) to |c|/2.
SeparatorTriple colored_separator(const Graph& g, const VertexColoring& coloring,
                                  std::uint32_t k, const TreewidthProfile& profile,
                                  std::uint64_t necklace_budget = 20'000'000);

double colored_separator_bound(const TreewidthProfile& profile, std::size_t n, std::uint32_t k);

} // namespace treeram

#endif
