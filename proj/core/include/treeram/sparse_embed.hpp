#ifndef TREERAM_SPARSE_EMBED_HPP
#define TREERAM_SPARSE_EMBED_HPP

#include "treeram/prepare_h.hpp"
#include "treeram/structure.hpp"

namespace treeram {

struct SparseParams {
    double rho = 0.25;
    double p = 1.0;
    double mu = 1.0 / 16.0;
    std::vector<double> eps_ladder; // non-decreasing; defaults to a constant 1/8
    bool certified = true;          // assert the step invariants
    bool recompute_candidates = true;
    std::uint64_t seed = 0;
    SampleBudget pair_budget = {3, 6}; // for the in-loop density checks

    double eps_at(std::size_t index) const {
        if (eps_ladder.empty()) return 0.125;
        return eps_ladder[std::min(index, eps_ladder.size() - 1)];
    }
};

struct SparseResult {
    bool success = false;
    EmbeddingMap map;
    // per-step invariant log plus aggregate flags
    nlohmann::json invariant_log = nlohmann::json::object();
    bool all_monotone = true;
    bool all_bounds = true;
    bool all_formula = true;
    nlohmann::json failure = nlohmann::json::object();
};

// Class-by-class embedding of H into a monochromatic structure shaped like
// base ⊠ K_{delta_tilde}. For every vertex of the current class, candidates
// are filtered by (b') color-degree into each later neighbor's candidate set
// at least (rho - eps) p |C(z)| and (c') denseness of the touched future
// candidate pairs; the class is then placed simultaneously via a system of
// distinct representatives. Certified mode checks candidate monotonicity,
// the (rho p / 2)^ldeg * m lower bound, and -- when enabled -- recomputes
// every candidate set from scratch after each step.
SparseResult sparse_embed(const ColoredHost& host, const MonoStructure& structure,
                          const Graph& pattern, const Graph& h, const HPreparation& prep,
                          const SparseParams& params);

} // namespace treeram

#endif
