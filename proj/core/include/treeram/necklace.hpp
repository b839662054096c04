#ifndef TREERAM_NECKLACE_HPP
#define TREERAM_NECKLACE_HPP

#include <cstdint>
#include <vector>

#include "treeram/certificates.hpp"

namespace treeram {

// Positions 0..n-1 carry an optional color in [0,k); -1 means uncolored.
using ColorSequence = std::vector<int>;

// Interval split of [0,n): cuts are strictly increasing positions in [1,n),
// giving cuts.size()+1 left-to-right intervals; side[i] says whether interval
// i belongs to X (0) or Y (1). Labeling the X-intervals first, X is the union
// of the first r intervals.
struct NecklaceSplit {
    std::size_t n = 0;
    std::vector<std::uint32_t> cuts;
    std::vector<std::uint8_t> side;

    std::size_t interval_count() const { return side.size(); }
    std::size_t r() const {
        std::size_t count = 0;
        for (auto s : side)
            if (s == 0) ++count;
        return count;
    }
    // Interval index of a position.
    std::size_t interval_of(std::size_t pos) const {
        std::size_t i = 0;
        while (i < cuts.size() && pos >= cuts[i]) ++i;
        return i;
    }
    std::vector<std::uint32_t> x_positions() const;
    std::vector<std::uint32_t> y_positions() const;
};

// Checks interval structure, the cut budget (at most k+1 intervals) and the
// per-color bound max{|X ∩ c⁻¹(i)|, |Y ∩ c⁻¹(i)|} <= ceil(|c⁻¹(i)|/2).
CertificateReport verify_necklace_split(const ColorSequence& colors, std::uint32_t k,
                                        const NecklaceSplit& split);

// Finds a split with at most k cuts. Iterative deepening over the cut count;
// each level runs exact enumeration over cut placements while the candidate
// space is small and falls back to a deterministic multi-start local search.
// `budget_steps` caps the total search work (default roughly a few seconds);
// exhaustion throws BudgetError -- the split always exists, so running out
// signals an undersized budget, not infeasibility.
NecklaceSplit necklace_split(const ColorSequence& colors, std::uint32_t k,
                             std::uint64_t budget_steps = 20'000'000);

} // namespace treeram

#endif
