#ifndef TREERAM_HALL_HPP
#define TREERAM_HALL_HPP

#include <cstdint>
#include <vector>

#include "treeram/graph.hpp"

namespace treeram {

struct HallResult {
    bool complete = false;
    // representative[i] is the element matched to sets[i]; valid iff complete
    std::vector<Vertex> representative;
    // when incomplete: set indices Y with |union of C(y)| < |Y|
    std::vector<std::uint32_t> deficient;
};

// System of distinct representatives via augmenting paths. On failure the
// deficient indices form a genuine Hall witness (the left vertices reachable
// by alternating paths from an unsaturated set).
HallResult hall_matching(const std::vector<std::vector<Vertex>>& sets);

// |union of the witness sets| < |witness| check, used by tests and failure
// handlers.
bool verify_hall_witness(const std::vector<std::vector<Vertex>>& sets,
                         const std::vector<std::uint32_t>& witness);

} // namespace treeram

#endif
