#include "treeram/necklace.hpp"

#include <algorithm>
#include <cmath>

#include "treeram/errors.hpp"
#include "treeram/rng.hpp"

namespace treeram {

std::vector<std::uint32_t> NecklaceSplit::x_positions() const {
    std::vector<std::uint32_t> out;
    for (std::size_t pos = 0; pos < n; ++pos)
        if (side[interval_of(pos)] == 0) out.push_back(static_cast<std::uint32_t>(pos));
    return out;
}

std::vector<std::uint32_t> NecklaceSplit::y_positions() const {
    std::vector<std::uint32_t> out;
    for (std::size_t pos = 0; pos < n; ++pos)
        if (side[interval_of(pos)] != 0) out.push_back(static_cast<std::uint32_t>(pos));
    return out;
}

CertificateReport verify_necklace_split(const ColorSequence& colors, std::uint32_t k,
                                        const NecklaceSplit& split) {
    CertificateReport report;
    if (split.n != colors.size()) report.add("length", "split length differs from sequence");
    if (split.side.size() != split.cuts.size() + 1)
        report.add("structure", "side vector does not match cut count");
    if (split.cuts.size() > k)
        report.add("cut_budget", "uses " + std::to_string(split.cuts.size()) +
                                     " cuts, allowed " + std::to_string(k));
    for (std::size_t i = 0; i < split.cuts.size(); ++i) {
        if (split.cuts[i] < 1 || split.cuts[i] >= split.n)
            report.add("cut_range", "cut " + std::to_string(split.cuts[i]) + " out of range");
        if (i > 0 && split.cuts[i] <= split.cuts[i - 1])
            report.add("cut_order", "cuts not strictly increasing");
    }
    if (!report.pass) return report;

    std::vector<std::size_t> x_count(k, 0), total(k, 0);
    for (std::size_t pos = 0; pos < colors.size(); ++pos) {
        int c = colors[pos];
        if (c < 0) continue;
        if (c >= static_cast<int>(k)) {
            report.add("color_range", "color " + std::to_string(c) + " at position " +
                                          std::to_string(pos));
            continue;
        }
        ++total[c];
        if (split.side[split.interval_of(pos)] == 0) ++x_count[c];
    }
    for (std::uint32_t c = 0; c < k; ++c) {
        std::size_t bound = (total[c] + 1) / 2;
        std::size_t worst = std::max(x_count[c], total[c] - x_count[c]);
        if (worst > bound)
            report.add("balance", "color " + std::to_string(c) + " splits " +
                                      std::to_string(x_count[c]) + "/" +
                                      std::to_string(total[c] - x_count[c]) + ", bound " +
                                      std::to_string(bound));
    }
    report.metrics["cuts"] = split.cuts.size();
    report.metrics["x_size"] = split.x_positions().size();
    return report;
}

namespace {

// Search state over the reduced sequence (colored positions only). Cuts live
// between consecutive colored beads; a reduced cut before bead j maps back to
// the original position of bead j.
struct Reduced {
    std::vector<std::uint32_t> original_pos; // bead -> original position
    std::vector<std::uint8_t> color;         // bead colors, all valid
    std::vector<std::size_t> total;          // per color
    std::vector<std::vector<std::uint32_t>> prefix; // prefix[c][i] = count of c in beads [0,i)
};

Reduced reduce(const ColorSequence& colors, std::uint32_t k) {
    Reduced red;
    red.total.assign(k, 0);
    for (std::size_t pos = 0; pos < colors.size(); ++pos) {
        int c = colors[pos];
        if (c < 0) continue;
        if (c >= static_cast<int>(k))
            throw InputError("necklace_split: color " + std::to_string(c) + " out of range");
        red.original_pos.push_back(static_cast<std::uint32_t>(pos));
        red.color.push_back(static_cast<std::uint8_t>(c));
        ++red.total[static_cast<std::size_t>(c)];
    }
    red.prefix.assign(k, std::vector<std::uint32_t>(red.color.size() + 1, 0));
    for (std::uint32_t c = 0; c < k; ++c)
        for (std::size_t i = 0; i < red.color.size(); ++i)
            red.prefix[c][i + 1] = red.prefix[c][i] + (red.color[i] == c ? 1 : 0);
    return red;
}

// X must take between floor(total/2) and ceil(total/2) of every color.
bool counts_feasible(const Reduced& red, const std::vector<std::uint32_t>& x_counts) {
    for (std::size_t c = 0; c < red.total.size(); ++c) {
        std::size_t lo = red.total[c] / 2, hi = (red.total[c] + 1) / 2;
        if (x_counts[c] < lo || x_counts[c] > hi) return false;
    }
    return true;
}

long long violation(const Reduced& red, const std::vector<std::uint32_t>& x_counts) {
    long long v = 0;
    for (std::size_t c = 0; c < red.total.size(); ++c) {
        long long lo = static_cast<long long>(red.total[c] / 2);
        long long hi = static_cast<long long>((red.total[c] + 1) / 2);
        long long x = x_counts[c];
        if (x < lo) v += lo - x;
        if (x > hi) v += x - hi;
    }
    return v;
}

void x_counts_of(const Reduced& red, const std::vector<std::uint32_t>& cuts,
                 const std::vector<std::uint8_t>& side, std::vector<std::uint32_t>& out) {
    const std::uint32_t k = static_cast<std::uint32_t>(red.total.size());
    out.assign(k, 0);
    std::uint32_t begin = 0;
    for (std::size_t i = 0; i <= cuts.size(); ++i) {
        std::uint32_t end =
            i < cuts.size() ? cuts[i] : static_cast<std::uint32_t>(red.color.size());
        if (side[i] == 0)
            for (std::uint32_t c = 0; c < k; ++c)
                out[c] += red.prefix[c][end] - red.prefix[c][begin];
        begin = end;
    }
}

NecklaceSplit assemble(const ColorSequence& colors, const Reduced& red,
                       const std::vector<std::uint32_t>& reduced_cuts,
                       const std::vector<std::uint8_t>& side) {
    NecklaceSplit split;
    split.n = colors.size();
    for (std::uint32_t rc : reduced_cuts) split.cuts.push_back(red.original_pos[rc]);
    split.side = side;
    if (split.side.empty()) split.side = {0};
    return split;
}

// Exhaustive search over m reduced cut positions and all side assignments.
// Returns true and fills the output on success. Work is proportional to
// C(n'-1, m) * 2^(m+1) and is charged against the step budget.
class ExactLevel {
public:
    ExactLevel(const Reduced& red, std::size_t m, std::uint64_t& steps_left)
        : red_(red), m_(m), steps_left_(steps_left) {}

    bool run(std::vector<std::uint32_t>& cuts_out, std::vector<std::uint8_t>& side_out) {
        cuts_.assign(m_, 0);
        return place(0, 1, cuts_out, side_out);
    }

private:
    bool place(std::size_t index, std::uint32_t from, std::vector<std::uint32_t>& cuts_out,
               std::vector<std::uint8_t>& side_out) {
        if (index == m_) return try_sides(cuts_out, side_out);
        const std::uint32_t limit = static_cast<std::uint32_t>(red_.color.size());
        for (std::uint32_t pos = from; pos + (m_ - index - 1) < limit; ++pos) {
            cuts_[index] = pos;
            if (!place(index + 1, pos + 1, cuts_out, side_out)) {
                if (steps_left_ == 0) return false;
                continue;
            }
            return true;
        }
        return false;
    }

    bool try_sides(std::vector<std::uint32_t>& cuts_out, std::vector<std::uint8_t>& side_out) {
        const std::uint32_t k = static_cast<std::uint32_t>(red_.total.size());
        std::vector<std::uint32_t> interval_count(k);
        std::vector<std::uint32_t> x(k);
        const std::size_t intervals = m_ + 1;
        for (std::uint32_t mask = 0; mask < (1u << intervals); ++mask) {
            if (steps_left_ == 0) return false;
            --steps_left_;
            std::fill(x.begin(), x.end(), 0);
            std::uint32_t begin = 0;
            for (std::size_t i = 0; i < intervals; ++i) {
                std::uint32_t end = i < m_ ? cuts_[i]
                                           : static_cast<std::uint32_t>(red_.color.size());
                if (mask & (1u << i))
                    for (std::uint32_t c = 0; c < k; ++c)
                        x[c] += red_.prefix[c][end] - red_.prefix[c][begin];
                begin = end;
            }
            if (counts_feasible(red_, x)) {
                cuts_out = cuts_;
                side_out.assign(intervals, 0);
                for (std::size_t i = 0; i < intervals; ++i)
                    side_out[i] = (mask & (1u << i)) ? 0 : 1;
                return true;
            }
        }
        return false;
    }

    const Reduced& red_;
    std::size_t m_;
    std::uint64_t& steps_left_;
    std::vector<std::uint32_t> cuts_;
};

double binom_work(std::size_t n, std::size_t m) {
    double w = 1;
    for (std::size_t i = 0; i < m; ++i) w *= static_cast<double>(n - i) / (i + 1);
    return w;
}

// Deterministic multi-start local search at a fixed cut count. Moves: shift a
// cut by +-2^j, flip an interval side. First-improvement with a bounded
// sideways allowance, random restarts from quantile and seeded states.
class LocalLevel {
public:
    LocalLevel(const Reduced& red, std::size_t m, std::uint64_t& steps_left)
        : red_(red), m_(m), steps_left_(steps_left), rng_(0x6ec1ace5ULL + m) {}

    bool run(std::vector<std::uint32_t>& cuts_out, std::vector<std::uint8_t>& side_out) {
        const std::uint32_t beads = static_cast<std::uint32_t>(red_.color.size());
        if (beads < 2 || m_ == 0 || m_ >= beads) return false;
        while (steps_left_ > 0) {
            restart();
            long long current = violation(red_, x_);
            std::size_t stale = 0;
            while (steps_left_ > 0 && stale < 400) {
                if (current == 0) {
                    cuts_out = cuts_;
                    side_out = side_;
                    return true;
                }
                long long next = best_move();
                if (next < current) {
                    current = next;
                    stale = 0;
                } else if (next == current) {
                    ++stale; // sideways
                } else {
                    break; // local minimum; restart
                }
            }
        }
        return false;
    }

private:
    void restart() {
        const std::uint32_t beads = static_cast<std::uint32_t>(red_.color.size());
        cuts_.clear();
        if (first_) {
            // quantile start
            for (std::size_t i = 1; i <= m_; ++i)
                cuts_.push_back(static_cast<std::uint32_t>(i * beads / (m_ + 1)));
            first_ = false;
        } else {
            while (cuts_.size() < m_) {
                std::uint32_t pos = 1 + static_cast<std::uint32_t>(rng_.below(beads - 1));
                if (std::find(cuts_.begin(), cuts_.end(), pos) == cuts_.end())
                    cuts_.push_back(pos);
            }
            std::sort(cuts_.begin(), cuts_.end());
        }
        // force strictly increasing positions within [1, beads-1]
        std::uint32_t floor_pos = 1;
        for (std::size_t i = 0; i < m_; ++i) {
            std::uint32_t ceil_pos = beads - static_cast<std::uint32_t>(m_ - i);
            cuts_[i] = std::clamp(cuts_[i], floor_pos, ceil_pos);
            floor_pos = cuts_[i] + 1;
        }
        side_.assign(m_ + 1, 0);
        for (std::size_t i = 0; i < side_.size(); ++i) side_[i] = i % 2;
        x_counts_of(red_, cuts_, side_, x_);
    }

    // Applies the best first-improving move; returns resulting violation.
    long long best_move() {
        long long current = violation(red_, x_);
        const std::uint32_t beads = static_cast<std::uint32_t>(red_.color.size());

        // flip a side
        for (std::size_t i = 0; i < side_.size() && steps_left_; ++i) {
            --steps_left_;
            side_[i] ^= 1;
            x_counts_of(red_, cuts_, side_, trial_);
            long long v = violation(red_, trial_);
            if (v < current) {
                x_ = trial_;
                return v;
            }
            side_[i] ^= 1;
        }
        // shift a cut
        for (std::size_t i = 0; i < cuts_.size() && steps_left_; ++i) {
            for (std::uint32_t step = 1; step <= beads && steps_left_; step <<= 1) {
                for (int dir : {-1, +1}) {
                    --steps_left_;
                    long long moved = static_cast<long long>(cuts_[i]) + dir * static_cast<long long>(step);
                    std::uint32_t lo = i == 0 ? 1 : cuts_[i - 1] + 1;
                    std::uint32_t hi = i + 1 < cuts_.size() ? cuts_[i + 1] - 1 : beads - 1;
                    if (moved < lo || moved > static_cast<long long>(hi)) continue;
                    std::uint32_t saved = cuts_[i];
                    cuts_[i] = static_cast<std::uint32_t>(moved);
                    x_counts_of(red_, cuts_, side_, trial_);
                    long long v = violation(red_, trial_);
                    if (v < current) {
                        x_ = trial_;
                        return v;
                    }
                    cuts_[i] = saved;
                }
            }
        }
        // sideways: nudge a random cut by one if legal
        if (!cuts_.empty() && steps_left_) {
            --steps_left_;
            std::size_t i = static_cast<std::size_t>(rng_.below(cuts_.size()));
            int dir = rng_.bernoulli(0.5) ? 1 : -1;
            long long moved = static_cast<long long>(cuts_[i]) + dir;
            std::uint32_t lo = i == 0 ? 1 : cuts_[i - 1] + 1;
            std::uint32_t hi = i + 1 < cuts_.size() ? cuts_[i + 1] - 1 : beads - 1;
            if (moved >= lo && moved <= static_cast<long long>(hi)) {
                cuts_[i] = static_cast<std::uint32_t>(moved);
                x_counts_of(red_, cuts_, side_, x_);
                return violation(red_, x_);
            }
        }
        return current + 1; // no move found; force restart
    }

    const Reduced& red_;
    std::size_t m_;
    std::uint64_t& steps_left_;
    Rng rng_;
    bool first_ = true;
    std::vector<std::uint32_t> cuts_;
    std::vector<std::uint8_t> side_;
    std::vector<std::uint32_t> x_, trial_;
};

} // namespace

NecklaceSplit necklace_split(const ColorSequence& colors, std::uint32_t k,
                             std::uint64_t budget_steps) {
    if (k < 1) throw InputError("necklace_split: k must be >= 1");
    Reduced red = reduce(colors, k);

    // no colored positions: no constraints, X takes everything
    if (red.color.empty()) {
        NecklaceSplit split;
        split.n = colors.size();
        split.side = {0};
        return split;
    }

    std::uint64_t steps_left = budget_steps;
    const std::size_t beads = red.color.size();
    std::vector<std::uint32_t> cuts;
    std::vector<std::uint8_t> side;
    for (std::size_t m = 0; m <= k; ++m) {
        if (m >= beads && m > 0) break;
        double work = binom_work(beads - 1, m) * static_cast<double>(1u << (m + 1));
        if (work <= 4e6 || work <= static_cast<double>(steps_left) / 4) {
            ExactLevel level(red, m, steps_left);
            if (level.run(cuts, side)) return assemble(colors, red, cuts, side);
        } else {
            std::uint64_t share = steps_left / (k + 1 - m);
            std::uint64_t slot = share;
            LocalLevel level(red, m, slot);
            bool found = level.run(cuts, side);
            steps_left -= std::min(steps_left, share - slot);
            if (found) return assemble(colors, red, cuts, side);
        }
        if (steps_left == 0) break;
    }
    throw BudgetError("necklace_split: budget exhausted before a certified split was found");
}

} // namespace treeram
