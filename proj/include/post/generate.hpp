#pragma once

#include "post/lottery.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace post {

// Deterministic randomness for trials and tests. mt19937_64 output is
// fixed by the standard; all bounded draws below avoid std distributions
// (which are implementation-defined) so identical seeds give identical
// values on every platform. Per-trial seeds come from derive(), so trial
// results do not depend on execution order.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : eng_(seed) {}

    static std::uint64_t derive(std::uint64_t seed, std::uint64_t index);

    std::uint64_t next_u64() { return eng_(); }

    // Uniform in [0, n) by rejection sampling.
    std::uint64_t below(std::uint64_t n);

    std::int64_t int_in(std::int64_t lo, std::int64_t hi);  // inclusive

    // Random rational with numerator in [lo, hi] and denominator in [1, max_den].
    Rational rational(std::int64_t lo, std::int64_t hi, std::uint64_t max_den = 4);

    // n positive rationals summing to exactly 1.
    std::vector<Rational> distribution(std::size_t n);

    // Probability strictly inside (0, 1).
    Rational open_unit();

private:
    std::mt19937_64 eng_;
};

Trajectory random_trajectory(SeededRng& rng, TrajectoryLength l, std::int64_t lo = -5,
                             std::int64_t hi = 9);

// Lottery supported on length-l trajectories only.
Lottery random_lottery_at(SeededRng& rng, TrajectoryLength l, std::size_t max_support = 3);

// Lottery with positive mass at every given length.
Lottery random_lottery(SeededRng& rng, const std::vector<TrajectoryLength>& lengths,
                       std::size_t max_support_per_length = 2);

std::vector<TrajectoryLength> random_length_set(SeededRng& rng, std::size_t max_lengths = 3,
                                                std::uint64_t max_steps = 4);

// Deterministic family with genuinely mixed length supports: same-length
// clusters, overlapping supports, and disjoint ones all occur.
std::vector<Lottery> mixed_length_family(std::uint64_t seed, std::size_t count);

}  // namespace post
