#pragma once

#include "post/trajectory.hpp"

#include <map>
#include <set>
#include <utility>
#include <vector>

namespace post {

// Finite probability distribution over trajectories. Probabilities are
// strictly positive exact rationals summing to exactly 1.
class Lottery {
public:
    static Lottery point(Trajectory t);

    // Merges duplicate trajectories, drops nothing, validates the
    // invariants (positive probabilities, exact unit total, non-empty).
    static Lottery make(std::vector<std::pair<Trajectory, Rational>> entries);

    const std::map<Trajectory, Rational>& support() const& { return support_; }
    // Rvalue overload hands the map out by value so iterating the support
    // of a temporary (e.g. a fresh conditional) never dangles.
    std::map<Trajectory, Rational> support() && { return std::move(support_); }
    Rational probability_of(const Trajectory& t) const;

    friend bool operator==(const Lottery&, const Lottery&) = default;

    std::string str() const;

private:
    Lottery() = default;
    std::map<Trajectory, Rational> support_;
};

enum class LengthClass { SameLength, PartShared, DifferentLength };

std::string to_string(LengthClass c);

std::set<TrajectoryLength> length_support(const Lottery& x);

// SameLength iff the positive-probability length sets coincide,
// DifferentLength iff they are disjoint, PartShared otherwise.
LengthClass classify(const Lottery& x, const Lottery& y);

std::map<TrajectoryLength, Rational> length_distribution(const Lottery& x);

// Restriction of x to its length-l trajectories, renormalized by the
// total mass at l. Throws ZeroMassLength when l carries no mass.
Lottery condition_on_length(const Lottery& x, TrajectoryLength l);

// Weighted mixture: weights must be positive and sum to exactly 1
// (BadWeights otherwise). Identical trajectories merge.
Lottery mix(const std::vector<std::pair<Rational, Lottery>>& components);

inline Lottery mix2(const Rational& p, const Lottery& x, const Lottery& y) {
    return mix({{p, x}, {Rational(1) - p, y}});
}

}  // namespace post
