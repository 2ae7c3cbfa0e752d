#pragma once

#include "post/exec.hpp"
#include "post/preferences.hpp"
#include "post/report.hpp"

#include <map>
#include <vector>

namespace post {

// One training fact fixing relative scales across two lengths: the
// utility difference between a_l and b_l (length l) equals the utility
// difference between a_m and b_m (length m). A zero base difference on
// either side fixes nothing and is rejected.
struct Anchor {
    TrajectoryLength l, m;
    Trajectory a_l, b_l, a_m, b_m;

    friend bool operator==(const Anchor&, const Anchor&) = default;
};

// Desired relative likelihood per length; only ratios matter.
struct LengthWeights {
    std::map<TrajectoryLength, Rational> weights;  // strictly positive

    friend bool operator==(const LengthWeights&, const LengthWeights&) = default;
};

// Family of per-length expectational utilities u_l(t) = scale(l) *
// base(t) + offset(l). Scales are strictly positive; lengths never
// touched by an anchor default to scale 1, offset 0. Offsets are kept in
// the type so their cancellation in same-support sums is testable, but
// calibrate() always leaves them at 0.
class CalibratedUtilities {
public:
    static CalibratedUtilities unit(UtilityModel base);

    const UtilityModel& base() const { return base_; }
    Rational scale(TrajectoryLength l) const;
    Rational offset(TrajectoryLength l) const;
    Rational utility(const Trajectory& t) const;
    const std::vector<Anchor>& anchors() const { return anchors_; }

    CalibratedUtilities with_offset(TrajectoryLength l, Rational off) const;

private:
    friend CalibratedUtilities calibrate(UtilityModel base, const std::vector<Anchor>& anchors,
                                         TrajectoryLength reference);
    UtilityModel base_;
    std::map<TrajectoryLength, Rational> scale_;
    std::map<TrajectoryLength, Rational> offset_;
    std::vector<Anchor> anchors_;
};

// Probability-weighted average of u_l over the length-l conditional of
// x. Throws ZeroMassLength when l is outside x's length support.
Rational conditional_utility(const CalibratedUtilities& u, const Lottery& x, TrajectoryLength l);

// Solves the anchor equations for exact scale ratios over the anchor
// graph, with scale(reference) = 1. Two anchor paths forcing different
// ratios is InconsistentAnchors; anchored lengths unreachable from the
// reference is DisconnectedLengths.
CalibratedUtilities calibrate(UtilityModel base, const std::vector<Anchor>& anchors,
                              TrajectoryLength reference);

// Anchors whose induced scales are proportional to w, so the calibrated
// agent mimics a length prior proportional to w. Requires a
// sum-of-payoffs base (anchor trajectories are manufactured).
std::vector<Anchor> weights_to_anchors(const LengthWeights& w, const UtilityModel& base);

// The indifference criterion fixing cross-length scale: true iff
// u_l(x_l) - u_l(y_l) = u_m(x_m) - u_m(y_m). All four lotteries must be
// single-length as typed, with l != m.
bool ramsey_indifferent(const CalibratedUtilities& u, const Lottery& x_l, const Lottery& y_l,
                        const Lottery& x_m, const Lottery& y_m);

// Replays both directions of the yardstick equivalence on random
// quadruples: the forward mixture chain (each link checked through the
// rules-module evaluator) and the backward contradiction when the
// differences are unequal. Requires a calibration holding at least one
// anchor (DegenerateAnchor otherwise).
CheckReport yardstick_theorem_check(const CalibratedUtilities& u, std::uint64_t trials,
                                    std::uint64_t seed, Exec exec = Exec::parallel);

}  // namespace post
