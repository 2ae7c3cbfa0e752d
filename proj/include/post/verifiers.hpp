#pragma once

#include "post/calibration.hpp"
#include "post/prospect.hpp"
#include "post/report.hpp"
#include "post/rules.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace post {

using TrajectoryComparator = std::function<PrefVerdict(const Trajectory&, const Trajectory&)>;

// POST itself: at least min_strict strict same-length preferences among
// ts (clause 1) and a gap for every different-length pair (clause 2).
CheckReport check_post(const PostStructure& p, const std::vector<Trajectory>& ts,
                       std::uint64_t min_strict);
CheckReport check_post_with(const TrajectoryComparator& cmp, const std::vector<Trajectory>& ts,
                            std::uint64_t min_strict);

// POSL boundary: every part-shared or different-length pair must come
// back Silent or NoPreference.
CheckReport check_posl(const LotteryComparator& comparator, const std::vector<Lottery>& ls,
                       Exec exec = Exec::parallel);

// Wherever the comparator strictly prefers one lottery of a pair, some
// support trajectory of the winner must be preferred to some support
// trajectory of the loser.
CheckReport check_negative_dominance(const LotteryComparator& comparator, const PostStructure& p,
                                     const std::vector<std::pair<Lottery, Lottery>>& pairs);

// No directed cycle through the strict-preference edges; a found cycle
// is the counterexample.
CheckReport check_acyclicity(const std::vector<std::pair<std::string, std::string>>& edges);

// Emits the preference edges Non-Arbitrariness forces between prospects:
// statewise-preferred mass at least 1 - epsilon and no statewise
// dispreference. Emits nothing when the premise (some part-shared-length
// preference exists) is declared false.
CheckReport check_non_arbitrariness(const PostStructure& p,
                                    const std::vector<std::pair<std::string, Prospect>>& prospects,
                                    const Rational& epsilon, bool premise_holds);

// The six-prospect table over three equiprobable states: runs the
// non-arbitrariness pass (epsilon 2/5 unless overridden), feeds the
// implied edges to the acyclicity checker, and confirms the six-cycle
// contradiction.
CheckReport appendix1_cycle_oracle(const Rational& epsilon = Rational(2, 5));

// PP-, II-, and PI-transitivity over every ordered triple.
CheckReport check_transitivity(const LotteryComparator& comparator, const std::vector<Lottery>& ls,
                               Exec exec = Exec::parallel);

// Indifference survives mixing with a common third lottery, both ways,
// for pairs sharing a length distribution.
CheckReport check_ibil(const CalibratedUtilities& u, std::uint64_t trials, std::uint64_t seed,
                       Exec exec = Exec::parallel);

// For random pairs satisfying the lengthwise-dominance antecedent, the
// by-length decompositions satisfy every costly-shift clause and the two
// code paths return the same verdict.
CheckReport neutrality_derivation_oracle(const PostStructure& p, std::uint64_t trials,
                                         std::uint64_t seed, Exec exec = Exec::parallel);

// Replays the rebalancing construction that upgrades lengthwise
// dominance to sum comparison: builds the intermediate lottery sequence
// with increment `step`, checks every adjacent indifference and the
// terminal dominance, and confirms the final verdict.
CheckReport neutrality_plus_rebalance_oracle(const CalibratedUtilities& u, const Lottery& x,
                                             const Lottery& y, const Rational& step);

// The fixed three-lottery independence violation: x beats y outright,
// yet mixing both halves with z flips the verdict.
CheckReport independence_violation_oracle();

// Strict-preference cycles up to max_len among ls: the static skeleton
// a money pump would need.
CheckReport money_pump_search(const LotteryComparator& comparator, const std::vector<Lottery>& ls,
                              std::size_t max_len, Exec exec = Exec::parallel);

}  // namespace post
