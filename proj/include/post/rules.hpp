#pragma once

#include "post/calibration.hpp"
#include "post/exec.hpp"
#include "post/preferences.hpp"

#include <map>
#include <string>
#include <vector>

namespace post {

// A lottery written as a weighted sum of component lotteries. by_length
// gives the canonical decomposition: one component per positive-
// probability length, shortest first, weighted by the length
// distribution.
struct Decomposition {
    std::vector<Rational> weights;
    std::vector<Lottery> components;

    static Decomposition make(std::vector<Rational> weights, std::vector<Lottery> components);
    static Decomposition by_length(const Lottery& x);

    Lottery recompose() const;
};

enum class OptionLabel { Resist, Allow, Seek, Other };

std::string to_string(OptionLabel l);

// A situation: the option set the agent faces, with resist/allow/seek
// labels where the shutdown reading is known.
struct LabeledScenario {
    std::map<std::string, Lottery> options;
    std::map<std::string, OptionLabel> labels;
};

// The preference relation the POST structure induces on whole lotteries:
// gaps outside same-length pairs, and within a same-length pair the
// lengthwise conditional-expectation comparison (dominance -> strict,
// equality everywhere -> indifference, conflict -> gap).
PrefVerdict lottery_relation(const PostStructure& p, const Lottery& x, const Lottery& y);

// If-Lack-of-Preference-Against-Costly-Shifts over a pair of equal-count
// decompositions: PreferFirst iff the x-components pairwise lack a
// preference, all weights on both sides lie strictly inside (0,1), every
// x-component weakly beats its y-counterpart, and at least one beats it
// strictly. Silent otherwise.
RuleVerdict ilpacs_compare(const PostStructure& p, const Decomposition& x, const Decomposition& y);

// Never pay costs to shift probability mass between lengths: engages
// only on same-length pairs; PreferFirst iff x weakly beats y at every
// shared length (by conditional expected base utility) and strictly at
// some length.
RuleVerdict neutrality_compare(const PostStructure& p, const Lottery& x, const Lottery& y);

// Expected utility ignoring the length distribution: on same-length
// pairs, compare the plain sums of per-length conditional utilities.
RuleVerdict neutrality_plus_compare(const CalibratedUtilities& u, const Lottery& x,
                                    const Lottery& y);

// The contrast baseline: plain expected base utility of the whole
// lottery, length probabilities included.
RuleVerdict eum_compare(const UtilityModel& base, const Lottery& x, const Lottery& y);

// Verdicts for every unordered option pair (key: "a|b" with a < b,
// verdict oriented from a). The sweep is O(n^2) independent comparisons.
std::map<std::pair<std::string, std::string>, RuleVerdict> verdict_matrix(
    const LotteryComparator& comparator, const std::map<std::string, Lottery>& options,
    Exec exec = Exec::parallel);

// Drop every option dispreferred to some other available option; the
// agent chooses stochastically among the survivors.
ChoiceBehavior maximality_choose(const LotteryComparator& comparator,
                                 const std::map<std::string, Lottery>& options,
                                 Exec exec = Exec::parallel);

struct SituationReport {
    bool holds = false;
    bool vacuous = false;  // no options carried the checked label
    std::map<std::string, std::string> witnesses;  // resist/seek id -> dominating allow id
    std::map<std::string, std::string> failures;   // resist/seek id -> first violated condition
};

// Resisting-Shutdown-Is-Costly: every resist option must be lengthwise
// dominated by some allow option (the three conditions under which the
// neutral agent deterministically avoids it).
SituationReport resic_check(const PostStructure& p, const LabeledScenario& s);

// Seeking-Shutdown-Is-Costly: same check with seek-labeled options.
SituationReport sesic_check(const PostStructure& p, const LabeledScenario& s);

// Ready-made comparators for the evaluators and checkers.
LotteryComparator neutrality_comparator(PostStructure p);
LotteryComparator neutrality_plus_comparator(CalibratedUtilities u);
LotteryComparator eum_comparator(UtilityModel base);

}  // namespace post
