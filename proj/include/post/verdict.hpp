#pragma once

#include <string>

namespace post {

// Trajectory-level verdicts. Indifferent and Gap both mean "lacks a
// preference"; they differ in sensitivity to sweetening and souring
// (indifference is sensitive to all of them, a gap is not).
enum class PrefVerdict { Prefer, Disprefer, Indifferent, Gap };

// Rule-level verdicts over lottery pairs. Silent means the rule's
// antecedent fails (it neither compels nor forbids); NoPreference means
// the rule affirms the lack of preference.
enum class RuleVerdict { PreferFirst, PreferSecond, Indifferent, NoPreference, Silent };

std::string to_string(PrefVerdict v);
std::string to_string(RuleVerdict v);

inline bool lacks_preference(PrefVerdict v) {
    return v == PrefVerdict::Indifferent || v == PrefVerdict::Gap;
}

inline bool weakly_prefers(PrefVerdict v) {
    return v == PrefVerdict::Prefer || v == PrefVerdict::Indifferent;
}

inline bool is_strict(RuleVerdict v) {
    return v == RuleVerdict::PreferFirst || v == RuleVerdict::PreferSecond;
}

}  // namespace post
