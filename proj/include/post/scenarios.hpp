#pragma once

#include "post/rules.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace post {

enum class RuleKind { Neutrality, NeutralityPlus, Eum };

std::string to_string(RuleKind r);
RuleKind parse_rule(const std::string& name);                // accepts "neutrality+" alias
std::set<RuleKind> parse_rules_csv(const std::string& csv);  // empty csv = all rules

// Calibration block of a scenario file: explicit anchors with a
// reference length, or length weights expanded through the yardstick.
struct ScenarioCalibration {
    std::optional<TrajectoryLength> reference;
    std::vector<Anchor> anchors;
    std::optional<LengthWeights> weights;

    friend bool operator==(const ScenarioCalibration&, const ScenarioCalibration&);
};

struct ScenarioOption {
    std::string id;
    OptionLabel label = OptionLabel::Other;
    Lottery lottery;

    friend bool operator==(const ScenarioOption&, const ScenarioOption&) = default;
};

// What the scenario says each rule should conclude.
struct RuleExpectation {
    std::optional<ChoiceBehavior> choice;
    std::vector<std::pair<std::string, std::string>> prefer;  // (winner, loser)
    std::vector<std::pair<std::string, std::string>> silent;
    std::vector<std::pair<std::string, std::string>> indifferent;

    friend bool operator==(const RuleExpectation&, const RuleExpectation&) = default;
};

struct ScenarioFile {
    std::string name;
    UtilityModel utility;
    std::optional<ScenarioCalibration> calibration;
    std::vector<ScenarioOption> options;
    std::map<std::string, RuleExpectation> expected;  // keyed by canonical rule name

    std::map<std::string, Lottery> option_map() const;
    LabeledScenario labeled() const;

    friend bool operator==(const ScenarioFile&, const ScenarioFile&);
};

// Strict parse of the UTF-8 JSON scenario schema: exact rational
// strings, unknown fields rejected, ids unique, probabilities positive
// and summing to exactly 1 per option.
ScenarioFile load_scenario(const std::string& source);

std::string serialize(const ScenarioFile& s);

// Built-in library of the numeric cases. UnknownScenario for bad names.
ScenarioFile builtin(const std::string& name);
std::vector<std::string> builtin_names();

// All rules the scenario can answer for: neutrality+ drops out when
// several lengths are in play and no calibration block fixes the scales.
// An explicit neutrality+ request on such a scenario still errors.
std::set<RuleKind> applicable_rules(const ScenarioFile& s);

struct VerdictReport {
    std::string scenario;
    std::vector<std::string> option_ids;
    // rule name -> matrix over option pairs (id_a < id_b, verdict from id_a)
    std::map<std::string, std::map<std::pair<std::string, std::string>, RuleVerdict>> pairwise;
    std::map<std::string, ChoiceBehavior> choices;  // rule name -> maximality outcome
    std::map<std::string, std::map<TrajectoryLength, Rational>> conditional_utilities;
    std::map<std::string, Rational> expected_utility;  // plain expectation column
    bool expected_present = false;
    bool expected_passed = true;
    std::vector<std::string> expected_failures;

    std::string to_text() const;
    std::string to_json() const;
};

// Runs the requested rules over every option pair, the maximality choice
// per rule, the per-length conditional-utility table, and the check
// against the scenario's expected block. Silent verdicts on pairs with
// differing length supports are reported as NoPreference (the lack is
// affirmed, not merely unaddressed).
VerdictReport evaluate_scenario(const ScenarioFile& s, const std::set<RuleKind>& rules,
                                Exec exec = Exec::parallel);

// Calibrated utilities implied by a scenario's calibration block (unit
// scales when absent). MissingCalibration when neutrality+ needs one.
CalibratedUtilities scenario_calibration(const ScenarioFile& s, bool neutrality_plus_requested);

// Uniform draws over a stochastic survivor set; deterministic in seed.
std::map<std::string, std::uint64_t> sample_choices(const ChoiceBehavior& choice,
                                                    std::uint64_t samples, std::uint64_t seed);

}  // namespace post
