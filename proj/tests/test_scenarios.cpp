#include "post/errors.hpp"
#include "post/scenarios.hpp"

#include <doctest.h>

using namespace post;

namespace {

const char* kMinimalScenario = R"({
  "name": "demo",
  "utility": "sum_of_payoffs",
  "options": [
    {"id": "allow", "label": "allow", "trajectories": [
      {"payoffs": ["1"], "shutdown": "received", "prob": "9/10"},
      {"payoffs": ["1", "2"], "shutdown": "received", "prob": "1/10"}
    ]},
    {"id": "resist", "label": "resist", "trajectories": [
      {"payoffs": ["0"], "shutdown": "received", "prob": "1/10"},
      {"payoffs": ["0", "2"], "shutdown": "received", "prob": "9/10"}
    ]}
  ],
  "expected": {"neutrality": {"choice": "allow"}, "eum": {"choice": "resist"}}
})";

}  // namespace

TEST_CASE("load_scenario parses the schema exactly") {
    const auto s = load_scenario(kMinimalScenario);
    CHECK(s.name == "demo");
    CHECK(s.options.size() == 2);
    CHECK(length_support(s.options[0].lottery) ==
          std::set<TrajectoryLength>{TrajectoryLength::finite(1), TrajectoryLength::finite(2)});
    CHECK(s.options[0].lottery.probability_of(traj({1})) == Rational(9, 10));
    CHECK(s.expected.at("neutrality").choice->ids == std::vector<std::string>{"allow"});
}

TEST_CASE("rational strings parse exactly, decimals do not") {
    CHECK(parse_rational("1/3") == Rational(1, 3));
    CHECK(parse_rational("-7/2") == Rational(-7, 2));
    CHECK(parse_rational("42") == 42);
    CHECK_THROWS_WITH_AS(parse_rational("0.5"), doctest::Contains("ParseError"), Error);
    CHECK_THROWS_WITH_AS(parse_rational("1/0"), doctest::Contains("ParseError"), Error);
    CHECK_THROWS_WITH_AS(parse_rational(""), doctest::Contains("ParseError"), Error);
    CHECK_THROWS_WITH_AS(parse_rational("1 /2"), doctest::Contains("ParseError"), Error);
}

TEST_CASE("load_scenario rejects malformed files with named errors") {
    SUBCASE("probabilities must sum to one, and the sum is reported") {
        const char* bad = R"({"name": "x", "utility": "sum_of_payoffs", "options": [
          {"id": "a", "label": "other", "trajectories": [
            {"payoffs": ["1"], "shutdown": "received", "prob": "3/5"},
            {"payoffs": ["2"], "shutdown": "received", "prob": "1/2"}
          ]}]})";
        CHECK_THROWS_WITH_AS(load_scenario(bad), doctest::Contains("11/10"), Error);
    }
    SUBCASE("duplicate option ids") {
        const char* bad = R"({"name": "x", "utility": "sum_of_payoffs", "options": [
          {"id": "a", "label": "other", "trajectories": [
            {"payoffs": ["1"], "shutdown": "received", "prob": "1"}]},
          {"id": "a", "label": "other", "trajectories": [
            {"payoffs": ["2"], "shutdown": "received", "prob": "1"}]}
        ]})";
        CHECK_THROWS_WITH_AS(load_scenario(bad), doctest::Contains("DuplicateId"), Error);
    }
    SUBCASE("unknown fields are rejected") {
        const char* bad = R"({"name": "x", "utility": "sum_of_payoffs", "extra": 1, "options": [
          {"id": "a", "label": "other", "trajectories": [
            {"payoffs": ["1"], "shutdown": "received", "prob": "1"}]}]})";
        CHECK_THROWS_WITH_AS(load_scenario(bad), doctest::Contains("unknown field"), Error);
    }
    SUBCASE("json syntax errors map to ParseError") {
        CHECK_THROWS_WITH_AS(load_scenario("{"), doctest::Contains("ParseError"), Error);
    }
}

TEST_CASE("builtin registry covers the numeric case library") {
    const std::vector<std::string> expected = {
        "allow_resist",    "appendix1_prospects", "cross_wait",       "early_late",
        "evidence_few_resources", "evidence_of_power", "exploit_invest", "independence_fn31",
        "managing_news",   "steal_star",          "sweetened_early",  "work_steal"};
    CHECK(builtin_names() == expected);
    CHECK_THROWS_WITH_AS(builtin("nope"), doctest::Contains("UnknownScenario"), Error);
}

TEST_CASE("every built-in scenario passes its expected block") {
    for (const auto& name : builtin_names()) {
        CAPTURE(name);
        const auto s = builtin(name);
        const auto report = evaluate_scenario(s, applicable_rules(s));
        CHECK(report.expected_present);
        for (const auto& f : report.expected_failures) CAPTURE(f);
        CHECK(report.expected_passed);
    }
}

TEST_CASE("serialize then load is the identity") {
    for (const auto& name : builtin_names()) {
        CAPTURE(name);
        const auto s = builtin(name);
        const auto text = serialize(s);
        const auto reloaded = load_scenario(text);
        CHECK(reloaded == s);
        CHECK(serialize(reloaded) == text);
    }
}

TEST_CASE("evaluation is deterministic") {
    const auto a = evaluate_scenario(builtin("managing_news"), parse_rules_csv(""));
    const auto b = evaluate_scenario(builtin("managing_news"), parse_rules_csv(""));
    CHECK(a.to_json() == b.to_json());
    CHECK(a.to_text() == b.to_text());
}

TEST_CASE("verdict details: allow_resist and exploit_invest") {
    const auto ar = evaluate_scenario(builtin("allow_resist"), parse_rules_csv("neutrality,eum"));
    CHECK(ar.choices.at("neutrality") == ChoiceBehavior{true, {"allow"}});
    CHECK(ar.choices.at("eum") == ChoiceBehavior{true, {"resist"}});
    CHECK(ar.expected_utility.at("resist") == Rational(9, 5));
    CHECK(ar.expected_utility.at("allow") == Rational(6, 5));

    const auto ei = evaluate_scenario(builtin("exploit_invest"), parse_rules_csv(""));
    CHECK(ei.choices.at("neutrality") == ChoiceBehavior{false, {"exploit", "invest"}});
    CHECK(ei.choices.at("neutrality_plus") == ChoiceBehavior{true, {"invest"}});

    const auto ws = evaluate_scenario(builtin("work_steal"), parse_rules_csv("neutrality,eum"));
    CHECK(ws.choices.at("neutrality") == ChoiceBehavior{true, {"steal"}});
    CHECK(ws.expected_utility.at("work") == 100);
    CHECK(ws.expected_utility.at("steal") == 3);
    const auto ss = evaluate_scenario(builtin("steal_star"), parse_rules_csv("neutrality,eum"));
    CHECK(ss.choices.at("neutrality") == ChoiceBehavior{true, {"work"}});
}

TEST_CASE("silent cross-support pairs are reported as affirmed no-preference") {
    const auto report = evaluate_scenario(builtin("appendix1_prospects"),
                                          parse_rules_csv("neutrality"));
    const auto& matrix = report.pairwise.at("neutrality");
    CHECK(matrix.at({"a", "d"}) == RuleVerdict::NoPreference);  // disjoint supports
    CHECK(matrix.at({"b", "e"}) == RuleVerdict::Silent);        // same-length, conflicting
    CHECK(matrix.at({"b", "c"}) == RuleVerdict::PreferFirst);
}

TEST_CASE("neutrality+ without a calibration over several lengths is refused") {
    const auto s = load_scenario(kMinimalScenario);
    CHECK_THROWS_WITH_AS(evaluate_scenario(s, {RuleKind::NeutralityPlus}),
                         doctest::Contains("MissingCalibration"), Error);
    // Fine when only single-rule neutrality is requested.
    CHECK_NOTHROW(evaluate_scenario(s, {RuleKind::Neutrality}));
}

TEST_CASE("table utility models and never-length trajectories round-trip") {
    const char* source = R"({
      "name": "robot_road",
      "utility": {"table": [
        {"payoffs": ["1", "1"], "shutdown": "never", "utility": "7/2"},
        {"payoffs": ["0"], "shutdown": "never", "utility": "1"},
        {"payoffs": ["2"], "shutdown": "received", "utility": "2"}
      ]},
      "options": [
        {"id": "keep_moving", "label": "other", "trajectories": [
          {"payoffs": ["1", "1"], "shutdown": "never", "prob": "1/2"},
          {"payoffs": ["0"], "shutdown": "never", "prob": "1/2"}
        ]},
        {"id": "stall", "label": "other", "trajectories": [
          {"payoffs": ["0"], "shutdown": "never", "prob": "1"}
        ]}
      ],
      "expected": {"neutrality": {"choice": "keep_moving"}}
    })";
    const auto s = load_scenario(source);
    CHECK(s.utility.is_table());
    CHECK(s.options[0].lottery.support().begin()->first.length() == TrajectoryLength::never());

    // Both options live entirely at the never length, so neutrality applies.
    const auto report = evaluate_scenario(s, parse_rules_csv("neutrality"));
    CHECK(report.expected_passed);
    CHECK(report.conditional_utilities.at("keep_moving").at(TrajectoryLength::never()) ==
          Rational(9, 4));

    const auto text = serialize(s);
    CHECK(load_scenario(text) == s);
    CHECK(serialize(load_scenario(text)) == text);
}

TEST_CASE("rule csv parsing") {
    CHECK(parse_rules_csv("neutrality,eum") ==
          std::set<RuleKind>{RuleKind::Neutrality, RuleKind::Eum});
    CHECK(parse_rules_csv("neutrality+") == std::set<RuleKind>{RuleKind::NeutralityPlus});
    CHECK(parse_rules_csv("").size() == 3);
    CHECK_THROWS_WITH_AS(parse_rules_csv("dominance"), doctest::Contains("UnknownRule"), Error);
}

TEST_CASE("sampling is uniform over survivors and seed-deterministic") {
    const ChoiceBehavior stochastic{false, {"exploit", "invest"}};
    const auto counts = sample_choices(stochastic, 10000, 1);
    CHECK(counts.at("exploit") + counts.at("invest") == 10000);
    CHECK(counts.at("exploit") > 4800);
    CHECK(counts.at("exploit") < 5200);
    CHECK(sample_choices(stochastic, 10000, 1) == counts);
    CHECK(sample_choices(stochastic, 10000, 2) != counts);
}
