// Acceptance suite: every numeric verdict the kernel must reproduce,
// checked at exact rational equality and printed one line per criterion.

#include "post/generate.hpp"
#include "post/scenarios.hpp"
#include "post/verifiers.hpp"

#include <json.hpp>

#include <cstdio>
#include <functional>
#include <iostream>
#include <string>

using namespace post;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& name, const std::function<bool()>& body) {
    bool pass = false;
    std::string note;
    try {
        pass = body();
    } catch (const std::exception& e) {
        note = std::string(" (") + e.what() + ")";
    }
    std::printf("%s criterion %2d: %s%s\n", pass ? "PASS" : "FAIL", number, name.c_str(),
                note.c_str());
    if (!pass) ++g_failures;
}

std::string run_cli(const std::string& args, int& exit_code) {
    const std::string cmd = std::string(POSTCLI_PATH) + " " + args + " 2>&1";
    std::string output;
    char buffer[4096];
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        exit_code = -1;
        return output;
    }
    while (fgets(buffer, sizeof(buffer), pipe)) output += buffer;
    exit_code = WEXITSTATUS(pclose(pipe));
    return output;
}

const auto len1 = TrajectoryLength::finite(1);
const auto len2 = TrajectoryLength::finite(2);
const auto len3 = TrajectoryLength::finite(3);
const auto len4 = TrajectoryLength::finite(4);

}  // namespace

int main() {
    const PostStructure sum(UtilityModel::sum_of_payoffs());
    const auto unit = CalibratedUtilities::unit(UtilityModel::sum_of_payoffs());
    const auto all_rules = parse_rules_csv("");

    criterion(1, "allow/resist: expected sum-totals 9/5 vs 6/5; rules split", [&] {
        const auto scenario = builtin("allow_resist");
        const auto report = evaluate_scenario(scenario, applicable_rules(scenario));
        return report.expected_utility.at("resist") == Rational(9, 5) &&
               report.expected_utility.at("allow") == Rational(6, 5) &&
               report.choices.at("eum") == ChoiceBehavior{true, {"resist"}} &&
               report.choices.at("neutrality") == ChoiceBehavior{true, {"allow"}};
    });

    criterion(2, "evidential resistance: silence, few-resources preference, exclusion", [&] {
        const auto power =
            evaluate_scenario(builtin("evidence_of_power"), parse_rules_csv("neutrality"));
        const auto& matrix = power.pairwise.at("neutrality");
        if (matrix.at({"allow", "resist_star"}) != RuleVerdict::Silent) return false;

        const auto few =
            evaluate_scenario(builtin("evidence_few_resources"), parse_rules_csv("neutrality"));
        const auto& m2 = few.pairwise.at("neutrality");
        const bool few_over_many =
            m2.at({"resist_star_few", "resist_star_many"}) == RuleVerdict::PreferFirst;
        const auto& survivors = few.choices.at("neutrality").ids;
        const bool many_excluded =
            std::find(survivors.begin(), survivors.end(), "resist_star_many") == survivors.end();
        return few_over_many && many_excluded && !survivors.empty();
    });

    criterion(3, "exploit/invest: neutrality silent, calibrated sums exactly 2 vs 3", [&] {
        const auto scenario = builtin("exploit_invest");
        const auto u = scenario_calibration(scenario, true);
        const auto options = scenario.option_map();
        const Rational exploit_sum = conditional_utility(u, options.at("exploit"), len1) +
                                     conditional_utility(u, options.at("exploit"), len2);
        const Rational invest_sum = conditional_utility(u, options.at("invest"), len1) +
                                    conditional_utility(u, options.at("invest"), len2);
        const auto report = evaluate_scenario(scenario, all_rules);
        return report.pairwise.at("neutrality").at({"exploit", "invest"}) == RuleVerdict::Silent &&
               exploit_sum == 2 && invest_sum == 3 &&
               report.choices.at("neutrality_plus") == ChoiceBehavior{true, {"invest"}};
    });

    criterion(4, "calibration: early/late indifferent, sweetened early preferred", [&] {
        const auto early_late = builtin("early_late");
        const auto u = scenario_calibration(early_late, true);  // solved from the anchor
        const auto options = early_late.option_map();
        const bool indifferent = neutrality_plus_compare(u, options.at("early"),
                                                         options.at("late")) ==
                                 RuleVerdict::Indifferent;
        const auto sweetened = builtin("sweetened_early").option_map();
        const bool preferred = neutrality_plus_compare(u, sweetened.at("sweetened_early"),
                                                       sweetened.at("late")) ==
                               RuleVerdict::PreferFirst;
        return indifferent && preferred;
    });

    criterion(5, "work/steal: neutrality flips after retraining; balances 100 vs 3", [&] {
        const auto ws = evaluate_scenario(builtin("work_steal"), parse_rules_csv("neutrality,eum"));
        const auto ss = evaluate_scenario(builtin("steal_star"), parse_rules_csv("neutrality,eum"));
        return ws.choices.at("neutrality") == ChoiceBehavior{true, {"steal"}} &&
               ss.choices.at("neutrality") == ChoiceBehavior{true, {"work"}} &&
               ws.choices.at("eum") == ChoiceBehavior{true, {"work"}} &&
               ws.expected_utility.at("work") == 100 && ws.expected_utility.at("steal") == 3;
    });

    criterion(6, "cross/wait: one shared length, conditionals exactly 2 vs 3, wait chosen", [&] {
        const auto scenario = builtin("cross_wait");
        const auto options = scenario.option_map();
        const auto lengths = length_support(options.at("cross"));
        const auto report = evaluate_scenario(scenario, applicable_rules(scenario));
        return lengths == std::set<TrajectoryLength>{len4} &&
               length_support(options.at("wait")) == lengths &&
               conditional_utility(unit, options.at("cross"), len4) == 2 &&
               conditional_utility(unit, options.at("wait"), len4) == 3 &&
               report.choices.at("neutrality") == ChoiceBehavior{true, {"wait"}};
    });

    criterion(7, "managing the news: exact conditionals and all three verdicts", [&] {
        const auto scenario = builtin("managing_news");
        const auto options = scenario.option_map();
        const auto di3 = condition_on_length(options.at("dont_interfere"), len3);
        const auto br3 = condition_on_length(options.at("build_robot"), len3);
        const bool conditionals =
            conditional_utility(unit, options.at("dont_interfere"), len3) == Rational(5, 2) &&
            conditional_utility(unit, options.at("build_robot"), len3) == Rational(10, 3) &&
            di3.probability_of(traj({1, 1, 0})) == Rational(5, 6) &&
            di3.probability_of(traj({1, 1, 3})) == Rational(1, 6) &&
            br3.probability_of(traj({1, 1, 0})) == Rational(5, 9) &&
            br3.probability_of(traj({1, 1, 3})) == Rational(4, 9);
        const auto report = evaluate_scenario(scenario, all_rules);
        const auto& neutrality = report.pairwise.at("neutrality");
        const auto& plus = report.pairwise.at("neutrality_plus");
        return conditionals &&
               neutrality.at({"build_robot", "dont_interfere"}) == RuleVerdict::PreferFirst &&
               plus.at({"costly_build_robot", "dont_interfere"}) == RuleVerdict::PreferSecond &&
               neutrality.at({"cheaper_build_robot", "covert_build_robot"}) ==
                   RuleVerdict::PreferFirst;
    });

    criterion(8, "independence violation: x over y, mixing with z flips the verdict", [&] {
        const auto report = independence_violation_oracle();
        return report.holds;
    });

    criterion(9, "prospect table: exactly the six-edge chain and its cycle", [&] {
        const auto report = appendix1_cycle_oracle();
        return report.holds && report.edges.size() == 6 && report.stats.at("cycle_length") == 6;
    });

    criterion(10, "yardstick replay: 100 seeded quadruples, both directions clean", [&] {
        const auto u = scenario_calibration(builtin("early_late"), true);
        const auto report = yardstick_theorem_check(u, 100, 2024);
        return report.holds && report.stats.at("forward_trials") >= 40 &&
               report.stats.at("backward_trials") >= 40;
    });

    criterion(11, "property suites: posl split, transitivity, ibil, partition of unity", [&] {
        const auto family = mixed_length_family(7, 20);
        const auto posl_neutral = check_posl(neutrality_comparator(sum), family);
        const auto posl_eum = check_posl(eum_comparator(UtilityModel::sum_of_payoffs()), family);
        const auto transitive = check_transitivity(neutrality_plus_comparator(unit),
                                                   mixed_length_family(8, 15));
        const auto ibil = check_ibil(unit, 200, 11);
        bool partitions = true;
        for (int i = 0; i < 100; ++i) {
            SeededRng rng(SeededRng::derive(99, i));
            const Lottery x = random_lottery(rng, random_length_set(rng));
            std::vector<std::pair<Rational, Lottery>> parts;
            for (const auto& [l, p] : length_distribution(x))
                parts.emplace_back(p, condition_on_length(x, l));
            partitions = partitions && mix(parts) == x;
        }
        return posl_neutral.holds && !posl_eum.holds && !posl_eum.counterexamples.empty() &&
               transitive.holds && ibil.holds && partitions;
    });

    criterion(12, "sampling: 10000 seeded draws land within [0.48, 0.52] each", [&] {
        int exit_code = 0;
        const auto output = run_cli(
            "sample --builtin exploit_invest --rules neutrality --samples 10000 --seed 1 "
            "--format json",
            exit_code);
        if (exit_code != 0) return false;
        const auto parsed = nlohmann::json::parse(output);
        const auto exploit = parsed["frequencies"]["exploit"]["count"].get<double>() / 10000.0;
        const auto invest = parsed["frequencies"]["invest"]["count"].get<double>() / 10000.0;
        return exploit >= 0.48 && exploit <= 0.52 && invest >= 0.48 && invest <= 0.52;
    });

    if (g_failures == 0) {
        std::printf("all criteria pass\n");
        return 0;
    }
    std::printf("%d criteria failing\n", g_failures);
    return 1;
}
