// The parallel sweeps must be bit-identical to the serial reference.

#include "post/generate.hpp"
#include "post/scenarios.hpp"
#include "post/verifiers.hpp"

#include <doctest.h>

using namespace post;

namespace {

bool same_report(const CheckReport& a, const CheckReport& b) {
    return a.condition == b.condition && a.holds == b.holds && a.vacuous == b.vacuous &&
           a.counterexamples == b.counterexamples && a.stats == b.stats && a.edges == b.edges;
}

}  // namespace

TEST_CASE("serial and parallel sweeps produce identical reports") {
    const PostStructure money(UtilityModel::sum_of_payoffs());
    const auto unit = CalibratedUtilities::unit(UtilityModel::sum_of_payoffs());
    const auto anchored = scenario_calibration(builtin("early_late"), true);
    const auto family = mixed_length_family(17, 24);

    CHECK(same_report(yardstick_theorem_check(anchored, 60, 5, Exec::serial),
                      yardstick_theorem_check(anchored, 60, 5, Exec::parallel)));
    CHECK(same_report(check_ibil(unit, 80, 5, Exec::serial),
                      check_ibil(unit, 80, 5, Exec::parallel)));
    CHECK(same_report(neutrality_derivation_oracle(money, 80, 5, Exec::serial),
                      neutrality_derivation_oracle(money, 80, 5, Exec::parallel)));
    CHECK(same_report(check_posl(neutrality_comparator(money), family, Exec::serial),
                      check_posl(neutrality_comparator(money), family, Exec::parallel)));
    CHECK(same_report(check_transitivity(neutrality_plus_comparator(unit), family, Exec::serial),
                      check_transitivity(neutrality_plus_comparator(unit), family, Exec::parallel)));
}

TEST_CASE("maximality and verdict matrices agree across execution modes") {
    const PostStructure money(UtilityModel::sum_of_payoffs());
    const auto family = mixed_length_family(23, 18);
    std::map<std::string, Lottery> options;
    for (std::size_t i = 0; i < family.size(); ++i)
        options.emplace("o" + std::to_string(100 + i), family[i]);
    const auto cmp = neutrality_comparator(money);
    CHECK(verdict_matrix(cmp, options, Exec::serial) ==
          verdict_matrix(cmp, options, Exec::parallel));
    CHECK(maximality_choose(cmp, options, Exec::serial) ==
          maximality_choose(cmp, options, Exec::parallel));
}

TEST_CASE("scenario evaluation matches across execution modes") {
    for (const auto& name : builtin_names()) {
        const auto s = builtin(name);
        const auto rules = applicable_rules(s);
        CHECK(evaluate_scenario(s, rules, Exec::serial).to_json() ==
              evaluate_scenario(s, rules, Exec::parallel).to_json());
    }
}
