// Command-line front end: evaluate scenarios, run the verifier suites
// and theorem oracles, sample stochastic choices. Exit codes: 0 success,
// 1 verification or expectation failure, 2 input/usage error.

#include "post/errors.hpp"
#include "post/generate.hpp"
#include "post/scenarios.hpp"
#include "post/verifiers.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace post;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Options {
    std::string file;
    std::string builtin_name;
    std::string rules_csv;
    std::string format = "text";
    std::string oracle_name;
    std::uint64_t seed = 0;
    std::uint64_t samples = 10000;
    std::uint64_t trials = 200;
    std::string epsilon = "2/5";
    std::string step = "1/8";
};

ScenarioFile resolve_scenario(const Options& opt) {
    if (!opt.file.empty() && !opt.builtin_name.empty())
        raise("BadArguments", "give either --file or --builtin, not both");
    if (!opt.file.empty()) {
        std::ifstream in(opt.file);
        if (!in) raise("FileError", "cannot open " + opt.file);
        std::stringstream buffer;
        buffer << in.rdbuf();
        return load_scenario(buffer.str());
    }
    if (!opt.builtin_name.empty()) return builtin(opt.builtin_name);
    raise("BadArguments", "a scenario is required: --file PATH or --builtin NAME");
}

json report_json(const CheckReport& r) {
    json out;
    out["condition"] = r.condition;
    out["holds"] = r.holds;
    out["vacuous"] = r.vacuous;
    json stats = json::object();
    for (const auto& [key, value] : r.stats) stats[key] = value;
    out["stats"] = std::move(stats);
    json counterexamples = json::array();
    for (const auto& [inputs, clause] : r.counterexamples)
        counterexamples.push_back(json{{"inputs", inputs}, {"violated", clause}});
    out["counterexamples"] = std::move(counterexamples);
    if (!r.edges.empty()) {
        json edges = json::array();
        for (const auto& [a, b] : r.edges) edges.push_back(json::array({a, b}));
        out["edges"] = std::move(edges);
    }
    return out;
}

void print_reports(const std::vector<CheckReport>& reports, const std::string& format) {
    if (format == "json") {
        json out = json::array();
        for (const auto& r : reports) out.push_back(report_json(r));
        std::cout << out.dump(2) << "\n";
        return;
    }
    for (const auto& r : reports) {
        std::cout << r.summary() << "\n";
        for (const auto& [inputs, clause] : r.counterexamples)
            std::cout << "  counterexample: " << inputs << " | " << clause << "\n";
    }
}

int cmd_eval(const Options& opt) {
    const ScenarioFile scenario = resolve_scenario(opt);
    const auto rules = opt.rules_csv.empty() ? applicable_rules(scenario)
                                             : parse_rules_csv(opt.rules_csv);
    const auto report = evaluate_scenario(scenario, rules);
    std::cout << (opt.format == "json" ? report.to_json() : report.to_text()) << "\n";
    if (report.expected_present && !report.expected_passed) return kExitFail;
    return kExitOk;
}

int cmd_verify(const Options& opt) {
    std::vector<CheckReport> reports;

    // Trajectory-level structure over the dollar table plus spares.
    const PostStructure money(UtilityModel::sum_of_payoffs());
    std::vector<Trajectory> ts;
    for (int amount = 1; amount <= 5; ++amount) {
        ts.push_back(traj({Rational(amount)}));
        ts.push_back(traj({Rational(amount), Rational(0)}));
    }
    ts.push_back(traj({Rational(1), Rational(1)}, Shutdown::NeverReceived));
    reports.push_back(check_post(money, ts, 1));

    const auto family = mixed_length_family(opt.seed, 20);
    reports.push_back(check_posl(neutrality_comparator(money), family));

    const CalibratedUtilities unit = CalibratedUtilities::unit(UtilityModel::sum_of_payoffs());
    reports.push_back(check_transitivity(neutrality_plus_comparator(unit), family));
    reports.push_back(check_ibil(unit, opt.trials, opt.seed));

    std::vector<std::pair<Lottery, Lottery>> pairs;
    for (const auto& name : builtin_names()) {
        const auto scenario = builtin(name);
        const auto options = scenario.option_map();
        for (auto a = options.begin(); a != options.end(); ++a)
            for (auto b = std::next(a); b != options.end(); ++b)
                pairs.emplace_back(a->second, b->second);
    }
    reports.push_back(check_negative_dominance(neutrality_comparator(money), money, pairs));

    print_reports(reports, opt.format);
    for (const auto& r : reports)
        if (!r.holds) return kExitFail;
    return kExitOk;
}

int cmd_oracle(const Options& opt) {
    const Rational epsilon = parse_rational(opt.epsilon);
    const Rational step = parse_rational(opt.step);
    CheckReport report;
    if (opt.oracle_name == "appendix1") {
        report = appendix1_cycle_oracle(epsilon);
    } else if (opt.oracle_name == "yardstick") {
        const auto scenario = builtin("early_late");
        const auto u = scenario_calibration(scenario, true);
        report = yardstick_theorem_check(u, opt.trials, opt.seed);
    } else if (opt.oracle_name == "rebalance") {
        const auto scenario = builtin("exploit_invest");
        const auto u = scenario_calibration(scenario, true);
        const auto options = scenario.option_map();
        report = neutrality_plus_rebalance_oracle(u, options.at("invest"), options.at("exploit"),
                                                  step);
    } else if (opt.oracle_name == "independence") {
        report = independence_violation_oracle();
    } else if (opt.oracle_name == "neutrality-derivation") {
        report = neutrality_derivation_oracle(PostStructure(UtilityModel::sum_of_payoffs()),
                                              opt.trials, opt.seed);
    } else if (opt.oracle_name == "money-pump") {
        const PostStructure money(UtilityModel::sum_of_payoffs());
        report = money_pump_search(neutrality_comparator(money),
                                   mixed_length_family(opt.seed, 16), 6);
    } else {
        raise("UnknownOracle", "no oracle named \"" + opt.oracle_name + "\"");
    }
    print_reports({report}, opt.format);
    return report.holds ? kExitOk : kExitFail;
}

int cmd_sample(const Options& opt) {
    const ScenarioFile scenario = resolve_scenario(opt);
    const auto rules = parse_rules_csv(opt.rules_csv);
    if (rules.size() != 1)
        raise("BadArguments", "sampling needs exactly one rule, e.g. --rules neutrality");
    const auto report = evaluate_scenario(scenario, rules);
    const auto& choice = report.choices.begin()->second;
    if (choice.deterministic)
        raise("DeterministicScenario",
              "maximality is deterministic here; nothing to sample");

    const auto counts = sample_choices(choice, opt.samples, opt.seed);
    if (opt.format == "json") {
        json out;
        out["scenario"] = scenario.name;
        out["rule"] = report.choices.begin()->first;
        out["samples"] = opt.samples;
        out["seed"] = opt.seed;
        json freq = json::object();
        for (const auto& [id, n] : counts)
            freq[id] = json{{"count", n},
                            {"frequency", to_string(Rational(n, opt.samples))}};
        out["frequencies"] = std::move(freq);
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "scenario " << scenario.name << ", " << opt.samples << " draws, seed "
                  << opt.seed << "\n";
        for (const auto& [id, n] : counts) {
            const Rational f(n, opt.samples);
            std::cout << "  " << id << ": " << n << " (" << to_decimal(f) << ")\n";
        }
    }
    return kExitOk;
}

int cmd_list(const Options& opt) {
    const auto names = builtin_names();
    if (opt.format == "json") {
        std::cout << json(names).dump(2) << "\n";
    } else {
        for (const auto& name : names) std::cout << name << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"decision kernel for POST-agent trajectory lotteries"};
    app.require_subcommand(1);
    Options opt;

    auto add_scenario_flags = [&](CLI::App* cmd) {
        cmd->add_option("--file", opt.file, "scenario JSON file");
        cmd->add_option("--builtin", opt.builtin_name, "built-in scenario name");
        cmd->add_option("--rules", opt.rules_csv, "comma-separated rules (default: all)");
    };
    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", opt.format, "json|text")
            ->check(CLI::IsMember({"json", "text"}));
    };

    auto* eval = app.add_subcommand("eval", "evaluate a scenario against the choice rules");
    add_scenario_flags(eval);
    add_format(eval);

    auto* verify = app.add_subcommand("verify", "run the condition-check suites");
    add_format(verify);
    verify->add_option("--seed", opt.seed, "rng seed");
    verify->add_option("--trials", opt.trials, "randomized trial count");

    auto* oracle = app.add_subcommand("oracle", "replay a theorem oracle");
    oracle->add_option("name", opt.oracle_name,
                       "appendix1|yardstick|rebalance|independence|neutrality-derivation|money-pump")
        ->required();
    add_format(oracle);
    oracle->add_option("--seed", opt.seed, "rng seed");
    oracle->add_option("--trials", opt.trials, "randomized trial count");
    oracle->add_option("--epsilon", opt.epsilon, "non-arbitrariness epsilon as p/q");
    oracle->add_option("--step", opt.step, "rebalance step as p/q");

    auto* sample = app.add_subcommand("sample", "sample a stochastic maximality choice");
    add_scenario_flags(sample);
    add_format(sample);
    sample->add_option("--samples", opt.samples, "number of draws")->check(CLI::PositiveNumber);
    sample->add_option("--seed", opt.seed, "rng seed");

    auto* list = app.add_subcommand("list", "list built-in scenarios");
    add_format(list);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (eval->parsed()) return cmd_eval(opt);
        if (verify->parsed()) return cmd_verify(opt);
        if (oracle->parsed()) return cmd_oracle(opt);
        if (sample->parsed()) return cmd_sample(opt);
        if (list->parsed()) return cmd_list(opt);
    } catch (const post::Error& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
