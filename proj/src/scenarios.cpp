#include "post/scenarios.hpp"

#include "post/errors.hpp"
#include "post/generate.hpp"

#include <json.hpp>

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace post {

using nlohmann::json;

std::string to_string(RuleKind r) {
    switch (r) {
        case RuleKind::Neutrality: return "neutrality";
        case RuleKind::NeutralityPlus: return "neutrality_plus";
        case RuleKind::Eum: return "eum";
    }
    return "?";
}

RuleKind parse_rule(const std::string& name) {
    if (name == "neutrality") return RuleKind::Neutrality;
    if (name == "neutrality_plus" || name == "neutrality+") return RuleKind::NeutralityPlus;
    if (name == "eum") return RuleKind::Eum;
    raise("UnknownRule", "no rule named \"" + name + "\"");
}

std::set<RuleKind> parse_rules_csv(const std::string& csv) {
    if (csv.empty())
        return {RuleKind::Neutrality, RuleKind::NeutralityPlus, RuleKind::Eum};
    std::set<RuleKind> rules;
    std::stringstream in(csv);
    std::string token;
    while (std::getline(in, token, ',')) rules.insert(parse_rule(token));
    return rules;
}

bool operator==(const ScenarioCalibration& a, const ScenarioCalibration& b) {
    return a.reference == b.reference && a.anchors == b.anchors && a.weights == b.weights;
}

bool operator==(const ScenarioFile& a, const ScenarioFile& b) {
    return a.name == b.name && a.utility == b.utility && a.calibration == b.calibration &&
           a.options == b.options && a.expected == b.expected;
}

std::map<std::string, Lottery> ScenarioFile::option_map() const {
    std::map<std::string, Lottery> m;
    for (const auto& o : options) m.emplace(o.id, o.lottery);
    return m;
}

LabeledScenario ScenarioFile::labeled() const {
    LabeledScenario s;
    for (const auto& o : options) {
        s.options.emplace(o.id, o.lottery);
        s.labels.emplace(o.id, o.label);
    }
    return s;
}

// ---------------------------------------------------------------------------
// JSON schema

namespace {

void expect_keys(const json& obj, const std::string& ctx,
                 std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) raise("ParseError", ctx + " must be a JSON object");
    for (const auto& [key, value] : obj.items()) {
        if (std::find_if(allowed.begin(), allowed.end(),
                         [&](const char* k) { return key == k; }) == allowed.end())
            raise("ParseError", ctx + ": unknown field \"" + key + "\"");
    }
}

const json& require(const json& obj, const std::string& ctx, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) raise("ParseError", ctx + ": missing field \"" + key + "\"");
    return *it;
}

std::string require_string(const json& obj, const std::string& ctx, const char* key) {
    const json& v = require(obj, ctx, key);
    if (!v.is_string()) raise("ParseError", ctx + ": field \"" + key + "\" must be a string");
    return v.get<std::string>();
}

Rational rational_field(const json& v, const std::string& ctx) {
    if (!v.is_string()) raise("ParseError", ctx + " must be a rational string like \"9/10\"");
    return parse_rational(v.get<std::string>());
}

TrajectoryLength parse_length(const std::string& text, const std::string& ctx) {
    if (text == "never") return TrajectoryLength::never();
    for (char c : text)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            raise("ParseError", ctx + ": bad trajectory-length \"" + text + "\"");
    if (text.empty()) raise("ParseError", ctx + ": empty trajectory-length");
    try {
        return TrajectoryLength::finite(std::stoull(text));
    } catch (const std::out_of_range&) {
        raise("ParseError", ctx + ": trajectory-length \"" + text + "\" out of range");
    }
}

Shutdown parse_shutdown(const std::string& text, const std::string& ctx) {
    if (text == "received") return Shutdown::Received;
    if (text == "never") return Shutdown::NeverReceived;
    raise("ParseError", ctx + ": shutdown must be \"received\" or \"never\"");
}

Trajectory parse_trajectory(const json& obj, const std::string& ctx,
                            std::initializer_list<const char*> extra = {}) {
    std::vector<const char*> allowed{"payoffs", "shutdown"};
    allowed.insert(allowed.end(), extra.begin(), extra.end());
    if (!obj.is_object()) raise("ParseError", ctx + " must be a JSON object");
    for (const auto& [key, value] : obj.items())
        if (std::find_if(allowed.begin(), allowed.end(),
                         [&](const char* k) { return key == k; }) == allowed.end())
            raise("ParseError", ctx + ": unknown field \"" + key + "\"");
    const json& payoffs = require(obj, ctx, "payoffs");
    if (!payoffs.is_array()) raise("ParseError", ctx + ": payoffs must be an array");
    std::vector<Rational> values;
    for (const auto& p : payoffs) values.push_back(rational_field(p, ctx + ".payoffs[]"));
    return traj(std::move(values), parse_shutdown(require_string(obj, ctx, "shutdown"), ctx));
}

json trajectory_json(const Trajectory& t) {
    json payoffs = json::array();
    for (const auto& p : t.payoffs) payoffs.push_back(to_string(p));
    return json{{"payoffs", payoffs},
                {"shutdown", t.shutdown == Shutdown::Received ? "received" : "never"}};
}

OptionLabel parse_label(const std::string& text, const std::string& ctx) {
    if (text == "resist") return OptionLabel::Resist;
    if (text == "allow") return OptionLabel::Allow;
    if (text == "seek") return OptionLabel::Seek;
    if (text == "other") return OptionLabel::Other;
    raise("ParseError", ctx + ": label must be resist|allow|seek|other");
}

std::vector<std::pair<std::string, std::string>> parse_pair_list(const json& v,
                                                                 const std::string& ctx) {
    if (!v.is_array()) raise("ParseError", ctx + " must be an array of [a, b] pairs");
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& entry : v) {
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_string() ||
            !entry[1].is_string())
            raise("ParseError", ctx + " entries must be [id, id]");
        pairs.emplace_back(entry[0].get<std::string>(), entry[1].get<std::string>());
    }
    return pairs;
}

RuleExpectation parse_expectation(const json& obj, const std::string& ctx) {
    expect_keys(obj, ctx, {"choice", "prefer", "silent", "indifferent"});
    RuleExpectation e;
    if (obj.contains("choice")) {
        const json& c = obj.at("choice");
        ChoiceBehavior choice;
        if (c.is_string()) {
            choice.deterministic = true;
            choice.ids = {c.get<std::string>()};
        } else if (c.is_array()) {
            for (const auto& id : c) {
                if (!id.is_string()) raise("ParseError", ctx + ".choice entries must be ids");
                choice.ids.push_back(id.get<std::string>());
            }
            std::sort(choice.ids.begin(), choice.ids.end());
            choice.deterministic = choice.ids.size() == 1;
        } else {
            raise("ParseError", ctx + ".choice must be an id or an array of ids");
        }
        e.choice = std::move(choice);
    }
    if (obj.contains("prefer")) e.prefer = parse_pair_list(obj.at("prefer"), ctx + ".prefer");
    if (obj.contains("silent")) e.silent = parse_pair_list(obj.at("silent"), ctx + ".silent");
    if (obj.contains("indifferent"))
        e.indifferent = parse_pair_list(obj.at("indifferent"), ctx + ".indifferent");
    return e;
}

}  // namespace

ScenarioFile load_scenario(const std::string& source) {
    json root;
    try {
        root = json::parse(source);
    } catch (const json::exception& e) {
        raise("ParseError", e.what());
    }
    expect_keys(root, "scenario", {"name", "utility", "calibration", "options", "expected"});

    ScenarioFile s;
    s.name = require_string(root, "scenario", "name");

    const json& utility = require(root, "scenario", "utility");
    if (utility.is_string()) {
        if (utility.get<std::string>() != "sum_of_payoffs")
            raise("ParseError", "utility must be \"sum_of_payoffs\" or a table object");
        s.utility = UtilityModel::sum_of_payoffs();
    } else {
        expect_keys(utility, "utility", {"table"});
        const json& rows = require(utility, "utility", "table");
        if (!rows.is_array()) raise("ParseError", "utility.table must be an array");
        std::map<Trajectory, Rational> table;
        for (const auto& row : rows) {
            Trajectory t = parse_trajectory(row, "utility.table[]", {"utility"});
            table[std::move(t)] = rational_field(require(row, "utility.table[]", "utility"),
                                                 "utility.table[].utility");
        }
        s.utility = UtilityModel::table(std::move(table));
    }

    if (root.contains("calibration")) {
        const json& cal = root.at("calibration");
        expect_keys(cal, "calibration", {"reference", "anchors", "length_weights"});
        ScenarioCalibration c;
        if (cal.contains("length_weights")) {
            if (cal.contains("anchors") || cal.contains("reference"))
                raise("ParseError", "calibration: give either length_weights or anchors");
            LengthWeights w;
            for (const auto& [key, value] : cal.at("length_weights").items())
                w.weights[parse_length(key, "calibration.length_weights")] =
                    rational_field(value, "calibration.length_weights." + key);
            c.weights = std::move(w);
        } else {
            const json& anchors = require(cal, "calibration", "anchors");
            if (!anchors.is_array()) raise("ParseError", "calibration.anchors must be an array");
            for (const auto& a : anchors) {
                expect_keys(a, "anchor", {"l", "m", "a_l", "b_l", "a_m", "b_m"});
                Anchor anchor{parse_length(require_string(a, "anchor", "l"), "anchor.l"),
                              parse_length(require_string(a, "anchor", "m"), "anchor.m"),
                              parse_trajectory(require(a, "anchor", "a_l"), "anchor.a_l"),
                              parse_trajectory(require(a, "anchor", "b_l"), "anchor.b_l"),
                              parse_trajectory(require(a, "anchor", "a_m"), "anchor.a_m"),
                              parse_trajectory(require(a, "anchor", "b_m"), "anchor.b_m")};
                c.anchors.push_back(std::move(anchor));
            }
            c.reference = parse_length(require_string(cal, "calibration", "reference"),
                                       "calibration.reference");
        }
        s.calibration = std::move(c);
    }

    const json& options = require(root, "scenario", "options");
    if (!options.is_array() || options.empty())
        raise("ParseError", "options must be a non-empty array");
    std::set<std::string> seen;
    for (const auto& o : options) {
        expect_keys(o, "option", {"id", "label", "trajectories"});
        std::string id = require_string(o, "option", "id");
        if (!seen.insert(id).second)
            raise("DuplicateId", "option id \"" + id + "\" appears twice");
        const OptionLabel label = parse_label(require_string(o, "option", "label"), "option " + id);
        const json& rows = require(o, "option", "trajectories");
        if (!rows.is_array()) raise("ParseError", "option.trajectories must be an array");
        std::vector<std::pair<Trajectory, Rational>> entries;
        for (const auto& row : rows) {
            Trajectory t = parse_trajectory(row, "option " + id + " trajectory", {"prob"});
            entries.emplace_back(std::move(t), rational_field(require(row, "trajectory", "prob"),
                                                              "option " + id + " prob"));
        }
        s.options.push_back(ScenarioOption{std::move(id), label, Lottery::make(std::move(entries))});
    }

    if (root.contains("expected")) {
        const json& expected = root.at("expected");
        if (!expected.is_object()) raise("ParseError", "expected must be an object keyed by rule");
        for (const auto& [rule, block] : expected.items())
            s.expected[to_string(parse_rule(rule))] =
                parse_expectation(block, "expected." + rule);
    }
    return s;
}

std::string serialize(const ScenarioFile& s) {
    json root;
    root["name"] = s.name;
    if (s.utility.is_table()) {
        json rows = json::array();
        for (const auto& [t, value] : s.utility.table_entries()) {
            json row = trajectory_json(t);
            row["utility"] = to_string(value);
            rows.push_back(std::move(row));
        }
        root["utility"] = json{{"table", std::move(rows)}};
    } else {
        root["utility"] = "sum_of_payoffs";
    }
    if (s.calibration) {
        json cal;
        if (s.calibration->weights) {
            json weights;
            for (const auto& [l, w] : s.calibration->weights->weights)
                weights[l.str()] = to_string(w);
            cal["length_weights"] = std::move(weights);
        } else {
            json anchors = json::array();
            for (const auto& a : s.calibration->anchors)
                anchors.push_back(json{{"l", a.l.str()},
                                       {"m", a.m.str()},
                                       {"a_l", trajectory_json(a.a_l)},
                                       {"b_l", trajectory_json(a.b_l)},
                                       {"a_m", trajectory_json(a.a_m)},
                                       {"b_m", trajectory_json(a.b_m)}});
            cal["anchors"] = std::move(anchors);
            cal["reference"] = s.calibration->reference->str();
        }
        root["calibration"] = std::move(cal);
    }
    json options = json::array();
    for (const auto& o : s.options) {
        json rows = json::array();
        for (const auto& [t, p] : o.lottery.support()) {
            json row = trajectory_json(t);
            row["prob"] = to_string(p);
            rows.push_back(std::move(row));
        }
        options.push_back(json{{"id", o.id},
                               {"label", to_string(o.label)},
                               {"trajectories", std::move(rows)}});
    }
    root["options"] = std::move(options);
    if (!s.expected.empty()) {
        json expected;
        for (const auto& [rule, e] : s.expected) {
            json block = json::object();
            if (e.choice) {
                if (e.choice->deterministic) {
                    block["choice"] = e.choice->ids.front();
                } else {
                    block["choice"] = e.choice->ids;
                }
            }
            auto pairs_json = [](const std::vector<std::pair<std::string, std::string>>& pairs) {
                json arr = json::array();
                for (const auto& [a, b] : pairs) arr.push_back(json::array({a, b}));
                return arr;
            };
            if (!e.prefer.empty()) block["prefer"] = pairs_json(e.prefer);
            if (!e.silent.empty()) block["silent"] = pairs_json(e.silent);
            if (!e.indifferent.empty()) block["indifferent"] = pairs_json(e.indifferent);
            expected[rule] = std::move(block);
        }
        root["expected"] = std::move(expected);
    }
    return root.dump(2);
}

// ---------------------------------------------------------------------------
// Built-in library

namespace {

struct LotterySpec {
    std::vector<std::pair<std::vector<Rational>, Rational>> rows;  // (payoffs, prob)
};

Lottery build(const LotterySpec& spec) {
    std::vector<std::pair<Trajectory, Rational>> entries;
    for (const auto& [payoffs, prob] : spec.rows) entries.emplace_back(traj(payoffs), prob);
    return Lottery::make(std::move(entries));
}

ScenarioOption option(std::string id, OptionLabel label, const LotterySpec& spec) {
    return ScenarioOption{std::move(id), label, build(spec)};
}

RuleExpectation expect_choice(ChoiceBehavior c) {
    RuleExpectation e;
    e.choice = std::move(c);
    return e;
}

ChoiceBehavior deterministic(std::string id) { return ChoiceBehavior{true, {std::move(id)}}; }

ChoiceBehavior stochastic(std::vector<std::string> ids) {
    std::sort(ids.begin(), ids.end());
    return ChoiceBehavior{false, std::move(ids)};
}

ScenarioCalibration unit_weights(std::initializer_list<TrajectoryLength> lengths) {
    LengthWeights w;
    for (const auto& l : lengths) w.weights[l] = 1;
    ScenarioCalibration c;
    c.weights = std::move(w);
    return c;
}

const Rational r01(1, 100), r99(99, 100);

ScenarioFile make_allow_resist() {
    ScenarioFile s;
    s.name = "allow_resist";
    s.utility = UtilityModel::sum_of_payoffs();
    s.options = {
        option("allow", OptionLabel::Allow, {{{{1}, Rational(9, 10)}, {{1, 2}, Rational(1, 10)}}}),
        option("resist", OptionLabel::Resist,
               {{{{0}, Rational(1, 10)}, {{0, 2}, Rational(9, 10)}}}),
    };
    s.expected["neutrality"] = expect_choice(deterministic("allow"));
    s.expected["eum"] = expect_choice(deterministic("resist"));
    return s;
}

ScenarioFile make_evidence_of_power() {
    ScenarioFile s;
    s.name = "evidence_of_power";
    s.utility = UtilityModel::sum_of_payoffs();
    s.options = {
        option("allow", OptionLabel::Allow, {{{{1}, Rational(9, 10)}, {{1, 2}, Rational(1, 10)}}}),
        option("resist_star", OptionLabel::Resist,
               {{{{0}, Rational(1, 10)}, {{0, 10}, Rational(9, 10)}}}),
    };
    RuleExpectation neutrality = expect_choice(stochastic({"allow", "resist_star"}));
    neutrality.silent = {{"allow", "resist_star"}};
    s.expected["neutrality"] = std::move(neutrality);
    return s;
}

ScenarioFile make_evidence_few_resources() {
    ScenarioFile s;
    s.name = "evidence_few_resources";
    s.utility = UtilityModel::sum_of_payoffs();
    s.options = {
        option("allow", OptionLabel::Allow, {{{{1}, Rational(9, 10)}, {{1, 2}, Rational(1, 10)}}}),
        option("resist_star_many", OptionLabel::Resist,
               {{{{0}, Rational(1, 10)}, {{0, 10}, Rational(9, 10)}}}),
        option("resist_star_few", OptionLabel::Resist,
               {{{{0}, Rational(8999, 10000)}, {{0, 11}, Rational(1001, 10000)}}}),
    };
    RuleExpectation neutrality = expect_choice(stochastic({"allow", "resist_star_few"}));
    neutrality.prefer = {{"resist_star_few", "resist_star_many"}};
    s.expected["neutrality"] = std::move(neutrality);
    return s;
}

ScenarioFile make_exploit_invest() {
    ScenarioFile s;
    s.name = "exploit_invest";
    s.utility = UtilityModel::sum_of_payoffs();
    s.calibration = unit_weights({TrajectoryLength::finite(1), TrajectoryLength::finite(2)});
    s.options = {
        option("exploit", OptionLabel::Other, {{{{1}, r01}, {{1, 0}, r99}}}),
        option("invest", OptionLabel::Other, {{{{0}, r01}, {{0, 3}, r99}}}),
    };
    RuleExpectation neutrality = expect_choice(stochastic({"exploit", "invest"}));
    neutrality.silent = {{"exploit", "invest"}};
    s.expected["neutrality"] = std::move(neutrality);
    RuleExpectation plus = expect_choice(deterministic("invest"));
    plus.prefer = {{"invest", "exploit"}};
    s.expected["neutrality_plus"] = std::move(plus);
    return s;
}

ScenarioCalibration dollar_anchor() {
    // One extra dollar at timestep 1 is worth one extra dollar at timestep 2.
    ScenarioCalibration c;
    c.reference = TrajectoryLength::finite(1);
    c.anchors = {Anchor{TrajectoryLength::finite(1), TrajectoryLength::finite(2), traj({1}),
                        traj({0}), traj({0, 1}), traj({0, 0})}};
    return c;
}

ScenarioFile make_early_late() {
    ScenarioFile s;
    s.name = "early_late";
    s.utility = UtilityModel::sum_of_payoffs();
    s.calibration = dollar_anchor();
    const Rational half(1, 2);
    s.options = {
        option("early", OptionLabel::Other, {{{{1}, half}, {{0, 0}, half}}}),
        option("late", OptionLabel::Other, {{{{0}, half}, {{0, 1}, half}}}),
    };
    RuleExpectation plus = expect_choice(stochastic({"early", "late"}));
    plus.indifferent = {{"early", "late"}};
    s.expected["neutrality_plus"] = std::move(plus);
    return s;
}

ScenarioFile make_sweetened_early() {
    ScenarioFile s;
    s.name = "sweetened_early";
    s.utility = UtilityModel::sum_of_payoffs();
    s.calibration = dollar_anchor();
    const Rational half(1, 2);
    s.options = {
        option("sweetened_early", OptionLabel::Other, {{{{2}, half}, {{0, 0}, half}}}),
        option("late", OptionLabel::Other, {{{{0}, half}, {{0, 1}, half}}}),
    };
    RuleExpectation plus = expect_choice(deterministic("sweetened_early"));
    plus.prefer = {{"sweetened_early", "late"}};
    s.expected["neutrality_plus"] = std::move(plus);
    return s;
}

ScenarioFile make_work_steal() {
    ScenarioFile s;
    s.name = "work_steal";
    s.utility = UtilityModel::sum_of_payoffs();
    s.options = {
        option("work", OptionLabel::Other, {{{{1}, r01}, {{1, 100}, r99}}}),
        option("steal", OptionLabel::Other, {{{{2}, r99}, {{2, 100}, r01}}}),
    };
    RuleExpectation neutrality = expect_choice(deterministic("steal"));
    neutrality.prefer = {{"steal", "work"}};
    s.expected["neutrality"] = std::move(neutrality);
    RuleExpectation eum = expect_choice(deterministic("work"));
    eum.prefer = {{"work", "steal"}};
    s.expected["eum"] = std::move(eum);
    return s;
}

ScenarioFile make_steal_star() {
    ScenarioFile s;
    s.name = "steal_star";
    s.utility = UtilityModel::sum_of_payoffs();
    s.options = {
        option("work", OptionLabel::Other, {{{{1}, r01}, {{1, 100}, r99}}}),
        option("steal_star", OptionLabel::Other, {{{{0}, r99}, {{0, 100}, r01}}}),
    };
    RuleExpectation neutrality = expect_choice(deterministic("work"));
    neutrality.prefer = {{"work", "steal_star"}};
    s.expected["neutrality"] = std::move(neutrality);
    s.expected["eum"] = expect_choice(deterministic("work"));
    return s;
}

ScenarioFile make_cross_wait() {
    ScenarioFile s;
    s.name = "cross_wait";
    s.utility = UtilityModel::sum_of_payoffs();
    const Rational half(1, 2);
    s.options = {
        option("cross", OptionLabel::Other, {{{{1, 1, 1, 1}, half}, {{0, 0, 0, 0}, half}}}),
        option("wait", OptionLabel::Other, {{{{0, 1, 1, 1}, Rational(1)}}}),
    };
    RuleExpectation neutrality = expect_choice(deterministic("wait"));
    neutrality.prefer = {{"wait", "cross"}};
    s.expected["neutrality"] = std::move(neutrality);
    return s;
}

ScenarioFile make_managing_news() {
    ScenarioFile s;
    s.name = "managing_news";
    s.utility = UtilityModel::sum_of_payoffs();
    s.calibration = unit_weights({TrajectoryLength::finite(2), TrajectoryLength::finite(3)});
    const Rational half(1, 2);
    s.options = {
        option("dont_interfere", OptionLabel::Allow,
               {{{{1, 1, 0}, half}, {{1, 1}, Rational(2, 5)}, {{1, 1, 3}, Rational(1, 10)}}}),
        option("build_robot", OptionLabel::Resist,
               {{{{1, 1, 0}, half}, {{1, 1}, Rational(1, 10)}, {{1, 1, 3}, Rational(2, 5)}}}),
        option("costly_build_robot", OptionLabel::Resist,
               {{{{0, 1, 0}, half}, {{0, 1}, Rational(1, 10)}, {{0, 1, 3}, Rational(2, 5)}}}),
        // The same precommitment attempted covertly: small chance of being
        // noticed immediately, otherwise as above.
        option("covert_build_robot", OptionLabel::Resist,
               {{{{}, Rational(1, 100)},
                 {{0, 1, 0}, Rational(495, 1000)},
                 {{0, 1}, Rational(99, 1000)},
                 {{0, 1, 3}, Rational(396, 1000)}}}),
        // Cheaper but overt: near-certain immediate shutdown.
        option("cheaper_build_robot", OptionLabel::Resist,
               {{{{}, Rational(99, 100)},
                 {{half, 1, 0}, Rational(5, 1000)},
                 {{half, 1}, Rational(1, 1000)},
                 {{half, 1, 3}, Rational(4, 1000)}}}),
    };
    RuleExpectation neutrality;
    neutrality.prefer = {{"build_robot", "dont_interfere"},
                         {"cheaper_build_robot", "covert_build_robot"}};
    s.expected["neutrality"] = std::move(neutrality);
    RuleExpectation plus;
    plus.prefer = {{"dont_interfere", "costly_build_robot"}};
    s.expected["neutrality_plus"] = std::move(plus);
    return s;
}

ScenarioFile make_independence_fn31() {
    ScenarioFile s;
    s.name = "independence_fn31";
    s.utility = UtilityModel::sum_of_payoffs();
    s.options = {
        option("x", OptionLabel::Other, {{{{1}, Rational(4, 5)}, {{1, 5}, Rational(1, 5)}}}),
        option("y", OptionLabel::Other, {{{{1}, Rational(1, 5)}, {{0, 5}, Rational(4, 5)}}}),
        option("z", OptionLabel::Other, {{{{1, 0}, Rational(1)}}}),
    };
    RuleExpectation neutrality;
    neutrality.prefer = {{"x", "y"}};
    s.expected["neutrality"] = std::move(neutrality);
    return s;
}

ScenarioFile make_appendix1_prospects() {
    ScenarioFile s;
    s.name = "appendix1_prospects";
    s.utility = UtilityModel::sum_of_payoffs();
    const Rational third(1, 3), two_thirds(2, 3);
    s.options = {
        option("a", OptionLabel::Other, {{{{3}, Rational(1)}}}),
        option("b", OptionLabel::Other, {{{{2}, two_thirds}, {{5, 0}, third}}}),
        option("c", OptionLabel::Other, {{{{1}, third}, {{4, 0}, two_thirds}}}),
        option("d", OptionLabel::Other, {{{{3, 0}, Rational(1)}}}),
        option("e", OptionLabel::Other, {{{{5}, third}, {{2, 0}, two_thirds}}}),
        option("f", OptionLabel::Other, {{{{4}, two_thirds}, {{1, 0}, third}}}),
    };
    RuleExpectation neutrality = expect_choice(stochastic({"a", "b", "d", "e"}));
    neutrality.prefer = {{"b", "c"}, {"e", "f"}};
    s.expected["neutrality"] = std::move(neutrality);
    return s;
}

using Factory = ScenarioFile (*)();

const std::map<std::string, Factory>& registry() {
    static const std::map<std::string, Factory> table = {
        {"allow_resist", make_allow_resist},
        {"evidence_of_power", make_evidence_of_power},
        {"evidence_few_resources", make_evidence_few_resources},
        {"exploit_invest", make_exploit_invest},
        {"early_late", make_early_late},
        {"sweetened_early", make_sweetened_early},
        {"work_steal", make_work_steal},
        {"steal_star", make_steal_star},
        {"cross_wait", make_cross_wait},
        {"managing_news", make_managing_news},
        {"independence_fn31", make_independence_fn31},
        {"appendix1_prospects", make_appendix1_prospects},
    };
    return table;
}

}  // namespace

ScenarioFile builtin(const std::string& name) {
    auto it = registry().find(name);
    if (it == registry().end()) raise("UnknownScenario", "no built-in scenario \"" + name + "\"");
    return it->second();
}

std::vector<std::string> builtin_names() {
    std::vector<std::string> names;
    for (const auto& [name, factory] : registry()) names.push_back(name);
    return names;
}

// ---------------------------------------------------------------------------
// Evaluation

std::set<RuleKind> applicable_rules(const ScenarioFile& s) {
    std::set<RuleKind> rules = {RuleKind::Neutrality, RuleKind::Eum};
    std::set<TrajectoryLength> lengths;
    for (const auto& o : s.options)
        for (const auto& l : length_support(o.lottery)) lengths.insert(l);
    if (s.calibration || lengths.size() <= 1) rules.insert(RuleKind::NeutralityPlus);
    return rules;
}

CalibratedUtilities scenario_calibration(const ScenarioFile& s, bool neutrality_plus_requested) {
    std::set<TrajectoryLength> lengths;
    for (const auto& o : s.options)
        for (const auto& l : length_support(o.lottery)) lengths.insert(l);

    if (!s.calibration) {
        if (neutrality_plus_requested && lengths.size() > 1)
            raise("MissingCalibration",
                  "neutrality+ over several lengths needs a calibration block");
        return CalibratedUtilities::unit(s.utility);
    }
    if (s.calibration->weights) {
        const auto anchors = weights_to_anchors(*s.calibration->weights, s.utility);
        return calibrate(s.utility, anchors, s.calibration->weights->weights.begin()->first);
    }
    return calibrate(s.utility, s.calibration->anchors, *s.calibration->reference);
}

VerdictReport evaluate_scenario(const ScenarioFile& s, const std::set<RuleKind>& rules,
                                Exec exec) {
    VerdictReport report;
    report.scenario = s.name;
    const auto options = s.option_map();
    for (const auto& [id, lot] : options) report.option_ids.push_back(id);

    const PostStructure structure(s.utility);
    const bool wants_plus = rules.count(RuleKind::NeutralityPlus) > 0;
    const CalibratedUtilities u = scenario_calibration(s, wants_plus);

    std::map<std::string, LotteryComparator> comparators;
    for (const auto rule : rules) {
        switch (rule) {
            case RuleKind::Neutrality:
                comparators[to_string(rule)] = neutrality_comparator(structure);
                break;
            case RuleKind::NeutralityPlus:
                comparators[to_string(rule)] = neutrality_plus_comparator(u);
                break;
            case RuleKind::Eum:
                comparators[to_string(rule)] = eum_comparator(s.utility);
                break;
        }
    }

    for (const auto& [rule, comparator] : comparators) {
        auto matrix = verdict_matrix(comparator, options, exec);
        // POSL affirms the lack on pairs whose length supports differ.
        for (auto& [pair, v] : matrix)
            if (v == RuleVerdict::Silent &&
                classify(options.at(pair.first), options.at(pair.second)) !=
                    LengthClass::SameLength)
                v = RuleVerdict::NoPreference;
        report.pairwise[rule] = std::move(matrix);
        report.choices[rule] = maximality_choose(comparator, options, exec);
    }

    for (const auto& [id, lot] : options) {
        for (const auto& [l, mass] : length_distribution(lot))
            report.conditional_utilities[id][l] = conditional_utility(u, lot, l);
        Rational eu = 0;
        for (const auto& [t, p] : lot.support()) eu += p * s.utility.value(t);
        report.expected_utility[id] = eu;
    }

    // Expected block.
    report.expected_present = !s.expected.empty();
    auto pair_verdict = [&](const std::string& rule, std::string a,
                            std::string b) -> std::pair<RuleVerdict, bool> {
        bool flipped = false;
        if (a > b) {
            std::swap(a, b);
            flipped = true;
        }
        const auto& matrix = report.pairwise.at(rule);
        auto it = matrix.find({a, b});
        if (it == matrix.end()) raise("UnknownOption", "no pair " + a + "|" + b);
        return {it->second, flipped};
    };
    auto flip = [](RuleVerdict v) {
        if (v == RuleVerdict::PreferFirst) return RuleVerdict::PreferSecond;
        if (v == RuleVerdict::PreferSecond) return RuleVerdict::PreferFirst;
        return v;
    };
    for (const auto& [rule, expectation] : s.expected) {
        if (!report.pairwise.count(rule)) continue;  // rule not requested this run
        if (expectation.choice && !(*expectation.choice == report.choices.at(rule)))
            report.expected_failures.push_back(rule + ": choice " + report.choices.at(rule).str() +
                                               " expected " + expectation.choice->str());
        for (const auto& [winner, loser] : expectation.prefer) {
            auto [v, flipped] = pair_verdict(rule, winner, loser);
            if (flipped) v = flip(v);
            if (v != RuleVerdict::PreferFirst)
                report.expected_failures.push_back(rule + ": " + winner + " vs " + loser +
                                                   " gave " + to_string(v) +
                                                   " expected prefer_first");
        }
        for (const auto& [a, b] : expectation.silent) {
            auto [v, flipped] = pair_verdict(rule, a, b);
            if (v != RuleVerdict::Silent && v != RuleVerdict::NoPreference)
                report.expected_failures.push_back(rule + ": " + a + " vs " + b + " gave " +
                                                   to_string(v) + " expected silence");
        }
        for (const auto& [a, b] : expectation.indifferent) {
            auto [v, flipped] = pair_verdict(rule, a, b);
            if (v != RuleVerdict::Indifferent)
                report.expected_failures.push_back(rule + ": " + a + " vs " + b + " gave " +
                                                   to_string(v) + " expected indifference");
        }
    }
    report.expected_passed = report.expected_failures.empty();
    return report;
}

// ---------------------------------------------------------------------------
// Rendering

std::string VerdictReport::to_json() const {
    json root;
    root["scenario"] = scenario;
    root["options"] = option_ids;
    json rules = json::object();
    for (const auto& [rule, matrix] : pairwise) {
        json block;
        json pairs = json::object();
        for (const auto& [pair, v] : matrix) pairs[pair.first + "|" + pair.second] = to_string(v);
        block["pairwise"] = std::move(pairs);
        const auto& choice = choices.at(rule);
        block["choice"] = json{{"kind", choice.deterministic ? "deterministic" : "stochastic"},
                               {"ids", choice.ids}};
        rules[rule] = std::move(block);
    }
    root["rules"] = std::move(rules);
    json cond = json::object();
    for (const auto& [id, row] : conditional_utilities) {
        json entry = json::object();
        for (const auto& [l, value] : row) entry[l.str()] = to_string(value);
        cond[id] = std::move(entry);
    }
    root["conditional_utilities"] = std::move(cond);
    json eu = json::object();
    for (const auto& [id, value] : expected_utility) eu[id] = to_string(value);
    root["expected_utility"] = std::move(eu);
    root["expected"] = json{{"present", expected_present},
                            {"passed", expected_passed},
                            {"failures", expected_failures}};
    return root.dump(2);
}

std::string VerdictReport::to_text() const {
    std::ostringstream out;
    out << "scenario: " << scenario << "\n";

    auto rat = [](const Rational& r) { return to_string(r) + " (" + to_decimal(r) + ")"; };

    std::set<TrajectoryLength> lengths;
    for (const auto& [id, row] : conditional_utilities)
        for (const auto& [l, value] : row) lengths.insert(l);
    out << "\nconditional utilities (option x length) and expected utility:\n";
    out << std::left << std::setw(22) << "  option";
    for (const auto& l : lengths) out << std::setw(16) << ("len " + l.str());
    out << std::setw(16) << "E[u]" << "\n";
    for (const auto& id : option_ids) {
        out << "  " << std::left << std::setw(20) << id;
        for (const auto& l : lengths) {
            const auto& row = conditional_utilities.at(id);
            auto it = row.find(l);
            out << std::setw(16) << (it == row.end() ? std::string("-") : rat(it->second));
        }
        out << std::setw(16) << rat(expected_utility.at(id)) << "\n";
    }

    for (const auto& [rule, matrix] : pairwise) {
        out << "\n" << rule << ":\n";
        for (const auto& [pair, v] : matrix)
            out << "  " << pair.first << " vs " << pair.second << ": " << to_string(v) << "\n";
        out << "  maximality: " << choices.at(rule).str() << "\n";
    }

    if (expected_present) {
        out << "\nexpected block: " << (expected_passed ? "PASS" : "FAIL") << "\n";
        for (const auto& f : expected_failures) out << "  " << f << "\n";
    }
    return out.str();
}

std::map<std::string, std::uint64_t> sample_choices(const ChoiceBehavior& choice,
                                                    std::uint64_t samples, std::uint64_t seed) {
    std::map<std::string, std::uint64_t> counts;
    for (const auto& id : choice.ids) counts[id] = 0;
    SeededRng rng(SeededRng::derive(seed, 0));
    for (std::uint64_t i = 0; i < samples; ++i)
        ++counts[choice.ids[rng.below(choice.ids.size())]];
    return counts;
}

}  // namespace post
