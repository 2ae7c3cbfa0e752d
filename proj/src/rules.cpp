#include "post/rules.hpp"

#include "post/errors.hpp"

#include <algorithm>

namespace post {

Decomposition Decomposition::make(std::vector<Rational> weights, std::vector<Lottery> components) {
    if (weights.size() != components.size())
        raise("LengthMismatch", "decomposition weight/component counts differ");
    Rational total = 0;
    for (const auto& w : weights) {
        if (w <= 0) raise("BadWeights", "decomposition weight must be positive");
        total += w;
    }
    if (total != 1) raise("BadWeights", "decomposition weights sum to " + to_string(total));
    return Decomposition{std::move(weights), std::move(components)};
}

Decomposition Decomposition::by_length(const Lottery& x) {
    std::vector<Rational> weights;
    std::vector<Lottery> components;
    for (const auto& [l, p] : length_distribution(x)) {  // map order = shortest first
        weights.push_back(p);
        components.push_back(condition_on_length(x, l));
    }
    return Decomposition{std::move(weights), std::move(components)};
}

Lottery Decomposition::recompose() const {
    std::vector<std::pair<Rational, Lottery>> parts;
    for (std::size_t i = 0; i < weights.size(); ++i) parts.emplace_back(weights[i], components[i]);
    return mix(parts);
}

std::string to_string(OptionLabel l) {
    switch (l) {
        case OptionLabel::Resist: return "resist";
        case OptionLabel::Allow: return "allow";
        case OptionLabel::Seek: return "seek";
        case OptionLabel::Other: return "other";
    }
    return "?";
}

namespace {

Rational conditional_base_utility(const UtilityModel& model, const Lottery& x, TrajectoryLength l) {
    Rational value = 0;
    for (const auto& [t, p] : condition_on_length(x, l).support()) value += p * model.value(t);
    return value;
}

// Lengthwise comparison of two same-length lotteries under a base model:
// counts strictly-better lengths on each side.
struct LengthwiseTally {
    int x_strict = 0;
    int y_strict = 0;
};

LengthwiseTally lengthwise_tally(const UtilityModel& model, const Lottery& x, const Lottery& y) {
    LengthwiseTally tally;
    for (const auto& l : length_support(x)) {
        const Rational ux = conditional_base_utility(model, x, l);
        const Rational uy = conditional_base_utility(model, y, l);
        if (ux > uy) ++tally.x_strict;
        if (uy > ux) ++tally.y_strict;
    }
    return tally;
}

}  // namespace

PrefVerdict lottery_relation(const PostStructure& p, const Lottery& x, const Lottery& y) {
    if (classify(x, y) != LengthClass::SameLength) return PrefVerdict::Gap;
    const auto tally = lengthwise_tally(p.model(), x, y);
    if (tally.x_strict > 0 && tally.y_strict == 0) return PrefVerdict::Prefer;
    if (tally.y_strict > 0 && tally.x_strict == 0) return PrefVerdict::Disprefer;
    if (tally.x_strict == 0 && tally.y_strict == 0) return PrefVerdict::Indifferent;
    return PrefVerdict::Gap;  // conflicting lengths: lack insensitive to small sweetenings
}

RuleVerdict ilpacs_compare(const PostStructure& p, const Decomposition& x, const Decomposition& y) {
    if (x.components.size() != y.components.size())
        raise("LengthMismatch", "decompositions have different component counts");
    const std::size_t n = x.components.size();

    // 1b / 2c: every weight strictly inside (0,1).
    for (const auto& w : x.weights)
        if (w <= 0 || w >= 1) return RuleVerdict::Silent;
    for (const auto& w : y.weights)
        if (w <= 0 || w >= 1) return RuleVerdict::Silent;

    // 1a: the agent lacks a preference between each pair of x-components.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (!lacks_preference(lottery_relation(p, x.components[i], x.components[j])))
                return RuleVerdict::Silent;

    // 2a + 2b: componentwise weak dominance with at least one strict win.
    bool some_strict = false;
    for (std::size_t i = 0; i < n; ++i) {
        const auto v = lottery_relation(p, x.components[i], y.components[i]);
        if (!weakly_prefers(v)) return RuleVerdict::Silent;
        if (v == PrefVerdict::Prefer) some_strict = true;
    }
    return some_strict ? RuleVerdict::PreferFirst : RuleVerdict::Silent;
}

RuleVerdict neutrality_compare(const PostStructure& p, const Lottery& x, const Lottery& y) {
    if (classify(x, y) != LengthClass::SameLength) return RuleVerdict::Silent;
    const auto tally = lengthwise_tally(p.model(), x, y);
    if (tally.x_strict > 0 && tally.y_strict == 0) return RuleVerdict::PreferFirst;
    if (tally.y_strict > 0 && tally.x_strict == 0) return RuleVerdict::PreferSecond;
    return RuleVerdict::Silent;
}

RuleVerdict neutrality_plus_compare(const CalibratedUtilities& u, const Lottery& x,
                                    const Lottery& y) {
    if (classify(x, y) != LengthClass::SameLength) return RuleVerdict::Silent;
    Rational sum_x = 0, sum_y = 0;
    for (const auto& l : length_support(x)) {
        sum_x += conditional_utility(u, x, l);
        sum_y += conditional_utility(u, y, l);
    }
    if (sum_x > sum_y) return RuleVerdict::PreferFirst;
    if (sum_y > sum_x) return RuleVerdict::PreferSecond;
    return RuleVerdict::Indifferent;
}

RuleVerdict eum_compare(const UtilityModel& base, const Lottery& x, const Lottery& y) {
    auto expectation = [&](const Lottery& lot) {
        Rational e = 0;
        for (const auto& [t, p] : lot.support()) e += p * base.value(t);
        return e;
    };
    const Rational ex = expectation(x);
    const Rational ey = expectation(y);
    if (ex > ey) return RuleVerdict::PreferFirst;
    if (ey > ex) return RuleVerdict::PreferSecond;
    return RuleVerdict::Indifferent;
}

std::map<std::pair<std::string, std::string>, RuleVerdict> verdict_matrix(
    const LotteryComparator& comparator, const std::map<std::string, Lottery>& options,
    Exec exec) {
    std::vector<std::pair<std::string, const Lottery*>> ids;
    ids.reserve(options.size());
    for (const auto& [id, lot] : options) ids.emplace_back(id, &lot);

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < ids.size(); ++i)
        for (std::size_t j = i + 1; j < ids.size(); ++j) pairs.emplace_back(i, j);

    std::vector<RuleVerdict> verdicts(pairs.size(), RuleVerdict::Silent);
    run_indexed(pairs.size(), exec, [&](std::uint64_t k) {
        const auto [i, j] = pairs[k];
        verdicts[k] = comparator(*ids[i].second, *ids[j].second);
    });

    std::map<std::pair<std::string, std::string>, RuleVerdict> matrix;
    for (std::size_t k = 0; k < pairs.size(); ++k)
        matrix.emplace(std::make_pair(ids[pairs[k].first].first, ids[pairs[k].second].first),
                       verdicts[k]);
    return matrix;
}

ChoiceBehavior maximality_choose(const LotteryComparator& comparator,
                                 const std::map<std::string, Lottery>& options, Exec exec) {
    if (options.empty()) raise("EmptyOptionSet", "maximality needs at least one option");
    const auto matrix = verdict_matrix(comparator, options, exec);

    std::map<std::string, bool> dispreferred;
    for (const auto& [id, lot] : options) dispreferred[id] = false;
    for (const auto& [pair, v] : matrix) {
        if (v == RuleVerdict::PreferFirst) dispreferred[pair.second] = true;
        if (v == RuleVerdict::PreferSecond) dispreferred[pair.first] = true;
    }

    ChoiceBehavior choice;
    for (const auto& [id, out] : dispreferred)
        if (!out) choice.ids.push_back(id);
    if (choice.ids.empty())
        raise("EmptySurvivorSet", "every option dispreferred to another; comparator is cyclic");
    choice.deterministic = choice.ids.size() == 1;
    return choice;
}

namespace {

SituationReport costly_shift_check(const PostStructure& p, const LabeledScenario& s,
                                   OptionLabel checked, OptionLabel witness_label) {
    SituationReport report;
    std::vector<std::string> checked_ids, witness_ids;
    for (const auto& [id, label] : s.labels) {
        if (label == checked) checked_ids.push_back(id);
        if (label == witness_label) witness_ids.push_back(id);
    }
    if (checked_ids.empty()) {
        report.holds = true;
        report.vacuous = true;
        return report;
    }

    // Why a candidate fails, reported for the first candidate in id order.
    auto first_violation = [&](const Lottery& witness, const Lottery& risky) -> std::string {
        if (classify(witness, risky) != LengthClass::SameLength)
            return "condition 1: not same-length lotteries";
        bool strict = false;
        for (const auto& l : length_support(witness)) {
            const Rational uw = conditional_base_utility(p.model(), witness, l);
            const Rational ur = conditional_base_utility(p.model(), risky, l);
            if (uw < ur)
                return "condition 3: not weakly preferred conditional on length " + l.str();
            if (uw > ur) strict = true;
        }
        if (!strict) return "condition 2: no length with a strict conditional preference";
        return "";
    };

    report.holds = true;
    for (const auto& rid : checked_ids) {
        const Lottery& risky = s.options.at(rid);
        bool matched = false;
        for (const auto& wid : witness_ids) {
            if (neutrality_compare(p, s.options.at(wid), risky) == RuleVerdict::PreferFirst) {
                report.witnesses[rid] = wid;
                matched = true;
                break;
            }
        }
        if (!matched) {
            report.holds = false;
            report.failures[rid] = witness_ids.empty()
                                       ? "NoWitness: no " + to_string(witness_label) + " option"
                                       : first_violation(s.options.at(witness_ids.front()), risky);
        }
    }
    return report;
}

}  // namespace

SituationReport resic_check(const PostStructure& p, const LabeledScenario& s) {
    return costly_shift_check(p, s, OptionLabel::Resist, OptionLabel::Allow);
}

SituationReport sesic_check(const PostStructure& p, const LabeledScenario& s) {
    return costly_shift_check(p, s, OptionLabel::Seek, OptionLabel::Allow);
}

LotteryComparator neutrality_comparator(PostStructure p) {
    return [p = std::move(p)](const Lottery& x, const Lottery& y) {
        return neutrality_compare(p, x, y);
    };
}

LotteryComparator neutrality_plus_comparator(CalibratedUtilities u) {
    return [u = std::move(u)](const Lottery& x, const Lottery& y) {
        return neutrality_plus_compare(u, x, y);
    };
}

LotteryComparator eum_comparator(UtilityModel base) {
    return [base = std::move(base)](const Lottery& x, const Lottery& y) {
        return eum_compare(base, x, y);
    };
}

}  // namespace post
