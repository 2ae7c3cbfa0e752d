#include "post/preferences.hpp"

#include "post/errors.hpp"

#include <sstream>

namespace post {

std::string to_string(PrefVerdict v) {
    switch (v) {
        case PrefVerdict::Prefer: return "prefer";
        case PrefVerdict::Disprefer: return "disprefer";
        case PrefVerdict::Indifferent: return "indifferent";
        case PrefVerdict::Gap: return "gap";
    }
    return "?";
}

std::string to_string(RuleVerdict v) {
    switch (v) {
        case RuleVerdict::PreferFirst: return "prefer_first";
        case RuleVerdict::PreferSecond: return "prefer_second";
        case RuleVerdict::Indifferent: return "indifferent";
        case RuleVerdict::NoPreference: return "no_preference";
        case RuleVerdict::Silent: return "silent";
    }
    return "?";
}

UtilityModel UtilityModel::sum_of_payoffs() { return UtilityModel{}; }

UtilityModel UtilityModel::table(std::map<Trajectory, Rational> entries) {
    UtilityModel m;
    m.table_ = std::move(entries);
    return m;
}

Rational UtilityModel::value(const Trajectory& t) const {
    if (!table_) return t.payoff_sum();
    auto it = table_->find(t);
    if (it == table_->end()) raise("ModelUndefined", "no table utility for trajectory " + t.str());
    return it->second;
}

PrefVerdict PostStructure::compare_trajectories(const Trajectory& a, const Trajectory& b) const {
    if (a.length() != b.length()) return PrefVerdict::Gap;
    const Rational ua = model_.value(a);
    const Rational ub = model_.value(b);
    if (ua > ub) return PrefVerdict::Prefer;
    if (ua < ub) return PrefVerdict::Disprefer;
    return PrefVerdict::Indifferent;
}

std::string ChoiceBehavior::str() const {
    std::ostringstream out;
    out << (deterministic ? "deterministic(" : "stochastic{");
    for (std::size_t i = 0; i < ids.size(); ++i) out << (i ? "," : "") << ids[i];
    out << (deterministic ? ")" : "}");
    return out.str();
}

bool is_sweetening(const LotteryComparator& evaluator, const Lottery& x, const Lottery& base) {
    return evaluator(x, base) == RuleVerdict::PreferFirst;
}

std::optional<IncompletenessWitness> incompleteness_witness(const LotteryComparator& evaluator,
                                                            const std::vector<Lottery>& options) {
    const std::size_t n = options.size();
    auto strict = [&](std::size_t a, std::size_t b) {
        return evaluator(options[a], options[b]) == RuleVerdict::PreferFirst;
    };
    auto no_pref = [&](std::size_t a, std::size_t b) {
        return !is_strict(evaluator(options[a], options[b]));
    };
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            if (y == x) continue;
            for (std::size_t yp = 0; yp < n; ++yp) {
                if (yp == x || yp == y) continue;
                if (strict(yp, y) && no_pref(x, y) && no_pref(x, yp))
                    return IncompletenessWitness{x, y, yp};
            }
        }
    return std::nullopt;
}

}  // namespace post
