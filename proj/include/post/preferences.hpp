#pragma once

#include "post/lottery.hpp"
#include "post/verdict.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace post {

// Base utility over trajectories: the running sum-of-payoffs agent, or
// an explicit table for hand-built structures.
class UtilityModel {
public:
    static UtilityModel sum_of_payoffs();
    static UtilityModel table(std::map<Trajectory, Rational> entries);

    // Throws ModelUndefined when a table lacks the trajectory.
    Rational value(const Trajectory& t) const;
    bool is_table() const { return table_.has_value(); }
    const std::map<Trajectory, Rational>& table_entries() const { return *table_; }

    friend bool operator==(const UtilityModel&, const UtilityModel&) = default;

private:
    std::optional<std::map<Trajectory, Rational>> table_;
};

// POST preference structure: same-length trajectories compare by
// utility, every different-length pair is a preferential gap.
class PostStructure {
public:
    explicit PostStructure(UtilityModel model) : model_(std::move(model)) {}
    const UtilityModel& model() const { return model_; }

    PrefVerdict compare_trajectories(const Trajectory& a, const Trajectory& b) const;

private:
    UtilityModel model_;
};

inline PrefVerdict compare_trajectories(const PostStructure& p, const Trajectory& a,
                                        const Trajectory& b) {
    return p.compare_trajectories(a, b);
}

// Deterministic(X): the agent always picks X. Stochastic(S): the agent
// randomizes over S (|S| >= 2).
struct ChoiceBehavior {
    bool deterministic = false;
    std::vector<std::string> ids;  // sorted; size 1 iff deterministic

    std::string str() const;
    friend bool operator==(const ChoiceBehavior&, const ChoiceBehavior&) = default;
};

// Any pairwise lottery comparator from the rules module.
using LotteryComparator = std::function<RuleVerdict(const Lottery&, const Lottery&)>;

// True iff the evaluator prefers x to base.
bool is_sweetening(const LotteryComparator& evaluator, const Lottery& x, const Lottery& base);

struct IncompletenessWitness {
    std::size_t x, y, y_plus;  // indices into the option vector
};

// Searches a finite option set for a trio X, Y, Y+ with no preference
// between X and either of Y, Y+, yet Y+ preferred to Y. Such trios are
// exactly what makes a preference relation incomplete; a complete
// comparator never yields one.
std::optional<IncompletenessWitness> incompleteness_witness(const LotteryComparator& evaluator,
                                                            const std::vector<Lottery>& options);

}  // namespace post
