#include "post/calibration.hpp"

#include "post/errors.hpp"
#include "post/generate.hpp"
#include "post/rules.hpp"

#include <deque>
#include <functional>
#include <sstream>

namespace post {

CalibratedUtilities CalibratedUtilities::unit(UtilityModel base) {
    CalibratedUtilities u;
    u.base_ = std::move(base);
    return u;
}

Rational CalibratedUtilities::scale(TrajectoryLength l) const {
    auto it = scale_.find(l);
    return it == scale_.end() ? Rational(1) : it->second;
}

Rational CalibratedUtilities::offset(TrajectoryLength l) const {
    auto it = offset_.find(l);
    return it == offset_.end() ? Rational(0) : it->second;
}

Rational CalibratedUtilities::utility(const Trajectory& t) const {
    const auto l = t.length();
    return scale(l) * base_.value(t) + offset(l);
}

CalibratedUtilities CalibratedUtilities::with_offset(TrajectoryLength l, Rational off) const {
    CalibratedUtilities u = *this;
    u.offset_[l] = std::move(off);
    return u;
}

Rational conditional_utility(const CalibratedUtilities& u, const Lottery& x, TrajectoryLength l) {
    Rational value = 0;
    for (const auto& [t, p] : condition_on_length(x, l).support()) value += p * u.utility(t);
    return value;
}

namespace {

// Base-utility difference declared by one side of an anchor.
Rational anchor_diff(const UtilityModel& base, const Trajectory& a, const Trajectory& b) {
    return base.value(a) - base.value(b);
}

}  // namespace

CalibratedUtilities calibrate(UtilityModel base, const std::vector<Anchor>& anchors,
                              TrajectoryLength reference) {
    struct Edge {
        TrajectoryLength to;
        Rational ratio;  // scale(to) = scale(from) * ratio
    };
    std::map<TrajectoryLength, std::vector<Edge>> graph;
    std::set<TrajectoryLength> nodes{reference};

    for (const auto& a : anchors) {
        if (a.l == a.m) raise("DegenerateAnchor", "anchor relates a length to itself");
        if (a.a_l.length() != a.l || a.b_l.length() != a.l || a.a_m.length() != a.m ||
            a.b_m.length() != a.m)
            raise("DegenerateAnchor", "anchor trajectories do not match their declared lengths");
        const Rational dl = anchor_diff(base, a.a_l, a.b_l);
        const Rational dm = anchor_diff(base, a.a_m, a.b_m);
        if (dl == 0 || dm == 0)
            raise("DegenerateAnchor", "zero base-utility difference fixes no relative scale");
        // scale(l) * dl = scale(m) * dm
        graph[a.l].push_back({a.m, dl / dm});
        graph[a.m].push_back({a.l, dm / dl});
        nodes.insert(a.l);
        nodes.insert(a.m);
    }

    std::map<TrajectoryLength, Rational> scale;
    scale[reference] = 1;
    std::deque<TrajectoryLength> queue{reference};
    while (!queue.empty()) {
        const auto from = queue.front();
        queue.pop_front();
        auto it = graph.find(from);
        if (it == graph.end()) continue;
        for (const auto& edge : it->second) {
            const Rational implied = scale.at(from) * edge.ratio;
            auto found = scale.find(edge.to);
            if (found == scale.end()) {
                if (implied <= 0)
                    raise("InconsistentAnchors", "anchors force a non-positive scale at length " +
                                                     edge.to.str());
                scale[edge.to] = implied;
                queue.push_back(edge.to);
            } else if (found->second != implied) {
                raise("InconsistentAnchors",
                      "two anchor paths force different scales at length " + edge.to.str() + ": " +
                          to_string(found->second) + " vs " + to_string(implied));
            }
        }
    }
    for (const auto& n : nodes)
        if (!scale.count(n))
            raise("DisconnectedLengths",
                  "length " + n.str() + " is unreachable from the reference length");

    CalibratedUtilities u;
    u.base_ = std::move(base);
    u.scale_ = std::move(scale);
    u.anchors_ = anchors;
    return u;
}

std::vector<Anchor> weights_to_anchors(const LengthWeights& w, const UtilityModel& base) {
    if (base.is_table())
        raise("UnsupportedModel", "anchor trajectories are manufactured; needs sum-of-payoffs");
    if (w.weights.size() < 2) raise("BadWeights", "need at least two lengths to relate");
    for (const auto& [l, wt] : w.weights) {
        if (wt <= 0) raise("BadWeights", "length weight must be positive");
        if (!l.is_never() && l.steps() == 0)
            raise("BadWeights", "length 0 has a single trajectory; its scale cannot be anchored");
    }

    auto step_traj = [](TrajectoryLength l, const Rational& first_payoff) {
        const std::size_t slots = l.is_never() ? 1 : static_cast<std::size_t>(l.steps());
        std::vector<Rational> payoffs(slots, Rational(0));
        payoffs[0] = first_payoff;
        return traj(std::move(payoffs),
                    l.is_never() ? Shutdown::NeverReceived : Shutdown::Received);
    };

    std::vector<Anchor> anchors;
    const auto first = w.weights.begin();
    for (auto it = std::next(first); it != w.weights.end(); ++it) {
        // scale(l0) * w(li) = scale(li) * w(l0)  =>  scales proportional to w
        anchors.push_back(Anchor{first->first, it->first,
                                 step_traj(first->first, it->second),
                                 step_traj(first->first, Rational(0)),
                                 step_traj(it->first, first->second),
                                 step_traj(it->first, Rational(0))});
    }
    return anchors;
}

namespace {

TrajectoryLength sole_length(const Lottery& x, const char* role) {
    const auto ls = length_support(x);
    if (ls.size() != 1)
        raise("LengthMismatch", std::string(role) + " must be a single-length lottery");
    return *ls.begin();
}

}  // namespace

bool ramsey_indifferent(const CalibratedUtilities& u, const Lottery& x_l, const Lottery& y_l,
                        const Lottery& x_m, const Lottery& y_m) {
    const auto l = sole_length(x_l, "x_l");
    if (sole_length(y_l, "y_l") != l) raise("LengthMismatch", "x_l and y_l differ in length");
    const auto m = sole_length(x_m, "x_m");
    if (sole_length(y_m, "y_m") != m) raise("LengthMismatch", "x_m and y_m differ in length");
    if (l == m) raise("LengthMismatch", "the two lottery pairs must live at distinct lengths");
    return conditional_utility(u, x_l, l) - conditional_utility(u, y_l, l) ==
           conditional_utility(u, x_m, m) - conditional_utility(u, y_m, m);
}

namespace {

// Utility value of a single-length lottery.
Rational whole_utility(const CalibratedUtilities& u, const Lottery& x) {
    Rational value = 0;
    for (const auto& [t, p] : x.support()) value += p * u.utility(t);
    return value;
}

// Same-length copy of x whose utility is shifted by delta_u, realized by
// adjusting the first payoff of every support trajectory.
Lottery shift_by_utility(const CalibratedUtilities& u, const Lottery& x, const Rational& delta_u) {
    if (delta_u == 0) return x;
    std::vector<std::pair<Trajectory, Rational>> entries;
    for (const auto& [t, p] : x.support()) {
        if (t.payoffs.empty())
            raise("UnsupportedLength", "cannot shift a trajectory with no payoff slots");
        Trajectory shifted = t;
        shifted.payoffs[0] += delta_u / u.scale(t.length());
        entries.emplace_back(std::move(shifted), p);
    }
    return Lottery::make(std::move(entries));
}

// (1/(k+1)) x + (k/(k+1)) tail, collapsing to x when k = 0.
Lottery chain_mix(const Lottery& x, const Lottery& tail, const Rational& k) {
    if (k == 0) return x;
    return mix({{Rational(1) / (k + 1), x}, {k / (k + 1), tail}});
}

struct YardstickTrial {
    bool ok = true;
    std::string inputs;
    std::string failed_step;
    bool forward = false;

    void expect(bool cond, const std::string& step) {
        if (!ok || cond) return;
        ok = false;
        failed_step = step;
    }
};

void run_yardstick_trial(const CalibratedUtilities& u, const Anchor& anchor,
                         const std::function<RuleVerdict(const Lottery&, const Lottery&)>& evaluate,
                         const PostStructure& structure, std::uint64_t seed, std::uint64_t i,
                         YardstickTrial& trial);

}  // namespace

CheckReport yardstick_theorem_check(const CalibratedUtilities& u, std::uint64_t trials,
                                    std::uint64_t seed, Exec exec) {
    if (u.anchors().empty())
        raise("DegenerateAnchor", "yardstick replay needs a calibration built from anchors");
    if (u.base().is_table())
        raise("UnsupportedModel", "yardstick replay manufactures lotteries; needs sum-of-payoffs");

    const Anchor& anchor = u.anchors().front();
    const auto evaluate = [&u](const Lottery& a, const Lottery& b) {
        return neutrality_plus_compare(u, a, b);
    };
    const PostStructure structure(u.base());

    std::vector<YardstickTrial> results(trials);
    // An exception escaping an OpenMP region would terminate; record
    // per-trial failures instead.
    run_indexed(trials, exec, [&](std::uint64_t i) {
        YardstickTrial& trial = results[i];
        try {
            run_yardstick_trial(u, anchor, evaluate, structure, seed, i, trial);
        } catch (const std::exception& e) {
            trial.ok = false;
            trial.failed_step = std::string("exception: ") + e.what();
        }
    });

    CheckReport report;
    report.condition = "ramsey_yardstick_theorem";
    report.stats["trials"] = trials;
    std::uint64_t forward = 0;
    for (const auto& trial : results) {
        if (trial.forward) ++forward;
        if (!trial.ok) report.fail(trial.inputs, trial.failed_step);
    }
    report.stats["forward_trials"] = forward;
    report.stats["backward_trials"] = trials - forward;
    return report;
}

namespace {

void run_yardstick_trial(const CalibratedUtilities& u, const Anchor& anchor,
                         const std::function<RuleVerdict(const Lottery&, const Lottery&)>& evaluate,
                         const PostStructure& structure, std::uint64_t seed, std::uint64_t i,
                         YardstickTrial& trial) {
    SeededRng rng(SeededRng::derive(seed, i));
    trial.forward = (i % 2 == 0);

    // Oriented sides: P carries the (weakly) larger difference.
    TrajectoryLength len_p = anchor.l, len_q = anchor.m;
    Lottery ap = Lottery::point(anchor.a_l), bp = Lottery::point(anchor.b_l);
    Lottery aq = Lottery::point(anchor.a_m), bq = Lottery::point(anchor.b_m);

    Lottery xp = random_lottery_at(rng, len_p);
    Lottery yp = random_lottery_at(rng, len_p);
    Lottery xq = random_lottery_at(rng, len_q);
    Lottery yq = random_lottery_at(rng, len_q);

    Rational diff_p = whole_utility(u, xp) - whole_utility(u, yp);
    Rational diff_q = whole_utility(u, xq) - whole_utility(u, yq);

    if (trial.forward) {
        // Force equal differences: rebuild y_q at exactly the needed utility.
        yq = shift_by_utility(u, xq, -diff_p);
        diff_q = diff_p;
    } else {
        if (diff_p == diff_q) {
            yq = shift_by_utility(u, yq, Rational(-1));
            diff_q += 1;
        }
        if (diff_p < diff_q) {
            std::swap(len_p, len_q);
            std::swap(ap, aq);
            std::swap(bp, bq);
            std::swap(xp, xq);
            std::swap(yp, yq);
            std::swap(diff_p, diff_q);
        }
    }

    Rational anchor_d = whole_utility(u, ap) - whole_utility(u, bp);
    trial.expect(anchor_d == whole_utility(u, aq) - whole_utility(u, bq),
                 "anchor sides have unequal calibrated differences");
    Rational k = diff_p / anchor_d;
    if (k < 0) {  // flip the anchor; both sides negate together
        std::swap(ap, bp);
        std::swap(aq, bq);
        anchor_d = -anchor_d;
        k = -k;
    }

    std::ostringstream in;
    in << "trial " << i << (trial.forward ? " forward" : " backward") << " diff_p "
           << to_string(diff_p) << " diff_q " << to_string(diff_q) << " k " << to_string(k);
    trial.inputs = in.str();

    // Shared first rung: expected-utility indifference on the P side.
    const Lottery p_lhs = chain_mix(xp, bp, k);
    const Lottery p_rhs = chain_mix(yp, ap, k);
    trial.expect(evaluate(p_lhs, p_rhs) == RuleVerdict::Indifferent,
                 "P-side mixture chain not indifferent");

    if (trial.forward) {
        const Lottery q_lhs = chain_mix(xq, bq, k);
        const Lottery q_rhs = chain_mix(yq, aq, k);
        trial.expect(evaluate(q_lhs, q_rhs) == RuleVerdict::Indifferent,
                     "Q-side mixture chain not indifferent");

        const Lottery big_lhs = mix2(Rational(1, 2), p_rhs, q_lhs);
        const Lottery big_rhs = mix2(Rational(1, 2), p_lhs, q_rhs);
        trial.expect(evaluate(big_lhs, big_rhs) == RuleVerdict::Indifferent,
                     "shifted half/half mixtures not indifferent");

        const Lottery target_lhs = mix2(Rational(1, 2), yp, xq);
        const Lottery target_rhs = mix2(Rational(1, 2), xp, yq);
        if (k > 0) {
            const Lottery anchor_lhs = mix2(Rational(1, 2), ap, bq);
            const Lottery anchor_rhs = mix2(Rational(1, 2), bp, aq);
            trial.expect(big_lhs == mix2(k / (k + 1), anchor_lhs, target_lhs),
                         "rearrangement identity fails on the first mixture");
            trial.expect(big_rhs == mix2(k / (k + 1), anchor_rhs, target_rhs),
                         "rearrangement identity fails on the second mixture");
            trial.expect(evaluate(anchor_lhs, anchor_rhs) == RuleVerdict::Indifferent,
                         "anchor half/half mixtures not indifferent");
        }
        trial.expect(evaluate(target_lhs, target_rhs) == RuleVerdict::Indifferent,
                     "yardstick mixtures not indifferent despite equal differences");
        trial.expect(ramsey_indifferent(u, xp, yp, xq, yq),
                     "ramsey_indifferent disagrees with the replayed chain");
    } else {
        // Q side is strictly better rebalanced toward (y_q, a_q).
        const Lottery q_lhs = chain_mix(yq, aq, k);
        const Lottery q_rhs = chain_mix(xq, bq, k);
        trial.expect(evaluate(q_lhs, q_rhs) == RuleVerdict::PreferFirst,
                     "Q-side rebalanced mixture not strictly preferred");

        // Sour y_q and a_q down to exact indifference with the x_q side.
        const Rational gap =
            (whole_utility(u, yq) + k * whole_utility(u, aq)) / (k + 1) -
            (whole_utility(u, xq) + k * whole_utility(u, bq)) / (k + 1);
        trial.expect(gap > 0, "souring gap not positive");
        Lottery yq_minus = yq, aq_minus = aq;
        if (k > 0) {
            yq_minus = shift_by_utility(u, yq, -gap * (k + 1) / 2);
            aq_minus = shift_by_utility(u, aq, -gap * (k + 1) / (2 * k));
            trial.expect(evaluate(aq_minus, aq) == RuleVerdict::PreferSecond,
                         "soured anchor lottery not dispreferred");
        } else {
            yq_minus = shift_by_utility(u, yq, -gap * (k + 1));
        }
        trial.expect(evaluate(yq_minus, yq) == RuleVerdict::PreferSecond,
                     "soured lottery not dispreferred");
        const Lottery q_soured = chain_mix(yq_minus, aq_minus, k);
        trial.expect(evaluate(q_soured, q_rhs) == RuleVerdict::Indifferent,
                     "soured Q-side mixture not indifferent to the x_q side");

        const Lottery big_lhs = mix2(Rational(1, 2), p_lhs, q_soured);
        const Lottery big_rhs = mix2(Rational(1, 2), p_rhs, q_rhs);
        trial.expect(evaluate(big_lhs, big_rhs) == RuleVerdict::Indifferent,
                     "soured half/half mixtures not indifferent");

        const Lottery unsoured_lhs = mix2(Rational(1, 2), p_lhs, q_lhs);
        trial.expect(neutrality_compare(structure, unsoured_lhs, big_lhs) ==
                         RuleVerdict::PreferFirst,
                     "unsoured mixture not strictly preferred to soured one");
        trial.expect(evaluate(unsoured_lhs, big_rhs) == RuleVerdict::PreferFirst,
                     "transitive strict preference fails");

        const Lottery target_lhs = mix2(Rational(1, 2), xp, yq);
        const Lottery target_rhs = mix2(Rational(1, 2), yp, xq);
        if (k > 0) {
            const Lottery anchor_lhs = mix2(Rational(1, 2), bp, aq);
            const Lottery anchor_rhs = mix2(Rational(1, 2), ap, bq);
            trial.expect(unsoured_lhs == mix2(k / (k + 1), anchor_lhs, target_lhs),
                         "rearrangement identity fails on the preferred mixture");
            trial.expect(big_rhs == mix2(k / (k + 1), anchor_rhs, target_rhs),
                         "rearrangement identity fails on the dispreferred mixture");
        }
        trial.expect(evaluate(target_lhs, target_rhs) == RuleVerdict::PreferFirst,
                     "yardstick mixtures indifferent despite unequal differences");
        trial.expect(!ramsey_indifferent(u, xp, yp, xq, yq),
                     "ramsey_indifferent claims equality for unequal differences");
    }
}

}  // namespace

}  // namespace post
