#include "post/verifiers.hpp"

#include "post/errors.hpp"
#include "post/generate.hpp"

#include <algorithm>
#include <sstream>

namespace post {

std::string CheckReport::summary() const {
    std::ostringstream out;
    out << condition << ": " << (holds ? "holds" : "FAILS");
    if (vacuous) out << " (vacuously)";
    for (const auto& [key, value] : stats) out << " " << key << "=" << value;
    if (!counterexamples.empty())
        out << " first_counterexample=[" << counterexamples.front().first << " | "
            << counterexamples.front().second << "]";
    return out.str();
}

CheckReport check_post_with(const TrajectoryComparator& cmp, const std::vector<Trajectory>& ts,
                            std::uint64_t min_strict) {
    CheckReport report;
    report.condition = "post";
    std::uint64_t strict = 0;
    std::uint64_t pairs = 0;
    for (std::size_t i = 0; i < ts.size(); ++i)
        for (std::size_t j = i + 1; j < ts.size(); ++j) {
            ++pairs;
            const auto v = cmp(ts[i], ts[j]);
            if (ts[i].length() == ts[j].length()) {
                if (v == PrefVerdict::Prefer || v == PrefVerdict::Disprefer) ++strict;
            } else if (v != PrefVerdict::Gap) {
                report.fail(ts[i].str() + " vs " + ts[j].str(),
                            "clause 2: different-length pair not a gap (got " + to_string(v) + ")");
            }
        }
    if (strict < min_strict)
        report.fail("strict same-length preferences = " + std::to_string(strict),
                    "clause 1: fewer than " + std::to_string(min_strict) + " strict pairs");
    report.stats["pairs"] = pairs;
    report.stats["strict_same_length"] = strict;
    return report;
}

CheckReport check_post(const PostStructure& p, const std::vector<Trajectory>& ts,
                       std::uint64_t min_strict) {
    return check_post_with(
        [&p](const Trajectory& a, const Trajectory& b) { return p.compare_trajectories(a, b); },
        ts, min_strict);
}

CheckReport check_posl(const LotteryComparator& comparator, const std::vector<Lottery>& ls,
                       Exec exec) {
    CheckReport report;
    report.condition = "posl";
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < ls.size(); ++i)
        for (std::size_t j = i + 1; j < ls.size(); ++j)
            if (classify(ls[i], ls[j]) != LengthClass::SameLength) pairs.emplace_back(i, j);

    std::vector<RuleVerdict> verdicts(pairs.size());
    run_indexed(pairs.size(), exec,
                [&](std::uint64_t k) { verdicts[k] = comparator(ls[pairs[k].first], ls[pairs[k].second]); });

    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const auto v = verdicts[k];
        if (v != RuleVerdict::Silent && v != RuleVerdict::NoPreference)
            report.fail("lottery " + std::to_string(pairs[k].first) + " vs " +
                            std::to_string(pairs[k].second),
                        "verdict " + to_string(v) + " on a " +
                            to_string(classify(ls[pairs[k].first], ls[pairs[k].second])) + " pair");
    }
    report.stats["non_same_length_pairs"] = pairs.size();
    report.stats["lotteries"] = ls.size();
    return report;
}

CheckReport check_negative_dominance(const LotteryComparator& comparator, const PostStructure& p,
                                     const std::vector<std::pair<Lottery, Lottery>>& pairs) {
    CheckReport report;
    report.condition = "negative_dominance";
    std::uint64_t strict_pairs = 0;
    auto witnessed = [&p](const Lottery& winner, const Lottery& loser) {
        for (const auto& [tw, pw] : winner.support())
            for (const auto& [tl, pl] : loser.support())
                if (p.compare_trajectories(tw, tl) == PrefVerdict::Prefer) return true;
        return false;
    };
    for (const auto& [x, y] : pairs) {
        const auto v = comparator(x, y);
        if (v == RuleVerdict::PreferFirst) {
            ++strict_pairs;
            if (!witnessed(x, y))
                report.fail(x.str() + " ≻ " + y.str(), "no trajectory-level preference witness");
        } else if (v == RuleVerdict::PreferSecond) {
            ++strict_pairs;
            if (!witnessed(y, x))
                report.fail(y.str() + " ≻ " + x.str(), "no trajectory-level preference witness");
        }
    }
    report.stats["pairs"] = pairs.size();
    report.stats["strict_pairs"] = strict_pairs;
    return report;
}

CheckReport check_acyclicity(const std::vector<std::pair<std::string, std::string>>& edges) {
    CheckReport report;
    report.condition = "acyclicity";
    std::map<std::string, std::vector<std::string>> adjacency;
    std::set<std::string> nodes;
    for (const auto& [a, b] : edges) {
        adjacency[a].push_back(b);
        nodes.insert(a);
        nodes.insert(b);
    }
    for (auto& [n, out] : adjacency) std::sort(out.begin(), out.end());

    // Iterative DFS with tricolor marking; the first back edge yields the cycle.
    std::map<std::string, int> color;  // 0 white, 1 gray, 2 black
    std::vector<std::string> path;
    std::function<bool(const std::string&)> visit = [&](const std::string& n) -> bool {
        color[n] = 1;
        path.push_back(n);
        for (const auto& next : adjacency[n]) {
            if (color[next] == 1) {
                const auto start = std::find(path.begin(), path.end(), next);
                std::ostringstream cycle;
                for (auto it = start; it != path.end(); ++it) {
                    cycle << *it << " > ";
                    auto succ = std::next(it) == path.end() ? start : std::next(it);
                    report.edges.emplace_back(*it, *succ);
                }
                cycle << next;
                report.fail(cycle.str(), "directed preference cycle of length " +
                                             std::to_string(path.end() - start));
                return true;
            }
            if (color[next] == 0 && visit(next)) return true;
        }
        path.pop_back();
        color[n] = 2;
        return false;
    };
    for (const auto& n : nodes) {
        if (color[n] == 0 && visit(n)) break;
    }
    report.stats["edges"] = edges.size();
    report.stats["nodes"] = nodes.size();
    if (!report.holds) report.stats["cycle_length"] = report.edges.size();
    return report;
}

CheckReport check_non_arbitrariness(const PostStructure& p,
                                    const std::vector<std::pair<std::string, Prospect>>& prospects,
                                    const Rational& epsilon, bool premise_holds) {
    if (epsilon <= 0 || epsilon >= 1)
        raise("EpsilonOutOfRange", "epsilon must lie strictly inside (0,1), got " +
                                       to_string(epsilon));
    CheckReport report;
    report.condition = "non_arbitrariness";
    if (!premise_holds) {
        report.vacuous = true;
        report.stats["implied_edges"] = 0;
        return report;
    }

    std::uint64_t examined = 0, skipped = 0;
    for (const auto& [fid, f] : prospects)
        for (const auto& [gid, g] : prospects) {
            if (fid == gid) continue;
            // Statewise comparison needs a shared state space.
            bool comparable = f.states.size() == g.states.size();
            if (comparable) {
                for (const auto& [label, sp] : f.states) {
                    auto it = g.states.find(label);
                    if (it == g.states.end() || it->second.first != sp.first) {
                        comparable = false;
                        break;
                    }
                }
            }
            if (!comparable) {
                ++skipped;
                continue;
            }
            ++examined;
            Rational preferred_mass = 0;
            bool dispreferred_somewhere = false;
            for (const auto& [label, sp] : f.states) {
                const auto v = p.compare_trajectories(sp.second, g.states.at(label).second);
                if (v == PrefVerdict::Prefer) preferred_mass += sp.first;
                if (v == PrefVerdict::Disprefer) dispreferred_somewhere = true;
            }
            if (!dispreferred_somewhere && preferred_mass >= Rational(1) - epsilon)
                report.edges.emplace_back(fid, gid);
        }
    report.stats["ordered_pairs"] = examined;
    report.stats["skipped_pairs"] = skipped;
    report.stats["implied_edges"] = report.edges.size();
    return report;
}

namespace {

std::vector<std::pair<std::string, Prospect>> money_prospect_table() {
    auto dollars = [](std::int64_t amount, std::uint64_t len) {
        std::vector<Rational> payoffs(len, Rational(0));
        payoffs[0] = amount;
        return traj(std::move(payoffs));
    };
    const Rational third(1, 3);
    auto prospect = [&](Trajectory s1, Trajectory s2, Trajectory s3) {
        return Prospect::make({{"s1", {third, std::move(s1)}},
                               {"s2", {third, std::move(s2)}},
                               {"s3", {third, std::move(s3)}}});
    };
    return {
        {"A", prospect(dollars(3, 1), dollars(3, 1), dollars(3, 1))},
        {"B", prospect(dollars(2, 1), dollars(2, 1), dollars(5, 2))},
        {"C", prospect(dollars(1, 1), dollars(4, 2), dollars(4, 2))},
        {"D", prospect(dollars(3, 2), dollars(3, 2), dollars(3, 2))},
        {"E", prospect(dollars(5, 1), dollars(2, 2), dollars(2, 2))},
        {"F", prospect(dollars(4, 1), dollars(4, 1), dollars(1, 2))},
    };
}

}  // namespace

CheckReport appendix1_cycle_oracle(const Rational& epsilon) {
    CheckReport report;
    report.condition = "appendix1_cycle";
    const PostStructure money(UtilityModel::sum_of_payoffs());
    const auto table = money_prospect_table();

    auto na = check_non_arbitrariness(money, table, epsilon, true);
    report.stats = na.stats;
    report.edges = na.edges;

    const std::vector<std::pair<std::string, std::string>> expected = {
        {"A", "B"}, {"B", "C"}, {"C", "D"}, {"D", "E"}, {"E", "F"}, {"F", "A"}};
    auto sorted_edges = na.edges;
    std::sort(sorted_edges.begin(), sorted_edges.end());
    auto sorted_expected = expected;
    std::sort(sorted_expected.begin(), sorted_expected.end());
    if (sorted_edges != sorted_expected) {
        std::ostringstream got;
        for (const auto& [a, b] : na.edges) got << a << ">" << b << " ";
        report.fail(got.str(), "implied edges differ from the six-link chain");
        return report;
    }

    const auto acyclicity = check_acyclicity(na.edges);
    report.stats["cycle_length"] = acyclicity.holds ? 0 : acyclicity.edges.size();
    if (acyclicity.holds) {
        report.fail("no cycle found", "the implied chain should contradict acyclicity");
    } else if (acyclicity.edges.size() != 6) {
        report.fail(acyclicity.counterexamples.front().first, "cycle is not the full six-link chain");
    }
    // holds means: the contradiction is reproduced exactly.
    return report;
}

CheckReport check_transitivity(const LotteryComparator& comparator, const std::vector<Lottery>& ls,
                               Exec exec) {
    CheckReport report;
    report.condition = "transitivity";
    const std::size_t n = ls.size();
    std::vector<RuleVerdict> matrix(n * n, RuleVerdict::Silent);
    std::vector<std::pair<std::size_t, std::size_t>> ordered;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) ordered.emplace_back(i, j);
    run_indexed(ordered.size(), exec, [&](std::uint64_t k) {
        const auto [i, j] = ordered[k];
        matrix[i * n + j] = comparator(ls[i], ls[j]);
    });
    auto at = [&](std::size_t i, std::size_t j) { return matrix[i * n + j]; };

    std::uint64_t triples = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                if (i == j || j == k || i == k) continue;
                ++triples;
                const auto xy = at(i, j), yz = at(j, k), xz = at(i, k);
                auto name = [&] {
                    return std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k);
                };
                if (xy == RuleVerdict::PreferFirst && yz == RuleVerdict::PreferFirst &&
                    xz != RuleVerdict::PreferFirst)
                    report.fail(name(), "PP-transitivity: strict chain not closed");
                if (xy == RuleVerdict::Indifferent && yz == RuleVerdict::Indifferent &&
                    xz != RuleVerdict::Indifferent)
                    report.fail(name(), "II-transitivity: indifference chain not closed");
                if (xy == RuleVerdict::PreferFirst && yz == RuleVerdict::Indifferent &&
                    xz != RuleVerdict::PreferFirst)
                    report.fail(name(), "PI-transitivity: strict-then-indifferent not closed");
            }
    report.stats["triples"] = triples;
    report.stats["lotteries"] = n;
    return report;
}

namespace {

// Same-length copy with every support trajectory's first payoff shifted.
Lottery shift_first_payoff(const Lottery& x, const Rational& delta) {
    if (delta == 0) return x;
    std::vector<std::pair<Trajectory, Rational>> entries;
    for (const auto& [t, p] : x.support()) {
        if (t.payoffs.empty())
            raise("UnsupportedLength", "cannot shift a trajectory with no payoff slots");
        Trajectory shifted = t;
        shifted.payoffs[0] += delta;
        entries.emplace_back(std::move(shifted), p);
    }
    return Lottery::make(std::move(entries));
}

// Per-trajectory payoff reversal: keeps length and payoff sum, usually
// changes identity. Used to make utility-preserving variants.
Lottery reverse_payoffs(const Lottery& x) {
    std::vector<std::pair<Trajectory, Rational>> entries;
    for (const auto& [t, p] : x.support()) {
        Trajectory r = t;
        std::reverse(r.payoffs.begin(), r.payoffs.end());
        entries.emplace_back(std::move(r), p);
    }
    return Lottery::make(std::move(entries));
}

std::vector<TrajectoryLength> draw_lengths(SeededRng& rng, std::size_t min_lengths,
                                           std::size_t max_lengths) {
    std::set<TrajectoryLength> picked;
    const std::size_t n = min_lengths + rng.below(max_lengths - min_lengths + 1);
    while (picked.size() < n) {
        if (rng.below(8) == 0) {
            picked.insert(TrajectoryLength::never());
        } else {
            picked.insert(TrajectoryLength::finite(1 + rng.below(4)));
        }
    }
    return {picked.begin(), picked.end()};
}

}  // namespace

CheckReport check_ibil(const CalibratedUtilities& u, std::uint64_t trials, std::uint64_t seed,
                       Exec exec) {
    if (u.base().is_table())
        raise("UnsupportedModel", "trial generation manufactures lotteries; needs sum-of-payoffs");
    CheckReport report;
    report.condition = "ibil";

    struct Outcome {
        bool ok = true;
        bool indifferent = false;
        std::string what;
    };
    std::vector<Outcome> outcomes(trials);
    run_indexed(trials, exec, [&](std::uint64_t i) {
      try {
        SeededRng rng(SeededRng::derive(seed, i));
        const auto lengths = draw_lengths(rng, 1, 3);
        const auto weights = rng.distribution(lengths.size());

        std::vector<std::pair<Rational, Lottery>> x_parts, y_parts;
        for (std::size_t k = 0; k < lengths.size(); ++k) {
            const Lottery xl = random_lottery_at(rng, lengths[k]);
            // Half the trials pair x with a utility-preserving variant, so
            // genuine indifference cases are exercised; the rest are free.
            const Lottery yl = (i % 2 == 0) ? reverse_payoffs(xl) : random_lottery_at(rng, lengths[k]);
            x_parts.emplace_back(weights[k], xl);
            y_parts.emplace_back(weights[k], yl);
        }
        const Lottery x = mix(x_parts);
        const Lottery y = mix(y_parts);  // shares x's length distribution by construction

        const Lottery z = random_lottery(rng, draw_lengths(rng, 1, 3));
        const Rational p = rng.open_unit();

        const bool plain = neutrality_plus_compare(u, x, y) == RuleVerdict::Indifferent;
        const bool mixed = neutrality_plus_compare(u, mix2(p, x, z), mix2(p, y, z)) ==
                           RuleVerdict::Indifferent;
        outcomes[i].indifferent = plain;
        if (plain != mixed) {
            outcomes[i].ok = false;
            outcomes[i].what = "trial " + std::to_string(i) + ": plain=" +
                               (plain ? "indifferent" : "not") + " mixed=" +
                               (mixed ? "indifferent" : "not");
        }
      } catch (const std::exception& e) {
        outcomes[i].ok = false;
        outcomes[i].what = "trial " + std::to_string(i) + " exception: " + e.what();
      }
    });

    std::uint64_t indifferent_cases = 0;
    for (const auto& o : outcomes) {
        if (o.indifferent) ++indifferent_cases;
        if (!o.ok) report.fail(o.what, "indifference not preserved under common mixing");
    }
    report.stats["trials"] = trials;
    report.stats["indifferent_cases"] = indifferent_cases;
    return report;
}

CheckReport neutrality_derivation_oracle(const PostStructure& p, std::uint64_t trials,
                                         std::uint64_t seed, Exec exec) {
    if (p.model().is_table())
        raise("UnsupportedModel", "trial generation manufactures lotteries; needs sum-of-payoffs");
    CheckReport report;
    report.condition = "neutrality_derivation";

    struct Outcome {
        bool ok = true;
        std::string what;
    };
    std::vector<Outcome> outcomes(trials);
    run_indexed(trials, exec, [&](std::uint64_t i) {
      try {
        SeededRng rng(SeededRng::derive(seed, i));
        const auto lengths = draw_lengths(rng, 2, 4);

        // Build an antecedent-satisfying pair: y's conditional at each
        // length is x's soured by a non-negative amount, strict at least once.
        const auto x_weights = rng.distribution(lengths.size());
        const auto y_weights = rng.distribution(lengths.size());
        std::vector<std::pair<Rational, Lottery>> x_parts, y_parts;
        std::vector<Rational> sourings(lengths.size());
        bool some_strict = false;
        for (std::size_t k = 0; k < lengths.size(); ++k) {
            sourings[k] = Rational(rng.int_in(0, 3));
            if (sourings[k] > 0) some_strict = true;
        }
        if (!some_strict) sourings[rng.below(lengths.size())] = 1;
        for (std::size_t k = 0; k < lengths.size(); ++k) {
            const Lottery xl = random_lottery_at(rng, lengths[k]);
            x_parts.emplace_back(x_weights[k], xl);
            y_parts.emplace_back(y_weights[k], shift_first_payoff(xl, -sourings[k]));
        }
        const Lottery x = mix(x_parts);
        const Lottery y = mix(y_parts);

        const auto direct = neutrality_compare(p, x, y);
        const auto via_ilpacs = ilpacs_compare(p, Decomposition::by_length(x),
                                               Decomposition::by_length(y));
        if (direct != RuleVerdict::PreferFirst || via_ilpacs != RuleVerdict::PreferFirst) {
            outcomes[i].ok = false;
            outcomes[i].what = "trial " + std::to_string(i) + ": neutrality=" + to_string(direct) +
                               " ilpacs=" + to_string(via_ilpacs);
        }
      } catch (const std::exception& e) {
        outcomes[i].ok = false;
        outcomes[i].what = "trial " + std::to_string(i) + " exception: " + e.what();
      }
    });

    for (const auto& o : outcomes)
        if (!o.ok) report.fail(o.what, "derivation paths disagree");
    report.stats["trials"] = trials;
    return report;
}

CheckReport neutrality_plus_rebalance_oracle(const CalibratedUtilities& u, const Lottery& x,
                                             const Lottery& y, const Rational& step) {
    if (step <= 0) raise("StepTooLarge", "step must be positive");
    if (classify(x, y) != LengthClass::SameLength)
        raise("LengthMismatch", "rebalance replay needs same-length lotteries");
    CheckReport report;
    report.condition = "neutrality_plus_rebalance";

    const std::vector<TrajectoryLength> lengths = [&] {
        const auto ls = length_support(x);
        return std::vector<TrajectoryLength>(ls.begin(), ls.end());
    }();
    const std::size_t n = lengths.size();
    std::vector<Rational> xu(n), yu(n);
    Rational sum_x = 0, sum_y = 0;
    for (std::size_t i = 0; i < n; ++i) {
        xu[i] = conditional_utility(u, x, lengths[i]);
        yu[i] = conditional_utility(u, y, lengths[i]);
        sum_x += xu[i];
        sum_y += yu[i];
    }
    if (sum_x <= sum_y)
        raise("BadInputs", "replay needs a strictly greater conditional-utility sum for x");

    const PostStructure structure(u.base());
    const auto evaluate = [&u](const Lottery& a, const Lottery& b) {
        return neutrality_plus_compare(u, a, b);
    };

    bool dominated = true;
    for (std::size_t i = 0; i < n; ++i)
        if (yu[i] > xu[i]) dominated = false;

    if (dominated) {
        // Easy case: lengthwise dominance, no chain needed.
        if (neutrality_compare(structure, x, y) != RuleVerdict::PreferFirst)
            report.fail("dominating pair", "direct lengthwise verdict missing");
        report.stats["chain_length"] = 0;
    } else {
        // Point lottery at a given length realizing a target utility value.
        auto realize = [&](TrajectoryLength l, const Rational& value) {
            const std::size_t slots = l.is_never() ? 1 : static_cast<std::size_t>(l.steps());
            if (slots == 0)
                raise("UnsupportedLength", "length 0 cannot realize a chosen utility");
            std::vector<Rational> payoffs(slots, Rational(0));
            payoffs[0] = (value - u.offset(l)) / u.scale(l);
            return Lottery::point(traj(std::move(payoffs), l.is_never()
                                                               ? Shutdown::NeverReceived
                                                               : Shutdown::Received));
        };
        auto assemble = [&](const std::vector<Rational>& values) {
            std::vector<std::pair<Rational, Lottery>> parts;
            for (std::size_t i = 0; i < n; ++i)
                parts.emplace_back(Rational(1, static_cast<long>(n)), realize(lengths[i], values[i]));
            return mix(parts);
        };

        // Start below x: shave half the sum gap off one length.
        std::vector<Rational> a = xu;
        const Rational gap = sum_x - sum_y;
        a[0] -= gap / 2;
        Lottery current = assemble(a);
        if (neutrality_compare(structure, x, current) != RuleVerdict::PreferFirst)
            report.fail("initial lottery", "x does not lengthwise dominate the starting mixture");

        // Every round closes at least min(step, deficit_i) of the total
        // deficit and never reopens a closed one.
        Rational total_deficit = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (a[i] < yu[i]) total_deficit += yu[i] - a[i];
        std::uint64_t links = 0;
        const std::uint64_t safety_cap =
            16 + static_cast<std::uint64_t>(to_double(total_deficit / step)) + 2 * n;
        while (true) {
            std::size_t deficit = n;
            for (std::size_t i = 0; i < n; ++i)
                if (a[i] < yu[i]) { deficit = i; break; }
            if (deficit == n) break;
            std::size_t donor = n;
            for (std::size_t j = 0; j < n; ++j)
                if (j != deficit && a[j] - step >= yu[j]) { donor = j; break; }
            if (donor == n)
                raise("StepTooLarge", "no length has a full step of slack left to donate");
            if (links > safety_cap)
                raise("StepTooLarge", "rebalancing chain exceeded its bound");

            std::vector<Rational> next = a;
            next[deficit] += step;
            next[donor] -= step;

            // Link i ~ i+1: the swapped pair is yardstick-indifferent and the
            // full mixtures evaluate as indifferent.
            if (!ramsey_indifferent(u, realize(lengths[deficit], a[deficit]),
                                    realize(lengths[deficit], next[deficit]),
                                    realize(lengths[donor], next[donor]),
                                    realize(lengths[donor], a[donor])))
                report.fail("link " + std::to_string(links), "yardstick link not indifferent");
            const Lottery next_lottery = assemble(next);
            if (evaluate(current, next_lottery) != RuleVerdict::Indifferent)
                report.fail("link " + std::to_string(links), "adjacent mixtures not indifferent");
            if (n > 2) {
                // The common remainder the indifference is shifted across.
                const Lottery pair_before = mix2(Rational(1, 2), realize(lengths[deficit], a[deficit]),
                                                 realize(lengths[donor], a[donor]));
                std::vector<std::pair<Rational, Lottery>> rest;
                for (std::size_t i = 0; i < n; ++i)
                    if (i != deficit && i != donor)
                        rest.emplace_back(Rational(1, static_cast<long>(n - 2)),
                                          realize(lengths[i], a[i]));
                const Lottery remainder = mix(rest);
                const Rational two_over_n(2, static_cast<long>(n));
                if (mix2(two_over_n, pair_before, remainder) != current)
                    report.fail("link " + std::to_string(links), "mixture decomposition mismatch");
            }
            a = std::move(next);
            current = next_lottery;
            ++links;
        }

        if (neutrality_compare(structure, current, y) != RuleVerdict::PreferFirst)
            report.fail("terminal lottery", "chain endpoint does not lengthwise dominate y");
        report.stats["chain_length"] = links;
    }

    if (neutrality_plus_compare(u, x, y) != RuleVerdict::PreferFirst)
        report.fail("conclusion", "sum comparison disagrees with the replayed chain");
    report.stats["lengths"] = n;
    return report;
}

CheckReport independence_violation_oracle() {
    CheckReport report;
    report.condition = "independence_violation";
    const PostStructure clips(UtilityModel::sum_of_payoffs());
    const CalibratedUtilities unit = CalibratedUtilities::unit(UtilityModel::sum_of_payoffs());

    const Lottery x = Lottery::make({{traj({1}), Rational(4, 5)}, {traj({1, 5}), Rational(1, 5)}});
    const Lottery y = Lottery::make({{traj({1}), Rational(1, 5)}, {traj({0, 5}), Rational(4, 5)}});
    const Lottery z = Lottery::point(traj({1, 0}));

    if (neutrality_compare(clips, x, y) != RuleVerdict::PreferFirst)
        report.fail("x vs y", "x should be preferred outright");

    const Lottery mx = mix2(Rational(1, 2), x, z);
    const Lottery my = mix2(Rational(1, 2), y, z);
    if (neutrality_compare(clips, mx, my) != RuleVerdict::PreferSecond)
        report.fail("half x + half z vs half y + half z", "the mixed verdict should flip");

    const auto two = TrajectoryLength::finite(2);
    if (conditional_utility(unit, mx, two) != Rational(11, 6))
        report.fail("conditional utility of the x-side mixture at length 2",
                    "expected exactly 11/6");
    if (conditional_utility(unit, my, two) != Rational(25, 9))
        report.fail("conditional utility of the y-side mixture at length 2",
                    "expected exactly 25/9");
    const auto one = TrajectoryLength::finite(1);
    if (conditional_utility(unit, mx, one) != 1 || conditional_utility(unit, my, one) != 1)
        report.fail("conditional utilities at length 1", "both mixtures should sit at exactly 1");
    report.stats["checks"] = 5;
    return report;
}

CheckReport money_pump_search(const LotteryComparator& comparator, const std::vector<Lottery>& ls,
                              std::size_t max_len, Exec exec) {
    CheckReport report;
    report.condition = "money_pump";
    const std::size_t n = ls.size();
    std::vector<std::pair<std::size_t, std::size_t>> ordered;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) ordered.emplace_back(i, j);
    std::vector<RuleVerdict> verdicts(ordered.size());
    run_indexed(ordered.size(), exec, [&](std::uint64_t k) {
        verdicts[k] = comparator(ls[ordered[k].first], ls[ordered[k].second]);
    });

    std::vector<std::vector<std::size_t>> strict(n);
    std::uint64_t edge_count = 0;
    for (std::size_t k = 0; k < ordered.size(); ++k) {
        const auto [i, j] = ordered[k];
        if (verdicts[k] == RuleVerdict::PreferFirst) { strict[i].push_back(j); ++edge_count; }
        if (verdicts[k] == RuleVerdict::PreferSecond) { strict[j].push_back(i); ++edge_count; }
    }

    // Bounded DFS for a strict cycle through each start node.
    std::vector<std::size_t> path;
    std::function<bool(std::size_t, std::size_t)> dfs = [&](std::size_t start,
                                                            std::size_t node) -> bool {
        if (path.size() >= max_len) return false;
        path.push_back(node);
        for (const auto next : strict[node]) {
            if (next == start && path.size() >= 2) {
                std::ostringstream cycle;
                for (const auto id : path) cycle << id << " > ";
                cycle << start;
                report.fail(cycle.str(), "strict-preference cycle (money-pump skeleton)");
                return true;
            }
            if (next > start && std::find(path.begin(), path.end(), next) == path.end() &&
                dfs(start, next))
                return true;
        }
        path.pop_back();
        return false;
    };
    for (std::size_t s = 0; s < n && report.holds; ++s) {
        path.clear();
        dfs(s, s);
    }
    report.stats["lotteries"] = n;
    report.stats["strict_edges"] = edge_count;
    report.stats["max_len"] = max_len;
    return report;
}

}  // namespace post
