#include "post/errors.hpp"
#include "post/generate.hpp"
#include "post/lottery.hpp"
#include "post/prospect.hpp"

#include <doctest.h>

using namespace post;

namespace {

const Rational half(1, 2);

Lottery lottery(std::vector<std::pair<std::vector<Rational>, Rational>> rows) {
    std::vector<std::pair<Trajectory, Rational>> entries;
    for (auto& [payoffs, prob] : rows) entries.emplace_back(traj(std::move(payoffs)), prob);
    return Lottery::make(std::move(entries));
}

// Independent multiply-and-merge oracle for mixtures.
std::map<Trajectory, Rational> remix(const std::vector<std::pair<Rational, Lottery>>& parts) {
    std::map<Trajectory, Rational> merged;
    for (const auto& [w, lot] : parts)
        for (const auto& [t, p] : lot.support()) merged[t] += w * p;
    return merged;
}

Lottery allow_lottery() {
    return lottery({{{1}, Rational(9, 10)}, {{1, 2}, Rational(1, 10)}});
}

}  // namespace

TEST_CASE("trajectory length counts pre-shutdown timesteps") {
    CHECK(traj({5, 4}).length() == TrajectoryLength::finite(2));
    CHECK(traj({}).length() == TrajectoryLength::finite(0));
    CHECK(traj({1, 1}, Shutdown::NeverReceived).length() == TrajectoryLength::never());
}

TEST_CASE("never-length trajectories are same-length regardless of horizon") {
    CHECK(traj({1}, Shutdown::NeverReceived).length() ==
          traj({1, 2, 3}, Shutdown::NeverReceived).length());
    CHECK(TrajectoryLength::never() != TrajectoryLength::finite(3));
    CHECK(TrajectoryLength::finite(2) < TrajectoryLength::never());
}

TEST_CASE("classify splits lottery pairs by length-support overlap") {
    const Lottery a = lottery({{{1}, Rational(3, 5)}, {{1, 1}, Rational(2, 5)}});
    const Lottery b = lottery({{{2}, Rational(9, 10)}, {{2, 2}, Rational(1, 10)}});
    const Lottery c = Lottery::point(traj({7}));
    const Lottery e = lottery({{{1, 1, 1}, Rational(1, 5)}, {{1, 1, 1, 1}, Rational(4, 5)}});
    CHECK(classify(a, b) == LengthClass::SameLength);
    CHECK(classify(a, c) == LengthClass::PartShared);
    CHECK(classify(a, e) == LengthClass::DifferentLength);
}

TEST_CASE("classify is symmetric") {
    SeededRng rng(11);
    for (int i = 0; i < 40; ++i) {
        const Lottery x = random_lottery(rng, random_length_set(rng));
        const Lottery y = random_lottery(rng, random_length_set(rng));
        CHECK(classify(x, y) == classify(y, x));
    }
}

TEST_CASE("length_distribution sums trajectory mass per length") {
    const auto dist = length_distribution(allow_lottery());
    REQUIRE(dist.size() == 2);
    CHECK(dist.at(TrajectoryLength::finite(1)) == Rational(9, 10));
    CHECK(dist.at(TrajectoryLength::finite(2)) == Rational(1, 10));

    const auto point = length_distribution(Lottery::point(traj({3, 3, 3})));
    CHECK(point.size() == 1);
    CHECK(point.at(TrajectoryLength::finite(3)) == 1);

    // Half/half mixture of the independence-example lotteries x and z.
    const Lottery x = lottery({{{1}, Rational(4, 5)}, {{1, 5}, Rational(1, 5)}});
    const Lottery z = Lottery::point(traj({1, 0}));
    const auto mixed = length_distribution(mix2(half, x, z));
    CHECK(mixed.at(TrajectoryLength::finite(1)) == Rational(2, 5));
    CHECK(mixed.at(TrajectoryLength::finite(2)) == Rational(3, 5));
}

TEST_CASE("length_distribution is a probability distribution") {
    SeededRng rng(12);
    for (int i = 0; i < 40; ++i) {
        const Lottery x = random_lottery(rng, random_length_set(rng));
        Rational total = 0;
        for (const auto& [l, p] : length_distribution(x)) {
            CHECK(p > 0);
            total += p;
        }
        CHECK(total == 1);
    }
}

TEST_CASE("condition_on_length renormalizes the length slice") {
    const Lottery allow = allow_lottery();
    CHECK(condition_on_length(allow, TrajectoryLength::finite(1)) ==
          Lottery::point(traj({1})));

    const Lottery single = lottery({{{2, 2}, half}, {{0, 0}, half}});
    CHECK(condition_on_length(single, TrajectoryLength::finite(2)) == single);

    const Lottery dont_interfere = lottery({{{1, 1, 0}, half},
                                            {{1, 1}, Rational(2, 5)},
                                            {{1, 1, 3}, Rational(1, 10)}});
    const Lottery at3 = condition_on_length(dont_interfere, TrajectoryLength::finite(3));
    CHECK(at3.probability_of(traj({1, 1, 0})) == Rational(5, 6));
    CHECK(at3.probability_of(traj({1, 1, 3})) == Rational(1, 6));

    CHECK_THROWS_WITH_AS(condition_on_length(allow, TrajectoryLength::finite(9)),
                         doctest::Contains("ZeroMassLength"), Error);
}

TEST_CASE("mix is multiply-and-merge") {
    const Lottery x = allow_lottery();
    CHECK(mix({{Rational(1), x}}) == x);

    // Half/half of the calibration pair gives four quarter-mass trajectories.
    const Lottery early = lottery({{{1}, half}, {{0, 0}, half}});
    const Lottery late = lottery({{{0}, half}, {{0, 1}, half}});
    const Lottery both = mix2(half, early, late);
    REQUIRE(both.support().size() == 4);
    for (const auto& [t, p] : both.support()) CHECK(p == Rational(1, 4));
    CHECK(both.support() == remix({{half, early}, {half, late}}));

    const Lottery y = lottery({{{1}, Rational(1, 5)}, {{0, 5}, Rational(4, 5)}});
    const Lottery z = Lottery::point(traj({1, 0}));
    const Lottery yz = mix2(half, y, z);
    CHECK(yz.probability_of(traj({1})) == Rational(1, 10));
    CHECK(yz.probability_of(traj({0, 5})) == Rational(2, 5));
    CHECK(yz.probability_of(traj({1, 0})) == half);
    CHECK(yz.support() == remix({{half, y}, {half, z}}));

    CHECK_THROWS_WITH_AS(mix({{half, x}, {Rational(1, 3), x}}),
                         doctest::Contains("BadWeights"), Error);
    CHECK_THROWS_WITH_AS(mix({{Rational(0), x}, {Rational(1), x}}),
                         doctest::Contains("BadWeights"), Error);
}

TEST_CASE("partition of unity: lengthwise conditionals reconstruct the lottery") {
    SeededRng rng(13);
    for (int i = 0; i < 100; ++i) {
        const Lottery x = random_lottery(rng, random_length_set(rng));
        std::vector<std::pair<Rational, Lottery>> parts;
        for (const auto& [l, p] : length_distribution(x))
            parts.emplace_back(p, condition_on_length(x, l));
        CHECK(mix(parts) == x);
    }
}

TEST_CASE("lottery invariants are enforced") {
    CHECK_THROWS_WITH_AS(Lottery::make({}), doctest::Contains("EmptySupport"), Error);
    CHECK_THROWS_WITH_AS(Lottery::make({{traj({1}), Rational(3, 5)}, {traj({2}), half}}),
                         doctest::Contains("11/10"), Error);
    CHECK_THROWS_WITH_AS(Lottery::make({{traj({1}), Rational(-1)}, {traj({2}), Rational(2)}}),
                         doctest::Contains("BadProbability"), Error);
    // Duplicate trajectories merge.
    const Lottery merged = Lottery::make({{traj({1}), half}, {traj({1}), half}});
    CHECK(merged == Lottery::point(traj({1})));
}

TEST_CASE("lottery_of erases state information and merges") {
    const Rational third(1, 3);
    const Prospect a = Prospect::make({{"s1", {third, traj({3})}},
                                       {"s2", {third, traj({3})}},
                                       {"s3", {third, traj({3})}}});
    CHECK(lottery_of(a) == Lottery::point(traj({3})));

    const Prospect b = Prospect::make({{"s1", {third, traj({2})}},
                                       {"s2", {third, traj({2})}},
                                       {"s3", {third, traj({5, 0})}}});
    const Lottery lb = lottery_of(b);
    CHECK(lb.probability_of(traj({2})) == Rational(2, 3));
    CHECK(lb.probability_of(traj({5, 0})) == third);

    CHECK(lottery_of(Prospect::make({{"only", {Rational(1), traj({4, 4})}}})) ==
          Lottery::point(traj({4, 4})));
}

TEST_CASE("lottery_of preserves total probability") {
    SeededRng rng(14);
    for (int i = 0; i < 30; ++i) {
        const std::size_t n = 1 + rng.below(5);
        const auto probs = rng.distribution(n);
        std::map<std::string, std::pair<Rational, Trajectory>> states;
        for (std::size_t k = 0; k < n; ++k)
            states.emplace("s" + std::to_string(k),
                           std::make_pair(probs[k], random_trajectory(rng, TrajectoryLength::finite(
                                                                              1 + rng.below(3)))));
        Rational total = 0;
        for (const auto& [t, p] : lottery_of(Prospect::make(states)).support()) total += p;
        CHECK(total == 1);
    }
}

TEST_CASE("exact arithmetic: recomputation is bit-identical") {
    SeededRng rng_a(15), rng_b(15);
    for (int i = 0; i < 20; ++i) {
        const Lottery a = random_lottery(rng_a, {TrajectoryLength::finite(1), TrajectoryLength::finite(2)});
        const Lottery b = random_lottery(rng_b, {TrajectoryLength::finite(1), TrajectoryLength::finite(2)});
        CHECK(a == b);
        CHECK(length_distribution(a) == length_distribution(b));
    }
}
