#include "post/generate.hpp"

namespace post {

namespace {

// splitmix64 step; good enough to decorrelate per-trial streams.
std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t SeededRng::derive(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(splitmix64(seed) ^ (index * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL));
}

std::uint64_t SeededRng::below(std::uint64_t n) {
    if (n == 0) return 0;
    const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % n;
    std::uint64_t v;
    do {
        v = eng_();
    } while (v >= limit);
    return v % n;
}

std::int64_t SeededRng::int_in(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
}

Rational SeededRng::rational(std::int64_t lo, std::int64_t hi, std::uint64_t max_den) {
    const std::int64_t num = int_in(lo, hi);
    const std::int64_t den = int_in(1, static_cast<std::int64_t>(max_den));
    return Rational(num, den);
}

std::vector<Rational> SeededRng::distribution(std::size_t n) {
    std::vector<Rational> parts(n);
    Rational total = 0;
    for (auto& p : parts) {
        p = Rational(int_in(1, 9));
        total += p;
    }
    for (auto& p : parts) p /= total;
    return parts;
}

Rational SeededRng::open_unit() {
    const std::int64_t den = int_in(2, 16);
    const std::int64_t num = int_in(1, den - 1);
    return Rational(num, den);
}

Trajectory random_trajectory(SeededRng& rng, TrajectoryLength l, std::int64_t lo, std::int64_t hi) {
    const std::size_t slots = l.is_never() ? static_cast<std::size_t>(rng.int_in(1, 4))
                                           : static_cast<std::size_t>(l.steps());
    std::vector<Rational> payoffs(slots);
    for (auto& p : payoffs) p = rng.rational(lo, hi, 2);
    return traj(std::move(payoffs), l.is_never() ? Shutdown::NeverReceived : Shutdown::Received);
}

Lottery random_lottery_at(SeededRng& rng, TrajectoryLength l, std::size_t max_support) {
    const std::size_t n = 1 + rng.below(max_support);
    const auto probs = rng.distribution(n);
    std::vector<std::pair<Trajectory, Rational>> entries;
    for (std::size_t i = 0; i < n; ++i) entries.emplace_back(random_trajectory(rng, l), probs[i]);
    return Lottery::make(std::move(entries));
}

Lottery random_lottery(SeededRng& rng, const std::vector<TrajectoryLength>& lengths,
                       std::size_t max_support_per_length) {
    std::vector<std::pair<Rational, Lottery>> parts;
    const auto weights = rng.distribution(lengths.size());
    for (std::size_t i = 0; i < lengths.size(); ++i)
        parts.emplace_back(weights[i], random_lottery_at(rng, lengths[i], max_support_per_length));
    return mix(parts);
}

std::vector<TrajectoryLength> random_length_set(SeededRng& rng, std::size_t max_lengths,
                                                std::uint64_t max_steps) {
    const std::size_t n = 1 + rng.below(max_lengths);
    std::set<TrajectoryLength> picked;
    while (picked.size() < n) {
        if (rng.below(8) == 0) {
            picked.insert(TrajectoryLength::never());
        } else {
            picked.insert(TrajectoryLength::finite(1 + rng.below(max_steps)));
        }
    }
    return {picked.begin(), picked.end()};
}

std::vector<Lottery> mixed_length_family(std::uint64_t seed, std::size_t count) {
    std::vector<Lottery> family;
    family.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        SeededRng rng(SeededRng::derive(seed, i));
        // Cycle through support shapes so every length-class relation occurs.
        std::vector<TrajectoryLength> lengths;
        switch (i % 4) {
            case 0: lengths = {TrajectoryLength::finite(1), TrajectoryLength::finite(2)}; break;
            case 1: lengths = {TrajectoryLength::finite(1)}; break;
            case 2: lengths = {TrajectoryLength::finite(3), TrajectoryLength::never()}; break;
            default: lengths = random_length_set(rng); break;
        }
        family.push_back(random_lottery(rng, lengths));
    }
    return family;
}

}  // namespace post
