#pragma once

#include "post/rational.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace post {

// Number of timesteps before the shutdown signal arrives. "Never
// received" is its own length class: two never-length trajectories are
// same-length no matter how long their payoff vectors are.
class TrajectoryLength {
public:
    static TrajectoryLength finite(std::uint64_t steps) { return TrajectoryLength(false, steps); }
    static TrajectoryLength never() { return TrajectoryLength(true, 0); }

    bool is_never() const { return never_; }
    std::uint64_t steps() const { return steps_; }  // meaningful only when finite

    // Finite lengths order by step count; Never sorts after every finite length.
    friend auto operator<=>(const TrajectoryLength& a, const TrajectoryLength& b) {
        if (a.never_ != b.never_) return a.never_ <=> b.never_;
        return a.steps_ <=> b.steps_;
    }
    friend bool operator==(const TrajectoryLength&, const TrajectoryLength&) = default;

    std::string str() const { return never_ ? "never" : std::to_string(steps_); }

private:
    TrajectoryLength(bool never, std::uint64_t steps) : never_(never), steps_(steps) {}
    bool never_;
    std::uint64_t steps_;
};

enum class Shutdown { Received, NeverReceived };

// A possible "life" of the agent: one payoff per timestep, then the
// shutdown terminator (or not). Never-length trajectories still carry a
// finite payoff vector — a modeled horizon, not an infinite tail.
struct Trajectory {
    std::vector<Rational> payoffs;
    Shutdown shutdown = Shutdown::Received;

    TrajectoryLength length() const {
        return shutdown == Shutdown::Received ? TrajectoryLength::finite(payoffs.size())
                                              : TrajectoryLength::never();
    }

    Rational payoff_sum() const {
        Rational s = 0;
        for (const auto& p : payoffs) s += p;
        return s;
    }

    // Equality is structural: payoff vector plus terminator.
    friend bool operator==(const Trajectory&, const Trajectory&) = default;
    friend bool operator<(const Trajectory& a, const Trajectory& b) {
        if (a.shutdown != b.shutdown) return a.shutdown < b.shutdown;
        return a.payoffs < b.payoffs;
    }

    std::string str() const;
};

// Shorthand constructors used throughout the scenario library and tests.
Trajectory traj(std::vector<Rational> payoffs, Shutdown shutdown = Shutdown::Received);

inline TrajectoryLength length(const Trajectory& t) { return t.length(); }

}  // namespace post
