#pragma once

#include "post/lottery.hpp"

#include <map>
#include <string>

namespace post {

// A lottery with extra information: each state-of-nature (a way the
// world could be, for all the agent knows) is mapped to the trajectory
// it would produce. State labels are unique by construction of the map.
struct Prospect {
    // label -> (probability, trajectory); probabilities positive, sum 1
    std::map<std::string, std::pair<Rational, Trajectory>> states;

    static Prospect make(std::map<std::string, std::pair<Rational, Trajectory>> states);
};

// Erase the state information; equal trajectories across states merge.
Lottery lottery_of(const Prospect& p);

}  // namespace post
