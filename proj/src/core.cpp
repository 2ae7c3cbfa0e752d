#include "post/errors.hpp"
#include "post/lottery.hpp"
#include "post/prospect.hpp"
#include "post/trajectory.hpp"

#include <sstream>

namespace post {

Trajectory traj(std::vector<Rational> payoffs, Shutdown shutdown) {
    return Trajectory{std::move(payoffs), shutdown};
}

std::string Trajectory::str() const {
    std::ostringstream out;
    out << "<";
    for (const auto& p : payoffs) out << to_string(p) << ",";
    out << (shutdown == Shutdown::Received ? "shutdown" : "no-shutdown") << ">";
    return out.str();
}

Lottery Lottery::point(Trajectory t) {
    Lottery x;
    x.support_.emplace(std::move(t), Rational(1));
    return x;
}

Lottery Lottery::make(std::vector<std::pair<Trajectory, Rational>> entries) {
    Lottery x;
    Rational total = 0;
    for (auto& [t, p] : entries) {
        if (p <= 0) raise("BadProbability", "trajectory probability must be positive, got " + to_string(p));
        total += p;
        x.support_[std::move(t)] += p;
    }
    if (x.support_.empty()) raise("EmptySupport", "lottery needs at least one trajectory");
    if (total != 1) raise("ProbSumError", "trajectory probabilities sum to " + to_string(total));
    return x;
}

Rational Lottery::probability_of(const Trajectory& t) const {
    auto it = support_.find(t);
    return it == support_.end() ? Rational(0) : it->second;
}

std::string Lottery::str() const {
    std::ostringstream out;
    bool first = true;
    for (const auto& [t, p] : support_) {
        if (!first) out << " + ";
        out << to_string(p) << " " << t.str();
        first = false;
    }
    return out.str();
}

std::string to_string(LengthClass c) {
    switch (c) {
        case LengthClass::SameLength: return "same-length";
        case LengthClass::PartShared: return "part-shared-length";
        case LengthClass::DifferentLength: return "different-length";
    }
    return "?";
}

std::set<TrajectoryLength> length_support(const Lottery& x) {
    std::set<TrajectoryLength> ls;
    for (const auto& [t, p] : x.support()) ls.insert(t.length());
    return ls;
}

LengthClass classify(const Lottery& x, const Lottery& y) {
    const auto lx = length_support(x);
    const auto ly = length_support(y);
    if (lx == ly) return LengthClass::SameLength;
    bool overlap = false;
    for (const auto& l : lx) {
        if (ly.count(l)) { overlap = true; break; }
    }
    return overlap ? LengthClass::PartShared : LengthClass::DifferentLength;
}

std::map<TrajectoryLength, Rational> length_distribution(const Lottery& x) {
    std::map<TrajectoryLength, Rational> dist;
    for (const auto& [t, p] : x.support()) dist[t.length()] += p;
    return dist;
}

Lottery condition_on_length(const Lottery& x, TrajectoryLength l) {
    Rational mass = 0;
    for (const auto& [t, p] : x.support())
        if (t.length() == l) mass += p;
    if (mass == 0) raise("ZeroMassLength", "length " + l.str() + " has zero probability");
    std::vector<std::pair<Trajectory, Rational>> entries;
    for (const auto& [t, p] : x.support())
        if (t.length() == l) entries.emplace_back(t, p / mass);
    return Lottery::make(std::move(entries));
}

Lottery mix(const std::vector<std::pair<Rational, Lottery>>& components) {
    if (components.empty()) raise("BadWeights", "mixture needs at least one component");
    Rational total = 0;
    for (const auto& [w, lot] : components) {
        if (w <= 0) raise("BadWeights", "mixture weight must be positive, got " + to_string(w));
        total += w;
    }
    if (total != 1) raise("BadWeights", "mixture weights sum to " + to_string(total));
    std::vector<std::pair<Trajectory, Rational>> entries;
    for (const auto& [w, lot] : components)
        for (const auto& [t, p] : lot.support()) entries.emplace_back(t, w * p);
    return Lottery::make(std::move(entries));
}

Prospect Prospect::make(std::map<std::string, std::pair<Rational, Trajectory>> states) {
    if (states.empty()) raise("EmptySupport", "prospect needs at least one state-of-nature");
    Rational total = 0;
    for (const auto& [label, sp] : states) {
        if (sp.first <= 0)
            raise("BadProbability", "state \"" + label + "\" has non-positive probability");
        total += sp.first;
    }
    if (total != 1) raise("ProbSumError", "state probabilities sum to " + to_string(total));
    return Prospect{std::move(states)};
}

Lottery lottery_of(const Prospect& p) {
    std::vector<std::pair<Trajectory, Rational>> entries;
    for (const auto& [label, sp] : p.states) entries.emplace_back(sp.second, sp.first);
    return Lottery::make(std::move(entries));
}

}  // namespace post
