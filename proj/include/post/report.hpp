#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace post {

// Outcome of one condition check or theorem oracle. holds is true iff
// no counterexample was found; stats carries counts of pairs, triples,
// trials, etc. examined.
struct CheckReport {
    std::string condition;
    bool holds = true;
    bool vacuous = false;  // antecedent never engaged (flagged, still holds)
    std::vector<std::pair<std::string, std::string>> counterexamples;  // (inputs, violated clause)
    std::map<std::string, std::uint64_t> stats;
    std::vector<std::pair<std::string, std::string>> edges;  // implied preferences, when emitted

    void fail(std::string inputs, std::string clause) {
        holds = false;
        counterexamples.emplace_back(std::move(inputs), std::move(clause));
    }

    std::string summary() const;
};

}  // namespace post
