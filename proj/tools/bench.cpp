// Benchmark comparing the serial reference sweeps against the
// OpenMP-parallel ones. Both paths are bit-identical by construction;
// this only measures wall time.
//
//   post_bench [--trials N] [--seed S]

#include "post/generate.hpp"
#include "post/scenarios.hpp"
#include "post/verifiers.hpp"

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <omp.h>
#include <string>

namespace {

using namespace post;

double time_of(const std::function<void()>& fn) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(stop - start).count();
}

void row(const char* name, const std::function<void(Exec)>& fn) {
    const double serial = time_of([&] { fn(Exec::serial); });
    const double parallel = time_of([&] { fn(Exec::parallel); });
    std::printf("%-28s %10.1f ms %10.1f ms %8.2fx\n", name, serial, parallel, serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
    std::uint64_t trials = 2000;
    std::uint64_t seed = 0;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--trials") && i + 1 < argc) trials = std::stoull(argv[++i]);
        if (!std::strcmp(argv[i], "--seed") && i + 1 < argc) seed = std::stoull(argv[++i]);
    }

    std::printf("threads: %d, trials: %llu\n", omp_get_max_threads(),
                static_cast<unsigned long long>(trials));
    std::printf("%-28s %13s %13s %9s\n", "sweep", "serial", "parallel", "speedup");

    const CalibratedUtilities anchored =
        scenario_calibration(builtin("early_late"), true);
    row("yardstick_theorem_check",
        [&](Exec e) { yardstick_theorem_check(anchored, trials, seed, e); });

    const CalibratedUtilities unit = CalibratedUtilities::unit(UtilityModel::sum_of_payoffs());
    row("check_ibil", [&](Exec e) { check_ibil(unit, trials, seed, e); });

    const PostStructure money(UtilityModel::sum_of_payoffs());
    row("neutrality_derivation", [&](Exec e) {
        neutrality_derivation_oracle(money, trials, seed, e);
    });

    const auto family = mixed_length_family(seed, 160);
    row("check_posl (160 lotteries)",
        [&](Exec e) { check_posl(neutrality_comparator(money), family, e); });

    std::map<std::string, Lottery> options;
    for (std::size_t i = 0; i < family.size(); ++i)
        options.emplace("opt" + std::to_string(1000 + i), family[i]);
    row("maximality (160 options)", [&](Exec e) {
        maximality_choose(neutrality_comparator(money), options, e);
    });
    return 0;
}
