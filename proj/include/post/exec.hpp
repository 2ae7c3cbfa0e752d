#pragma once

#include <cstdint>

namespace post {

// Execution policy for the embarrassingly parallel sweeps: randomized
// trial batches and pairwise comparison matrices. Every entry point that
// accepts an Exec produces bit-identical results under both policies —
// each index writes only its own slot and reduction happens serially in
// index order — so `serial` is the reference the tests compare against.
enum class Exec { serial, parallel };

template <class Fn>
void run_indexed(std::uint64_t n, Exec mode, Fn&& fn) {
    if (mode == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i)
            fn(static_cast<std::uint64_t>(i));
    } else {
        for (std::uint64_t i = 0; i < n; ++i) fn(i);
    }
}

}  // namespace post
