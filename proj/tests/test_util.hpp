#pragma once

#include "kr/matrix.hpp"

#include <random>

namespace krtest {

// Deterministic RNG for all randomized suites; seeds are fixed per test.
using Rng = std::mt19937_64;

inline long rand_range(Rng& rng, long lo, long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    return d(rng);
}

inline kr::IntMat random_matrix(Rng& rng, long rows, long cols, long lo = -9, long hi = 9) {
    kr::IntMat m(rows, cols);
    for (long i = 0; i < rows; ++i)
        for (long j = 0; j < cols; ++j) m.at(i, j) = rand_range(rng, lo, hi);
    return m;
}

} // namespace krtest
