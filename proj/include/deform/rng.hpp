#pragma once

#include "deform/rational.hpp"

#include <cstdint>

namespace deform {

// Deterministic xorshift generator. Identical seeds give identical streams
// on every platform; all randomized suites route through this.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed * 2685821657736338717ULL + 1442695040888963407ULL) {}

    uint64_t next()
    {
        state_ ^= state_ << 13;
        state_ ^= state_ >> 7;
        state_ ^= state_ << 17;
        return state_;
    }

    int below(int n) { return n <= 1 ? 0 : static_cast<int>(next() % static_cast<uint64_t>(n)); }

    bool flip() { return next() & 1; }

    // Uniform over {-range, ..., range}.
    int small_int(int range) { return below(2 * range + 1) - range; }

    Rational small_rational(int num_range, int max_den = 2)
    {
        int den = 1 + below(max_den);
        return Rational(small_int(num_range), den);
    }

private:
    uint64_t state_;
};

}  // namespace deform
