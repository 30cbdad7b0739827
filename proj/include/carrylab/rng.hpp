#pragma once

#include <cstdint>
#include <random>

namespace carrylab {

// Reproducible random stream: one engine per (seed, stream) pair, so every trial
// draws the same numbers whichever worker runs it.
class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next() { return engine_(); }
    // Uniform on [0, 1) with 53 random bits; identical on every platform.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

} // namespace carrylab
