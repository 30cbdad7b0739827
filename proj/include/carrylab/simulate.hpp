#pragma once

#include "carrylab/numbersys.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace carrylab {

enum class AdderMode { standard, neumann };

struct SimulationConfig {
    DigitSystem system = DigitSystem::qd(10, 0);
    std::size_t ell = 0;
    std::size_t trials = 1;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    AdderMode mode = AdderMode::standard;
};

struct CarryStats {
    double mean_m = 0, mean_n = 0;
    double var_m = 0, var_n = 0, cov = 0; // sample (co)variances
};

struct SimulationResult {
    SimulationConfig config;
    // standard mode: carries 1 and -1 per trial; neumann mode: iterations per trial
    std::vector<int> m, n, t;
    CarryStats stats;
    std::map<int, std::size_t> t_histogram;
};

// Trial i draws both summands from its own stream (seed, i), so results do not depend
// on the number of workers.
SimulationResult simulate(const SimulationConfig& config);

} // namespace carrylab
