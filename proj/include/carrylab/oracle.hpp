#pragma once

#include "carrylab/moments.hpp"
#include "carrylab/numbersys.hpp"

#include <cstdint>
#include <map>

namespace carrylab::oracle {

// Largest number of pairs the enumerations accept.
inline constexpr std::uint64_t max_pairs = 50'000'000;

// Sum over all pairs of accepted words of length ell of W(x) W(y), grouped by the
// numbers of carries 1 and -1 of standard addition. Throws std::length_error above max_pairs.
JointDistribution carry_distribution_bruteforce(const DigitSystem& system, std::size_t ell, unsigned workers = 1);

// The same weights grouped by the iteration count t of von Neumann addition.
std::map<int, Rational> neumann_distribution_bruteforce(const DigitSystem& system, std::size_t ell,
                                                        unsigned workers = 1);

} // namespace carrylab::oracle
