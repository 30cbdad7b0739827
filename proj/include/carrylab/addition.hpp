#pragma once

#include "carrylab/numbersys.hpp"

#include <optional>
#include <span>
#include <vector>

namespace carrylab {

struct AdditionTrace {
    Digits digitwise_sum;
    Expansion result;
    Digits carries; // c_1, c_2, ..., one per input position
    int pos_count = 0;
    int neg_count = 0;
};

// Carry out of a position holding a = s_j + c_j in the (q,d)-system.
int qd_carry(int a, int q, int d);
// Carry rule of symmetric signed digit addition; `next` is the raw next digitwise sum.
int ssde_carry(int a, int next, int q);

AdditionTrace standard_add_qd(std::span<const int> s, int q, int d);
AdditionTrace standard_add_ssde(std::span<const int> s, int q);
AdditionTrace standard_add(const Expansion& x, const Expansion& y);

// Position-wise sum, padding the shorter word with zeros.
Digits digitwise_sum(std::span<const int> x, std::span<const int> y);

struct NeumannStep {
    Digits z;
    Digits c; // c[0] = 0, one entry longer than z
};

struct NeumannTrace {
    int iterations = 0;
    // states[k] = (z^(k), c^(k)); states[0] = (x, y)
    std::vector<NeumannStep> states;
};

NeumannStep neumann_step(std::span<const int> s, const DigitSystem& system);
NeumannTrace neumann_add(const Expansion& x, const Expansion& y, std::optional<int> cap = std::nullopt);
// Same iteration count without keeping the history.
int neumann_iterations(std::span<const int> x, std::span<const int> y, const DigitSystem& system);

// Longest run of solid transitions of the von Neumann run automaton on s followed by
// zero padding; equals max(t - 2, 0).
int longest_solid_run(std::span<const int> s, int q);

} // namespace carrylab
