#pragma once

#include "carrylab/moments.hpp"

namespace carrylab::closed_forms {

// Printed closed forms, evaluated exactly at numeric parameters.

// Growth constants for standard addition of two (q,d)-expansions.
MomentConstants qd_standard(int q, int d);

// Growth constants for standard addition of two SSDEs (carries 1 and -1 are symmetric).
MomentConstants ssde_standard(int q);

// Constant of the von Neumann iteration count for SSDEs, from its closed form.
Rational neumann_delta(int q);

// The polynomials s_0 and s_1 of the denominator of G_k, evaluated at (q, z).
Rational neumann_s0(int q, const Rational& z);
Rational neumann_s1(int q, const Rational& z);

} // namespace carrylab::closed_forms
