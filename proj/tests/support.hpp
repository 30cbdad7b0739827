#pragma once

#include "carrylab/exact.hpp"

// Canonical fraction; the two-argument mpq constructor does not reduce.
inline carrylab::Rational frac(long num, long den)
{
    carrylab::Rational r(num, den);
    r.canonicalize();
    return r;
}
