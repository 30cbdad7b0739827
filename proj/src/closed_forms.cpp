#include "carrylab/closed_forms.hpp"

namespace carrylab::closed_forms {

MomentConstants qd_standard(int q_, int d_)
{
    const Rational q = q_, d = d_;
    const Rational den = 4 * pow(q - 1, 5) * (q + 1);
    MomentConstants m;
    m.e_m = (q + d - 1) * (q + d - 1) / (2 * (q - 1) * (q - 1));
    m.e_n = d * d / (2 * (q - 1) * (q - 1));
    m.v_m = (q + d - 1) * (q + d - 1) *
            (pow(q, 4) - 2 * pow(q, 3) * d - q * q * d * d - 4 * q * d * d - 2 * q * q - d * d + 2 * d + 1) / den;
    m.v_n = d * d *
            (2 * pow(q, 4) - q * q * d * d - 4 * pow(q, 3) - 6 * q * q * d - 4 * q * d * d + 4 * q * q + 6 * q * d -
             d * d - 4 * q + 2) /
            den;
    m.c = d * (q + d - 1) *
          (pow(q, 3) * d + q * q * d * d - pow(q, 3) + 3 * q * q * d + 4 * q * d * d + 2 * q * q - 3 * q * d + d * d -
           q - d) /
          den;
    return m;
}

MomentConstants ssde_standard(int q_)
{
    const Rational q = q_;
    const Rational den = 64 * pow(q + 1, 5) * (q - 1);
    MomentConstants m;
    m.e_m = m.e_n = (q * q + 2 * q + 4) / (8 * (q + 1) * (q + 1));
    m.v_m = m.v_n =
        (7 * pow(q, 6) + 48 * pow(q, 5) + 159 * pow(q, 4) + 128 * pow(q, 3) - 48 * q * q - 12 * q - 8) / den;
    m.c = -(pow(q, 6) + 24 * pow(q, 5) + 33 * pow(q, 4) + 80 * pow(q, 3) + 120 * q * q - 12 * q - 8) / den;
    return m;
}

Rational neumann_delta(int q_)
{
    const Rational q = q_;
    Rational num = (q - 1) * (4 * pow(q, 10) + 10 * pow(q, 9) + 18 * pow(q, 8) - 4 * pow(q, 7) - 10 * pow(q, 6) +
                              7 * pow(q, 5) + 44 * pow(q, 4) - 29 * pow(q, 3) - 8 * q * q - 20 * q + 16);
    Rational den = 4 * pow(q, 3) * (q + 1) * (q + 1) *
                   (4 * pow(q, 7) - pow(q, 5) - 6 * pow(q, 4) + 8 * pow(q, 3) + 2 * q - 4);
    return num / den;
}

Rational neumann_s0(int q_, const Rational& z)
{
    const Rational q = q_;
    return 4 * pow(q, 7) * (q + 1) * (q + 2) * (q + 2) * (z + q) * (z - q * q) *
           (2 * q * pow(z, 4) - 4 * pow(z, 4) + 8 * pow(q, 3) * z * z - pow(q, 5) * z * z - 6 * pow(q, 4) * z * z +
            4 * pow(q, 7));
}

Rational neumann_s1(int q_, const Rational& z)
{
    const Rational q = q_;
    auto Q = [&](unsigned long k) { return pow(q, k); };
    auto Z = [&](unsigned long k) { return pow(z, k); };
    Rational inner = 4 * Q(12) + 6 * Q(11) * z + 2 * Q(10) * Z(2) - 4 * Q(11) - 24 * Q(10) * z - 8 * Q(9) * Z(2) +
                     24 * Q(10) + 26 * Q(9) * z + 4 * Q(8) * Z(2) + 5 * Q(7) * Z(3) - 7 * Q(6) * Z(4) - 48 * Q(9) -
                     20 * Q(8) * z + 18 * Q(7) * Z(2) - 9 * Q(6) * Z(3) + 34 * Q(5) * Z(4) + 5 * Q(4) * Z(5) +
                     32 * Q(8) + 36 * Q(6) * Z(2) - 32 * Q(5) * Z(3) - 59 * Q(4) * Z(4) - 25 * Q(3) * Z(5) -
                     112 * Q(5) * Z(2) + 84 * Q(4) * Z(3) + 40 * Q(3) * Z(4) + 44 * Q(2) * Z(5) + 64 * Q(4) * Z(2) -
                     48 * Q(3) * Z(3) + 4 * Q(2) * Z(4) - 36 * q * Z(5) - 16 * q * Z(4) + 16 * Z(5);
    return -(q + z) * z * z * (q + 2) * (q + 2) * Q(4) * inner;
}

} // namespace carrylab::closed_forms
