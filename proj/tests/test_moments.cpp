#include "carrylab/closed_forms.hpp"
#include "carrylab/moments.hpp"
#include "carrylab/oracle.hpp"

#include <doctest.h>

#include "support.hpp"

#include <cmath>

using namespace carrylab;

namespace {

struct Moments {
    double mean_m = 0, mean_n = 0, var_m = 0, var_n = 0, cov = 0;
};

Moments moments(const JointDistribution& d)
{
    Rational total = 0, m = 0, n = 0, mm = 0, nn = 0, mn = 0;
    for (const auto& [key, p] : d) {
        total += p;
        m += p * key.first;
        n += p * key.second;
        mm += p * key.first * key.first;
        nn += p * key.second * key.second;
        mn += p * key.first * key.second;
    }
    m /= total;
    n /= total;
    Moments out;
    out.mean_m = to_double(m);
    out.mean_n = to_double(n);
    out.var_m = to_double(mm / total - m * m);
    out.var_n = to_double(nn / total - n * n);
    out.cov = to_double(mn / total - m * n);
    return out;
}

TriPolynomial tri(int a, int b, int c, const Rational& coeff) { return TriPolynomial::monomial({a, b, c}, coeff); }

} // namespace

TEST_SUITE("moments")
{
    TEST_CASE("determinant of a one by one matrix")
    {
        PolyMatrix a(1);
        a(0, 0) = carry_monomial(0, 0, frac(1, 3));
        CHECK(char_det(a) == tri(0, 0, 0, 1) + tri(0, 0, 1, frac(-1, 3)));
    }

    TEST_CASE("determinant of a two by two matrix")
    {
        // det(I - zA) = 1 - z(a + d) + z^2 (ad - bc)
        PolyMatrix a(2);
        a(0, 0) = carry_monomial(1, 0, frac(1, 2));
        a(0, 1) = carry_monomial(0, 0, frac(1, 2));
        a(1, 0) = carry_monomial(0, 1, frac(1, 4));
        a(1, 1) = carry_monomial(0, 0, frac(3, 4));
        TriPolynomial expected = tri(0, 0, 0, 1) + tri(1, 0, 1, frac(-1, 2)) + tri(0, 0, 1, frac(-3, 4)) +
                                 tri(1, 0, 2, frac(3, 8)) + tri(0, 1, 2, frac(-1, 8));
        CHECK(char_det(a) == expected);
    }

    TEST_CASE("dominant root at z = 1")
    {
        for (int q : {2, 4, 8})
            CHECK(char_det(build_S_ssde(q)).at_ones() == 0);
        CHECK(char_det(build_S_qd(7, -3)).at_ones() == 0);
    }

    TEST_CASE("no marked transitions")
    {
        PolyMatrix a(2);
        a(0, 0) = carry_monomial(0, 1, frac(1, 2));
        a(0, 1) = carry_monomial(0, 0, frac(1, 2));
        a(1, 0) = carry_monomial(0, 0, 1);
        MomentConstants m = moment_constants(a);
        CHECK(m.e_m == 0);
        CHECK(m.v_m == 0);
        CHECK(m.c == 0);
        CHECK(m.e_n == frac(1, 3));
    }

    TEST_CASE("degenerate spectrum is reported")
    {
        PolyMatrix a(1);
        a(0, 0) = carry_monomial(0, 0, 0);
        CHECK_THROWS_AS(moment_constants(a), std::domain_error);
    }

    TEST_CASE("decimal growth constants")
    {
        MomentConstants m = moment_constants(build_S_qd(10, 0));
        CHECK(m.e_m == frac(1, 2));
        CHECK(m.e_n == 0);
        CHECK(m.v_m == frac(11, 36));
        CHECK(m.v_n == 0);
        CHECK(m.c == 0);
        CHECK(m == closed_forms::qd_standard(10, 0));
    }

    TEST_CASE("(q,d) growth constants against the closed forms")
    {
        int sign_flips = 0, pairs = 0;
        for (int q = 2; q <= 12; ++q)
            for (int d = -q + 1; d <= 0; ++d) {
                MomentConstants m = moment_constants(build_S_qd(q, d));
                MomentConstants printed = closed_forms::qd_standard(q, d);
                CHECK(m.e_m == printed.e_m);
                CHECK(m.e_n == printed.e_n);
                CHECK(m.v_m == printed.v_m);
                CHECK(m.v_n == printed.v_n);
                // the printed covariance carries the opposite sign
                CHECK(m.c == -printed.c);
                if (sgn(printed.c) != 0)
                    ++sign_flips;
                ++pairs;
                CHECK(m.v_m >= 0);
                CHECK(m.c * m.c <= m.v_m * m.v_n);
                if (d == 0) {
                    CHECK(m.e_n == 0);
                    CHECK(m.v_n == 0);
                    CHECK(m.c == 0);
                }
                // d and -q+1-d mirror the two carry signs
                MomentConstants mirror = moment_constants(build_S_qd(q, -q + 1 - d));
                CHECK(mirror.e_m == m.e_n);
                CHECK(mirror.v_m == m.v_n);
                CHECK(mirror.c == m.c);
            }
        CHECK(pairs == 77);
        CHECK(sign_flips == 55);
        CHECK(moment_constants(build_S_qd(3, -1)).c == frac(-17, 256));
    }

    TEST_CASE("covariance sign from exact distributions")
    {
        // the covariance of (M, N) decreases by about |c| per digit
        for (auto [q, d] : {std::pair{3, -1}, {5, -2}}) {
            CarryChain chain = qd_carry_chain(q, d);
            double step = moments(exact_distribution(chain, 31)).cov - moments(exact_distribution(chain, 30)).cov;
            MomentConstants m = moment_constants(chain.matrix);
            CHECK(step < 0);
            CHECK(step == doctest::Approx(to_double(m.c)).epsilon(1e-6));
        }
    }

    TEST_CASE("symmetric growth constants against the closed forms")
    {
        MomentConstants m2 = moment_constants(build_S_ssde(2));
        CHECK(m2.e_m == frac(1, 6));
        CHECK(m2.e_n == frac(1, 6));
        CHECK(m2.v_m == frac(37, 108));
        CHECK(m2.v_n == frac(37, 108));
        CHECK(m2.c == frac(-17, 108));
        for (int q = 2; q <= 12; q += 2) {
            MomentConstants m = moment_constants(build_S_ssde(q));
            CHECK(m == closed_forms::ssde_standard(q));
            CHECK(m.e_m == frac(q * q + 2 * q + 4, 8 * (q + 1) * (q + 1)));
        }
    }

    TEST_CASE("exact distributions equal the enumeration")
    {
        for (DigitSystem s : {DigitSystem::ssde(2), DigitSystem::ssde(4), DigitSystem::qd(5, -1)}) {
            CarryChain chain = s.is_ssde() ? ssde_carry_chain(s.base()) : qd_carry_chain(s.base(), s.offset());
            const std::size_t max_ell = s.base() == 2 ? 6 : 3;
            for (std::size_t ell = 0; ell <= max_ell; ++ell)
                CHECK(exact_distribution(chain, ell) == oracle::carry_distribution_bruteforce(s, ell));
        }
    }

    TEST_CASE("means grow linearly")
    {
        CarryChain chain = ssde_carry_chain(2);
        MomentConstants m = moment_constants(chain.matrix);
        Moments a = moments(exact_distribution(chain, 39));
        Moments b = moments(exact_distribution(chain, 40));
        CHECK(std::abs(b.mean_m - a.mean_m - to_double(m.e_m)) < 1e-3);
        CHECK(std::abs(b.mean_n - a.mean_n - to_double(m.e_n)) < 1e-3);
        CHECK(std::abs(b.var_m - a.var_m - to_double(m.v_m)) < 1e-3);
        CHECK(std::abs(b.cov - a.cov - to_double(m.c)) < 1e-3);
    }

    TEST_CASE("marginal shape")
    {
        CarryChain chain = qd_carry_chain(10, 0);
        JointDistribution d = exact_distribution(chain, 40);
        ShapeStatistics s = marginal_shape(d, 0);
        CHECK(s.mean == doctest::Approx(moments(d).mean_m));
        CHECK(s.variance == doctest::Approx(moments(d).var_m));
        CHECK(std::abs(s.skewness) < 0.02);
        CHECK(s.kolmogorov < 0.01);
        ShapeStatistics n = marginal_shape(d, 1);
        CHECK(n.variance == 0);

        JointDistribution point{{{3, 0}, 1}};
        CHECK(marginal_shape(point, 0).mean == 3);
    }
}
