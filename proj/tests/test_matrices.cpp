#include "carrylab/matrices.hpp"

#include <doctest.h>

#include "support.hpp"

#include <random>

using namespace carrylab;

namespace {

long brute_N(long xa, long xb, long ya, long yb, long sa, long sb)
{
    long n = 0;
    for (long x = xa; x <= xb; ++x)
        for (long y = ya; y <= yb; ++y)
            if (x + y >= sa && x + y <= sb)
                ++n;
    return n;
}

long clip(const Bound& b, long inf)
{
    if (b.kind == Bound::Kind::minus_infinity)
        return -inf;
    if (b.kind == Bound::Kind::plus_infinity)
        return inf;
    return b.value;
}

CarryPolynomial mono(int a, int b, long num, long den) { return carry_monomial(a, b, frac(num, den)); }

bool rows_sum_to_one(const RationalMatrix& solid, const RationalMatrix& dotted)
{
    auto a = solid.row_sums(), b = dotted.row_sums();
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] + b[i] != 1)
            return false;
    return true;
}

} // namespace

TEST_SUITE("matrices")
{
    TEST_CASE("counting lattice points")
    {
        const Bound inf = Bound::plus_infinity();
        CHECK(count_N(0, inf, 0, inf, 0, 2) == 6);
        CHECK(count_N(0, inf, 0, inf, 0, 9) == 55);
        CHECK(count_N(0, 9, 0, 9, 10, inf) == 45);
        CHECK(count_N(-1, 3, -1, 3, 0, 1) == 7);
        CHECK(count_N(-1, 3, -1, 3, 2, 1) == 0);
        CHECK(count_N(3, 1, 0, 5, 0, 10) == 0);
        CHECK(count_N(Bound::minus_infinity(), 0, Bound::minus_infinity(), 0, -3, inf) == 10);
        CHECK_THROWS_AS(count_N(0, inf, 0, inf, 0, inf), DomainError);
    }

    TEST_CASE("counting agrees with enumeration on random boxes")
    {
        std::mt19937_64 gen(17);
        std::uniform_int_distribution<long> value(-6, 6);
        std::uniform_int_distribution<int> kind(0, 9);
        auto bound = [&](bool upper) {
            if (kind(gen) == 0)
                return upper ? Bound::plus_infinity() : Bound::minus_infinity();
            return Bound(value(gen));
        };
        int finite = 0;
        for (int trial = 0; trial < 1000; ++trial) {
            Bound b[6] = {bound(false), bound(true), bound(false), bound(true), bound(false), bound(true)};
            auto brute = [&](long inf) {
                return brute_N(clip(b[0], inf), clip(b[1], inf), clip(b[2], inf), clip(b[3], inf), clip(b[4], 4 * inf),
                               clip(b[5], 4 * inf));
            };
            try {
                BigInt n = count_N(b[0], b[1], b[2], b[3], b[4], b[5]);
                CHECK(n == brute(40));
                ++finite;
            } catch (const DomainError&) {
                CHECK(brute(40) != brute(60));
            }
        }
        CHECK(finite > 900);
    }

    TEST_CASE("(q,d) matrix, sample entries")
    {
        PolyMatrix s = build_S_qd(10, 0);
        CHECK(s(0, 0) == mono(0, 1, 1, 100));
        CHECK(s(1, 2) == mono(1, 0, 9, 20));
        CHECK(s(1, 1) == mono(0, 0, 11, 20));
        CHECK(build_S_qd(5, -1)(1, 0) == mono(0, 1, 1, 25)); // only -1 + -1 from {-1..3}
        for (auto [q, d] : {std::pair{2, -1}, {5, -1}, {10, 0}, {10, -9}, {12, -5}})
            CHECK(build_S_qd(q, d).rows_stochastic());
    }

    TEST_CASE("(q,d) matrix: counting, composition and table agree")
    {
        int compared = 0;
        for (int q = 2; q <= 12; ++q)
            for (int d = -q + 1; d <= 0; ++d) {
                PolyMatrix counted = build_S_qd(q, d);
                CHECK(counted == reference_tables::table_S_qd(q, d));
                CarryChain chain = qd_carry_chain(q, d);
                CHECK(chain.matrix.rows_stochastic());
                // the composition may drop unreachable carry states; compare by label
                for (std::size_t i = 0; i < chain.matrix.size(); ++i)
                    for (std::size_t j = 0; j < chain.matrix.size(); ++j) {
                        std::size_t a = 0, b = 0;
                        for (std::size_t k = 0; k < 3; ++k) {
                            if (counted.labels[k] == chain.matrix.labels[i])
                                a = k;
                            if (counted.labels[k] == chain.matrix.labels[j])
                                b = k;
                        }
                        CHECK(chain.matrix(i, j) == counted(a, b));
                    }
                ++compared;
            }
        CHECK(compared == 77);
    }

    TEST_CASE("symmetric matrix, sample entries")
    {
        PolyMatrix s = build_S_ssde(8);
        CHECK(s.size() == 14);
        CHECK(s(0, 0) == mono(0, 0, 37, 64));
        CHECK(s(1, 0) == mono(0, 0, 1, 1));
        for (int q : {2, 4, 6, 8, 10, 12})
            CHECK(build_S_ssde(q).rows_stochastic());
        CHECK(build_S_ssde(2).size() == 11);
    }

    TEST_CASE("symmetric matrix matches the reference table")
    {
        for (int q = 4; q <= 12; q += 2) {
            CarryChain chain = ssde_carry_chain(q);
            REQUIRE(chain.printed_order);
            CHECK(chain.matrix == reference_tables::table_S_ssde(q));
            CHECK(chain.initial == 0);
        }
        CHECK_FALSE(ssde_carry_chain(2).printed_order);
    }

    TEST_CASE("run-length matrices, sample entries")
    {
        RunChainMatrices n6 = build_N_ssde(6);
        REQUIRE(n6.printed_order);
        CHECK(n6.solid(5, 0) == frac(1, 72));
        CHECK(n6.dotted(0, 8) == 1);
        for (int q : {2, 4, 6, 8, 10, 12})
            CHECK(rows_sum_to_one(build_N_ssde(q).solid, build_N_ssde(q).dotted));
        CHECK(build_N_ssde(2).solid.size() == 7);
        CHECK(build_N_ssde(4).solid.size() == 11);
    }

    TEST_CASE("run-length matrices match the reference tables")
    {
        for (int q = 6; q <= 12; q += 2) {
            RunChainMatrices n = build_N_ssde(q);
            REQUIRE(n.printed_order);
            CHECK(n.solid == reference_tables::table_N_solid(q));
            CHECK(n.dotted == reference_tables::table_N_dotted(q));
            // the printed "8z" only fits as the plain count 8
            CHECK_FALSE(n.dotted == reference_tables::table_N_dotted(q, 2));
            std::vector<Rational> exit(12);
            for (std::size_t i = 0; i < 12; ++i)
                exit[i] = n.exit_base[i] + n.exit_deferred[i];
            CHECK(exit == reference_tables::table_N_exit(q));
            // deferred exits sit on the classes of states 2 and 7
            for (std::size_t i = 0; i < 12; ++i)
                CHECK((sgn(n.exit_deferred[i]) != 0) == (i == 3 || i == 5));
        }
    }
}
