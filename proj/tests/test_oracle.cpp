#include "carrylab/oracle.hpp"
#include "carrylab/markov.hpp"

#include <doctest.h>

#include "support.hpp"

#include <stdexcept>

using namespace carrylab;

namespace {

Rational total(const JointDistribution& d)
{
    Rational s = 0;
    for (const auto& [key, p] : d)
        s += p;
    return s;
}

} // namespace

TEST_SUITE("oracle")
{
    TEST_CASE("single decimal digits, counted by hand")
    {
        JointDistribution d = oracle::carry_distribution_bruteforce(DigitSystem::qd(10, 0), 1);
        CHECK(d.size() == 2);
        CHECK(d.at({1, 0}) == frac(9, 20));
        CHECK(d.at({0, 0}) == frac(11, 20));

        auto t = oracle::neumann_distribution_bruteforce(DigitSystem::qd(10, 0), 1);
        CHECK(t.at(0) == frac(1, 10));
        CHECK(t.at(1) == frac(9, 20));
        CHECK(t.at(2) == frac(9, 20));
    }

    TEST_CASE("single digits with d = -1, q = 3")
    {
        // digits -1, 0, 1: carry -1 only from -1 + -1, carry 1 from 1 + 1
        JointDistribution d = oracle::carry_distribution_bruteforce(DigitSystem::qd(3, -1), 1);
        CHECK(d.at({0, 1}) == frac(1, 9));
        CHECK(d.at({1, 0}) == frac(1, 9));
        CHECK(d.at({0, 0}) == frac(7, 9));
    }

    TEST_CASE("empty words")
    {
        // the empty word weighs 1 for (q,d)-systems and (q+1)/(q+2) for symmetric ones
        for (auto [s, w] : {std::pair{DigitSystem::qd(10, 0), Rational(1)},
                            std::pair{DigitSystem::ssde(4), frac(25, 36)}}) {
            JointDistribution d = oracle::carry_distribution_bruteforce(s, 0);
            CHECK(d.size() == 1);
            CHECK(d.at({0, 0}) == w);
            auto t = oracle::neumann_distribution_bruteforce(s, 0);
            CHECK(t.size() == 1);
            CHECK(t.at(0) == w);
        }
    }

    TEST_CASE("total mass is the squared total word weight")
    {
        for (DigitSystem s : {DigitSystem::ssde(2), DigitSystem::ssde(4), DigitSystem::qd(5, -2)}) {
            ParryWeights pw = system_weights(s);
            for (std::size_t ell = 1; ell <= 3; ++ell) {
                Rational words = 0;
                for (const Digits& x : enumerate_words(s, ell))
                    words += word_weight(pw, x);
                if (!s.is_ssde())
                    CHECK(words == 1);
                CHECK(total(oracle::carry_distribution_bruteforce(s, ell)) == words * words);
                Rational t = 0;
                for (const auto& [k, p] : oracle::neumann_distribution_bruteforce(s, ell))
                    t += p;
                CHECK(t == words * words);
            }
        }
    }

    TEST_CASE("sign symmetry")
    {
        // negating both summands swaps the roles of the two carry signs
        for (DigitSystem s : {DigitSystem::ssde(2), DigitSystem::ssde(6)}) {
            JointDistribution d = oracle::carry_distribution_bruteforce(s, 3);
            for (const auto& [key, p] : d)
                CHECK(d.at({key.second, key.first}) == p);
        }
        JointDistribution a = oracle::carry_distribution_bruteforce(DigitSystem::qd(5, -1), 3);
        JointDistribution b = oracle::carry_distribution_bruteforce(DigitSystem::qd(5, -3), 3);
        for (const auto& [key, p] : a)
            CHECK(b.at({key.second, key.first}) == p);
    }

    TEST_CASE("worker count does not change the result")
    {
        const DigitSystem s = DigitSystem::ssde(4);
        CHECK(oracle::carry_distribution_bruteforce(s, 3, 1) == oracle::carry_distribution_bruteforce(s, 3, 3));
        CHECK(oracle::neumann_distribution_bruteforce(s, 3, 1) == oracle::neumann_distribution_bruteforce(s, 3, 4));
    }

    TEST_CASE("size guard")
    {
        CHECK_THROWS_AS(oracle::carry_distribution_bruteforce(DigitSystem::qd(10, 0), 8), std::length_error);
        CHECK_THROWS_AS(oracle::neumann_distribution_bruteforce(DigitSystem::ssde(12), 6), std::length_error);
    }
}
