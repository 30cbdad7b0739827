#include "carrylab/closed_forms.hpp"
#include "carrylab/neumann.hpp"
#include "carrylab/oracle.hpp"
#include "carrylab/simulate.hpp"

#include <doctest.h>

#include "support.hpp"

#include <cmath>
#include <numbers>

using namespace carrylab;

TEST_SUITE("neumann")
{
    TEST_CASE("chain structure")
    {
        for (int q : {2, 4, 6, 8}) {
            RunLengthChain c = RunLengthChain::ssde(q);
            auto a = c.solid.row_sums(), b = c.dotted.row_sums();
            for (std::size_t i = 0; i < c.size(); ++i)
                CHECK(a[i] + b[i] == 1);
            int deferred = 0;
            for (const auto& e : c.exit_deferred)
                deferred += sgn(e) != 0;
            // for small q the two classes may merge
            CHECK(deferred >= 1);
            CHECK(deferred <= 2);
            if (q >= 6)
                CHECK(deferred == 2);
        }
    }

    TEST_CASE("empty words and long runs")
    {
        for (int q : {2, 4, 6}) {
            RunLengthChain c = RunLengthChain::ssde(q);
            CHECK(w_ell_exact(c, 0) == frac((q + 1) * (q + 1), (q + 2) * (q + 2)));
            for (std::size_t ell : {1, 3, 6})
                for (std::size_t k = ell; k <= ell + 2; ++k)
                    CHECK(w_ell_k_exact(c, ell, k) == w_ell_exact(c, ell));
        }
    }

    TEST_CASE("run distribution equals the enumeration")
    {
        for (int q : {2, 4}) {
            const DigitSystem s = DigitSystem::ssde(q);
            RunLengthChain c = RunLengthChain::ssde(q);
            const std::size_t max_ell = q == 2 ? 5 : 4;
            for (std::size_t ell = 0; ell <= max_ell; ++ell) {
                auto brute = oracle::neumann_distribution_bruteforce(s, ell);
                Rational total = 0;
                for (const auto& [t, p] : brute)
                    total += p;
                CHECK(w_ell_exact(c, ell) == total);
                for (std::size_t k = 0; k <= ell + 1; ++k) {
                    Rational below = 0;
                    for (const auto& [t, p] : brute)
                        if (t <= static_cast<int>(k) + 2)
                            below += p;
                    CHECK(w_ell_k_exact(c, ell, k) == below);
                }
            }
        }
    }

    TEST_CASE("floating and exact evaluation agree")
    {
        RunLengthChain c = RunLengthChain::ssde(4);
        for (std::size_t ell : {5, 40})
            for (std::size_t k : {0, 2, 5}) {
                RunSplit split = w_ell_k(c, ell, k);
                CHECK(split.kept == doctest::Approx(to_double(w_ell_k_exact(c, ell, k))).epsilon(1e-12));
                CHECK(split.total == doctest::Approx(to_double(w_ell_exact(c, ell))).epsilon(1e-12));
                CHECK(split.failed == doctest::Approx(split.total - split.kept).epsilon(1e-9));
            }
        ExactRunMoments exact = exact_moments_t_rational(c, 30);
        RunMoments fl = exact_moments_t(c, 30);
        CHECK(fl.mean == doctest::Approx(to_double(exact.mean)).epsilon(1e-12));
        CHECK(fl.variance == doctest::Approx(to_double(exact.variance)).epsilon(1e-9));
    }

    TEST_CASE("moments at length one equal the enumeration")
    {
        for (int q : {2, 4}) {
            auto brute = oracle::neumann_distribution_bruteforce(DigitSystem::ssde(q), 1);
            Rational total = 0, mean = 0;
            for (const auto& [t, p] : brute) {
                total += p;
                mean += p * std::max(t - 2, 0);
            }
            CHECK(exact_moments_t_rational(RunLengthChain::ssde(q), 1).mean == mean / total);
        }
    }

    TEST_CASE("monotonicity")
    {
        RunLengthChain c = RunLengthChain::ssde(2);
        auto cdf = run_cdf_exact(c, 12);
        for (std::size_t k = 1; k < cdf.size(); ++k)
            CHECK(cdf[k - 1] <= cdf[k]);
        CHECK(cdf.back() == 1);
        // fixed k: longer words make long runs likelier
        for (std::size_t ell = 10; ell < 16; ++ell)
            CHECK(w_ell_k_exact(c, ell + 1, 3) / w_ell_exact(c, ell + 1) <= w_ell_k_exact(c, ell, 3) / w_ell_exact(c, ell));
        double previous = 0;
        for (std::size_t ell = 10; ell <= 1000; ell = ell * 3 / 2) {
            double mean = exact_moments_t(c, ell).mean;
            CHECK(mean >= previous);
            previous = mean;
        }
    }

    TEST_CASE("logarithmic growth of the mean")
    {
        RunLengthChain c = RunLengthChain::ssde(2);
        double diff = exact_moments_t(c, 10000).mean - exact_moments_t(c, 1000).mean;
        CHECK(std::abs(diff - std::log2(10.0)) < 0.05);
    }

    TEST_CASE("the end correction matters")
    {
        RunLengthChain with = RunLengthChain::ssde(4);
        RunLengthChain without = with;
        without.end_correction = false;
        bool differs = false;
        for (std::size_t ell = 1; ell <= 6; ++ell)
            for (std::size_t k = 0; k <= ell; ++k)
                differs = differs || w_ell_k_exact(with, ell, k) != w_ell_k_exact(without, ell, k);
        CHECK(differs);
        CHECK(w_ell_exact(with, 5) == w_ell_exact(without, 5));
    }

    TEST_CASE("asymptotic constants")
    {
        NeumannAsymptotics a = neumann_asymptotics(2);
        CHECK(a.delta == frac(13, 126));
        CHECK(closed_forms::neumann_delta(2) == frac(13, 126));
        for (int q = 2; q <= 12; q += 2)
            CHECK(closed_forms::neumann_delta(q) ==
                  closed_forms::neumann_s1(q, Rational(1)) / closed_forms::neumann_s0(q, Rational(1)));
        for (std::size_t k = 1; k < a.gamma.size(); ++k)
            CHECK(std::abs(a.gamma[k]) < std::abs(a.gamma[k - 1]));
        // |Gamma(iy)|^2 = pi / (y sinh(pi y))
        const double y = 2 * std::numbers::pi / std::log(2.0);
        CHECK(std::abs(a.gamma[0]) == doctest::Approx(std::sqrt(std::numbers::pi / (y * std::sinh(std::numbers::pi * y)))).epsilon(1e-9));
        double amplitude = 0;
        for (int i = 0; i < 100; ++i)
            amplitude = std::max(amplitude, std::abs(psi0(a, i / 100.0)));
        CHECK(amplitude < 1e-4);
        const double l2 = std::log(2.0);
        const double constant = std::numbers::pi * std::numbers::pi / (6 * l2 * l2) + 1.0 / 12;
        CHECK(constant == doctest::Approx(3.5071).epsilon(1e-4));
        CHECK(std::abs(asymptotic_variance(a, 1e6) - constant) < 1e-3);
    }

    TEST_CASE("asymptotic mean against the chain")
    {
        RunLengthChain c = RunLengthChain::ssde(2);
        NeumannAsymptotics a = neumann_asymptotics(2);
        double previous = 1;
        for (std::size_t ell : {100, 1000, 10000}) {
            RunMoments m = exact_moments_t(c, ell);
            double err = std::abs(m.mean + 2 - asymptotic_expectation(a, ell));
            CHECK(err < previous);
            previous = err;
        }
        CHECK(previous < 1e-3);
    }

    TEST_CASE("limit law")
    {
        RunLengthChain c = RunLengthChain::ssde(2);
        NeumannAsymptotics a = neumann_asymptotics(2);
        DistributionPoint p = distribution_check(c, a, 4096, 14);
        CHECK(p.predicted == doctest::Approx(std::exp(-13.0 / 126)).epsilon(1e-12));
        CHECK(p.predicted == doctest::Approx(0.9019).epsilon(1e-3));
        CHECK(std::abs(p.exact - p.predicted) < 0.02);
        DistributionPoint far = distribution_check(c, a, 20, 30);
        CHECK(far.exact == 1);
        CHECK(far.predicted == doctest::Approx(1.0).epsilon(1e-6));
        // along l = 2^j the whole profile approaches the double exponential
        double previous = 1;
        for (std::size_t j : {8, 11, 14}) {
            double worst = 0;
            for (std::size_t k = j; k <= j + 4; ++k) {
                DistributionPoint q = distribution_check(c, a, std::size_t{1} << j, k);
                worst = std::max(worst, std::abs(q.exact - q.predicted));
            }
            CHECK(worst < previous);
            previous = worst;
        }
    }

    TEST_CASE("simulated iteration counts follow the chain")
    {
        for (int q : {2, 4}) {
            SimulationConfig cfg;
            cfg.system = DigitSystem::ssde(q);
            cfg.ell = 100;
            cfg.trials = 100000;
            cfg.seed = 99;
            cfg.mode = AdderMode::neumann;
            SimulationResult r = simulate(cfg);
            RunLengthChain c = RunLengthChain::ssde(q);
            auto cdf = run_cdf_exact(c, 100);
            const double n = static_cast<double>(cfg.trials);
            std::size_t below = 0;
            for (std::size_t k = 0; k < 10; ++k) {
                auto it = r.t_histogram.find(static_cast<int>(k) + 2);
                below += it == r.t_histogram.end() ? 0 : it->second;
                if (k == 0) {
                    for (int t : {0, 1})
                        if (auto z = r.t_histogram.find(t); z != r.t_histogram.end())
                            below += z->second;
                }
                const double p = to_double(cdf[std::min(k, cdf.size() - 1)]);
                const double sigma = std::sqrt(n * p * (1 - p));
                CHECK(std::abs(static_cast<double>(below) - n * p) <= 3 * sigma + 1e-9);
            }
        }
    }
}
