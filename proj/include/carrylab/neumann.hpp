#pragma once

#include "carrylab/exact.hpp"
#include "carrylab/matrices.hpp"

#include <complex>
#include <utility>
#include <vector>

namespace carrylab {

// Lumped run chain of von Neumann addition for SSDEs: solid and dotted parts, with
// exit weights split into the part that needs one more solid edge (exit_deferred).
struct RunLengthChain {
    int q = 0;
    RationalMatrix solid;
    RationalMatrix dotted;
    std::vector<Rational> exit_base;
    std::vector<Rational> exit_deferred;
    std::size_t initial = 0;
    // false: treat deferred exits like ordinary ones (the extra solid edge is ignored)
    bool end_correction = true;

    static RunLengthChain ssde(int q);
    std::size_t size() const { return exit_base.size(); }
};

// w_l: total weight of all pairs of length l.
Rational w_ell_exact(const RunLengthChain& chain, std::size_t ell);
double w_ell(const RunLengthChain& chain, std::size_t ell);

// w_lk: weight of the pairs whose longest solid run is at most k, i.e. t - 2 <= k.
Rational w_ell_k_exact(const RunLengthChain& chain, std::size_t ell, std::size_t k);

struct RunSplit {
    double kept = 0;   // w_lk
    double failed = 0; // w_l - w_lk, summed from the failing paths directly
    double total = 0;  // w_l
};
RunSplit w_ell_k(const RunLengthChain& chain, std::size_t ell, std::size_t k);

// cdf[k] = w_lk / w_l for k = 0, ..., until it reaches 1.
std::vector<Rational> run_cdf_exact(const RunLengthChain& chain, std::size_t ell);

struct RunMoments {
    double mean = 0;     // of max(t - 2, 0)
    double variance = 0;
    std::size_t k_low = 0, k_high = 0; // range evaluated by the DP
};
RunMoments exact_moments_t(const RunLengthChain& chain, std::size_t ell);

struct ExactRunMoments {
    Rational mean, second_moment, variance;
};
ExactRunMoments exact_moments_t_rational(const RunLengthChain& chain, std::size_t ell);

struct NeumannAsymptotics {
    int q = 0;
    Rational delta;
    double log_q = 0;
    // Fourier coefficients for harmonics k = 1..K: Gamma(chi_k) and Gamma'(chi_k),
    // chi_k = -2 k pi i / log q.
    std::vector<std::complex<double>> gamma, gamma_prime;
};

NeumannAsymptotics neumann_asymptotics(int q, int harmonics = 10);
double psi0(const NeumannAsymptotics& a, double x);
double psi1(const NeumannAsymptotics& a, double x);
// Main terms for the iteration count t itself.
double asymptotic_expectation(const NeumannAsymptotics& a, double ell);
double asymptotic_variance(const NeumannAsymptotics& a, double ell);

struct DistributionPoint {
    double exact = 0;     // P(t <= k) from the chain
    double predicted = 0; // exp(-delta l / q^(k-2))
};
// k counts iterations (k >= 2).
DistributionPoint distribution_check(const RunLengthChain& chain, const NeumannAsymptotics& a, std::size_t ell,
                                     std::size_t k);

} // namespace carrylab
