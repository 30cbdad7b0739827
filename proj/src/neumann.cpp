#include "carrylab/neumann.hpp"

#include "carrylab/closed_forms.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_gamma.h>
#include <gsl/gsl_sf_psi.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace carrylab {

namespace {

// Neumaier summation.
struct Accumulator {
    double sum = 0, correction = 0;
    void add(double x)
    {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            correction += (sum - t) + x;
        else
            correction += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + correction; }
};

struct SparseEntry {
    std::size_t from, to;
    double weight;
};

struct FloatChain {
    std::size_t n = 0, initial = 0;
    std::vector<SparseEntry> solid, dotted, all;
    std::vector<double> base, deferred, total_exit;
};

FloatChain to_float(const RunLengthChain& c)
{
    FloatChain f;
    f.n = c.size();
    f.initial = c.initial;
    for (std::size_t i = 0; i < f.n; ++i)
        for (std::size_t j = 0; j < f.n; ++j) {
            double s = c.solid(i, j).get_d(), d = c.dotted(i, j).get_d();
            if (s != 0)
                f.solid.push_back({i, j, s});
            if (d != 0)
                f.dotted.push_back({i, j, d});
            if (s + d != 0)
                f.all.push_back({i, j, Rational(c.solid(i, j) + c.dotted(i, j)).get_d()});
        }
    for (std::size_t i = 0; i < f.n; ++i) {
        double b = c.exit_base[i].get_d(), d = c.exit_deferred[i].get_d();
        if (!c.end_correction) {
            b += d;
            d = 0;
        }
        f.base.push_back(b);
        f.deferred.push_back(d);
        f.total_exit.push_back(b + d);
    }
    return f;
}

// h[m] = (R + B)^m (exit_base + exit_deferred): weight of all continuations of length m.
// Once the vector stops changing it is stored only once.
class Continuations {
public:
    Continuations(const FloatChain& f, std::size_t max_len)
    {
        h_.push_back(f.total_exit);
        while (h_.size() <= max_len) {
            std::vector<double> next(f.n, 0.0);
            for (const auto& e : f.all)
                next[e.from] += e.weight * h_.back()[e.to];
            double change = 0;
            for (std::size_t i = 0; i < f.n; ++i)
                change = std::max(change, std::abs(next[i] - h_.back()[i]));
            h_.push_back(std::move(next));
            if (change == 0)
                break;
        }
    }
    const std::vector<double>& operator[](std::size_t m) const { return h_[std::min(m, h_.size() - 1)]; }

private:
    std::vector<std::vector<double>> h_;
};

RunSplit run_split(const FloatChain& f, const Continuations& h, std::size_t ell, std::size_t k)
{
    const std::size_t n = f.n;
    const std::size_t levels = std::min(k, ell + 1) + 1;
    std::vector<std::vector<double>> v(levels, std::vector<double>(n, 0.0));
    std::vector<std::vector<double>> next(levels, std::vector<double>(n, 0.0));
    std::vector<double> sum(n), out(n);
    v[0][f.initial] = 1.0;
    std::size_t top = 0;      // highest level of v with mass
    std::size_t next_top = 0; // highest level of `next` that may hold stale mass
    Accumulator failed;

    for (std::size_t step = 0; step < ell; ++step) {
        std::fill(sum.begin(), sum.end(), 0.0);
        for (std::size_t r = 0; r <= top; ++r)
            for (std::size_t i = 0; i < n; ++i)
                sum[i] += v[r][i];
        for (std::size_t r = 0; r <= next_top; ++r)
            std::fill(next[r].begin(), next[r].end(), 0.0);
        for (const auto& e : f.dotted)
            next[0][e.to] += sum[e.from] * e.weight;
        std::size_t new_top = 0;
        for (std::size_t r = 0; r <= top; ++r) {
            std::fill(out.begin(), out.end(), 0.0);
            bool any = false;
            for (const auto& e : f.solid) {
                double x = v[r][e.from];
                if (x != 0) {
                    out[e.to] += x * e.weight;
                    any = true;
                }
            }
            if (r + 1 < levels) {
                next[r + 1] = out;
                if (any)
                    new_top = r + 1;
            } else if (any) {
                const auto& cont = h[ell - step - 1];
                for (std::size_t j = 0; j < n; ++j)
                    if (out[j] != 0)
                        failed.add(out[j] * cont[j]);
            }
        }
        std::swap(v, next);
        next_top = std::min(top + 1, levels - 1);
        top = new_top;
    }

    Accumulator kept;
    for (std::size_t r = 0; r <= top; ++r)
        for (std::size_t i = 0; i < n; ++i) {
            if (v[r][i] == 0)
                continue;
            kept.add(v[r][i] * f.base[i]);
            if (r + 1 <= k)
                kept.add(v[r][i] * f.deferred[i]);
            else
                failed.add(v[r][i] * f.deferred[i]);
        }
    return {kept.value(), failed.value(), h[ell][f.initial]};
}

std::vector<Rational> exits_used(const RunLengthChain& c, bool deferred)
{
    std::vector<Rational> out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (!c.end_correction)
            out[i] = deferred ? Rational(0) : c.exit_base[i] + c.exit_deferred[i];
        else
            out[i] = deferred ? c.exit_deferred[i] : c.exit_base[i];
    }
    return out;
}

} // namespace

RunLengthChain RunLengthChain::ssde(int q)
{
    RunChainMatrices m = build_N_ssde(q);
    RunLengthChain c;
    c.q = q;
    c.solid = std::move(m.solid);
    c.dotted = std::move(m.dotted);
    c.exit_base = std::move(m.exit_base);
    c.exit_deferred = std::move(m.exit_deferred);
    c.initial = m.initial;
    return c;
}

Rational w_ell_exact(const RunLengthChain& c, std::size_t ell)
{
    RationalMatrix p = c.solid + c.dotted;
    RationalVector v(c.size(), Rational(0));
    v[c.initial] = 1;
    for (std::size_t step = 0; step < ell; ++step)
        v = v * p;
    Rational total = 0;
    for (std::size_t i = 0; i < c.size(); ++i)
        total += v[i] * (c.exit_base[i] + c.exit_deferred[i]);
    return total;
}

double w_ell(const RunLengthChain& c, std::size_t ell)
{
    FloatChain f = to_float(c);
    Continuations h(f, ell);
    return h[ell][f.initial];
}

Rational w_ell_k_exact(const RunLengthChain& c, std::size_t ell, std::size_t k)
{
    const std::size_t n = c.size();
    const std::size_t levels = k + 1;
    std::vector<RationalVector> v(levels, RationalVector(n, Rational(0)));
    v[0][c.initial] = 1;
    for (std::size_t step = 0; step < ell; ++step) {
        RationalVector sum(n, Rational(0));
        for (const auto& level : v)
            for (std::size_t i = 0; i < n; ++i)
                sum[i] += level[i];
        std::vector<RationalVector> next(levels);
        next[0] = sum * c.dotted;
        for (std::size_t r = 0; r + 1 < levels; ++r)
            next[r + 1] = v[r] * c.solid;
        v = std::move(next);
    }
    const auto base = exits_used(c, false), deferred = exits_used(c, true);
    Rational kept = 0;
    for (std::size_t r = 0; r < levels; ++r)
        for (std::size_t i = 0; i < n; ++i) {
            kept += v[r][i] * base[i];
            if (r + 1 <= k)
                kept += v[r][i] * deferred[i];
        }
    return kept;
}

RunSplit w_ell_k(const RunLengthChain& c, std::size_t ell, std::size_t k)
{
    FloatChain f = to_float(c);
    Continuations h(f, ell);
    return run_split(f, h, ell, k);
}

std::vector<Rational> run_cdf_exact(const RunLengthChain& c, std::size_t ell)
{
    const Rational total = w_ell_exact(c, ell);
    std::vector<Rational> cdf;
    for (std::size_t k = 0;; ++k) {
        cdf.push_back(w_ell_k_exact(c, ell, k) / total);
        if (cdf.back() == 1)
            return cdf;
        if (k > ell + 2)
            throw std::logic_error("run_cdf_exact: cdf does not reach 1");
    }
}

RunMoments exact_moments_t(const RunLengthChain& c, std::size_t ell)
{
    FloatChain f = to_float(c);
    Continuations h(f, ell);
    const double total = h[ell][f.initial];
    const double log_ell = std::log(std::max<double>(ell, 1)) / std::log(static_cast<double>(c.q));

    // Below k_low every w_lk / w_l is negligible (it is nondecreasing in k).
    std::size_t k_low = static_cast<std::size_t>(std::max(0.0, std::floor(log_ell) - 4));
    while (k_low > 0 && run_split(f, h, ell, k_low).kept / total > 1e-20)
        k_low = k_low > 4 ? k_low - 4 : 0;

    Accumulator mean, second;
    for (std::size_t k = 0; k < k_low; ++k) {
        mean.add(1.0);
        second.add(2.0 * k + 1);
    }
    std::size_t k = k_low;
    for (;; ++k) {
        RunSplit s = run_split(f, h, ell, k);
        double tail = s.failed / total;
        mean.add(tail);
        second.add((2.0 * k + 1) * tail);
        if (tail < 1e-18 && static_cast<double>(k) > log_ell)
            break;
        if (k > ell + 2)
            break;
    }
    RunMoments m;
    m.mean = mean.value();
    m.variance = second.value() - m.mean * m.mean;
    m.k_low = k_low;
    m.k_high = k;
    return m;
}

ExactRunMoments exact_moments_t_rational(const RunLengthChain& c, std::size_t ell)
{
    auto cdf = run_cdf_exact(c, ell);
    ExactRunMoments m;
    m.mean = 0;
    m.second_moment = 0;
    for (std::size_t k = 0; k < cdf.size(); ++k) {
        Rational tail = 1 - cdf[k];
        m.mean += tail;
        m.second_moment += Rational(2 * static_cast<long>(k) + 1) * tail;
    }
    m.variance = m.second_moment - m.mean * m.mean;
    return m;
}

NeumannAsymptotics neumann_asymptotics(int q, int harmonics)
{
    NeumannAsymptotics a;
    a.q = q;
    a.delta = closed_forms::neumann_delta(q);
    if (a.delta != closed_forms::neumann_s1(q, 1) / closed_forms::neumann_s0(q, 1))
        throw std::logic_error("neumann_asymptotics: the two expressions for delta disagree");
    a.log_q = std::log(static_cast<double>(q));
    gsl_set_error_handler_off();
    for (int k = 1; k <= harmonics; ++k) {
        const double y = -2 * std::numbers::pi * k / a.log_q;
        gsl_sf_result lnr, arg, re, im;
        gsl_sf_lngamma_complex_e(0.0, y, &lnr, &arg);
        std::complex<double> g = std::polar(std::exp(lnr.val), arg.val);
        gsl_sf_complex_psi_e(0.0, y, &re, &im);
        a.gamma.push_back(g);
        a.gamma_prime.push_back(g * std::complex<double>(re.val, im.val));
    }
    return a;
}

double psi0(const NeumannAsymptotics& a, double x)
{
    // The k and -k terms are complex conjugates.
    double sum = 0;
    for (std::size_t k = 0; k < a.gamma.size(); ++k) {
        std::complex<double> e = std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(k + 1) * x);
        sum += 2 * (a.gamma[k] * e).real();
    }
    return -sum / a.log_q;
}

double psi1(const NeumannAsymptotics& a, double x)
{
    double sum = 0;
    for (std::size_t k = 0; k < a.gamma_prime.size(); ++k) {
        std::complex<double> e = std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(k + 1) * x);
        sum += 2 * (a.gamma_prime[k] * e).real();
    }
    return 2 * sum / (a.log_q * a.log_q);
}

namespace {

double fluctuation_argument(const NeumannAsymptotics& a, double ell)
{
    return std::log(ell) / a.log_q + std::log(a.delta.get_d()) / a.log_q;
}

} // namespace

double asymptotic_expectation(const NeumannAsymptotics& a, double ell)
{
    const double x = fluctuation_argument(a, ell);
    return x + std::numbers::egamma / a.log_q + 2.5 + psi0(a, x);
}

double asymptotic_variance(const NeumannAsymptotics& a, double ell)
{
    const double x = fluctuation_argument(a, ell);
    const double p0 = psi0(a, x);
    return std::numbers::pi * std::numbers::pi / (6 * a.log_q * a.log_q) + 1.0 / 12 + psi1(a, x) -
           2 * std::numbers::egamma / a.log_q * p0 - p0 * p0;
}

DistributionPoint distribution_check(const RunLengthChain& c, const NeumannAsymptotics& a, std::size_t ell,
                                     std::size_t k)
{
    if (k < 2)
        throw std::invalid_argument("distribution_check: k counts iterations and must be at least 2");
    RunSplit s = w_ell_k(c, ell, k - 2);
    DistributionPoint p;
    p.exact = s.kept / s.total;
    p.predicted = std::exp(-a.delta.get_d() * static_cast<double>(ell) / std::pow(a.q, static_cast<double>(k - 2)));
    return p;
}

} // namespace carrylab
