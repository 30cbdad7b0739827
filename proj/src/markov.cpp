#include "carrylab/markov.hpp"

#include "carrylab/machines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

namespace carrylab {

namespace {

RationalMatrix adjacency_matrix(const WeightedTransducer& m)
{
    RationalMatrix a(m.size());
    for (const auto& t : m.transitions())
        a(t.from, t.to) += 1;
    return a;
}

// Positive vector spanning a one-dimensional null space, scaled so that entry `pin` is 1.
std::optional<RationalVector> positive_kernel(const RationalMatrix& m, std::size_t pin)
{
    auto basis = null_space(m);
    if (basis.size() != 1)
        return std::nullopt;
    RationalVector v = basis.front();
    if (sgn(v[pin]) == 0)
        return std::nullopt;
    Rational scale = 1 / v[pin];
    for (auto& x : v) {
        x *= scale;
        if (sgn(x) <= 0)
            return std::nullopt;
    }
    return v;
}

std::vector<double> power_iteration(const std::vector<std::vector<double>>& a, double& lambda)
{
    const std::size_t n = a.size();
    std::vector<double> x(n, 1.0), y(n);
    lambda = 0;
    for (int iter = 0; iter < 100000; ++iter) {
        // iterate with A + I: same eigenvectors, and no trouble from periodic parts
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = x[i];
            for (std::size_t j = 0; j < n; ++j)
                y[i] += a[i][j] * x[j];
        }
        double norm = *std::max_element(y.begin(), y.end());
        double change = 0;
        for (std::size_t i = 0; i < n; ++i) {
            y[i] /= norm;
            change = std::max(change, std::abs(y[i] - x[i]));
        }
        x.swap(y);
        lambda = norm - 1;
        if (change < 1e-14)
            break;
    }
    return x;
}

double deflated_ratio(const std::vector<std::vector<double>>& a, const std::vector<double>& w,
                      const std::vector<double>& u, double lambda)
{
    const std::size_t n = a.size();
    std::vector<std::vector<double>> d = a;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            d[i][j] -= lambda * w[i] * u[j];
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = 1.0 + 0.37 * static_cast<double>(i) + 0.011 * static_cast<double>(i * i);
    double log_growth = 0;
    int counted = 0;
    const int iterations = 600;
    for (int iter = 0; iter < iterations; ++iter) {
        double norm = 0;
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = 0;
            for (std::size_t j = 0; j < n; ++j)
                y[i] += d[i][j] * x[j];
            norm = std::max(norm, std::abs(y[i]));
        }
        if (norm < 1e-300)
            return 0;
        if (iter >= iterations - 200) {
            log_growth += std::log(norm);
            ++counted;
        }
        for (std::size_t i = 0; i < n; ++i)
            x[i] = y[i] / norm;
    }
    double radius = std::exp(log_growth / counted);
    return radius < 1e-12 * lambda ? 0 : radius / lambda;
}

} // namespace

ParryWeights shannon_parry(const WeightedTransducer& m)
{
    GraphChecks checks = adjacency_and_checks(m);
    if (!checks.strongly_connected || !checks.aperiodic)
        throw std::invalid_argument("shannon_parry needs a strongly connected aperiodic automaton");
    const std::size_t n = m.size();
    const std::size_t init = m.initial();
    RationalMatrix a = adjacency_matrix(m);

    ParryWeights pw;
    pw.automaton = m;

    long min_row = std::numeric_limits<long>::max();
    long max_row = 0;
    for (const auto& row : checks.adjacency) {
        long sum = 0;
        for (long v : row)
            sum += v;
        min_row = std::min(min_row, sum);
        max_row = std::max(max_row, sum);
    }
    // The Perron root lies between the smallest and largest row sums, and it is the
    // only eigenvalue with a positive eigenvector.
    for (long cand = max_row; cand >= std::max(1L, min_row) && !pw.exact; --cand) {
        RationalMatrix shifted = a;
        for (std::size_t i = 0; i < n; ++i)
            shifted(i, i) -= cand;
        auto w = positive_kernel(shifted, init);
        if (!w)
            continue;
        auto u = positive_kernel(shifted.transposed(), init);
        if (!u)
            continue;
        Rational uw = 0;
        for (std::size_t i = 0; i < n; ++i)
            uw += (*u)[i] * (*w)[i];
        for (auto& x : *u)
            x /= uw;
        pw.exact = true;
        pw.lambda = cand;
        pw.w = *w;
        pw.u = *u;
    }

    std::vector<std::vector<double>> af(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            af[i][j] = static_cast<double>(checks.adjacency[i][j]);

    if (pw.exact) {
        pw.u_final = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (m.is_final(i))
                pw.u_final += pw.u[i];
        pw.exit.assign(n, Rational(0));
        pw.stationary.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (m.is_final(i))
                pw.exit[i] = 1 / (pw.w[i] * pw.u_final);
            pw.stationary[i] = pw.u[i] * pw.w[i];
        }
        for (const auto& t : m.transitions())
            pw.p.push_back(pw.w[t.to] / (pw.w[t.from] * pw.lambda));

        pw.lambda_f = pw.lambda.get_d();
        for (std::size_t i = 0; i < n; ++i) {
            pw.w_f.push_back(pw.w[i].get_d());
            pw.u_f.push_back(pw.u[i].get_d());
            pw.exit_f.push_back(pw.exit[i].get_d());
            pw.stationary_f.push_back(pw.stationary[i].get_d());
        }
        for (const auto& p : pw.p)
            pw.p_f.push_back(p.get_d());
        pw.residual = 0;
    } else {
        double lambda = 0;
        std::vector<double> w = power_iteration(af, lambda);
        std::vector<std::vector<double>> at(n, std::vector<double>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                at[i][j] = af[j][i];
        double lambda_left = 0;
        std::vector<double> u = power_iteration(at, lambda_left);
        double w0 = w[init];
        for (auto& x : w)
            x /= w0;
        double uw = 0;
        for (std::size_t i = 0; i < n; ++i)
            uw += u[i] * w[i];
        for (auto& x : u)
            x /= uw;
        pw.lambda_f = lambda;
        pw.w_f = w;
        pw.u_f = u;
        double u_final = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (m.is_final(i))
                u_final += u[i];
        for (std::size_t i = 0; i < n; ++i) {
            pw.exit_f.push_back(m.is_final(i) ? 1 / (w[i] * u_final) : 0.0);
            pw.stationary_f.push_back(u[i] * w[i]);
        }
        for (const auto& t : m.transitions())
            pw.p_f.push_back(w[t.to] / (w[t.from] * lambda));
        double residual = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double r = -lambda * w[i];
            for (std::size_t j = 0; j < n; ++j)
                r += af[i][j] * w[j];
            residual = std::max(residual, std::abs(r));
        }
        pw.residual = residual;
        if (residual > 1e-12 * std::max(1.0, lambda))
            throw std::runtime_error("power iteration did not reach the required residual");
    }

    pw.xi = deflated_ratio(af, pw.w_f, pw.u_f, pw.lambda_f);

    auto& ts = pw.automaton.transitions();
    for (std::size_t k = 0; k < ts.size(); ++k)
        ts[k].weight = pw.exact ? pw.p[k] : Rational(pw.p_f[k]);
    for (std::size_t i = 0; i < n; ++i)
        pw.automaton.set_exit_weight(i, pw.exact ? pw.exit[i] : Rational(pw.exit_f[i]));
    return pw;
}

ParryWeights system_weights(const DigitSystem& system) { return shannon_parry(digit_automaton(system)); }

Rational word_weight(const ParryWeights& pw, std::span<const int> word)
{
    if (!pw.exact)
        throw std::logic_error("word_weight needs exact weights");
    const auto& m = pw.automaton;
    auto out = m.outgoing();
    std::size_t state = m.initial();
    Rational weight = 1;
    for (int letter : word) {
        const Transition* step = nullptr;
        for (std::size_t k : out[state])
            if (m.transitions()[k].input == letter)
                step = &m.transitions()[k];
        if (!step)
            throw DomainError("word is not accepted by the automaton");
        weight *= step->weight;
        state = step->to;
    }
    if (!m.is_final(state))
        throw DomainError("word is not accepted by the automaton");
    return weight * m.exit_weight(state);
}

BigInt count_words(const WeightedTransducer& m, std::size_t length)
{
    std::vector<BigInt> v(m.size(), 0);
    v[m.initial()] = 1;
    for (std::size_t step = 0; step < length; ++step) {
        std::vector<BigInt> next(m.size(), 0);
        for (const auto& t : m.transitions())
            next[t.to] += v[t.from];
        v = std::move(next);
    }
    BigInt total = 0;
    for (std::size_t s = 0; s < m.size(); ++s)
        if (m.is_final(s))
            total += v[s];
    return total;
}

WordSampler::WordSampler(const ParryWeights& pw)
{
    const auto& m = pw.automaton;
    choices_.resize(m.size());
    initial_ = m.initial();
    const auto& ts = m.transitions();
    for (std::size_t k = 0; k < ts.size(); ++k) {
        auto& list = choices_[ts[k].from];
        double before = list.empty() ? 0.0 : list.back().cumulative;
        list.push_back({before + pw.p_f[k], *ts[k].input, ts[k].to});
    }
    for (auto& list : choices_)
        if (!list.empty())
            list.back().cumulative = 2.0; // absorb rounding in the last bucket
}

Digits WordSampler::sample(std::size_t length, Rng& rng) const
{
    Digits word(length);
    std::size_t state = initial_;
    for (std::size_t j = 0; j < length; ++j) {
        double u = rng.uniform();
        const auto& list = choices_[state];
        std::size_t k = 0;
        while (list[k].cumulative <= u)
            ++k;
        word[j] = list[k].label;
        state = list[k].to;
    }
    return word;
}

Digits sample_word(const ParryWeights& pw, std::size_t length, std::uint64_t seed)
{
    Rng rng(seed);
    return WordSampler(pw).sample(length, rng);
}

} // namespace carrylab
