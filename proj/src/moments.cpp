#include "carrylab/moments.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace carrylab {

namespace {

using IntPoly = SparsePoly<3, BigInt>;

BigInt common_denominator(const PolyMatrix& a)
{
    BigInt den = 1;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            for (const auto& [e, c] : a(i, j).terms())
                den = lcm(den, c.get_den());
    return den;
}

} // namespace

TriPolynomial char_det(const PolyMatrix& a)
{
    const std::size_t n = a.size();
    if (n > 20)
        throw std::invalid_argument("char_det: matrix too large for subset expansion");
    // Work over the integers: I - zA = I - w (D A) with w = z / D.
    const BigInt den = common_denominator(a);
    std::vector<std::vector<IntPoly>> entry(n, std::vector<IntPoly>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            IntPoly& p = entry[i][j];
            if (i == j)
                p.add_term({0, 0, 0}, BigInt(1));
            for (const auto& [e, c] : a(i, j).terms()) {
                Rational scaled = c * den;
                p.add_term({e[0], e[1], 1}, BigInt(-scaled.get_num()));
            }
        }

    // dp[mask]: signed sum over assignments of rows 0..popcount(mask)-1 to the columns in mask.
    std::vector<IntPoly> dp(std::size_t{1} << n);
    dp[0] = IntPoly(BigInt(1));
    std::vector<std::vector<std::size_t>> by_count(n + 1);
    for (std::size_t mask = 0; mask < dp.size(); ++mask)
        by_count[std::popcount(mask)].push_back(mask);
    for (std::size_t row = 0; row < n; ++row) {
        for (std::size_t mask : by_count[row]) {
            if (dp[mask].is_zero())
                continue;
            for (std::size_t col = 0; col < n; ++col) {
                if ((mask >> col) & 1 || entry[row][col].is_zero())
                    continue;
                // Inversions added by placing `col` after the columns already used.
                int above = std::popcount(mask >> (col + 1));
                dp[mask | (std::size_t{1} << col)].add_product(dp[mask], entry[row][col], above % 2 ? -1 : 1);
            }
            dp[mask] = IntPoly();
        }
    }

    TriPolynomial f;
    std::vector<Rational> den_power{Rational(1)};
    for (const auto& [e, c] : dp.back().terms()) {
        while (den_power.size() <= static_cast<std::size_t>(e[2]))
            den_power.push_back(den_power.back() / den);
        f.add_term(e, Rational(c) * den_power[e[2]]);
    }
    return f;
}

MomentConstants moment_constants(const TriPolynomial& f)
{
    const std::size_t X = 0, Y = 1, Z = 2;
    auto at = [](const TriPolynomial& p) { return p.at_ones(); };
    const TriPolynomial dx = f.derivative(X), dy = f.derivative(Y), dz = f.derivative(Z);
    const Rational fx = at(dx), fy = at(dy), fz = at(dz);
    if (sgn(fz) == 0)
        throw std::domain_error("moment_constants: f_z(1,1,1) = 0, the dominant root is not simple");
    const Rational fxx = at(dx.derivative(X)), fyy = at(dy.derivative(Y)), fzz = at(dz.derivative(Z));
    const Rational fxy = at(dx.derivative(Y)), fxz = at(dx.derivative(Z)), fyz = at(dy.derivative(Z));
    const Rational fz3 = fz * fz * fz;

    MomentConstants m;
    m.e_m = fx / fz;
    m.e_n = fy / fz;
    m.v_m = (fx * fx * (fzz + fz) + fz * fz * (fxx + fx) - 2 * fx * fz * fxz) / fz3;
    m.v_n = (fy * fy * (fzz + fz) + fz * fz * (fyy + fy) - 2 * fy * fz * fyz) / fz3;
    m.c = (fx * fy * (fzz + fz) + fz * fz * fxy - fy * fz * fxz - fx * fz * fyz) / fz3;
    return m;
}

MomentConstants moment_constants(const PolyMatrix& a) { return moment_constants(char_det(a)); }

JointDistribution exact_distribution(const PolyMatrix& a, const std::vector<Rational>& exit, std::size_t initial,
                                     std::size_t ell)
{
    const std::size_t n = a.size();
    std::vector<CarryPolynomial> v(n);
    v[initial] = CarryPolynomial(Rational(1));
    for (std::size_t step = 0; step < ell; ++step) {
        std::vector<CarryPolynomial> next(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (v[i].is_zero())
                continue;
            for (std::size_t j = 0; j < n; ++j)
                if (!a(i, j).is_zero())
                    next[j].add_product(v[i], a(i, j));
        }
        v = std::move(next);
    }
    CarryPolynomial total;
    for (std::size_t i = 0; i < n; ++i)
        total.add_product(v[i], CarryPolynomial(exit[i]));
    JointDistribution out;
    for (const auto& [e, c] : total.terms())
        out[{e[0], e[1]}] = c;
    return out;
}

JointDistribution exact_distribution(const CarryChain& chain, std::size_t ell)
{
    return exact_distribution(chain.matrix, chain.exit, chain.initial, ell);
}

ShapeStatistics marginal_shape(const JointDistribution& dist, int marker_index)
{
    std::map<int, double> pmf;
    double total = 0;
    for (const auto& [mn, p] : dist) {
        double w = p.get_d();
        pmf[marker_index == 0 ? mn.first : mn.second] += w;
        total += w;
    }
    ShapeStatistics s;
    for (auto& [k, p] : pmf) {
        p /= total;
        s.mean += k * p;
    }
    double m3 = 0;
    for (const auto& [k, p] : pmf) {
        double d = k - s.mean;
        s.variance += d * d * p;
        m3 += d * d * d * p;
    }
    const double sd = std::sqrt(s.variance);
    if (sd == 0)
        return s;
    s.skewness = m3 / (sd * sd * sd);
    auto phi = [&](double x) { return 0.5 * std::erfc(-(x - s.mean) / (sd * std::sqrt(2.0))); };
    double cdf = 0;
    for (const auto& [k, p] : pmf) {
        s.kolmogorov = std::max(s.kolmogorov, std::abs(cdf - phi(k - 0.5)));
        cdf += p;
        s.kolmogorov = std::max(s.kolmogorov, std::abs(cdf - phi(k + 0.5)));
    }
    return s;
}

} // namespace carrylab
