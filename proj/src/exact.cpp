#include "carrylab/exact.hpp"

#include <stdexcept>

namespace carrylab {

std::string to_string(const Rational& r)
{
    if (r.get_den() == 1)
        return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string to_string(const BigInt& n) { return n.get_str(); }

Rational parse_rational(const std::string& text)
{
    Rational r;
    if (r.set_str(text, 10) != 0)
        throw std::invalid_argument("not a rational number: " + text);
    r.canonicalize();
    return r;
}

double to_double(const Rational& r) { return r.get_d(); }

BigInt lcm(const BigInt& a, const BigInt& b)
{
    BigInt out;
    mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return out;
}

Rational pow(const Rational& base, unsigned long exponent)
{
    Rational out;
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
    out.canonicalize();
    return out;
}

RationalMatrix RationalMatrix::transposed() const
{
    RationalMatrix t(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

RationalVector RationalMatrix::row_sums() const
{
    RationalVector out(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            out[i] += (*this)(i, j);
    return out;
}

RationalVector operator*(const RationalVector& v, const RationalMatrix& m)
{
    RationalVector out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (sgn(v[i]) == 0)
            continue;
        for (std::size_t j = 0; j < m.size(); ++j)
            if (sgn(m(i, j)) != 0)
                out[j] += v[i] * m(i, j);
    }
    return out;
}

RationalVector operator*(const RationalMatrix& m, const RationalVector& v)
{
    RationalVector out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j)
            if (sgn(m(i, j)) != 0)
                out[i] += m(i, j) * v[j];
    return out;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b)
{
    const std::size_t n = a.size();
    RationalMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (sgn(a(i, k)) == 0)
                continue;
            for (std::size_t j = 0; j < n; ++j)
                out(i, j) += a(i, k) * b(k, j);
        }
    return out;
}

RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b)
{
    RationalMatrix out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            out(i, j) = a(i, j) + b(i, j);
    return out;
}

std::vector<RationalVector> null_space(const RationalMatrix& m)
{
    const std::size_t n = m.size();
    RationalMatrix r = m;
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < n; ++col) {
        std::size_t p = row;
        while (p < n && sgn(r(p, col)) == 0)
            ++p;
        if (p == n)
            continue;
        for (std::size_t j = 0; j < n; ++j)
            std::swap(r(row, j), r(p, j));
        Rational inv = 1 / r(row, col);
        for (std::size_t j = 0; j < n; ++j)
            r(row, j) *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == row || sgn(r(i, col)) == 0)
                continue;
            Rational f = r(i, col);
            for (std::size_t j = 0; j < n; ++j)
                r(i, j) -= f * r(row, j);
        }
        pivot_col.push_back(col);
        ++row;
    }

    std::vector<bool> is_pivot(n, false);
    for (auto c : pivot_col)
        is_pivot[c] = true;
    std::vector<RationalVector> basis;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free])
            continue;
        RationalVector v(n);
        v[free] = 1;
        for (std::size_t i = 0; i < pivot_col.size(); ++i)
            v[pivot_col[i]] = -r(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace carrylab
