#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace carrylab {

using BigInt = mpz_class;
using Rational = mpq_class;

// "p/q", or just "p" for integers.
std::string to_string(const Rational& r);
std::string to_string(const BigInt& n);
Rational parse_rational(const std::string& text);

double to_double(const Rational& r);

BigInt lcm(const BigInt& a, const BigInt& b);

// Exact power of a rational with non-negative exponent.
Rational pow(const Rational& base, unsigned long exponent);

using RationalVector = std::vector<Rational>;

// Dense square matrix over the rationals, row-major.
class RationalMatrix {
public:
    RationalMatrix() = default;
    explicit RationalMatrix(std::size_t n) : n_(n), data_(n * n) {}

    std::size_t size() const { return n_; }
    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    RationalMatrix transposed() const;
    RationalVector row_sums() const;
    bool operator==(const RationalMatrix& other) const = default;

private:
    std::size_t n_ = 0;
    std::vector<Rational> data_;
};

RationalVector operator*(const RationalVector& v, const RationalMatrix& m);
RationalVector operator*(const RationalMatrix& m, const RationalVector& v);
RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b);

// Basis of the right null space of m (Gauss-Jordan over Q).
std::vector<RationalVector> null_space(const RationalMatrix& m);

} // namespace carrylab
