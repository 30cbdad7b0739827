#pragma once

#include "carrylab/exact.hpp"

#include <array>
#include <map>
#include <string>

namespace carrylab {

// Sparse polynomial in N variables. Zero coefficients are never stored.
template <std::size_t N, class Coeff = Rational>
class SparsePoly {
public:
    using Exponents = std::array<int, N>;
    using Terms = std::map<Exponents, Coeff>;

    SparsePoly() = default;
    SparsePoly(const Coeff& c) { add_term(Exponents{}, c); }
    SparsePoly(long c) : SparsePoly(Coeff(c)) {}

    static SparsePoly monomial(const Exponents& e, const Coeff& c)
    {
        SparsePoly p;
        p.add_term(e, c);
        return p;
    }
    static SparsePoly variable(std::size_t i)
    {
        Exponents e{};
        e[i] = 1;
        return monomial(e, Coeff(1));
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    Coeff coefficient(const Exponents& e) const
    {
        auto it = terms_.find(e);
        return it == terms_.end() ? Coeff(0) : it->second;
    }

    void add_term(const Exponents& e, const Coeff& c)
    {
        if (sgn(c) == 0)
            return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (sgn(it->second) == 0)
                terms_.erase(it);
        }
    }

    // this += sign * a * b, without temporaries.
    void add_product(const SparsePoly& a, const SparsePoly& b, int sign = 1)
    {
        Coeff prod;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e;
                for (std::size_t i = 0; i < N; ++i)
                    e[i] = ea[i] + eb[i];
                prod = ca * cb;
                if (sign < 0)
                    prod = -prod;
                add_term(e, prod);
            }
    }

    SparsePoly& operator+=(const SparsePoly& o)
    {
        for (const auto& [e, c] : o.terms_)
            add_term(e, c);
        return *this;
    }
    SparsePoly& operator-=(const SparsePoly& o)
    {
        for (const auto& [e, c] : o.terms_)
            add_term(e, -c);
        return *this;
    }
    SparsePoly& operator*=(const SparsePoly& o)
    {
        SparsePoly out;
        out.add_product(*this, o);
        return *this = std::move(out);
    }
    SparsePoly& operator*=(const Coeff& c)
    {
        if (sgn(c) == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, v] : terms_)
            v *= c;
        return *this;
    }

    friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
    friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
    friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b)
    {
        SparsePoly out;
        out.add_product(a, b);
        return out;
    }
    friend SparsePoly operator*(SparsePoly a, const Coeff& c) { return a *= c; }
    friend SparsePoly operator*(const Coeff& c, SparsePoly a) { return a *= c; }
    SparsePoly operator-() const
    {
        SparsePoly out = *this;
        for (auto& [e, v] : out.terms_)
            v = -v;
        return out;
    }

    bool operator==(const SparsePoly& o) const { return terms_ == o.terms_; }

    SparsePoly derivative(std::size_t var) const
    {
        SparsePoly out;
        for (const auto& [e, c] : terms_) {
            if (e[var] == 0)
                continue;
            Exponents f = e;
            --f[var];
            out.add_term(f, c * Coeff(e[var]));
        }
        return out;
    }

    template <class T>
    T evaluate(const std::array<T, N>& point) const
    {
        T sum = T(0);
        for (const auto& [e, c] : terms_) {
            T term = T(c);
            for (std::size_t i = 0; i < N; ++i)
                for (int k = 0; k < e[i]; ++k)
                    term *= point[i];
            sum += term;
        }
        return sum;
    }

    // Value with every variable set to 1.
    Coeff at_ones() const
    {
        Coeff sum = 0;
        for (const auto& [e, c] : terms_)
            sum += c;
        return sum;
    }

    int degree(std::size_t var) const
    {
        int d = -1;
        for (const auto& [e, c] : terms_)
            d = std::max(d, e[var]);
        return d;
    }

    // e.g. "(37/64) + (1/32)x y^2"
    std::string to_string(const std::array<const char*, N>& names) const
    {
        if (terms_.empty())
            return "0";
        std::string out;
        for (const auto& [e, c] : terms_) {
            if (!out.empty())
                out += " + ";
            out += "(" + coeff_string(c) + ")";
            bool first = true;
            for (std::size_t i = 0; i < N; ++i) {
                if (e[i] == 0)
                    continue;
                if (!first)
                    out += " ";
                first = false;
                out += names[i];
                if (e[i] > 1)
                    out += "^" + std::to_string(e[i]);
            }
        }
        return out;
    }

private:
    static std::string coeff_string(const Coeff& c) { return carrylab::to_string(c); }

    Terms terms_;
};

// Polynomials in the carry markers x (carry 1) and y (carry -1).
using CarryPolynomial = SparsePoly<2>;

// Polynomials in x, y and the length marker z.
using TriPolynomial = SparsePoly<3>;

inline CarryPolynomial carry_monomial(int x_power, int y_power, const Rational& c)
{
    return CarryPolynomial::monomial({x_power, y_power}, c);
}

inline std::string to_string(const CarryPolynomial& p) { return p.to_string({"x", "y"}); }
inline std::string to_string(const TriPolynomial& p) { return p.to_string({"x", "y", "z"}); }

} // namespace carrylab
