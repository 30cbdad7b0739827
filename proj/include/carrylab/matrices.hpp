#pragma once

#include "carrylab/fsm.hpp"
#include "carrylab/numbersys.hpp"
#include "carrylab/poly.hpp"

#include <string>
#include <vector>

namespace carrylab {

// Integer bound that may be infinite.
struct Bound {
    enum class Kind { finite, minus_infinity, plus_infinity };
    Kind kind = Kind::finite;
    long value = 0;

    Bound(long v) : value(v) {}
    static Bound minus_infinity() { return Bound(Kind::minus_infinity); }
    static Bound plus_infinity() { return Bound(Kind::plus_infinity); }
    bool finite() const { return kind == Kind::finite; }

private:
    explicit Bound(Kind k) : kind(k) {}
};

// Number of integer pairs with x_min <= x <= x_max, y_min <= y <= y_max, s_min <= x + y <= s_max.
// Throws DomainError when that number is infinite.
BigInt count_N(Bound x_min, Bound x_max, Bound y_min, Bound y_max, Bound s_min, Bound s_max);

class PolyMatrix {
public:
    PolyMatrix() = default;
    explicit PolyMatrix(std::size_t n) : n_(n), entries_(n * n) {}

    std::size_t size() const { return n_; }
    CarryPolynomial& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
    const CarryPolynomial& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

    RationalMatrix at_ones() const;
    bool rows_stochastic() const;
    bool operator==(const PolyMatrix& o) const { return n_ == o.n_ && entries_ == o.entries_; }

    // Row/column state classes, documentation only.
    std::vector<std::string> labels;

private:
    std::size_t n_ = 0;
    std::vector<CarryPolynomial> entries_;
};

// Entry (i,j): sum over transitions i -> j of weight * x^(#carries 1) * y^(#carries -1).
PolyMatrix transfer_matrix(const WeightedTransducer& m);

struct CarryChain {
    PolyMatrix matrix;
    std::vector<Rational> exit;
    std::size_t initial = 0;
    std::vector<std::vector<std::string>> classes;
    bool printed_order = false; // states follow the order of the reference tables
};

// Carry chain of (q,d) standard addition: adder composed with the squared digit automaton.
CarryChain qd_carry_chain(int q, int d);
// The same matrix from counting digit pairs, state order (-1, 0, 1).
PolyMatrix build_S_qd(int q, int d);

// Lumped carry chain of symmetric signed digit addition.
CarryChain ssde_carry_chain(int q);
PolyMatrix build_S_ssde(int q);

struct RunChainMatrices {
    RationalMatrix solid;
    RationalMatrix dotted;
    std::vector<Rational> exit_base;
    std::vector<Rational> exit_deferred; // counted only if one more solid edge is allowed
    std::size_t initial = 0;
    std::vector<std::vector<std::string>> classes;
    bool printed_order = false;
};

// Lumped von Neumann run automaton combined with the squared SSDE automaton.
RunChainMatrices build_N_ssde(int q);

// Printed reference matrices, already divided by their scale factors.
namespace reference_tables {

const std::vector<std::vector<std::string>>& ssde_standard_classes();
const std::vector<std::vector<std::string>>& ssde_neumann_classes();

PolyMatrix table_S_qd(int q, int d);
PolyMatrix table_S_ssde(int q);
RationalMatrix table_N_solid(int q);
// The last row prints "8z" in column 8; `z` is the value used for it.
RationalMatrix table_N_dotted(int q, long z = 1);
std::vector<Rational> table_N_exit(int q);

} // namespace reference_tables

} // namespace carrylab
