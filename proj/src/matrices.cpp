#include "carrylab/matrices.hpp"

#include "carrylab/machines.hpp"
#include "carrylab/markov.hpp"
#include "carrylab/numbersys.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>

namespace carrylab {

namespace {

// Extended integer: inf = -1, 0, +1.
struct Ext {
    int inf = 0;
    long v = 0;
};

Ext ext(const Bound& b)
{
    switch (b.kind) {
    case Bound::Kind::minus_infinity:
        return {-1, 0};
    case Bound::Kind::plus_infinity:
        return {1, 0};
    default:
        return {0, b.value};
    }
}

// a + b where the sum of opposite infinities cannot occur in our use
Ext add(Ext a, Ext b)
{
    if (a.inf || b.inf)
        return {a.inf ? a.inf : b.inf, 0};
    return {0, a.v + b.v};
}

Ext neg(Ext a) { return {-a.inf, -a.v}; }

bool less(Ext a, Ext b)
{
    if (a.inf != b.inf)
        return a.inf < b.inf;
    return a.inf == 0 && a.v < b.v;
}

Ext max_ext(Ext a, Ext b) { return less(a, b) ? b : a; }
Ext min_ext(Ext a, Ext b) { return less(a, b) ? a : b; }

// Pairs of non-negative integers with sum at most n.
BigInt triangle(long n)
{
    if (n < 0)
        return 0;
    BigInt m = n;
    return (m + 2) * (m + 1) / 2;
}

} // namespace

BigInt count_N(Bound x_min_b, Bound x_max_b, Bound y_min_b, Bound y_max_b, Bound s_min_b, Bound s_max_b)
{
    Ext x_min = ext(x_min_b), x_max = ext(x_max_b), y_min = ext(y_min_b), y_max = ext(y_max_b);
    Ext s_min = ext(s_min_b), s_max = ext(s_max_b);
    // Tighten infinite bounds with the other constraints.
    for (int round = 0; round < 4; ++round) {
        x_min = max_ext(x_min, add(s_min, neg(y_max)));
        x_max = min_ext(x_max, add(s_max, neg(y_min)));
        y_min = max_ext(y_min, add(s_min, neg(x_max)));
        y_max = min_ext(y_max, add(s_max, neg(x_min)));
        s_min = max_ext(s_min, add(x_min, y_min));
        s_max = min_ext(s_max, add(x_max, y_max));
    }
    if (less(x_max, x_min) || less(y_max, y_min) || less(s_max, s_min))
        return 0;
    for (const Ext& e : {x_min, x_max, y_min, y_max, s_min, s_max})
        if (e.inf)
            throw DomainError("count_N: unbounded region");

    const long xa = x_min.v, xb = x_max.v, ya = y_min.v, yb = y_max.v, sa = s_min.v, sb = s_max.v;
    return triangle(sb - xa - ya) - triangle(sb - xa - yb - 1) - triangle(sb - xb - ya - 1) +
           triangle(sb - xb - yb - 2) - triangle(sa - xa - ya - 1) + triangle(sa - xa - yb - 2) +
           triangle(sa - xb - ya - 2) - triangle(sa - xb - yb - 3);
}

RationalMatrix PolyMatrix::at_ones() const
{
    RationalMatrix m(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            m(i, j) = (*this)(i, j).at_ones();
    return m;
}

bool PolyMatrix::rows_stochastic() const
{
    auto sums = at_ones().row_sums();
    return std::all_of(sums.begin(), sums.end(), [](const Rational& s) { return s == 1; });
}

PolyMatrix transfer_matrix(const WeightedTransducer& m)
{
    PolyMatrix a(m.size());
    for (std::size_t s = 0; s < m.size(); ++s)
        a.labels.push_back(m.label(s));
    for (const auto& t : m.transitions()) {
        int ones = static_cast<int>(std::count(t.output.begin(), t.output.end(), 1));
        int minus = static_cast<int>(std::count(t.output.begin(), t.output.end(), -1));
        a(t.from, t.to).add_term({ones, minus}, t.weight);
    }
    return a;
}

namespace {

WeightedTransducer squared_weights(const DigitSystem& system)
{
    ParryWeights pw = system_weights(system);
    return additive_product(pw.automaton, pw.automaton);
}

// Order of a lumping's classes following a printed class list, if they coincide.
std::optional<std::vector<std::size_t>> match_classes(const Lumping& lumped,
                                                      const std::vector<std::vector<std::string>>& printed)
{
    if (lumped.classes.size() != printed.size())
        return std::nullopt;
    std::vector<std::size_t> order;
    for (const auto& cls : printed) {
        std::set<std::string> want(cls.begin(), cls.end());
        std::optional<std::size_t> found;
        for (std::size_t b = 0; b < lumped.classes.size(); ++b) {
            std::set<std::string> have(lumped.classes[b].begin(), lumped.classes[b].end());
            if (have == want)
                found = b;
        }
        if (!found)
            return std::nullopt;
        order.push_back(*found);
    }
    return order;
}

} // namespace

CarryChain qd_carry_chain(int q, int d)
{
    const DigitSystem system = DigitSystem::qd(q, d);
    WeightedTransducer composed = compose(standard_adder(system), squared_weights(system));
    CarryChain chain;
    chain.matrix = transfer_matrix(composed);
    chain.initial = composed.initial();
    for (std::size_t s = 0; s < composed.size(); ++s) {
        chain.exit.push_back(composed.exit_weight(s));
        chain.classes.push_back({composed.label(s)});
    }
    return chain;
}

PolyMatrix build_S_qd(int q, int d)
{
    DigitSystem::qd(q, d); // validates
    PolyMatrix a(3);
    a.labels = {"(-1,(0,0))", "(0,(0,0))", "(1,(0,0))"};
    const Rational pair_weight = Rational(1, q * q);
    const Bound lo = d;
    const Bound hi = q + d - 1;
    for (int c = -1; c <= 1; ++c) {
        // a = s + c: carry -1 iff a <= d-1, carry 1 iff a >= q+d
        BigInt to_minus = count_N(lo, hi, lo, hi, Bound::minus_infinity(), d - 1 - c);
        BigInt to_zero = count_N(lo, hi, lo, hi, d - c, q + d - 1 - c);
        BigInt to_plus = count_N(lo, hi, lo, hi, q + d - c, Bound::plus_infinity());
        a(c + 1, 0) = carry_monomial(0, 1, Rational(to_minus) * pair_weight);
        a(c + 1, 1) = carry_monomial(0, 0, Rational(to_zero) * pair_weight);
        a(c + 1, 2) = carry_monomial(1, 0, Rational(to_plus) * pair_weight);
    }
    return a;
}

CarryChain ssde_carry_chain(int q)
{
    const DigitSystem system = DigitSystem::ssde(q);
    WeightedTransducer composed = compose(standard_adder(system), squared_weights(system));
    Lumping lumped = lump_with_classes(composed, false);
    const WeightedTransducer& m = lumped.machine;

    std::vector<std::size_t> order(m.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    CarryChain chain;
    if (auto printed = match_classes(lumped, reference_tables::ssde_standard_classes())) {
        order = *printed;
        chain.printed_order = true;
    }
    std::vector<std::size_t> position(m.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        position[order[i]] = i;

    PolyMatrix raw = transfer_matrix(m);
    chain.matrix = PolyMatrix(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        chain.matrix.labels.push_back(m.label(order[i]));
        chain.exit.push_back(m.exit_weight(order[i]));
        chain.classes.push_back(lumped.classes[order[i]]);
        for (std::size_t j = 0; j < m.size(); ++j)
            chain.matrix(i, j) = raw(order[i], order[j]);
    }
    chain.initial = position[m.initial()];
    return chain;
}

PolyMatrix build_S_ssde(int q) { return ssde_carry_chain(q).matrix; }

RunChainMatrices build_N_ssde(int q)
{
    const DigitSystem system = DigitSystem::ssde(q);
    WeightedTransducer composed = compose(neumann_run_automaton(q), squared_weights(system));
    Lumping lumped = lump_with_classes(composed, true);
    const WeightedTransducer& m = lumped.machine;
    const std::size_t n = m.size();

    RunChainMatrices out;
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i)
        order[i] = i;
    if (auto printed = match_classes(lumped, reference_tables::ssde_neumann_classes())) {
        order = *printed;
        out.printed_order = true;
    }
    std::vector<std::size_t> position(n);
    for (std::size_t i = 0; i < n; ++i)
        position[order[i]] = i;

    out.solid = RationalMatrix(n);
    out.dotted = RationalMatrix(n);
    for (const auto& t : m.transitions()) {
        if (!t.output.empty())
            throw std::logic_error("run automaton transitions carry no output");
        auto& target = t.solid ? out.solid : out.dotted;
        target(position[t.from], position[t.to]) += t.weight;
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t s = order[i];
        out.classes.push_back(lumped.classes[s]);
        if (m.end_solid(s)) {
            out.exit_base.push_back(0);
            out.exit_deferred.push_back(m.exit_weight(s));
        } else {
            out.exit_base.push_back(m.exit_weight(s));
            out.exit_deferred.push_back(0);
        }
    }
    out.initial = position[m.initial()];
    return out;
}

} // namespace carrylab
