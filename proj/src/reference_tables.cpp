// Transition matrices as printed in the reference tables, instantiated at numeric q.
#include "carrylab/matrices.hpp"

#include <stdexcept>

namespace carrylab::reference_tables {

namespace {

using P = CarryPolynomial;

P c(long v) { return carry_monomial(0, 0, v); }
P x(long v, int power = 1) { return carry_monomial(power, 0, v); }
P y(long v, int power = 1) { return carry_monomial(0, power, v); }

PolyMatrix scaled(const std::vector<std::vector<P>>& rows, const Rational& scale)
{
    PolyMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size())
            throw std::logic_error("reference table row has the wrong length");
        for (std::size_t j = 0; j < rows.size(); ++j)
            m(i, j) = rows[i][j] * scale;
    }
    return m;
}

RationalMatrix scaled(const std::vector<std::vector<long>>& rows, const Rational& scale)
{
    RationalMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size())
            throw std::logic_error("reference table row has the wrong length");
        for (std::size_t j = 0; j < rows.size(); ++j)
            m(i, j) = Rational(rows[i][j]) * scale;
    }
    return m;
}

std::vector<std::string> first_members(const std::vector<std::vector<std::string>>& classes)
{
    std::vector<std::string> out;
    for (const auto& cls : classes)
        out.push_back(cls.front());
    return out;
}

} // namespace

const std::vector<std::vector<std::string>>& ssde_standard_classes()
{
    static const std::vector<std::vector<std::string>> classes = {
        {"(0,(0,0))"},
        {"(0,(-1,1))", "(0,(1,-1))"},
        {"(-1,(-1,0))", "(-1,(0,-1))"},
        {"(-q/2,(-1,0))", "(-q/2,(0,-1))"},
        {"(0,(-1,0))", "(0,(0,-1))"},
        {"(0,(0,1))", "(0,(1,0))"},
        {"(q/2,(0,1))", "(q/2,(1,0))"},
        {"(1,(0,1))", "(1,(1,0))"},
        {"(-1,(0,0))"},
        {"(1,(0,0))"},
        {"(-1,(-1,-1))"},
        {"(1,(1,1))"},
        {"(-q/2,(0,0))"},
        {"(q/2,(0,0))"},
    };
    return classes;
}

const std::vector<std::vector<std::string>>& ssde_neumann_classes()
{
    static const std::vector<std::vector<std::string>> classes = {
        {"(1,(-1,1))", "(1,(1,-1))"},
        {"(4,(0,0))", "(9,(0,0))"},
        {"(5,(0,1))", "(5,(1,0))", "(10,(-1,0))", "(10,(0,-1))"},
        {"(2,(0,1))", "(2,(1,0))", "(7,(-1,0))", "(7,(0,-1))"},
        {"(5,(0,0))", "(10,(0,0))"},
        {"(2,(0,0))", "(7,(0,0))"},
        {"(1,(-1,0))", "(1,(0,-1))", "(1,(0,1))", "(1,(1,0))"},
        {"(3,(0,1))", "(3,(1,0))", "(8,(-1,0))", "(8,(0,-1))"},
        {"(1,(0,0))"},
        {"(3,(0,0))", "(8,(0,0))"},
        {"(4,(1,1))", "(9,(-1,-1))"},
        {"(4,(0,1))", "(4,(1,0))", "(9,(-1,0))", "(9,(0,-1))"},
    };
    return classes;
}

PolyMatrix table_S_qd(int q, int d)
{
    const long Q = q, D = d;
    std::vector<std::vector<P>> rows = {
        {y((D - 1) * (D - 2)), c(-2 * D * D - 2 * D * Q + Q * Q + 6 * D + 3 * Q - 4), x((D + Q - 1) * (D + Q - 2))},
        {y((D - 1) * D), c(-2 * D * D - 2 * D * Q + Q * Q + 2 * D + Q), x((D + Q) * (D + Q - 1))},
        {y((D + 1) * D), c(-2 * D * D - 2 * D * Q + Q * Q - 2 * D - Q), x((D + Q + 1) * (D + Q))},
    };
    PolyMatrix m = scaled(rows, Rational(1, 2 * Q * Q));
    m.labels = {"(-1,(0,0))", "(0,(0,0))", "(1,(0,0))"};
    return m;
}

PolyMatrix table_S_ssde(int q)
{
    const long Q = q;
    const P o = c(0);
    std::vector<std::vector<P>> rows = {
        {c(6 * Q * Q - 12 * Q + 8), c(4), y(4 * (Q - 2)), c(8), c(4 * Q - 8), c(4 * Q - 8), c(8), x(4 * (Q - 2)),
         y((Q - 2) * (Q - 4)), x((Q - 2) * (Q - 4)), y(2), x(2), c(4 * Q - 8), c(4 * Q - 8)},
        {c(8 * Q * Q), o, o, o, o, o, o, o, o, o, o, o, o, o},
        {c(6 * (Q - 2) * Q), o, y(4 * Q), o, o, c(4 * Q), o, o, y(2 * (Q - 2) * Q), o, o, o, c(8 * Q), o},
        // 2(qy + 2q - 2y)q
        {y(2 * Q * Q) + c(4 * Q * Q) + y(-4 * Q), o, y(4 * Q, 2), o, o, y(4 * Q), o, o, y(2 * (Q - 2) * Q, 2), o, o,
         o, o, o},
        {c(2 * (3 * Q - 2) * Q), o, y(4 * (Q - 2)), c(8), o, c(4 * Q - 8), c(8), o, y(2 * (Q - 2) * (Q - 4)), o, o, o,
         c(8 * Q - 16), o},
        {c(2 * (3 * Q - 2) * Q), o, o, c(8), c(4 * Q - 8), o, c(8), x(4 * (Q - 2)), o, x(2 * (Q - 2) * (Q - 4)), o, o,
         o, c(8 * Q - 16)},
        // 2(qx + 2q - 2x)q
        {x(2 * Q * Q) + c(4 * Q * Q) + x(-4 * Q), o, o, o, x(4 * Q), o, o, x(4 * Q, 2), o, x(2 * (Q - 2) * Q, 2), o, o,
         o, o},
        {c(6 * (Q - 2) * Q), o, o, o, c(4 * Q), o, o, x(4 * Q), o, x(2 * (Q - 2) * Q), o, o, o, c(8 * Q)},
        {c(6 * (Q - 2) * Q), c(4), y(4 * Q), c(8), c(4 * Q - 16), c(4 * Q), c(8), x(4 * (Q - 4)), y((Q - 2) * Q),
         x((Q - 4) * (Q - 6)), y(2), x(2), c(4 * Q), c(4 * Q - 16)},
        {c(6 * (Q - 2) * Q), c(4), y(4 * (Q - 4)), c(8), c(4 * Q), c(4 * Q - 16), c(8), x(4 * Q), y((Q - 4) * (Q - 6)),
         x((Q - 2) * Q), y(2), x(2), c(4 * Q - 16), c(4 * Q)},
        {c(4 * (Q - 2) * Q), o, o, o, o, o, o, o, y(4 * (Q - 2) * Q), o, o, o, c(16 * Q), o},
        {c(4 * (Q - 2) * Q), o, o, o, o, o, o, o, o, x(4 * (Q - 2) * Q), o, o, o, c(16 * Q)},
        // (3qy + 3q - 6y - 2)q
        {y(3 * Q * Q) + c(3 * Q * Q) + y(-6 * Q) + c(-2 * Q), c(4), y(4 * Q, 2), o, c(4 * Q - 8), y(4 * Q), o,
         x(4 * (Q - 2)), y((Q - 2) * Q, 2), x((Q - 2) * (Q - 4)), y(2), x(2), o, o},
        // (3qx + 3q - 6x - 2)q
        {x(3 * Q * Q) + c(3 * Q * Q) + x(-6 * Q) + c(-2 * Q), c(4), y(4 * (Q - 2)), o, x(4 * Q), c(4 * Q - 8), o,
         x(4 * Q, 2), y((Q - 2) * (Q - 4)), x((Q - 2) * Q, 2), y(2), x(2), o, o},
    };
    PolyMatrix m = scaled(rows, Rational(1, 8 * Q * Q));
    m.labels = first_members(ssde_standard_classes());
    return m;
}

RationalMatrix table_N_solid(int q)
{
    const long Q = q;
    const std::vector<long> zero(12, 0);
    std::vector<std::vector<long>> rows(12, zero);
    rows[3] = {0, 0, 0, 0, 0, 0, 0, 0, 4 * Q * (Q - 2), 8 * Q, 0, 0};
    rows[5] = {4, (Q - 4) * (Q - 6), 0, 8, 0, 4 * (Q - 4), 4 * (Q - 4), 8, 3 * Q * (Q - 2), 4 * Q, 4, 4 * (Q - 4)};
    rows[7] = {0, 2 * (Q - 2) * (Q - 4), 0, 8, 0, 8 * (Q - 2), 4 * (Q - 2), 8, 2 * Q * (Q - 2), 0, 0, 4 * (Q - 2)};
    rows[9] = {0, (Q - 2) * (Q - 4), 0, 8, 0, 4 * (Q - 2), 4 * (Q - 2), 8, (3 * Q - 4) * (Q - 2), 4 * (Q - 2), 0,
               4 * (Q - 2)};
    return scaled(rows, Rational(1, 8 * Q * Q));
}

RationalMatrix table_N_dotted(int q, long z)
{
    const long Q = q;
    std::vector<std::vector<long>> rows = {
        {0, 0, 0, 0, 0, 0, 0, 0, 8 * Q * Q, 0, 0, 0},
        {4, 2 * (Q - 4) * (Q - 4), 0, 16, 0, 8 * (Q - 3), 8 * (Q - 3), 16, 2 * (3 * Q - 2) * (Q - 2), 8 * (Q - 1), 4,
         8 * (Q - 3)},
        {0, 2 * (Q - 2) * (Q - 4), 0, 8, 0, 8 * (Q - 2), 4 * (Q - 2), 8, 2 * Q * (3 * Q - 2), 0, 0, 4 * (Q - 2)},
        {0, 2 * (Q - 2) * (Q - 4), 0, 8, 0, 8 * (Q - 2), 4 * (Q - 2), 8, 2 * Q * (Q - 2), 0, 0, 4 * (Q - 2)},
        {4, 2 * (Q - 2) * (Q - 4), 0, 8, 0, 4 * (Q - 2), 8 * (Q - 2), 8, 6 * Q * Q - 12 * Q + 8, 4 * (Q - 2), 4,
         8 * (Q - 2)},
        {0, (Q - 2) * (Q - 4), 0, 8, 0, 4 * (Q - 2), 4 * (Q - 2), 8, (3 * Q - 4) * (Q - 2), 4 * (Q - 2), 0,
         4 * (Q - 2)},
        {0, 2 * (Q - 2) * (Q - 4), 16, 0, 8 * (Q - 2), 0, 4 * (Q - 2), 0, 2 * Q * (3 * Q - 2), 0, 0, 4 * (Q - 2)},
        {0, 0, 0, 0, 0, 0, 0, 0, 4 * Q * Q, 0, 0, 0},
        {4, 2 * (Q - 2) * (Q - 4), 16, 0, 8 * (Q - 2), 0, 8 * (Q - 2), 0, 6 * Q * Q - 12 * Q + 8, 0, 4, 8 * (Q - 2)},
        {4, (Q - 2) * (Q - 4), 0, 0, 0, 0, 4 * (Q - 2), 0, Q * (3 * Q - 2), 0, 4, 4 * (Q - 2)},
        {0, 4 * (Q - 2) * (Q - 4), 0, 0, 0, 16 * (Q - 2), 0, 0, 4 * Q * (Q - 2), 16 * Q, 0, 0},
        {0, 2 * (Q - 2) * (Q - 4), 0, 8, 0, 8 * (Q - 2), 4 * (Q - 2), 8 * z, 6 * (Q - 2) * Q, 8 * Q, 0, 4 * (Q - 2)},
    };
    return scaled(rows, Rational(1, 8 * Q * Q));
}

std::vector<Rational> table_N_exit(int q)
{
    Rational f(q + 1, q + 2);
    f *= f;
    std::vector<Rational> out;
    for (long v : {4, 1, 2, 2, 1, 1, 2, 2, 1, 1, 4, 2})
        out.push_back(Rational(v) * f);
    return out;
}

} // namespace carrylab::reference_tables
