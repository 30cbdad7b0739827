#include "carrylab/machines.hpp"

#include "carrylab/addition.hpp"

#include <map>
#include <stdexcept>

namespace carrylab {

LabelSet LabelSet::range(int a, int b, int lo, int hi)
{
    LabelSet s;
    s.lo_ = lo;
    s.hi_ = hi;
    for (int v = std::max(a, lo); v <= std::min(b, hi); ++v)
        s.members_.insert(v);
    return s;
}

std::set<int> LabelSet::all() const
{
    std::set<int> out = members_;
    out.insert(absorbed_.begin(), absorbed_.end());
    return out;
}

LabelSet LabelSet::shifted(int eps) const
{
    LabelSet s;
    s.lo_ = lo_;
    s.hi_ = hi_;
    for (int m : all()) {
        if (m + eps >= lo_ && m + eps <= hi_)
            s.members_.insert(m + eps);
    }
    for (int m : all())
        if ((m == lo_ || m == hi_) && !s.members_.count(m))
            s.absorbed_.insert(m);
    return s;
}

LabelSet LabelSet::negated() const
{
    LabelSet s;
    s.lo_ = -hi_;
    s.hi_ = -lo_;
    for (int m : members_)
        s.members_.insert(-m);
    for (int m : absorbed_)
        s.absorbed_.insert(-m);
    return s;
}

LabelSet LabelSet::operator|(const LabelSet& o) const
{
    LabelSet s;
    s.lo_ = std::min(lo_, o.lo_);
    s.hi_ = std::max(hi_, o.hi_);
    s.members_ = members_;
    s.members_.insert(o.members_.begin(), o.members_.end());
    for (const auto* src : {&absorbed_, &o.absorbed_})
        for (int m : *src)
            if (!s.members_.count(m))
                s.absorbed_.insert(m);
    return s;
}

WeightedTransducer digit_automaton(const DigitSystem& system)
{
    WeightedTransducer m;
    if (!system.is_ssde()) {
        std::size_t s = m.add_state("0");
        m.set_initial(s);
        for (int digit = system.min_digit(); digit <= system.max_digit(); ++digit)
            m.add_transition({s, s, digit, {}, 1, false});
        return m;
    }
    const int h = system.base() / 2;
    std::size_t neg = m.add_state("-1");
    std::size_t zero = m.add_state("0");
    std::size_t pos = m.add_state("1");
    m.set_initial(zero);
    for (int digit = -h + 1; digit <= h - 1; ++digit)
        m.add_transition({zero, zero, digit, {}, 1, false});
    m.add_transition({zero, pos, h, {}, 1, false});
    m.add_transition({zero, neg, -h, {}, 1, false});
    // after a boundary digit +-q/2 the next digit has the same sign and is below q/2 in size
    for (int digit = 0; digit <= h - 1; ++digit) {
        m.add_transition({pos, zero, digit, {}, 1, false});
        m.add_transition({neg, zero, -digit, {}, 1, false});
    }
    return m;
}

WeightedTransducer standard_adder(const DigitSystem& system)
{
    const int q = system.base();
    WeightedTransducer m;
    std::map<int, std::size_t> carry_state;
    carry_state[-1] = m.add_state("-1");
    carry_state[0] = m.add_state("0");
    carry_state[1] = m.add_state("1");
    m.set_initial(carry_state[0]);

    if (!system.is_ssde()) {
        const int d = system.offset();
        for (int c = -1; c <= 1; ++c)
            for (int s = 2 * d; s <= 2 * q + 2 * d - 2; ++s) {
                int next = qd_carry(s + c, q, d);
                m.add_transition({carry_state[c], carry_state[next], s, {next}, 1, false});
            }
        return m;
    }

    const int h = q / 2;
    std::map<int, std::size_t> pending;
    pending[-h] = m.add_state("-q/2");
    pending[h] = m.add_state("q/2");
    auto plain_carry = [&](int a) { return a > h ? 1 : (a < -h ? -1 : 0); };

    for (int c = -1; c <= 1; ++c)
        for (int s = -q; s <= q; ++s) {
            int a = s + c;
            if (a == h || a == -h) {
                m.add_transition({carry_state[c], pending[a], s, {}, 1, false});
            } else {
                int next = plain_carry(a);
                m.add_transition({carry_state[c], carry_state[next], s, {next}, 1, false});
            }
        }
    // In a pending state the digit just read decides the carry of the previous position.
    for (int p : {-h, h})
        for (int s = -q; s <= q; ++s) {
            int first = ssde_carry(p, s, q);
            int a = s + first;
            if (a == h || a == -h) {
                m.add_transition({pending[p], pending[a], s, {first}, 1, false});
            } else {
                int second = plain_carry(a);
                m.add_transition({pending[p], carry_state[second], s, {first, second}, 1, false});
            }
        }
    return m;
}

WeightedTransducer neumann_run_automaton(int q)
{
    if (q < 2 || q % 2 != 0)
        throw std::invalid_argument("neumann_run_automaton needs an even base");
    const int h = q / 2;
    const int lo = -q;
    const int hi = q;
    auto R = [&](int a, int b) { return LabelSet::range(a, b, lo, hi); };
    auto S = [&](int v) { return LabelSet::single(v, lo, hi); };
    const LabelSet L = R(0, h - 1);
    const LabelSet L0 = R(1, h - 1);
    const LabelSet H = R(h + 1, q);
    const LabelSet Hq = R(h + 1, q - 1);
    const LabelSet nL = L.negated();
    const LabelSet nL0 = L0.negated();
    const LabelSet nH = H.negated();
    const LabelSet nHq = Hq.negated();

    struct Rule {
        int from;
        LabelSet labels;
        int to;
        bool solid;
    };
    constexpr bool S_ = true;
    constexpr bool d_ = false;
    const std::vector<Rule> rules = {
        {1, L | nL, 1, d_}, {1, H, 4, d_}, {1, S(h), 5, d_}, {1, nH, 9, d_}, {1, S(-h), 10, d_},

        {2, nL0, 1, d_}, {2, L0.shifted(-1), 1, S_}, {2, S(h), 2, d_}, {2, S(h - 1), 3, S_},
        {2, Hq, 4, d_}, {2, S(q), 4, S_}, {2, S(-h - 1), 7, S_}, {2, S(-h), 8, d_},
        {2, nH.shifted(-1), 9, S_},

        {3, nL0, 1, S_}, {3, L, 1, d_}, {3, S(h), 2, S_}, {3, S(q), 4, d_}, {3, Hq, 4, S_},
        {3, S(-h), 8, S_}, {3, nH, 9, d_},

        {4, nL0 | L0.shifted(-1), 1, d_}, {4, S(h), 2, d_}, {4, S(h - 1), 3, d_}, {4, H, 4, d_},
        {4, S(-h - 1), 7, d_}, {4, S(-h), 8, d_}, {4, nH.shifted(-1), 9, d_},

        {5, nL | L, 1, d_}, {5, S(h), 2, d_}, {5, H, 4, d_}, {5, S(-h), 8, d_}, {5, nH, 9, d_},

        {7, L0, 1, d_}, {7, nL0.shifted(1), 1, S_}, {7, S(h + 1), 2, S_}, {7, S(h), 3, d_},
        {7, H.shifted(1), 4, S_}, {7, S(-h), 7, d_}, {7, S(-h + 1), 8, S_}, {7, nHq, 9, d_},
        {7, S(-q), 9, S_},

        {8, nL, 1, d_}, {8, L0, 1, S_}, {8, S(h), 3, S_}, {8, H, 4, d_}, {8, S(-h), 7, S_},
        {8, nHq, 9, S_}, {8, S(-q), 9, d_},

        {9, nL0.shifted(1) | L0, 1, d_}, {9, S(h + 1), 2, d_}, {9, S(h), 3, d_}, {9, H.shifted(1), 4, d_},
        {9, S(-h), 7, d_}, {9, S(-h + 1), 8, d_}, {9, nH, 9, d_},

        {10, L | nL, 1, d_}, {10, S(h), 3, d_}, {10, H, 4, d_}, {10, S(-h), 7, d_}, {10, nH, 9, d_},
    };

    WeightedTransducer m;
    std::map<int, std::size_t> id;
    for (int s : {1, 2, 3, 4, 5, 7, 8, 9, 10})
        id[s] = m.add_state(std::to_string(s));
    m.set_initial(id[1]);

    // For small q some groups overlap through boundary absorption; a label listed
    // explicitly in a group takes precedence over one that only saturated into another.
    for (const auto& [state, sid] : id)
        for (int s = lo; s <= hi; ++s) {
            const Rule* chosen = nullptr;
            const Rule* fallback = nullptr;
            for (const auto& r : rules) {
                if (r.from != state)
                    continue;
                if (r.labels.members().count(s)) {
                    if (chosen && (chosen->to != r.to || chosen->solid != r.solid))
                        throw std::logic_error("run automaton: ambiguous label " + std::to_string(s) +
                                               " in state " + std::to_string(state));
                    chosen = &r;
                } else if (r.labels.absorbed().count(s)) {
                    if (fallback && (fallback->to != r.to || fallback->solid != r.solid))
                        throw std::logic_error("run automaton: ambiguous boundary label");
                    fallback = &r;
                }
            }
            if (!chosen)
                chosen = fallback;
            if (!chosen)
                throw std::logic_error("run automaton: state " + std::to_string(state) + " cannot read " +
                                       std::to_string(s));
            m.add_transition({sid, id.at(chosen->to), s, {}, 1, chosen->solid});
        }

    // Reading the zero padding after the last digit: count solid steps until a dotted one.
    auto outs = m.outgoing();
    for (std::size_t s = 0; s < m.size(); ++s) {
        std::size_t cur = s;
        int solid_steps = 0;
        for (int guard = 0; guard < 8; ++guard) {
            const Transition* zero = nullptr;
            for (std::size_t k : outs[cur])
                if (*m.transitions()[k].input == 0)
                    zero = &m.transitions()[k];
            if (!zero->solid)
                break;
            ++solid_steps;
            cur = zero->to;
        }
        if (solid_steps > 1)
            throw std::logic_error("run automaton: zero padding traverses more than one solid edge");
        m.set_end_solid(s, solid_steps == 1);
    }
    return m;
}

} // namespace carrylab
