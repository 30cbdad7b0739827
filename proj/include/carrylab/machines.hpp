#pragma once

#include "carrylab/fsm.hpp"
#include "carrylab/numbersys.hpp"

#include <set>
#include <vector>

namespace carrylab {

// Label sets over the extended digit set {lo, ..., hi} with the saturating shift
// M + e = ({m + e : m in M} u (M n {lo, hi})) n {lo, ..., hi}.
// Members that survive a shift only because they sit on the boundary are kept
// apart, so that an explicitly listed label can win over them.
class LabelSet {
public:
    LabelSet() = default;
    static LabelSet range(int a, int b, int lo, int hi);
    static LabelSet single(int v, int lo, int hi) { return range(v, v, lo, hi); }

    LabelSet shifted(int eps) const;
    LabelSet negated() const;
    LabelSet operator|(const LabelSet& o) const;

    const std::set<int>& members() const { return members_; }
    const std::set<int>& absorbed() const { return absorbed_; }
    std::set<int> all() const;

private:
    int lo_ = 0;
    int hi_ = 0;
    std::set<int> members_;
    std::set<int> absorbed_;
};

// Automaton accepting the valid words of a system, read least significant digit first.
// (q,d): one state "0". SSDE: states "-1", "0", "1" (sign of a pending boundary digit).
WeightedTransducer digit_automaton(const DigitSystem& system);

// Carry transducer of standard addition reading digitwise sums.
// (q,d): states "-1", "0", "1". SSDE: additionally "-q/2", "q/2" awaiting the lookahead digit.
WeightedTransducer standard_adder(const DigitSystem& system);

// Automaton over digitwise sums of two SSDEs whose longest run of solid transitions
// bounds the number of von Neumann iterations: t <= k + 2 iff the run is at most k.
// States "1".."10" (there is no state 6); "1" is initial.
WeightedTransducer neumann_run_automaton(int q);

} // namespace carrylab
