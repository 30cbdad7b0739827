#pragma once

#include "carrylab/exact.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace carrylab {

// Carries written by one transition, in the order they are produced (least significant first).
using CarryWord = std::vector<int>;

struct Transition {
    std::size_t from = 0;
    std::size_t to = 0;
    std::optional<int> input; // absent once a machine only describes its output behaviour
    CarryWord output;
    Rational weight = 1;
    bool solid = false;
};

class WeightedTransducer {
public:
    std::size_t add_state(std::string label, Rational exit_weight = 1, bool final = true);
    void add_transition(Transition t);

    std::size_t size() const { return labels_.size(); }
    const std::string& label(std::size_t s) const { return labels_.at(s); }
    std::optional<std::size_t> find_state(const std::string& label) const;

    std::size_t initial() const { return initial_; }
    void set_initial(std::size_t s) { initial_ = s; }

    bool is_final(std::size_t s) const { return final_.at(s); }
    void set_final(std::size_t s, bool f) { final_.at(s) = f; }
    const Rational& exit_weight(std::size_t s) const { return exit_.at(s); }
    void set_exit_weight(std::size_t s, Rational w) { exit_.at(s) = std::move(w); }

    // One more solid transition is traversed when reading stops in this state
    // (the zero padding behind the most significant digit).
    bool end_solid(std::size_t s) const { return end_solid_.at(s); }
    void set_end_solid(std::size_t s, bool v) { end_solid_.at(s) = v; }

    const std::vector<Transition>& transitions() const { return transitions_; }
    std::vector<Transition>& transitions() { return transitions_; }
    std::vector<std::vector<std::size_t>> outgoing() const;

    // Outgoing weights sum to exactly 1 at every state.
    bool is_probabilistic() const;
    // At most one transition per (state, input label).
    bool is_deterministic() const;

private:
    std::vector<std::string> labels_;
    std::vector<Rational> exit_;
    std::vector<bool> final_;
    std::vector<bool> end_solid_;
    std::vector<Transition> transitions_;
    std::size_t initial_ = 0;
};

// Cartesian product reading pairs of letters; the new input label is their sum.
WeightedTransducer additive_product(const WeightedTransducer& a, const WeightedTransducer& b);

// Feeds the labels of the output-free automaton `inner` into the deterministic
// transducer `outer`. Weights and exit weights come from `inner`.
WeightedTransducer compose(const WeightedTransducer& outer, const WeightedTransducer& inner);

// Restriction to the states reachable from the initial state.
WeightedTransducer trim(const WeightedTransducer& m);

struct Lumping {
    WeightedTransducer machine;
    // Labels of the original states merged into each new state.
    std::vector<std::vector<std::string>> classes;
};

// Merges parallel transitions and contracts the coarsest partition of the reachable
// states whose blocks agree on exit weight, end behaviour and the total weight sent
// to each block per output label (and solid flag, if respected).
Lumping lump_with_classes(const WeightedTransducer& m, bool respect_solid);
WeightedTransducer lump(const WeightedTransducer& m, bool respect_solid);

struct GraphChecks {
    std::vector<std::vector<long>> adjacency; // counts parallel transitions
    bool strongly_connected = false;
    bool aperiodic = false;
};
GraphChecks adjacency_and_checks(const WeightedTransducer& m);

// Distribution of everything a machine emits (carries, solid marks, end marks)
// over all paths with `steps` transitions, finished with the exit weights.
std::map<std::vector<int>, Rational> output_distribution(const WeightedTransducer& m, std::size_t steps,
                                                         bool include_solid);

std::string serialize(const WeightedTransducer& m);
WeightedTransducer deserialize(const std::string& text);

} // namespace carrylab
