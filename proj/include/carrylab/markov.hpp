#pragma once

#include "carrylab/fsm.hpp"
#include "carrylab/numbersys.hpp"
#include "carrylab/rng.hpp"

#include <span>
#include <vector>

namespace carrylab {

// Maximal-entropy weights of a primitive automaton. The exact fields are filled
// when the dominant eigenvalue is an integer; the floating fields always are.
struct ParryWeights {
    // Copy of the automaton carrying p_t as transition weights and the exit weights.
    WeightedTransducer automaton;

    bool exact = false;
    Rational lambda;
    std::vector<Rational> w;          // right eigenvector, w[initial] = 1
    std::vector<Rational> u;          // left eigenvector, <u, w> = 1
    std::vector<Rational> p;          // per transition of `automaton`
    std::vector<Rational> exit;       // 1 / (w_s <u, e_F>) on final states
    std::vector<Rational> stationary; // u_s w_s
    Rational u_final;                 // <u, e_F>

    double lambda_f = 0;
    std::vector<double> w_f, u_f, p_f, exit_f, stationary_f;
    double residual = 0; // |A w - lambda w| (max norm)
    double xi = 0;       // |second eigenvalue| / lambda, estimated
};

ParryWeights shannon_parry(const WeightedTransducer& m);

// The digit automaton of a system with its maximal-entropy weights.
ParryWeights system_weights(const DigitSystem& system);

// W_l(word): product of p_t along the path times the exit weight of the last state.
Rational word_weight(const ParryWeights& pw, std::span<const int> word);

// Number of accepted words of the given length, e_init^T A^l e_F.
BigInt count_words(const WeightedTransducer& m, std::size_t length);

// Random walk from the initial state with probabilities p_t (exit weights ignored).
class WordSampler {
public:
    explicit WordSampler(const ParryWeights& pw);
    Digits sample(std::size_t length, Rng& rng) const;

private:
    struct Choice {
        double cumulative;
        int label;
        std::size_t to;
    };
    std::vector<std::vector<Choice>> choices_;
    std::size_t initial_ = 0;
};

Digits sample_word(const ParryWeights& pw, std::size_t length, std::uint64_t seed);

} // namespace carrylab
