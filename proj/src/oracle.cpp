#include "carrylab/oracle.hpp"

#include "carrylab/addition.hpp"
#include "carrylab/markov.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

namespace carrylab::oracle {

namespace {

struct WeightedWords {
    std::vector<Digits> words;
    std::vector<Rational> weights;
};

WeightedWords weighted_words(const DigitSystem& system, std::size_t ell)
{
    ParryWeights pw = system_weights(system);
    // checked before enumerating, the word list itself may not fit in memory
    const BigInt n = count_words(pw.automaton, ell);
    if (n * n > BigInt(static_cast<unsigned long>(max_pairs)))
        throw std::length_error("oracle: too many pairs to enumerate");
    WeightedWords w;
    w.words = enumerate_words(system, ell);
    for (const auto& word : w.words)
        w.weights.push_back(word_weight(pw, word));
    return w;
}

// Runs `visit(i, partial)` for every first word i, splitting the indices into contiguous
// blocks per worker; the partial maps are merged in block order.
template <class Key, class Visit>
std::map<Key, Rational> reduce(std::size_t count, unsigned workers, Visit visit)
{
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    std::vector<std::map<Key, Rational>> partial(workers);
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w)
        threads.emplace_back([&, w] {
            try {
                for (std::size_t i = count * w / workers; i < count * (w + 1) / workers; ++i)
                    visit(i, partial[w]);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    for (auto& t : threads)
        t.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    std::map<Key, Rational> out;
    for (auto& part : partial)
        for (auto& [key, value] : part)
            out[key] += value;
    return out;
}

} // namespace

JointDistribution carry_distribution_bruteforce(const DigitSystem& system, std::size_t ell, unsigned workers)
{
    const WeightedWords w = weighted_words(system, ell);
    return reduce<std::pair<int, int>>(w.words.size(), workers, [&](std::size_t i, JointDistribution& out) {
        for (std::size_t j = 0; j < w.words.size(); ++j) {
            Digits s = digitwise_sum(w.words[i], w.words[j]);
            AdditionTrace trace = system.is_ssde() ? standard_add_ssde(s, system.base())
                                                   : standard_add_qd(s, system.base(), system.offset());
            out[{trace.pos_count, trace.neg_count}] += w.weights[i] * w.weights[j];
        }
    });
}

std::map<int, Rational> neumann_distribution_bruteforce(const DigitSystem& system, std::size_t ell, unsigned workers)
{
    const WeightedWords w = weighted_words(system, ell);
    return reduce<int>(w.words.size(), workers, [&](std::size_t i, std::map<int, Rational>& out) {
        for (std::size_t j = 0; j < w.words.size(); ++j)
            out[neumann_iterations(w.words[i], w.words[j], system)] += w.weights[i] * w.weights[j];
    });
}

} // namespace carrylab::oracle
