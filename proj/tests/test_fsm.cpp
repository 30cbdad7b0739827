#include "carrylab/addition.hpp"
#include "carrylab/machines.hpp"
#include "carrylab/markov.hpp"

#include <doctest.h>

#include "support.hpp"

#include <algorithm>

using namespace carrylab;

namespace {

WeightedTransducer squared(const DigitSystem& s)
{
    ParryWeights pw = system_weights(s);
    return additive_product(pw.automaton, pw.automaton);
}

// Feeds a word through a deterministic transducer; nullopt if it gets stuck.
std::optional<CarryWord> run(const WeightedTransducer& m, const Digits& word)
{
    auto out = m.outgoing();
    std::size_t state = m.initial();
    CarryWord emitted;
    for (int letter : word) {
        const Transition* step = nullptr;
        for (std::size_t k : out[state])
            if (m.transitions()[k].input == letter)
                step = &m.transitions()[k];
        if (!step)
            return std::nullopt;
        emitted.insert(emitted.end(), step->output.begin(), step->output.end());
        state = step->to;
    }
    return emitted;
}

} // namespace

TEST_SUITE("fsm")
{
    TEST_CASE("state counts")
    {
        const DigitSystem s4 = DigitSystem::ssde(4);
        CHECK(digit_automaton(s4).size() == 3);
        CHECK(digit_automaton(DigitSystem::qd(10, -3)).size() == 1);
        CHECK(squared(s4).size() == 9);
        CHECK(standard_adder(s4).size() == 5);
        CHECK(standard_adder(DigitSystem::qd(10, 0)).size() == 3);
        WeightedTransducer composed = compose(standard_adder(s4), squared(s4));
        CHECK(composed.size() == 45);
        CHECK(lump(composed, false).size() == 14);
        CHECK(lump(compose(neumann_run_automaton(4), squared(s4)), true).size() == 11);
        CHECK(lump(compose(neumann_run_automaton(6), squared(DigitSystem::ssde(6))), true).size() == 12);
        CHECK(lump(compose(standard_adder(DigitSystem::ssde(2)), squared(DigitSystem::ssde(2))), false).size() == 11);
        CHECK(neumann_run_automaton(4).size() == 9);
    }

    TEST_CASE("adjacency of the symmetric digit automaton")
    {
        GraphChecks g = adjacency_and_checks(digit_automaton(DigitSystem::ssde(4)));
        CHECK(g.adjacency == std::vector<std::vector<long>>{{0, 2, 0}, {1, 3, 1}, {0, 2, 0}});
        CHECK(g.strongly_connected);
        CHECK(g.aperiodic);
        GraphChecks g2 = adjacency_and_checks(digit_automaton(DigitSystem::ssde(2)));
        CHECK(g2.adjacency == std::vector<std::vector<long>>{{0, 1, 0}, {1, 1, 1}, {0, 1, 0}});
        CHECK(g2.aperiodic);
    }

    TEST_CASE("period detection")
    {
        WeightedTransducer cycle;
        cycle.add_state("a");
        cycle.add_state("b");
        cycle.add_transition({0, 1, 0, {}, 1, false});
        cycle.add_transition({1, 0, 0, {}, 1, false});
        GraphChecks g = adjacency_and_checks(cycle);
        CHECK(g.strongly_connected);
        CHECK_FALSE(g.aperiodic);
        cycle.add_transition({0, 0, 1, {}, 1, false});
        CHECK(adjacency_and_checks(cycle).aperiodic);

        WeightedTransducer split;
        split.add_state("a");
        split.add_state("b");
        split.add_transition({0, 1, 0, {}, 1, false});
        split.add_transition({1, 1, 0, {}, 1, false});
        CHECK_FALSE(adjacency_and_checks(split).strongly_connected);
    }

    TEST_CASE("products and compositions stay probabilistic")
    {
        for (int q : {2, 4, 6}) {
            const DigitSystem s = DigitSystem::ssde(q);
            ParryWeights pw = system_weights(s);
            CHECK(pw.automaton.is_probabilistic());
            // the loop at "0" reading 0 has weight 1/q
            for (const auto& t : pw.automaton.transitions())
                if (t.from == pw.automaton.initial() && t.to == t.from && t.input == 0)
                    CHECK(t.weight == frac(1, q));
            CHECK(squared(s).is_probabilistic());
            CHECK(standard_adder(s).is_deterministic());
            CHECK(neumann_run_automaton(q).is_deterministic());
            CHECK(compose(standard_adder(s), squared(s)).is_probabilistic());
            CHECK(lump(compose(standard_adder(s), squared(s)), false).is_probabilistic());
            CHECK(lump(compose(neumann_run_automaton(q), squared(s)), true).is_probabilistic());
        }
    }

    TEST_CASE("lumping preserves the output behaviour")
    {
        for (int q : {2, 4}) {
            const DigitSystem s = DigitSystem::ssde(q);
            WeightedTransducer std_chain = compose(standard_adder(s), squared(s));
            WeightedTransducer std_lumped = lump(std_chain, false);
            WeightedTransducer run_chain = compose(neumann_run_automaton(q), squared(s));
            WeightedTransducer run_lumped = lump(run_chain, true);
            for (std::size_t steps = 0; steps <= 4; ++steps) {
                CHECK(output_distribution(std_chain, steps, false) == output_distribution(std_lumped, steps, false));
                CHECK(output_distribution(run_chain, steps, true) == output_distribution(run_lumped, steps, true));
            }
            CHECK(lump(std_lumped, false).size() == std_lumped.size());
            CHECK(lump(run_lumped, true).size() == run_lumped.size());
        }
    }

    TEST_CASE("trimming keeps the reachable part")
    {
        const DigitSystem s = DigitSystem::ssde(4);
        WeightedTransducer composed = compose(standard_adder(s), squared(s));
        WeightedTransducer trimmed = trim(composed);
        CHECK(trimmed.size() < composed.size());
        CHECK(trim(trimmed).size() == trimmed.size());
        CHECK(output_distribution(trimmed, 3, false) == output_distribution(composed, 3, false));
    }

    TEST_CASE("swapping the summands")
    {
        const DigitSystem s = DigitSystem::ssde(4);
        ParryWeights pw = system_weights(s);
        WeightedTransducer a = digit_automaton(s);
        WeightedTransducer ab = compose(standard_adder(s), additive_product(pw.automaton, a));
        WeightedTransducer ba = compose(standard_adder(s), additive_product(a, pw.automaton));
        for (std::size_t steps = 1; steps <= 3; ++steps)
            CHECK(output_distribution(ab, steps, false) == output_distribution(ba, steps, false));
    }

    TEST_CASE("the adder transducer agrees with standard addition")
    {
        for (DigitSystem s : {DigitSystem::ssde(2), DigitSystem::ssde(4), DigitSystem::qd(5, -1)}) {
            WeightedTransducer adder = standard_adder(s);
            auto words = enumerate_words(s, 3);
            for (const Digits& x : words)
                for (const Digits& y : words) {
                    Digits sum = digitwise_sum(x, y);
                    auto emitted = run(adder, sum);
                    REQUIRE(emitted);
                    AdditionTrace t = standard_add(Expansion(s, x), Expansion(s, y));
                    CHECK(std::count(emitted->begin(), emitted->end(), 1) == t.pos_count);
                    CHECK(std::count(emitted->begin(), emitted->end(), -1) == t.neg_count);
                }
        }
    }

    TEST_CASE("serialization round trip")
    {
        const DigitSystem s = DigitSystem::ssde(4);
        for (const WeightedTransducer& m :
             {system_weights(s).automaton, standard_adder(s), neumann_run_automaton(4),
              lump(compose(neumann_run_automaton(4), squared(s)), true)}) {
            std::string text = serialize(m);
            WeightedTransducer back = deserialize(text);
            CHECK(serialize(back) == text);
            CHECK(back.size() == m.size());
            CHECK(output_distribution(back, 3, true) == output_distribution(m, 3, true));
        }
        CHECK_THROWS(deserialize("states x"));
    }
}
