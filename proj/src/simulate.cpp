#include "carrylab/simulate.hpp"

#include "carrylab/addition.hpp"
#include "carrylab/markov.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

namespace carrylab {

namespace {

CarryStats summarize(const std::vector<int>& m, const std::vector<int>& n)
{
    CarryStats s;
    const double count = static_cast<double>(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        s.mean_m += m[i];
        s.mean_n += n[i];
    }
    s.mean_m /= count;
    s.mean_n /= count;
    if (m.size() < 2)
        return s;
    for (std::size_t i = 0; i < m.size(); ++i) {
        double dm = m[i] - s.mean_m, dn = n[i] - s.mean_n;
        s.var_m += dm * dm;
        s.var_n += dn * dn;
        s.cov += dm * dn;
    }
    s.var_m /= count - 1;
    s.var_n /= count - 1;
    s.cov /= count - 1;
    return s;
}

} // namespace

SimulationResult simulate(const SimulationConfig& config)
{
    if (config.trials < 1)
        throw std::invalid_argument("simulate: at least one trial is needed");
    const DigitSystem& system = config.system;
    const ParryWeights pw = system_weights(system);
    const WordSampler sampler(pw);

    SimulationResult r;
    r.config = config;
    const std::size_t trials = config.trials;
    std::vector<int> m(trials), n(trials), t(trials);

    auto run_trial = [&](std::size_t i) {
        Rng rng(config.seed, i);
        Digits x = sampler.sample(config.ell, rng);
        Digits y = sampler.sample(config.ell, rng);
        if (config.mode == AdderMode::neumann) {
            t[i] = neumann_iterations(x, y, system);
            return;
        }
        Digits s = digitwise_sum(x, y);
        AdditionTrace trace =
            system.is_ssde() ? standard_add_ssde(s, system.base()) : standard_add_qd(s, system.base(), system.offset());
        m[i] = trace.pos_count;
        n[i] = trace.neg_count;
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(config.workers, static_cast<unsigned>(trials)));
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w)
        threads.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < trials; i += workers)
                    run_trial(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    for (auto& th : threads)
        th.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);

    if (config.mode == AdderMode::neumann) {
        r.t = std::move(t);
        for (int v : r.t)
            ++r.t_histogram[v];
    } else {
        r.stats = summarize(m, n);
        r.m = std::move(m);
        r.n = std::move(n);
    }
    return r;
}

} // namespace carrylab
