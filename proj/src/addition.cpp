#include "carrylab/addition.hpp"

#include "carrylab/machines.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace carrylab {

int qd_carry(int a, int q, int d)
{
    if (a >= q + d)
        return 1;
    if (a <= d - 1)
        return -1;
    return 0;
}

int ssde_carry(int a, int next, int q)
{
    const int h = q / 2;
    if (a > h)
        return 1;
    if (a < -h)
        return -1;
    if (a == h && ((-h <= next && next < 0) || (h <= next && next < q)))
        return 1;
    if (a == -h && ((-q < next && next <= -h) || (0 < next && next <= h)))
        return -1;
    return 0;
}

namespace {

AdditionTrace finish(std::span<const int> s, Digits z, Digits carries, const DigitSystem& system)
{
    AdditionTrace trace{Digits(s.begin(), s.end()), Expansion(system), std::move(carries), 0, 0};
    for (int c : trace.carries) {
        trace.pos_count += c == 1;
        trace.neg_count += c == -1;
    }
    if (!trace.carries.empty() && trace.carries.back() != 0)
        z.push_back(trace.carries.back());
    trace.result = Expansion::unchecked(system, std::move(z));
    return trace;
}

} // namespace

AdditionTrace standard_add_qd(std::span<const int> s, int q, int d)
{
    const DigitSystem system = DigitSystem::qd(q, d);
    Digits z(s.size());
    Digits carries(s.size());
    int c = 0;
    for (std::size_t j = 0; j < s.size(); ++j) {
        if (s[j] < 2 * d || s[j] > 2 * q + 2 * d - 2)
            throw DomainError("digitwise sum " + std::to_string(s[j]) + " out of range for " + system.to_string());
        int a = s[j] + c;
        c = qd_carry(a, q, d);
        z[j] = a - c * q;
        carries[j] = c;
    }
    return finish(s, std::move(z), std::move(carries), system);
}

AdditionTrace standard_add_ssde(std::span<const int> s, int q)
{
    const DigitSystem system = DigitSystem::ssde(q);
    for (int v : s)
        if (v < -q || v > q)
            throw DomainError("digitwise sum " + std::to_string(v) + " out of range for " + system.to_string());
    Digits z(s.size());
    Digits carries(s.size());
    int c = 0;
    for (std::size_t j = 0; j < s.size(); ++j) {
        int a = s[j] + c;
        int next = j + 1 < s.size() ? s[j + 1] : 0;
        c = ssde_carry(a, next, q);
        z[j] = a - c * q;
        carries[j] = c;
    }
    return finish(s, std::move(z), std::move(carries), system);
}

Digits digitwise_sum(std::span<const int> x, std::span<const int> y)
{
    Digits s(std::max(x.size(), y.size()), 0);
    for (std::size_t j = 0; j < x.size(); ++j)
        s[j] += x[j];
    for (std::size_t j = 0; j < y.size(); ++j)
        s[j] += y[j];
    return s;
}

AdditionTrace standard_add(const Expansion& x, const Expansion& y)
{
    if (!(x.system() == y.system()))
        throw std::invalid_argument("summands belong to different systems");
    Digits s = digitwise_sum(x.digits(), y.digits());
    const DigitSystem& sys = x.system();
    if (sys.is_ssde())
        return standard_add_ssde(s, sys.base());
    return standard_add_qd(s, sys.base(), sys.offset());
}

NeumannStep neumann_step(std::span<const int> s, const DigitSystem& system)
{
    const int q = system.base();
    const int h = q / 2;
    NeumannStep out{Digits(s.size()), Digits(s.size() + 1, 0)};
    for (std::size_t j = 0; j < s.size(); ++j) {
        int carry = 0;
        if (system.is_ssde()) {
            int sign = (s[j] > 0) - (s[j] < 0);
            int next = j + 1 < s.size() ? s[j + 1] : 0;
            int a = std::abs(s[j]);
            if (a > h || (a == h && ((sign * next) % q + q) % q >= h))
                carry = sign;
        } else {
            const int d = system.offset();
            if (s[j] >= q + d)
                carry = 1;
            else if (s[j] <= d - 1)
                carry = -1;
        }
        out.c[j + 1] = carry;
        out.z[j] = s[j] - carry * q;
    }
    return out;
}

namespace {

bool all_zero(std::span<const int> v)
{
    return std::all_of(v.begin(), v.end(), [](int d) { return d == 0; });
}

} // namespace

NeumannTrace neumann_add(const Expansion& x, const Expansion& y, std::optional<int> cap)
{
    if (!(x.system() == y.system()))
        throw std::invalid_argument("summands belong to different systems");
    const int limit = cap.value_or(static_cast<int>(4 * std::max(x.length(), y.length()) + 16));
    NeumannTrace trace;
    trace.states.push_back({x.digits(), y.digits()});
    while (!all_zero(trace.states.back().c)) {
        if (trace.iterations >= limit)
            throw std::runtime_error("von Neumann addition exceeded the iteration cap");
        const auto& cur = trace.states.back();
        Digits s = digitwise_sum(cur.z, cur.c);
        trace.states.push_back(neumann_step(s, x.system()));
        ++trace.iterations;
    }
    return trace;
}

int neumann_iterations(std::span<const int> x, std::span<const int> y, const DigitSystem& system)
{
    const int limit = static_cast<int>(4 * std::max(x.size(), y.size()) + 16);
    Digits z(x.begin(), x.end());
    Digits c(y.begin(), y.end());
    int t = 0;
    while (!all_zero(c)) {
        if (t >= limit)
            throw std::runtime_error("von Neumann addition exceeded the iteration cap");
        Digits s = digitwise_sum(z, c);
        NeumannStep step = neumann_step(s, system);
        z = std::move(step.z);
        c = std::move(step.c);
        ++t;
    }
    return t;
}

namespace {

struct RunTable {
    int q = 0;
    std::size_t initial = 0;
    std::vector<std::size_t> next; // [state * (2q+1) + (s+q)]
    std::vector<char> solid;
    std::vector<char> end_solid;
};

std::shared_ptr<const RunTable> run_table(int q)
{
    static std::mutex mutex;
    static std::map<int, std::shared_ptr<const RunTable>> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(q);
    if (it != cache.end())
        return it->second;
    WeightedTransducer m = neumann_run_automaton(q);
    auto table = std::make_shared<RunTable>();
    const std::size_t width = 2 * q + 1;
    table->q = q;
    table->initial = m.initial();
    table->next.assign(m.size() * width, 0);
    table->solid.assign(m.size() * width, 0);
    for (const auto& t : m.transitions()) {
        std::size_t k = t.from * width + static_cast<std::size_t>(*t.input + q);
        table->next[k] = t.to;
        table->solid[k] = t.solid;
    }
    for (std::size_t s = 0; s < m.size(); ++s)
        table->end_solid.push_back(m.end_solid(s));
    cache[q] = table;
    return table;
}

} // namespace

int longest_solid_run(std::span<const int> s, int q)
{
    auto table = run_table(q);
    const std::size_t width = 2 * q + 1;
    std::size_t state = table->initial;
    int run = 0;
    int best = 0;
    for (int v : s) {
        if (v < -q || v > q)
            throw DomainError("digitwise sum out of range for the run automaton");
        std::size_t k = state * width + static_cast<std::size_t>(v + q);
        run = table->solid[k] ? run + 1 : 0;
        best = std::max(best, run);
        state = table->next[k];
    }
    if (table->end_solid[state])
        best = std::max(best, run + 1);
    return best;
}

} // namespace carrylab
