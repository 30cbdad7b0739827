#include "carrylab/fsm.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace carrylab {

std::size_t WeightedTransducer::add_state(std::string label, Rational exit_weight, bool final)
{
    labels_.push_back(std::move(label));
    exit_.push_back(std::move(exit_weight));
    final_.push_back(final);
    end_solid_.push_back(false);
    return labels_.size() - 1;
}

void WeightedTransducer::add_transition(Transition t)
{
    if (t.from >= size() || t.to >= size())
        throw std::out_of_range("transition refers to an unknown state");
    transitions_.push_back(std::move(t));
}

std::optional<std::size_t> WeightedTransducer::find_state(const std::string& label) const
{
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end())
        return std::nullopt;
    return static_cast<std::size_t>(it - labels_.begin());
}

std::vector<std::vector<std::size_t>> WeightedTransducer::outgoing() const
{
    std::vector<std::vector<std::size_t>> out(size());
    for (std::size_t i = 0; i < transitions_.size(); ++i)
        out[transitions_[i].from].push_back(i);
    return out;
}

bool WeightedTransducer::is_probabilistic() const
{
    std::vector<Rational> sums(size());
    for (const auto& t : transitions_)
        sums[t.from] += t.weight;
    return std::all_of(sums.begin(), sums.end(), [](const Rational& s) { return s == 1; });
}

bool WeightedTransducer::is_deterministic() const
{
    std::set<std::pair<std::size_t, int>> seen;
    for (const auto& t : transitions_) {
        if (!t.input)
            continue;
        if (!seen.insert({t.from, *t.input}).second)
            return false;
    }
    return true;
}

WeightedTransducer additive_product(const WeightedTransducer& a, const WeightedTransducer& b)
{
    WeightedTransducer out;
    const std::size_t nb = b.size();
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < nb; ++j)
            out.add_state("(" + a.label(i) + "," + b.label(j) + ")", a.exit_weight(i) * b.exit_weight(j),
                          a.is_final(i) && b.is_final(j));
    out.set_initial(a.initial() * nb + b.initial());

    auto bout = b.outgoing();
    for (const auto& ta : a.transitions()) {
        if (!ta.input)
            throw std::invalid_argument("additive_product needs input labels");
        for (std::size_t j = 0; j < nb; ++j)
            for (std::size_t k : bout[j]) {
                const Transition& tb = b.transitions()[k];
                if (!tb.input)
                    throw std::invalid_argument("additive_product needs input labels");
                Transition t;
                t.from = ta.from * nb + j;
                t.to = ta.to * nb + tb.to;
                t.input = *ta.input + *tb.input;
                t.weight = ta.weight * tb.weight;
                out.add_transition(std::move(t));
            }
    }
    return out;
}

WeightedTransducer compose(const WeightedTransducer& outer, const WeightedTransducer& inner)
{
    const std::size_t ni = inner.size();
    WeightedTransducer out;
    for (std::size_t b = 0; b < outer.size(); ++b)
        for (std::size_t a = 0; a < ni; ++a) {
            std::size_t s = out.add_state("(" + outer.label(b) + "," + inner.label(a) + ")", inner.exit_weight(a),
                                          inner.is_final(a) && outer.is_final(b));
            out.set_end_solid(s, outer.end_solid(b));
        }
    out.set_initial(outer.initial() * ni + inner.initial());

    // outer transitions indexed by (state, input)
    std::map<std::pair<std::size_t, int>, const Transition*> reads;
    for (const auto& t : outer.transitions()) {
        if (!t.input)
            throw std::invalid_argument("compose: outer machine must have input labels");
        if (!reads.emplace(std::make_pair(t.from, *t.input), &t).second)
            throw std::invalid_argument("compose: outer machine is not deterministic");
    }
    for (std::size_t b = 0; b < outer.size(); ++b)
        for (const auto& ta : inner.transitions()) {
            if (!ta.input)
                throw std::invalid_argument("compose: inner machine must have input labels");
            auto it = reads.find({b, *ta.input});
            if (it == reads.end())
                throw std::invalid_argument("compose: state " + outer.label(b) + " cannot read label " +
                                            std::to_string(*ta.input));
            const Transition& tb = *it->second;
            Transition t;
            t.from = b * ni + ta.from;
            t.to = tb.to * ni + ta.to;
            t.input = ta.input;
            t.output = tb.output;
            t.weight = ta.weight;
            t.solid = tb.solid;
            out.add_transition(std::move(t));
        }
    return out;
}

WeightedTransducer trim(const WeightedTransducer& m)
{
    std::vector<bool> seen(m.size(), false);
    auto out_edges = m.outgoing();
    std::vector<std::size_t> stack{m.initial()};
    seen[m.initial()] = true;
    while (!stack.empty()) {
        std::size_t s = stack.back();
        stack.pop_back();
        for (std::size_t k : out_edges[s]) {
            std::size_t t = m.transitions()[k].to;
            if (!seen[t]) {
                seen[t] = true;
                stack.push_back(t);
            }
        }
    }
    std::vector<std::size_t> remap(m.size(), 0);
    WeightedTransducer out;
    for (std::size_t s = 0; s < m.size(); ++s)
        if (seen[s]) {
            remap[s] = out.add_state(m.label(s), m.exit_weight(s), m.is_final(s));
            out.set_end_solid(remap[s], m.end_solid(s));
        }
    out.set_initial(remap[m.initial()]);
    for (const auto& t : m.transitions())
        if (seen[t.from]) {
            Transition c = t;
            c.from = remap[t.from];
            c.to = remap[t.to];
            out.add_transition(std::move(c));
        }
    return out;
}

namespace {

// (target, output, solid) -> summed weight, per state
using MergedEdges = std::map<std::tuple<std::size_t, CarryWord, bool>, Rational>;

std::vector<MergedEdges> merge_parallel(const WeightedTransducer& m, bool respect_solid)
{
    std::vector<MergedEdges> out(m.size());
    for (const auto& t : m.transitions())
        out[t.from][{t.to, t.output, respect_solid && t.solid}] += t.weight;
    return out;
}

} // namespace

Lumping lump_with_classes(const WeightedTransducer& input, bool respect_solid)
{
    WeightedTransducer m = trim(input);
    const std::size_t n = m.size();
    auto edges = merge_parallel(m, respect_solid);

    // Initial partition: exit weight, final flag, end behaviour.
    std::vector<std::size_t> block(n);
    {
        std::map<std::tuple<Rational, bool, bool>, std::size_t, std::less<>> ids;
        for (std::size_t s = 0; s < n; ++s) {
            auto key = std::make_tuple(m.exit_weight(s), m.is_final(s), m.end_solid(s));
            auto [it, inserted] = ids.emplace(key, ids.size());
            block[s] = it->second;
        }
    }

    using Signature = std::map<std::tuple<std::size_t, CarryWord, bool>, Rational>;
    std::size_t count = 0;
    while (true) {
        std::map<std::pair<std::size_t, Signature>, std::size_t> ids;
        std::vector<std::size_t> next(n);
        for (std::size_t s = 0; s < n; ++s) {
            Signature sig;
            for (const auto& [key, w] : edges[s])
                sig[{block[std::get<0>(key)], std::get<1>(key), std::get<2>(key)}] += w;
            auto [it, inserted] = ids.emplace(std::make_pair(block[s], std::move(sig)), ids.size());
            next[s] = it->second;
        }
        std::size_t new_count = ids.size();
        block = std::move(next);
        if (new_count == count)
            break;
        count = new_count;
    }

    // Number blocks by their smallest member so the result is deterministic.
    std::vector<std::size_t> order(count, n);
    for (std::size_t s = 0; s < n; ++s)
        order[block[s]] = std::min(order[block[s]], s);
    std::vector<std::size_t> rank(count);
    {
        std::vector<std::size_t> ids(count);
        std::iota(ids.begin(), ids.end(), 0);
        std::sort(ids.begin(), ids.end(), [&](auto a, auto b) { return order[a] < order[b]; });
        for (std::size_t r = 0; r < count; ++r)
            rank[ids[r]] = r;
    }

    Lumping out;
    out.classes.resize(count);
    for (std::size_t s = 0; s < n; ++s)
        out.classes[rank[block[s]]].push_back(m.label(s));
    for (std::size_t b = 0; b < count; ++b) {
        std::string label = "{";
        for (std::size_t i = 0; i < out.classes[b].size(); ++i)
            label += (i ? ";" : "") + out.classes[b][i];
        label += "}";
        std::size_t rep = 0;
        while (rank[block[rep]] != b)
            ++rep;
        std::size_t id = out.machine.add_state(label, m.exit_weight(rep), m.is_final(rep));
        out.machine.set_end_solid(id, m.end_solid(rep));
    }
    out.machine.set_initial(rank[block[m.initial()]]);
    for (std::size_t b = 0; b < count; ++b) {
        std::size_t rep = 0;
        while (rank[block[rep]] != b)
            ++rep;
        std::map<std::tuple<std::size_t, CarryWord, bool>, Rational> agg;
        for (const auto& [key, w] : edges[rep])
            agg[{rank[block[std::get<0>(key)]], std::get<1>(key), std::get<2>(key)}] += w;
        for (const auto& [key, w] : agg) {
            Transition t;
            t.from = b;
            t.to = std::get<0>(key);
            t.output = std::get<1>(key);
            t.solid = std::get<2>(key);
            t.weight = w;
            out.machine.add_transition(std::move(t));
        }
    }
    return out;
}

WeightedTransducer lump(const WeightedTransducer& m, bool respect_solid)
{
    return lump_with_classes(m, respect_solid).machine;
}

GraphChecks adjacency_and_checks(const WeightedTransducer& m)
{
    const std::size_t n = m.size();
    GraphChecks out;
    out.adjacency.assign(n, std::vector<long>(n, 0));
    for (const auto& t : m.transitions())
        ++out.adjacency[t.from][t.to];
    if (n == 0)
        return out;

    auto reach = [&](bool reverse) {
        std::vector<bool> seen(n, false);
        std::vector<std::size_t> stack{0};
        seen[0] = true;
        while (!stack.empty()) {
            std::size_t s = stack.back();
            stack.pop_back();
            for (std::size_t t = 0; t < n; ++t) {
                long edge = reverse ? out.adjacency[t][s] : out.adjacency[s][t];
                if (edge > 0 && !seen[t]) {
                    seen[t] = true;
                    stack.push_back(t);
                }
            }
        }
        return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
    };
    out.strongly_connected = reach(false) && reach(true);

    // Period = gcd over edges u->v of level(u) + 1 - level(v), BFS levels from state 0.
    std::vector<long> level(n, -1);
    std::queue<std::size_t> todo;
    level[0] = 0;
    todo.push(0);
    while (!todo.empty()) {
        std::size_t s = todo.front();
        todo.pop();
        for (std::size_t t = 0; t < n; ++t)
            if (out.adjacency[s][t] > 0 && level[t] < 0) {
                level[t] = level[s] + 1;
                todo.push(t);
            }
    }
    long period = 0;
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = 0; t < n; ++t)
            if (out.adjacency[s][t] > 0 && level[s] >= 0 && level[t] >= 0)
                period = std::gcd(period, std::labs(level[s] + 1 - level[t]));
    out.aperiodic = period == 1;
    return out;
}

std::map<std::vector<int>, Rational> output_distribution(const WeightedTransducer& m, std::size_t steps,
                                                         bool include_solid)
{
    constexpr int solid_mark = 2;
    constexpr int end_mark = 3;
    auto out_edges = m.outgoing();
    // (emitted history, state) -> mass
    std::map<std::pair<std::vector<int>, std::size_t>, Rational> cur;
    cur[{{}, m.initial()}] = 1;
    for (std::size_t step = 0; step < steps; ++step) {
        std::map<std::pair<std::vector<int>, std::size_t>, Rational> next;
        for (const auto& [key, mass] : cur)
            for (std::size_t k : out_edges[key.second]) {
                const Transition& t = m.transitions()[k];
                std::vector<int> h = key.first;
                h.insert(h.end(), t.output.begin(), t.output.end());
                if (include_solid && t.solid)
                    h.push_back(solid_mark);
                next[{std::move(h), t.to}] += mass * t.weight;
            }
        cur = std::move(next);
    }
    std::map<std::vector<int>, Rational> out;
    for (const auto& [key, mass] : cur) {
        if (!m.is_final(key.second))
            continue;
        std::vector<int> h = key.first;
        if (include_solid && m.end_solid(key.second))
            h.push_back(end_mark);
        Rational v = mass * m.exit_weight(key.second);
        if (sgn(v) != 0)
            out[std::move(h)] += v;
    }
    return out;
}

std::string serialize(const WeightedTransducer& m)
{
    std::ostringstream os;
    os << "states " << m.size() << "\n";
    os << "initial " << m.initial() << "\n";
    for (std::size_t s = 0; s < m.size(); ++s)
        os << "state " << s << " final=" << m.is_final(s) << " exit=" << to_string(m.exit_weight(s))
           << " end_solid=" << m.end_solid(s) << " label=" << m.label(s) << "\n";
    for (const auto& t : m.transitions()) {
        os << "transition " << t.from << " " << t.to << " input=";
        if (t.input)
            os << *t.input;
        else
            os << "-";
        os << " output=";
        if (t.output.empty())
            os << "-";
        for (std::size_t i = 0; i < t.output.size(); ++i)
            os << (i ? "," : "") << t.output[i];
        os << " weight=" << to_string(t.weight) << " solid=" << t.solid << "\n";
    }
    return os.str();
}

namespace {

std::string field(std::istringstream& is, const std::string& key)
{
    std::string tok;
    is >> tok;
    if (tok.rfind(key + "=", 0) != 0)
        throw std::invalid_argument("expected field " + key + " but found '" + tok + "'");
    return tok.substr(key.size() + 1);
}

} // namespace

WeightedTransducer deserialize(const std::string& text)
{
    std::istringstream lines(text);
    std::string line;
    WeightedTransducer m;
    std::size_t initial = 0;
    std::optional<std::size_t> declared;
    while (std::getline(lines, line)) {
        if (line.empty())
            continue;
        std::istringstream is(line);
        std::string kind;
        is >> kind;
        if (kind == "states") {
            std::size_t n;
            if (!(is >> n))
                throw std::invalid_argument("bad state count: " + line);
            declared = n;
        } else if (kind == "initial") {
            if (!(is >> initial))
                throw std::invalid_argument("bad initial state: " + line);
        } else if (kind == "state") {
            std::size_t id;
            if (!(is >> id))
                throw std::invalid_argument("bad state line: " + line);
            bool final = field(is, "final") == "1";
            Rational exit = parse_rational(field(is, "exit"));
            bool end = field(is, "end_solid") == "1";
            std::string rest;
            std::getline(is, rest);
            auto pos = rest.find("label=");
            if (pos == std::string::npos)
                throw std::invalid_argument("state line without label");
            std::size_t s = m.add_state(rest.substr(pos + 6), exit, final);
            if (s != id)
                throw std::invalid_argument("states must be listed in order");
            m.set_end_solid(s, end);
        } else if (kind == "transition") {
            Transition t;
            if (!(is >> t.from >> t.to) || t.from >= m.size() || t.to >= m.size())
                throw std::invalid_argument("bad transition line: " + line);
            std::string in = field(is, "input");
            if (in != "-")
                t.input = std::stoi(in);
            std::string outs = field(is, "output");
            if (outs != "-") {
                std::istringstream os(outs);
                std::string c;
                while (std::getline(os, c, ','))
                    t.output.push_back(std::stoi(c));
            }
            t.weight = parse_rational(field(is, "weight"));
            t.solid = field(is, "solid") == "1";
            m.add_transition(std::move(t));
        } else {
            throw std::invalid_argument("unknown line: " + line);
        }
    }
    if (declared && *declared != m.size())
        throw std::invalid_argument("state count does not match the listed states");
    if (m.size() > 0) {
        if (initial >= m.size())
            throw std::invalid_argument("initial state out of range");
        m.set_initial(initial);
    }
    return m;
}

} // namespace carrylab
