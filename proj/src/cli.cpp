#include "carrylab/cli.hpp"

#include "carrylab/addition.hpp"
#include "carrylab/closed_forms.hpp"
#include "carrylab/machines.hpp"
#include "carrylab/markov.hpp"
#include "carrylab/moments.hpp"
#include "carrylab/neumann.hpp"
#include "carrylab/oracle.hpp"
#include "carrylab/simulate.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <variant>

namespace carrylab::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Cell = std::variant<std::monostate, std::string, long long, double>;

std::string decimal(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// One table per command; CSV with a header row, or JSON as an array of records.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row)
    {
        row.resize(columns.size());
        rows.push_back(std::move(row));
    }
};

std::string csv_field(const Cell& c)
{
    if (std::holds_alternative<std::monostate>(c))
        return "";
    if (auto* s = std::get_if<std::string>(&c)) {
        if (s->find_first_of(",\"\n") == std::string::npos)
            return *s;
        std::string q = "\"";
        for (char ch : *s)
            q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        return q + "\"";
    }
    if (auto* i = std::get_if<long long>(&c))
        return std::to_string(*i);
    return decimal(std::get<double>(c));
}

void emit(const Table& t, const std::string& format, std::ostream& out)
{
    if (format == "json") {
        nlohmann::ordered_json records = nlohmann::ordered_json::array();
        for (const auto& row : t.rows) {
            nlohmann::ordered_json rec = nlohmann::ordered_json::object();
            for (std::size_t i = 0; i < t.columns.size(); ++i) {
                const Cell& c = row[i];
                if (std::holds_alternative<std::monostate>(c))
                    rec[t.columns[i]] = nullptr;
                else if (auto* s = std::get_if<std::string>(&c))
                    rec[t.columns[i]] = *s;
                else if (auto* n = std::get_if<long long>(&c))
                    rec[t.columns[i]] = *n;
                else
                    rec[t.columns[i]] = std::get<double>(c);
            }
            records.push_back(std::move(rec));
        }
        out << records.dump(2) << "\n";
        return;
    }
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        out << (i ? "," : "") << t.columns[i];
    out << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << csv_field(row[i]);
        out << "\n";
    }
}

Cell exact(const Rational& r) { return to_string(r); }
Cell approx(const Rational& r) { return r.get_d(); }

// "1,0,-1" is a digit string; anything else is a decimal integer.
Expansion read_operand(const std::string& text, const DigitSystem& system)
{
    if (text.find(',') != std::string::npos)
        return Expansion(system, parse_digits(text));
    BigInt n;
    if (n.set_str(text, 10) != 0)
        throw UsageError("not an integer or digit string: " + text);
    return encode(n, system);
}

struct Globals {
    std::string system = "qd:q=10,d=0";
    std::optional<std::uint64_t> seed;
    unsigned workers = 1;
    std::string format = "csv";
    std::string out_file;

    DigitSystem digit_system(std::optional<int> d = std::nullopt) const
    {
        try {
            DigitSystem s = DigitSystem::parse(system);
            if (d) {
                if (s.is_ssde())
                    throw UsageError("--d applies to qd systems only");
                s = DigitSystem::qd(s.base(), *d);
            }
            return s;
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    std::uint64_t seed_value() const
    {
        if (seed)
            return *seed;
        if (const char* env = std::getenv("CARRYLAB_SEED"))
            return std::stoull(env);
        return 0;
    }
};

CarryChain carry_chain(const DigitSystem& s)
{
    return s.is_ssde() ? ssde_carry_chain(s.base()) : qd_carry_chain(s.base(), s.offset());
}

PolyMatrix carry_matrix(const DigitSystem& s)
{
    return s.is_ssde() ? build_S_ssde(s.base()) : build_S_qd(s.base(), s.offset());
}

void require_ssde(const DigitSystem& s, const char* command)
{
    if (!s.is_ssde())
        throw UsageError(std::string(command) + " needs an ssde system");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Carry propagation analysis for (q,d)-expansions and symmetric signed digit expansions"};
    app.name("carrylab");
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--system", g.system, "digit system, e.g. qd:q=10,d=-1 or ssde:q=4");
    app.add_option("--seed", g.seed, "random seed (default: CARRYLAB_SEED or 0)");
    app.add_option("--workers", g.workers, "worker threads for simulate and oracle")->check(CLI::PositiveNumber);
    app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", g.out_file, "write output to a file");

    // encode
    auto* encode_cmd = app.add_subcommand("encode", "expansion of an integer, or value of a digit string");
    std::string encode_n, decode_digits;
    auto* n_opt = encode_cmd->add_option("--n", encode_n, "integer to expand");
    auto* decode_opt = encode_cmd->add_option("--decode", decode_digits, "digit string to evaluate (MSB first)");
    n_opt->excludes(decode_opt);

    // add
    auto* add_cmd = app.add_subcommand("add", "standard or von Neumann addition of two operands");
    std::string add_mode = "standard", add_x, add_y;
    bool add_trace = false;
    add_cmd->add_option("--mode", add_mode)->check(CLI::IsMember({"standard", "neumann"}));
    add_cmd->add_option("--x", add_x, "decimal integer or digit string")->required();
    add_cmd->add_option("--y", add_y, "decimal integer or digit string")->required();
    add_cmd->add_flag("--trace", add_trace, "emit every intermediate step");

    // analyze
    auto* analyze_cmd = app.add_subcommand("analyze", "carry moment constants of standard addition");
    std::optional<int> analyze_d;
    bool dump_matrix = false, distribution = false;
    std::size_t analyze_ell = 10;
    analyze_cmd->add_option("--d", analyze_d, "override the offset of a qd system");
    analyze_cmd->add_flag("--dump-matrix", dump_matrix, "print the transition matrix");
    analyze_cmd->add_flag("--distribution", distribution, "print the exact joint distribution of the carries");
    analyze_cmd->add_option("--ell", analyze_ell, "length for --distribution");

    // neumann
    auto* neumann_cmd = app.add_subcommand("neumann", "iteration count of von Neumann addition of SSDEs");
    std::size_t neumann_ell = 1000;
    bool report = false, neumann_exact = false;
    neumann_cmd->add_option("--ell", neumann_ell, "length of the summands");
    neumann_cmd->add_flag("--report", report, "also compare P(t <= k) with its asymptotic form");
    neumann_cmd->add_flag("--exact", neumann_exact, "rational moments (small lengths only)");

    // simulate
    auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo additions of random expansions");
    std::size_t sim_ell = 1000, sim_trials = 1000;
    std::string sim_mode = "standard";
    bool per_trial = false;
    simulate_cmd->add_option("--ell", sim_ell);
    simulate_cmd->add_option("--trials", sim_trials)->check(CLI::PositiveNumber);
    simulate_cmd->add_option("--mode", sim_mode)->check(CLI::IsMember({"standard", "neumann"}));
    simulate_cmd->add_flag("--per-trial", per_trial, "one row per trial instead of a summary");

    // markov
    auto* markov_cmd = app.add_subcommand("markov", "maximal-entropy weights of the digit automaton");
    bool dump_machine = false;
    std::size_t markov_ell = 8;
    markov_cmd->add_flag("--dump", dump_machine, "print the weighted automaton in the text format");
    markov_cmd->add_option("--ell", markov_ell, "word counts up to this length");

    // oracle
    auto* oracle_cmd = app.add_subcommand("oracle", "brute-force distributions over all pairs of a given length");
    std::size_t oracle_ell = 3;
    bool brute = false, oracle_neumann = false;
    oracle_cmd->add_option("--ell", oracle_ell);
    oracle_cmd->add_flag("--brute", brute, "exhaustive enumeration (the only method)");
    oracle_cmd->add_flag("--neumann", oracle_neumann, "distribution of the von Neumann iteration count");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return 2;
    }

    std::ostringstream buffer;
    try {
        const std::string& format = g.format;
        Table table;
        if (encode_cmd->parsed()) {
            const DigitSystem s = g.digit_system();
            if (!decode_digits.empty() || decode_opt->count()) {
                Expansion x(s, parse_digits(decode_digits));
                table.columns = {"digits", "value"};
                table.add({format_digits(x.digits()), decode(x).get_str()});
                emit(table, format, buffer);
            } else {
                if (!n_opt->count())
                    throw UsageError("encode needs --n or --decode");
                BigInt n;
                if (n.set_str(encode_n, 10) != 0)
                    throw UsageError("not an integer: " + encode_n);
                Expansion x = encode(n, s);
                if (format == "json") {
                    table.columns = {"n", "digits"};
                    table.add({n.get_str(), format_digits(x.digits())});
                    emit(table, format, buffer);
                } else {
                    buffer << format_digits(x.digits()) << "\n";
                }
            }
        } else if (add_cmd->parsed()) {
            const DigitSystem s = g.digit_system();
            Expansion x = read_operand(add_x, s), y = read_operand(add_y, s);
            table.columns = {"field", "value"};
            table.add({"x", format_digits(x.digits())});
            table.add({"y", format_digits(y.digits())});
            if (add_mode == "standard") {
                AdditionTrace t = standard_add(x, y);
                table.add({"digitwise_sum", format_digits(t.digitwise_sum)});
                table.add({"carries", format_digits(t.carries)});
                table.add({"result", format_digits(t.result.digits())});
                table.add({"value", decode(t.result).get_str()});
                table.add({"carries_1", static_cast<long long>(t.pos_count)});
                table.add({"carries_-1", static_cast<long long>(t.neg_count)});
            } else {
                NeumannTrace t = neumann_add(x, y);
                const NeumannStep& last = t.states.back();
                table.add({"result", format_digits(last.z)});
                table.add({"value", digit_value(last.z, s.base()).get_str()});
                table.add({"iterations", static_cast<long long>(t.iterations)});
                if (add_trace)
                    for (std::size_t k = 1; k < t.states.size(); ++k) {
                        table.add({"z" + std::to_string(k), format_digits(t.states[k].z)});
                        table.add({"c" + std::to_string(k), format_digits(t.states[k].c)});
                    }
            }
            emit(table, format, buffer);
        } else if (analyze_cmd->parsed()) {
            const DigitSystem s = g.digit_system(analyze_d);
            if (dump_matrix) {
                PolyMatrix a = carry_matrix(s);
                table.columns = {"row", "column", "from", "to", "entry"};
                for (std::size_t i = 0; i < a.size(); ++i)
                    for (std::size_t j = 0; j < a.size(); ++j)
                        if (!a(i, j).is_zero())
                            table.add({static_cast<long long>(i + 1), static_cast<long long>(j + 1), a.labels[i],
                                       a.labels[j], to_string(a(i, j))});
            } else if (distribution) {
                JointDistribution d = exact_distribution(carry_chain(s), analyze_ell);
                table.columns = {"m", "n", "probability_numerator", "probability_denominator", "probability"};
                for (const auto& [mn, p] : d)
                    table.add({static_cast<long long>(mn.first), static_cast<long long>(mn.second),
                               p.get_num().get_str(), p.get_den().get_str(), p.get_d()});
            } else {
                MomentConstants m = moment_constants(carry_matrix(s));
                table.columns = {"quantity", "exact", "decimal"};
                table.add({"e_1", exact(m.e_m), approx(m.e_m)});
                table.add({"e_-1", exact(m.e_n), approx(m.e_n)});
                table.add({"v_1", exact(m.v_m), approx(m.v_m)});
                table.add({"v_-1", exact(m.v_n), approx(m.v_n)});
                table.add({"cov", exact(m.c), approx(m.c)});
            }
            emit(table, format, buffer);
        } else if (neumann_cmd->parsed()) {
            const DigitSystem s = g.digit_system();
            require_ssde(s, "neumann");
            const int q = s.base();
            RunLengthChain chain = RunLengthChain::ssde(q);
            NeumannAsymptotics a = neumann_asymptotics(q);
            table.columns = {"quantity", "k", "exact", "exact_decimal", "asymptotic"};
            const double ell = static_cast<double>(neumann_ell);
            if (neumann_exact) {
                ExactRunMoments m = exact_moments_t_rational(chain, neumann_ell);
                Rational mean_t = m.mean + 2;
                table.add({"mean_t", {}, exact(mean_t), approx(mean_t), asymptotic_expectation(a, ell)});
                table.add({"variance_t", {}, exact(m.variance), approx(m.variance), asymptotic_variance(a, ell)});
            } else {
                RunMoments m = exact_moments_t(chain, neumann_ell);
                table.add({"mean_t", {}, {}, m.mean + 2, asymptotic_expectation(a, ell)});
                table.add({"variance_t", {}, {}, m.variance, asymptotic_variance(a, ell)});
            }
            table.add({"delta", {}, exact(a.delta), approx(a.delta), {}});
            if (report) {
                const long centre = std::lround(std::log(ell) / std::log(static_cast<double>(q)));
                for (long k = std::max(2L, centre - 4); k <= centre + 8; ++k) {
                    DistributionPoint p = distribution_check(chain, a, neumann_ell, static_cast<std::size_t>(k));
                    table.add({"cdf", static_cast<long long>(k), {}, p.exact, p.predicted});
                }
            }
            emit(table, format, buffer);
        } else if (simulate_cmd->parsed()) {
            SimulationConfig c;
            c.system = g.digit_system();
            c.ell = sim_ell;
            c.trials = sim_trials;
            c.seed = g.seed_value();
            c.workers = g.workers;
            c.mode = sim_mode == "neumann" ? AdderMode::neumann : AdderMode::standard;
            SimulationResult r = simulate(c);
            if (per_trial) {
                if (c.mode == AdderMode::neumann) {
                    table.columns = {"trial", "t"};
                    for (std::size_t i = 0; i < r.t.size(); ++i)
                        table.add({static_cast<long long>(i), static_cast<long long>(r.t[i])});
                } else {
                    table.columns = {"trial", "carries_1", "carries_-1"};
                    for (std::size_t i = 0; i < r.m.size(); ++i)
                        table.add({static_cast<long long>(i), static_cast<long long>(r.m[i]),
                                   static_cast<long long>(r.n[i])});
                }
            } else if (c.mode == AdderMode::neumann) {
                table.columns = {"t", "count"};
                for (const auto& [t, count] : r.t_histogram)
                    table.add({static_cast<long long>(t), static_cast<long long>(count)});
            } else {
                table.columns = {"statistic", "value", "per_digit"};
                const double ell = static_cast<double>(c.ell);
                auto row = [&](const char* name, double v) { table.add({name, v, ell > 0 ? v / ell : 0.0}); };
                row("mean_carries_1", r.stats.mean_m);
                row("mean_carries_-1", r.stats.mean_n);
                row("variance_carries_1", r.stats.var_m);
                row("variance_carries_-1", r.stats.var_n);
                row("covariance", r.stats.cov);
            }
            emit(table, format, buffer);
        } else if (markov_cmd->parsed()) {
            const DigitSystem s = g.digit_system();
            ParryWeights pw = system_weights(s);
            if (dump_machine) {
                buffer << serialize(pw.automaton);
            } else {
                const auto& m = pw.automaton;
                table.columns = {"quantity", "state", "to", "digit", "exact", "decimal"};
                table.add({"lambda", {}, {}, {}, exact(pw.lambda), approx(pw.lambda)});
                for (std::size_t i = 0; i < m.size(); ++i) {
                    table.add({"w", m.label(i), {}, {}, exact(pw.w[i]), approx(pw.w[i])});
                    table.add({"u", m.label(i), {}, {}, exact(pw.u[i]), approx(pw.u[i])});
                    table.add({"exit", m.label(i), {}, {}, exact(pw.exit[i]), approx(pw.exit[i])});
                    table.add({"stationary", m.label(i), {}, {}, exact(pw.stationary[i]), approx(pw.stationary[i])});
                }
                for (std::size_t k = 0; k < m.transitions().size(); ++k) {
                    const auto& t = m.transitions()[k];
                    table.add({"p", m.label(t.from), m.label(t.to), static_cast<long long>(*t.input), exact(pw.p[k]),
                               approx(pw.p[k])});
                }
                for (std::size_t len = 0; len <= markov_ell; ++len)
                    table.add({"count_words", {}, {}, static_cast<long long>(len), count_words(m, len).get_str(),
                               count_words(m, len).get_d()});
            }
            if (!dump_machine)
                emit(table, format, buffer);
        } else if (oracle_cmd->parsed()) {
            const DigitSystem s = g.digit_system();
            if (oracle_neumann) {
                require_ssde(s, "oracle --neumann");
                auto brute_dist = oracle::neumann_distribution_bruteforce(s, oracle_ell, g.workers);
                RunLengthChain chain = RunLengthChain::ssde(s.base());
                Rational total = w_ell_exact(chain, oracle_ell);
                std::vector<Rational> cdf = run_cdf_exact(chain, oracle_ell);
                // the chain only resolves t - 2, so t = 0, 1, 2 are reported together as t <= 2
                table.columns = {"t", "bruteforce", "analytic", "decimal"};
                Rational low = 0;
                for (const auto& [t, p] : brute_dist)
                    if (t <= 2)
                        low += p;
                table.add({"<=2", exact(low), exact(cdf[0] * total), approx(low)});
                for (const auto& [t, p] : brute_dist) {
                    if (t <= 2)
                        continue;
                    std::size_t k = static_cast<std::size_t>(t - 2);
                    Rational analytic = k < cdf.size() ? (cdf[k] - cdf[k - 1]) * total : Rational(0);
                    table.add({std::to_string(t), exact(p), exact(analytic), approx(p)});
                }
            } else {
                auto brute_dist = oracle::carry_distribution_bruteforce(s, oracle_ell, g.workers);
                JointDistribution analytic = exact_distribution(carry_chain(s), oracle_ell);
                table.columns = {"m", "n", "bruteforce", "analytic", "decimal"};
                for (const auto& [mn, p] : brute_dist) {
                    auto it = analytic.find(mn);
                    table.add({static_cast<long long>(mn.first), static_cast<long long>(mn.second), exact(p),
                               exact(it == analytic.end() ? Rational(0) : it->second), approx(p)});
                }
            }
            emit(table, format, buffer);
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    if (g.out_file.empty()) {
        out << buffer.str();
    } else {
        std::ofstream file(g.out_file);
        if (!file) {
            err << "error: cannot write " << g.out_file << "\n";
            return 1;
        }
        file << buffer.str();
    }
    return 0;
}

int run(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

} // namespace carrylab::cli
