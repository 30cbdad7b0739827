#include "carrylab/numbersys.hpp"

#include <cctype>
#include <charconv>
#include <map>

namespace carrylab {

namespace {

int parse_int(std::string_view s, std::string_view context)
{
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::invalid_argument("bad integer '" + std::string(s) + "' in " + std::string(context));
    return value;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

} // namespace

DigitSystem DigitSystem::qd(int q, int d)
{
    if (q < 2 || d > 0 || d <= -q)
        throw std::invalid_argument("(q,d)-system needs q >= 2 and -q < d <= 0");
    return DigitSystem(SystemKind::qd, q, d);
}

DigitSystem DigitSystem::ssde(int q)
{
    if (q < 2 || q % 2 != 0)
        throw std::invalid_argument("symmetric signed digit system needs an even base q >= 2");
    return DigitSystem(SystemKind::ssde, q, -q / 2);
}

DigitSystem DigitSystem::parse(std::string_view text)
{
    text = trim(text);
    auto colon = text.find(':');
    if (colon == std::string_view::npos)
        throw std::invalid_argument("system must look like qd:q=10,d=0 or ssde:q=4");
    std::string_view kind = text.substr(0, colon);
    std::map<std::string, int> params;
    std::string_view rest = text.substr(colon + 1);
    while (!rest.empty()) {
        auto comma = rest.find(',');
        std::string_view item = trim(rest.substr(0, comma));
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        auto eq = item.find('=');
        if (eq == std::string_view::npos)
            throw std::invalid_argument("bad system parameter '" + std::string(item) + "'");
        params[std::string(trim(item.substr(0, eq)))] = parse_int(trim(item.substr(eq + 1)), text);
    }
    auto get = [&](const std::string& key) {
        auto it = params.find(key);
        if (it == params.end())
            throw std::invalid_argument("system '" + std::string(text) + "' lacks " + key);
        return it->second;
    };
    if (kind == "qd") {
        if (params.size() != 2)
            throw std::invalid_argument("qd system takes exactly q and d");
        return qd(get("q"), get("d"));
    }
    if (kind == "ssde") {
        if (params.size() != 1)
            throw std::invalid_argument("ssde system takes exactly q");
        return ssde(get("q"));
    }
    throw std::invalid_argument("unknown system kind '" + std::string(kind) + "'");
}

std::string DigitSystem::to_string() const
{
    if (is_ssde())
        return "ssde:q=" + std::to_string(q_);
    return "qd:q=" + std::to_string(q_) + ",d=" + std::to_string(d_);
}

Expansion::Expansion(DigitSystem system, Digits digits) : system_(system), digits_(std::move(digits))
{
    if (!is_valid(system_, digits_))
        throw DomainError("digits " + format_digits(digits_) + " are not a valid " + system_.to_string() +
                          " expansion");
}

Expansion Expansion::unchecked(DigitSystem system, Digits digits)
{
    Expansion x(system);
    x.digits_ = std::move(digits);
    return x;
}

Expansion encode(const BigInt& n, const DigitSystem& system)
{
    const int q = system.base();
    const int d = system.offset();
    Digits digits;
    BigInt rest = n;
    if (!system.is_ssde()) {
        if (d == 0 && rest < 0)
            throw DomainError("negative integers have no " + system.to_string() + " expansion");
        if (d == -q + 1 && rest > 0)
            throw DomainError("positive integers have no " + system.to_string() + " expansion");
        while (rest != 0) {
            BigInt r = rest - d;
            BigInt m;
            mpz_fdiv_r_ui(m.get_mpz_t(), r.get_mpz_t(), static_cast<unsigned long>(q));
            int digit = static_cast<int>(m.get_si()) + d;
            digits.push_back(digit);
            rest = (rest - digit) / q;
        }
        return Expansion(system, std::move(digits));
    }

    const int half = q / 2;
    while (rest != 0) {
        BigInt m;
        mpz_fdiv_r_ui(m.get_mpz_t(), rest.get_mpz_t(), static_cast<unsigned long>(q));
        int r = static_cast<int>(m.get_si());
        int digit;
        if (r == half) {
            // Pick the sign of the boundary digit so that the next digit satisfies the rule.
            BigInt next = (rest - half) / q;
            BigInt nm;
            mpz_fdiv_r_ui(nm.get_mpz_t(), next.get_mpz_t(), static_cast<unsigned long>(q));
            digit = nm.get_si() < half ? half : -half;
        } else {
            digit = r > half ? r - q : r;
        }
        digits.push_back(digit);
        rest = (rest - digit) / q;
    }
    return Expansion(system, std::move(digits));
}

BigInt digit_value(std::span<const int> digits, int q)
{
    BigInt value = 0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it)
        value = value * q + *it;
    return value;
}

BigInt decode(const Expansion& x) { return digit_value(x.digits(), x.system().base()); }

bool is_valid(const DigitSystem& system, std::span<const int> digits)
{
    for (int digit : digits)
        if (!system.contains(digit))
            return false;
    if (!system.is_ssde())
        return true;
    const int half = system.base() / 2;
    for (std::size_t j = 0; j < digits.size(); ++j) {
        if (digits[j] != half && digits[j] != -half)
            continue;
        int next = j + 1 < digits.size() ? digits[j + 1] : 0;
        int signed_next = digits[j] > 0 ? next : -next;
        if (signed_next < 0 || signed_next > half - 1)
            return false;
    }
    return true;
}

void for_each_word(const DigitSystem& system, std::size_t length,
                   const std::function<void(const Digits&)>& visit)
{
    Digits word(length);
    const int lo = system.min_digit();
    const int hi = system.max_digit();
    const int half = system.base() / 2;
    const bool ssde = system.is_ssde();

    // Build from the most significant end so the adjacency rule prunes early;
    // a word is valid iff each digit is compatible with its more significant neighbour.
    std::function<void(std::size_t)> fill = [&](std::size_t pos) {
        for (int digit = lo; digit <= hi; ++digit) {
            if (ssde && (digit == half || digit == -half)) {
                int next = pos + 1 < length ? word[pos + 1] : 0;
                int signed_next = digit > 0 ? next : -next;
                if (signed_next < 0 || signed_next > half - 1)
                    continue;
            }
            word[pos] = digit;
            if (pos == 0)
                visit(word);
            else
                fill(pos - 1);
        }
    };
    if (length == 0)
        visit(word);
    else
        fill(length - 1);
}

std::vector<Digits> enumerate_words(const DigitSystem& system, std::size_t length)
{
    std::vector<Digits> out;
    for_each_word(system, length, [&](const Digits& w) { out.push_back(w); });
    return out;
}

Digits parse_digits(std::string_view msb_first)
{
    Digits out;
    msb_first = trim(msb_first);
    if (msb_first.empty())
        return out;
    while (true) {
        auto comma = msb_first.find(',');
        out.push_back(parse_int(trim(msb_first.substr(0, comma)), "digit list"));
        if (comma == std::string_view::npos)
            break;
        msb_first.remove_prefix(comma + 1);
    }
    return Digits(out.rbegin(), out.rend());
}

std::string format_digits(std::span<const int> digits)
{
    std::string out;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        if (!out.empty())
            out += ",";
        out += std::to_string(*it);
    }
    return out;
}

} // namespace carrylab
