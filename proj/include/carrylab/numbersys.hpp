#pragma once

#include "carrylab/exact.hpp"

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace carrylab {

// Raised when a value has no expansion in a system, or a digit is out of range.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Digit strings are least significant digit first.
using Digits = std::vector<int>;

enum class SystemKind { qd, ssde };

class DigitSystem {
public:
    // Digits {d, ..., q+d-1}; requires q >= 2 and -q < d <= 0.
    static DigitSystem qd(int q, int d);
    // Digits {-q/2, ..., q/2} with the adjacency rule; requires even q >= 2.
    static DigitSystem ssde(int q);
    // "qd:q=10,d=-1" or "ssde:q=4".
    static DigitSystem parse(std::string_view text);

    SystemKind kind() const { return kind_; }
    bool is_ssde() const { return kind_ == SystemKind::ssde; }
    int base() const { return q_; }
    int offset() const { return d_; }
    int min_digit() const { return is_ssde() ? -q_ / 2 : d_; }
    int max_digit() const { return is_ssde() ? q_ / 2 : q_ + d_ - 1; }
    bool contains(int digit) const { return digit >= min_digit() && digit <= max_digit(); }

    std::string to_string() const;
    bool operator==(const DigitSystem&) const = default;

private:
    DigitSystem(SystemKind kind, int q, int d) : kind_(kind), q_(q), d_(d) {}

    SystemKind kind_;
    int q_;
    int d_;
};

class Expansion {
public:
    Expansion(DigitSystem system, Digits digits); // throws DomainError if invalid
    explicit Expansion(DigitSystem system) : system_(system) {}
    // No validity check; for results of algorithms run outside their guarantees.
    static Expansion unchecked(DigitSystem system, Digits digits);

    const DigitSystem& system() const { return system_; }
    const Digits& digits() const { return digits_; }
    std::size_t length() const { return digits_.size(); }

private:
    DigitSystem system_;
    Digits digits_;
};

Expansion encode(const BigInt& n, const DigitSystem& system);
BigInt decode(const Expansion& x);
BigInt digit_value(std::span<const int> digits, int q);

bool is_valid(const DigitSystem& system, std::span<const int> digits);

// All valid digit strings of the given length, leading zeros included.
void for_each_word(const DigitSystem& system, std::size_t length,
                   const std::function<void(const Digits&)>& visit);
std::vector<Digits> enumerate_words(const DigitSystem& system, std::size_t length);

// Text form is most significant digit first: "1,0,-1". Empty string is the empty word.
Digits parse_digits(std::string_view msb_first);
std::string format_digits(std::span<const int> digits);

} // namespace carrylab
