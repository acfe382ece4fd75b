#pragma once
// Shared basics for the whole library: exact rational arithmetic aliases,
// an explicit infinity-extended rational (distances can be infinite by
// definition, not by sentinel), error types that map onto CLI exit codes,
// and small parsing/printing helpers.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace tband {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------------------
// Errors. Each maps to a distinct process exit code in the CLI driver.

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input text or references to undeclared identifiers.
struct ParseError : Error {
    int line = -1;
    int col = -1;
    ParseError(const std::string& msg, int line_ = -1, int col_ = -1)
        : Error(line_ >= 0 ? "line " + std::to_string(line_) +
                                 (col_ >= 0 ? ", col " + std::to_string(col_) : "") + ": " + msg
                           : msg),
          line(line_),
          col(col_) {}
};

// Structurally well-formed input that violates a semantic requirement
// (nondeterminism, non-singleton initial valuation, unbounded regions, ...).
struct ValidationError : Error {
    using Error::Error;
};

// An enumeration or search exceeded its configured budget.
struct BudgetError : Error {
    using Error::Error;
};

// The root finder could not reach the requested residual tolerance.
struct ConvergenceError : Error {
    using Error::Error;
};

// ---------------------------------------------------------------------------
// Rational helpers.

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    if (q * b != a && ((a < 0) != (b < 0))) q -= 1;
    return q;
}

inline BigInt rat_floor(const Rat& x) { return floor_div(numerator(x), denominator(x)); }

inline Rat rat_frac(const Rat& x) { return x - Rat(rat_floor(x)); }

inline double rat_double(const Rat& x) { return x.convert_to<double>(); }

inline std::string rat_string(const Rat& x) {
    std::ostringstream os;
    os << numerator(x);
    if (denominator(x) != 1) os << "/" << denominator(x);
    return os.str();
}

// Accepts "7", "-3", "3/4" and decimal forms like "0.25".
inline std::optional<Rat> parse_rat(const std::string& s) {
    if (s.empty()) return std::nullopt;
    std::size_t i = 0;
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') {
        neg = s[i] == '-';
        ++i;
    }
    auto digits = [&](std::size_t& j) {
        std::size_t start = j;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        return j > start;
    };
    std::size_t j = i;
    if (!digits(j)) return std::nullopt;
    BigInt num(s.substr(i, j - i));
    BigInt den = 1;
    if (j < s.size() && s[j] == '/') {
        std::size_t k = ++j;
        if (!digits(j) || j != s.size()) return std::nullopt;
        den = BigInt(s.substr(k, j - k));
        if (den == 0) return std::nullopt;
    } else if (j < s.size() && s[j] == '.') {
        std::size_t k = ++j;
        if (!digits(j) || j != s.size()) return std::nullopt;
        for (std::size_t p = k; p < j; ++p) {
            num = num * 10 + (s[p] - '0');
            den *= 10;
        }
    } else if (j != s.size()) {
        return std::nullopt;
    }
    Rat r(num, den);
    if (neg) r = -r;
    return r;
}

// lcm of the denominators of a list of rationals (1 for an empty list).
inline BigInt lcm_denominators(const std::vector<Rat>& xs) {
    BigInt m = 1;
    for (const auto& x : xs) {
        BigInt d = denominator(x);
        m = m / gcd(m, d) * d;
    }
    return m;
}

// ---------------------------------------------------------------------------
// Rational extended with +infinity (used by the word pseudo-distance, where
// "min over an empty set" is infinite by definition).

struct ExtRat {
    bool infinite = false;
    Rat value = 0;

    static ExtRat inf() { return ExtRat{true, 0}; }
    static ExtRat of(const Rat& r) { return ExtRat{false, r}; }

    bool operator==(const ExtRat& o) const {
        return infinite == o.infinite && (infinite || value == o.value);
    }
    bool operator!=(const ExtRat& o) const { return !(*this == o); }
    bool operator<(const ExtRat& o) const {
        if (infinite) return false;
        if (o.infinite) return true;
        return value < o.value;
    }
    bool operator<=(const ExtRat& o) const { return *this < o || *this == o; }
    bool operator>(const ExtRat& o) const { return o < *this; }
    bool operator>=(const ExtRat& o) const { return o <= *this; }

    ExtRat operator+(const ExtRat& o) const {
        if (infinite || o.infinite) return inf();
        return of(value + o.value);
    }
    std::string str() const { return infinite ? "inf" : rat_string(value); }
};

inline ExtRat ext_max(const ExtRat& a, const ExtRat& b) { return a < b ? b : a; }
inline ExtRat ext_min(const ExtRat& a, const ExtRat& b) { return a < b ? a : b; }

// ---------------------------------------------------------------------------
// Misc.

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

// FNV-1a, used only to fingerprint input documents in reports.
inline std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

}  // namespace tband
