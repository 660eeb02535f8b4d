#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace apf {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational scalar. Always kept in lowest terms with a positive
// denominator, so value equality is representation equality.
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

inline Rational rat(long long n, long long d = 1) { return Rational(n, d); }

inline Rational rat_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline int rat_sign(const Rational& r) { return r.sign(); }

// Serialized form is "p/q", or just "p" when q == 1.
inline std::string rat_to_string(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) {
        s += "/";
        s += denominator(r).str();
    }
    return s;
}

// Parses "p" or "p/q" with optional leading '-'. Anything else (notably
// float literals like "1.5" or "1e3") is rejected: exactness is load-bearing.
inline std::optional<Rational> rat_parse(const std::string& s) {
    if (s.empty()) return std::nullopt;
    std::size_t i = 0;
    if (s[0] == '-') i = 1;
    if (i >= s.size()) return std::nullopt;
    std::size_t slash = std::string::npos;
    for (std::size_t j = i; j < s.size(); ++j) {
        char c = s[j];
        if (c == '/') {
            if (slash != std::string::npos || j == i || j + 1 == s.size()) return std::nullopt;
            slash = j;
        } else if (c < '0' || c > '9') {
            return std::nullopt;
        }
    }
    try {
        if (slash == std::string::npos) return Rational(BigInt(s));
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) return std::nullopt;
        return Rational(num, den);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

inline Rational rat_parse_or_throw(const std::string& s) {
    auto r = rat_parse(s);
    if (!r) throw std::invalid_argument("not a rational: '" + s + "'");
    return *r;
}

// Fixed-point decimal expansion used only for rendering; never fed back
// into any computation.
inline std::string rat_to_decimal(const Rational& r, unsigned digits = 20) {
    BigInt num = numerator(r);
    BigInt den = denominator(r);
    std::string sign;
    if (num < 0) {
        sign = "-";
        num = -num;
    }
    BigInt whole = num / den;
    BigInt rem = num % den;
    std::string out = sign + whole.str();
    if (rem == 0) return out;
    out += ".";
    for (unsigned i = 0; i < digits && rem != 0; ++i) {
        rem *= 10;
        out += BigInt(rem / den).str();
        rem %= den;
    }
    return out;
}

}  // namespace apf
