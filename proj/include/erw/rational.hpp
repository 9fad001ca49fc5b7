#pragma once

// Exact rational arithmetic for cookie strengths and the closed-form
// thresholds. Decimal literals ("0.85", "1e-3") and fractions ("697/1100")
// both parse to the exact rational they denote.

#include <boost/multiprecision/cpp_int.hpp>

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>

namespace erw {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

inline BigInt pow10(unsigned e) {
    BigInt r = 1;
    for (unsigned i = 0; i < e; ++i) r *= 10;
    return r;
}

inline bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

inline Rational parse_decimal(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view exp_part = s.substr(e + 1);
        bool exp_neg = false;
        if (!exp_part.empty() && (exp_part.front() == '+' || exp_part.front() == '-')) {
            exp_neg = exp_part.front() == '-';
            exp_part.remove_prefix(1);
        }
        if (!all_digits(exp_part) || exp_part.size() > 6)
            throw ParseError("malformed exponent in number: " + std::string(text));
        long v = 0;
        std::from_chars(exp_part.data(), exp_part.data() + exp_part.size(), v);
        exponent = exp_neg ? -v : v;
        s = s.substr(0, e);
    }
    std::string digits;
    long frac_len = 0;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view int_part = s.substr(0, dot);
        std::string_view frac_part = s.substr(dot + 1);
        if ((int_part.empty() && frac_part.empty()) ||
            (!int_part.empty() && !all_digits(int_part)) ||
            (!frac_part.empty() && !all_digits(frac_part)))
            throw ParseError("malformed number: " + std::string(text));
        digits = std::string(int_part) + std::string(frac_part);
        frac_len = static_cast<long>(frac_part.size());
    } else {
        if (!all_digits(s)) throw ParseError("malformed number: " + std::string(text));
        digits = std::string(s);
    }
    // cpp_int reads a leading 0 as an octal prefix
    const auto first = digits.find_first_not_of('0');
    digits = first == std::string::npos ? std::string("0") : digits.substr(first);
    BigInt mantissa(digits);
    long scale = exponent - frac_len;
    if (scale > 4000 || scale < -4000) throw ParseError("exponent out of range: " + std::string(text));
    Rational value = scale >= 0 ? Rational(mantissa * pow10(static_cast<unsigned>(scale)))
                                : Rational(mantissa, pow10(static_cast<unsigned>(-scale)));
    return negative ? Rational(-value) : value;
}

inline std::string trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return std::string(s);
}

}  // namespace detail

/// Parses "num/den" or a decimal literal into the exact rational it denotes.
inline Rational parse_rational(std::string_view text) {
    const std::string s = detail::trim(text);
    if (s.empty()) throw ParseError("empty number");
    if (auto slash = s.find('/'); slash != std::string::npos) {
        Rational num = detail::parse_decimal(detail::trim(std::string_view(s).substr(0, slash)));
        Rational den = detail::parse_decimal(detail::trim(std::string_view(s).substr(slash + 1)));
        if (den == 0) throw ParseError("zero denominator: " + s);
        return num / den;
    }
    return detail::parse_decimal(s);
}

/// The exact rational of the shortest decimal that round-trips `v`, so that
/// 0.85 maps to 17/20 rather than to its binary expansion.
inline Rational rational_from_double(double v) {
    if (!std::isfinite(v)) throw ParseError("non-finite value cannot be made exact");
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    if (res.ec != std::errc{}) throw ParseError("cannot format double");
    return detail::parse_decimal(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)));
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// "n" for integers, "n/d" otherwise.
inline std::string to_string(const Rational& r) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

/// Smallest integer >= r.
inline BigInt ceil(const Rational& r) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    BigInt q = num / den;  // truncates toward zero
    if (q * den < num) q += 1;
    return q;
}

/// Largest integer <= r.
inline BigInt floor(const Rational& r) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    BigInt q = num / den;
    if (q * den > num) q -= 1;
    return q;
}

// Scalar helpers so the formula templates work on both double and Rational.
template <class T>
inline double as_double(const T& v) {
    if constexpr (std::is_same_v<T, Rational>) return to_double(v);
    else return static_cast<double>(v);
}

}  // namespace erw
