// Exact arithmetic carriers used throughout the library.
//
// Every exact formula returns a Rational (arbitrary-precision, canonical
// reduced form, courtesy of boost::multiprecision). Counting results that
// can exceed 64 bits (Catalan numbers past n=32, double factorials, ...)
// are BigInt.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ptmoments {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt pow_bigint(const BigInt& base, unsigned exp) {
    BigInt r = 1, b = base;
    while (exp) {
        if (exp & 1u) r *= b;
        b *= b;
        exp >>= 1u;
    }
    return r;
}

/// base^exp for integer exp of either sign; throws on 0^negative.
inline Rational pow_rational(const Rational& base, long exp) {
    if (exp == 0) return Rational(1);
    if (exp > 0) {
        return Rational(pow_bigint(numerator(base), static_cast<unsigned>(exp)),
                        pow_bigint(denominator(base), static_cast<unsigned>(exp)));
    }
    if (base == 0) throw std::domain_error("pow_rational: zero base with negative exponent");
    return Rational(pow_bigint(denominator(base), static_cast<unsigned>(-exp)),
                    pow_bigint(numerator(base), static_cast<unsigned>(-exp)));
}

inline BigInt factorial_big(unsigned n) {
    BigInt r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

/// n! as uint64; valid for n <= 20 (used for permutation ranks).
inline std::uint64_t factorial_u64(unsigned n) {
    if (n > 20) throw std::overflow_error("factorial_u64: n > 20");
    std::uint64_t r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

inline BigInt binomial_big(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (unsigned i = 0; i < k; ++i) {
        r *= (n - i);
        r /= (i + 1);  // exact at every step
    }
    return r;
}

inline BigInt catalan_big(unsigned n) {
    return binomial_big(2 * n, n) / (n + 1);
}

/// (2n-1)!! = number of perfect matchings of [2n].
inline BigInt double_factorial_odd(unsigned n) {
    BigInt r = 1;
    for (unsigned i = 1; i <= n; ++i) r *= (2 * i - 1);
    return r;
}

inline std::string numerator_string(const Rational& q) { return numerator(q).str(); }
inline std::string denominator_string(const Rational& q) { return denominator(q).str(); }

/// Parses "3", "-3", or "3/4".
inline Rational rational_from_string(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(s));
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("rational_from_string: cannot parse '" + s + "'");
    }
}

inline double to_double(const Rational& q) {
    return static_cast<double>(q);
}

}  // namespace ptmoments
