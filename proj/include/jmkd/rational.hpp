// Exact rational arithmetic used throughout the expression core and the
// coefficient recurrences.  Thin helpers around boost::multiprecision.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace jmkd {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// Accepts "p", "-p", "p/q" with integer p, positive integer q.
inline Rational parse_rational(const std::string& s) {
    std::size_t i = 0;
    auto fail = [&](const char* why) {
        throw std::invalid_argument("bad rational '" + s + "': " + why);
    };
    if (s.empty()) fail("empty");
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') neg = (s[i] == '-'), ++i;
    std::size_t num_begin = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == num_begin) fail("expected digits");
    Int num(s.substr(num_begin, i - num_begin));
    Int den = 1;
    if (i < s.size()) {
        if (s[i] != '/') fail("expected '/'");
        ++i;
        std::size_t den_begin = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == den_begin || i != s.size()) fail("expected denominator digits");
        den = Int(s.substr(den_begin, i - den_begin));
        if (den == 0) fail("zero denominator");
    }
    Rational r(num, den);
    return neg ? Rational(-r) : r;
}

// Every finite double is a dyadic rational; this conversion is exact.
inline Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("rational_from_double: non-finite");
    if (x == 0.0) return Rational(0);
    int exp2 = 0;
    double m = std::frexp(x, &exp2);     // x = m * 2^exp2, 0.5 <= |m| < 1
    auto mant = static_cast<std::int64_t>(std::ldexp(m, 53));
    exp2 -= 53;
    Rational r(mant);
    if (exp2 >= 0)
        r *= Rational(Int(1) << exp2);
    else
        r /= Rational(Int(1) << -exp2);
    return r;
}

inline Rational rational_pow(const Rational& base, long long e) {
    if (e == 0) return Rational(1);
    if (base == 0 && e < 0) throw std::domain_error("rational_pow: 0 to a negative power");
    Int n = numerator(base), d = denominator(base);
    unsigned k = static_cast<unsigned>(e < 0 ? -e : e);
    Rational r(boost::multiprecision::pow(n, k), boost::multiprecision::pow(d, k));
    return e > 0 ? r : Rational(1) / r;
}

inline std::string to_string(const Rational& r) { return r.str(); }

inline Rational binomial(long long n, long long k) {
    if (k < 0) return 0;
    Rational acc = 1;
    for (long long i = 0; i < k; ++i) acc *= Rational(n - i, i + 1);
    return acc;  // generalized: n may be negative or smaller than k
}

inline Rational factorial(long long n) {
    if (n < 0) throw std::domain_error("factorial of negative");
    Rational acc = 1;
    for (long long i = 2; i <= n; ++i) acc *= i;
    return acc;
}

}  // namespace jmkd
