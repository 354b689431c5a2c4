#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace brp {

using Rational = mpq_class;

// p/q in lowest terms
inline Rational make_rational(long p, long q) {
    Rational r(p, q);
    r.canonicalize();
    return r;
}

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero(double x) { return x == 0.0; }

// exact equality for rationals, relative tolerance for floats
inline bool near(const Rational& a, const Rational& b) { return a == b; }
inline bool near(double a, double b, double tol = 1e-9) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

inline double to_double(const Rational& x) { return x.get_d(); }
inline double to_double(double x) { return x; }

template <class S>
S from_rational(const Rational& q);
template <>
inline Rational from_rational<Rational>(const Rational& q) { return q; }
template <>
inline double from_rational<double>(const Rational& q) { return q.get_d(); }

template <class S>
S from_int(long v) { return S(v); }

inline std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(double x);

// accepts "p", "p/q", "-p/q" and plain decimals such as "0.3" or "-1.25e-2"
Rational parse_rational(std::string_view text);
double parse_double(std::string_view text);

template <class S>
S parse_scalar(std::string_view text);
template <>
inline Rational parse_scalar<Rational>(std::string_view t) { return parse_rational(t); }
template <>
inline double parse_scalar<double>(std::string_view t) { return parse_double(t); }

inline Rational factorial(int n) {
    mpz_class r = 1;
    for (int k = 2; k <= n; ++k) r *= k;
    return Rational(r);
}

}  // namespace brp
