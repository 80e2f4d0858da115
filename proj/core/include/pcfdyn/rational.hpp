#pragma once

#include <gmpxx.h>

#include <climits>
#include <complex>
#include <optional>
#include <string>
#include <string_view>

namespace pcfdyn {

using Integer = mpz_class;
using Rational = mpq_class;

/// Valuation of zero.
inline constexpr int kInfiniteValuation = INT_MAX;

int valuation(const Integer& n, unsigned long p);
/// p-adic valuation; kInfiniteValuation for 0.
int valuation(const Rational& q, unsigned long p);

bool is_prime(unsigned long p);

/// "n" or "n/d" in base 10; this is the canonical exact text form.
std::string to_string(const Rational& q);
Rational parse_rational(std::string_view text);

double to_double(const Rational& q);

/// Exact k-th root when q is a perfect k-th power in Q; for odd k negative
/// values are allowed. Even k and q < 0 yields nullopt.
std::optional<Rational> rational_root(const Rational& q, unsigned k);

Rational pow(const Rational& q, unsigned e);

/// n/d in lowest terms (the two-argument mpq constructor does not reduce).
inline Rational make_rational(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

/// log|q|_p as a multiple of log p: returns -v_p(q).
inline int log_abs_p_units(const Rational& q, unsigned long p) { return -valuation(q, p); }

}  // namespace pcfdyn
