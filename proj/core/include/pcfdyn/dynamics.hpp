#pragma once

#include "pcfdyn/error.hpp"
#include "pcfdyn/ring.hpp"
#include "pcfdyn/roots.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace pcfdyn {

/// Parameter (c, a) of P(z) = z^3/3 - c z^2/2 + a^3 in one evaluation context.
template <class T>
struct CubicParamT {
  T c{};
  T a{};
};

using CubicParam = CubicParamT<Complex>;
using ExactParam = CubicParamT<QOmega>;

namespace detail {

template <class T>
struct Ratio {
  static T make(long n, long d) { return T(make_rational(n, d)); }
};
template <class F>
struct Ratio<std::complex<F>> {
  static std::complex<F> make(long n, long d) { return {static_cast<F>(n) / static_cast<F>(d), 0}; }
};

template <class T>
T ratio(long n, long d) {
  return Ratio<T>::make(n, d);
}

}  // namespace detail

/// Critical points (c0, c1) = (0, c).
template <class T>
std::pair<T, T> critical_points(const CubicParamT<T>& p) {
  return {T(0), p.c};
}

template <class T>
T eval_P(const CubicParamT<T>& p, const T& z) {
  static const T third = detail::ratio<T>(1, 3), half = detail::ratio<T>(1, 2);
  return (z * third - p.c * half) * z * z + p.a * p.a * p.a;
}

/// P'(z) = z^2 - c z.
template <class T>
T eval_dP(const CubicParamT<T>& p, const T& z) {
  return z * (z - p.c);
}

template <class T>
T eval_Pn(const CubicParamT<T>& p, T z, int n) {
  for (int i = 0; i < n; ++i) z = eval_P(p, z);
  return z;
}

/// Complex iteration that throws Overflow once |P^k(z)| exceeds `bound`.
Complex eval_Pn_bounded(const CubicParam& p, Complex z, int n, double bound);

struct Cycle {
  std::vector<Complex> points;
  int period = 0;
  Complex multiplier;
};

struct CycleOptions {
  int max_period = 6;
  double residual = 1e-12;
};

/// All cycles of exact period m, from the roots of the dynatomic polynomial.
std::vector<Cycle> find_cycles(const CubicParam& p, int m, const CycleOptions& opt = {});

/// Degree in z of the period-m dynatomic polynomial.
long dynatomic_degree(int m, int d = 3);

int mobius(int n);

}  // namespace pcfdyn
