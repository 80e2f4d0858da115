#pragma once

// Minimal ring vocabulary shared by the polynomial and series templates:
// every coefficient type provides is_zero() and exact_div(); field types
// implement exact_div as ordinary division.

#include "pcfdyn/qomega.hpp"
#include "pcfdyn/rational.hpp"

#include <complex>

namespace pcfdyn {

using Complex = std::complex<double>;
using ComplexL = std::complex<long double>;

inline bool is_zero(const Rational& q) { return q == 0; }
inline bool is_zero(const QOmega& q) { return q.is_zero(); }
inline bool is_zero(const Complex& z) { return z == 0.0; }
inline bool is_zero(const ComplexL& z) { return z == 0.0L; }

inline Rational exact_div(const Rational& a, const Rational& b) { return a / b; }
inline QOmega exact_div(const QOmega& a, const QOmega& b) { return a / b; }
inline Complex exact_div(const Complex& a, const Complex& b) { return a / b; }
inline ComplexL exact_div(const ComplexL& a, const ComplexL& b) { return a / b; }

namespace detail {
// Unqualified call so ADL finds is_zero for nested coefficient types
// (polynomials over polynomials) declared after this point.
template <class T>
bool coeff_is_zero(const T& x) {
  return is_zero(x);
}
}  // namespace detail

template <class K>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
  static constexpr bool exact = true;
  static Complex to_complex(const Rational& q) { return {q.get_d(), 0.0}; }
  static Rational from_rational(const Rational& q) { return q; }
};

template <>
struct FieldTraits<QOmega> {
  static constexpr bool exact = true;
  static Complex to_complex(const QOmega& q) { return q.to_complex(); }
  static QOmega from_rational(const Rational& q) { return QOmega(q); }
};

template <>
struct FieldTraits<Complex> {
  static constexpr bool exact = false;
  static Complex to_complex(const Complex& z) { return z; }
  static Complex from_rational(const Rational& q) { return {q.get_d(), 0.0}; }
};

template <>
struct FieldTraits<ComplexL> {
  static constexpr bool exact = false;
  static Complex to_complex(const ComplexL& z) { return {static_cast<double>(z.real()), static_cast<double>(z.imag())}; }
  static ComplexL from_rational(const Rational& q) { return {static_cast<long double>(q.get_d()), 0.0L}; }
};

}  // namespace pcfdyn
