#pragma once

#include "pcfdyn/rational.hpp"

#include <complex>
#include <optional>
#include <ostream>
#include <string>

namespace pcfdyn {

/// Element x + y*omega of Q(omega), omega^2 = 1/3.
///
/// The Archimedean embedding sends omega to +1/sqrt(3); the Galois conjugate
/// x - y*omega corresponds to the other real embedding.
class QOmega {
 public:
  QOmega() = default;
  QOmega(long n) : x_(n) {}  // NOLINT(google-explicit-constructor)
  QOmega(Rational x) : x_(std::move(x)) {}  // NOLINT(google-explicit-constructor)
  QOmega(Rational x, Rational y) : x_(std::move(x)), y_(std::move(y)) {}

  static QOmega omega() { return QOmega(Rational(0), Rational(1)); }

  const Rational& x() const { return x_; }
  const Rational& y() const { return y_; }

  bool is_zero() const { return x_ == 0 && y_ == 0; }
  bool is_rational() const { return y_ == 0; }

  QOmega conj() const { return QOmega(x_, -y_); }
  /// Field norm x^2 - y^2/3.
  Rational norm() const { return x_ * x_ - y_ * y_ / 3; }
  QOmega inverse() const;

  QOmega& operator+=(const QOmega& o) {
    x_ += o.x_;
    y_ += o.y_;
    return *this;
  }
  QOmega& operator-=(const QOmega& o) {
    x_ -= o.x_;
    y_ -= o.y_;
    return *this;
  }
  QOmega& operator*=(const QOmega& o);
  QOmega& operator/=(const QOmega& o) { return *this *= o.inverse(); }

  friend QOmega operator+(QOmega a, const QOmega& b) { return a += b; }
  friend QOmega operator-(QOmega a, const QOmega& b) { return a -= b; }
  friend QOmega operator*(QOmega a, const QOmega& b) { return a *= b; }
  friend QOmega operator/(QOmega a, const QOmega& b) { return a /= b; }
  QOmega operator-() const { return QOmega(-x_, -y_); }

  friend bool operator==(const QOmega& a, const QOmega& b) { return a.x_ == b.x_ && a.y_ == b.y_; }
  friend bool operator!=(const QOmega& a, const QOmega& b) { return !(a == b); }

  std::complex<double> to_complex() const;
  /// Value under omega -> -1/sqrt(3).
  double conj_embedding() const;

  std::string to_string() const;

 private:
  Rational x_{0};
  Rational y_{0};
};

std::ostream& operator<<(std::ostream& os, const QOmega& q);

QOmega pow(const QOmega& q, unsigned e);

/// Designated k-th root in Q(omega): for totally positive rationals the
/// positive real root, otherwise the real root under omega -> +1/sqrt(3)
/// (odd k). nullopt when that root is not in Q(omega).
std::optional<QOmega> qomega_root(const QOmega& q, unsigned k);

/// 2*v_3(x + y*omega). omega has 3-adic valuation -1/2, so the two basis
/// terms have valuations in Z and Z + 1/2 and the minimum is exact.
/// kInfiniteValuation for zero.
int twice_valuation3(const QOmega& q);

}  // namespace pcfdyn
