#include "pcfdyn/qomega.hpp"

#include "pcfdyn/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pcfdyn {

QOmega& QOmega::operator*=(const QOmega& o) {
  // (x1 + y1 w)(x2 + y2 w) = (x1 x2 + y1 y2 / 3) + (x1 y2 + x2 y1) w
  Rational nx = x_ * o.x_ + y_ * o.y_ / 3;
  Rational ny = x_ * o.y_ + o.x_ * y_;
  x_ = std::move(nx);
  y_ = std::move(ny);
  return *this;
}

QOmega QOmega::inverse() const {
  Rational n = norm();
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "division by zero in Q(omega)");
  return QOmega(x_ / n, -y_ / n);
}

std::complex<double> QOmega::to_complex() const {
  return {x_.get_d() + y_.get_d() / std::sqrt(3.0), 0.0};
}

double QOmega::conj_embedding() const { return x_.get_d() - y_.get_d() / std::sqrt(3.0); }

std::string QOmega::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const QOmega& q) {
  if (q.y() == 0) return os << pcfdyn::to_string(q.x());
  if (q.x() == 0) return os << pcfdyn::to_string(q.y()) << "*w";
  return os << "(" << pcfdyn::to_string(q.x()) << (q.y() < 0 ? " - " : " + ")
            << pcfdyn::to_string(abs(q.y())) << "*w)";
}

QOmega pow(const QOmega& q, unsigned e) {
  QOmega result(1);
  QOmega base = q;
  while (e) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e) base *= base;
  }
  return result;
}

namespace {

// Candidate roots of a rational: s in Q, or s = r*sqrt(3) = 3r*omega for even k.
std::optional<QOmega> root_of_rational(const Rational& q, unsigned k) {
  if (auto r = rational_root(q, k)) {
    if (*r >= 0 || k % 2 == 1) return QOmega(*r);
  }
  if (k % 2 == 0 && q > 0) {
    // (r*sqrt3)^k = r^k 3^(k/2)
    Rational scale = pow(Rational(3), k / 2);
    if (auto r = rational_root(q / scale, k)) {
      Rational rr = abs(*r);
      return QOmega(Rational(0), 3 * rr);
    }
  }
  return std::nullopt;
}

Rational approximate_rational(double v, long max_den) {
  // continued fraction best approximation
  if (!std::isfinite(v)) return Rational(0);
  long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double x = v;
  for (int it = 0; it < 64; ++it) {
    double a = std::floor(x);
    if (std::abs(a) > 1e15) break;
    long ai = static_cast<long>(a);
    long h2 = ai * h1 + h0;
    long k2 = ai * k1 + k0;
    if (k2 > max_den || k2 <= 0) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    double frac = x - a;
    if (frac < 1e-15) break;
    x = 1.0 / frac;
  }
  if (k1 == 0) return Rational(0);
  Rational r(h1, k1);
  r.canonicalize();
  return r;
}

}  // namespace

std::optional<QOmega> qomega_root(const QOmega& q, unsigned k) {
  if (k == 0) return std::nullopt;
  if (k == 1) return q;
  if (q.is_zero()) return QOmega(0);
  if (q.is_rational()) return root_of_rational(q.x(), k);
  // General element: look for s with s^k = q via both real embeddings,
  // then confirm exactly.
  double e1 = q.to_complex().real();
  double e2 = q.conj_embedding();
  auto real_root = [k](double v) -> std::optional<double> {
    if (v < 0 && k % 2 == 0) return std::nullopt;
    double r = std::pow(std::abs(v), 1.0 / k);
    return v < 0 ? -r : r;
  };
  auto r1 = real_root(e1);
  if (!r1) return std::nullopt;
  std::vector<double> r2s;
  if (auto r2 = real_root(e2)) {
    r2s.push_back(*r2);
    if (k % 2 == 0) r2s.push_back(-*r2);
  } else {
    return std::nullopt;  // conjugate of an element of Q(omega) must also have a real k-th root
  }
  const double s3 = std::sqrt(3.0);
  for (double r2 : r2s) {
    double xs = 0.5 * (*r1 + r2);
    double ys = 0.5 * (*r1 - r2) * s3;
    for (long den : {1000L, 100000L, 10000000L}) {
      QOmega cand(approximate_rational(xs, den), approximate_rational(ys, den));
      if (pow(cand, k) == q) return cand;
    }
  }
  return std::nullopt;
}

int twice_valuation3(const QOmega& q) {
  if (q.is_zero()) return kInfiniteValuation;
  int vx = valuation(q.x(), 3);
  int vy = valuation(q.y(), 3);
  int tx = vx == kInfiniteValuation ? kInfiniteValuation : 2 * vx;
  int ty = vy == kInfiniteValuation ? kInfiniteValuation : 2 * vy - 1;
  return std::min(tx, ty);
}

}  // namespace pcfdyn
