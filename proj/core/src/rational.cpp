#include "pcfdyn/rational.hpp"

#include "pcfdyn/error.hpp"

#include <cmath>

namespace pcfdyn {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroLinearTerm: return "ZeroLinearTerm";
    case ErrorKind::LeadingRootUnavailable: return "LeadingRootUnavailable";
    case ErrorKind::OrderMismatch: return "OrderMismatch";
    case ErrorKind::ExtensionRequired: return "ExtensionRequired";
    case ErrorKind::RootFindingFailure: return "RootFindingFailure";
    case ErrorKind::Undecided: return "Undecided";
    case ErrorKind::DegreeCapExceeded: return "DegreeCapExceeded";
    case ErrorKind::ZeroResultant: return "ZeroResultant";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

int valuation(const Integer& n, unsigned long p) {
  if (n == 0) return kInfiniteValuation;
  Integer m = abs(n);
  int v = 0;
  while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
    mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
    ++v;
  }
  return v;
}

int valuation(const Rational& q, unsigned long p) {
  if (q == 0) return kInfiniteValuation;
  return valuation(Integer(q.get_num()), p) - valuation(Integer(q.get_den()), p);
}

bool is_prime(unsigned long p) {
  if (p < 2) return false;
  Integer n(p);
  return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  auto dot = s.find('.');
  Rational r;
  if (dot != std::string::npos && slash == std::string::npos) {
    // decimal literal like -1.25
    bool neg = !s.empty() && s[0] == '-';
    std::string body = neg || (!s.empty() && s[0] == '+') ? s.substr(1) : s;
    dot = body.find('.');
    std::string digits = body.substr(0, dot) + body.substr(dot + 1);
    if (digits.empty()) throw Error(ErrorKind::InvalidArgument, "bad rational '" + s + "'");
    Integer num;
    if (num.set_str(digits, 10) != 0)
      throw Error(ErrorKind::InvalidArgument, "bad rational '" + s + "'");
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, body.size() - dot - 1);
    r = Rational(num, den);
    if (neg) r = -r;
  } else {
    if (r.set_str(s, 10) != 0) throw Error(ErrorKind::InvalidArgument, "bad rational '" + s + "'");
  }
  r.canonicalize();
  return r;
}

double to_double(const Rational& q) { return q.get_d(); }

std::optional<Rational> rational_root(const Rational& q, unsigned k) {
  if (k == 0) return std::nullopt;
  if (k == 1) return q;
  if (q == 0) return Rational(0);
  bool neg = q < 0;
  if (neg && k % 2 == 0) return std::nullopt;
  Integer num = abs(Integer(q.get_num()));
  Integer den = q.get_den();
  Integer rn, rd;
  if (mpz_root(rn.get_mpz_t(), num.get_mpz_t(), k) == 0) return std::nullopt;
  if (mpz_root(rd.get_mpz_t(), den.get_mpz_t(), k) == 0) return std::nullopt;
  Rational r(rn, rd);
  r.canonicalize();
  return neg ? Rational(-r) : r;
}

Rational pow(const Rational& q, unsigned e) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), q.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), q.get_den_mpz_t(), e);
  return r;
}

}  // namespace pcfdyn
