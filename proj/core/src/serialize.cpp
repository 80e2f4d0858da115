#include "pcfdyn/serialize.hpp"

#include <sstream>

namespace pcfdyn {

Json to_json(const QOmega& q) { return Json::array({to_string(q.x()), to_string(q.y())}); }

QOmega qomega_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorKind::InvalidArgument, "expected [\"x\", \"y\"]");
  return QOmega(parse_rational(j[0].get<std::string>()), parse_rational(j[1].get<std::string>()));
}

Json to_json(const BiPoly& p) {
  Json terms = Json::array();
  for (const auto& [k, v] : p.terms())
    terms.push_back(Json::array({k.first, k.second, to_string(v.x()), to_string(v.y())}));
  return Json{{"terms", terms}};
}

BiPoly bipoly_from_json(const Json& j) {
  BiPoly p;
  for (const auto& t : j.at("terms")) {
    if (!t.is_array() || t.size() != 4) throw Error(ErrorKind::InvalidArgument, "term must be [dc, da, x, y]");
    const int dc = t[0].get<int>(), da = t[1].get<int>();
    if (dc < 0 || da < 0) throw Error(ErrorKind::InvalidArgument, "negative exponent");
    p.add_term(dc, da, QOmega(parse_rational(t[2].get<std::string>()), parse_rational(t[3].get<std::string>())));
  }
  return p;
}

namespace {

template <class K, class F>
Json series_json(const PuiseuxSeries<K>& s, F&& coef) {
  Json co = Json::array();
  for (const auto& c : s.coeffs()) co.push_back(coef(c));
  Json j{{"ram", s.ram()}, {"lo", s.lo()}};
  j["prec"] = s.exact() ? Json(nullptr) : Json(s.prec());
  j["coeffs"] = co;
  return j;
}

}  // namespace

Json to_json(const PuiseuxSeries<QOmega>& s) {
  return series_json(s, [](const QOmega& q) { return to_json(q); });
}

Json to_json(const PuiseuxSeries<Complex>& s) {
  return series_json(s, [](const Complex& z) { return to_json(z); });
}

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const Cycle& cy) {
  Json pts = Json::array();
  for (const auto& z : cy.points) pts.push_back(to_json(z));
  return Json{{"points", pts}, {"period", cy.period}, {"multiplier", to_json(cy.multiplier)}};
}

std::string to_string(const BiPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest total degree first reads more naturally.
  std::vector<std::pair<std::pair<int, int>, QOmega>> ts(p.terms().begin(), p.terms().end());
  std::stable_sort(ts.begin(), ts.end(), [](const auto& x, const auto& y) {
    const int dx = x.first.first + x.first.second, dy = y.first.first + y.first.second;
    if (dx != dy) return dx > dy;
    return x.first.second > y.first.second;
  });
  for (const auto& [k, v] : ts) {
    QOmega coef = v;
    const bool neg = coef.y() == 0 && coef.x() < 0;
    if (neg) coef = -coef;
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    first = false;
    const bool mono = k.first || k.second;
    const bool unit = coef == QOmega(1);
    if (!unit || !mono) os << coef << (mono ? "*" : "");
    bool any = false;
    auto var = [&](const char* name, int e) {
      if (!e) return;
      if (any) os << "*";
      os << name;
      if (e > 1) os << "^" << e;
      any = true;
    };
    var("c", k.first);
    var("a", k.second);
  }
  return os.str();
}

}  // namespace pcfdyn
