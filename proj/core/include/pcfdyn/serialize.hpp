#pragma once

// Canonical JSON forms. Exact numbers are written as decimal rational
// strings ("n" or "n/d"); terms are ordered by (dc, da) ascending.

#include "pcfdyn/bipoly.hpp"
#include "pcfdyn/dynamics.hpp"
#include "pcfdyn/series.hpp"

#include <json.hpp>

#include <string>

namespace pcfdyn {

using Json = nlohmann::ordered_json;

Json to_json(const QOmega& q);  // ["x", "y"]
QOmega qomega_from_json(const Json& j);

/// {"terms": [[dc, da, "x", "y"], ...]}
Json to_json(const BiPoly& p);
BiPoly bipoly_from_json(const Json& j);

/// {"ram": m, "lo": e, "prec": p, "coeffs": [["x", "y"], ...]}; prec is
/// null for exact series.
Json to_json(const PuiseuxSeries<QOmega>& s);
Json to_json(const PuiseuxSeries<Complex>& s);

Json to_json(Complex z);  // [re, im]
Json to_json(const Cycle& cy);

/// Human-readable form, e.g. "a^3 - 1/6*c^3 - c".
std::string to_string(const BiPoly& p);

}  // namespace pcfdyn
