#include "cli.hpp"

#include "pcfdyn/boettcher.hpp"
#include "pcfdyn/classify.hpp"
#include "pcfdyn/config.hpp"
#include "pcfdyn/equidist.hpp"
#include "pcfdyn/green.hpp"
#include "pcfdyn/padicval.hpp"
#include "pcfdyn/pcf.hpp"
#include "pcfdyn/periodic.hpp"
#include "pcfdyn/selftest.hpp"
#include "pcfdyn/serialize.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace pcfdyn::cli {

namespace {

std::vector<std::string> split(const std::string& s, char sep = ',') {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw Error(ErrorKind::InvalidArgument, "not a number: " + s);
  return v;
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  for (const auto& p : split(s)) out.push_back(static_cast<int>(parse_double(p)));
  return out;
}

/// "re" or "re,im".
Complex parse_complex(const std::string& s) {
  const auto p = split(s);
  if (p.size() == 1) return {parse_double(p[0]), 0};
  if (p.size() == 2) return {parse_double(p[0]), parse_double(p[1])};
  throw Error(ErrorKind::InvalidArgument, "expected re or re,im: " + s);
}

/// "x" or "x,y" for x + y omega, with rational components.
QOmega parse_qomega(const std::string& s) {
  const auto p = split(s);
  if (p.size() == 1) return QOmega(parse_rational(p[0]));
  if (p.size() == 2) return QOmega(parse_rational(p[0]), parse_rational(p[1]));
  throw Error(ErrorKind::InvalidArgument, "expected x or x,y: " + s);
}

BiPoly named_curve(const std::string& name) {
  if (name == "a=0") return BiPoly::a();
  if (name == "c=0") return BiPoly::c();
  if (name == "sym") return symmetry_curve();
  throw Error(ErrorKind::InvalidArgument, "curve must be a=0, c=0 or sym");
}

Json poly_json(const BiPoly& p) {
  Json j = to_json(p);
  j["text"] = to_string(p);
  return j;
}

Json qpoly_json(const QPoly& p) {
  Json j = Json::array();
  for (const auto& c : p.coeffs()) j.push_back(to_string(c));
  return j;
}

Json green_json(const GreenValue& g) { return {{"value", g.value}, {"error_bound", g.error_bound}, {"iterations", g.iterations_used}}; }

struct Result {
  Json doc;
  int code = kOk;
  std::string text;  // plain output instead of JSON when non-empty
};

Result cmd_bottcher(const RunConfig& cfg, int order, bool verify, const std::string& param, const std::string& z) {
  const int K = order > 0 ? order : cfg.bottcher_order;
  const auto e = bottcher_coeffs(K);
  Result r;
  r.doc["order"] = K;
  r.doc["coeffs"] = Json::array();
  for (int k = 1; k <= K; ++k) r.doc["coeffs"].push_back({{"k", k}, {"poly", poly_json(e.a(k))}});
  if (verify) {
    const auto fe = verify_functional_equation(e);
    Json v{{"residual_all_zero", fe.pass}, {"lowest_exponent", fe.lowest_exponent}};
    if (!fe.pass) v["first_failing_exponent"] = fe.first_failing_exponent;
    Json rows = Json::array();
    for (const auto& row : coefficient_bounds_report(e).rows)
      rows.push_back({{"k", row.k}, {"degree", row.degree}, {"max_neg_v2", row.max_neg_v2}, {"max_neg_twice_v3", row.max_neg_twice_v3},
                      {"two_adic_ok", row.two_adic_ok}, {"three_adic_ok", row.three_adic_ok}});
    v["bounds"] = rows;
    r.doc["verify"] = v;
    if (!fe.pass) r.code = kError;
  }
  if (!z.empty()) {
    const auto cp = split(param, ';');
    if (cp.size() != 2) throw Error(ErrorKind::InvalidArgument, "--param needs c;a");
    const CubicParam p{parse_complex(cp[0]), parse_complex(cp[1])};
    const Complex zz = parse_complex(z);
    const auto v = bottcher_eval(p, zz, std::max(K, 40));
    r.doc["eval"] = {{"z", to_json(zz)}, {"phi", to_json(v.value)}, {"tail_bound", v.tail_bound}, {"pullback", to_json(bottcher_numeric(p, zz))}};
  }
  return r;
}

Result cmd_green(const RunConfig& cfg, const std::string& c, const std::string& a, const std::string& z, unsigned long prime, bool height) {
  Result r;
  GreenOptions opt;
  opt.max_iterations = cfg.green_max_iterations;
  if (prime || height) {
    const Rational rc = parse_rational(c), ra = parse_rational(a);
    r.doc["c"] = to_string(rc);
    r.doc["a"] = to_string(ra);
    if (prime) {
      double bound = 0;
      r.doc["p"] = prime;
      r.doc["G_p"] = green_finite(prime, rc, ra, &bound);
      r.doc["error_bound"] = bound;
    }
    if (height) r.doc["canonical_height"] = canonical_height(rc, ra, 1, 1, cfg.tol, opt);
    return r;
  }
  const CubicParam p{parse_complex(c), parse_complex(a)};
  r.doc["c"] = to_json(p.c);
  r.doc["a"] = to_json(p.a);
  const auto b = green_bounds(p);
  r.doc["bounds"] = {{"escape_radius", b.escape_radius}, {"theta", b.theta}, {"rho", b.rho}, {"growth_C", b.growth_C}};
  if (!z.empty()) {
    const Complex zz = parse_complex(z);
    r.doc["z"] = to_json(zz);
    r.doc["g"] = green_json(green_arch(p, zz, cfg.tol, opt));
  } else {
    const auto g = g0g1G(p, cfg.tol, opt);
    r.doc["g0"] = green_json(g.g0);
    r.doc["g1"] = green_json(g.g1);
    r.doc["G"] = green_json(g.G);
  }
  return r;
}

Result cmd_perm(int m, const std::string& lambda, const std::string& line_c, const std::string& cycles) {
  Result r;
  r.doc["m"] = m;
  if (!cycles.empty()) {
    const auto cp = split(cycles, ';');
    if (cp.size() != 2) throw Error(ErrorKind::InvalidArgument, "--cycles needs c;a");
    const CubicParam p{parse_complex(cp[0]), parse_complex(cp[1])};
    Json list = Json::array();
    for (const auto& cy : find_cycles(p, m)) list.push_back(to_json(cy));
    r.doc["cycles"] = list;
    return r;
  }
  const QOmega lam = parse_qomega(lambda);
  r.doc["lambda"] = to_json(lam);
  if (!line_c.empty()) {
    const QOmega c0 = parse_qomega(line_c);
    r.doc["c"] = to_json(c0);
    Json co = Json::array();
    for (const auto& v : perm_poly_at(m, lam, c0).coeffs()) co.push_back(to_json(v));
    r.doc["poly_in_a"] = co;
    return r;
  }
  const auto pp = perm_poly(m, lam);
  r.doc["zero_resultant"] = pp.zero_resultant;
  if (!pp.note.empty()) r.doc["note"] = pp.note;
  r.doc["poly"] = poly_json(pp.poly());
  return r;
}

Json point_json(const PcfPoint& p) {
  Json j{{"c", to_json(p.c)}, {"a", to_json(p.a)}, {"radius", p.radius}, {"certified", p.certified}, {"witness", p.witness}};
  if (p.exact) j["exact"] = {{"c", to_json(p.exact->c)}, {"a", to_json(p.exact->a)}};
  return j;
}

Result cmd_pcf(const RunConfig& cfg, const std::string& relation, bool cap_given) {
  Result r;
  std::size_t certified = 0, total = 0;
  Json pts = Json::array();
  if (!relation.empty()) {
    const auto v = parse_ints(relation);
    if (v.size() != 4) throw Error(ErrorKind::InvalidArgument, "--relation needs n0,k0,n1,k1");
    const auto res = pcf_solve(orbit_relation(0, v[0], v[1], cfg.relation_cap), orbit_relation(1, v[2], v[3], cfg.relation_cap));
    r.doc["relation"] = v;
    r.doc["curve_detected"] = res.curve_detected;
    if (res.curve_detected) r.doc["component"] = poly_json(res.component);
    for (const auto& p : res.points) {
      pts.push_back(point_json(p));
      certified += p.certified;
      ++total;
    }
  } else {
    const long cap = cap_given ? cfg.relation_cap : cfg.enumerate_cap;
    const auto en = pcf_enumerate(cap, cfg.threads);
    r.doc["cap"] = cap;
    r.doc["max_abs_c"] = en.max_abs_c;
    r.doc["max_abs_a"] = en.max_abs_a;
    r.doc["curve_pairs"] = en.curve_pairs;
    r.doc["errors"] = en.errors;
    for (const auto& p : en.points) {
      pts.push_back(point_json(p));
      certified += p.certified;
      ++total;
    }
  }
  r.doc["certified"] = certified;
  r.doc["points"] = pts;
  if (2 * certified < total) r.code = kUndecided;
  return r;
}

Result cmd_classify(const RunConfig& cfg, const std::string& probe, const std::string& zeta, const std::string& branch, int order) {
  Result r;
  if (!probe.empty() == !branch.empty()) throw Error(ErrorKind::InvalidArgument, "give exactly one of --probe or --branch");
  if (!probe.empty()) {
    const auto v = parse_ints(probe);
    if (v.size() != 2) throw Error(ErrorKind::InvalidArgument, "--probe needs q,m");
    const Complex zc = parse_complex(zeta);
    const bool exact = zc.imag() == 0 && std::abs(std::abs(zc.real()) - 1) == 0;
    const ZProbe z = exact ? z_probe(v[0], v[1], static_cast<int>(zc.real())) : z_probe_numeric(v[0], v[1], zc, static_cast<unsigned>(cfg.seed));
    r.doc["q"] = v[0];
    r.doc["m"] = v[1];
    r.doc["zeta"] = to_json(zc);
    r.doc["kind"] = z.kind == ZProbe::Kind::Curve ? "curve" : "finite";
    if (z.kind == ZProbe::Kind::Curve && !z.curve.is_zero()) r.doc["curve"] = poly_json(z.curve);
    Json pts = Json::array();
    for (const auto& [c, a] : z.points) pts.push_back({{"c", to_json(c)}, {"a", to_json(a)}});
    r.doc["points"] = pts;
    return r;
  }
  const BiPoly curve = named_curve(branch);
  const int Q = order > 0 ? order : cfg.branch_order;
  r.doc["curve"] = poly_json(curve);
  r.doc["order"] = Q;
  Json list = Json::array();
  for (int b = 0; b < branch_count(curve); ++b) {
    const auto bg = branch_growth(curve, b, Q);
    Json crit = Json::array();
    for (int i = 0; i < 2; ++i) {
      const auto iu = static_cast<std::size_t>(i);
      Json orders = Json::array();
      // null marks an iterate that vanishes identically along the branch.
      for (long o : bg.orders[iu]) orders.push_back(o >= kExactPrecision ? Json() : Json(o));
      Json ci{{"kind", bg.kind[iu] == BranchGrowth::Kind::Escaping ? "escaping" : "bounded"}, {"orders", orders}};
      if (bg.rate[iu]) ci["rate"] = to_string(*bg.rate[iu]);
      crit.push_back(ci);
    }
    list.push_back({{"branch", b}, {"ramification", bg.ramification}, {"exact", bg.exact}, {"critical", crit}});
  }
  r.doc["branches"] = list;
  return r;
}

Result cmd_multiplier(int d, const std::string& t, const std::string& u_relation, int m, const std::string& primes) {
  Result r;
  QPoly tp;
  if (!u_relation.empty()) {
    const auto v = parse_ints(u_relation);
    if (v.size() != 2) throw Error(ErrorKind::InvalidArgument, "--u-relation needs n,k");
    if (d != 3) throw Error(ErrorKind::InvalidArgument, "--u-relation is for d = 3");
    tp = unicritical_t_poly(unicritical_u_poly(v[0], v[1]));
  } else {
    tp = QPoly(std::vector<Rational>{-parse_rational(t), Rational(1)});
  }
  std::vector<unsigned long> ps;
  for (int p : parse_ints(primes)) ps.push_back(static_cast<unsigned long>(p));
  const auto rep = verify_prop_multiplier(multiplier_poly(d, tp, m), ps);
  r.doc["d"] = d;
  r.doc["m"] = m;
  r.doc["t_minpoly"] = qpoly_json(tp);
  r.doc["lambda_poly"] = qpoly_json(rep.spec.lambda_poly);
  r.doc["zero_roots_removed"] = rep.zero_roots_removed;
  Json checks = Json::array();
  for (const auto& pc : rep.checks) {
    Json slopes = Json::array();
    for (const auto& [v, mult] : pc.polygon.root_valuations()) slopes.push_back({{"valuation", to_string(v)}, {"count", mult}});
    checks.push_back({{"p", pc.p}, {"divides_d", pc.divides_d}, {"root_valuations", slopes}, {"pass", pc.pass}});
  }
  r.doc["checks"] = checks;
  r.doc["pass"] = rep.pass;
  if (!rep.pass) r.code = kError;
  return r;
}

void write_grid(const DensityGrid& d, const std::string& csv, const std::string& pgm) {
  if (!csv.empty()) {
    std::ofstream f(csv);
    if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + csv);
    f << "i,j,re,im,density\n";
    f.precision(17);
    for (int j = 0; j < d.resolution; ++j)
      for (int i = 0; i < d.resolution; ++i) {
        const Complex s = d.cell_center(i, j);
        f << i << ',' << j << ',' << s.real() << ',' << s.imag() << ',' << d.values[static_cast<std::size_t>(j) * d.resolution + i] << '\n';
      }
  }
  if (!pgm.empty()) {
    std::ofstream f(pgm);
    if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + pgm);
    const double top = *std::max_element(d.values.begin(), d.values.end());
    f << "P2\n" << d.resolution << ' ' << d.resolution << "\n255\n";
    // Top row first, so the image has the imaginary axis pointing up.
    for (int j = d.resolution - 1; j >= 0; --j) {
      for (int i = 0; i < d.resolution; ++i) {
        const double v = top > 0 ? d.values[static_cast<std::size_t>(j) * d.resolution + i] / top : 0;
        f << static_cast<int>(std::lround(255 * std::sqrt(v))) << (i + 1 < d.resolution ? ' ' : '\n');
      }
    }
  }
}

Result cmd_equidist(const RunConfig& cfg, const std::string& line) {
  ParamLine pl;
  if (line == "c=0") pl = ParamLine::c_zero();
  else if (line == "a=0") pl = ParamLine::a_zero();
  else throw Error(ErrorKind::InvalidArgument, "--line must be c=0 or a=0");
  const Window w;
  const auto nu = bifurcation_density(pl, w, cfg.resolution, cfg.threads);
  write_grid(nu, cfg.grid_csv, cfg.grid_pgm);
  Result r;
  r.doc["line"] = line;
  r.doc["dictionary"] = kDictionaryVersion;
  r.doc["window"] = {w.x0, w.x1, w.y0, w.y1};
  r.doc["resolution"] = cfg.resolution;
  r.doc["mask_fraction"] = nu.mask_fraction;
  r.doc["unnormalized_mass"] = nu.unnormalized_mass;
  Json rows = Json::array();
  for (int cap : cfg.caps) {
    const auto mu = pcf_on_line(pl, cap);
    rows.push_back({{"cap", cap}, {"atoms", mu.atoms.size()}, {"distance", compare(mu, nu)}});
  }
  r.doc["distances"] = rows;
  if (nu.mask_fraction > 0.5) r.code = kUndecided;
  return r;
}

Result cmd_selftest(const RunConfig& cfg, const std::string& only, const std::string& known, bool json) {
  std::vector<int> ids = only.empty() ? std::vector<int>{} : parse_ints(only);
  const std::vector<int> known_ids = known.empty() ? std::vector<int>{} : parse_ints(known);
  const auto rep = run_selftest(cfg, ids);
  Result r;
  if (json) r.doc = to_json(rep);
  else r.text = "seed " + std::to_string(rep.seed) + "\n" + format_table(rep);
  for (const auto& c : rep.criteria)
    if (!c.pass && std::find(known_ids.begin(), known_ids.end(), c.id) == known_ids.end()) r.code = kError;
  return r;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and numeric tools for the cubic family z^3/3 - c z^2/2 + a^3", "pcfdyn"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, out_path;
  std::uint64_t seed = 0;
  int threads = 0;
  double tol = 0;
  long cap = 0;
  auto* o_seed = app.add_option("--seed", seed, "Seed for randomized checks");
  auto* o_threads = app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  auto* o_tol = app.add_option("--tol", tol, "Tolerance for Green function values")->check(CLI::PositiveNumber);
  auto* o_cap = app.add_option("--cap", cap, "Relation degree cap")->check(CLI::PositiveNumber);
  app.add_option("--out", out_path, "Write output to this file instead of stdout");
  app.add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);

  auto* bot = app.add_subcommand("bottcher", "Boettcher coefficients a_k(c, a)");
  int order = 0;
  bool verify = false;
  std::string bparam, bz;
  bot->add_option("--order", order, "Number of coefficients")->check(CLI::PositiveNumber);
  bot->add_flag("--verify", verify, "Check phi(P) = phi^3 and coefficient bounds");
  bot->add_option("--param", bparam, "Numeric parameter c;a, each re or re,im");
  bot->add_option("--z", bz, "Evaluate phi at z (needs --param)");

  auto* grn = app.add_subcommand("green", "Green functions at one parameter");
  std::string gc = "0", ga = "0", gz;
  unsigned long gp = 0;
  bool gheight = false;
  grn->add_option("--c", gc, "c as re[,im], or a rational with --p/--height");
  grn->add_option("--a", ga, "a as re[,im], or a rational with --p/--height");
  grn->add_option("--z", gz, "Evaluate g at z instead of at the critical points");
  grn->add_option("--p", gp, "Finite place (prime) for rational parameters");
  grn->add_flag("--height", gheight, "Canonical height of a rational parameter");

  auto* prm = app.add_subcommand("perm", "Per_m(lambda) and cycles");
  int pm = 1;
  std::string plambda = "0", pline, pcycles;
  prm->add_option("--m", pm, "Period")->check(CLI::PositiveNumber);
  prm->add_option("--lambda", plambda, "Multiplier x or x,y meaning x + y omega");
  prm->add_option("--line-c", pline, "Restrict to the line c = value");
  prm->add_option("--cycles", pcycles, "List the period-m cycles at c;a instead");

  auto* pcf = app.add_subcommand("pcf", "Post-critically finite parameters");
  std::string relation;
  pcf->add_option("--relation", relation, "Solve one system n0,k0,n1,k1; otherwise enumerate up to --cap");

  auto* cls = app.add_subcommand("classify", "Z-set probes and branch growth");
  std::string probe, zeta = "-1", branch;
  int border = 0;
  cls->add_option("--probe", probe, "q,m for Z(q, m, zeta)");
  cls->add_option("--zeta", zeta, "Root of unity re[,im]; +-1 is exact");
  cls->add_option("--branch", branch, "Curve a=0, c=0 or sym");
  cls->add_option("--order", border, "Iterates to track (3..8)");

  auto* mul = app.add_subcommand("multiplier-valuations", "Newton polygons of multiplier polynomials");
  int md = 2, mm = 1;
  std::string mt = "0", mu, primes = "2,3,5,7,11";
  mul->add_option("--d", md, "Degree of z^d + t")->check(CLI::PositiveNumber);
  mul->add_option("--t", mt, "Rational parameter t");
  mul->add_option("--u-relation", mu, "n,k: cubic PCF parameters from a relation on c = 0");
  mul->add_option("--m", mm, "Period")->check(CLI::PositiveNumber);
  mul->add_option("--primes", primes, "Comma separated primes");

  auto* eq = app.add_subcommand("equidist", "PCF atoms against the bifurcation density");
  std::string line = "c=0", caps, csv, pgm;
  int resolution = 0;
  eq->add_option("--line", line, "c=0 or a=0");
  eq->add_option("--caps", caps, "Orbit caps, comma separated");
  eq->add_option("--resolution", resolution, "Grid cells per side")->check(CLI::Range(2, 2048));
  eq->add_option("--csv", csv, "Write the density grid as CSV");
  eq->add_option("--pgm", pgm, "Write the density grid as a PGM image");

  auto* st = app.add_subcommand("selftest", "Run the acceptance criteria");
  std::string only, known;
  bool json = false;
  st->add_option("--only", only, "Comma separated criterion ids");
  st->add_option("--known-discrepancy", known, "Criteria whose failure does not fail the run");
  st->add_flag("--json", json, "Emit JSON instead of the table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }

  try {
    RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
    if (o_seed->count()) cfg.seed = seed;
    if (o_threads->count()) cfg.threads = threads;
    if (o_tol->count()) cfg.tol = tol;
    if (o_cap->count()) cfg.relation_cap = cfg.enumerate_cap = cap;
    if (!out_path.empty()) cfg.out = out_path;
    if (!caps.empty()) cfg.caps = parse_ints(caps);
    if (resolution) cfg.resolution = resolution;
    if (!csv.empty()) cfg.grid_csv = csv;
    if (!pgm.empty()) cfg.grid_pgm = pgm;
    cfg.validate();

    Result r;
    std::string name;
    if (*bot) name = "bottcher", r = cmd_bottcher(cfg, order, verify, bparam, bz);
    else if (*grn) name = "green", r = cmd_green(cfg, gc, ga, gz, gp, gheight);
    else if (*prm) name = "perm", r = cmd_perm(pm, plambda, pline, pcycles);
    else if (*pcf) name = "pcf", r = cmd_pcf(cfg, relation, o_cap->count() > 0);
    else if (*cls) name = "classify", r = cmd_classify(cfg, probe, zeta, branch, border);
    else if (*mul) name = "multiplier-valuations", r = cmd_multiplier(md, mt, mu, mm, primes);
    else if (*eq) name = "equidist", r = cmd_equidist(cfg, line);
    else name = "selftest", r = cmd_selftest(cfg, only, known, json);

    std::string text = r.text;
    if (text.empty()) {
      Json doc{{"command", name}, {"seed", cfg.seed}};
      for (auto& [k, v] : r.doc.items()) doc[k] = v;
      text = doc.dump(2) + "\n";
    }
    if (cfg.out.empty()) {
      out << text;
    } else {
      std::ofstream f(cfg.out);
      if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + cfg.out);
      f << text;
    }
    return r.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::Undecided ? kUndecided : kError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
}

}  // namespace pcfdyn::cli
