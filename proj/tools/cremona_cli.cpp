// Command-line front end: one subcommand per library operation.
//
// Exit codes: 0 success, 1 domain error, 2 usage error. With --json every
// command prints {"status", "result", "witness"}; see README.md.

#include <algorithm>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <map>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cremona/cremona.hpp"
#include "json.hpp"

namespace {

using namespace cremona;
using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr std::uint64_t kDefaultSeed = 20240607;

struct Options {
  bool json = false;
  bool modular = false;
  std::uint64_t seed = kDefaultSeed;
  int max_iter = 64;
  int primes = 2;
  std::string base;  // directory that relative input paths are resolved against

  std::string a, b, map, inverse, curve, points, point, manifest;
  std::string h, a1, a2, mu, c;
  int eps = 1;
  long long n = 1;
  int degree = -1;
  int mult = 1;
  int bound = -1;
};

/// What a command produced: text for the terminal and the JSON pieces.
struct Outcome {
  std::string text;
  json result;
  json witness;
};

std::string resolve(const Options& o, const std::string& path) {
  if (o.base.empty() || fs::path(path).is_absolute()) return path;
  return (fs::path(o.base) / path).string();
}

bool readable(const std::string& path) {
  std::error_code ec;
  return fs::is_regular_file(path, ec);
}

void need(const std::string& value, const char* flag) {
  if (value.empty()) throw CLI::RequiredError(flag);
}

// Inputs may be file paths or, when no such file exists, inline text.
CremonaMap load_map(const Options& o, const std::string& arg, const char* flag) {
  need(arg, flag);
  const std::string path = resolve(o, arg);
  if (readable(path)) return make_map(parse_map_file(read_file(path)));
  if (arg.find(';') != std::string::npos) return make_map(parse_map(arg));
  throw Error(Errc::NotFound, "cannot open map file '" + arg + "'");
}

PlaneCurve load_curve(const Options& o) {
  need(o.curve, "--curve");
  const std::string path = resolve(o, o.curve);
  std::string text;
  if (readable(path)) {
    text = read_file(path);
  } else if (o.curve.find('=') != std::string::npos) {
    text = o.curve;
  } else {
    throw Error(Errc::NotFound, "cannot open curve file '" + o.curve + "'");
  }
  CurveSpec spec = parse_curve(text);
  return make_curve(spec.F, spec.sing);
}

std::vector<Point> load_points(const Options& o, std::size_t expected = 0) {
  need(o.points, "--points");
  const std::string path = resolve(o, o.points);
  std::vector<Point> pts;
  if (readable(path)) {
    pts = parse_points(read_file(path));
  } else if (o.points.find(',') != std::string::npos) {
    std::string text = o.points;
    std::replace(text.begin(), text.end(), ';', '\n');
    pts = parse_points(text);
  } else {
    throw Error(Errc::NotFound, "cannot open point file '" + o.points + "'");
  }
  if (expected != 0 && pts.size() != expected) {
    throw Error(Errc::Precondition, "expected " + std::to_string(expected) + " points, got " + std::to_string(pts.size()));
  }
  return pts;
}

Point load_point(const Options& o) {
  need(o.point, "--point");
  return parse_point(o.point);
}

RatFunc1 load_ratfunc(const std::string& text, const char* flag) {
  need(text, flag);
  return parse_ratfunc(text);
}

UPoly load_upoly(const std::string& text, const char* flag) {
  RatFunc1 r = load_ratfunc(text, flag);
  if (!r.is_polynomial()) throw Error(Errc::Precondition, std::string(flag) + " must be a polynomial");
  return r.num();
}

std::string pt(const Point& p) { return format_point_coords(p); }

json conditions_json(const std::vector<std::pair<Point, int>>& cs) {
  json a = json::array();
  for (const auto& [p, m] : cs) a.push_back({{"point", pt(p)}, {"multiplicity", m}});
  return a;
}

json polys_json(const std::vector<HomPoly>& ps) {
  json a = json::array();
  for (const auto& p : ps) a.push_back(format_poly(p));
  return a;
}

std::string map_text(const CremonaMap& m) { return format_map(m.components()); }

json map_json(const CremonaMap& m) { return {{"degree", m.degree()}, {"map", map_text(m)}}; }

json affine_json(const AffineMap2& m) { return json::array({format_affine_frac(m.X), format_affine_frac(m.Y)}); }

std::string affine_text(const AffineMap2& m) {
  return "(x, y) -> (" + format_affine_frac(m.X) + ", " + format_affine_frac(m.Y) + ")";
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

Outcome bool_outcome(bool v) { return {yes_no(v), v, nullptr}; }

std::string rat_decimal(const Rat& r, int digits = 6) {
  std::ostringstream s;
  s.precision(digits + 1);
  s << r.get_d();
  return s.str();
}

json fit_json(const PolyFit& f) {
  json c = json::array();
  for (const auto& v : f.coeffs) c.push_back(v.get_str());
  return {{"coefficients", c}, {"max_relative_residual", f.max_residual.get_str()}};
}

// ---------------------------------------------------------------- commands

Outcome cmd_compose(const Options& o) {
  const CremonaMap a = load_map(o, o.a, "-a"), b = load_map(o, o.b, "-b");
  const Composition r = compose_with_witness(a, b);
  Outcome out{map_text(r.map), map_json(r.map), nullptr};
  out.witness = {{"cancelled", format_poly(r.cancelled)}};
  return out;
}

Outcome cmd_power(const Options& o) {
  const CremonaMap m = load_map(o, o.map, "-m");
  if (o.n < 0) throw Error(Errc::Precondition, "the exponent must be non-negative");
  if (!m.is_identity() && o.n > o.max_iter) {
    throw Error(Errc::Precondition, "exponent " + std::to_string(o.n) + " exceeds --max-iter " + std::to_string(o.max_iter));
  }
  const CremonaMap r = power(m, o.n);
  return {map_text(r), map_json(r), nullptr};
}

Outcome cmd_apply(const Options& o) {
  const Point r = apply(load_map(o, o.map, "-m"), load_point(o));
  return {pt(r), pt(r), nullptr};
}

Outcome cmd_inverse_check(const Options& o) {
  return bool_outcome(verify_inverse(load_map(o, o.a, "-a"), load_map(o, o.b, "-b")));
}

Outcome cmd_fixed_curve(const Options& o) {
  const CremonaMap m = load_map(o, o.map, "-m");
  const auto F = fixed_curve(m);
  Outcome out;
  out.text = F ? format_poly(*F) : "none";
  out.result = {{"curve", F ? json(format_poly(*F)) : json(nullptr)}};
  const Triple minors = fixed_minors(m);
  out.witness = {{"minors", polys_json({minors[0], minors[1], minors[2]})}};
  return out;
}

Outcome cmd_basepoints(const Options& o) {
  const CremonaMap m = load_map(o, o.map, "-m");
  const auto bps = rational_base_points(m, o.seed);
  Outcome out;
  out.result = json::array();
  for (const auto& b : bps) {
    out.text += pt(b.point) + " : " + std::to_string(b.multiplicity) + "\n";
    out.result.push_back({{"point", pt(b.point)}, {"multiplicity", b.multiplicity}});
  }
  if (bps.empty()) out.text = "none\n";
  out.text.pop_back();
  out.witness = nullptr;
  return out;
}

json homaloidal_json(const HomaloidalReport& r) {
  return {{"degree", r.degree},         {"sum", r.sum},
          {"expected_sum", r.expected_sum}, {"sum_of_squares", r.sum_sq},
          {"expected_sum_of_squares", r.expected_sum_sq}, {"pass", r.pass()}};
}

std::string homaloidal_text(const HomaloidalReport& r) {
  return "sum " + std::to_string(r.sum) + " (expected " + std::to_string(r.expected_sum) + "), sum of squares " +
         std::to_string(r.sum_sq) + " (expected " + std::to_string(r.expected_sum_sq) + "): " +
         (r.pass() ? "pass" : "fail");
}

Outcome cmd_homaloidal(const Options& o) {
  const CremonaMap m = load_map(o, o.map, "-m");
  std::vector<BasePointRecord> declared;
  if (!o.points.empty()) {
    for (const auto& p : load_points(o)) declared.push_back({p, o.mult});
  } else {
    declared = rational_base_points(m, o.seed);
  }
  const HomaloidalReport r = homaloidal_check(m, declared);
  Outcome out{homaloidal_text(r), homaloidal_json(r), nullptr};
  json bp = json::array();
  for (const auto& b : declared) bp.push_back({{"point", pt(b.point)}, {"multiplicity", b.multiplicity}});
  out.witness = {{"base_points", bp}};
  return out;
}

Outcome cmd_preserves(const Options& o) {
  const auto E = preserves(load_map(o, o.map, "-m"), load_curve(o));
  Outcome out = bool_outcome(E.has_value());
  if (E) out.witness = {{"cofactor", format_poly(*E)}};
  if (E) out.text += "\ncofactor " + format_poly(*E);
  return out;
}

Outcome cmd_fixes(const Options& o) { return bool_outcome(fixes(load_map(o, o.map, "-m"), load_curve(o))); }

Outcome cmd_image(const Options& o) {
  const HomPoly D = image_curve(load_map(o, o.map, "-m"), load_map(o, o.inverse, "-i"), load_curve(o));
  return {format_poly(D), format_poly(D), nullptr};
}

Outcome cmd_genus(const Options& o) {
  const int g = genus_ordinary(load_curve(o));
  return {std::to_string(g), g, nullptr};
}

json system_json(const LinearSystem& L) {
  return {{"degree", L.degree},
          {"conditions", conditions_json(L.conditions)},
          {"projective_dimension", L.projective_dimension()},
          {"basis", polys_json(L.basis)}};
}

std::string system_text(const LinearSystem& L) {
  std::string s = "degree " + std::to_string(L.degree) + ", projective dimension " +
                  std::to_string(L.projective_dimension());
  for (const auto& B : L.basis) s += "\n" + format_poly(B);
  return s;
}

Outcome cmd_adjoint(const Options& o) {
  const LinearSystem L = adjoint(load_curve(o));
  return {system_text(L), system_json(L), nullptr};
}

Outcome cmd_adjoint_tower(const Options& o) {
  const auto tower = adjoint_tower(load_curve(o));
  Outcome out;
  out.result = json::array();
  for (const auto& t : tower) {
    out.result.push_back({{"degree", t.degree},
                          {"conditions", conditions_json(t.conditions)},
                          {"basis_size", t.basis_size},
                          {"genus_proxy", t.genus_proxy},
                          {"mismatch", t.mismatch}});
    std::string mults;
    for (const auto& [p, m] : t.conditions) mults += (mults.empty() ? "" : ",") + std::to_string(m);
    out.text += "degree " + std::to_string(t.degree) + " mult [" + mults + "] basis " + std::to_string(t.basis_size) +
                " genus " + std::to_string(t.genus_proxy) + (t.mismatch ? " (mismatch)" : "") + "\n";
  }
  if (!out.text.empty()) out.text.pop_back();
  out.witness = nullptr;
  return out;
}

Outcome cmd_linsys(const Options& o) {
  if (o.degree < 0) throw CLI::RequiredError("--degree");
  std::vector<std::pair<Point, int>> cond;
  if (!o.points.empty())
    for (const auto& p : load_points(o)) cond.push_back({p, o.mult});
  const LinearSystem L = linear_system(o.degree, cond);
  return {system_text(L), system_json(L), nullptr};
}

Outcome cmd_bp_theorem(const Options& o) {
  const PlaneCurve C = load_curve(o);
  const auto r = basepoint_theorem_check(C, load_map(o, o.map, "-m"), o.bound < 0 ? C.degree() : o.bound);
  Outcome out;
  json bps = json::array(), vs = json::array();
  for (const auto& b : r.base_points) bps.push_back({{"point", pt(b.point)}, {"multiplicity", b.multiplicity}});
  for (const auto& v : r.violations) {
    vs.push_back({{"point", pt(v.point)}, {"curve_multiplicity", v.curve_multiplicity}, {"reason", v.reason}});
  }
  out.result = {{"pass", r.pass()},
                {"curve_degree", r.curve_degree},
                {"violations", vs},
                {"nonlinear_excluded", r.nonlinear_excluded},
                {"caveat", r.caveat}};
  out.witness = {{"base_points", bps}};
  out.text = std::string(r.pass() ? "pass" : "fail") + ", " + std::to_string(r.violations.size()) + " violation(s)";
  for (const auto& v : r.violations) out.text += "\n" + pt(v.point) + ": " + v.reason;
  if (r.nonlinear_excluded) out.text += "\nno point of the curve satisfies 3m = n; no nonlinear map can pass";
  out.text += "\nnote: " + r.caveat;
  return out;
}

Outcome cmd_halphen(const Options& o) {
  const HalphenReport r = halphen_check(load_points(o, 9), static_cast<int>(o.n));
  Outcome out;
  out.result = {{"index", r.index}, {"projective_dimension", r.projective_dimension}, {"pencil", r.projective_dimension == 1}};
  out.witness = {{"basis", polys_json(r.basis)}};
  out.text = "projective dimension " + std::to_string(r.projective_dimension);
  if (r.projective_dimension == 1) out.text += " (Halphen pencil of index " + std::to_string(r.index) + ")";
  return out;
}

Outcome cmd_coble(const Options& o) { return bool_outcome(coble_check(load_curve(o))); }

Outcome cmd_dejonq(const Options& o) {
  const JhElement e = jh_make(load_upoly(o.h, "--hpoly"), load_ratfunc(o.a1.empty() ? "1" : o.a1, "--a1"),
                              load_ratfunc(o.a2.empty() ? "0" : o.a2, "--a2"));
  const AffineMap2 A = jh_to_affine(e);
  const CremonaMap M = jh_homogenize(e, o.seed);
  Outcome out;
  out.result = {{"genus", e.genus()},
                {"a1", format_upoly(e.a1())},
                {"a2", format_upoly(e.a2())},
                {"affine", affine_json(A)},
                {"degree", M.degree()},
                {"map", map_text(M)}};
  out.witness = {{"fixed_curve", format_affine_poly(hyperelliptic_equation(e.h()))}};
  out.text = affine_text(A) + "\n" + map_text(M);
  return out;
}

Outcome cmd_extend_auto(const Options& o) {
  if (o.eps != 1 && o.eps != -1) throw CLI::ValidationError("--eps", "must be 1 or -1");
  const UPoly h = load_upoly(o.h, "--hpoly");
  const AffineMap2 A = extend_hyperelliptic_auto(h, load_ratfunc(o.mu, "--mu"), load_ratfunc(o.c, "--c"), o.eps);
  Outcome out{affine_text(A), affine_json(A), nullptr};
  out.witness = {{"preserved", format_affine_poly(hyperelliptic_equation(h))}};
  return out;
}

Outcome cmd_ninth_point(const Options& o) {
  const auto pts = load_points(o, 8);
  const CubicPencil P = cubic_pencil(pts);
  Outcome out{pt(P.ninth), pt(P.ninth), nullptr};
  out.witness = {{"pencil", polys_json(P.basis)}};
  return out;
}

Outcome cmd_geiser_point(const Options& o) {
  const Point r = geiser_point(load_points(o, 7), load_point(o));
  return {pt(r), pt(r), nullptr};
}

Outcome cmd_geiser_map(const Options& o) {
  const CremonaMap G = geiser_map(load_points(o, 7), o.seed);
  Outcome out{map_text(G), map_json(G), nullptr};
  if (auto F = fixed_curve(G)) out.witness = {{"fixed_curve", format_poly(*F)}};
  return out;
}

Outcome cmd_bertini_point(const Options& o) {
  const Point r = bertini_point(load_points(o, 8), load_point(o));
  return {pt(r), pt(r), nullptr};
}

DegreeSequence run_degseq(const Options& o) {
  const CremonaMap m = load_map(o, o.map, "-m");
  if (o.n < 1) throw Error(Errc::Precondition, "-n must be at least 1");
  if (o.n > o.max_iter) {
    throw Error(Errc::Precondition, "-n " + std::to_string(o.n) + " exceeds --max-iter " + std::to_string(o.max_iter));
  }
  return degree_sequence(m, static_cast<int>(o.n), o.modular ? DegreeMethod::Modular : DegreeMethod::Exact, o.seed,
                         o.primes);
}

json sequence_json(const DegreeSequence& s) {
  json e = json::array();
  for (int n = 1; n <= s.length(); ++n) e.push_back({{"n", n}, {"deg", s.at(n)}});
  return {{"method", method_name(s.method)}, {"primes", s.primes}, {"disputed", s.disputed}, {"entries", e}};
}

Outcome cmd_degseq(const Options& o) {
  const DegreeSequence s = run_degseq(o);
  Outcome out;
  out.text = "n,deg";
  for (int n = 1; n <= s.length(); ++n) out.text += "\n" + std::to_string(n) + "," + std::to_string(s.at(n));
  out.result = sequence_json(s);
  out.witness = nullptr;
  return out;
}

Outcome cmd_dyndeg(const Options& o) {
  const DegreeSequence s = run_degseq(o);
  const GrowthReport r = dyn_degree_estimate(s);
  Outcome out;
  out.result = {{"growth_class", growth_name(r.growth_class)},
                {"lambda_estimate", r.lambda_estimate.get_str()},
                {"lambda_decimal", rat_decimal(r.lambda_estimate)},
                {"root_enclosure", {r.root_lower.get_str(), r.root_upper.get_str()}},
                {"margin_met", r.margin_met},
                {"linear_fit", fit_json(r.linear)},
                {"quadratic_fit", fit_json(r.quadratic)},
                {"exponential_fit", {{"rate", r.exp_rate}, {"log_residual", r.exp_residual}}},
                {"data", r.data},
                {"advisory", true}};
  out.witness = sequence_json(s);
  std::string data;
  for (auto d : r.data) data += (data.empty() ? "" : " ") + std::to_string(d);
  out.text = std::string("class ") + growth_name(r.growth_class) + "\nlambda " + rat_decimal(r.lambda_estimate) +
             "\nroot enclosure [" + rat_decimal(r.root_lower) + ", " + rat_decimal(r.root_upper) + "]\ndegrees " + data;
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const std::string& base);

/// Runs every line of a manifest "name | exit | arguments" and compares the
/// output with golden/<name>.out next to the manifest.
Outcome cmd_corpus(const Options& o) {
  need(o.manifest, "--manifest");
  const std::string manifest = resolve(o, o.manifest);
  const fs::path dir = fs::path(manifest).parent_path();
  std::istringstream in(read_file(manifest));
  std::string line;
  int total = 0, failed = 0;
  Outcome res;
  res.result = json::array();
  while (std::getline(in, line)) {
    const auto h = line.find('#');
    if (h != std::string::npos) line.resize(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<std::string> cols;
    std::istringstream ls(line);
    for (std::string c; std::getline(ls, c, '|');) {
      const auto a = c.find_first_not_of(" \t\r"), b = c.find_last_not_of(" \t\r");
      cols.push_back(a == std::string::npos ? "" : c.substr(a, b - a + 1));
    }
    if (cols.size() != 3) throw Error(Errc::Parse, "manifest line needs 'name | exit | arguments': " + line);
    std::vector<std::string> argv;
    std::istringstream as(cols[2]);
    for (std::string w; as >> std::quoted(w);) argv.push_back(w);
    std::ostringstream o1, e1;
    const int code = run(argv, o1, e1, dir.string());
    std::string expected;
    const fs::path golden = dir / "golden" / (cols[0] + ".out");
    const bool have_golden = readable(golden.string());
    if (have_golden) expected = read_file(golden.string());
    const bool ok = code == std::stoi(cols[1]) && (!have_golden || expected == o1.str());
    ++total;
    if (!ok) ++failed;
    res.result.push_back({{"name", cols[0]}, {"exit", code}, {"pass", ok}});
    res.text += std::string(ok ? "PASS " : "FAIL ") + cols[0] + "\n";
  }
  res.text += std::to_string(total - failed) + "/" + std::to_string(total) + " passed";
  res.witness = nullptr;
  if (failed > 0) throw Error(Errc::Verification, std::to_string(failed) + " corpus case(s) failed:\n" + res.text);
  return res;
}

void emit_error(std::ostream& out, std::ostream& err, bool as_json, const Error& e) {
  if (as_json) {
    json j = {{"status", "error"}, {"result", nullptr}, {"witness", nullptr}};
    j["error"] = {{"code", errc_name(e.code())}, {"message", e.what()}};
    if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
      j["error"]["message"] = pe->message();
      j["error"]["span"] = {{"start", pe->span().start}, {"end", pe->span().end}};
    }
    out << j.dump(2) << "\n";
  } else {
    err << "error: " << e.what() << "\n";
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const std::string& base) {
  Options o;
  o.base = base;
  CLI::App app{"Exact computations with plane Cremona transformations", "cremona_cli"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_flag("--json", o.json, "print {status, result, witness} as JSON");
  app.add_option("--seed", o.seed, "seed for randomized steps")->capture_default_str();
  app.add_flag("--modular", o.modular, "degree sequences modulo primes instead of exact composition");
  app.add_option("--max-iter", o.max_iter, "largest accepted iteration count")->capture_default_str();
  app.add_option("--primes", o.primes, "independent modular runs to compare (at least 2)")->capture_default_str();

  std::map<std::string, std::function<Outcome(const Options&)>> handlers;
  const auto sub = [&](const std::string& name, const std::string& help, auto fn) {
    handlers[name] = fn;
    return app.add_subcommand(name, help);
  };
  const auto map_opt = [&](CLI::App* s) { s->add_option("-m,--map", o.map, "map file or inline 'f0; f1; f2'"); };
  const auto curve_opt = [&](CLI::App* s) { s->add_option("-c,--curve", o.curve, "curve file"); };
  const auto points_opt = [&](CLI::App* s) { s->add_option("-P,--points", o.points, "point file or 'x,y,z; ...'"); };
  const auto point_opt = [&](CLI::App* s) { s->add_option("-q,--point", o.point, "point 'x,y,z'"); };

  auto* s = sub("compose", "composition a o b with the cancelled factor as witness", cmd_compose);
  s->add_option("-a", o.a, "outer map");
  s->add_option("-b", o.b, "inner map");
  s = sub("power", "n-th iterate", cmd_power);
  map_opt(s);
  s->add_option("-n", o.n, "exponent");
  s = sub("apply", "image of a point", cmd_apply);
  map_opt(s);
  point_opt(s);
  s = sub("inverse-check", "whether b is a two-sided inverse of a", cmd_inverse_check);
  s->add_option("-a", o.a, "map");
  s->add_option("-b", o.b, "candidate inverse");
  s = sub("fixed-curve", "curve of fixed points", cmd_fixed_curve);
  map_opt(s);
  s = sub("basepoints", "proper rational base points with multiplicities", cmd_basepoints);
  map_opt(s);
  s = sub("homaloidal", "check 3(d-1) = sum a_i and d^2 - 1 = sum a_i^2", cmd_homaloidal);
  map_opt(s);
  points_opt(s);
  s->add_option("-k,--mult", o.mult, "multiplicity of each declared point");
  s = sub("preserves", "whether the map preserves the curve; cofactor as witness", cmd_preserves);
  map_opt(s);
  curve_opt(s);
  s = sub("fixes", "whether the map fixes the curve pointwise", cmd_fixes);
  map_opt(s);
  curve_opt(s);
  s = sub("image", "image of the curve, given an inverse", cmd_image);
  map_opt(s);
  s->add_option("-i,--inverse", o.inverse, "inverse map");
  curve_opt(s);
  s = sub("genus", "genus of a curve with ordinary singularities", cmd_genus);
  curve_opt(s);
  s = sub("adjoint", "adjoint linear system", cmd_adjoint);
  curve_opt(s);
  s = sub("adjoint-tower", "iterated adjoint systems", cmd_adjoint_tower);
  curve_opt(s);
  s = sub("linsys", "forms of a degree with assigned multiplicities", cmd_linsys);
  s->add_option("-d,--degree", o.degree, "degree");
  points_opt(s);
  s->add_option("-k,--mult", o.mult, "multiplicity at each point");
  s = sub("bp-theorem", "base points against the curve multiplicities", cmd_bp_theorem);
  map_opt(s);
  curve_opt(s);
  s->add_option("--bound", o.bound, "claimed bound on the image degree (default: curve degree)");
  s = sub("halphen-check", "dimension of degree-3n curves with 9 n-fold points", cmd_halphen);
  points_opt(s);
  s->add_option("-n", o.n, "index");
  s = sub("coble-check", "whether the curve is a sextic with 10 ordinary nodes", cmd_coble);
  curve_opt(s);
  s = sub("dejonq", "element of J_h as affine and plane map", cmd_dejonq);
  s->add_option("--hpoly", o.h, "squarefree polynomial h(x)");
  s->add_option("--a1", o.a1, "a1(x), default 1");
  s->add_option("--a2", o.a2, "a2(x), default 0");
  s = sub("extend-auto", "extend x -> mu(x) to (mu(x), eps c(x) y)", cmd_extend_auto);
  s->add_option("--hpoly", o.h, "polynomial h(x)");
  s->add_option("--mu", o.mu, "Moebius map in x");
  s->add_option("--c", o.c, "rational function c(x) with h(mu) = c^2 h");
  s->add_option("--eps", o.eps, "sign, 1 or -1");
  s = sub("ninth-point", "ninth base point of the cubic pencil through 8 points", cmd_ninth_point);
  points_opt(s);
  s = sub("geiser-point", "Geiser image of a point", cmd_geiser_point);
  points_opt(s);
  point_opt(s);
  s = sub("geiser-map", "Geiser involution of 7 points", cmd_geiser_map);
  points_opt(s);
  s = sub("bertini-point", "Bertini image of a point", cmd_bertini_point);
  points_opt(s);
  point_opt(s);
  s = sub("degseq", "degrees of iterates as CSV n,deg", cmd_degseq);
  map_opt(s);
  s->add_option("-n", o.n, "number of iterates");
  s = sub("dyndeg", "growth class and dynamical degree estimate", cmd_dyndeg);
  map_opt(s);
  s->add_option("-n", o.n, "number of iterates");
  s = sub("corpus", "run a fixture manifest against golden outputs", cmd_corpus);
  s->add_option("-f,--manifest", o.manifest, "manifest file");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }
  if (o.primes < 2) {
    err << "usage error: --primes must be at least 2\n";
    return 2;
  }
  const std::string name = app.get_subcommands().front()->get_name();
  try {
    const Outcome r = handlers.at(name)(o);
    if (o.json) {
      json j = {{"status", "ok"}, {"result", r.result}, {"witness", r.witness}};
      out << j.dump(2) << "\n";
    } else {
      out << r.text << "\n";
    }
    return 0;
  } catch (const CLI::Error& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    emit_error(out, err, o.json, e);
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr, "");
}
