#include "crosshull/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <ostream>

#include "crosshull/extend.hpp"
#include "crosshull/hull.hpp"
#include "crosshull/scene.hpp"
#include "crosshull/verify.hpp"

namespace crosshull {

namespace {

using Json = nlohmann::ordered_json;

std::string digits17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json cjson(Complex z) { return Json::array({z.real(), z.imag()}); }

Json pjson(std::span<const Complex> z) {
  Json a = Json::array();
  for (Complex c : z) a.push_back(cjson(c));
  return a;
}

std::string hex_digest(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

double parse_real(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    fail(ErrorKind::Parse, "bad number '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v)) fail(ErrorKind::Parse, "bad number '" + s + "'");
  return v;
}

Complex parse_cpx(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) return {parse_real(s), 0.0};
  return checked_point(parse_real(s.substr(0, comma)), parse_real(s.substr(comma + 1)));
}

// "re,im;re,im;..." (a bare real is allowed per coordinate).
Point parse_point(const std::string& s, int n) {
  Point z;
  std::size_t start = 0;
  while (true) {
    const auto semi = s.find(';', start);
    z.push_back(parse_cpx(s.substr(start, semi == std::string::npos ? std::string::npos : semi - start)));
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  if (static_cast<int>(z.size()) != n) {
    fail(ErrorKind::LengthMismatch, "point has " + std::to_string(z.size()) + " coordinates, scene has " + std::to_string(n));
  }
  return z;
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    const std::string part = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(part, &used);
    } catch (const std::exception&) {
      fail(ErrorKind::Parse, "bad integer list '" + s + "'");
    }
    if (used != part.size()) fail(ErrorKind::Parse, "bad integer list '" + s + "'");
    out.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

Json checks_json(const std::vector<Check>& checks) {
  Json a = Json::array();
  for (const auto& c : checks) {
    a.push_back({{"name", c.name}, {"pass", c.pass}, {"count", c.count}, {"failures", c.failures}, {"detail", c.detail}});
  }
  return a;
}

Json stats_json(const ErrorStats& s) {
  return {{"count", s.count}, {"max_abs", s.max_abs}, {"mean_abs", s.mean_abs}, {"max_rel", s.max_rel}, {"mean_rel", s.mean_rel}};
}

Json poly_json(const Polynomial& p) {
  Json terms = Json::array();
  for (const auto& t : p.terms()) terms.push_back({{"exps", t.exps}, {"c", cjson(t.coeff)}});
  return {{"kind", "polyzero"}, {"coeffs", terms}, {"vars", p.vars()}};
}

struct Common {
  std::string scene_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> strategy;
  std::optional<double> margin;
  std::string out_dir;
};

struct Context {
  Scene scene;
  std::uint64_t seed;
  Strategy strategy;
  double margin;
  std::string digest;
};

Context load(const Common& c, const std::vector<std::string>& args) {
  Context ctx{c.scene_path.empty() ? example_scene() : load_scene(c.scene_path), 0, Strategy::Auto, 0.0, {}};
  ctx.seed = c.seed.value_or(ctx.scene.defaults.seed);
  ctx.strategy = c.strategy ? parse_strategy(*c.strategy) : ctx.scene.defaults.strategy;
  ctx.margin = c.margin.value_or(ctx.scene.defaults.margin);
  std::string all = ctx.scene.canonical;
  for (const auto& a : args) all += "\n" + a;
  ctx.digest = hex_digest(all);
  return ctx;
}

Json report_head(const std::string& command, const Context& ctx) {
  return {{"command", command}, {"inputs_digest", ctx.digest}, {"seed", ctx.seed}};
}

HullEvaluator evaluator(const Context& ctx) {
  HullEvaluator ev(ctx.scene.spec, ctx.strategy, ctx.margin);
  if (!ev.exact()) {
    GridSpec g;
    g.nx = g.ny = ctx.scene.defaults.grid;
    g.tol = ctx.scene.defaults.tol;
    ev.prepare_fields(g);
  }
  return ev;
}

std::ostream& sink(const std::string& dir, const std::string& file, std::ofstream& f, std::ostream& fallback) {
  if (dir.empty()) return fallback;
  std::filesystem::create_directories(dir);
  f.open(std::filesystem::path(dir) / file);
  if (!f) fail(ErrorKind::InvalidArgument, "cannot write to '" + dir + "'");
  return f;
}

int reproduce(const Context& ctx, Complex w, int grid, std::ostream& out) {
  const Scene ex = example_scene();
  HullEvaluator ev(ex.spec, ctx.strategy, ctx.margin);
  if (!ev.exact()) {
    GridSpec g;
    g.nx = g.ny = grid;
    ev.prepare_fields(g);
  }
  const Point z{Complex{0.0, 0.0}, w, w};
  Json rep = report_head("reproduce-example", ctx);
  rep["point"] = pjson(z);
  Json asserts = Json::array();
  bool ok = true;
  auto check = [&](const std::string& name, bool pass, Json expected, Json actual) {
    asserts.push_back({{"assertion", name}, {"pass", pass}, {"expected", expected}, {"actual", actual}});
    ok = ok && pass;
  };
  const auto mem = in_cross(ex.spec, z);
  Json wit = Json::array();
  for (const auto& a : mem.witnesses) wit.push_back(a.str());
  check("z in X_{3,2}", mem.member, true, {{"member", mem.member}, {"witnesses", wit}});
  const double hv = ev.hull_value(z);
  const Verdict hverdict = ev.in_hull(z);
  check("hull value = 4/3 < 2", std::abs(hv - 4.0 / 3.0) <= 1e-12 && hverdict == Verdict::Inside, 4.0 / 3.0,
        {{"value", hv}, {"verdict", to_string(hverdict)}});
  const auto zs = make_composite(ex.spec, CompositeHull2::Kind::Zs, 2);
  const double zv = composite_hull2_value(ev, zs, z);
  const Verdict zverdict = in_composite(ev, zs, z);
  check("Zs(s=3) value = 4/3 >= 1, z not in Zs", std::abs(zv - 4.0 / 3.0) <= 1e-12 && zverdict == Verdict::Outside,
        4.0 / 3.0, {{"value", zv}, {"verdict", to_string(zverdict)}});
  const auto zz = make_composite(ex.spec, CompositeHull2::Kind::Z, 2);
  rep["z_composite"] = {{"value", composite_hull2_value(ev, zz, z)}, {"verdict", to_string(in_composite(ev, zz, z))}};
  rep["assertions"] = asserts;
  rep["status"] = ok ? "pass" : "fail";
  out << rep.dump(2) << '\n';
  return ok ? kExitOk : kExitAssertion;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  CLI::App app{"Crosses, hulls and extension of separately holomorphic functions"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--scene", common.scene_path, "Scene file (JSON); defaults to the built-in three-factor example");
    sub->add_option("--seed", common.seed, "Random seed");
    sub->add_option("--strategy", common.strategy, "closed, field or auto")->check(CLI::IsMember({"closed", "field", "auto"}));
    sub->add_option("--margin", common.margin, "Indeterminacy margin for field decisions");
    sub->add_option("--out", common.out_dir, "Output directory for exported files");
  };

  int factor = 1;
  std::string zeta_s, point_s, degrees_s, function_s, w_s, backend_s = "openmp";
  std::optional<int> grid;
  std::optional<double> tol;
  int resolution = 129;
  std::size_t count = 10, sizes = 10000, compare = 1000;
  std::optional<int> total;
  std::size_t budget = 0;
  double fit_radius = 0.8, shrink = 0.8;
  bool with_path = false, with_solver = false, no_extend = false;

  auto* eval_h = app.add_subcommand("eval-h", "Evaluate h_{A_j,D_j} at a point");
  add_common(eval_h);
  eval_h->add_option("--factor", factor, "Factor index (1-based)");
  eval_h->add_option("--zeta", zeta_s, "Point re,im")->required();
  eval_h->add_option("--grid", grid, "Grid size for the field strategy");

  auto* solve_h = app.add_subcommand("solve-h", "Solve h on a grid and export the field as CSV");
  add_common(solve_h);
  solve_h->add_option("--factor", factor, "Factor index (1-based)");
  solve_h->add_option("--grid", grid, "Nodes per side");
  solve_h->add_option("--tol", tol, "Residual tolerance");
  solve_h->add_option("--backend", backend_s, "serial or openmp")->check(CLI::IsMember({"serial", "openmp"}));

  auto* cross_test = app.add_subcommand("cross-test", "Cross membership report");
  add_common(cross_test);
  cross_test->add_option("--point", point_s, "re,im;re,im;...")->required();
  cross_test->add_flag("--path", with_path, "Include a path to the center");

  auto* hull_test = app.add_subcommand("hull-test", "Hull value and membership");
  add_common(hull_test);
  hull_test->add_option("--point", point_s, "re,im;re,im;...")->required();

  auto* lemma = app.add_subcommand("lemma-inc", "max{0, sum h - k + 1}");
  add_common(lemma);
  lemma->add_option("--point", point_s, "re,im;re,im;...")->required();

  auto* sample = app.add_subcommand("sample", "Seeded hull samples (JSON)");
  add_common(sample);
  sample->add_option("--count", count, "Number of points");

  auto* slice = app.add_subcommand("slice", "Hull value over one factor with the others frozen (CSV)");
  add_common(slice);
  slice->add_option("--factor", factor, "Free factor (1-based)");
  slice->add_option("--point", point_s, "Frozen coordinates re,im;...")->required();
  slice->add_option("--resolution", resolution, "Nodes per side");

  auto* extend = app.add_subcommand("extend", "Fit an extension of a registry function");
  add_common(extend);
  extend->add_option("--function", function_s, "Registry name, e.g. poly, inv-sum:3, rational:0.5")->required();
  extend->add_option("--degrees", degrees_s, "d1,d2,...");
  extend->add_option("--total", total, "Total degree cap");
  extend->add_option("--budget", budget, "Minimum number of samples");
  extend->add_option("--fit-radius", fit_radius, "Shrink factor of the sampled cross");
  extend->add_option("--compare", compare, "Hull samples for the error report");
  extend->add_option("--shrink", shrink, "Pull comparison samples toward the center");

  auto* suite = app.add_subcommand("verify-suite", "Run the invariant batteries");
  add_common(suite);
  suite->add_option("--sizes", sizes, "Samples per battery");
  suite->add_option("--grid", grid, "Grid size for the solver battery");
  suite->add_flag("--with-solver", with_solver, "Include grid solves");
  suite->add_flag("--no-extend", no_extend, "Skip the extension battery");

  auto* repro = app.add_subcommand("reproduce-example", "The three-factor counterexample");
  add_common(repro);
  repro->add_option("--w", w_s, "Override w (re,im); default i/sqrt(3)");
  repro->add_option("--grid", grid, "Grid size for the field strategy");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  int code = kExitOk;
  try {
    const Context ctx = load(common, args);
    const CrossSpec& spec = ctx.scene.spec;
    const int n = spec.size();
    auto factor_index = [&] {
      if (factor < 1 || factor > n) fail(ErrorKind::InvalidArgument, "factor index out of range");
      return factor - 1;
    };

    if (eval_h->parsed()) {
      const int j = factor_index();
      const PairAD& p = spec.pair(j);
      std::optional<ExtremalField> field;
      if (ctx.strategy == Strategy::Field || (ctx.strategy == Strategy::Auto && !has_closed_form(p))) {
        GridSpec g;
        g.nx = g.ny = grid.value_or(ctx.scene.defaults.grid);
        g.tol = ctx.scene.defaults.tol;
        field = h_grid_solve(p, g);
      }
      out << digits17(h_eval(p, parse_cpx(zeta_s), ctx.strategy, field ? &*field : nullptr)) << '\n';
    } else if (solve_h->parsed()) {
      const int j = factor_index();
      GridSpec g;
      g.nx = g.ny = grid.value_or(ctx.scene.defaults.grid);
      g.tol = tol.value_or(ctx.scene.defaults.tol);
      g.backend = backend_s == "serial" ? Backend::Serial : Backend::OpenMP;
      const ExtremalField field = h_grid_solve(spec.pair(j), g);
      std::ofstream f;
      std::ostream& csv = sink(common.out_dir, "field_" + std::to_string(factor) + ".csv", f, out);
      write_field_csv(csv, field);
      if (!common.out_dir.empty()) {
        Json rep = report_head("solve-h", ctx);
        rep["payload"] = {{"factor", factor}, {"nx", field.nx()}, {"ny", field.ny()}, {"sweeps", field.sweeps()},
                          {"residual", field.residual()}, {"tolerance", field.tolerance()}};
        out << rep.dump(2) << '\n';
      }
    } else if (cross_test->parsed()) {
      const Point z = parse_point(point_s, n);
      const auto r = in_cross(spec, z);
      Json rep = report_head("cross-test", ctx);
      Json wit = Json::array(), blk = Json::array();
      for (const auto& a : r.witnesses) wit.push_back(a.str());
      for (const auto& b : r.blocked) blk.push_back({{"alpha", b.alpha.str()}, {"reason", to_string(b.reason)}});
      rep["payload"] = {{"variant", to_string(spec.variant())}, {"k", spec.k()}, {"member", r.member},
                        {"witnesses", wit}, {"blocked", blk}, {"center", in_center(spec, z)}};
      if (with_path && r.member) {
        Json path = Json::array();
        for (const auto& v : path_to_center(spec, z)) path.push_back(pjson(v));
        rep["payload"]["path"] = path;
      }
      out << rep.dump(2) << '\n';
    } else if (hull_test->parsed()) {
      const HullEvaluator ev = evaluator(ctx);
      const Point z = parse_point(point_s, n);
      Json rep = report_head("hull-test", ctx);
      const double v = ev.hull_value(z);
      rep["payload"] = {{"k", spec.k()}, {"h", ev.h_all(z)}, {"value", v}, {"verdict", to_string(ev.in_hull(z))},
                        {"exact", ev.exact()}};
      out << rep.dump(2) << '\n';
    } else if (lemma->parsed()) {
      const HullEvaluator ev = evaluator(ctx);
      Json rep = report_head("lemma-inc", ctx);
      rep["payload"] = {{"k", spec.k()}, {"value", ev.lemma_inc_value(parse_point(point_s, n))}};
      out << rep.dump(2) << '\n';
    } else if (sample->parsed()) {
      const HullEvaluator ev = evaluator(ctx);
      Json pts = Json::array();
      for (const auto& z : sample_hull(ev, count, ctx.seed)) pts.push_back(pjson(z));
      std::ofstream f;
      sink(common.out_dir, "samples.json", f, out) << pts.dump(1) << '\n';
    } else if (slice->parsed()) {
      const HullEvaluator ev = evaluator(ctx);
      const int j = factor_index();
      const auto nodes = slice_grid(ev, j, parse_point(point_s, n), resolution);
      std::ofstream f;
      write_slice_csv(sink(common.out_dir, "slice_" + std::to_string(factor) + ".csv", f, out), nodes);
    } else if (extend->parsed()) {
      code = [&] {
        const TestFunction t = make_test_function(function_s, spec);
        FitOptions fo;
        fo.degrees = degrees_s.empty() ? std::vector<int>(n, 2) : parse_ints(degrees_s);
        fo.total_degree = total;
        fo.budget = budget;
        fo.seed = ctx.seed;
        fo.fit_radius = fit_radius;
        Json rep = report_head("extend", ctx);
        rep["function"] = function_s;
        SepHoloOptions so;
        so.seed = ctx.seed;
        const auto holo = check_sep_holo(t.f, so);
        rep["separately_holomorphic"] = {{"pass", holo.pass}, {"max_residual", holo.max_residual},
                                         {"continuity_modulus_heuristic", holo.continuity_modulus}};
        if (!holo.pass) {
          rep["status"] = "fail";
          rep["reason"] = "function is not separately holomorphic on the cross";
          out << rep.dump(2) << '\n';
          return static_cast<int>(kExitAssertion);
        }
        const HullEvaluator ev = evaluator(ctx);
        const auto samples = shrink_toward_center(spec, sample_hull(ev, compare, ctx.seed + 1), shrink);
        std::optional<RationalExtension> rat;
        PolyExtension ext;
        Evaluator approx;
        if (t.denominator && function_s.rfind("rational", 0) == 0) {
          rat = extend_rational(t.f, *t.denominator, fo, ev);
          ext = rat->numerator;
          approx = [&](std::span<const Complex> z) { return rat->eval(z); };
        } else {
          ext = extend_poly(t.f, fo);
          approx = [&](std::span<const Complex> z) -> std::optional<Complex> { return ext.eval(z); };
        }
        const ErrorStats st = compare_on_hull(approx, t.f.eval, samples);
        rep["fit"] = {{"coefficients", ext.coeffs.size()}, {"samples", ext.samples}, {"dropped", ext.dropped},
                      {"residual_max", ext.residual_max}, {"residual_rms", ext.residual_rms},
                      {"condition", ext.condition}};
        rep["hull_error"] = stats_json(st);
        if (rat) {
          Json b = Json::array();
          for (const auto& u : probe_blow_up(*rat, 1e-7)) b.push_back({{"distance", u.distance}, {"magnitude", u.magnitude}});
          rep["mhat"] = {{"descriptor", poly_json(rat->denominator)}, {"empty_in_hull", rat->mhat_empty},
                         {"sampled_points", rat->mhat_samples.size()},
                         {"cross_part_in_exclusion", rat->mhat_cross_in_exclusion}, {"blow_up", b}};
        }
        rep["status"] = "pass";
        if (!common.out_dir.empty()) {
          std::ofstream f;
          write_extension_json(sink(common.out_dir, "extension.json", f, out), ext);
          std::ofstream e;
          std::ostream& csv = sink(common.out_dir, "errors.csv", e, out);
          csv << "index,abs_err,rel_err\n";
          for (std::size_t i = 0; i < samples.size(); ++i) {
            const auto a = approx(samples[i]);
            const auto o = t.f.eval(samples[i]);
            if (!a || !o) continue;
            const double ab = std::abs(*a - *o);
            csv << i << ',' << digits17(ab) << ',' << digits17(std::abs(*o) > 0 ? ab / std::abs(*o) : ab) << '\n';
          }
        }
        out << rep.dump(2) << '\n';
        return static_cast<int>(kExitOk);
      }();
    } else if (suite->parsed()) {
      if (sizes == 0) fail(ErrorKind::InvalidArgument, "--sizes must be positive");
      SuiteOptions so;
      so.seed = ctx.seed;
      so.samples = sizes;
      so.with_solver = with_solver;
      so.with_extend = !no_extend;
      if (grid) so.grid = *grid;
      const auto checks = verify_suite(ctx.scene, so);
      Json rep = report_head("verify-suite", ctx);
      rep["outcomes"] = checks_json(checks);
      rep["status"] = all_pass(checks) ? "pass" : "fail";
      out << rep.dump(2) << '\n';
      code = all_pass(checks) ? kExitOk : kExitAssertion;
    } else if (repro->parsed()) {
      const Complex w = w_s.empty() ? Complex{0.0, 1.0 / std::numbers::sqrt3} : parse_cpx(w_s);
      code = reproduce(ctx, w, grid.value_or(513), out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  err << "wall time: " << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << " s\n";
  return code;
}

}  // namespace crosshull
