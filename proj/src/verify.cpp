#include "crosshull/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "crosshull/extend.hpp"
#include "crosshull/singular.hpp"

namespace crosshull {

namespace {

struct Tally {
  Check c;
  explicit Tally(std::string name) { c.name = std::move(name); }
  void record(bool ok) {
    ++c.count;
    if (!ok) {
      ++c.failures;
      c.pass = false;
    }
  }
  Check done(std::string detail = {}) {
    c.detail = std::move(detail);
    return c;
  }
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

std::uint64_t binomial(int n, int k) {
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

// Probe points for set identities: mixed draws, random branch points of any
// weight, and (when finite sigma sets exist) points sitting on a sigma set.
Point probe(const CrossSpec& spec, Rng& rng) {
  const int n = spec.size();
  std::vector<std::pair<MultiIndex, const SigmaSet*>> finite;
  for (const auto& [alpha, s] : spec.sigmas()) {
    if (s.kind() == SetKind::Points) finite.emplace_back(alpha, &s);
  }
  const std::size_t mode = rng.below(finite.empty() ? 2 : 3);
  if (mode == 0) return sample_mixed(spec, rng);
  Point z(n);
  if (mode == 1) {
    const auto mask = static_cast<std::uint32_t>(1 + rng.below((std::size_t{1} << n) - 1));
    for (int j = 0; j < n; ++j) {
      const PairAD& p = spec.pair(j);
      z[j] = ((mask >> j) & 1u) && rng.coin() ? rng.in_disc(p.domain()) : rng.in_base(p.base());
    }
    return z;
  }
  const auto& [alpha, s] = finite[rng.below(finite.size())];
  const Point& hit = s->list()[rng.below(s->list().size())];
  Point ones;
  for (int j = 0; j < n; ++j) {
    if (alpha[j]) ones.push_back(rng.coin() ? rng.in_disc(spec.pair(j).domain()) : rng.in_base(spec.pair(j).base()));
  }
  return merge(alpha, hit, ones);
}

bool in_x(const CrossSpec& spec, int k, const Point& z) { return in_cross(spec.with(k, Variant::X), z).member; }

}  // namespace

bool all_pass(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::vector<Check> verify_extremal(const CrossSpec& spec, const SuiteOptions& opt) {
  std::vector<Check> out;
  Rng rng(opt.seed);
  const std::size_t per = std::max<std::size_t>(1, opt.samples / 10);
  Tally range("extremal: 0 <= h <= 1 and h = 0 on A (closed form)");
  for (int j = 0; j < spec.size(); ++j) {
    const PairAD& p = spec.pair(j);
    if (!has_closed_form(p)) continue;
    for (std::size_t i = 0; i < per; ++i) {
      const double h = h_closed_form(p, rng.in_disc(p.domain()));
      range.record(h >= 0.0 && h <= 1.0);
      range.record(h_closed_form(p, rng.in_base(p.base())) == 0.0);
    }
  }
  out.push_back(range.done());
  if (!opt.with_solver) return out;

  for (int j = 0; j < spec.size(); ++j) {
    const PairAD& p = spec.pair(j);
    GridSpec g;
    g.nx = g.ny = opt.grid;
    const ExtremalField field = h_grid_solve(p, g);
    Tally solve("extremal: factor " + std::to_string(j + 1) + " field solve, range and A-clamp");
    for (int y = 0; y < field.ny(); ++y) {
      for (int x = 0; x < field.nx(); ++x) {
        const double v = field.at(x, y);
        bool ok = v >= 0.0 && v <= 1.0;
        if (base_contains(p.base(), field.node(x, y))) ok = ok && v == 0.0;
        solve.record(ok);
      }
    }
    out.push_back(solve.done("sweeps " + std::to_string(field.sweeps()) + ", residual " + fmt(field.residual())));
    if (has_closed_form(p)) {
      Tally agree("extremal: factor " + std::to_string(j + 1) + " field vs closed form <= 5e-3");
      double worst = 0.0;
      for (int y = 0; y < field.ny(); ++y) {
        for (int x = 0; x < field.nx(); ++x) {
          const Complex z = field.node(x, y);
          if (!domain_contains(p.domain(), z)) continue;
          const double e = std::abs(field.at(x, y) - h_closed_form(p, z));
          worst = std::max(worst, e);
          agree.record(e <= 5e-3);
        }
      }
      out.push_back(agree.done("sup error " + fmt(worst)));
    }
  }
  return out;
}

std::vector<Check> verify_cross(const CrossSpec& spec, const SuiteOptions& opt) {
  std::vector<Check> out;
  Rng rng(opt.seed + 1);
  const int n = spec.size();
  const int k = spec.k();

  Tally fam("cross: |I| = C(N,k), |J| = sum C(N,m), sorted and distinct");
  for (int kk = 1; kk <= n; ++kk) {
    const auto I = gen_family(n, kk, Family::I);
    const auto J = gen_family(n, kk, Family::J);
    std::uint64_t j_size = 0;
    for (int m = 1; m <= kk; ++m) j_size += binomial(n, m);
    fam.record(I.size() == binomial(n, kk) && J.size() == j_size);
    fam.record(std::adjacent_find(I.begin(), I.end(), [](auto& a, auto& b) { return !(a < b); }) == I.end());
    fam.record(std::adjacent_find(J.begin(), J.end(), [](auto& a, auto& b) { return !(a < b); }) == J.end());
  }
  out.push_back(fam.done());

  const CrossSpec xs = spec.with(k, Variant::X);
  const CrossSpec ts = spec.with(k, Variant::T);
  const CrossSpec ys = spec.with(k, Variant::Y);
  const CrossSpec t0 = make_cross(spec.pairs(), k, Variant::T);
  const CrossSpec y0 = make_cross(spec.pairs(), k, Variant::Y);
  Tally chain("cross: T subset Y subset X");
  Tally collapse("cross: empty sigmas give T = Y = X");
  Tally nfold("cross: X_{N,1} equals the N-fold cross");
  Tally mono("cross: X_{N,k} subset X_{N,k+1}");
  Tally trip("cross: merge(project) round trip");
  for (std::size_t i = 0; i < opt.samples; ++i) {
    const Point z = probe(spec, rng);
    const bool x = in_cross(xs, z).member, t = in_cross(ts, z).member, y = in_cross(ys, z).member;
    chain.record((!t || y) && (!y || x));
    const bool t_0 = in_cross(t0, z).member, y_0 = in_cross(y0, z).member;
    collapse.record(t_0 == x && y_0 == x);
    nfold.record(in_x(spec, 1, z) == nfold_cross_contains(spec.pairs(), z));
    for (int kk = 1; kk < n; ++kk) mono.record(!in_x(spec, kk, z) || in_x(spec, kk + 1, z));
    const MultiIndex alpha(n, static_cast<std::uint32_t>(rng.below(std::size_t{1} << n)));
    trip.record(merge(alpha, project(z, alpha, 0), project(z, alpha, 1)) == z);
  }
  for (auto* t : {&chain, &collapse, &nfold, &mono, &trip}) out.push_back(t->done());

  if (n > 2) {
    Tally dec("cross: X_{N,k} = X(X_{N-1,k-1}, A_N; X_{N-1,k}, D_N)");
    std::size_t members = 0;
    for (int kk = 2; kk <= n - 1; ++kk) {
      const CrossSpec s = spec.with(kk, Variant::X);
      for (std::size_t i = 0; i < opt.samples; ++i) {
        const auto r = decompose_check(s, probe(spec, rng));
        dec.record(r.lhs == r.rhs);
        members += r.lhs;
      }
    }
    out.push_back(dec.done(std::to_string(members) + " members among the probes"));
  }

  Tally path("cross: path_to_center stays in the cross and ends in the center");
  const std::size_t paths = std::max<std::size_t>(1, opt.samples / 100);
  for (const auto& z : sample_cross(xs, paths, rng)) {
    const auto poly = path_to_center(xs, z);
    bool ok = in_center(xs, poly.back());
    for (std::size_t s = 0; s + 1 < poly.size(); ++s) {
      for (int t = 0; t <= 64; ++t) {
        Point w(n);
        for (int j = 0; j < n; ++j) w[j] = poly[s][j] + (t / 64.0) * (poly[s + 1][j] - poly[s][j]);
        ok = ok && in_cross(xs, w).member;
      }
    }
    path.record(ok);
  }
  out.push_back(path.done());
  return out;
}

std::vector<Check> verify_singular(const Scene& scene, const SuiteOptions& opt) {
  std::vector<Check> out;
  const CrossSpec& spec = scene.spec;
  const int n = spec.size();
  Rng rng(opt.seed + 2);
  bool finite = true;
  for (const auto& [alpha, s] : spec.sigmas()) finite = finite && s.kind() != SetKind::PolyZero;
  if (finite) {
    const CrossSpec xs = spec.with(spec.k(), Variant::X);
    const CrossSpec ts = spec.with(spec.k(), Variant::T);
    const CrossSpec ys = spec.with(spec.k(), Variant::Y);
    const DeltaSets d = delta_sets(ys);
    const DeltaSets dt = delta_sets(ts);
    Tally center("singular: c(T) = c(X) minus Delta, c(Y) = c(X) minus Delta-tilde");
    const std::size_t count = std::max<std::size_t>(1, opt.samples / 10);
    for (std::size_t i = 0; i < count; ++i) {
      Point a(n);
      for (int j = 0; j < n; ++j) a[j] = rng.in_base(spec.pair(j).base());
      // Pin some probes onto the cylinders so both sides are exercised.
      const DeltaSet& pin = i % 2 ? dt.delta : d.delta_tilde;
      if (!pin.empty() && rng.coin()) {
        const Cylinder& c = pin.cylinders[rng.below(pin.cylinders.size())];
        for (int j = 0; j < n; ++j) {
          if (c.coords[j]) a[j] = *c.coords[j];
        }
      }
      const bool cx = in_center(xs, a);
      center.record(in_center(ts, a) == (cx && !dt.delta.contains(a)));
      center.record(in_center(ys, a) == (cx && !d.delta_tilde.contains(a)));
    }
    out.push_back(center.done(std::to_string(dt.delta.cylinders.size()) + " Delta cylinders, " +
                              std::to_string(d.delta_tilde.cylinders.size()) + " Delta-tilde cylinders"));
  }
  if (scene.m && scene.m->set().kind() == SetKind::Points) {
    Tally fib("singular: merge(a, b) in M iff b in fiber(M, a, alpha)");
    for (const auto& p : scene.m->set().list()) {
      for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        const MultiIndex alpha(n, mask);
        const Point a = project(p, alpha, 0);
        const FiberSet f = fiber(*scene.m, a, alpha);
        fib.record(f.contains(project(p, alpha, 1)) && scene.m->contains(p));
        Point b;
        for (int j = 0; j < n; ++j) {
          if (alpha[j]) b.push_back(rng.in_disc(spec.pair(j).domain()));
        }
        fib.record(f.contains(b) == scene.m->contains(merge(alpha, a, b)));
        fib.record(is_pluripolar(f) || f.kind() == SetKind::Full);
      }
    }
    out.push_back(fib.done());
  }
  return out;
}

std::vector<Check> verify_hull(const HullEvaluator& ev, const SuiteOptions& opt) {
  std::vector<Check> out;
  const CrossSpec& spec = ev.spec();
  const int n = spec.size();
  const int k = spec.k();
  Rng rng(opt.seed + 3);

  Tally cih("hull: cross points lie in the hull");
  for (const auto& z : sample_cross(spec.with(k, Variant::X), opt.samples, rng)) {
    cih.record(ev.in_hull(z) != Verdict::Outside);
  }
  out.push_back(cih.done());

  Tally mono("hull: hull of order k inside hull of order k+1");
  for (std::size_t i = 0; i < opt.samples; ++i) {
    const Point z = sample_mixed(spec, rng);
    const double v = ev.hull_value(z);
    for (int kk = 1; kk < n; ++kk) mono.record(!(v < kk) || v < kk + 1);
  }
  out.push_back(mono.done());

  if (n >= 3 && k >= 2 && k <= n - 1) {
    const auto z_hull = make_composite(spec, CompositeHull2::Kind::Z, n - 1);
    Tally ident("hull: composite Z membership equals hull membership");
    std::size_t skipped = 0, inside = 0;
    const auto pts = sample_hull(ev, opt.samples, rng);
    for (std::size_t i = 0; i < 2 * opt.samples; ++i) {
      const Point z = i < pts.size() ? pts[i] : sample_mixed(spec, rng);
      const auto h = ev.h_all(z);
      double rest = 0.0, all = 0.0;
      for (int j = 0; j < n; ++j) {
        all += h[j];
        if (j != n - 1) rest += h[j];
      }
      if (!(rest < k)) continue;
      const double zv = composite_hull2_value(ev, z_hull, z);
      if (std::abs(all - k) < 1e-9 || std::abs(zv - 1.0) < 1e-9) {
        ++skipped;
        continue;
      }
      const bool direct = all < k;
      inside += direct;
      ident.record(direct == (zv < 1.0));
    }
    out.push_back(ident.done(std::to_string(inside) + " hull points, " + std::to_string(skipped) + " near threshold skipped"));
  }
  return out;
}

std::vector<Check> verify_lemma(const HullEvaluator& ev, const SuiteOptions& opt) {
  std::vector<Check> out;
  const CrossSpec& spec = ev.spec();
  const int n = spec.size();
  const int k = spec.k();
  if (k < 2 || !ev.exact()) return out;
  Rng rng(opt.seed + 4);
  const std::size_t count = std::max<std::size_t>(1, opt.samples / 10);

  HullEvaluator lower(spec.with(k - 1, Variant::X));
  Tally zero("lemma: formula vanishes on the hull of order k-1");
  for (const auto& z : sample_hull(lower, count, rng)) zero.record(ev.lemma_inc_value(z) == 0.0);
  out.push_back(zero.done());

  Tally below("lemma: formula < 1 on the hull of order k");
  const auto pts = sample_hull(ev, count, rng);
  std::vector<Point> active;
  for (const auto& z : pts) {
    const double v = ev.lemma_inc_value(z);
    below.record(v < 1.0);
    if (v > 0.0) active.push_back(z);
  }
  out.push_back(below.done());

  double rmin = spec.pair(0).domain().radius;
  for (const auto& p : spec.pairs()) rmin = std::min(rmin, p.domain().radius);
  const double r = 1e-3 * rmin;
  Tally mean("lemma: sub-mean inequality on complex-line circles (slack 1e-6)");
  double worst = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    Point z, dir(n);
    bool ok = false;
    for (int tries = 0; tries < 100 && !ok; ++tries) {
      // Half of the circles are centred where the formula is positive.
      z = (!active.empty() && i % 2 == 0) ? active[rng.below(active.size())] : pts[rng.below(pts.size())];
      double norm = 0.0;
      for (int j = 0; j < n; ++j) {
        dir[j] = rng.uniform() * rng.unit_direction();
        norm += std::norm(dir[j]);
      }
      for (auto& d : dir) d /= std::sqrt(norm);
      ok = true;
      for (int t = 0; t < 64 && ok; ++t) {
        Point w(n);
        const Complex e = r * std::polar(1.0, 2.0 * std::numbers::pi * t / 64);
        for (int j = 0; j < n; ++j) w[j] = z[j] + e * dir[j];
        for (int j = 0; j < n && ok; ++j) ok = domain_contains(spec.pair(j).domain(), w[j]);
        ok = ok && ev.hull_value(w) < k;
      }
    }
    if (!ok) continue;
    double m = 0.0;
    for (int t = 0; t < 64; ++t) {
      Point w(n);
      const Complex e = r * std::polar(1.0, 2.0 * std::numbers::pi * t / 64);
      for (int j = 0; j < n; ++j) w[j] = z[j] + e * dir[j];
      m += ev.lemma_inc_value(w);
    }
    m /= 64.0;
    const double gap = ev.lemma_inc_value(z) - m;
    worst = std::max(worst, gap);
    mean.record(m >= ev.lemma_inc_value(z) - 1e-6);
  }
  out.push_back(mean.done("largest deficit " + fmt(worst)));
  return out;
}

std::vector<Check> verify_extend(const CrossSpec& spec, const SuiteOptions& opt) {
  std::vector<Check> out;
  const int n = spec.size();
  const CrossSpec xs = spec.with(spec.k(), Variant::X);
  if (n <= 4) {
    const TestFunction t = make_test_function("poly:" + std::to_string(opt.seed % 1000), xs);
    FitOptions fo;
    fo.degrees.assign(n, 2);
    fo.seed = opt.seed;
    const PolyExtension ext = extend_poly(t.f, fo);
    Tally rec("extend: multi-degree-2 polynomial recovered to 1e-8");
    double worst = 0.0;
    bool frames_unit = true;
    for (const auto& p : spec.pairs()) frames_unit = frames_unit && p.domain().center == Complex{} && p.domain().radius == 1.0;
    if (frames_unit) {
      for (const auto& m : t.known->terms()) worst = std::max(worst, std::abs(ext.coefficient(m.exps) - m.coeff));
    } else {
      Rng rng(opt.seed + 5);
      for (int i = 0; i < 200; ++i) {
        const Point z = sample_mixed(xs, rng);
        worst = std::max(worst, std::abs(ext.eval(z) - t.known->eval(z)));
      }
    }
    rec.record(worst <= 1e-8);
    out.push_back(rec.done("max error " + fmt(worst)));
  }
  if (n >= 2) {
    SepHoloOptions so;
    so.seed = opt.seed;
    Tally acc("extend: separate holomorphy accepts z1 + z2...zN");
    const auto good = check_sep_holo(make_test_function("mixed", xs).f, so);
    acc.record(good.pass);
    out.push_back(acc.done("max residual " + fmt(good.max_residual)));
    Tally rej("extend: separate holomorphy rejects conj(z_N)");
    const auto bad = check_sep_holo(make_test_function("conj:" + std::to_string(n), xs).f, so);
    rej.record(!bad.pass && bad.max_residual >= 1e-1);
    out.push_back(rej.done("max residual " + fmt(bad.max_residual)));
  }
  return out;
}

std::vector<Check> verify_suite(const Scene& scene, const SuiteOptions& opt) {
  if (opt.samples == 0) fail(ErrorKind::InvalidArgument, "sample size must be positive");
  std::vector<Check> all;
  auto add = [&](std::vector<Check> part) { all.insert(all.end(), part.begin(), part.end()); };
  add(verify_extremal(scene.spec, opt));
  add(verify_cross(scene.spec, opt));
  add(verify_singular(scene, opt));
  HullEvaluator ev(scene.spec, scene.defaults.strategy, scene.defaults.margin);
  if (!ev.exact()) {
    GridSpec g;
    g.nx = g.ny = scene.defaults.grid;
    g.tol = scene.defaults.tol;
    ev.prepare_fields(g);
  }
  add(verify_hull(ev, opt));
  add(verify_lemma(ev, opt));
  if (opt.with_extend) add(verify_extend(scene.spec, opt));
  return all;
}

}  // namespace crosshull
