#include "crosshull/extend.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <json.hpp>
#include <numbers>
#include <ostream>

namespace crosshull {

namespace {

// Roots of p along coordinate `var` with the other coordinates of z frozen.
// Returns nullopt when p vanishes on the whole line.
std::optional<std::vector<Complex>> roots_along(const Polynomial& p, std::span<const Complex> z, int var) {
  std::vector<std::optional<Complex>> values(z.begin(), z.end());
  std::vector<int> rename(z.size(), -1);
  values[var].reset();
  rename[var] = 0;
  const Polynomial q = p.substitute(values, rename);
  if (q.is_zero()) return std::nullopt;
  if (q.vars().empty()) return std::vector<Complex>{};
  return q.roots();
}

std::vector<int> active_vars(const Polynomial& p) {
  std::vector<int> out;
  for (std::size_t i = 0; i < p.vars().size(); ++i) {
    const bool used = std::any_of(p.terms().begin(), p.terms().end(), [&](const Monomial& m) { return m.exps[i] > 0; });
    if (used) out.push_back(p.vars()[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double parse_double(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
    fail(ErrorKind::InvalidArgument, "bad number '" + std::string(s) + "' in function name");
  }
  return v;
}

int parse_int(std::string_view s) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    fail(ErrorKind::InvalidArgument, "bad integer '" + std::string(s) + "' in function name");
  }
  return v;
}

Complex parse_complex(std::string_view s) {
  const auto comma = s.find(',');
  if (comma == std::string_view::npos) return {parse_double(s), 0.0};
  return {parse_double(s.substr(0, comma)), parse_double(s.substr(comma + 1))};
}

}  // namespace

SepHoloReport check_sep_holo(const SampledFunction& f, const SepHoloOptions& opt) {
  if (opt.resolution < 8) fail(ErrorKind::InvalidArgument, "resolution must be at least 8");
  const CrossSpec& spec = f.domain;
  const int n = spec.size();
  Rng rng(opt.seed);
  SepHoloReport rep;
  rep.threshold = opt.threshold;

  auto value = [&](const Point& z) -> std::optional<Complex> {
    const auto v = f.eval(z);
    if (v && is_finite(*v)) return v;
    if (!f.excluded(z)) fail(ErrorKind::UndefinedValue, f.name + " is undefined outside its exclusion set");
    return std::nullopt;
  };

  for (const auto& alpha : spec.family()) {
    BranchSummary sum{alpha};
    std::vector<Point> anchors;
    const SigmaSet* sigma = spec.sigma(alpha);
    for (int i = 0; i < opt.anchors_per_branch; ++i) {
      Point a;
      for (int tries = 0; tries < 100; ++tries) {
        a.clear();
        for (int j = 0; j < n; ++j) {
          if (!alpha[j]) a.push_back(rng.in_base(spec.pair(j).base()));
        }
        if (!sigma || !sigma->contains(a)) break;
      }
      anchors.push_back(a);
    }
    for (const auto& [beta, a] : opt.extra_anchors) {
      if (beta == alpha) anchors.push_back(a);
    }

    for (const auto& a : anchors) {
      FiberCheck fc{alpha, a};
      const FiberSet fib = f.exclusion ? fiber(*f.exclusion, a, alpha) : AnalyticSet::empty(alpha.weight());
      if (fib.kind() == SetKind::Full) {
        fc.excluded = true;
        ++sum.excluded_fibers;
        rep.fibers.push_back(fc);
        continue;
      }
      for (int probe = 0; probe < opt.probes_per_fiber; ++probe) {
        Point b;
        for (int j = 0; j < n; ++j) {
          if (alpha[j]) b.push_back(rng.in_disc(spec.pair(j).domain(), 0.9));
        }
        Point z = merge(alpha, a, b);
        int slot = 0;
        for (int j = 0; j < n; ++j) {
          if (!alpha[j]) continue;
          const int here = slot++;
          const Disc& d = spec.pair(j).domain();
          double dist = d.radius - std::abs(z[j] - d.center);
          bool skip = false;
          if (fib.kind() == SetKind::PolyZero) {
            const auto roots = roots_along(fib.poly(), b, here);
            if (!roots) skip = true;
            else
              for (Complex r : *roots) dist = std::min(dist, std::abs(r - z[j]));
          } else if (fib.kind() == SetKind::Points) {
            for (const auto& p : fib.list()) dist = std::min(dist, std::abs(p[here] - z[j]));
          }
          const double r = 0.25 * dist;
          if (skip || !(r > 1e-9)) continue;
          const int m = opt.resolution;
          Complex c{0.0, 0.0};
          double peak = 0.0;
          bool undefined = false;
          Point w = z;
          for (int p = 0; p < m && !undefined; ++p) {
            const Complex e = std::polar(1.0, 2.0 * std::numbers::pi * p / m);
            w[j] = z[j] + r * e;
            const auto v = value(w);
            if (!v) {
              undefined = true;
              break;
            }
            c += *v * e;
            peak = std::max(peak, std::abs(*v));
          }
          if (undefined) continue;
          const double res = std::abs(c) / m / r / std::max(1.0, peak);
          fc.residual = std::max(fc.residual, res);
        }
      }
      sum.max_residual = std::max(sum.max_residual, fc.residual);
      ++sum.fibers;
      rep.fibers.push_back(fc);
    }
    rep.max_residual = std::max(rep.max_residual, sum.max_residual);
    rep.branches.push_back(sum);

    // Heuristic continuity in the A-variables for a frozen D-block.
    Point b;
    for (int j = 0; j < n; ++j) {
      if (alpha[j]) b.push_back(rng.in_disc(spec.pair(j).domain(), 0.9));
    }
    for (int i = 0; i + 1 < static_cast<int>(anchors.size()); ++i) {
      const auto v0 = value(merge(alpha, anchors[i], b));
      const auto v1 = value(merge(alpha, anchors[i + 1], b));
      double gap = 0.0;
      for (std::size_t t = 0; t < anchors[i].size(); ++t) gap = std::max(gap, std::abs(anchors[i][t] - anchors[i + 1][t]));
      if (v0 && v1 && gap > 0.0) rep.continuity_modulus = std::max(rep.continuity_modulus, std::abs(*v0 - *v1) / gap);
    }
  }
  rep.pass = rep.max_residual <= opt.threshold;
  return rep;
}

std::optional<Complex> RationalExtension::eval(std::span<const Complex> z) const {
  if (denominator.vanishes_at(z)) return std::nullopt;
  return numerator.eval(z) / denominator.eval(z);
}

std::vector<Point> sample_zero_set_in_hull(const Polynomial& p, const HullEvaluator& hull, std::size_t count,
                                           Rng& rng) {
  const auto vars = active_vars(p);
  std::vector<Point> out;
  if (vars.empty()) return out;
  const CrossSpec& spec = hull.spec();
  for (std::size_t t = 0; t < 200 * count && out.size() < count; ++t) {
    Point z = sample_mixed(spec, rng);
    const int var = vars[rng.below(vars.size())];
    const auto roots = roots_along(p, z, var);
    if (!roots) {
      if (hull.in_hull(z) == Verdict::Inside) out.push_back(z);
      continue;
    }
    for (Complex r : *roots) {
      if (!domain_contains(spec.pair(var).domain(), r)) continue;
      z[var] = r;
      if (hull.in_hull(z) == Verdict::Inside) {
        out.push_back(z);
        break;
      }
    }
  }
  return out;
}

RationalExtension extend_rational(const SampledFunction& f, const Polynomial& p, const FitOptions& opt,
                                  const HullEvaluator& hull) {
  if (p.is_zero()) fail(ErrorKind::DenominatorVanishesIdentically, "denominator is the zero polynomial");
  const CrossSpec& spec = f.domain;
  for (int v : p.vars()) {
    if (v >= spec.size()) fail(ErrorKind::DimensionMismatch, "denominator variable outside the cross");
  }
  RationalExtension out;
  out.denominator = p;
  out.mhat = AnalyticSet::zero_set(spec.size(), p);

  SampledFunction g{f.name + " * p", nullptr, spec, std::nullopt};
  if (out.mhat.kind() != SetKind::Empty) g.exclusion = make_mspec(spec, out.mhat);
  g.eval = [&f, p](std::span<const Complex> z) -> std::optional<Complex> {
    const auto v = f.eval(z);
    if (!v) return std::nullopt;
    return p.eval(z) * *v;
  };
  out.numerator = extend_poly(g, opt);

  Rng rng(opt.seed ^ 0x9e3779b97f4a7c15ULL);
  out.mhat_samples = sample_zero_set_in_hull(p, hull, 64, rng);
  out.mhat_empty = out.mhat_samples.empty();

  // M-hat meets the cross only inside the exclusion set of f.
  const auto vars = active_vars(p);
  for (std::size_t i = 0; i < 256 && !vars.empty(); ++i) {
    const auto& alpha = spec.family()[i % spec.family().size()];
    Point z = sample_branch(spec, alpha, rng);
    std::vector<int> free;
    for (int v : vars) {
      if (alpha[v]) free.push_back(v);
    }
    if (free.empty()) continue;
    const int var = free[rng.below(free.size())];
    const auto roots = roots_along(p, z, var);
    if (!roots) continue;
    for (Complex r : *roots) {
      if (!domain_contains(spec.pair(var).domain(), r)) continue;
      z[var] = r;
      if (in_cross(spec, z).member && !f.excluded(z) && f.eval(z)) out.mhat_cross_in_exclusion = false;
    }
  }
  return out;
}

std::vector<BlowUp> probe_blow_up(const RationalExtension& ext, double delta) {
  const auto vars = active_vars(ext.denominator);
  std::vector<BlowUp> out;
  if (vars.empty()) return out;
  for (const auto& base : ext.mhat_samples) {
    Point z = base;
    const int v = vars.front();
    z[v] += delta;
    const auto val = ext.eval(z);
    out.push_back({base, delta, val ? std::abs(*val) : std::numeric_limits<double>::infinity()});
  }
  return out;
}

ErrorStats compare_on_hull(const Evaluator& ext, const Evaluator& oracle, std::span<const Point> samples) {
  ErrorStats s;
  for (const auto& z : samples) {
    const auto a = ext(z);
    const auto b = oracle(z);
    if (!a || !b) continue;
    const double e = std::abs(*a - *b);
    const double rel = std::abs(*b) > 0.0 ? e / std::abs(*b) : e;
    ++s.count;
    s.max_abs = std::max(s.max_abs, e);
    s.max_rel = std::max(s.max_rel, rel);
    s.mean_abs += e;
    s.mean_rel += rel;
  }
  if (s.count) {
    s.mean_abs /= static_cast<double>(s.count);
    s.mean_rel /= static_cast<double>(s.count);
  }
  return s;
}

std::vector<Point> shrink_toward_center(const CrossSpec& spec, std::span<const Point> samples, double factor) {
  std::vector<Point> out;
  for (const auto& z : samples) {
    Point w(z);
    for (int j = 0; j < spec.size(); ++j) {
      const Disc& d = spec.pair(j).domain();
      w[j] = d.center + factor * (z[j] - d.center);
    }
    out.push_back(std::move(w));
  }
  return out;
}

void write_extension_json(std::ostream& os, const PolyExtension& ext) {
  nlohmann::ordered_json j;
  j["frames"] = nlohmann::ordered_json::array();
  for (const auto& d : ext.frames) {
    j["frames"].push_back({{"center", {d.center.real(), d.center.imag()}}, {"radius", d.radius}});
  }
  j["degrees"] = ext.degrees;
  j["total_degree"] = ext.total_degree;
  j["fit_radius"] = ext.fit_radius;
  j["samples"] = ext.samples;
  j["dropped"] = ext.dropped;
  j["residual_max"] = ext.residual_max;
  j["residual_rms"] = ext.residual_rms;
  j["condition"] = ext.condition;
  auto& terms = j["terms"] = nlohmann::ordered_json::array();
  for (std::size_t c = 0; c < ext.coeffs.size(); ++c) {
    terms.push_back({{"exps", ext.exponents[c]}, {"re", ext.coeffs[c].real()}, {"im", ext.coeffs[c].imag()}});
  }
  os << j.dump(1) << '\n';
}

TestFunction make_test_function(const std::string& name, const CrossSpec& spec) {
  std::vector<std::string_view> parts;
  {
    std::string_view rest = name;
    // "pole:J:RE,IM" keeps its comma inside the last field.
    while (true) {
      const auto c = rest.find(':');
      parts.push_back(rest.substr(0, c));
      if (c == std::string_view::npos) break;
      rest = rest.substr(c + 1);
    }
  }
  const int n = spec.size();
  const std::string_view head = parts[0];
  auto want = [&](std::size_t args) {
    if (parts.size() != args + 1) fail(ErrorKind::InvalidArgument, "wrong number of arguments in '" + name + "'");
  };
  auto need_factors = [&](int m) {
    if (n < m) fail(ErrorKind::InvalidArgument, "'" + name + "' needs at least " + std::to_string(m) + " factors");
  };
  auto from_poly = [&](Polynomial p) {
    TestFunction t{{name, [p](std::span<const Complex> z) -> std::optional<Complex> { return p.eval(z); }, spec, {}}, std::nullopt, std::nullopt, true};
    t.known = std::move(p);
    return t;
  };
  auto all_vars = [&] {
    std::vector<int> v(n);
    for (int j = 0; j < n; ++j) v[j] = j;
    return v;
  };
  auto product_tail = [](std::span<const Complex> z) {
    Complex p{1.0, 0.0};
    for (std::size_t j = 1; j < z.size(); ++j) p *= z[j];
    return p;
  };

  if (head == "poly") {
    if (parts.size() > 2) fail(ErrorKind::InvalidArgument, "poly takes at most a seed");
    Rng rng(parts.size() == 2 ? static_cast<std::uint64_t>(parse_int(parts[1])) : 1u);
    std::vector<Monomial> terms;
    std::vector<int> m(n, 0);
    while (true) {
      int s = 0;
      for (int e : m) s += e;
      const Complex c{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
      if (s <= kMaxPolyDegree) terms.push_back({m, c});
      int j = n - 1;
      while (j >= 0 && m[j] == 2) m[j--] = 0;
      if (j < 0) break;
      ++m[j];
    }
    return from_poly(Polynomial(all_vars(), std::move(terms)));
  }
  if (head == "mixed") {
    want(0);
    need_factors(2);
    std::vector<Monomial> terms;
    std::vector<int> e1(n, 0), e2(n, 1);
    e1[0] = 1;
    e2[0] = 0;
    terms.push_back({e1, 1.0});
    terms.push_back({e2, 1.0});
    return from_poly(Polynomial(all_vars(), std::move(terms)));
  }
  TestFunction t{{name, nullptr, spec, std::nullopt}, std::nullopt, std::nullopt, true};
  if (head == "exp") {
    want(0);
    need_factors(2);
    t.f.eval = [product_tail](std::span<const Complex> z) -> std::optional<Complex> {
      return std::exp((z[0] + product_tail(z)) / 2.0);
    };
    return t;
  }
  if (head == "inv-sum") {
    want(1);
    const Complex c = parse_complex(parts[1]);
    Polynomial p = linear_sum(all_vars(), c);
    t.f.eval = [p](std::span<const Complex> z) -> std::optional<Complex> {
      const Complex d = p.eval(z);
      if (d == Complex{}) return std::nullopt;
      return -1.0 / d;
    };
    AnalyticSet zs = AnalyticSet::zero_set(n, p);
    if (zs.kind() != SetKind::Empty) t.f.exclusion = make_mspec(spec, zs);
    t.denominator = std::move(p);
    return t;
  }
  if (head == "rational" || head == "rational-mono") {
    want(1);
    need_factors(2);
    const Complex c = parse_complex(parts[1]);
    Polynomial p = linear_sum({0, 1}, c);
    const bool mono = head == "rational-mono";
    t.f.eval = [p, mono](std::span<const Complex> z) -> std::optional<Complex> {
      if (p.vanishes_at(z)) return std::nullopt;
      return (mono ? z.back() : Complex{1.0, 0.0}) / p.eval(z);
    };
    t.f.exclusion = make_mspec(spec, AnalyticSet::zero_set(n, p));
    t.denominator = std::move(p);
    return t;
  }
  if (head == "conj") {
    want(1);
    const int j = parse_int(parts[1]);
    if (j < 1 || j > n) fail(ErrorKind::InvalidArgument, "coordinate index out of range in '" + name + "'");
    t.f.eval = [j](std::span<const Complex> z) -> std::optional<Complex> { return std::conj(z[j - 1]); };
    t.holomorphic = false;
    return t;
  }
  if (head == "pole") {
    want(2);
    const int j = parse_int(parts[1]);
    if (j < 1 || j > n) fail(ErrorKind::InvalidArgument, "coordinate index out of range in '" + name + "'");
    const Complex w0 = parse_complex(parts[2]);
    Polynomial p = linear_sum({j - 1}, w0);
    t.f.eval = [p, j, w0](std::span<const Complex> z) -> std::optional<Complex> {
      if (p.vanishes_at(z)) return std::nullopt;
      return 1.0 / (z[j - 1] - w0);
    };
    AnalyticSet zs = AnalyticSet::zero_set(n, p);
    t.f.exclusion = make_mspec(spec, zs);
    t.denominator = std::move(p);
    return t;
  }
  fail(ErrorKind::InvalidArgument, "unknown test function '" + name + "'");
}

}  // namespace crosshull
