#include "crosshull/hull.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

namespace crosshull {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Inside: return "inside";
    case Verdict::Outside: return "outside";
    case Verdict::Indeterminate: return "boundary-indeterminate";
  }
  return "?";
}

HullEvaluator::HullEvaluator(CrossSpec spec, Strategy strategy, double margin)
    : spec_(std::move(spec)),
      margin_(margin),
      strategies_(spec_.size(), strategy),
      fields_(spec_.size()) {
  if (!(margin >= 0.0 && margin < 1.0)) fail(ErrorKind::InvalidArgument, "margin must lie in [0, 1)");
}

void HullEvaluator::set_strategy(int j, Strategy s) { strategies_.at(j) = s; }

void HullEvaluator::set_field(int j, std::shared_ptr<const ExtremalField> field) { fields_.at(j) = std::move(field); }

bool HullEvaluator::uses_field(int j) const {
  const Strategy s = strategies_.at(j);
  return s == Strategy::Field || (s == Strategy::Auto && !has_closed_form(spec_.pair(j)));
}

bool HullEvaluator::exact() const {
  for (int j = 0; j < spec_.size(); ++j) {
    if (uses_field(j)) return false;
  }
  return true;
}

void HullEvaluator::prepare_fields(const GridSpec& grid) {
  for (int j = 0; j < spec_.size(); ++j) {
    if (uses_field(j) && !fields_[j]) {
      fields_[j] = std::make_shared<const ExtremalField>(h_grid_solve(spec_.pair(j), grid));
    }
  }
}

double HullEvaluator::h(int j, Complex zeta) const {
  return h_eval(spec_.pair(j), zeta, strategies_.at(j), fields_.at(j).get());
}

std::vector<double> HullEvaluator::h_all(std::span<const Complex> z) const {
  require_ambient(spec_, z);
  std::vector<double> out(z.size());
  for (int j = 0; j < spec_.size(); ++j) out[j] = h(j, z[j]);
  return out;
}

double HullEvaluator::hull_value(std::span<const Complex> z) const {
  double s = 0.0;
  for (double v : h_all(z)) s += v;
  return s;
}

Verdict HullEvaluator::compare(double value, double threshold) const {
  if (!exact() && std::abs(value - threshold) <= margin_) return Verdict::Indeterminate;
  return value < threshold ? Verdict::Inside : Verdict::Outside;
}

Verdict HullEvaluator::in_hull(std::span<const Complex> z) const { return compare(hull_value(z), spec_.k()); }

double HullEvaluator::lemma_inc_value(std::span<const Complex> z) const {
  const double s = hull_value(z);
  if (!(s < spec_.k())) fail(ErrorKind::NotInHull, "point is outside the hull of order k");
  return std::max(0.0, s - spec_.k() + 1.0);
}

double hull_value(const CrossSpec& spec, std::span<const Complex> z) {
  return HullEvaluator(spec).hull_value(z);
}

bool in_hull(const CrossSpec& spec, std::span<const Complex> z) {
  return HullEvaluator(spec).in_hull(z) == Verdict::Inside;
}

double lemma_inc_value(const CrossSpec& spec, std::span<const Complex> z) {
  return HullEvaluator(spec).lemma_inc_value(z);
}

CompositeHull2 make_composite(const CrossSpec& spec, CompositeHull2::Kind kind, int s) {
  const int n = spec.size();
  if (n < 2) fail(ErrorKind::BadOrder, "composite hull needs N >= 2");
  if (s < 0 || s >= n) fail(ErrorKind::InvalidArgument, "split factor index out of range");
  if (spec.k() > n - 1) fail(ErrorKind::BadOrder, "composite hull needs k <= N-1");
  if (kind == CompositeHull2::Kind::Z && spec.k() < 2) fail(ErrorKind::BadOrder, "variant Z needs k >= 2");
  return {kind, s};
}

double composite_hull2_value(const HullEvaluator& ev, const CompositeHull2& c, std::span<const Complex> z) {
  const auto h = ev.h_all(z);
  const int k = ev.spec().k();
  double rest_sum = 0.0, rest_max = 0.0;
  for (int j = 0; j < static_cast<int>(h.size()); ++j) {
    if (j == c.s) continue;
    rest_sum += h[j];
    rest_max = std::max(rest_max, h[j]);
  }
  if (!(rest_sum < k)) fail(ErrorKind::NotInHull, "remaining coordinates leave the hull of order k");
  const double first = c.kind == CompositeHull2::Kind::Zs ? rest_max : std::max(0.0, rest_sum - k + 1.0);
  return first + h[c.s];
}

Verdict in_composite(const HullEvaluator& ev, const CompositeHull2& c, std::span<const Complex> z) {
  return ev.compare(composite_hull2_value(ev, c, z), 1.0);
}

std::vector<Point> sample_hull(const HullEvaluator& ev, std::size_t count, Rng& rng, std::size_t max_tries) {
  if (count == 0) fail(ErrorKind::InvalidArgument, "count must be positive");
  if (max_tries == 0) max_tries = 1000 * count;
  std::vector<Point> out;
  out.reserve(count);
  for (std::size_t t = 0; t < max_tries && out.size() < count; ++t) {
    Point z = sample_mixed(ev.spec(), rng);
    if (ev.in_hull(z) == Verdict::Inside) out.push_back(std::move(z));
  }
  if (out.size() < count) fail(ErrorKind::SamplingExhausted, "rejection cap reached before filling the sample");
  return out;
}

std::vector<Point> sample_hull(const HullEvaluator& ev, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  return sample_hull(ev, count, rng);
}

std::vector<SliceNode> slice_grid(const HullEvaluator& ev, int j, std::span<const Complex> fixed, int resolution) {
  const CrossSpec& spec = ev.spec();
  if (resolution < 2) fail(ErrorKind::InvalidArgument, "slice resolution must be at least 2");
  if (j < 0 || j >= spec.size()) fail(ErrorKind::InvalidArgument, "slice factor index out of range");
  if (static_cast<int>(fixed.size()) != spec.size()) fail(ErrorKind::LengthMismatch, "point length != N");
  for (int i = 0; i < spec.size(); ++i) {
    if (i != j && !domain_contains(spec.pair(i).domain(), fixed[i])) {
      fail(ErrorKind::OutsideAmbient, "frozen coordinate outside its domain");
    }
  }
  const Disc& d = spec.pair(j).domain();
  const double step = 2.0 * d.radius / (resolution - 1);
  Point z(fixed.begin(), fixed.end());
  std::vector<SliceNode> out;
  for (int r = 0; r < resolution; ++r) {
    for (int c = 0; c < resolution; ++c) {
      const Complex zeta{d.center.real() - d.radius + c * step, d.center.imag() - d.radius + r * step};
      if (!domain_contains(d, zeta)) continue;
      z[j] = zeta;
      out.push_back({zeta, ev.hull_value(z)});
    }
  }
  return out;
}

void write_slice_csv(std::ostream& os, std::span<const SliceNode> nodes) {
  os << "re,im,value\n";
  char buf[96];
  for (const auto& n : nodes) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", n.zeta.real(), n.zeta.imag(), n.value);
    os << buf;
  }
}

}  // namespace crosshull
