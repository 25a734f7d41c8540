#include "crosshull/singular.hpp"

#include <algorithm>
#include <cmath>

namespace crosshull {

MSpec make_mspec(CrossSpec ambient, AnalyticSet set) {
  if (set.dim() != ambient.size()) fail(ErrorKind::DimensionMismatch, "M must live in N coordinates");
  if (set.kind() == SetKind::Full) fail(ErrorKind::InvalidArgument, "M must be pluripolar");
  for (const auto& p : set.list()) {
    if (!in_cross(ambient, p).member) fail(ErrorKind::InvalidArgument, "listed point of M is not in the cross");
  }
  return MSpec(std::move(ambient), std::move(set));
}

FiberSet fiber(const AnalyticSet& m, std::span<const Complex> a, const MultiIndex& alpha) {
  const int n = m.dim();
  const int ones = alpha.weight();
  if (alpha.size() != n || static_cast<int>(a.size()) != n - ones) {
    fail(ErrorKind::DimensionMismatch, "fiber base point does not match the multi-index");
  }
  switch (m.kind()) {
    case SetKind::Empty:
      return AnalyticSet::empty(ones);
    case SetKind::Full:
      return AnalyticSet::full(ones);
    case SetKind::Points: {
      std::vector<Point> tails;
      for (const auto& p : m.list()) {
        if (same_point(project(p, alpha, 0), a)) tails.push_back(project(p, alpha, 1));
      }
      return AnalyticSet::points(ones, std::move(tails));
    }
    case SetKind::PolyZero: {
      std::vector<std::optional<Complex>> values(n);
      std::vector<int> rename(n, -1);
      int i0 = 0, i1 = 0;
      for (int j = 0; j < n; ++j) {
        if (alpha[j]) {
          rename[j] = i1++;
        } else {
          values[j] = a[i0++];
        }
      }
      Polynomial q = m.poly().substitute(values, rename);
      if (q.is_zero()) return AnalyticSet::full(ones);
      return AnalyticSet::zero_set(ones, std::move(q));
    }
  }
  return AnalyticSet::empty(ones);
}

FiberSet fiber(const MSpec& m, std::span<const Complex> a, const MultiIndex& alpha) {
  return fiber(m.set(), a, alpha);
}

bool is_pluripolar(const AnalyticSet& s) { return s.kind() != SetKind::Full; }
bool is_pluripolar(const MSpec& m) { return is_pluripolar(m.set()); }

bool DeltaSet::contains(std::span<const Complex> a) const {
  return std::any_of(cylinders.begin(), cylinders.end(), [&](const Cylinder& c) {
    if (c.coords.size() != a.size()) fail(ErrorKind::DimensionMismatch, "point length != N");
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (c.coords[j] && !same_point(std::span(&*c.coords[j], 1), a.subspan(j, 1))) return false;
    }
    return true;
  });
}

namespace {

DeltaSet intersect_family(const CrossSpec& spec, Family which) {
  const int n = spec.size();
  std::vector<Cylinder> cur{Cylinder{std::vector<std::optional<Complex>>(n)}};
  for (const auto& alpha : gen_family(n, spec.k(), which)) {
    const SigmaSet* s = spec.sigma(alpha);
    if (!s || s->kind() == SetKind::Empty) return {};
    if (s->kind() != SetKind::Points) {
      fail(ErrorKind::UnsupportedSigmaKind, "intersection needs finite sigma sets (" + alpha.str() + ")");
    }
    std::vector<Cylinder> next;
    for (const auto& c : cur) {
      for (const auto& p : s->list()) {
        Cylinder m = c;
        bool ok = true;
        std::size_t i = 0;
        for (int j = 0; j < n && ok; ++j) {
          if (alpha[j]) continue;
          const Complex v = p[i++];
          if (!m.coords[j]) {
            m.coords[j] = v;
          } else {
            ok = same_point(std::span(&*m.coords[j], 1), std::span(&v, 1));
          }
        }
        if (ok) next.push_back(std::move(m));
      }
    }
    cur = std::move(next);
    if (cur.empty()) return {};
  }
  return {std::move(cur)};
}

}  // namespace

DeltaSets delta_sets(const CrossSpec& spec) {
  if (spec.variant() == Variant::X) return {};
  for (const auto& [alpha, s] : spec.sigmas()) {
    if (s.kind() == SetKind::PolyZero) {
      fail(ErrorKind::UnsupportedSigmaKind, "polynomial sigma set for " + alpha.str());
    }
  }
  return {intersect_family(spec, Family::I), intersect_family(spec, Family::J)};
}

}  // namespace crosshull
