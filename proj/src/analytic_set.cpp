#include "crosshull/analytic_set.hpp"

#include <algorithm>
#include <cmath>

namespace crosshull {

bool same_point(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) return false;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (std::abs(a[j] - b[j]) > 1e-12 * (1.0 + std::abs(b[j]))) return false;
  }
  return true;
}

AnalyticSet AnalyticSet::empty(int dim) {
  if (dim < 0) fail(ErrorKind::DimensionMismatch, "negative set dimension");
  AnalyticSet s;
  s.dim_ = dim;
  return s;
}

AnalyticSet AnalyticSet::points(int dim, std::vector<Point> list) {
  AnalyticSet s = empty(dim);
  for (auto& p : list) {
    if (static_cast<int>(p.size()) != dim) fail(ErrorKind::DimensionMismatch, "point length != set dimension");
    for (Complex c : p) {
      if (!is_finite(c)) fail(ErrorKind::InvalidArgument, "non-finite point in set");
    }
    const bool dup = std::any_of(s.points_.begin(), s.points_.end(),
                                 [&](const Point& q) { return same_point(p, q); });
    if (!dup) s.points_.push_back(std::move(p));
  }
  if (!s.points_.empty()) s.kind_ = SetKind::Points;
  return s;
}

AnalyticSet AnalyticSet::zero_set(int dim, Polynomial p) {
  AnalyticSet s = empty(dim);
  if (p.is_zero()) fail(ErrorKind::InvalidArgument, "polynomial is identically zero");
  for (int v : p.vars()) {
    if (v >= dim) fail(ErrorKind::DimensionMismatch, "polynomial variable outside the set dimension");
  }
  if (p.is_constant()) return s;
  s.kind_ = SetKind::PolyZero;
  s.poly_ = std::move(p);
  return s;
}

AnalyticSet AnalyticSet::full(int dim) {
  AnalyticSet s = empty(dim);
  s.kind_ = SetKind::Full;
  return s;
}

bool AnalyticSet::contains(std::span<const Complex> z) const {
  if (static_cast<int>(z.size()) != dim_) fail(ErrorKind::DimensionMismatch, "point length != set dimension");
  switch (kind_) {
    case SetKind::Empty:
      return false;
    case SetKind::Full:
      return true;
    case SetKind::Points:
      return std::any_of(points_.begin(), points_.end(), [&](const Point& q) { return same_point(z, q); });
    case SetKind::PolyZero:
      return poly_.vanishes_at(z);
  }
  return false;
}

}  // namespace crosshull
