#pragma once

#include <span>
#include <vector>

#include "crosshull/multi_index.hpp"
#include "crosshull/polynomial.hpp"

namespace crosshull {

enum class SetKind { Empty, Points, PolyZero, Full };

/// A subset of a product of `dim` planar factors from the supported catalog:
/// empty, a finite point list, the zero set of a nonzero polynomial, or the
/// whole product (only produced by fibering).
class AnalyticSet {
 public:
  static AnalyticSet empty(int dim);
  static AnalyticSet points(int dim, std::vector<Point> list);
  static AnalyticSet zero_set(int dim, Polynomial p);
  static AnalyticSet full(int dim);

  SetKind kind() const { return kind_; }
  int dim() const { return dim_; }
  const std::vector<Point>& list() const { return points_; }
  const Polynomial& poly() const { return poly_; }

  bool contains(std::span<const Complex> z) const;

 private:
  SetKind kind_ = SetKind::Empty;
  int dim_ = 0;
  std::vector<Point> points_;
  Polynomial poly_;
};

using SigmaSet = AnalyticSet;
using FiberSet = AnalyticSet;

/// Coordinates closer than 1e-12 (relative) are the same point.
bool same_point(std::span<const Complex> a, std::span<const Complex> b);

}  // namespace crosshull
