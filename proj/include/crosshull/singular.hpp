#pragma once

#include <optional>
#include <span>
#include <vector>

#include "crosshull/analytic_set.hpp"
#include "crosshull/cross.hpp"

namespace crosshull {

/// A singular set M inside a cross: empty, finitely many points of the cross,
/// or a polynomial zero set in the N global coordinates.
class MSpec {
 public:
  const AnalyticSet& set() const { return set_; }
  const CrossSpec& ambient() const { return ambient_; }
  bool contains(std::span<const Complex> z) const { return set_.contains(z); }

 private:
  friend MSpec make_mspec(CrossSpec ambient, AnalyticSet set);
  MSpec(CrossSpec ambient, AnalyticSet set) : set_(std::move(set)), ambient_(std::move(ambient)) {}

  AnalyticSet set_;
  CrossSpec ambient_;
};

/// Rejects full sets, wrong dimensions and listed points outside the cross.
MSpec make_mspec(CrossSpec ambient, AnalyticSet set);

/// M_{a,alpha} = {b : merge(alpha, a, b) in M}, a set in |alpha| coordinates.
FiberSet fiber(const MSpec& m, std::span<const Complex> a, const MultiIndex& alpha);
FiberSet fiber(const AnalyticSet& m, std::span<const Complex> a, const MultiIndex& alpha);

/// Catalog pluripolarity: everything except a full set.
bool is_pluripolar(const AnalyticSet& s);
bool is_pluripolar(const MSpec& m);

/// A product of single points and whole bases: coordinate j is either fixed
/// or free to range over A_j.
struct Cylinder {
  std::vector<std::optional<Complex>> coords;
};

struct DeltaSet {
  std::vector<Cylinder> cylinders;  // empty list: the empty set

  bool empty() const { return cylinders.empty(); }
  /// Membership for a point of A_1 x ... x A_N.
  bool contains(std::span<const Complex> a) const;
};

/// Delta over the family I and Delta-tilde over J:
/// the centre points a with a_alpha in Sigma_alpha for every alpha in the family.
struct DeltaSets {
  DeltaSet delta;
  DeltaSet delta_tilde;
};

/// Needs empty or finite sigma sets (UnsupportedSigmaKind otherwise).
DeltaSets delta_sets(const CrossSpec& spec);

}  // namespace crosshull
