#pragma once

#include <complex>
#include <variant>
#include <vector>

#include "crosshull/errors.hpp"

namespace crosshull {

using Complex = std::complex<double>;

/// Throws InvalidArgument unless both components are finite.
Complex checked_point(double re, double im);
bool is_finite(Complex z);

/// Open disc {z : |z - center| < radius}.
struct Disc {
  Complex center{0.0, 0.0};
  double radius = 1.0;
};

using PlanarDomain = Disc;

PlanarDomain make_disc(Complex center, double radius);

/// Exact test on |z-c|^2 < r^2; the boundary circle is outside.
bool domain_contains(const PlanarDomain& d, Complex z);

/// Closed straight segment [a, b] in the plane.
struct Segment {
  Complex a;
  Complex b;
};

/// Closed disc {z : |z - center| <= radius}.
struct ClosedDisc {
  Complex center;
  double radius = 0.0;
};

using BasePiece = std::variant<Segment, ClosedDisc>;

/// A base set A: a nonempty finite union of segments and closed discs.
struct BaseSet {
  std::vector<BasePiece> pieces;
};

BaseSet interval(double a, double b);
BaseSet segment(Complex a, Complex b);
BaseSet closed_subdisc(Complex center, double radius);

bool piece_contains(const BasePiece& piece, Complex z);
bool base_contains(const BaseSet& base, Complex z);

/// A point of A that serves as the canonical anchor: midpoint of the first
/// segment piece, or the center of the first disc piece.
Complex base_anchor(const BaseSet& base);

/// A validated factor pair (A, D).
class PairAD {
 public:
  const BaseSet& base() const { return base_; }
  const PlanarDomain& domain() const { return domain_; }

 private:
  friend PairAD make_pair(BaseSet base, PlanarDomain domain);
  PairAD(BaseSet base, PlanarDomain domain) : base_(std::move(base)), domain_(domain) {}

  BaseSet base_;
  PlanarDomain domain_;
};

/// Validates A against D. Rejects empty bases, degenerate (pluripolar) pieces
/// such as single points, and pieces leaving the closure of D.
PairAD make_pair(BaseSet base, PlanarDomain domain);

/// z -> e^{i theta} (z - a) / (1 - conj(a) z) acting on the unit disc; applied
/// to a general disc D through the affine normalization z -> (z - c) / r.
struct DiscAutomorphism {
  double rotation = 0.0;
  Complex shift{0.0, 0.0};
};

/// Image of z under the automorphism of D described by phi.
Complex apply_automorphism(const PlanarDomain& d, const DiscAutomorphism& phi, Complex z);

/// Image pair under phi. Segment pieces must map to segments (otherwise
/// UnsupportedMap); disc pieces map to discs.
PairAD mobius_transport(const PairAD& pair, const DiscAutomorphism& phi);

}  // namespace crosshull
