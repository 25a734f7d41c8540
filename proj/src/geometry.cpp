#include "crosshull/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace crosshull {

namespace {

constexpr double kClosureSlack = 1e-12;

bool on_segment(const Segment& s, Complex z) {
  // Axis-aligned segments are tested exactly; this keeps membership in
  // (-1, 1) or i(-1, 1) free of rounding.
  if (s.a.imag() == s.b.imag()) {
    if (z.imag() != s.a.imag()) return false;
    const double lo = std::min(s.a.real(), s.b.real());
    const double hi = std::max(s.a.real(), s.b.real());
    return z.real() >= lo && z.real() <= hi;
  }
  if (s.a.real() == s.b.real()) {
    if (z.real() != s.a.real()) return false;
    const double lo = std::min(s.a.imag(), s.b.imag());
    const double hi = std::max(s.a.imag(), s.b.imag());
    return z.imag() >= lo && z.imag() <= hi;
  }
  const Complex d = s.b - s.a;
  const Complex w = z - s.a;
  const double len2 = std::norm(d);
  const double cross = (std::conj(d) * w).imag();
  if (std::abs(cross) > 1e-14 * len2) return false;
  const double t = (std::conj(d) * w).real() / len2;
  return t >= 0.0 && t <= 1.0;
}

bool in_closure(const PlanarDomain& d, Complex z) {
  return std::abs(z - d.center) <= d.radius * (1.0 + kClosureSlack);
}

// Rounding noise from cos(pi/2) and friends would otherwise turn an
// axis-aligned image into a slightly tilted one.
Complex snap(Complex z, double scale) {
  const double eps = 1e-14 * scale;
  return {std::abs(z.real()) <= eps ? 0.0 : z.real(), std::abs(z.imag()) <= eps ? 0.0 : z.imag()};
}

Complex unit_automorphism(const DiscAutomorphism& phi, Complex w) {
  return std::polar(1.0, phi.rotation) * (w - phi.shift) / (1.0 - std::conj(phi.shift) * w);
}

ClosedDisc circumcircle(Complex p, Complex q, Complex r) {
  const double ax = p.real(), ay = p.imag();
  const double bx = q.real(), by = q.imag();
  const double cx = r.real(), cy = r.imag();
  const double d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
  if (d == 0.0) fail(ErrorKind::UnsupportedMap, "degenerate circle image");
  const double a2 = ax * ax + ay * ay, b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
  const Complex center{(a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d,
                       (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d};
  return {center, std::abs(p - center)};
}

}  // namespace

Complex checked_point(double re, double im) {
  if (!std::isfinite(re) || !std::isfinite(im)) {
    fail(ErrorKind::InvalidArgument, "complex point with non-finite component");
  }
  return {re, im};
}

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

PlanarDomain make_disc(Complex center, double radius) {
  if (!is_finite(center) || !std::isfinite(radius) || !(radius > 0.0)) {
    fail(ErrorKind::InvalidArgument, "disc needs a finite center and a positive radius");
  }
  return {center, radius};
}

bool domain_contains(const PlanarDomain& d, Complex z) {
  return std::norm(z - d.center) < d.radius * d.radius;
}

BaseSet interval(double a, double b) { return BaseSet{{Segment{{a, 0.0}, {b, 0.0}}}}; }

BaseSet segment(Complex a, Complex b) { return BaseSet{{Segment{a, b}}}; }

BaseSet closed_subdisc(Complex center, double radius) {
  return BaseSet{{ClosedDisc{center, radius}}};
}

bool piece_contains(const BasePiece& piece, Complex z) {
  if (const auto* s = std::get_if<Segment>(&piece)) return on_segment(*s, z);
  const auto& d = std::get<ClosedDisc>(piece);
  return std::norm(z - d.center) <= d.radius * d.radius;
}

bool base_contains(const BaseSet& base, Complex z) {
  for (const auto& piece : base.pieces) {
    if (piece_contains(piece, z)) return true;
  }
  return false;
}

Complex base_anchor(const BaseSet& base) {
  for (const auto& piece : base.pieces) {
    if (const auto* s = std::get_if<Segment>(&piece)) return 0.5 * (s->a + s->b);
  }
  return std::get<ClosedDisc>(base.pieces.front()).center;
}

PairAD make_pair(BaseSet base, PlanarDomain domain) {
  if (!std::isfinite(domain.radius) || !(domain.radius > 0.0) || !is_finite(domain.center)) {
    fail(ErrorKind::InvalidArgument, "domain disc is degenerate");
  }
  if (base.pieces.empty()) fail(ErrorKind::InvalidBase, "base set is empty");
  for (const auto& piece : base.pieces) {
    if (const auto* s = std::get_if<Segment>(&piece)) {
      if (!is_finite(s->a) || !is_finite(s->b)) fail(ErrorKind::InvalidBase, "non-finite segment");
      if (s->a == s->b) fail(ErrorKind::InvalidBase, "segment degenerates to a point (pluripolar)");
      if (!in_closure(domain, s->a) || !in_closure(domain, s->b)) {
        fail(ErrorKind::InvalidBase, "segment leaves the closure of the domain");
      }
      if (!domain_contains(domain, 0.5 * (s->a + s->b))) {
        fail(ErrorKind::InvalidBase, "segment lies on the boundary of the domain");
      }
    } else {
      const auto& d = std::get<ClosedDisc>(piece);
      if (!is_finite(d.center) || !std::isfinite(d.radius)) {
        fail(ErrorKind::InvalidBase, "non-finite disc piece");
      }
      if (!(d.radius > 0.0)) fail(ErrorKind::InvalidBase, "disc piece has no interior (pluripolar)");
      if (std::abs(d.center - domain.center) + d.radius > domain.radius * (1.0 + kClosureSlack)) {
        fail(ErrorKind::InvalidBase, "disc piece leaves the closure of the domain");
      }
    }
  }
  return PairAD(std::move(base), domain);
}

Complex apply_automorphism(const PlanarDomain& d, const DiscAutomorphism& phi, Complex z) {
  if (!std::isfinite(phi.rotation) || !is_finite(phi.shift) || std::abs(phi.shift) >= 1.0) {
    fail(ErrorKind::UnsupportedMap, "automorphism needs a finite rotation and |shift| < 1");
  }
  return d.center + d.radius * unit_automorphism(phi, (z - d.center) / d.radius);
}

PairAD mobius_transport(const PairAD& pair, const DiscAutomorphism& phi) {
  const PlanarDomain& d = pair.domain();
  auto map = [&](Complex z) {
    return d.center + snap(apply_automorphism(d, phi, z) - d.center, d.radius);
  };
  BaseSet image;
  for (const auto& piece : pair.base().pieces) {
    if (const auto* s = std::get_if<Segment>(&piece)) {
      const Complex a = map(s->a), b = map(s->b), m = map(0.5 * (s->a + s->b));
      const Complex dir = b - a;
      const Complex rel = std::conj(dir) * (m - a);
      if (std::abs(rel.imag()) > 1e-12 * std::norm(dir) || rel.real() <= 0.0 ||
          rel.real() >= std::norm(dir)) {
        fail(ErrorKind::UnsupportedMap, "segment image is a circular arc, not a segment");
      }
      image.pieces.emplace_back(Segment{a, b});
    } else {
      const auto& c = std::get<ClosedDisc>(piece);
      const ClosedDisc circ = circumcircle(map(c.center + c.radius), map(c.center - c.radius),
                                           map(c.center + Complex(0.0, c.radius)));
      image.pieces.emplace_back(circ);
    }
  }
  return make_pair(std::move(image), d);
}

}  // namespace crosshull
