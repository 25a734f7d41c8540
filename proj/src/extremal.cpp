#include "crosshull/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "crosshull/relaxation.hpp"

namespace crosshull {

namespace {

constexpr double kCatalogSlack = 1e-12;

double cross(Complex u, Complex v) { return (std::conj(u) * v).imag(); }
double dot(Complex u, Complex v) { return (std::conj(u) * v).real(); }

std::optional<Segment> diameter(const PairAD& pair) {
  const auto& pieces = pair.base().pieces;
  if (pieces.size() != 1) return std::nullopt;
  const auto* s = std::get_if<Segment>(&pieces.front());
  if (!s) return std::nullopt;
  const Disc& d = pair.domain();
  const double slack = kCatalogSlack * d.radius;
  if (std::abs(std::abs(s->a - d.center) - d.radius) > slack) return std::nullopt;
  if (std::abs(std::abs(s->b - d.center) - d.radius) > slack) return std::nullopt;
  if (std::abs(0.5 * (s->a + s->b) - d.center) > slack) return std::nullopt;
  return *s;
}

std::optional<ClosedDisc> concentric_disc(const PairAD& pair) {
  const auto& pieces = pair.base().pieces;
  if (pieces.size() != 1) return std::nullopt;
  const auto* c = std::get_if<ClosedDisc>(&pieces.front());
  if (!c) return std::nullopt;
  if (std::abs(c->center - pair.domain().center) > kCatalogSlack * pair.domain().radius) {
    return std::nullopt;
  }
  return *c;
}

// Smallest t in (0, len] with p + t*dir in the piece, if any. dir is a unit vector.
std::optional<double> hit_piece(const BasePiece& piece, Complex p, Complex dir, double len) {
  if (const auto* s = std::get_if<Segment>(&piece)) {
    const Complex e = s->b - s->a;
    const Complex ap = s->a - p;
    const double denom = cross(dir, e);
    const double scale = std::abs(e);
    if (std::abs(denom) > 1e-14 * scale) {
      const double t = cross(ap, e) / denom;
      const double u = cross(ap, dir) / denom;
      const double slack = 1e-12;
      if (t > 0.0 && t <= len * (1.0 + slack) && u >= -slack && u <= 1.0 + slack) {
        return std::min(t, len);
      }
      return std::nullopt;
    }
    if (std::abs(cross(ap, dir)) > 1e-14 * std::max(scale, std::abs(ap))) return std::nullopt;
    const double ta = dot(dir, s->a - p), tb = dot(dir, s->b - p);
    const double lo = std::min(ta, tb), hi = std::max(ta, tb);
    if (hi <= 0.0 || lo > len) return std::nullopt;
    if (lo > 0.0) return lo;
    return std::nullopt;
  }
  const auto& c = std::get<ClosedDisc>(piece);
  const Complex q = p - c.center;
  const double b = dot(q, dir);
  const double disc = b * b - (std::norm(q) - c.radius * c.radius);
  if (disc < 0.0) return std::nullopt;
  const double t = -b - std::sqrt(disc);
  if (t > 0.0 && t <= len) return t;
  return std::nullopt;
}

}  // namespace

namespace detail {

double CornerTerm::angular(Complex zeta) const {
  const double theta = std::arg((zeta - apex) / inward);
  return theta >= 0.0 ? theta / gamma_pos : -theta / gamma_neg;
}

double CornerTerm::cutoff(double r) const {
  if (r <= r_in) return 1.0;
  if (r >= r_out) return 0.0;
  const double t = (r - r_in) / (r_out - r_in);
  return 1.0 - t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

double CornerTerm::value(Complex zeta) const {
  const double r = std::abs(zeta - apex);
  if (r >= r_out) return 0.0;
  return cutoff(r) * angular(zeta);
}

double CornerTerm::laplacian(Complex zeta) const {
  // The angular factor is harmonic and orthogonal to the radial cutoff, so
  // only psi * (chi'' + chi'/r) survives.
  const double r = std::abs(zeta - apex);
  if (r <= r_in || r >= r_out) return 0.0;
  const double span = r_out - r_in;
  const double t = (r - r_in) / span;
  const double d1 = -30.0 * t * t * (1.0 - t) * (1.0 - t) / span;
  const double d2 = -(60.0 * t - 180.0 * t * t + 120.0 * t * t * t) / (span * span);
  return angular(zeta) * (d2 + d1 / r);
}

std::vector<CornerTerm> corner_terms(const PairAD& pair) {
  const Disc& d = pair.domain();
  const auto& pieces = pair.base().pieces;
  std::vector<Complex> apexes;
  std::vector<CornerTerm> out;
  auto on_circle = [&](Complex z) {
    return std::abs(std::abs(z - d.center) - d.radius) <= kCatalogSlack * d.radius;
  };
  auto distance_to_piece = [](const BasePiece& piece, Complex z) {
    if (const auto* s = std::get_if<Segment>(&piece)) {
      const Complex e = s->b - s->a;
      const double t = std::clamp(dot(e, z - s->a) / std::norm(e), 0.0, 1.0);
      return std::abs(z - (s->a + t * e));
    }
    const auto& c = std::get<ClosedDisc>(piece);
    return std::max(0.0, std::abs(z - c.center) - c.radius);
  };
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    const auto* s = std::get_if<Segment>(&pieces[k]);
    if (!s) continue;
    for (int end = 0; end < 2; ++end) {
      const Complex q = end == 0 ? s->a : s->b;
      const Complex other = end == 0 ? s->b : s->a;
      if (!on_circle(q)) continue;
      double room = std::min(0.25 * d.radius, 0.5 * std::abs(other - q));
      bool shared = false;
      for (std::size_t m = 0; m < pieces.size(); ++m) {
        if (m == k) continue;
        const double dist = distance_to_piece(pieces[m], q);
        if (dist == 0.0) shared = true;
        room = std::min(room, 0.5 * dist);
      }
      if (shared) continue;
      CornerTerm c;
      c.apex = q;
      c.inward = (other - q) / std::abs(other - q);
      const Complex normal = (q - d.center) / d.radius;
      const Complex t1 = Complex(0.0, 1.0) * normal;
      const double a1 = std::arg(t1 / c.inward);
      const double a2 = std::arg(-t1 / c.inward);
      c.gamma_pos = std::max(a1, a2);
      c.gamma_neg = -std::min(a1, a2);
      c.r_out = room;
      c.r_in = 0.5 * room;
      out.push_back(c);
      apexes.push_back(q);
    }
  }
  // Cutoff discs of different apexes must not overlap.
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t j = 0; j < out.size(); ++j) {
      if (i == j) continue;
      const double gap = 0.5 * std::abs(apexes[i] - apexes[j]);
      out[i].r_out = std::min(out[i].r_out, gap);
      out[i].r_in = 0.5 * out[i].r_out;
    }
  }
  return out;
}

double corner_sum(std::span<const CornerTerm> terms, Complex zeta) {
  double v = 0.0;
  for (const auto& t : terms) v += t.value(zeta);
  return v;
}

}  // namespace detail

namespace {

// Stencil for the remainder v = h - sum of corner terms.
relax::Stencil build_stencil(const PairAD& pair, int nx, int ny, double x0, double y0, double hx,
                             double hy, std::span<const detail::CornerTerm> corners,
                             std::vector<double>& values) {
  const Disc& d = pair.domain();
  auto singular = [&](Complex z) { return detail::corner_sum(corners, z); };
  relax::Stencil s;
  s.nx = nx;
  s.ny = ny;
  const std::size_t n = static_cast<std::size_t>(nx) * ny;
  s.unknown.assign(n, 0);
  s.rows.assign(n, {});
  values.assign(n, 0.0);

  auto node = [&](int i, int j) { return Complex(x0 + i * hx, y0 + j * hy); };
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const std::size_t p = s.index(i, j);
      const Complex z = node(i, j);
      if (!domain_contains(d, z)) {
        values[p] = 1.0 - singular(z);
      } else if (base_contains(pair.base(), z)) {
        values[p] = -singular(z);
      } else {
        s.unknown[p] = 1;
      }
    }
  }

  const Complex dirs[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const std::size_t p = s.index(i, j);
      if (!s.unknown[p]) continue;
      const Complex z = node(i, j);
      double dist[4];
      double bval[4];
      bool boundary[4];
      for (int k = 0; k < 4; ++k) {
        const double len = k < 2 ? hx : hy;
        dist[k] = len;
        boundary[k] = false;
        // Exit through the circle.
        const Complex q = z - d.center;
        const double b = dot(q, dirs[k]);
        const double t_circle = -b + std::sqrt(b * b - (std::norm(q) - d.radius * d.radius));
        if (t_circle <= len) {
          dist[k] = t_circle;
          bval[k] = 1.0;
          boundary[k] = true;
        }
        for (const auto& piece : pair.base().pieces) {
          if (auto t = hit_piece(piece, z, dirs[k], len); t && *t <= dist[k]) {
            dist[k] = *t;
            bval[k] = 0.0;
            boundary[k] = true;
          }
        }
        dist[k] = std::max(dist[k], 1e-12 * len);
      }
      for (int k = 0; k < 4; ++k) {
        if (boundary[k] && !corners.empty()) bval[k] -= singular(z + dist[k] * dirs[k]);
      }
      double w[4];
      w[0] = 2.0 / (dist[0] * (dist[0] + dist[1]));
      w[1] = 2.0 / (dist[1] * (dist[0] + dist[1]));
      w[2] = 2.0 / (dist[2] * (dist[2] + dist[3]));
      w[3] = 2.0 / (dist[3] * (dist[2] + dist[3]));
      const double total = w[0] + w[1] + w[2] + w[3];
      auto& row = s.rows[p];
      double* slots[4] = {&row.east, &row.west, &row.north, &row.south};
      for (const auto& c : corners) row.rhs += c.laplacian(z) / total;
      for (int k = 0; k < 4; ++k) {
        const double wk = w[k] / total;
        if (boundary[k]) {
          row.rhs += wk * bval[k];
        } else {
          *slots[k] = wk;
        }
      }
    }
  }
  return s;
}

}  // namespace

relax::Stencil detail::field_stencil(const PairAD& pair, const GridSpec& spec,
                                     std::vector<double>& values) {
  const Disc& d = pair.domain();
  const double x0 = d.center.real() - d.radius, y0 = d.center.imag() - d.radius;
  const double hx = 2.0 * d.radius / (spec.nx - 1), hy = 2.0 * d.radius / (spec.ny - 1);
  const std::vector<CornerTerm> corners = corner_terms(pair);
  return build_stencil(pair, spec.nx, spec.ny, x0, y0, hx, hy, corners, values);
}

bool has_closed_form(const PairAD& pair) {
  return diameter(pair).has_value() || concentric_disc(pair).has_value();
}

double h_closed_form(const PairAD& pair, Complex zeta) {
  const Disc& d = pair.domain();
  if (!domain_contains(d, zeta)) fail(ErrorKind::OutsideDomain, "point is not in the domain");
  if (auto s = diameter(pair)) {
    if (base_contains(pair.base(), zeta)) return 0.0;
    // Rotate the diameter onto (-1, 1).
    const Complex u = (s->b - d.center) / d.radius;
    const Complex w = (zeta - d.center) / d.radius * std::conj(u) / std::abs(u);
    const double v = 2.0 / std::numbers::pi * std::abs(std::arg((1.0 + w) / (1.0 - w)));
    return std::clamp(v, 0.0, 1.0);
  }
  if (auto c = concentric_disc(pair)) {
    const double r = std::abs(zeta - d.center);
    if (r <= c->radius || c->radius >= d.radius) return 0.0;
    return std::clamp(std::log(r / c->radius) / std::log(d.radius / c->radius), 0.0, 1.0);
  }
  fail(ErrorKind::NoClosedForm, "pair is outside the closed-form catalog");
}

ExtremalField::ExtremalField(PairAD pair, int nx, int ny, std::vector<double> values,
                             double tolerance, long sweeps, double residual)
    : pair_(std::move(pair)),
      nx_(nx),
      ny_(ny),
      values_(std::move(values)),
      tolerance_(tolerance),
      sweeps_(sweeps),
      residual_(residual) {
  corners_ = detail::corner_terms(pair_);
  const Disc& d = pair_.domain();
  x0_ = d.center.real() - d.radius;
  y0_ = d.center.imag() - d.radius;
  hx_ = 2.0 * d.radius / (nx_ - 1);
  hy_ = 2.0 * d.radius / (ny_ - 1);
  if (values_.size() != static_cast<std::size_t>(nx_) * ny_) {
    fail(ErrorKind::DimensionMismatch, "field values do not match the grid");
  }
}

Complex ExtremalField::node(int i, int j) const { return {x0_ + i * hx_, y0_ + j * hy_}; }

double ExtremalField::interpolate(Complex zeta) const {
  if (base_contains(pair_.base(), zeta)) return 0.0;
  const double fx = std::clamp((zeta.real() - x0_) / hx_, 0.0, nx_ - 1.0);
  const double fy = std::clamp((zeta.imag() - y0_) / hy_, 0.0, ny_ - 1.0);
  const int i = std::min(static_cast<int>(fx), nx_ - 2);
  const int j = std::min(static_cast<int>(fy), ny_ - 2);
  const double tx = fx - i, ty = fy - j;
  // Interpolate the smooth remainder and add the corner terms back exactly.
  auto rem = [&](int a, int b) { return at(a, b) - detail::corner_sum(corners_, node(a, b)); };
  const double v = (1 - tx) * (1 - ty) * rem(i, j) + tx * (1 - ty) * rem(i + 1, j) +
                   (1 - tx) * ty * rem(i, j + 1) + tx * ty * rem(i + 1, j + 1);
  return std::clamp(v + detail::corner_sum(corners_, zeta), 0.0, 1.0);
}

ExtremalField h_grid_solve(const PairAD& pair, const GridSpec& spec) {
  if (spec.nx < 17 || spec.ny < 17) fail(ErrorKind::InvalidArgument, "grid needs at least 17x17 nodes");
  if (!(spec.tol > 0.0)) fail(ErrorKind::InvalidArgument, "tolerance must be positive");
  const Disc& d = pair.domain();
  const double x0 = d.center.real() - d.radius, y0 = d.center.imag() - d.radius;
  const double hx = 2.0 * d.radius / (spec.nx - 1), hy = 2.0 * d.radius / (spec.ny - 1);
  const std::vector<detail::CornerTerm> corners = detail::corner_terms(pair);
  std::vector<double> values;
  const relax::Stencil stencil =
      build_stencil(pair, spec.nx, spec.ny, x0, y0, hx, hy, corners, values);

  relax::Options opt;
  opt.tol = spec.tol;
  opt.max_sweeps = spec.max_sweeps;
  opt.omega = spec.omega.value_or(relax::optimal_omega(std::max(spec.nx, spec.ny)));
  const relax::Result r = spec.backend == Backend::Serial
                              ? relax::solve_serial(stencil, values, opt)
                              : relax::solve_openmp(stencil, values, opt);
  if (!r.converged) {
    std::ostringstream os;
    os << "residual " << r.residual << " after " << r.sweeps << " sweeps";
    fail(ErrorKind::NoConvergence, os.str());
  }
  for (int j = 0; j < spec.ny; ++j) {
    for (int i = 0; i < spec.nx; ++i) {
      const Complex z(x0 + i * hx, y0 + j * hy);
      double& v = values[static_cast<std::size_t>(j) * spec.nx + i];
      if (!domain_contains(d, z)) {
        v = 1.0;
      } else if (base_contains(pair.base(), z)) {
        v = 0.0;
      } else {
        v = std::clamp(v + detail::corner_sum(corners, z), 0.0, 1.0);
      }
    }
  }
  return ExtremalField(pair, spec.nx, spec.ny, std::move(values), spec.tol, r.sweeps, r.residual);
}

double h_eval(const PairAD& pair, Complex zeta, Strategy strategy, const ExtremalField* field) {
  if (!domain_contains(pair.domain(), zeta)) {
    fail(ErrorKind::OutsideDomain, "point is not in the domain");
  }
  if (base_contains(pair.base(), zeta)) return 0.0;
  const bool closed = strategy == Strategy::ClosedForm ||
                      (strategy == Strategy::Auto && has_closed_form(pair));
  if (closed) return h_closed_form(pair, zeta);
  if (!field) {
    fail(strategy == Strategy::Field ? ErrorKind::InvalidArgument : ErrorKind::NoClosedForm,
         "no solved field available for this pair");
  }
  return field->interpolate(zeta);
}

double h_product_max(std::span<const double> values) {
  if (values.empty()) fail(ErrorKind::EmptyInput, "no values");
  return *std::max_element(values.begin(), values.end());
}

void write_field_csv(std::ostream& os, const ExtremalField& field) {
  os << "x,y,h\n";
  os << std::setprecision(17);
  for (int j = 0; j < field.ny(); ++j) {
    for (int i = 0; i < field.nx(); ++i) {
      const Complex z = field.node(i, j);
      os << z.real() << ',' << z.imag() << ',' << field.at(i, j) << '\n';
    }
  }
}

ExtremalField read_field_csv(std::istream& is, const PairAD& pair) {
  std::string line;
  if (!std::getline(is, line) || line != "x,y,h") fail(ErrorKind::Parse, "expected header x,y,h");
  std::vector<double> xs, ys, hs;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    double v[3];
    char comma = 0;
    if (!(ls >> v[0] >> comma) || comma != ',' || !(ls >> v[1] >> comma) || comma != ',' ||
        !(ls >> v[2])) {
      fail(ErrorKind::Parse, "malformed field row: " + line);
    }
    xs.push_back(v[0]);
    ys.push_back(v[1]);
    hs.push_back(v[2]);
  }
  if (xs.empty()) fail(ErrorKind::Parse, "field has no rows");
  int nx = 1;
  while (nx < static_cast<int>(ys.size()) && ys[nx] == ys[0]) ++nx;
  if (xs.size() % nx != 0) fail(ErrorKind::Parse, "rows do not form a rectangular grid");
  const int ny = static_cast<int>(xs.size() / nx);
  if (nx < 2 || ny < 2) fail(ErrorKind::Parse, "grid is degenerate");
  ExtremalField field(pair, nx, ny, std::move(hs), 0.0, 0, 0.0);
  const double scale = pair.domain().radius;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const std::size_t p = static_cast<std::size_t>(j) * nx + i;
      if (std::abs(field.node(i, j) - Complex(xs[p], ys[p])) > 1e-9 * scale) {
        fail(ErrorKind::Parse, "grid nodes do not match the domain's bounding box");
      }
    }
  }
  return field;
}

}  // namespace crosshull
