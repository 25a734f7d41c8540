// Stratified least squares on tensor-product sample grids. Each branch alpha
// of the cross carries a product grid (Chebyshev-like nodes on A_j where
// alpha_j = 0, equispaced nodes on a circle where alpha_j = 1), so the normal
// matrix is a sum of Kronecker products of 1-D Gram matrices and the
// right-hand side contracts one axis at a time.

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "crosshull/extend.hpp"

namespace crosshull {

namespace {

using Matrix = Eigen::MatrixXcd;

struct Axis {
  std::vector<Complex> v;  // scaled coordinate w / rho
  Matrix vander;           // (degree + 1) x nodes, entry v_p^m
};

struct Branch {
  MultiIndex alpha;
  std::vector<Axis> axes;
  std::vector<int> dims;
  std::vector<Complex> values;   // f on the grid, 0 where dropped
  std::vector<std::uint8_t> kept;
  std::size_t count = 0;
  double weight = 0.0;
};

struct Tensor {
  std::vector<int> dims;
  std::vector<Complex> data;
};

// out[o, r, i] = sum_p M(r, p) in[o, p, i] along `axis`.
Tensor apply_axis(const Tensor& t, int axis, const Matrix& m) {
  std::size_t outer = 1, inner = 1;
  for (int a = 0; a < axis; ++a) outer *= t.dims[a];
  for (std::size_t a = axis + 1; a < t.dims.size(); ++a) inner *= t.dims[a];
  const int n = t.dims[axis];
  const int rows = static_cast<int>(m.rows());
  Tensor out{t.dims, std::vector<Complex>(outer * rows * inner)};
  out.dims[axis] = rows;
  for (std::size_t o = 0; o < outer; ++o) {
    for (int r = 0; r < rows; ++r) {
      Complex* dst = &out.data[(o * rows + r) * inner];
      for (int p = 0; p < n; ++p) {
        const Complex c = m(r, p);
        if (c == Complex{}) continue;
        const Complex* src = &t.data[(o * n + p) * inner];
        for (std::size_t i = 0; i < inner; ++i) dst[i] += c * src[i];
      }
    }
  }
  return out;
}

Matrix vandermonde(const std::vector<Complex>& v, int degree) {
  Matrix m(degree + 1, static_cast<Eigen::Index>(v.size()));
  for (std::size_t p = 0; p < v.size(); ++p) {
    Complex q{1.0, 0.0};
    for (int e = 0; e <= degree; ++e) {
      m(e, p) = q;
      q *= v[p];
    }
  }
  return m;
}

Complex to_frame(const Disc& d, Complex z) { return (z - d.center) / d.radius; }

std::vector<Complex> circle_nodes(int count, double rho, Rng& rng) {
  const double shift = rng.uniform();
  std::vector<Complex> out;
  for (int p = 0; p < count; ++p) out.push_back(std::polar(rho, 2.0 * std::numbers::pi * (p + shift) / count));
  return out;
}

// Nodes on A_j inside |w| <= rho, in normalized coordinates.
std::vector<Complex> base_nodes(const PairAD& pair, int per_piece, double rho, Rng& rng) {
  const Disc& d = pair.domain();
  std::vector<Complex> out;
  for (const auto& piece : pair.base().pieces) {
    if (const auto* s = std::get_if<Segment>(&piece)) {
      const Complex a = to_frame(d, s->a), b = to_frame(d, s->b);
      const Complex dir = b - a;
      // |a + t dir|^2 <= rho^2
      const double qa = std::norm(dir), qb = 2.0 * (std::conj(a) * dir).real(), qc = std::norm(a) - rho * rho;
      const double disc = qb * qb - 4.0 * qa * qc;
      if (disc <= 0.0) continue;
      const double t0 = std::max(0.0, (-qb - std::sqrt(disc)) / (2.0 * qa));
      const double t1 = std::min(1.0, (-qb + std::sqrt(disc)) / (2.0 * qa));
      if (!(t1 > t0)) continue;
      for (int p = 0; p < per_piece; ++p) {
        const double x = std::cos(std::numbers::pi * (p + rng.uniform(0.25, 0.75)) / per_piece);
        out.push_back(a + (t0 + 0.5 * (1.0 + x) * (t1 - t0)) * dir);
      }
    } else {
      const auto& c = std::get<ClosedDisc>(piece);
      const Complex cc = to_frame(d, c.center);
      const double r = std::min(c.radius / d.radius, rho - std::abs(cc));
      if (!(r > 0.0)) continue;
      for (Complex u : circle_nodes(per_piece, 1.0, rng)) out.push_back(cc + r * u);
    }
  }
  if (out.empty()) fail(ErrorKind::InvalidArgument, "fit radius excludes every piece of a base set");
  return out;
}

std::size_t grid_size(const std::vector<int>& dims) {
  std::size_t s = 1;
  for (int d : dims) s *= static_cast<std::size_t>(d);
  return s;
}

}  // namespace

Complex PolyExtension::eval(std::span<const Complex> z) const {
  const std::size_t n = frames.size();
  if (z.size() != n) fail(ErrorKind::LengthMismatch, "point length != N");
  std::vector<std::vector<Complex>> pw(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Complex w = to_frame(frames[j], z[j]);
    pw[j].resize(degrees[j] + 1);
    pw[j][0] = 1.0;
    for (int e = 1; e <= degrees[j]; ++e) pw[j][e] = pw[j][e - 1] * w;
  }
  Complex s{0.0, 0.0};
  for (std::size_t c = 0; c < coeffs.size(); ++c) {
    Complex t = coeffs[c];
    for (std::size_t j = 0; j < n; ++j) t *= pw[j][exponents[c][j]];
    s += t;
  }
  return s;
}

Complex PolyExtension::coefficient(std::span<const int> m) const {
  for (std::size_t c = 0; c < exponents.size(); ++c) {
    if (std::equal(m.begin(), m.end(), exponents[c].begin(), exponents[c].end())) return coeffs[c];
  }
  return {0.0, 0.0};
}

PolyExtension extend_poly(const SampledFunction& f, const FitOptions& opt) {
  const CrossSpec& spec = f.domain;
  const int n = spec.size();
  if (static_cast<int>(opt.degrees.size()) != n) fail(ErrorKind::LengthMismatch, "one degree per factor");
  for (int d : opt.degrees) {
    if (d < 0) fail(ErrorKind::InvalidArgument, "negative degree");
  }
  if (!(opt.fit_radius > 0.0 && opt.fit_radius <= 1.0)) fail(ErrorKind::InvalidArgument, "fit radius must lie in (0, 1]");
  const double rho = opt.fit_radius;

  std::vector<int> deg(opt.degrees);
  int cap = 0;
  for (int d : deg) cap += d;
  if (opt.total_degree) {
    if (*opt.total_degree < 0) fail(ErrorKind::InvalidArgument, "negative total degree");
    cap = std::min(cap, *opt.total_degree);
    for (int& d : deg) d = std::min(d, cap);
  }

  PolyExtension ext;
  for (const auto& p : spec.pairs()) ext.frames.push_back(p.domain());
  ext.degrees = deg;
  ext.total_degree = cap;
  ext.fit_radius = rho;
  {
    std::vector<int> m(n, 0);
    while (true) {
      int s = 0;
      for (int e : m) s += e;
      if (s <= cap) ext.exponents.push_back(m);
      int j = n - 1;
      while (j >= 0 && m[j] == deg[j]) m[j--] = 0;
      if (j < 0) break;
      ++m[j];
    }
  }
  const auto nc = static_cast<Eigen::Index>(ext.exponents.size());
  if (opt.budget != 0 && opt.budget < 3 * static_cast<std::size_t>(nc)) {
    fail(ErrorKind::InsufficientSamples, "sample budget below 3 x number of coefficients");
  }

  // Base grid, then a common refinement factor until the budget is met.
  int refine = 1;
  auto planned = [&](int s) {
    std::size_t total = 0;
    for (const auto& alpha : spec.family()) {
      std::size_t g = 1;
      for (int j = 0; j < n; ++j) {
        const std::size_t pieces = spec.pair(j).base().pieces.size();
        g *= alpha[j] ? s * (2 * deg[j] + 3) : pieces * s * (deg[j] + 3);
      }
      total += g;
    }
    return total;
  };
  while (planned(refine) < opt.budget) ++refine;

  Rng rng(opt.seed);
  std::vector<Branch> branches;
  for (const auto& alpha : spec.family()) {
    Branch b;
    b.alpha = alpha;
    for (int j = 0; j < n; ++j) {
      Axis ax;
      ax.v = alpha[j] ? circle_nodes(refine * (2 * deg[j] + 3), rho, rng)
                      : base_nodes(spec.pair(j), refine * (deg[j] + 3), rho, rng);
      for (Complex& v : ax.v) v /= rho;
      ax.vander = vandermonde(ax.v, deg[j]);
      b.dims.push_back(static_cast<int>(ax.v.size()));
      b.axes.push_back(std::move(ax));
    }
    branches.push_back(std::move(b));
  }

  // Sample values. Exceptions cannot leave the parallel region, so failures
  // are recorded per sample and raised afterwards in index order.
  for (auto& b : branches) {
    const std::size_t total = grid_size(b.dims);
    b.values.assign(total, Complex{});
    b.kept.assign(total, 0);
    std::vector<std::uint8_t> undefined(total, 0);
    const SigmaSet* sigma = spec.sigma(b.alpha);
#pragma omp parallel for schedule(static)
    for (std::size_t idx = 0; idx < total; ++idx) {
      Point z(n);
      std::size_t rest = idx;
      for (int j = n - 1; j >= 0; --j) {
        const int p = static_cast<int>(rest % b.dims[j]);
        rest /= b.dims[j];
        z[j] = ext.frames[j].center + ext.frames[j].radius * rho * b.axes[j].v[p];
      }
      if (sigma && sigma->contains(project(z, b.alpha, 0))) continue;
      const auto v = f.eval(z);
      if (v && is_finite(*v)) {
        b.values[idx] = *v;
        b.kept[idx] = 1;
      } else if (!f.excluded(z)) {
        undefined[idx] = 1;
      }
    }
    for (std::size_t idx = 0; idx < total; ++idx) {
      if (undefined[idx]) fail(ErrorKind::UndefinedValue, f.name + " is undefined at a point outside its exclusion set");
    }
    b.count = static_cast<std::size_t>(std::count(b.kept.begin(), b.kept.end(), 1));
    ext.samples += b.count;
    ext.dropped += total - b.count;
  }
  if (ext.samples < 3 * static_cast<std::size_t>(nc)) fail(ErrorKind::InsufficientSamples, "too few usable samples");
  for (auto& b : branches) b.weight = b.count ? 1.0 / static_cast<double>(grid_size(b.dims)) : 0.0;

  // Normal matrix: sum over branches of Kronecker products of 1-D Grams.
  std::vector<std::vector<Matrix>> grams;
  for (const auto& b : branches) {
    std::vector<Matrix> g;
    for (const auto& ax : b.axes) g.push_back(ax.vander.conjugate() * ax.vander.transpose());
    grams.push_back(std::move(g));
  }
  Matrix gram(nc, nc);
#pragma omp parallel for schedule(dynamic, 16)
  for (Eigen::Index r = 0; r < nc; ++r) {
    const auto& mr = ext.exponents[r];
    for (Eigen::Index c = 0; c <= r; ++c) {
      const auto& mc = ext.exponents[c];
      Complex s{0.0, 0.0};
      for (std::size_t a = 0; a < branches.size(); ++a) {
        Complex t = branches[a].weight;
        for (int j = 0; j < n; ++j) t *= grams[a][j](mr[j], mc[j]);
        s += t;
      }
      gram(r, c) = s;
    }
  }
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(nc);
  std::vector<Complex> basis(nc);
  for (const auto& b : branches) {
    Tensor t{b.dims, b.values};
    for (int j = 0; j < n; ++j) t = apply_axis(t, j, b.axes[j].vander.conjugate());
    for (Eigen::Index c = 0; c < nc; ++c) {
      std::size_t flat = 0;
      for (int j = 0; j < n; ++j) flat = flat * (deg[j] + 1) + ext.exponents[c][j];
      rhs(c) += b.weight * t.data[flat];
    }
    // Rank-one downdates for dropped grid points.
    const std::size_t total = grid_size(b.dims);
    for (std::size_t idx = 0; idx < total; ++idx) {
      if (b.kept[idx]) continue;
      std::vector<int> pos(n);
      std::size_t rest = idx;
      for (int j = n - 1; j >= 0; --j) {
        pos[j] = static_cast<int>(rest % b.dims[j]);
        rest /= b.dims[j];
      }
      for (Eigen::Index c = 0; c < nc; ++c) {
        Complex v{1.0, 0.0};
        for (int j = 0; j < n; ++j) v *= b.axes[j].vander(ext.exponents[c][j], pos[j]);
        basis[c] = v;
      }
      for (Eigen::Index r = 0; r < nc; ++r) {
        for (Eigen::Index c = 0; c <= r; ++c) gram(r, c) -= b.weight * std::conj(basis[r]) * basis[c];
      }
    }
  }

  Eigen::VectorXd scale(nc);
  for (Eigen::Index c = 0; c < nc; ++c) {
    const double d = gram(c, c).real();
    if (!(d > 0.0)) fail(ErrorKind::IllConditioned, "a basis function vanishes on every sample");
    scale(c) = 1.0 / std::sqrt(d);
  }
  for (Eigen::Index r = 0; r < nc; ++r) {
    for (Eigen::Index c = 0; c <= r; ++c) gram(r, c) *= scale(r) * scale(c);
  }
  Eigen::LLT<Eigen::Ref<Matrix>, Eigen::Lower> llt(gram);
  if (llt.info() != Eigen::Success) fail(ErrorKind::IllConditioned, "normal matrix is numerically singular");
  ext.condition = 1.0 / llt.rcond();
  if (!(ext.condition <= opt.max_condition)) {
    fail(ErrorKind::IllConditioned, "condition estimate above the limit; lower the degrees or add samples");
  }
  const Eigen::VectorXcd x = scale.cwiseProduct(llt.solve(scale.cwiseProduct(rhs)).eval());

  ext.coeffs.resize(nc);
  for (Eigen::Index c = 0; c < nc; ++c) {
    int total = 0;
    for (int e : ext.exponents[c]) total += e;
    ext.coeffs[c] = x(c) / std::pow(rho, total);
  }

  // Residual on the grids, expanding the coefficient tensor one axis at a time.
  std::vector<int> cdims;
  for (int d : deg) cdims.push_back(d + 1);
  Tensor coef{cdims, std::vector<Complex>(grid_size(cdims))};
  for (Eigen::Index c = 0; c < nc; ++c) {
    std::size_t flat = 0;
    for (int j = 0; j < n; ++j) flat = flat * (deg[j] + 1) + ext.exponents[c][j];
    coef.data[flat] = x(c);
  }
  double sq = 0.0;
  for (const auto& b : branches) {
    Tensor t = coef;
    for (int j = 0; j < n; ++j) t = apply_axis(t, j, b.axes[j].vander.transpose());
    for (std::size_t idx = 0; idx < t.data.size(); ++idx) {
      if (!b.kept[idx]) continue;
      const double e = std::abs(t.data[idx] - b.values[idx]);
      ext.residual_max = std::max(ext.residual_max, e);
      ext.data_scale = std::max(ext.data_scale, std::abs(b.values[idx]));
      sq += e * e;
    }
  }
  ext.residual_rms = std::sqrt(sq / static_cast<double>(ext.samples));
  return ext;
}

}  // namespace crosshull
