// Serial reference kernels. The OpenMP kernels in relaxation_openmp.cpp must
// stay in lockstep with these; tests compare the two bit for bit.

#include <algorithm>
#include <cmath>
#include <numbers>

#include "crosshull/relaxation.hpp"

namespace crosshull::relax {

namespace detail {

template <class Sweep>
Result drive(const Stencil& s, std::span<double> u, const Options& opt, Sweep sweep) {
  Result r;
  for (long k = 0; k < opt.max_sweeps; ++k) {
    const double d0 = sweep(s, u, 0, opt.omega);
    const double d1 = sweep(s, u, 1, opt.omega);
    r.sweeps = k + 1;
    // The update is omega times the local residual; confirm with a clean pass.
    if (std::max(d0, d1) / opt.omega <= 0.5 * opt.tol) {
      r.residual = max_residual(s, u);
      if (r.residual <= opt.tol) {
        r.converged = true;
        return r;
      }
    }
  }
  r.residual = max_residual(s, u);
  r.converged = r.residual <= opt.tol;
  return r;
}

}  // namespace detail

double max_residual(const Stencil& s, std::span<const double> u) {
  double worst = 0.0;
  for (int j = 0; j < s.ny; ++j) {
    for (int i = 0; i < s.nx; ++i) {
      const std::size_t p = s.index(i, j);
      if (!s.unknown[p]) continue;
      const auto& w = s.rows[p];
      const double target = w.rhs + w.east * u[p + 1] + w.west * u[p - 1] +
                            w.north * u[p + s.nx] + w.south * u[p - s.nx];
      worst = std::max(worst, std::abs(target - u[p]));
    }
  }
  return worst;
}

double sweep_serial(const Stencil& s, std::span<double> u, int color, double omega) {
  double worst = 0.0;
  for (int j = 1; j < s.ny - 1; ++j) {
    for (int i = 1 + ((j + 1 + color) & 1); i < s.nx - 1; i += 2) {
      const std::size_t p = s.index(i, j);
      if (!s.unknown[p]) continue;
      const auto& w = s.rows[p];
      const double target = w.rhs + w.east * u[p + 1] + w.west * u[p - 1] +
                            w.north * u[p + s.nx] + w.south * u[p - s.nx];
      const double delta = omega * (target - u[p]);
      u[p] += delta;
      worst = std::max(worst, std::abs(delta));
    }
  }
  return worst;
}

Result solve_serial(const Stencil& s, std::span<double> u, const Options& opt) {
  return detail::drive(s, u, opt, sweep_serial);
}

Result solve_openmp(const Stencil& s, std::span<double> u, const Options& opt) {
  return detail::drive(s, u, opt, sweep_openmp);
}

double optimal_omega(int n) {
  const double rho = std::cos(std::numbers::pi / std::max(n - 1, 2));
  return 2.0 / (1.0 + std::sqrt(1.0 - rho * rho));
}

}  // namespace crosshull::relax
