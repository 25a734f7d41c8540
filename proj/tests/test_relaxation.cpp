#include <doctest.h>

#include <vector>

#include "crosshull/extremal.hpp"
#include "crosshull/relaxation.hpp"

using namespace crosshull;

namespace {

GridSpec grid(int n) {
  GridSpec g;
  g.nx = g.ny = n;
  g.tol = 1e-10;
  return g;
}

}  // namespace

TEST_CASE("serial and OpenMP sweeps are bit-identical") {
  const PairAD p = make_pair(closed_subdisc(0.1, 0.3), make_disc(0, 1));
  std::vector<double> a, b;
  const relax::Stencil s = detail::field_stencil(p, grid(97), a);
  b = a;
  for (int sweep = 0; sweep < 25; ++sweep) {
    for (int color : {0, 1}) {
      const double da = relax::sweep_serial(s, a, color, 1.7);
      const double db = relax::sweep_openmp(s, b, color, 1.7);
      CHECK(da == db);
    }
  }
  CHECK(a == b);
}

TEST_CASE("serial and OpenMP solves agree to the bit") {
  const PairAD p = make_pair(interval(-1, 1), make_disc(0, 1));
  GridSpec g = grid(129);
  g.backend = Backend::Serial;
  const ExtremalField fs = h_grid_solve(p, g);
  g.backend = Backend::OpenMP;
  const ExtremalField fo = h_grid_solve(p, g);
  CHECK(fs.sweeps() == fo.sweeps());
  CHECK(fs.residual() == fo.residual());
  CHECK(std::equal(fs.values().begin(), fs.values().end(), fo.values().begin()));
}

TEST_CASE("solve drives the residual below the tolerance") {
  const PairAD p = make_pair(interval(-0.5, 0.5), make_disc(0, 1));
  std::vector<double> u;
  const relax::Stencil s = detail::field_stencil(p, grid(65), u);
  relax::Options opt;
  opt.omega = relax::optimal_omega(65);
  opt.tol = 1e-11;
  const relax::Result r = relax::solve_serial(s, u, opt);
  CHECK(r.converged);
  CHECK(r.residual <= 1e-11);
  CHECK(relax::max_residual(s, u) <= 1e-11);
}

TEST_CASE("stencil rows are normalized") {
  const PairAD p = make_pair(interval(-1, 1), make_disc(0, 1));
  std::vector<double> u;
  const relax::Stencil s = detail::field_stencil(p, grid(33), u);
  int unknowns = 0;
  for (std::size_t n = 0; n < s.rows.size(); ++n) {
    if (!s.unknown[n]) continue;
    ++unknowns;
    const auto& r = s.rows[n];
    for (double w : {r.east, r.west, r.north, r.south}) {
      CHECK(w >= 0.0);
      CHECK(w <= 1.0);
    }
  }
  CHECK(unknowns > 0);
  CHECK(relax::optimal_omega(513) > 1.9);
  CHECK(relax::optimal_omega(513) < 2.0);
}
