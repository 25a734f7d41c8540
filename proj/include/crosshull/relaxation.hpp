#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace crosshull::relax {

/// Five-point stencil on an nx-by-ny node lattice. Unknown nodes carry
/// normalized neighbour weights (they sum to 1 together with the weight folded
/// into `rhs`); fixed nodes are never written.
struct Stencil {
  struct Row {
    double east = 0.0, west = 0.0, north = 0.0, south = 0.0;
    double rhs = 0.0;
  };

  int nx = 0;
  int ny = 0;
  std::vector<std::uint8_t> unknown;  // 1 for nodes the solver updates
  std::vector<Row> rows;              // indexed like the lattice

  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nx + i; }
};

struct Options {
  double omega = 1.0;
  double tol = 1e-10;
  long max_sweeps = 1'000'000;
};

struct Result {
  long sweeps = 0;
  double residual = 0.0;
  bool converged = false;
};

/// Max over unknown nodes of |rhs + sum w * u_neighbour - u|.
double max_residual(const Stencil& s, std::span<const double> u);

/// One red (color 0) or black (color 1) SOR half-sweep; returns max |update|.
double sweep_serial(const Stencil& s, std::span<double> u, int color, double omega);
double sweep_openmp(const Stencil& s, std::span<double> u, int color, double omega);

/// Red-black SOR until the residual drops to tol. Both drivers perform the
/// same floating-point operations in the same per-node order, so their
/// results are bit-identical.
Result solve_serial(const Stencil& s, std::span<double> u, const Options& opt);
Result solve_openmp(const Stencil& s, std::span<double> u, const Options& opt);

/// Optimal SOR factor for the Laplacian on a square lattice with n nodes per side.
double optimal_omega(int n);

int openmp_threads();

}  // namespace crosshull::relax
