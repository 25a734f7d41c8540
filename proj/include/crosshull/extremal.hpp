#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "crosshull/geometry.hpp"
#include "crosshull/relaxation.hpp"

namespace crosshull {

enum class Strategy { ClosedForm, Field, Auto };

enum class Backend { Serial, OpenMP };

/// Whether the pair is in the closed-form catalog: a diameter segment of D,
/// or a closed disc concentric with D.
bool has_closed_form(const PairAD& pair);

/// Analytic relative extremal function. Throws OutsideDomain for zeta outside
/// D and NoClosedForm outside the catalog.
double h_closed_form(const PairAD& pair, Complex zeta);

namespace detail {

/// Cut-off wedge function at a segment endpoint lying on the circle. It holds
/// the jump of the Dirichlet data there, so the grid only has to resolve the
/// smooth remainder.
struct CornerTerm {
  Complex apex;
  Complex inward;  // unit vector along the segment, away from the apex
  double gamma_pos = 0.0;
  double gamma_neg = 0.0;
  double r_in = 0.0;
  double r_out = 0.0;

  double angular(Complex zeta) const;
  double cutoff(double r) const;
  double value(Complex zeta) const;
  double laplacian(Complex zeta) const;
};

std::vector<CornerTerm> corner_terms(const PairAD& pair);
double corner_sum(std::span<const CornerTerm> terms, Complex zeta);

}  // namespace detail

struct GridSpec {
  int nx = 513;
  int ny = 513;
  double tol = 1e-10;
  long max_sweeps = 1'000'000;
  Backend backend = Backend::OpenMP;
  std::optional<double> omega;  // defaults to the optimal square-lattice value
};

namespace detail {

/// The linear system solved by h_grid_solve, before relaxation. `values`
/// receives the fixed boundary data and zero initial guesses.
relax::Stencil field_stencil(const PairAD& pair, const GridSpec& spec, std::vector<double>& values);

}  // namespace detail

/// h_{A,D} sampled on the bounding box of D. Nodes outside D hold 1, nodes in
/// A hold 0, and the rest solve the Shortley-Weller discrete Laplace equation
/// with those Dirichlet data.
class ExtremalField {
 public:
  ExtremalField(PairAD pair, int nx, int ny, std::vector<double> values, double tolerance,
                long sweeps, double residual);

  const PairAD& pair() const { return pair_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double tolerance() const { return tolerance_; }
  long sweeps() const { return sweeps_; }
  double residual() const { return residual_; }
  std::span<const double> values() const { return values_; }

  Complex node(int i, int j) const;
  double at(int i, int j) const { return values_[static_cast<std::size_t>(j) * nx_ + i]; }
  double spacing_x() const { return hx_; }
  double spacing_y() const { return hy_; }

  /// Bilinear interpolation clamped to [0, 1]; exactly 0 on A.
  double interpolate(Complex zeta) const;

 private:
  PairAD pair_;
  int nx_, ny_;
  double x0_, y0_, hx_, hy_;
  std::vector<double> values_;
  std::vector<detail::CornerTerm> corners_;
  double tolerance_;
  long sweeps_;
  double residual_;
};

ExtremalField h_grid_solve(const PairAD& pair, const GridSpec& spec = {});

/// Evaluation with a strategy. `field` is required for Strategy::Field and
/// used by Strategy::Auto when the pair has no closed form.
double h_eval(const PairAD& pair, Complex zeta, Strategy strategy,
              const ExtremalField* field = nullptr);

/// Relative extremal function of a product base in a product domain.
double h_product_max(std::span<const double> values);

/// CSV with header "x,y,h", rows of constant y, 17 significant digits.
void write_field_csv(std::ostream& os, const ExtremalField& field);
ExtremalField read_field_csv(std::istream& is, const PairAD& pair);

}  // namespace crosshull
