#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crosshull/cross.hpp"
#include "crosshull/hull.hpp"
#include "crosshull/polynomial.hpp"
#include "crosshull/singular.hpp"

namespace crosshull {

/// Deterministic black box; std::nullopt marks an undefined value.
using Evaluator = std::function<std::optional<Complex>(std::span<const Complex>)>;

struct SampledFunction {
  std::string name;
  Evaluator eval;
  CrossSpec domain;
  std::optional<MSpec> exclusion;  // where eval may return nullopt

  bool excluded(std::span<const Complex> z) const { return exclusion && exclusion->contains(z); }
};

struct FiberCheck {
  MultiIndex alpha;
  Point anchor;          // a in the alpha-zero factors
  bool excluded = false;  // f is undefined on the whole fiber
  double residual = 0.0;
};

struct BranchSummary {
  MultiIndex alpha;
  double max_residual = 0.0;
  int fibers = 0;
  int excluded_fibers = 0;
};

struct SepHoloReport {
  std::vector<FiberCheck> fibers;
  std::vector<BranchSummary> branches;
  double max_residual = 0.0;
  double threshold = 1e-6;
  bool pass = false;
  /// Heuristic modulus-of-continuity estimate in the A-variables (class O^c).
  double continuity_modulus = 0.0;
};

struct SepHoloOptions {
  int resolution = 64;        // points per Cauchy circle, >= 8
  int anchors_per_branch = 3;
  int probes_per_fiber = 4;   // random circle centres per D-variable
  double threshold = 1e-6;
  std::uint64_t seed = 1;
  std::vector<std::pair<MultiIndex, Point>> extra_anchors;
};

/// For every branch alpha and sampled anchors a, the Laurent coefficient c_{-1}
/// of each fiber map on small circles around random centres; it vanishes for
/// holomorphic fibers. Residual = |c_{-1}| / r / max(1, max |f| on the circle).
SepHoloReport check_sep_holo(const SampledFunction& f, const SepHoloOptions& opt = {});

struct FitOptions {
  std::vector<int> degrees;          // per coordinate
  std::optional<int> total_degree;   // optional cap on |m|
  std::size_t budget = 0;            // minimum sample count; 0 = base grid
  std::uint64_t seed = 1;
  double fit_radius = 1.0;           // samples drawn from the rho-shrunken cross
  double max_condition = 1e12;
};

/// Polynomial in the normalized coordinates w_j = (z_j - c_j) / R_j.
struct PolyExtension {
  std::vector<Disc> frames;
  std::vector<int> degrees;
  int total_degree = 0;
  std::vector<std::vector<int>> exponents;
  std::vector<Complex> coeffs;

  double fit_radius = 1.0;
  std::size_t samples = 0;
  std::size_t dropped = 0;
  double residual_max = 0.0;
  double residual_rms = 0.0;
  double data_scale = 0.0;  // max |f| over the samples
  double condition = 0.0;   // estimate for the Jacobi-scaled normal matrix

  Complex eval(std::span<const Complex> z) const;
  /// Coefficient of prod z_j^m_j (only meaningful for unit discs at 0).
  Complex coefficient(std::span<const int> m) const;
};

PolyExtension extend_poly(const SampledFunction& f, const FitOptions& opt);

struct RationalExtension {
  PolyExtension numerator;
  Polynomial denominator;
  AnalyticSet mhat;                  // {p = 0}, to be read inside the hull
  std::vector<Point> mhat_samples;   // sampled points of {p = 0} inside the hull
  bool mhat_empty = true;            // no sampled point of {p = 0} in the hull
  bool mhat_cross_in_exclusion = true;

  std::optional<Complex> eval(std::span<const Complex> z) const;
};

/// Fits g = p * f by extend_poly and returns g / p.
RationalExtension extend_rational(const SampledFunction& f, const Polynomial& p, const FitOptions& opt,
                                  const HullEvaluator& hull);

/// Points of {p = 0} in the hull, found by solving p for one coordinate with
/// the others drawn by the hull sampler.
std::vector<Point> sample_zero_set_in_hull(const Polynomial& p, const HullEvaluator& hull, std::size_t count,
                                           Rng& rng);

struct BlowUp {
  Point base;
  double distance;
  double magnitude;
};

/// |ext| at z* + delta e_j for each sampled z* of M-hat.
std::vector<BlowUp> probe_blow_up(const RationalExtension& ext, double delta);

struct ErrorStats {
  std::size_t count = 0;
  double max_abs = 0.0;
  double mean_abs = 0.0;
  double max_rel = 0.0;
  double mean_rel = 0.0;
};

ErrorStats compare_on_hull(const Evaluator& ext, const Evaluator& oracle, std::span<const Point> samples);

/// Hull samples pulled toward the origin of each normalized coordinate.
std::vector<Point> shrink_toward_center(const CrossSpec& spec, std::span<const Point> samples, double factor);

void write_extension_json(std::ostream& os, const PolyExtension& ext);

/// Built-in test functions addressed by name:
///   poly[:SEED]        random coefficients, multi-degree <= (2,...,2)
///   mixed              z1 + z2 * ... * zN
///   exp                exp((z1 + z2 * ... * zN) / 2)
///   inv-sum:C          1 / (C - z1 - ... - zN)
///   rational:C         1 / (z1 + z2 - C), denominator z1 + z2 - C
///   rational-mono:C    zN / (z1 + z2 - C)
///   conj:J             conj(z_J)
///   pole:J:W           1 / (z_J - W), W real or "RE,IM"
struct TestFunction {
  SampledFunction f;
  std::optional<Polynomial> denominator;
  std::optional<Polynomial> known;  // exact polynomial, when f is one
  bool holomorphic = true;
};

TestFunction make_test_function(const std::string& name, const CrossSpec& spec);

}  // namespace crosshull
