#pragma once

#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include "crosshull/cross.hpp"
#include "crosshull/extremal.hpp"
#include "crosshull/sampling.hpp"

namespace crosshull {

enum class Verdict { Inside, Outside, Indeterminate };

std::string_view to_string(Verdict v);

/// Evaluates sum_j h_{A_j,D_j}(z_j) with a strategy per factor. Decisions made
/// from field values within `margin` of a threshold are Indeterminate;
/// closed-form decisions are always strict.
class HullEvaluator {
 public:
  explicit HullEvaluator(CrossSpec spec, Strategy strategy = Strategy::Auto, double margin = 1e-6);

  const CrossSpec& spec() const { return spec_; }
  double margin() const { return margin_; }
  Strategy strategy(int j) const { return strategies_.at(j); }
  const ExtremalField* field(int j) const { return fields_.at(j).get(); }

  void set_strategy(int j, Strategy s);
  void set_field(int j, std::shared_ptr<const ExtremalField> field);
  /// Solves a grid for every factor that will need one.
  void prepare_fields(const GridSpec& grid = {});

  /// True when factor j is evaluated through an interpolated field.
  bool uses_field(int j) const;
  bool exact() const;

  double h(int j, Complex zeta) const;
  std::vector<double> h_all(std::span<const Complex> z) const;

  /// Throws OutsideAmbient unless every z_j is in D_j.
  double hull_value(std::span<const Complex> z) const;
  Verdict in_hull(std::span<const Complex> z) const;
  bool in_hull_strict(std::span<const Complex> z) const { return in_hull(z) == Verdict::Inside; }

  /// max{0, sum h - k + 1}; NotInHull unless sum h < k.
  double lemma_inc_value(std::span<const Complex> z) const;

  /// value < threshold, with the margin rule applied.
  Verdict compare(double value, double threshold) const;

 private:
  CrossSpec spec_;
  double margin_;
  std::vector<Strategy> strategies_;
  std::vector<std::shared_ptr<const ExtremalField>> fields_;
};

double hull_value(const CrossSpec& spec, std::span<const Complex> z);
bool in_hull(const CrossSpec& spec, std::span<const Complex> z);
double lemma_inc_value(const CrossSpec& spec, std::span<const Complex> z);

/// Two-fold composite hull built from the split (other factors | factor s).
/// Zs: X(c(X_{N-1,k}), A_s; hull X_{N-1,k}, D_s), value max_{j!=s} h_j + h_s.
/// Z:  X(X_{N-1,k-1}, A_s; hull X_{N-1,k}, D_s),
///     value max{0, sum_{j!=s} h_j - k + 1} + h_s.
/// Membership is value < 1.
struct CompositeHull2 {
  enum class Kind { Zs, Z };
  Kind kind = Kind::Z;
  int s = 0;  // zero-based index of the split factor
};

CompositeHull2 make_composite(const CrossSpec& spec, CompositeHull2::Kind kind, int s);

/// NotInHull when the remaining coordinates leave hull X_{N-1,k}.
double composite_hull2_value(const HullEvaluator& ev, const CompositeHull2& c, std::span<const Complex> z);
Verdict in_composite(const HullEvaluator& ev, const CompositeHull2& c, std::span<const Complex> z);

/// Rejection sampling from sample_mixed; SamplingExhausted after
/// `max_tries` draws without filling the request.
std::vector<Point> sample_hull(const HullEvaluator& ev, std::size_t count, Rng& rng,
                               std::size_t max_tries = 0);
std::vector<Point> sample_hull(const HullEvaluator& ev, std::size_t count, std::uint64_t seed);

struct SliceNode {
  Complex zeta;
  double value;
};

/// hull_value over an n-by-n lattice on the bounding box of D_j with the other
/// coordinates frozen at `fixed`; nodes outside D_j are omitted.
std::vector<SliceNode> slice_grid(const HullEvaluator& ev, int j, std::span<const Complex> fixed,
                                  int resolution);
void write_slice_csv(std::ostream& os, std::span<const SliceNode> nodes);

}  // namespace crosshull
