#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "crosshull/cross.hpp"

namespace crosshull {

/// The one seeded generator. Doubles are built from raw engine output so the
/// streams are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();                  // [0, 1)
  double uniform(double lo, double hi);
  std::size_t below(std::size_t n);  // [0, n)
  bool coin() { return (engine_() >> 63) != 0; }
  Complex unit_direction();          // uniform on the unit circle

  /// Area-uniform point of the open disc (radius shrunk by `shrink`).
  Complex in_disc(const Disc& d, double shrink = 1.0);
  /// Uniform point of a randomly chosen piece of A.
  Complex in_base(const BaseSet& a);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// Coordinate j from A_j with probability 1/2, otherwise uniform in D_j.
Point sample_mixed(const CrossSpec& spec, Rng& rng);

/// A cross point on branch alpha: A-coordinates where alpha is 0, D-coordinates
/// where it is 1. For T/Y, redraws until z_alpha avoids Sigma_alpha.
Point sample_branch(const CrossSpec& spec, const MultiIndex& alpha, Rng& rng);

/// `count` cross points cycling through the family (stratified by branch).
std::vector<Point> sample_cross(const CrossSpec& spec, std::size_t count, Rng& rng);

}  // namespace crosshull
