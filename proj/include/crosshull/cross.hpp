#pragma once

#include <map>
#include <span>
#include <string_view>
#include <vector>

#include "crosshull/analytic_set.hpp"
#include "crosshull/geometry.hpp"
#include "crosshull/multi_index.hpp"

namespace crosshull {

enum class Variant { X, T, Y };

std::string_view to_string(Variant v);

/// N factor pairs, an order k, and (for T/Y) the singularity sets Sigma_alpha,
/// each living in the product of the alpha-zero factors.
class CrossSpec {
 public:
  const std::vector<PairAD>& pairs() const { return pairs_; }
  const PairAD& pair(int j) const { return pairs_.at(j); }
  int size() const { return static_cast<int>(pairs_.size()); }
  int k() const { return k_; }
  Variant variant() const { return variant_; }
  const std::map<MultiIndex, SigmaSet>& sigmas() const { return sigmas_; }

  /// Sigma_alpha, or nullptr when none was given (treated as empty).
  const SigmaSet* sigma(const MultiIndex& alpha) const;

  /// I for X and T, J for Y.
  const std::vector<MultiIndex>& family() const { return family_; }

  /// Same factors and sigmas at a different order and variant.
  CrossSpec with(int k, Variant variant) const;

 private:
  friend CrossSpec make_cross(std::vector<PairAD>, int, Variant, std::map<MultiIndex, SigmaSet>);
  CrossSpec() = default;

  std::vector<PairAD> pairs_;
  int k_ = 1;
  Variant variant_ = Variant::X;
  std::map<MultiIndex, SigmaSet> sigmas_;
  std::vector<MultiIndex> family_;
};

/// Validates 1 <= k <= N and that sigma keys belong to I (T) or J (Y); X takes
/// no sigmas.
CrossSpec make_cross(std::vector<PairAD> pairs, int k, Variant variant,
                     std::map<MultiIndex, SigmaSet> sigmas = {});

enum class BlockReason { ACoordinateMiss, SigmaHit };

std::string_view to_string(BlockReason r);

struct Blocked {
  MultiIndex alpha;
  BlockReason reason;
};

struct MembershipReport {
  bool member = false;
  std::vector<MultiIndex> witnesses;
  std::vector<Blocked> blocked;
};

/// Throws OutsideAmbient unless every z_j lies in D_j.
void require_ambient(const CrossSpec& spec, std::span<const Complex> z);

MembershipReport in_cross(const CrossSpec& spec, std::span<const Complex> z);
bool in_center(const CrossSpec& spec, std::span<const Complex> z);

/// Membership in X_{N,k} and in X(X_{N-1,k-1}, A_N; X_{N-1,k}, D_N).
struct DecomposeResult {
  bool lhs = false;
  bool rhs = false;
};
DecomposeResult decompose_check(const CrossSpec& spec, std::span<const Complex> z);

/// Membership in the N-fold cross: union over j of A'_j x D_j x A''_j.
bool nfold_cross_contains(std::span<const PairAD> pairs, std::span<const Complex> z);

/// Polyline from z to a center point. Uses the lexicographically first
/// witness, slides its D-coordinates straight to the base anchors and stops
/// there. A point already in the center gives a single vertex.
std::vector<Point> path_to_center(const CrossSpec& spec, std::span<const Complex> z);

}  // namespace crosshull
