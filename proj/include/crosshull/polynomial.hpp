#pragma once

#include <optional>
#include <span>
#include <vector>

#include "crosshull/geometry.hpp"

namespace crosshull {

inline constexpr int kMaxPolyDegree = 8;

struct Monomial {
  std::vector<int> exps;  // one exponent per entry of Polynomial::vars()
  Complex coeff;
};

/// Sparse polynomial in the coordinates listed by `vars` (indices into the
/// point it is evaluated on). Like terms are merged and zero terms dropped.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::vector<int> vars, std::vector<Monomial> terms);

  const std::vector<int>& vars() const { return vars_; }
  const std::vector<Monomial>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  int total_degree() const;

  Complex eval(std::span<const Complex> point) const;
  /// Sum of |c * z^m| over the terms; the natural scale for |p(z)|.
  double magnitude(std::span<const Complex> point) const;
  /// |p(z)| <= 1e-12 * (1 + magnitude).
  bool vanishes_at(std::span<const Complex> point) const;

  /// Substitutes values[v] for every variable v that has one and renames the
  /// others to rename[v]. Terms cancelling to rounding level are dropped.
  Polynomial substitute(std::span<const std::optional<Complex>> values,
                        std::span<const int> rename) const;

  /// Roots of a polynomial in a single variable (companion matrix).
  std::vector<Complex> roots() const;

 private:
  std::vector<int> vars_;
  std::vector<Monomial> terms_;
};

/// z_{v1} + ... + z_{vm} - c, the linear forms used throughout the tests.
Polynomial linear_sum(std::vector<int> vars, Complex c);

}  // namespace crosshull
