#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crosshull/geometry.hpp"

namespace crosshull {

/// A point of D_1 x ... x D_N (or of any sub-product).
using Point = std::vector<Complex>;

inline constexpr int kMaxFactors = 16;

/// alpha in {0,1}^N stored as a bitmask; bit j is alpha_{j+1}.
class MultiIndex {
 public:
  MultiIndex() = default;
  MultiIndex(int size, std::uint32_t mask);

  /// Parses a bit-string such as "011" (first character is alpha_1).
  static MultiIndex parse(std::string_view bits);

  int size() const { return size_; }
  std::uint32_t mask() const { return mask_; }
  bool operator[](int j) const { return (mask_ >> j) & 1u; }
  int weight() const;
  std::string str() const;

  /// Lexicographic order on the bit vector (alpha_1 most significant).
  std::strong_ordering operator<=>(const MultiIndex& other) const;
  bool operator==(const MultiIndex& other) const = default;

 private:
  int size_ = 0;
  std::uint32_t mask_ = 0;
};

enum class Family { I, J };

/// I = {|alpha| = k}, J = {1 <= |alpha| <= k}; lexicographically sorted.
std::vector<MultiIndex> gen_family(int n, int k, Family which);

/// Places c0 on the zero positions of alpha and c1 on the one positions.
Point merge(const MultiIndex& alpha, std::span<const Complex> c0, std::span<const Complex> c1);

/// Ordered coordinates of z at the positions where alpha equals `side`.
Point project(std::span<const Complex> z, const MultiIndex& alpha, int side);

}  // namespace crosshull
