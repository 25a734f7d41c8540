#include "crosshull/multi_index.hpp"

#include <algorithm>
#include <bit>

namespace crosshull {

MultiIndex::MultiIndex(int size, std::uint32_t mask) : size_(size), mask_(mask) {
  if (size < 0 || size > kMaxFactors) fail(ErrorKind::InvalidArgument, "multi-index length out of range");
  if (size < 32 && (mask >> size) != 0u) fail(ErrorKind::InvalidArgument, "multi-index has stray bits");
}

MultiIndex MultiIndex::parse(std::string_view bits) {
  if (bits.empty() || bits.size() > kMaxFactors) fail(ErrorKind::Parse, "bad multi-index length");
  std::uint32_t mask = 0;
  for (std::size_t j = 0; j < bits.size(); ++j) {
    if (bits[j] == '1') {
      mask |= 1u << j;
    } else if (bits[j] != '0') {
      fail(ErrorKind::Parse, "multi-index must be a string of 0/1");
    }
  }
  return MultiIndex(static_cast<int>(bits.size()), mask);
}

int MultiIndex::weight() const { return std::popcount(mask_); }

std::string MultiIndex::str() const {
  std::string s(size_, '0');
  for (int j = 0; j < size_; ++j) {
    if ((*this)[j]) s[j] = '1';
  }
  return s;
}

std::strong_ordering MultiIndex::operator<=>(const MultiIndex& other) const {
  if (size_ != other.size_) return size_ <=> other.size_;
  for (int j = 0; j < size_; ++j) {
    if ((*this)[j] != other[j]) return (*this)[j] ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  return std::strong_ordering::equal;
}

std::vector<MultiIndex> gen_family(int n, int k, Family which) {
  if (n < 1 || n > kMaxFactors) fail(ErrorKind::BadOrder, "number of factors out of range");
  if (k < 1 || k > n) fail(ErrorKind::BadOrder, "order k must satisfy 1 <= k <= N");
  std::vector<MultiIndex> out;
  for (std::uint32_t m = 0; m < (1u << n); ++m) {
    const int w = std::popcount(m);
    if (w == k || (which == Family::J && w >= 1 && w <= k)) out.emplace_back(n, m);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Point merge(const MultiIndex& alpha, std::span<const Complex> c0, std::span<const Complex> c1) {
  const int ones = alpha.weight();
  if (static_cast<int>(c1.size()) != ones || static_cast<int>(c0.size()) != alpha.size() - ones) {
    fail(ErrorKind::LengthMismatch, "sub-point lengths do not match the multi-index");
  }
  Point z;
  z.reserve(alpha.size());
  std::size_t i0 = 0, i1 = 0;
  for (int j = 0; j < alpha.size(); ++j) z.push_back(alpha[j] ? c1[i1++] : c0[i0++]);
  return z;
}

Point project(std::span<const Complex> z, const MultiIndex& alpha, int side) {
  if (static_cast<int>(z.size()) != alpha.size()) {
    fail(ErrorKind::LengthMismatch, "point length does not match the multi-index");
  }
  Point out;
  for (int j = 0; j < alpha.size(); ++j) {
    if (static_cast<int>(alpha[j]) == side) out.push_back(z[j]);
  }
  return out;
}

}  // namespace crosshull
