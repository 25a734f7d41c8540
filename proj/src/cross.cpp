#include "crosshull/cross.hpp"

#include <algorithm>

namespace crosshull {

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::X: return "X";
    case Variant::T: return "T";
    case Variant::Y: return "Y";
  }
  return "?";
}

std::string_view to_string(BlockReason r) {
  return r == BlockReason::SigmaHit ? "sigma-hit" : "A-coordinate-miss";
}

const SigmaSet* CrossSpec::sigma(const MultiIndex& alpha) const {
  const auto it = sigmas_.find(alpha);
  return it == sigmas_.end() ? nullptr : &it->second;
}

CrossSpec CrossSpec::with(int k, Variant variant) const {
  std::map<MultiIndex, SigmaSet> kept;
  if (variant != Variant::X) {
    for (const auto& [alpha, s] : sigmas_) {
      const int w = alpha.weight();
      if (w == k || (variant == Variant::Y && w >= 1 && w <= k)) kept.emplace(alpha, s);
    }
  }
  return make_cross(pairs_, k, variant, std::move(kept));
}

CrossSpec make_cross(std::vector<PairAD> pairs, int k, Variant variant,
                     std::map<MultiIndex, SigmaSet> sigmas) {
  const int n = static_cast<int>(pairs.size());
  if (n < 1 || n > kMaxFactors) fail(ErrorKind::BadOrder, "number of factors out of range");
  if (k < 1 || k > n) fail(ErrorKind::BadOrder, "order k must satisfy 1 <= k <= N");
  if (variant == Variant::X && !sigmas.empty()) {
    fail(ErrorKind::InvalidArgument, "variant X takes no singularity sets");
  }
  for (const auto& [alpha, s] : sigmas) {
    if (alpha.size() != n) fail(ErrorKind::LengthMismatch, "sigma key length != N");
    const int w = alpha.weight();
    const bool ok = variant == Variant::T ? w == k : (w >= 1 && w <= k);
    if (!ok) fail(ErrorKind::InvalidArgument, "sigma key " + alpha.str() + " is outside the family");
    if (s.dim() != n - w) fail(ErrorKind::DimensionMismatch, "sigma set for " + alpha.str() + " has wrong dimension");
    if (s.kind() == SetKind::Full) fail(ErrorKind::InvalidArgument, "sigma set must be pluripolar");
    for (const auto& p : s.list()) {
      std::size_t i = 0;
      for (int j = 0; j < n; ++j) {
        if (alpha[j]) continue;
        if (!base_contains(pairs[j].base(), p[i++])) {
          fail(ErrorKind::InvalidArgument, "sigma point for " + alpha.str() + " is not in the base product");
        }
      }
    }
  }
  CrossSpec spec;
  spec.pairs_ = std::move(pairs);
  spec.k_ = k;
  spec.variant_ = variant;
  spec.sigmas_ = std::move(sigmas);
  spec.family_ = gen_family(n, k, variant == Variant::Y ? Family::J : Family::I);
  return spec;
}

void require_ambient(const CrossSpec& spec, std::span<const Complex> z) {
  if (static_cast<int>(z.size()) != spec.size()) fail(ErrorKind::LengthMismatch, "point length != N");
  for (int j = 0; j < spec.size(); ++j) {
    if (!domain_contains(spec.pair(j).domain(), z[j])) {
      fail(ErrorKind::OutsideAmbient, "coordinate " + std::to_string(j + 1) + " lies outside its domain");
    }
  }
}

MembershipReport in_cross(const CrossSpec& spec, std::span<const Complex> z) {
  require_ambient(spec, z);
  const int n = spec.size();
  std::vector<bool> in_a(n);
  for (int j = 0; j < n; ++j) in_a[j] = base_contains(spec.pair(j).base(), z[j]);

  MembershipReport report;
  for (const auto& alpha : spec.family()) {
    bool miss = false;
    for (int j = 0; j < n && !miss; ++j) miss = !alpha[j] && !in_a[j];
    if (miss) {
      report.blocked.push_back({alpha, BlockReason::ACoordinateMiss});
      continue;
    }
    if (const SigmaSet* s = spec.sigma(alpha); s && s->contains(project(z, alpha, 0))) {
      report.blocked.push_back({alpha, BlockReason::SigmaHit});
      continue;
    }
    report.witnesses.push_back(alpha);
  }
  report.member = !report.witnesses.empty();
  return report;
}

bool in_center(const CrossSpec& spec, std::span<const Complex> z) {
  if (static_cast<int>(z.size()) != spec.size()) return false;
  for (int j = 0; j < spec.size(); ++j) {
    const PairAD& p = spec.pair(j);
    if (!domain_contains(p.domain(), z[j]) || !base_contains(p.base(), z[j])) return false;
  }
  return in_cross(spec, z).member;
}

DecomposeResult decompose_check(const CrossSpec& spec, std::span<const Complex> z) {
  const int n = spec.size();
  const int k = spec.k();
  if (spec.variant() != Variant::X) fail(ErrorKind::InvalidArgument, "decomposition needs variant X");
  if (n <= 2 || k < 2 || k > n - 1) fail(ErrorKind::BadOrder, "decomposition needs N > 2 and 2 <= k <= N-1");
  DecomposeResult r;
  r.lhs = in_cross(spec, z).member;
  std::vector<PairAD> head(spec.pairs().begin(), spec.pairs().end() - 1);
  const auto lo = make_cross(head, k - 1, Variant::X);
  const auto hi = make_cross(std::move(head), k, Variant::X);
  const auto zh = z.first(n - 1);
  const bool last_in_a = base_contains(spec.pair(n - 1).base(), z[n - 1]);
  r.rhs = in_cross(lo, zh).member || (last_in_a && in_cross(hi, zh).member);
  return r;
}

bool nfold_cross_contains(std::span<const PairAD> pairs, std::span<const Complex> z) {
  if (z.size() != pairs.size()) fail(ErrorKind::LengthMismatch, "point length != N");
  const std::size_t n = pairs.size();
  for (std::size_t j = 0; j < n; ++j) {
    if (!domain_contains(pairs[j].domain(), z[j])) fail(ErrorKind::OutsideAmbient, "coordinate outside its domain");
  }
  for (std::size_t free = 0; free < n; ++free) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) ok = i == free || base_contains(pairs[i].base(), z[i]);
    if (ok) return true;
  }
  return false;
}

std::vector<Point> path_to_center(const CrossSpec& spec, std::span<const Complex> z) {
  const auto report = in_cross(spec, z);
  if (!report.member) fail(ErrorKind::NotMember, "point is not in the cross");
  Point start(z.begin(), z.end());
  if (in_center(spec, z)) return {start};
  const MultiIndex& alpha = report.witnesses.front();
  Point end = start;
  for (int j = 0; j < spec.size(); ++j) {
    if (alpha[j] && !base_contains(spec.pair(j).base(), z[j])) end[j] = base_anchor(spec.pair(j).base());
  }
  return {start, end};
}

}  // namespace crosshull
