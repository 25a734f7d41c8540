#include "crosshull/sampling.hpp"

#include <cmath>
#include <numbers>

namespace crosshull {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::size_t Rng::below(std::size_t n) {
  if (n == 0) fail(ErrorKind::InvalidArgument, "below(0)");
  return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
}

Complex Rng::unit_direction() { return std::polar(1.0, 2.0 * std::numbers::pi * uniform()); }

Complex Rng::in_disc(const Disc& d, double shrink) {
  const double r = d.radius * shrink * std::sqrt(uniform());
  return d.center + r * unit_direction();
}

Complex Rng::in_base(const BaseSet& a) {
  const auto& piece = a.pieces[below(a.pieces.size())];
  if (const auto* s = std::get_if<Segment>(&piece)) {
    // Open segment, so endpoints on the circle are never drawn.
    double t = uniform();
    while (t == 0.0) t = uniform();
    return s->a + t * (s->b - s->a);
  }
  const auto& c = std::get<ClosedDisc>(piece);
  return c.center + c.radius * std::sqrt(uniform()) * unit_direction();
}

Point sample_mixed(const CrossSpec& spec, Rng& rng) {
  Point z(spec.size());
  for (int j = 0; j < spec.size(); ++j) {
    const PairAD& p = spec.pair(j);
    z[j] = rng.coin() ? rng.in_base(p.base()) : rng.in_disc(p.domain());
  }
  return z;
}

Point sample_branch(const CrossSpec& spec, const MultiIndex& alpha, Rng& rng) {
  const SigmaSet* sigma = spec.sigma(alpha);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Point z(spec.size());
    for (int j = 0; j < spec.size(); ++j) {
      const PairAD& p = spec.pair(j);
      z[j] = alpha[j] ? rng.in_disc(p.domain()) : rng.in_base(p.base());
    }
    if (!sigma || !sigma->contains(project(z, alpha, 0))) return z;
  }
  fail(ErrorKind::SamplingExhausted, "branch " + alpha.str() + " is covered by its sigma set");
}

std::vector<Point> sample_cross(const CrossSpec& spec, std::size_t count, Rng& rng) {
  std::vector<Point> out;
  out.reserve(count);
  const auto& fam = spec.family();
  for (std::size_t i = 0; i < count; ++i) out.push_back(sample_branch(spec, fam[i % fam.size()], rng));
  return out;
}

}  // namespace crosshull
