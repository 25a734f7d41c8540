#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "crosshull/extremal.hpp"
#include "crosshull/geometry.hpp"

using namespace crosshull;
using namespace std::complex_literals;

namespace {

const Disc kUnit = make_disc({0, 0}, 1);

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("make_pair accepts the catalog and rejects points") {
  CHECK_NOTHROW(make_pair(interval(-1, 1), kUnit));
  CHECK_NOTHROW(make_pair(closed_subdisc({0, 0}, 0.25), kUnit));
  CHECK(kind_of([] { make_pair(segment(0.2, 0.2), kUnit); }) == ErrorKind::InvalidBase);
  CHECK(kind_of([] { make_pair(closed_subdisc(0.1, 0.0), kUnit); }) == ErrorKind::InvalidBase);
  CHECK(kind_of([] { make_pair(BaseSet{}, kUnit); }) == ErrorKind::InvalidBase);
  CHECK(kind_of([] { make_pair(interval(-1.5, 0.5), kUnit); }) == ErrorKind::InvalidBase);
  CHECK(kind_of([] { make_pair(closed_subdisc(0.5, 0.6), kUnit); }) == ErrorKind::InvalidBase);
  CHECK(kind_of([] { make_disc(0, -1.0); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { checked_point(NAN, 0); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("domain_contains is exact") {
  CHECK(domain_contains(kUnit, 0));
  CHECK_FALSE(domain_contains(kUnit, 1));
  CHECK_FALSE(domain_contains(kUnit, 1i));
  CHECK(domain_contains(kUnit, 1i / std::sqrt(3.0)));
  CHECK(domain_contains(kUnit, std::nextafter(1.0, 0.0)));
  const Disc d = make_disc({2, -1}, 0.5);
  CHECK(domain_contains(d, Complex(2.49, -1)));
  CHECK_FALSE(domain_contains(d, Complex(2.5, -1)));
}

TEST_CASE("every base point lies in the closure of the domain") {
  const PairAD p = make_pair(interval(-1, 1), kUnit);
  for (double t = -1.0; t <= 1.0; t += 0.125) {
    CHECK(base_contains(p.base(), t));
    CHECK(std::abs(Complex(t)) <= 1.0);
  }
  CHECK(base_anchor(p.base()) == Complex(0, 0));
  CHECK(base_anchor(closed_subdisc(Complex(0.1, 0.2), 0.1)) == Complex(0.1, 0.2));
}

TEST_CASE("identity transport keeps the pair") {
  const PairAD p = make_pair(interval(-1, 1), kUnit);
  const PairAD q = mobius_transport(p, {});
  for (double t : {-1.0, -0.5, 0.0, 0.7, 1.0}) CHECK(base_contains(q.base(), t));
  CHECK_FALSE(base_contains(q.base(), 0.3i));
}

TEST_CASE("rotation by a right angle turns the diameter vertical") {
  const PairAD p = make_pair(interval(-1, 1), kUnit);
  const PairAD q = mobius_transport(p, {std::numbers::pi / 2, 0});
  for (double t : {-0.9, -0.3, 0.0, 0.5, 0.99}) {
    CHECK(base_contains(q.base(), Complex(0, t)));
    CHECK_FALSE(base_contains(q.base(), Complex(t == 0.0 ? 0.4 : t, 0.0)));
  }
  CHECK(has_closed_form(q));
  CHECK(h_closed_form(q, 0.5) == doctest::Approx(h_closed_form(p, 0.5i)).epsilon(1e-14));
}

TEST_CASE("a shift off the real axis bends the diameter") {
  const PairAD p = make_pair(interval(-1, 1), kUnit);
  CHECK(kind_of([&] { mobius_transport(p, {0.0, Complex(0.1, 0.2)}); }) == ErrorKind::UnsupportedMap);
  CHECK(kind_of([&] { mobius_transport(p, {0.0, Complex(1.0, 0.0)}); }) == ErrorKind::UnsupportedMap);
  // A real shift maps (-1,1) onto itself.
  const PairAD q = mobius_transport(p, {0.0, 0.3});
  CHECK(base_contains(q.base(), -0.95));
  CHECK(base_contains(q.base(), 0.95));
}

TEST_CASE("automorphisms are bijections of the disc") {
  std::mt19937_64 eng(7);
  std::uniform_real_distribution<double> u(-0.7, 0.7);
  const DiscAutomorphism phi{1.1, Complex(0.3, -0.2)};
  for (int n = 0; n < 200; ++n) {
    const Complex z(u(eng), u(eng));
    const Complex w = apply_automorphism(kUnit, phi, z);
    CHECK(std::abs(w) < 1.0);
    // Pseudo-hyperbolic distance to the shift is preserved: |phi(z)| = |(z-a)/(1-conj(a)z)|.
    const Complex a = phi.shift;
    CHECK(std::abs(w) == doctest::Approx(std::abs((z - a) / (1.0 - std::conj(a) * z))).epsilon(1e-13));
  }
  // General disc: the affine normalization is undone.
  const Disc d = make_disc({2, 1}, 3);
  const Complex w = apply_automorphism(d, {0.0, 0.0}, Complex(2.5, 1.5));
  CHECK(std::abs(w - Complex(2.5, 1.5)) < 1e-14);
}

TEST_CASE("conformal invariance of h under subdisc transport") {
  // Closed form on the concentric pair against the grid solution on the
  // transported, off-centre pair.
  const PairAD p = make_pair(closed_subdisc(0, 0.25), kUnit);
  const DiscAutomorphism phi{0.0, 0.3};
  const PairAD q = mobius_transport(p, phi);
  CHECK_FALSE(has_closed_form(q));
  GridSpec g;
  g.nx = g.ny = 257;
  g.tol = 1e-9;
  const ExtremalField fq = h_grid_solve(q, g);
  const ExtremalField fp = h_grid_solve(p, g);

  std::mt19937_64 eng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_closed = 0.0, worst_grid = 0.0;
  for (int n = 0; n < 200; ++n) {
    const double r = 0.9 * std::sqrt(u(eng)), t = 2 * std::numbers::pi * u(eng);
    const Complex z = std::polar(r, t);
    const Complex w = apply_automorphism(kUnit, phi, z);
    worst_closed = std::max(worst_closed, std::abs(h_closed_form(p, z) - fq.interpolate(w)));
    worst_grid = std::max(worst_grid, std::abs(fp.interpolate(z) - fq.interpolate(w)));
  }
  CHECK(worst_closed <= 5e-3);
  CHECK(worst_grid <= 5e-3);
}
