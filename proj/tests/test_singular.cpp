#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "crosshull/scene.hpp"
#include "crosshull/singular.hpp"

using namespace crosshull;
using namespace std::complex_literals;

namespace {

const Disc kUnit = make_disc({0, 0}, 1);

CrossSpec unit_cross(int n, int k, Variant v = Variant::X, std::map<MultiIndex, SigmaSet> sigmas = {}) {
  std::vector<PairAD> pairs(n, make_pair(interval(-1, 1), kUnit));
  return make_cross(std::move(pairs), k, v, std::move(sigmas));
}

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

TEST_CASE("polynomial basics") {
  // 2 z0^2 z1 - 3 z1 + 1, with a duplicate term that merges away.
  const Polynomial p({0, 1}, {{{2, 1}, 2.0}, {{0, 1}, -3.0}, {{0, 0}, 1.0}, {{1, 0}, 1.0}, {{1, 0}, -1.0}});
  CHECK(p.terms().size() == 3);
  CHECK(p.total_degree() == 3);
  CHECK_FALSE(p.is_constant());
  const Point z{0.5i, 2.0};
  CHECK(std::abs(p.eval(z) - (2.0 * (0.5i * 0.5i) * 2.0 - 6.0 + 1.0)) < 1e-15);
  CHECK(Polynomial({0}, {{{0}, 4.0}}).is_constant());
  CHECK(Polynomial({0}, {{{1}, 1.0}, {{1}, -1.0}}).is_zero());
  CHECK(kind_of([] { Polynomial({0}, {{{9}, 1.0}}); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { Polynomial({0, 0}, {}); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("univariate roots") {
  // (z - 0.5)(z + 0.25i)(z - 2) expanded by hand.
  const Complex a = 0.5, b = -0.25i, c = 2.0;
  const Polynomial p({0}, {{{3}, 1.0}, {{2}, -(a + b + c)}, {{1}, a * b + a * c + b * c}, {{0}, -a * b * c}});
  auto r = p.roots();
  REQUIRE(r.size() == 3);
  for (Complex want : {a, b, c}) {
    const auto it = std::min_element(r.begin(), r.end(),
                                     [&](Complex x, Complex y) { return std::abs(x - want) < std::abs(y - want); });
    CHECK(std::abs(*it - want) < 1e-12);
  }
  CHECK(linear_sum({0}, 0.3).roots() == std::vector<Complex>{0.3});
}

TEST_CASE("substitution") {
  const Polynomial p = linear_sum({0, 1, 2}, 3.0);
  const std::optional<Complex> vals[] = {1.0, std::nullopt, 0.5i};
  const int rename[] = {0, 0, 0};
  const Polynomial q = p.substitute(vals, rename);
  REQUIRE(q.vars().size() == 1);
  const auto r = q.roots();
  REQUIRE(r.size() == 1);
  CHECK(std::abs(r[0] - (2.0 - 0.5i)) < 1e-15);
}

TEST_CASE("analytic sets") {
  const AnalyticSet e = AnalyticSet::empty(2);
  CHECK_FALSE(e.contains(Point{0, 0}));
  const AnalyticSet pts = AnalyticSet::points(2, {{0.1, 0.2}, {0.1, 0.2}, {0.3, 0.4i}});
  CHECK(pts.list().size() == 2);
  CHECK(pts.contains(Point{0.3, 0.4i}));
  CHECK_FALSE(pts.contains(Point{0.3, 0.41i}));
  const AnalyticSet z = AnalyticSet::zero_set(2, linear_sum({0, 1}, 0.5));
  CHECK(z.contains(Point{0.2, 0.3}));
  CHECK_FALSE(z.contains(Point{0.2, 0.31}));
  CHECK(AnalyticSet::zero_set(2, Polynomial({0}, {{{0}, 2.0}})).kind() == SetKind::Empty);
  CHECK(kind_of([] { AnalyticSet::zero_set(2, Polynomial{}); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { AnalyticSet::points(2, {{0.1}}); }) == ErrorKind::DimensionMismatch);
  CHECK(AnalyticSet::full(1).contains(Point{0.9i}));
}

TEST_CASE("fibers") {
  const CrossSpec x2 = unit_cross(2, 1);
  const MultiIndex a01 = MultiIndex::parse("01");

  const MSpec none = make_mspec(x2, AnalyticSet::empty(2));
  CHECK(fiber(none, Point{0.2}, a01).kind() == SetKind::Empty);

  const MSpec one = make_mspec(x2, AnalyticSet::points(2, {{0.2, 0.7i}}));
  const FiberSet f1 = fiber(one, Point{0.2}, a01);
  REQUIRE(f1.kind() == SetKind::Points);
  CHECK(f1.list() == std::vector<Point>{{0.7i}});
  CHECK(fiber(one, Point{0.25}, a01).kind() == SetKind::Empty);

  const Complex c = 0.6;
  const MSpec line = make_mspec(x2, AnalyticSet::zero_set(2, linear_sum({0, 1}, c)));
  const FiberSet fl = fiber(line, Point{0.2}, a01);
  CHECK(fl.dim() == 1);
  CHECK(fl.contains(Point{c - 0.2}));
  CHECK_FALSE(fl.contains(Point{c}));
  CHECK(is_pluripolar(fl));

  const MSpec vertical = make_mspec(x2, AnalyticSet::zero_set(2, linear_sum({0}, 0.3)));
  const FiberSet full = fiber(vertical, Point{0.3}, a01);
  CHECK(full.kind() == SetKind::Full);
  CHECK_FALSE(is_pluripolar(full));
  CHECK(fiber(vertical, Point{0.4}, a01).kind() == SetKind::Empty);

  CHECK(kind_of([&] { fiber(line, Point{0.2, 0.1}, a01); }) == ErrorKind::DimensionMismatch);
  CHECK(kind_of([&] { make_mspec(x2, AnalyticSet::full(2)); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([&] { make_mspec(x2, AnalyticSet::points(2, {{0.5i, 0.5i}})); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([&] { make_mspec(x2, AnalyticSet::empty(3)); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("pluripolarity classification") {
  CHECK(is_pluripolar(AnalyticSet::empty(2)));
  CHECK(is_pluripolar(AnalyticSet::points(1, {{0.1}})));
  CHECK(is_pluripolar(AnalyticSet::zero_set(2, linear_sum({0, 1}, 0.2))));
  CHECK_FALSE(is_pluripolar(AnalyticSet::full(1)));
}

TEST_CASE("fiber consistency for finite M") {
  const CrossSpec x = unit_cross(3, 2);
  const std::vector<Point> pts{{0.1, 0.2i, 0.3i}, {0.1, 0.5i, -0.4}, {-0.6, 0.2i, 0.3}, {0.0, 0.0, 0.0}};
  const MSpec m = make_mspec(x, AnalyticSet::points(3, pts));
  std::vector<Point> probes = pts;
  probes.push_back({0.1, 0.2i, 0.31i});
  probes.push_back({-0.6, 0.5i, 0.3i});
  std::size_t cases = 0;
  for (std::uint32_t mask = 0; mask < 8; ++mask) {
    const MultiIndex alpha(3, mask);
    for (const Point& p : probes) {
      const Point a = project(p, alpha, 0);
      const FiberSet f = fiber(m, a, alpha);
      for (const Point& q : probes) {
        const Point b = project(q, alpha, 1);
        CHECK(m.contains(merge(alpha, a, b)) == f.contains(b));
        ++cases;
      }
    }
  }
  CHECK(cases == 8 * probes.size() * probes.size());
}

TEST_CASE("fibers of a polynomial M agree with substitution") {
  const CrossSpec x = unit_cross(3, 2);
  const Polynomial p({0, 1, 2}, {{{1, 1, 0}, 1.0}, {{0, 0, 2}, -2.0}, {{0, 0, 0}, 0.1}});
  const AnalyticSet m = AnalyticSet::zero_set(3, p);
  std::mt19937_64 eng(2);
  std::uniform_real_distribution<double> u(-0.8, 0.8);
  for (std::uint32_t mask = 1; mask < 8; ++mask) {
    const MultiIndex alpha(3, mask);
    for (int s = 0; s < 50; ++s) {
      Point z{Complex(u(eng), u(eng)), Complex(u(eng), u(eng)), Complex(u(eng), u(eng))};
      const FiberSet f = fiber(m, project(z, alpha, 0), alpha);
      const Point b = project(z, alpha, 1);
      CHECK(m.contains(z) == f.contains(b));
      if (f.kind() == SetKind::PolyZero) CHECK(is_pluripolar(f));
    }
  }
}

TEST_CASE("delta sets of the sigma example") {
  const Complex s1 = 0.5, s2 = -0.2, s3 = 0.3;
  const Scene t = sigma_example_scene(Variant::T, s1, s2, s3);
  const DeltaSets d = delta_sets(t.spec);
  REQUIRE(d.delta.cylinders.size() == 1);
  const auto& cyl = d.delta.cylinders[0].coords;
  REQUIRE(cyl.size() == 3);
  CHECK(cyl[0] == std::optional<Complex>(s1));
  CHECK(cyl[1] == std::optional<Complex>(s2));
  CHECK(cyl[2] == std::optional<Complex>(s3));
  CHECK(d.delta.contains(Point{s1, s2, s3}));
  CHECK_FALSE(d.delta.contains(Point{s1, s2, 0.0}));
  // The weight-one indices carry no sigma, so the J-intersection is empty.
  CHECK(d.delta_tilde.empty());

  CHECK(delta_sets(unit_cross(3, 2)).delta.empty());
  CHECK(delta_sets(unit_cross(3, 2, Variant::T)).delta.empty());
  std::map<MultiIndex, SigmaSet> partial;
  partial.emplace(MultiIndex::parse("110"), AnalyticSet::points(1, {{s3}}));
  partial.emplace(MultiIndex::parse("101"), AnalyticSet::points(1, {{s2}}));
  partial.emplace(MultiIndex::parse("011"), AnalyticSet::empty(1));
  CHECK(delta_sets(unit_cross(3, 2, Variant::T, partial)).delta.empty());

  std::map<MultiIndex, SigmaSet> poly;
  poly.emplace(MultiIndex::parse("110"), AnalyticSet::zero_set(1, linear_sum({0}, 0.2)));
  CHECK(kind_of([&] { delta_sets(unit_cross(3, 2, Variant::T, poly)); }) == ErrorKind::UnsupportedSigmaKind);
}

TEST_CASE("centre identities against the delta sets") {
  // Y_{2,1} with both weight-one branches thinned, so the J-intersection is a point.
  std::map<MultiIndex, SigmaSet> s;
  s.emplace(MultiIndex::parse("01"), AnalyticSet::points(1, {{0.3}}));
  s.emplace(MultiIndex::parse("10"), AnalyticSet::points(1, {{0.4}}));
  const CrossSpec y = unit_cross(2, 1, Variant::Y, s);
  const DeltaSets d = delta_sets(y);
  CHECK(d.delta_tilde.contains(Point{0.3, 0.4}));
  CHECK_FALSE(in_center(y, Point{0.3, 0.4}));
  CHECK(in_center(y, Point{0.3, 0.41}));

  const Scene ts = sigma_example_scene(Variant::T, 0.5, -0.2, 0.3);
  const CrossSpec& t = ts.spec;
  const CrossSpec yy = t.with(2, Variant::Y);
  const CrossSpec x = t.with(2, Variant::X);
  const DeltaSets dt = delta_sets(t);
  const DeltaSets dy = delta_sets(yy);
  std::mt19937_64 eng(13);
  std::uniform_real_distribution<double> u(-0.99, 0.99);
  const double pins[] = {0.5, -0.2, 0.3};
  for (int n = 0; n < 1000; ++n) {
    Point a(3);
    for (int j = 0; j < 3; ++j) a[j] = (eng() % 2) ? pins[j] : u(eng);
    CHECK(in_center(t, a) == (in_center(x, a) && !dt.delta.contains(a)));
    CHECK(in_center(yy, a) == (in_center(x, a) && !dy.delta_tilde.contains(a)));
    const Point b{(eng() % 2) ? 0.3 : u(eng), (eng() % 2) ? 0.4 : u(eng)};
    CHECK(in_center(y, b) == (in_center(unit_cross(2, 1), b) && !d.delta_tilde.contains(b)));
  }
}
