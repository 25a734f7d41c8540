#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "crosshull/cross.hpp"
#include "crosshull/scene.hpp"

using namespace crosshull;
using namespace std::complex_literals;

namespace {

const Disc kUnit = make_disc({0, 0}, 1);
const Complex kI3 = 1i / std::sqrt(3.0);

CrossSpec unit_cross(int n, int k, Variant v = Variant::X, std::map<MultiIndex, SigmaSet> sigmas = {}) {
  std::vector<PairAD> pairs(n, make_pair(interval(-1, 1), kUnit));
  return make_cross(std::move(pairs), k, v, std::move(sigmas));
}

// Independent oracle for the plain cross over (-1,1) in the unit disc: a
// point is in X_{N,k} exactly when at least N-k coordinates are real.
bool x_oracle(std::span<const Complex> z, int k) {
  const long real = std::count_if(z.begin(), z.end(), [](Complex c) { return c.imag() == 0.0; });
  return real >= static_cast<long>(z.size()) - k;
}

Point random_mixed(int n, std::mt19937_64& eng) {
  std::uniform_real_distribution<double> u(-0.99, 0.99);
  Point z(n);
  for (auto& c : z) {
    if (eng() & 1u) {
      c = u(eng);
    } else {
      do c = Complex(u(eng), u(eng));
      while (std::abs(c) >= 0.99 || c.imag() == 0.0);
    }
  }
  return z;
}

long binomial(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
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

TEST_CASE("multi-index parsing and order") {
  const MultiIndex a = MultiIndex::parse("011");
  CHECK(a.size() == 3);
  CHECK_FALSE(a[0]);
  CHECK(a[1]);
  CHECK(a[2]);
  CHECK(a.weight() == 2);
  CHECK(a.str() == "011");
  CHECK(MultiIndex::parse("011") < MultiIndex::parse("101"));
  CHECK(MultiIndex::parse("101") < MultiIndex::parse("110"));
  CHECK(kind_of([] { MultiIndex::parse("01x"); }) == ErrorKind::Parse);
}

TEST_CASE("family generation") {
  const auto i32 = gen_family(3, 2, Family::I);
  REQUIRE(i32.size() == 3);
  CHECK(i32[0].str() == "011");
  CHECK(i32[1].str() == "101");
  CHECK(i32[2].str() == "110");
  const auto j32 = gen_family(3, 2, Family::J);
  CHECK(j32.size() == 6);
  CHECK(std::count_if(j32.begin(), j32.end(), [](auto& a) { return a.weight() == 1; }) == 3);
  const auto i22 = gen_family(2, 2, Family::I);
  REQUIRE(i22.size() == 1);
  CHECK(i22[0].str() == "11");
  for (int n = 1; n <= 10; ++n) {
    long jsum = 0;
    for (int k = 1; k <= n; ++k) {
      jsum += binomial(n, k);
      const auto fam = gen_family(n, k, Family::I);
      CHECK(static_cast<long>(fam.size()) == binomial(n, k));
      CHECK(std::is_sorted(fam.begin(), fam.end()));
      CHECK(std::adjacent_find(fam.begin(), fam.end()) == fam.end());
      CHECK(static_cast<long>(gen_family(n, k, Family::J).size()) == jsum);
    }
  }
  CHECK(kind_of([] { gen_family(3, 0, Family::I); }) == ErrorKind::BadOrder);
  CHECK(kind_of([] { gen_family(3, 4, Family::J); }) == ErrorKind::BadOrder);
}

TEST_CASE("merge and project") {
  const Complex a = 0.1, u = 0.2i, v = 0.3i;
  const Complex c0[] = {a};
  const Complex c1[] = {u, v};
  CHECK(merge(MultiIndex::parse("011"), c0, c1) == Point{a, u, v});
  CHECK(merge(MultiIndex::parse("101"), c0, c1) == Point{u, a, v});
  const Point z{a, u, v};
  CHECK(project(z, MultiIndex::parse("011"), 0) == Point{a});
  CHECK(project(z, MultiIndex::parse("011"), 1) == Point{u, v});
  CHECK(project(z, MultiIndex::parse("000"), 1).empty());
  CHECK(kind_of([&] { merge(MultiIndex::parse("011"), c1, c0); }) == ErrorKind::LengthMismatch);
  CHECK(kind_of([&] { project(z, MultiIndex::parse("01"), 0); }) == ErrorKind::LengthMismatch);

  std::mt19937_64 eng(9);
  for (int n = 1; n <= 6; ++n) {
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      const MultiIndex alpha(n, mask);
      const Point p = random_mixed(n, eng);
      CHECK(merge(alpha, project(p, alpha, 0), project(p, alpha, 1)) == p);
    }
  }
}

TEST_CASE("make_cross validation") {
  CHECK(kind_of([] { unit_cross(3, 0); }) == ErrorKind::BadOrder);
  CHECK(kind_of([] { unit_cross(3, 4); }) == ErrorKind::BadOrder);
  std::map<MultiIndex, SigmaSet> s;
  s.emplace(MultiIndex::parse("100"), AnalyticSet::points(2, {{0.1, 0.2}}));
  CHECK_NOTHROW(unit_cross(3, 2, Variant::Y, s));
  CHECK_THROWS_AS(unit_cross(3, 2, Variant::T, s), Error);
  CHECK_THROWS_AS(unit_cross(3, 2, Variant::X, s), Error);
}

TEST_CASE("membership on the three-factor example") {
  const CrossSpec x = unit_cross(3, 2);
  const Point z{0, kI3, kI3};
  const auto r = in_cross(x, z);
  CHECK(r.member);
  REQUIRE(r.witnesses.size() == 1);
  CHECK(r.witnesses[0].str() == "011");

  const auto c = in_cross(x, Point{0, 0, 0});
  CHECK(c.member);
  CHECK(c.witnesses == gen_family(3, 2, Family::I));

  const auto none = in_cross(x, Point{kI3, kI3, kI3});
  CHECK_FALSE(none.member);
  CHECK(none.blocked.size() == 3);
  for (const auto& b : none.blocked) CHECK(b.reason == BlockReason::ACoordinateMiss);

  CHECK(kind_of([&] { in_cross(x, Point{0, 0, 1.0}); }) == ErrorKind::OutsideAmbient);
  CHECK(kind_of([&] { in_cross(x, Point{0, 0}); }) == ErrorKind::LengthMismatch);
}

TEST_CASE("membership matches the counting oracle") {
  std::mt19937_64 eng(21);
  for (int n = 2; n <= 5; ++n) {
    for (int k = 1; k <= n; ++k) {
      const CrossSpec x = unit_cross(n, k);
      for (int s = 0; s < 400; ++s) {
        const Point z = random_mixed(n, eng);
        const auto r = in_cross(x, z);
        CHECK(r.member == x_oracle(z, k));
        CHECK(r.member == !r.witnesses.empty());
        if (k < n) CHECK((!r.member || in_cross(unit_cross(n, k + 1), z).member));
      }
    }
  }
}

TEST_CASE("order one equals the N-fold cross") {
  std::mt19937_64 eng(4);
  for (int n = 2; n <= 5; ++n) {
    const CrossSpec x = unit_cross(n, 1);
    for (int s = 0; s < 500; ++s) {
      const Point z = random_mixed(n, eng);
      CHECK(in_cross(x, z).member == nfold_cross_contains(x.pairs(), z));
    }
  }
}

TEST_CASE("centre") {
  const CrossSpec x = unit_cross(3, 2);
  CHECK(in_center(x, Point{0, 0, 0}));
  CHECK_FALSE(in_center(x, Point{0, kI3, kI3}));
  // Every branch of T is blocked at the point (0.5, -0.2, 0.3).
  const CrossSpec t = sigma_example_scene(Variant::T, 0.5, -0.2, 0.3).spec;
  CHECK_FALSE(in_center(t, Point{0.5, -0.2, 0.3}));
  CHECK(in_center(t, Point{0.5, -0.2, 0.31}));
}

TEST_CASE("T and Y differ on weight-one branches") {
  const Scene ts = sigma_example_scene(Variant::T, 0.5, -0.2, 0.3);
  const Scene ys = sigma_example_scene(Variant::Y, 0.5, -0.2, 0.3);
  const Point z{0.5i, -0.2, 0.3};
  const auto rt = in_cross(ts.spec, z);
  CHECK_FALSE(rt.member);
  bool hit = false;
  for (const auto& b : rt.blocked) {
    if (b.alpha.str() == "110") hit = b.reason == BlockReason::SigmaHit;
  }
  CHECK(hit);
  const auto ry = in_cross(ys.spec, z);
  CHECK(ry.member);
  REQUIRE(ry.witnesses.size() == 1);
  CHECK(ry.witnesses[0].str() == "100");
  CHECK(in_cross(ts.spec.with(2, Variant::X), z).member);
}

TEST_CASE("T within Y within X, and collapse for empty sigmas") {
  const Scene ts = sigma_example_scene(Variant::T, 0.5, -0.2, 0.3);
  const CrossSpec& t = ts.spec;
  const CrossSpec y = t.with(2, Variant::Y);
  const CrossSpec x = t.with(2, Variant::X);
  const CrossSpec t0 = unit_cross(3, 2, Variant::T);
  const CrossSpec y0 = unit_cross(3, 2, Variant::Y);
  const CrossSpec x0 = unit_cross(3, 2);
  std::mt19937_64 eng(17);
  const double pins[] = {0.5, -0.2, 0.3};
  for (int s = 0; s < 10000; ++s) {
    Point z = random_mixed(3, eng);
    // Land on the sigma points often enough to exercise the blocking.
    for (int j = 0; j < 3; ++j) {
      if (eng() % 3 == 0) z[j] = pins[j];
    }
    const bool mt = in_cross(t, z).member, my = in_cross(y, z).member, mx = in_cross(x, z).member;
    CHECK((!mt || my));
    CHECK((!my || mx));
    const bool c = in_cross(x0, z).member;
    CHECK(in_cross(t0, z).member == c);
    CHECK(in_cross(y0, z).member == c);
  }
}

TEST_CASE("decomposition identity") {
  const CrossSpec x = unit_cross(3, 2);
  auto both = [&](Point z) {
    const auto d = decompose_check(x, z);
    return std::pair{d.lhs, d.rhs};
  };
  CHECK(both({0, kI3, kI3}) == std::pair{true, true});
  CHECK(both({0, 0, 0}) == std::pair{true, true});
  CHECK(both({kI3, kI3, kI3}) == std::pair{false, false});
  CHECK(kind_of([] { decompose_check(unit_cross(3, 3), Point{0, 0, 0}); }) == ErrorKind::BadOrder);
  CHECK(kind_of([] { decompose_check(unit_cross(2, 1), Point{0, 0}); }) == ErrorKind::BadOrder);

  std::mt19937_64 eng(31);
  for (int n : {3, 4}) {
    for (int k = 2; k <= n - 1; ++k) {
      const CrossSpec xs = unit_cross(n, k);
      for (int s = 0; s < 10000; ++s) {
        const Point z = random_mixed(n, eng);
        const auto d = decompose_check(xs, z);
        CHECK(d.lhs == d.rhs);
        CHECK(d.lhs == x_oracle(z, k));
      }
    }
  }
}

TEST_CASE("paths to the centre stay in the cross") {
  const CrossSpec x = unit_cross(3, 2);
  const auto single = path_to_center(x, Point{0.1, -0.3, 0.2});
  CHECK(single.size() == 1);

  const auto path = path_to_center(x, Point{0, kI3, kI3});
  REQUIRE(path.size() >= 2);
  CHECK(path.front() == Point{0, kI3, kI3});
  CHECK(in_center(x, path.back()));
  CHECK(path.back() == Point{0, 0, 0});
  for (std::size_t s = 0; s + 1 < path.size(); ++s) {
    for (int m = 0; m <= 64; ++m) {
      const double t = m / 64.0;
      Point q(3);
      for (int j = 0; j < 3; ++j) q[j] = (1 - t) * path[s][j] + t * path[s + 1][j];
      CHECK(in_cross(x, q).member);
    }
  }

  // Witnesses 011 and 110; the path follows 011 and leaves the real z3 alone.
  const Point z{0.0, 0.4i, 0.2};
  const auto r = in_cross(x, z);
  REQUIRE(r.witnesses.size() == 2);
  const auto p2 = path_to_center(x, z);
  CHECK(p2.back() == Point{0, 0, 0.2});
  CHECK(p2 == path_to_center(x, z));

  CHECK(kind_of([&] { path_to_center(x, Point{kI3, kI3, kI3}); }) == ErrorKind::NotMember);
}

TEST_CASE("random paths stay in the cross") {
  std::mt19937_64 eng(8);
  for (int n = 2; n <= 4; ++n) {
    for (int k = 1; k <= n; ++k) {
      const CrossSpec x = unit_cross(n, k);
      int done = 0;
      while (done < 50) {
        const Point z = random_mixed(n, eng);
        if (!x_oracle(z, k)) continue;
        ++done;
        const auto path = path_to_center(x, z);
        CHECK(in_center(x, path.back()));
        for (std::size_t s = 0; s + 1 < path.size(); ++s) {
          for (int m = 0; m <= 16; ++m) {
            const double t = m / 16.0;
            Point q(n);
            for (int j = 0; j < n; ++j) q[j] = (1 - t) * path[s][j] + t * path[s + 1][j];
            CHECK(in_cross(x, q).member);
          }
        }
      }
    }
  }
}
