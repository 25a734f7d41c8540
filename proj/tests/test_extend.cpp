#include <doctest.h>

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "crosshull/extend.hpp"

using namespace crosshull;
using namespace std::complex_literals;

namespace {

const Disc kUnit = make_disc({0, 0}, 1);

CrossSpec unit_cross(int n, int k) {
  std::vector<PairAD> pairs(n, make_pair(interval(-1, 1), kUnit));
  return make_cross(std::move(pairs), k, Variant::X);
}

FitOptions degrees(std::vector<int> d, std::uint64_t seed = 1) {
  FitOptions o;
  o.degrees = std::move(d);
  o.seed = seed;
  return o;
}

Evaluator of(const PolyExtension& e) {
  return [&e](std::span<const Complex> z) -> std::optional<Complex> { return e.eval(z); };
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

TEST_CASE("multi-degree two polynomials are recovered") {
  for (int k : {1, 2, 3}) {
    const CrossSpec x = unit_cross(3, k);
    for (int seed : {1, 7}) {
      const TestFunction t = make_test_function("poly:" + std::to_string(seed), x);
      REQUIRE(t.known);
      const PolyExtension e = extend_poly(t.f, degrees({2, 2, 2}));
      CHECK(e.residual_max <= 1e-10);
      double worst = 0.0;
      for (const auto& m : t.known->terms()) worst = std::max(worst, std::abs(e.coefficient(m.exps) - m.coeff));
      // Coefficients absent from the known polynomial must vanish too.
      double stray = 0.0;
      for (std::size_t c = 0; c < e.coeffs.size(); ++c) {
        bool listed = false;
        for (const auto& m : t.known->terms()) listed = listed || m.exps == e.exponents[c];
        if (!listed) stray = std::max(stray, std::abs(e.coeffs[c]));
      }
      CHECK(worst <= 1e-8);
      CHECK(stray <= 1e-8);
    }
  }
}

TEST_CASE("the zero function extends to zero") {
  const CrossSpec x = unit_cross(3, 2);
  const SampledFunction zero{"zero", [](std::span<const Complex>) -> std::optional<Complex> { return Complex{}; }, x,
                             std::nullopt};
  const PolyExtension e = extend_poly(zero, degrees({3, 3, 3}));
  for (Complex c : e.coeffs) CHECK(c == Complex{});
  CHECK(e.residual_max == 0.0);
}

TEST_CASE("restriction to the cross reproduces f") {
  const CrossSpec x = unit_cross(3, 2);
  const TestFunction t = make_test_function("inv-sum:3", x);
  FitOptions o = degrees({10, 10, 10});
  o.fit_radius = 0.8;
  const PolyExtension e = extend_poly(t.f, o);
  Rng rng(3);
  std::vector<Point> pts;
  for (const Point& z : sample_cross(x, 600, rng)) {
    Point w = z;
    for (auto& c : w) c *= 0.8;
    pts.push_back(w);
  }
  const ErrorStats s = compare_on_hull(of(e), t.f.eval, pts);
  CHECK(s.count == pts.size());
  CHECK(s.max_abs <= 4.0 * e.residual_max + 1e-14);
  CHECK(e.residual_rms <= e.residual_max);
}

TEST_CASE("order N is plain interpolation on the product") {
  const CrossSpec x = unit_cross(3, 3);
  const TestFunction t = make_test_function("poly:11", x);
  const PolyExtension e = extend_poly(t.f, degrees({2, 2, 2}));
  for (const auto& m : t.known->terms()) CHECK(std::abs(e.coefficient(m.exps) - m.coeff) <= 1e-8);
}

TEST_CASE("fits are deterministic per seed and unique across seeds") {
  const CrossSpec x = unit_cross(3, 2);
  const TestFunction t = make_test_function("exp", x);
  FitOptions o = degrees({14, 14, 14}, 1);
  o.total_degree = 14;
  o.fit_radius = 0.8;
  const PolyExtension a = extend_poly(t.f, o);
  const PolyExtension again = extend_poly(t.f, o);
  CHECK(a.coeffs == again.coeffs);
  o.seed = 2;
  const PolyExtension b = extend_poly(t.f, o);
  const HullEvaluator ev(x);
  const auto samples = shrink_toward_center(x, sample_hull(ev, 1000, 5), 0.8);
  const ErrorStats s = compare_on_hull(of(a), of(b), samples);
  CHECK(s.count == 1000);
  CHECK(s.max_abs <= 1e-6);
  const ErrorStats truth = compare_on_hull(of(a), t.f.eval, samples);
  CHECK(truth.max_rel <= 1e-6);
}

TEST_CASE("separate holomorphy verifier") {
  const CrossSpec x = unit_cross(3, 2);
  const SepHoloReport good = check_sep_holo(make_test_function("mixed", x).f);
  CHECK(good.pass);
  CHECK(good.max_residual <= 1e-10);
  CHECK(good.branches.size() == x.family().size());

  for (const char* name : {"poly:3", "rational:3", "exp"}) {
    CHECK(check_sep_holo(make_test_function(name, x).f).pass);
  }

  const SepHoloReport bad = check_sep_holo(make_test_function("conj:2", x).f);
  CHECK_FALSE(bad.pass);
  for (const auto& b : bad.branches) {
    if (b.alpha[1]) {
      CHECK(b.max_residual >= 1e-1);
    } else {
      CHECK(b.max_residual <= 1e-10);
    }
  }
  CHECK(kind_of([&] {
          SepHoloOptions o;
          o.resolution = 4;
          check_sep_holo(make_test_function("mixed", x).f, o);
        }) == ErrorKind::InvalidArgument);
}

TEST_CASE("a pole on a base excludes exactly its fibers") {
  const CrossSpec x = unit_cross(3, 2);
  const TestFunction t = make_test_function("pole:2:0.3", x);
  REQUIRE(t.f.exclusion);
  SepHoloOptions o;
  // Branch 101 has z2 on the base; anchoring it at the pole puts the whole fiber in M.
  o.extra_anchors.push_back({MultiIndex::parse("101"), Point{0.3}});
  o.extra_anchors.push_back({MultiIndex::parse("101"), Point{0.1}});
  const SepHoloReport r = check_sep_holo(t.f, o);
  CHECK(r.pass);
  int flagged = 0;
  for (const auto& fc : r.fibers) {
    const bool full = fiber(*t.f.exclusion, fc.anchor, fc.alpha).kind() == SetKind::Full;
    CHECK(fc.excluded == full);
    flagged += fc.excluded;
  }
  CHECK(flagged >= 1);
}

TEST_CASE("undefined values outside the exclusion are reported") {
  const CrossSpec x = unit_cross(2, 1);
  const SampledFunction broken{"broken", [](std::span<const Complex>) -> std::optional<Complex> { return std::nullopt; },
                               x, std::nullopt};
  CHECK(kind_of([&] { check_sep_holo(broken); }) == ErrorKind::UndefinedValue);
  CHECK(kind_of([&] { extend_poly(broken, degrees({1, 1})); }) == ErrorKind::UndefinedValue);
}

TEST_CASE("rational extension without singularities in the hull") {
  const CrossSpec x = unit_cross(3, 2);
  const TestFunction t = make_test_function("rational:3", x);
  REQUIRE(t.denominator);
  const HullEvaluator ev(x);
  const RationalExtension r = extend_rational(t.f, *t.denominator, degrees({1, 1, 1}), ev);
  CHECK(r.mhat_empty);
  CHECK(r.mhat_cross_in_exclusion);
  const auto samples = sample_hull(ev, 200, 9);
  for (const Point& z : samples) {
    const auto v = r.eval(z);
    REQUIRE(v);
    CHECK(std::abs(*v - 1.0 / (z[0] + z[1] - 3.0)) <= 1e-8);
  }
}

TEST_CASE("rational extension with a singular slice") {
  const CrossSpec x = unit_cross(3, 2);
  const TestFunction t = make_test_function("rational:0.5", x);
  const HullEvaluator ev(x);
  const RationalExtension r = extend_rational(t.f, *t.denominator, degrees({2, 2, 2}), ev);
  const int zero[] = {0, 0, 0};
  CHECK(std::abs(r.numerator.coefficient(zero) - 1.0) <= 1e-6);
  for (std::size_t c = 0; c < r.numerator.coeffs.size(); ++c) {
    if (r.numerator.exponents[c] != std::vector<int>{0, 0, 0}) CHECK(std::abs(r.numerator.coeffs[c]) <= 1e-6);
  }
  CHECK_FALSE(r.mhat_empty);
  CHECK(r.mhat_cross_in_exclusion);
  for (const Point& z : r.mhat_samples) {
    CHECK(in_hull(x, z));
    CHECK(std::abs(z[0] + z[1] - 0.5) <= 1e-12);
  }
  const auto probes = probe_blow_up(r, 1e-7);
  CHECK(probes.size() == r.mhat_samples.size());
  for (const auto& b : probes) CHECK(b.magnitude >= 1e6);
}

TEST_CASE("rational numerator with a monomial") {
  const CrossSpec x = unit_cross(3, 2);
  const TestFunction t = make_test_function("rational-mono:0.5", x);
  const RationalExtension r = extend_rational(t.f, *t.denominator, degrees({2, 2, 2}), HullEvaluator(x));
  const int z3[] = {0, 0, 1};
  CHECK(std::abs(r.numerator.coefficient(z3) - 1.0) <= 1e-6);
  for (std::size_t c = 0; c < r.numerator.coeffs.size(); ++c) {
    if (r.numerator.exponents[c] != std::vector<int>{0, 0, 1}) CHECK(std::abs(r.numerator.coeffs[c]) <= 1e-6);
  }
}

TEST_CASE("extension errors") {
  const CrossSpec x = unit_cross(3, 2);
  const TestFunction t = make_test_function("poly", x);
  CHECK(kind_of([&] { extend_rational(t.f, Polynomial{}, degrees({1, 1, 1}), HullEvaluator(x)); }) ==
        ErrorKind::DenominatorVanishesIdentically);
  FitOptions few = degrees({2, 2, 2});
  few.budget = 10;
  CHECK(kind_of([&] { extend_poly(t.f, few); }) == ErrorKind::InsufficientSamples);
  FitOptions strict = degrees({6, 6, 6});
  strict.max_condition = 1.5;
  CHECK(kind_of([&] { extend_poly(t.f, strict); }) == ErrorKind::IllConditioned);
  CHECK(kind_of([&] { extend_poly(t.f, degrees({2, 2})); }) == ErrorKind::LengthMismatch);
  CHECK(kind_of([&] { make_test_function("nope", x); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([&] { make_test_function("conj:4", x); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("comparison statistics") {
  const ErrorStats empty = compare_on_hull([](auto) { return std::optional<Complex>(1.0); },
                                           [](auto) { return std::optional<Complex>(1.0); }, {});
  CHECK(empty.count == 0);
  CHECK(empty.max_abs == 0.0);
  const std::vector<Point> pts{{0.0}, {0.5}};
  const ErrorStats s = compare_on_hull([](auto z) { return std::optional<Complex>(z[0] + 0.1); },
                                       [](auto z) { return std::optional<Complex>(z[0] + 0.2); }, pts);
  CHECK(s.count == 2);
  CHECK(s.max_abs == doctest::Approx(0.1));
  CHECK(s.max_rel == doctest::Approx(0.5));
}

TEST_CASE("extension JSON export") {
  const CrossSpec x = unit_cross(2, 1);
  const PolyExtension e = extend_poly(make_test_function("mixed", x).f, degrees({1, 1}));
  std::ostringstream os;
  write_extension_json(os, e);
  const auto j = nlohmann::json::parse(os.str());
  CHECK(j["degrees"] == nlohmann::json::array({1, 1}));
  CHECK(j["terms"].size() == e.coeffs.size());
}
