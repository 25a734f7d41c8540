#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "crosshull/hull.hpp"
#include "crosshull/scene.hpp"

namespace crosshull {

struct Check {
  std::string name;
  bool pass = true;
  std::size_t count = 0;     // cases examined
  std::size_t failures = 0;
  std::string detail;
};

struct SuiteOptions {
  std::uint64_t seed = 42;
  std::size_t samples = 10000;
  bool with_solver = false;  // grid solves for the extremal battery
  int grid = 257;
  bool with_extend = true;
};

std::vector<Check> verify_extremal(const CrossSpec& spec, const SuiteOptions& opt);
std::vector<Check> verify_cross(const CrossSpec& spec, const SuiteOptions& opt);
std::vector<Check> verify_singular(const Scene& scene, const SuiteOptions& opt);
std::vector<Check> verify_hull(const HullEvaluator& ev, const SuiteOptions& opt);
/// The envelope-candidate checks for max{0, sum h - k + 1}; needs k >= 2 and
/// closed-form factors.
std::vector<Check> verify_lemma(const HullEvaluator& ev, const SuiteOptions& opt);
std::vector<Check> verify_extend(const CrossSpec& spec, const SuiteOptions& opt);

std::vector<Check> verify_suite(const Scene& scene, const SuiteOptions& opt);

bool all_pass(const std::vector<Check>& checks);

}  // namespace crosshull
