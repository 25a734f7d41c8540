#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "crosshull/cross.hpp"
#include "crosshull/extremal.hpp"
#include "crosshull/singular.hpp"

namespace crosshull {

inline constexpr const char* kSceneSchema = "crosshull.scene/1";

struct SceneDefaults {
  std::uint64_t seed = 42;
  Strategy strategy = Strategy::Auto;
  double margin = 1e-6;
  int grid = 513;
  double tol = 1e-10;
};

struct Scene {
  CrossSpec spec;
  std::optional<MSpec> m;
  SceneDefaults defaults;
  std::string canonical;  // normalized JSON text, used for report digests
};

/// Strict parser: unknown keys, wrong types and invalid geometry are errors.
Scene parse_scene(const std::string& text);
Scene load_scene(const std::string& path);

/// Three factors (-1,1) in the unit disc, k = 2, variant X.
Scene example_scene();

/// The same factors with Sigma_(1,1,0) = {s3}, Sigma_(1,0,1) = {s2},
/// Sigma_(0,1,1) = {s1} and the given variant (T or Y).
Scene sigma_example_scene(Variant variant, Complex s1, Complex s2, Complex s3);

Strategy parse_strategy(const std::string& s);
Variant parse_variant(const std::string& s);

}  // namespace crosshull
