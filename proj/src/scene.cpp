#include "crosshull/scene.hpp"

#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

namespace crosshull {

namespace {

using nlohmann::json;

void only_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) fail(ErrorKind::Parse, where + " must be an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : j.items()) {
    if (!ok.count(key)) fail(ErrorKind::Parse, "unknown key '" + key + "' in " + where);
  }
}

const json& need(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) fail(ErrorKind::Parse, "missing key '" + std::string(key) + "' in " + where);
  return j.at(key);
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(ErrorKind::Parse, where + " must be a number");
  return j.get<double>();
}

Complex complex_of(const json& j, const std::string& where) {
  if (j.is_number()) return checked_point(j.get<double>(), 0.0);
  if (!j.is_array() || j.size() != 2) fail(ErrorKind::Parse, where + " must be a number or [re, im]");
  return checked_point(number(j[0], where), number(j[1], where));
}

BaseSet base_of(const json& j, const std::string& where) {
  if (!j.is_object()) fail(ErrorKind::Parse, where + " must be an object");
  const std::string kind = need(j, "kind", where).get<std::string>();
  if (kind == "interval") {
    only_keys(j, {"kind", "a", "b"}, where);
    return interval(number(need(j, "a", where), where + ".a"), number(need(j, "b", where), where + ".b"));
  }
  if (kind == "segment") {
    only_keys(j, {"kind", "a", "b"}, where);
    return segment(complex_of(need(j, "a", where), where + ".a"), complex_of(need(j, "b", where), where + ".b"));
  }
  if (kind == "subdisc") {
    only_keys(j, {"kind", "center", "radius"}, where);
    return closed_subdisc(complex_of(need(j, "center", where), where + ".center"),
                          number(need(j, "radius", where), where + ".radius"));
  }
  if (kind == "union") {
    only_keys(j, {"kind", "pieces"}, where);
    const json& pieces = need(j, "pieces", where);
    if (!pieces.is_array() || pieces.empty()) fail(ErrorKind::Parse, where + ".pieces must be a nonempty array");
    BaseSet out;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      const BaseSet part = base_of(pieces[i], where + ".pieces[" + std::to_string(i) + "]");
      out.pieces.insert(out.pieces.end(), part.pieces.begin(), part.pieces.end());
    }
    return out;
  }
  fail(ErrorKind::Parse, "unknown base kind '" + kind + "' in " + where);
}

PairAD factor_of(const json& j, const std::string& where) {
  only_keys(j, {"domain", "base"}, where);
  const json& d = need(j, "domain", where);
  only_keys(d, {"kind", "center", "radius"}, where + ".domain");
  if (need(d, "kind", where + ".domain") != "disc") fail(ErrorKind::Parse, where + ".domain.kind must be \"disc\"");
  const PlanarDomain dom = make_disc(complex_of(need(d, "center", where + ".domain"), where + ".domain.center"),
                                     number(need(d, "radius", where + ".domain"), where + ".domain.radius"));
  return make_pair(base_of(need(j, "base", where), where + ".base"), dom);
}

AnalyticSet set_of(const json& j, int dim, const std::string& where) {
  if (!j.is_object()) fail(ErrorKind::Parse, where + " must be an object");
  const std::string kind = need(j, "kind", where).get<std::string>();
  if (kind == "empty") {
    only_keys(j, {"kind"}, where);
    return AnalyticSet::empty(dim);
  }
  if (kind == "points") {
    only_keys(j, {"kind", "list"}, where);
    const json& list = need(j, "list", where);
    if (!list.is_array()) fail(ErrorKind::Parse, where + ".list must be an array");
    std::vector<Point> pts;
    for (const auto& p : list) {
      if (!p.is_array()) fail(ErrorKind::Parse, where + ".list entries must be arrays of coordinates");
      Point z;
      for (const auto& c : p) z.push_back(complex_of(c, where + ".list"));
      pts.push_back(std::move(z));
    }
    return AnalyticSet::points(dim, std::move(pts));
  }
  if (kind == "polyzero") {
    only_keys(j, {"kind", "coeffs", "vars"}, where);
    const json& vars = need(j, "vars", where);
    if (!vars.is_array()) fail(ErrorKind::Parse, where + ".vars must be an array");
    std::vector<int> vs;
    for (const auto& v : vars) {
      if (!v.is_number_integer()) fail(ErrorKind::Parse, where + ".vars must hold integers");
      vs.push_back(v.get<int>());
    }
    std::vector<Monomial> terms;
    for (const auto& t : need(j, "coeffs", where)) {
      only_keys(t, {"exps", "c"}, where + ".coeffs");
      std::vector<int> e;
      for (const auto& x : need(t, "exps", where + ".coeffs")) {
        if (!x.is_number_integer()) fail(ErrorKind::Parse, where + ".coeffs exps must be integers");
        e.push_back(x.get<int>());
      }
      terms.push_back({std::move(e), complex_of(need(t, "c", where + ".coeffs"), where + ".coeffs.c")});
    }
    return AnalyticSet::zero_set(dim, Polynomial(std::move(vs), std::move(terms)));
  }
  fail(ErrorKind::Parse, "unknown set kind '" + kind + "' in " + where);
}

}  // namespace

Strategy parse_strategy(const std::string& s) {
  if (s == "closed") return Strategy::ClosedForm;
  if (s == "field") return Strategy::Field;
  if (s == "auto") return Strategy::Auto;
  fail(ErrorKind::Parse, "strategy must be closed, field or auto");
}

Variant parse_variant(const std::string& s) {
  if (s == "X") return Variant::X;
  if (s == "T") return Variant::T;
  if (s == "Y") return Variant::Y;
  fail(ErrorKind::Parse, "variant must be X, T or Y");
}

Scene parse_scene(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorKind::Parse, std::string("scene is not valid JSON: ") + e.what());
  }
  try {
    only_keys(j, {"schema", "factors", "k", "variant", "sigmas", "M", "defaults"}, "scene");
    if (need(j, "schema", "scene") != kSceneSchema) {
      fail(ErrorKind::Parse, std::string("unsupported schema; expected \"") + kSceneSchema + "\"");
    }
    const json& factors = need(j, "factors", "scene");
    if (!factors.is_array() || factors.empty()) fail(ErrorKind::Parse, "factors must be a nonempty array");
    std::vector<PairAD> pairs;
    for (std::size_t i = 0; i < factors.size(); ++i) pairs.push_back(factor_of(factors[i], "factors[" + std::to_string(i) + "]"));
    const int n = static_cast<int>(pairs.size());
    const json& kj = need(j, "k", "scene");
    if (!kj.is_number_integer()) fail(ErrorKind::Parse, "k must be an integer");
    const Variant variant = j.contains("variant") ? parse_variant(j.at("variant").get<std::string>()) : Variant::X;
    std::map<MultiIndex, SigmaSet> sigmas;
    if (j.contains("sigmas")) {
      if (!j.at("sigmas").is_object()) fail(ErrorKind::Parse, "sigmas must be an object keyed by bit-strings");
      for (const auto& [key, val] : j.at("sigmas").items()) {
        const MultiIndex alpha = MultiIndex::parse(key);
        if (alpha.size() != n) fail(ErrorKind::Parse, "sigma key '" + key + "' has the wrong length");
        sigmas.emplace(alpha, set_of(val, n - alpha.weight(), "sigmas." + key));
      }
    }
    Scene scene{make_cross(std::move(pairs), kj.get<int>(), variant, std::move(sigmas)), std::nullopt, {}, j.dump()};
    if (j.contains("M")) scene.m = make_mspec(scene.spec, set_of(j.at("M"), n, "M"));
    if (j.contains("defaults")) {
      const json& d = j.at("defaults");
      only_keys(d, {"seed", "strategy", "margin", "grid", "tol"}, "defaults");
      if (d.contains("seed")) {
        if (!d.at("seed").is_number_unsigned()) fail(ErrorKind::Parse, "defaults.seed must be a non-negative integer");
        scene.defaults.seed = d.at("seed").get<std::uint64_t>();
      }
      if (d.contains("strategy")) scene.defaults.strategy = parse_strategy(d.at("strategy").get<std::string>());
      if (d.contains("margin")) scene.defaults.margin = number(d.at("margin"), "defaults.margin");
      if (d.contains("grid")) {
        if (!d.at("grid").is_number_integer()) fail(ErrorKind::Parse, "defaults.grid must be an integer");
        scene.defaults.grid = d.at("grid").get<int>();
      }
      if (d.contains("tol")) scene.defaults.tol = number(d.at("tol"), "defaults.tol");
    }
    return scene;
  } catch (const json::exception& e) {
    fail(ErrorKind::Parse, std::string("malformed scene: ") + e.what());
  }
}

Scene load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Parse, "cannot open scene file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scene(ss.str());
}

namespace {

std::string factors_json(int n) {
  std::string f;
  for (int j = 0; j < n; ++j) {
    if (j) f += ",";
    f += R"({"domain":{"kind":"disc","center":[0,0],"radius":1.0},"base":{"kind":"interval","a":-1.0,"b":1.0}})";
  }
  return f;
}

std::string cjson(Complex z) {
  std::ostringstream os;
  os.precision(17);
  os << "[" << z.real() << "," << z.imag() << "]";
  return os.str();
}

}  // namespace

Scene example_scene() {
  return parse_scene(std::string(R"({"schema":")") + kSceneSchema + R"(","factors":[)" + factors_json(3) +
                     R"(],"k":2,"variant":"X"})");
}

Scene sigma_example_scene(Variant variant, Complex s1, Complex s2, Complex s3) {
  const std::string sig = R"({"110":{"kind":"points","list":[[)" + cjson(s3) + R"(]]},)" +
                          R"("101":{"kind":"points","list":[[)" + cjson(s2) + R"(]]},)" +
                          R"("011":{"kind":"points","list":[[)" + cjson(s1) + R"(]]}})";
  return parse_scene(std::string(R"({"schema":")") + kSceneSchema + R"(","factors":[)" + factors_json(3) +
                     R"(],"k":2,"variant":")" + std::string(to_string(variant)) + R"(","sigmas":)" + sig + "}");
}

}  // namespace crosshull
