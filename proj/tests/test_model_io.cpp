#include <doctest.h>
#include <json.hpp>

#include "okbody/model_io.hpp"
#include "okbody/models.hpp"

using namespace okb;

namespace {
Rational Q(long n, long d = 1) { return Rational(n, d); }
using Json = nlohmann::ordered_json;
}  // namespace

TEST_CASE("surface models survive an export/load round-trip") {
  for (const auto& name : builtin_surface_names()) {
    auto pkg = builtin_surface(name, {});
    std::string text = export_surface_json(pkg.model, pkg.flag);
    LoadedModel back = load_model_json(text);
    REQUIRE(back.surface.has_value());
    CHECK(back.surface->model == pkg.model);
    CHECK(back.surface->flag == pkg.flag);
  }
}

TEST_CASE("threefold models survive an export/load round-trip") {
  std::vector<std::pair<std::string, Params>> cases = {
      {"blowup-p3-2pts", {{"d", Q(2)}}},
      {"hypersurface-p2xp2", {{"a", Q(3)}, {"b", Q(1)}}},
      {"hypersurface-p1xp3", {{"d", Q(1)}, {"e", Q(2)}, {"gamma", Q(2)}}},
      {"hypersurface-p1xp3", {{"d", Q(2)}, {"e", Q(2)}}},
      {"hypersurface-p1xp3", {{"d", Q(3)}, {"e", Q(1)}}},
  };
  for (const auto& [name, params] : cases) {
    auto m = builtin_threefold(name, params);
    std::string text = export_threefold_json(m);
    LoadedModel back = load_model_json(text);
    REQUIRE(back.threefold.has_value());
    CHECK(*back.threefold == m);
  }
}

TEST_CASE("export is deterministic") {
  auto m = builtin_threefold("blowup-p3-2pts", {});
  CHECK(export_threefold_json(m) ==
        export_threefold_json(builtin_threefold("blowup-p3-2pts", {})));
}

TEST_CASE("rational fields accept integers and p/q strings") {
  auto pkg = builtin_surface("blowup-p2", {});
  Json doc = Json::parse(export_surface_json(pkg.model, pkg.flag));
  // Spell every flag entry as a fraction string; the parse must agree.
  doc["flag"]["curve_selfint"] = "0/5";
  doc["flag"]["curve_class"] = {"2/2", "-3/3"};
  LoadedModel back = load_model_json(doc.dump());
  CHECK(back.surface->model == pkg.model);
  CHECK(back.surface->flag == pkg.flag);
  doc["flag"]["curve_selfint"] = 1.5;
  CHECK_THROWS_AS(load_model_json(doc.dump()), ModelError);
}

TEST_CASE("malformed documents are rejected") {
  CHECK_THROWS_AS(load_model_json("not json"), ModelError);
  CHECK_THROWS_AS(load_model_json("{\"kind\": \"curve\"}"), ModelError);
  CHECK_THROWS_AS(load_model_json("{\"kind\": \"surface\"}"), ModelError);
}

TEST_CASE("stated self-intersection must match the form") {
  auto pkg = builtin_surface("blowup-p2", {});
  Json doc = Json::parse(export_surface_json(pkg.model, pkg.flag));
  doc["flag"]["curve_selfint"] = 7;
  CHECK_THROWS_WITH_AS(load_model_json(doc.dump()),
                       doctest::Contains("curve_selfint"), ModelError);
}

TEST_CASE("inconsistent cone descriptions are rejected") {
  std::string doc = R"({
    "kind": "surface", "name": "bad", "basis": ["L"],
    "intersection_form": [[1]],
    "negative_curves": [],
    "eff_cone": {"generators": [[1]], "facets": [[-1]]},
    "nef_cone": {"generators": [[1]]},
    "flag": {"curve_class": [1], "point_data": {}}
  })";
  CHECK_THROWS_WITH_AS(load_model_json(doc),
                       doctest::Contains("different cones"), ModelError);
}

TEST_CASE("cones load from facets alone") {
  std::string doc = R"({
    "kind": "surface", "name": "plane", "basis": ["L"],
    "intersection_form": [[1]],
    "eff_cone": {"facets": [[1]]},
    "nef_cone": {"facets": [[1]]},
    "flag": {"curve_class": [1], "point_data": {}}
  })";
  LoadedModel lm = load_model_json(doc);
  REQUIRE(lm.surface.has_value());
  CHECK(lm.surface->model.eff_cone ==
        PolyhedralCone::from_generators(1, {{Q(1)}}));
}

TEST_CASE("conflicting shift data across chambers is rejected") {
  auto m = builtin_threefold("blowup-p3-2pts", {});
  Json doc = Json::parse(export_threefold_json(m));
  REQUIRE(doc["chambers"].size() >= 2);
  doc["chambers"][0]["n_generator_shifts"]["E2"] = {1, 0};
  CHECK_THROWS_WITH_AS(load_model_json(doc.dump()),
                       doctest::Contains("conflicting"), ModelError);
}
