#include <doctest.h>

#include "okbody/models.hpp"
#include "okbody/surface.hpp"

using namespace okb;

namespace {
QVec qv(std::initializer_list<Rational> xs) { return QVec(xs); }
Rational Q(long n, long d = 1) { return Rational(n, d); }
}  // namespace

TEST_CASE("zariski decomposition on the blown-up plane") {
  SurfaceModel m = builtin_surface("blowup-p2", {}).model;

  SUBCASE("nef class decomposes trivially") {
    auto z = zariski_decompose(m, qv({3, -1}));
    CHECK(z.positive == qv({3, -1}));
    CHECK(is_zero_vec(z.negative));
    CHECK(z.support.empty());
  }

  SUBCASE("class with exceptional excess") {
    // 2H + 3E: the exceptional curve pairs negatively and absorbs all of it.
    auto z = zariski_decompose(m, qv({2, 3}));
    CHECK(z.positive == qv({2, 0}));
    CHECK(z.negative == qv({0, 3}));
    CHECK(z.support == std::vector<std::string>{"E"});
    CHECK(z.coeffs.at("E") == Q(3));
    CHECK(m.pair(z.positive, z.negative) == Q(0));
  }

  SUBCASE("boundary class is all negative part") {
    auto z = zariski_decompose(m, qv({0, 2}));
    CHECK(is_zero_vec(z.positive));
    CHECK(z.negative == qv({0, 2}));
  }

  SUBCASE("non-pseudo-effective input is rejected") {
    CHECK_THROWS_AS(zariski_decompose(m, qv({-1, 0})), ModelError);
    CHECK_THROWS_AS(zariski_decompose(m, qv({1, -2})), ModelError);
  }
}

TEST_CASE("asymptotic valuation and effective threshold") {
  SurfaceModel m = builtin_surface("blowup-p2", {}).model;
  CHECK(asymptotic_valuation_surface(m, qv({2, 3}), qv({0, 1})) == Q(3));
  CHECK(asymptotic_valuation_surface(m, qv({2, 3}), qv({1, -1})) == Q(0));
  // mu along the flag curve H - E: D - t(H - E) = ((2-t)H, (3+t)E).
  CHECK(mu_surface(m, qv({2, 3}), qv({1, -1})) == Q(2));
  CHECK(mu_surface(m, qv({2, 0}), qv({0, 1})) == Q(2));
}

TEST_CASE("negative part breakpoints along a segment") {
  SurfaceModel m = builtin_surface("blowup-p2", {}).model;
  // D = 2H, C = H - E: the support switches from {} to {E} at t = 0 already
  // (E enters as soon as t > 0), so breakpoints are just the endpoints.
  QVec bps = negative_part_breakpoints(m, qv({2, 0}), qv({1, -1}), Q(0), Q(2));
  REQUIRE(bps.size() >= 2);
  CHECK(bps.front() == Q(0));
  CHECK(bps.back() == Q(2));
  for (std::size_t i = 1; i < bps.size(); ++i) CHECK(bps[i - 1] < bps[i]);
}

TEST_CASE("okounkov polygon of 2H on the blown-up plane") {
  auto pkg = builtin_surface("blowup-p2", {});
  auto sp = okounkov_polygon(pkg.model, pkg.flag, qv({2, 0}), false);
  CHECK(sp.ord == Q(0));
  CHECK(sp.mu == Q(2));
  CHECK(sp.polygon.vertices ==
        std::vector<QVec>{qv({0, 0}), qv({2, 0}), qv({0, 2})});
  CHECK(sp.polygon.area() == Q(2));
  // 2 * area == P^2 for the big nef class 2H.
  CHECK(Q(2) * sp.polygon.area() == pkg.model.pair(qv({2, 0}), qv({2, 0})));
}

TEST_CASE("okounkov polygon with exceptional flag curve") {
  auto pkg = builtin_surface("blowup-p2", {{"flag_e", Q(1)}});
  // Flag curve is E itself; D = H: mu = sup{ t : H - tE psef } = 1.
  auto sp = okounkov_polygon(pkg.model, pkg.flag, qv({1, 0}), false);
  CHECK(sp.ord == Q(0));
  CHECK(sp.mu == Q(1));
  CHECK(Q(2) * sp.polygon.area() == Q(1));
}

TEST_CASE("flag curve equal to the whole negative part") {
  auto pkg = builtin_surface("blowup-p2", {{"flag_e", Q(1)}});
  // D = 2E has N(D) = 2E along the flag curve itself, so the limiting
  // polygon collapses to the single valuation point (2, 0).
  auto sp = okounkov_polygon(pkg.model, pkg.flag, qv({0, 2}), true);
  CHECK(sp.ord == Q(2));
  CHECK(sp.mu == Q(2));
  CHECK(sp.polygon.vertices == std::vector<QVec>{qv({2, 0})});
}

TEST_CASE("limiting polygon on the pseudo-effective boundary") {
  auto pkg = builtin_surface("blowup-p2", {});
  // D = H - E is nef with D^2 = 0: big fails, limiting succeeds and the
  // polygon is the segment from (0,0) to (1,0) of zero area.
  CHECK_THROWS_AS(okounkov_polygon(pkg.model, pkg.flag, qv({1, -1}), false),
                  ModelError);
  auto sp = okounkov_polygon(pkg.model, pkg.flag, qv({1, -1}), true);
  CHECK(sp.limiting);
  CHECK(sp.polygon.area() == Q(0));
}

TEST_CASE("projective plane polygon is the standard simplex") {
  auto pkg = builtin_surface("p2", {});
  auto sp = okounkov_polygon(pkg.model, pkg.flag, qv({3}), false);
  CHECK(sp.polygon.vertices ==
        std::vector<QVec>{qv({0, 0}), qv({3, 0}), qv({0, 3})});
}

TEST_CASE("okounkov body of a divisor on a curve") {
  auto [lo, hi] = okounkov_curve(Q(5, 2));
  CHECK(lo == Q(0));
  CHECK(hi == Q(5, 2));
}

TEST_CASE("surface model validation rejects bad data") {
  SurfaceModel m = builtin_surface("blowup-p2", {}).model;
  SurfaceModel bad = m;
  bad.intersection_form.at(0, 1) = Q(7);  // breaks symmetry
  CHECK_THROWS_AS(validate_surface_model(bad), ModelError);
  bad = m;
  bad.negative_curves[0] = qv({1, 0});  // self-intersection 1, not negative
  CHECK_THROWS_AS(validate_surface_model(bad), ModelError);
}

TEST_CASE("family breakpoints stay in range and sorted") {
  SurfaceModel m = builtin_surface("blowup-p2", {}).model;
  QVec bps = surface_family_breakpoints(m, qv({1, -1}), qv({2, 0}),
                                        qv({-1, 1}), Q(0), Q(1));
  for (std::size_t i = 0; i < bps.size(); ++i) {
    CHECK(Q(0) <= bps[i]);
    CHECK(bps[i] <= Q(1));
    if (i) CHECK(bps[i - 1] < bps[i]);
  }
}
