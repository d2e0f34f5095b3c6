#include <doctest.h>

#include "okbody/models.hpp"
#include "okbody/threefold.hpp"

using namespace okb;

namespace {
QVec qv(std::initializer_list<Rational> xs) { return QVec(xs); }
Rational Q(long n, long d = 1) { return Rational(n, d); }

// Body of a*H + c*E1 + b*E2 (coords (a, c, b)) in the chamber where the
// negative part is spanned by the exceptional divisors, flag curve degree d:
// hull of the extreme points of { c <= x1 <= a+c, 0 <= x2 <= (x1-c)/d,
// 0 <= x3 <= d*x1 - d^2*x2 - d*c }.
Polytope3 exceptional_chamber_body(long a, long c, long d) {
  Rational A(a), C(c), D(d);
  return convex_hull_3d({qv({C, 0, 0}), qv({A + C, 0, 0}),
                         qv({A + C, A / D, 0}), qv({A + C, 0, D * A})});
}

ThreefoldModel blowup(long d = 1) {
  return builtin_threefold("blowup-p3-2pts", {{"d", Q(d)}});
}
}  // namespace

TEST_CASE("chamber membership on the two-point blow-up") {
  auto m = blowup();
  CHECK(chamber_of(m, qv({1, 0, 1})) == std::vector<std::string>{"1", "2"});
  CHECK(chamber_of(m, qv({2, -1, 0})) == std::vector<std::string>{"2", "nef"});
  CHECK(chamber_of(m, qv({2, 1, 1})) == std::vector<std::string>{"1"});
  CHECK_THROWS_AS(chamber_of(m, qv({-1, 0, 0})), ModelError);
}

TEST_CASE("chamber-wise Zariski decomposition") {
  auto m = blowup();

  SUBCASE("exceptional chamber strips the exceptional part") {
    auto z = zariski_mds(m, qv({1, 0, 1}));
    CHECK(z.chamber == "1");
    CHECK(z.positive == qv({1, 0, 0}));
    CHECK(z.negative == qv({0, 0, 1}));
    CHECK(z.support == std::vector<std::string>{"E2"});
  }

  SUBCASE("second chamber keeps the first exceptional coordinate") {
    // H1 + E2 + H, i.e. coordinates (2, -1, 1).
    auto z = zariski_mds(m, qv({2, -1, 1}));
    CHECK(z.chamber == "2");
    CHECK(z.positive == qv({2, -1, 0}));
    CHECK(z.negative == qv({0, 0, 1}));
    CHECK(z.coeffs.at("E2") == Q(1));
  }

  SUBCASE("nef classes are their own positive part") {
    auto z = zariski_mds(m, qv({3, -1, -1}));
    CHECK(z.positive == qv({3, -1, -1}));
    CHECK(is_zero_vec(z.negative));
  }
}

TEST_CASE("asymptotic valuation and threshold along the flag surface") {
  auto m = blowup();
  CHECK(asymptotic_valuation_3(m, qv({2, 1, 1})) == Q(1));
  CHECK(asymptotic_valuation_3(m, qv({1, 0, 0})) == Q(0));
  CHECK(mu_threefold(m, qv({1, 0, 0})) == Q(1));
  CHECK(mu_threefold(m, qv({2, 1, 1})) == Q(3));
}

TEST_CASE("t-partition of H + E1") {
  auto m = blowup();
  auto parts = t_partition(m, qv({1, 1, 0}));
  REQUIRE(parts.size() == 5);
  auto check = [&](std::size_t i, const char* name, Rational lo, Rational hi) {
    CHECK(parts[i].chamber == name);
    CHECK(parts[i].lo == lo);
    CHECK(parts[i].hi == hi);
  };
  check(0, "1", Q(1), Q(1));
  check(1, "3", Q(1), Q(1));
  check(2, "2", Q(1), Q(2));
  check(3, "nef", Q(1), Q(2));
  check(4, "flip", Q(2), Q(2));
}

TEST_CASE("shift vector from negative-part expansion") {
  auto m = blowup();
  CHECK(shift_l(m, "1", qv({2, 2, 2}), Q(1)) ==
        std::pair<Rational, Rational>{Q(0), Q(0)});
  // Synthetic shift data: each unit of E2 translates the slice by (1, 1/2).
  m.n_generator_shifts["E2"] = {Q(1), Q(1, 2)};
  CHECK(shift_l(m, "1", qv({2, 2, 2}), Q(1)) ==
        std::pair<Rational, Rational>{Q(2), Q(1)});
}

TEST_CASE("slices through the flag surface") {
  auto m = blowup();

  SUBCASE("halfway slice of the pullback hyperplane") {
    // H - tE1 has a negative exceptional coordinate, so the path runs
    // through the second chamber.
    auto s = slice_at(m, qv({1, 0, 0}), Q(1, 2), false);
    CHECK(s.chamber == "2");
    CHECK(s.polygon.vertices ==
          std::vector<QVec>{qv({0, 0}), qv({Q(1, 2), 0}), qv({0, Q(1, 2)})});
  }

  SUBCASE("second-chamber slice at the wall") {
    auto s = slice_at(m, qv({2, -1, 0}), Q(1), false);
    CHECK(s.chamber == "2");
    CHECK(s.polygon.vertices ==
          std::vector<QVec>{qv({0, 0}), qv({2, 0}), qv({0, 2})});
  }

  SUBCASE("slice outside the body is an error") {
    CHECK_THROWS_WITH_AS(slice_at(m, qv({1, 0, 0}), Q(3), false),
                         doctest::Contains("empty slice"), ModelError);
  }
}

TEST_CASE("okounkov body golden values") {
  SUBCASE("pullback hyperplane, flag curve degree 1") {
    auto m = blowup(1);
    auto b = okounkov_body(m, qv({1, 0, 0}));
    Polytope3 want = convex_hull_3d(
        {qv({0, 0, 0}), qv({1, 0, 0}), qv({1, 1, 0}), qv({1, 0, 1})});
    CHECK(b.body == want);
    CHECK(b.ord == Q(0));
    CHECK(b.mu == Q(1));
    CHECK(Q(6) * b.body.volume() == Q(1));
  }

  SUBCASE("flag curve degree 2 rescales the slice") {
    auto m = blowup(2);
    auto b = okounkov_body(m, qv({1, 0, 0}));
    CHECK(b.body == exceptional_chamber_body(1, 0, 2));
  }

  SUBCASE("second-chamber body of H1 + H") {
    auto m = blowup(1);
    auto b = okounkov_body(m, qv({2, -1, 0}));
    Polytope3 want =
        convex_hull_3d({qv({0, 0, 0}), qv({0, 1, 0}), qv({0, 0, 1}),
                        qv({1, 0, 0}), qv({1, 2, 0}), qv({1, 0, 2})});
    CHECK(b.body == want);
  }
}

TEST_CASE("limiting body on the boundary") {
  auto m = blowup();
  CHECK_THROWS_AS(okounkov_body(m, qv({0, 0, 1})), ModelError);
  auto b = limiting_body(m, qv({0, 0, 1}));
  CHECK(b.body.affine_dim == 0);
  CHECK(b.body.vertices == std::vector<QVec>{qv({0, 0, 0})});
}

TEST_CASE("flag admissibility across the flipped chamber") {
  auto m = blowup();
  // Ample class H + H1 + H2 = (3, -1, -1): its path leaves the nef chamber at
  // t = 1 and can only continue through the flipped chamber.
  QVec D = qv({3, -1, -1});
  auto rep = check_flag_admissibility(m, D);
  CHECK_FALSE(rep.pass);
  CHECK(rep.inadmissible_met == std::vector<std::string>{"flip"});
  CHECK_THROWS_WITH_AS(okounkov_body(m, D), doctest::Contains("flip"),
                       AdmissibilityError);

  auto ok = check_flag_admissibility(m, qv({2, 1, 1}));
  CHECK(ok.pass);
  CHECK(ok.inadmissible_met.empty());
}

TEST_CASE("translation law for a single-chamber class") {
  auto m = blowup();
  QVec a = body_translation_vector(m, qv({2, 1, 1}));
  CHECK(a == qv({1, 0, 0}));
  CHECK_THROWS_AS(body_translation_vector(m, qv({1, 0, 1})), ModelError);
}

TEST_CASE("polyhedrality report") {
  auto m = blowup();
  auto rep = polyhedrality_report(m, qv({2, 1, 1}));
  CHECK(rep.polyhedral);
  CHECK(rep.flag_picard_rank == 1);
  CHECK(rep.rank_one_shortcut);
  CHECK(rep.vertices.size() == 4);
  CHECK(rep.chamber_intervals >= 1);
  CHECK(rep.mu_t_pieces >= 1);
}

TEST_CASE("volume via the trilinear form matches the body") {
  auto m = blowup();
  auto b = okounkov_body(m, qv({2, 1, 1}));
  auto v = divisor_volume(m, qv({2, 1, 1}));
  REQUIRE(v.available);
  CHECK(v.value == Q(6) * b.body.volume());
}

TEST_CASE("bodies on the hypersurface models") {
  SUBCASE("product-type hypersurface") {
    auto m = builtin_threefold("hypersurface-p2xp2", {{"a", Q(1)}, {"b", Q(1)}});
    QVec D = qv({1, 1});
    auto b = okounkov_body(m, D);
    auto v = divisor_volume(m, D);
    REQUIRE(v.available);
    CHECK(v.value == m.triple(D, D, D));
    CHECK(Q(6) * b.body.volume() == v.value);
  }

  SUBCASE("bidegree (1,e) hypersurface with flip-free path") {
    auto m = builtin_threefold("hypersurface-p1xp3",
                               {{"d", Q(1)}, {"e", Q(2)}, {"gamma", Q(2)}});
    QVec D = qv({1, 2});  // H1 + 2 H2, ample
    auto b = okounkov_body(m, D);
    CHECK(Q(6) * b.body.volume() == m.triple(D, D, D));
  }

  SUBCASE("bidegree (2,e) hypersurface crosses its flop harmlessly") {
    auto m = builtin_threefold("hypersurface-p1xp3", {{"d", Q(2)}, {"e", Q(2)}});
    QVec D = qv({1, 1});
    auto rep = check_flag_admissibility(m, D);
    CHECK(rep.pass);
    auto b = okounkov_body(m, D);
    CHECK(Q(6) * b.body.volume() == m.triple(D, D, D));
  }
}

TEST_CASE("threefold validation rejects broken chamber data") {
  auto m = blowup();
  auto bad = m;
  bad.chambers[0].n_map.at(0, 0) = Q(1);  // p + n no longer the identity
  CHECK_THROWS_AS(validate_threefold_model(bad), ModelError);
  bad = m;
  // Dropping the exceptional chamber leaves E1 + E2 uncovered.
  bad.chambers.erase(bad.chambers.begin());
  CHECK_THROWS_AS(validate_threefold_model(bad), ModelError);
}
