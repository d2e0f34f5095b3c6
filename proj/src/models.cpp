#include "okbody/models.hpp"

namespace okb {

namespace {

Rational get_param(const Params& p, const std::string& key, Rational def) {
  auto it = p.find(key);
  return it == p.end() ? def : it->second;
}

long int_param(const Params& p, const std::string& key, long def, long lo,
               long hi) {
  Rational v = get_param(p, key, Rational(def));
  if (!v.is_integer() || v < Rational(lo) || Rational(hi) < v)
    throw ModelError("parameter '" + key + "' must be an integer in [" +
                     std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return std::stol(v.num().get_str());
}

void reject_unknown(const Params& p, std::initializer_list<const char*> known) {
  for (const auto& [key, value] : p) {
    bool ok = false;
    for (const char* k : known) ok |= (key == k);
    if (!ok) throw ModelError("unknown model parameter '" + key + "'");
  }
}

QMat zero_mat(std::size_t n) { return QMat(n, n); }

QMat identity_mat(std::size_t n) {
  QMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

SurfaceModel projective_plane() {
  SurfaceModel s;
  s.name = "p2";
  s.rank = 1;
  s.basis_labels = {"L"};
  s.intersection_form = QMat(1, 1);
  s.intersection_form.at(0, 0) = 1;
  s.eff_cone = PolyhedralCone::from_generators(1, {{1}});
  s.nef_cone = s.eff_cone;
  return s;
}

SurfacePackage make_p2(const Params& params) {
  reject_unknown(params, {"s"});
  long s = int_param(params, "s", 1, 1, 1000000);
  SurfacePackage pkg;
  pkg.model = projective_plane();
  pkg.flag.curve_class = {Rational(s)};
  return pkg;
}

SurfacePackage make_blowup_p2(const Params& params) {
  reject_unknown(params, {"flag_e"});
  long flag_e = int_param(params, "flag_e", 0, 0, 1);
  SurfacePackage pkg;
  SurfaceModel& s = pkg.model;
  s.name = "blowup-p2";
  s.rank = 2;
  s.basis_labels = {"H", "E"};
  s.intersection_form = QMat(2, 2);
  s.intersection_form.at(0, 0) = 1;
  s.intersection_form.at(1, 1) = -1;
  s.negative_curve_labels = {"E"};
  s.negative_curves = {{0, 1}};
  s.eff_cone = PolyhedralCone::from_generators(2, {{0, 1}, {1, -1}});
  s.nef_cone = PolyhedralCone::from_generators(2, {{1, 0}, {1, -1}});
  // flag_e = 0: flag curve is a general line avoiding the blown-up point;
  // flag_e = 1: the exceptional curve itself.
  pkg.flag.curve_class = flag_e ? QVec{0, 1} : QVec{1, -1};
  if (!flag_e) pkg.flag.point_data["E"] = 0;
  return pkg;
}

// Blow-up of projective 3-space at two distinct coordinate points.  Basis
// (H, E1, E2) with H the hyperplane pullback.  The movable walls are
// H1 = H - E1, H2 = H - E2 (strict transforms of planes through one point)
// and the extremal effective rays are E1, E2 and H12 = H - E1 - E2 (the class
// sweeping planes through both points; the strict transform of the line
// through the two points spans the flipping wall).
ThreefoldModel make_blowup_p3(const Params& params) {
  reject_unknown(params, {"d"});
  long d = int_param(params, "d", 1, 1, 1000);
  ThreefoldModel m;
  m.name = "blowup-p3-2pts";
  m.rank = 3;
  m.basis_labels = {"H", "E1", "E2"};
  QVec H = {1, 0, 0}, E1 = {0, 1, 0}, E2 = {0, 0, 1};
  QVec H1 = {1, -1, 0}, H2 = {1, 0, -1}, H12 = {1, -1, -1};
  m.eff_cone = PolyhedralCone::from_generators(3, {E1, E2, H12});
  m.eff_generator_labels = {"E1", "E2", "H12"};
  m.eff_generators = {E1, E2, H12};

  auto chamber = [&](const std::string& name, const std::vector<QVec>& gens,
                     const QMat& p, bool identity, bool disjoint) {
    MoriChamber c;
    c.name = name;
    c.cone = PolyhedralCone::from_generators(3, gens);
    c.p_map = p;
    c.n_map = QMat(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        c.n_map.at(i, j) = Rational(i == j ? 1 : 0) - p.at(i, j);
    c.identity_sqm = identity;
    c.flag_disjoint = disjoint;
    return c;
  };
  // Chamber "1": positive part keeps only the H-coordinate (contract both
  // exceptional divisors); "2"/"3": contract one of them; "nef": identity;
  // "flip": the small modification flipping the line through the two points.
  QMat p1 = zero_mat(3);
  p1.at(0, 0) = 1;
  QMat p2 = zero_mat(3);
  p2.at(0, 0) = 1;
  p2.at(1, 1) = 1;
  QMat p3 = zero_mat(3);
  p3.at(0, 0) = 1;
  p3.at(2, 2) = 1;
  m.chambers.push_back(chamber("1", {H, E1, E2}, p1, true, false));
  m.chambers.push_back(chamber("2", {H, H1, E2}, p2, true, false));
  m.chambers.push_back(chamber("3", {H, H2, E1}, p3, true, false));
  m.chambers.push_back(chamber("nef", {H, H1, H2}, identity_mat(3), true, false));
  // The flipped model moves the line joining the two points; that line meets
  // the flag surface E1, so the slice formula is unavailable on this chamber.
  m.chambers.push_back(
      chamber("flip", {H1, H2, H12}, identity_mat(3), false, false));

  m.flag_surface_label = "E1";
  m.flag_class = E1;
  // N^1(E1) = Z L with E1|_E1 = -L; H and E2 restrict trivially.
  m.restriction_map = QMat(1, 3);
  m.restriction_map.at(0, 1) = -1;
  m.surface = projective_plane();
  m.surface_flag.curve_class = {Rational(d)};
  // E2 is disjoint from E1 and the canonical section of E1 restricts to a
  // unit after stripping: all shifts vanish.
  m.n_generator_shifts["E1"] = {0, 0};
  m.n_generator_shifts["E2"] = {0, 0};
  // Triple intersections: H^3 = 1, Ei^3 = 1 (exceptional divisor over a point
  // of a smooth threefold), all mixed products vanish.
  std::vector<QMat> T(3, QMat(3, 3));
  T[0].at(0, 0) = 1;
  T[1].at(1, 1) = 1;
  T[2].at(2, 2) = 1;
  m.trilinear = T;
  return m;
}

// Hypersurface of bidegree (a, b) in P^2 x P^2; a Mori dream space with
// Eff = Mov = Nef spanned by the two hyperplane restrictions.  The flag
// surface is a general member of |H1|.
ThreefoldModel make_p2xp2(const Params& params) {
  reject_unknown(params, {"a", "b"});
  long a = int_param(params, "a", 1, 1, 1000);
  long b = int_param(params, "b", 1, 1, 1000);
  if (!(b == 1 || (a == 1 && b == 2)))
    throw ModelError("hypersurface-p2xp2: supported parameters are b = 1 "
                     "(any a) or (a, b) = (1, 2); the flag surface cone data "
                     "is derived only for these");
  ThreefoldModel m;
  m.name = "hypersurface-p2xp2";
  m.rank = 2;
  m.basis_labels = {"H1", "H2"};
  QVec H1 = {1, 0}, H2 = {0, 1};
  m.eff_cone = PolyhedralCone::from_generators(2, {H1, H2});
  m.eff_generator_labels = {"H1", "H2"};
  m.eff_generators = {H1, H2};
  MoriChamber nef;
  nef.name = "nef";
  nef.cone = m.eff_cone;
  nef.p_map = identity_mat(2);
  nef.n_map = zero_mat(2);
  m.chambers.push_back(nef);

  m.flag_surface_label = "H1";
  m.flag_class = H1;
  m.restriction_map = identity_mat(2);  // h_i = H_i|_S

  SurfaceModel& s = m.surface;
  s.name = "p2xp2-flag-surface";
  s.rank = 2;
  s.basis_labels = {"h1", "h2"};
  s.intersection_form = QMat(2, 2);
  s.intersection_form.at(0, 1) = b;
  s.intersection_form.at(1, 0) = b;
  s.intersection_form.at(1, 1) = a;
  if (b == 1) {
    // S is a (generic, balanced) ruled surface over P^1 via the first factor.
    if (a % 2 == 0) {
      QVec g = {-a / 2, 1};
      s.eff_cone = PolyhedralCone::from_generators(2, {{1, 0}, g});
      s.nef_cone = s.eff_cone;
    } else {
      QVec sigma = {-(a + 1) / 2, 1};  // section with self-intersection -1
      s.negative_curve_labels = {"sigma"};
      s.negative_curves = {sigma};
      s.eff_cone = PolyhedralCone::from_generators(2, {{1, 0}, sigma});
      s.nef_cone =
          PolyhedralCone::from_generators(2, {{1, 0}, {-(a - 1) / 2, 1}});
    }
  } else {
    // (a, b) = (1, 2): degree-5 del Pezzo fibered in conics over P^1.  The
    // classes visible to the model are symmetric in the exceptional curves;
    // their sum G = 2 h2 - h1 (self-intersection -4) carries the whole
    // negative boundary of the restricted effective cone.
    QVec G = {-1, 2};
    s.negative_curve_labels = {"G"};
    s.negative_curves = {G};
    s.eff_cone = PolyhedralCone::from_generators(2, {{1, 0}, G});
    s.nef_cone = PolyhedralCone::from_generators(2, {{1, 0}, {0, 1}});
  }
  m.surface_flag.curve_class = {1, 0};  // fiber curve of S -> P^1
  // Triple intersections on X: H1^2 H2 = b, H1 H2^2 = a, cubes vanish.
  std::vector<QMat> T(2, QMat(2, 2));
  T[0].at(0, 1) = b;
  T[0].at(1, 0) = b;
  T[0].at(1, 1) = a;
  T[1].at(0, 0) = b;
  T[1].at(0, 1) = a;
  T[1].at(1, 0) = a;
  m.trilinear = T;
  return m;
}

// Hypersurface of bidegree (d, e) in P^1 x P^3.  Three derived regimes:
//   d = 3, e = 1: X is a projective bundle over P^1 (isomorphic to P^1 x P^2);
//   d = 1, e >= 2: X is the blow-up of P^3 along the degree-e^2 complete
//                  intersection curve, flag surface = exceptional divisor;
//   d = 2, e >= 2: double cover of P^3; the flipped chamber is reached by
//                  flopping the fibers over the base points of the net, and
//                  the flag surface (a general |H2| member) misses them.
ThreefoldModel make_p1xp3(const Params& params) {
  reject_unknown(params, {"d", "e", "gamma", "s1", "s2"});
  long d = int_param(params, "d", 1, 1, 3);
  long e = int_param(params, "e", 2, 1, 1000);
  ThreefoldModel m;
  m.name = "hypersurface-p1xp3";
  m.rank = 2;
  m.basis_labels = {"H1", "H2"};
  QVec H1 = {1, 0}, H2 = {0, 1};
  QVec E = {-1, e};  // e H2 - H1
  std::vector<QMat> T(2, QMat(2, 2));
  T[0].at(1, 1) = e;  // H1 H2^2 = e
  T[1].at(0, 1) = e;
  T[1].at(1, 0) = e;
  T[1].at(1, 1) = d;  // H2^3 = d
  m.trilinear = T;

  if (d == 3) {
    if (e != 1)
      throw ModelError("hypersurface-p1xp3: the projective-bundle regime is "
                       "derived only for (d, e) = (3, 1)");
    long s = int_param(params, "s1", 1, 1, 1000);
    m.eff_cone = PolyhedralCone::from_generators(2, {H1, {-1, 1}});
    m.eff_generator_labels = {"E", "H1"};
    m.eff_generators = {{-1, 1}, H1};
    MoriChamber nef;
    nef.name = "nef";
    nef.cone = m.eff_cone;
    nef.p_map = identity_mat(2);
    nef.n_map = zero_mat(2);
    m.chambers.push_back(nef);
    m.flag_surface_label = "H1";
    m.flag_class = H1;
    m.restriction_map = QMat(1, 2);
    m.restriction_map.at(0, 1) = 1;  // H2 restricts to the line class
    m.surface = projective_plane();
    m.surface.name = "p1xp3-fiber-plane";
    m.surface_flag.curve_class = {Rational(s)};
    return m;
  }
  if (d == 1) {
    if (e < 2)
      throw ModelError("hypersurface-p1xp3: d = 1 requires e >= 2");
    long gamma = int_param(params, "gamma", 0, 0, 1000000);
    if (gamma % 2 != 0)
      throw ModelError("hypersurface-p1xp3: gamma must be even so the "
                       "restriction of H1 to the exceptional surface is "
                       "integral");
    long s1 = int_param(params, "s1", 1, 0, 1000);
    long s2 = int_param(params, "s2", 0, 0, 1000000);
    if (s1 == 0 && s2 == 0)
      throw ModelError("hypersurface-p1xp3: flag curve class is zero");
    m.eff_cone = PolyhedralCone::from_generators(2, {H1, E});
    m.eff_generator_labels = {"E", "H1"};
    m.eff_generators = {E, H1};
    // Chamber "1": contract the exceptional divisor E (blow-down to P^3);
    // chamber "nef": identity.
    MoriChamber c1;
    c1.name = "1";
    c1.cone = PolyhedralCone::from_generators(2, {E, H2});
    c1.n_map = QMat(2, 2);
    c1.n_map.at(0, 0) = 1;
    c1.n_map.at(1, 0) = -e;
    c1.p_map = QMat(2, 2);
    c1.p_map.at(1, 0) = e;
    c1.p_map.at(1, 1) = 1;
    m.chambers.push_back(c1);
    MoriChamber nef;
    nef.name = "nef";
    nef.cone = PolyhedralCone::from_generators(2, {H1, H2});
    nef.p_map = identity_mat(2);
    nef.n_map = zero_mat(2);
    m.chambers.push_back(nef);
    m.flag_surface_label = "E";
    m.flag_class = E;
    // N^1(E) = <C0, F> for the ruled surface E over the center curve, with
    // C0^2 = gamma, C0.F = 1, F^2 = 0.  From E^3 = -2e^3 and H2|_E = e^2 F:
    // E|_E = -C0 + (gamma/2 + e^3) F and H1|_E = C0 - (gamma/2) F.
    m.restriction_map = QMat(2, 2);
    m.restriction_map.at(0, 0) = 1;
    m.restriction_map.at(1, 0) = Rational(-gamma, 2);
    m.restriction_map.at(1, 1) = Rational(e) * Rational(e);
    SurfaceModel& s = m.surface;
    s.name = "p1xp3-exceptional-surface";
    s.rank = 2;
    s.basis_labels = {"C0", "F"};
    s.intersection_form = QMat(2, 2);
    s.intersection_form.at(0, 0) = gamma;
    s.intersection_form.at(0, 1) = 1;
    s.intersection_form.at(1, 0) = 1;
    // Generic ruled-surface cone data: both boundary rays have square zero.
    QVec G = {2, -gamma};  // 2 C0 - gamma F, primitive direction of C0-(g/2)F
    s.eff_cone = PolyhedralCone::from_generators(2, {{0, 1}, G});
    s.nef_cone = s.eff_cone;
    m.surface_flag.curve_class = {Rational(s1), Rational(s2)};
    m.n_generator_shifts["E"] = {0, 0};  // stripping the flag surface itself
    return m;
  }
  // d == 2
  if (e < 2) throw ModelError("hypersurface-p1xp3: d = 2 requires e >= 2");
  m.eff_cone = PolyhedralCone::from_generators(2, {H1, E});
  m.eff_generator_labels = {"E", "H1"};
  m.eff_generators = {E, H1};
  MoriChamber nef;
  nef.name = "nef";
  nef.cone = PolyhedralCone::from_generators(2, {H1, H2});
  nef.p_map = identity_mat(2);
  nef.n_map = zero_mat(2);
  m.chambers.push_back(nef);
  MoriChamber flip;
  flip.name = "flip";
  flip.cone = PolyhedralCone::from_generators(2, {H2, E});
  flip.p_map = identity_mat(2);
  flip.n_map = zero_mat(2);
  flip.identity_sqm = false;
  flip.flag_disjoint = true;  // general |H2| member misses the flopped fibers
  m.chambers.push_back(flip);
  // Movable flag surface: general member of |H2| (no generator label).
  m.flag_surface_label = "";
  m.flag_class = H2;
  m.restriction_map = identity_mat(2);  // h_i = H_i|_S
  SurfaceModel& s = m.surface;
  s.name = "p1xp3-h2-surface";
  s.rank = 2;
  s.basis_labels = {"h1", "h2"};
  s.intersection_form = QMat(2, 2);
  s.intersection_form.at(0, 1) = e;
  s.intersection_form.at(1, 0) = e;
  s.intersection_form.at(1, 1) = 2;
  // Self-dual cone forced by the volume identity: both rays square to zero.
  s.eff_cone = PolyhedralCone::from_generators(2, {{1, 0}, {-1, e}});
  s.nef_cone = s.eff_cone;
  m.surface_flag.curve_class = {1, 0};  // degree-e plane-curve fiber
  return m;
}

}  // namespace

std::vector<std::string> builtin_surface_names() {
  return {"blowup-p2", "p2"};
}

std::vector<std::string> builtin_threefold_names() {
  return {"blowup-p3-2pts", "hypersurface-p1xp3", "hypersurface-p2xp2"};
}

SurfacePackage builtin_surface(const std::string& name, const Params& params) {
  SurfacePackage pkg;
  if (name == "p2")
    pkg = make_p2(params);
  else if (name == "blowup-p2")
    pkg = make_blowup_p2(params);
  else
    throw ModelError("unknown surface model '" + name + "'");
  validate_surface_model(pkg.model);
  return pkg;
}

ThreefoldModel builtin_threefold(const std::string& name, const Params& params) {
  ThreefoldModel m;
  if (name == "blowup-p3-2pts")
    m = make_blowup_p3(params);
  else if (name == "hypersurface-p2xp2")
    m = make_p2xp2(params);
  else if (name == "hypersurface-p1xp3")
    m = make_p1xp3(params);
  else
    throw ModelError("unknown threefold model '" + name + "'");
  validate_threefold_model(m);
  return m;
}

}  // namespace okb
