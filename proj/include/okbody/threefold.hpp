// Threefold-level machinery for Mori dream spaces: Mori chambers with their
// rational contraction data, chamber-wise Zariski decompositions, the
// t-partition of the segment D - tS, slice computation through the flag
// surface, and assembly of the (limiting) Okounkov body.
#pragma once

#include <map>
#include <optional>
#include <string>

#include "okbody/cone.hpp"
#include "okbody/errors.hpp"
#include "okbody/hull.hpp"
#include "okbody/piecewise.hpp"
#include "okbody/surface.hpp"

namespace okb {

// One Mori chamber together with the linear data of the associated rational
// map g: X --> Y (positive part P_D = g^* g_* D on the chamber).
struct MoriChamber {
  std::string name;
  PolyhedralCone cone;
  QMat p_map;  // rank x rank: D |-> positive part
  QMat n_map;  // rank x rank: D |-> negative part (p + n = id on the chamber)
  // True when the chamber's small modification is the identity on X.
  bool identity_sqm = true;
  // True when the indeterminacy locus of the small modification is disjoint
  // from the flag surface; only consulted when identity_sqm is false.
  bool flag_disjoint = false;

  friend bool operator==(const MoriChamber&, const MoriChamber&) = default;
};

struct ThreefoldModel {
  std::string name;
  std::size_t rank = 0;
  std::vector<std::string> basis_labels;
  PolyhedralCone eff_cone;
  // Extremal effective generators, used to expand negative parts.
  std::vector<std::string> eff_generator_labels;
  std::vector<QVec> eff_generators;
  std::vector<MoriChamber> chambers;

  // Flag data: the surface S, the general flag curve C on S and a point on C.
  // flag_surface_label names the matching effective generator when S is one
  // (so ord_S can be read off negative parts); it stays empty when S is
  // movable, in which case ord_S(||.||) vanishes identically.
  std::string flag_surface_label;
  QVec flag_class;
  QMat restriction_map;  // surface.rank x rank: N^1(X) -> N^1(S)
  SurfaceModel surface;
  SurfaceFlag surface_flag;
  // Translation of the slice contributed by each unit of an effective
  // generator appearing in the negative part: (x2, x3) shift per generator.
  std::map<std::string, std::pair<Rational, Rational>> n_generator_shifts;

  // Optional triple intersection numbers T[i][j][k] on the basis, enabling
  // exact volume checks.
  std::optional<std::vector<QMat>> trilinear;

  QVec flag_surface_class() const;
  Rational triple(const QVec& a, const QVec& b, const QVec& c) const;

  friend bool operator==(const ThreefoldModel&, const ThreefoldModel&) = default;
};

void validate_threefold_model(const ThreefoldModel& m);

// Names of all chambers containing D (sorted); the first is the primary one.
std::vector<std::string> chamber_of(const ThreefoldModel& m, const QVec& D);

struct MdsZariski {
  std::string chamber;
  QVec positive;
  QVec negative;
  std::vector<std::string> support;        // effective generator labels
  std::map<std::string, Rational> coeffs;  // expansion of the negative part
};

MdsZariski zariski_mds(const ThreefoldModel& m, const QVec& D);

// ord_S(||D||): coefficient of the flag surface in the negative part.
Rational asymptotic_valuation_3(const ThreefoldModel& m, const QVec& D);

// sup { t >= 0 : D - tS pseudo-effective }.
Rational mu_threefold(const ThreefoldModel& m, const QVec& D);

struct ChamberInterval {
  std::string chamber;
  Rational lo, hi;
};

// Per-chamber closed intervals of { t in [ord, mu] : D - tS in chamber },
// sorted by (lo, hi, name); empty intervals are dropped.
std::vector<ChamberInterval> t_partition(const ThreefoldModel& m, const QVec& D);

// Valuation shift l(t) of the slice at parameter t, computed from the
// negative part N_t of D - tS in the named chamber.
std::pair<Rational, Rational> shift_l(const ThreefoldModel& m,
                                      const std::string& chamber,
                                      const QVec& D, const Rational& t);

struct SliceResult {
  Polygon2 polygon;  // in the (x2, x3)-plane, shift applied
  std::string chamber;
  QVec restricted_class;  // class of P_{D_t} restricted to S
  std::pair<Rational, Rational> shift;
};

// Slice of the (limiting) Okounkov body at x1 = t via the flag surface.
SliceResult slice_at(const ThreefoldModel& m, const QVec& D, const Rational& t,
                     bool allow_limiting);

struct SliceProfile {
  QVec breakpoints;
  std::vector<Polygon2> slices;             // aligned with breakpoints
  std::vector<std::string> slice_chambers;  // chamber used per breakpoint
};

struct OkounkovBody {
  Polytope3 body;
  Rational ord, mu;
  bool limiting = false;
  std::vector<ChamberInterval> partition;  // admissible cover of [ord, mu]
  SliceProfile profile;
};

OkounkovBody okounkov_body(const ThreefoldModel& m, const QVec& D);
OkounkovBody limiting_body(const ThreefoldModel& m, const QVec& D);

// For big D contained in a single chamber: the exact translation vector a with
// body(D) = body(P_D) + a; verifies the identity before returning.
QVec body_translation_vector(const ThreefoldModel& m, const QVec& D);

struct AdmissibilityReport {
  std::vector<std::string> chambers_met;      // nonempty t-interval, sorted
  std::vector<std::string> inadmissible_met;  // subset of the above
  // True when every t in [ord, mu] is covered by an admissible chamber.
  bool pass = false;
};

AdmissibilityReport check_flag_admissibility(const ThreefoldModel& m,
                                             const QVec& D);

struct PolyhedralityReport {
  std::size_t chamber_intervals = 0;   // chambers met by the t-path
  std::size_t slice_breakpoints = 0;   // refined breakpoints of the body
  std::size_t mu_t_pieces = 0;         // linearity pieces of t -> mu_t
  std::size_t flag_picard_rank = 0;
  bool rank_one_shortcut = false;      // flag surface has Picard rank one
  bool polyhedral = true;
  std::vector<QVec> vertices;
};

PolyhedralityReport polyhedrality_report(const ThreefoldModel& m, const QVec& D);

struct VolumeResult {
  bool available = false;
  std::string reason;  // set when unavailable
  Rational value;      // (P_D)^3 when available
};

// vol(D) computed as (P_D)^3 via the trilinear form; available only when the
// primary chamber of D is an identity small modification.
VolumeResult divisor_volume(const ThreefoldModel& m, const QVec& D);

// Number of worker threads used for slice fan-out (from OKOUNKOV_THREADS or
// set_threads; defaults to 1).
void set_threads(unsigned n);
unsigned get_threads();

}  // namespace okb
