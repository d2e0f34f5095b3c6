#include "okbody/threefold.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <future>
#include <set>

namespace okb {

namespace {

std::atomic<unsigned> g_threads{0};

const MoriChamber& find_chamber(const ThreefoldModel& m, const std::string& name) {
  for (const auto& c : m.chambers)
    if (c.name == name) return c;
  throw ModelError("unknown chamber '" + name + "'");
}

bool admissible(const MoriChamber& c) {
  return c.identity_sqm || c.flag_disjoint;
}

// Expansion of an effective class into the model's extremal generators.
std::map<std::string, Rational> expand_generators(const ThreefoldModel& m,
                                                  const QVec& v,
                                                  const char* what) {
  QMat cols(m.rank, m.eff_generators.size());
  for (std::size_t j = 0; j < m.eff_generators.size(); ++j)
    for (std::size_t i = 0; i < m.rank; ++i)
      cols.at(i, j) = m.eff_generators[j][i];
  auto sol = solve_general(cols, v);
  if (!sol)
    throw ModelError(std::string(what) +
                     ": class is not a combination of the effective "
                     "generators; model data inconsistent");
  std::map<std::string, Rational> out;
  for (std::size_t j = 0; j < m.eff_generators.size(); ++j) {
    if ((*sol)[j].sign() < 0)
      throw ModelError(std::string(what) + ": negative coefficient on '" +
                       m.eff_generator_labels[j] +
                       "'; negative part is not effective");
    if ((*sol)[j].sign() > 0) out[m.eff_generator_labels[j]] = (*sol)[j];
  }
  return out;
}

std::pair<Rational, Rational> shift_of_coeffs(
    const ThreefoldModel& m, const std::map<std::string, Rational>& coeffs) {
  Rational s2, s3;
  for (const auto& [label, c] : coeffs) {
    auto it = m.n_generator_shifts.find(label);
    if (it == m.n_generator_shifts.end()) continue;
    s2 += c * it->second.first;
    s3 += c * it->second.second;
  }
  return {s2, s3};
}

}  // namespace

QVec ThreefoldModel::flag_surface_class() const {
  if (flag_class.size() != rank)
    throw ModelError("model '" + name + "': flag surface class missing");
  if (!flag_surface_label.empty()) {
    for (std::size_t j = 0; j < eff_generator_labels.size(); ++j)
      if (eff_generator_labels[j] == flag_surface_label) {
        if (eff_generators[j] != flag_class)
          throw ModelError("model '" + name +
                           "': flag class does not match generator '" +
                           flag_surface_label + "'");
        return flag_class;
      }
    throw ModelError("flag surface '" + flag_surface_label +
                     "' is not an effective generator");
  }
  return flag_class;
}

Rational ThreefoldModel::triple(const QVec& a, const QVec& b, const QVec& c) const {
  if (!trilinear)
    throw ModelError("model '" + name + "' carries no trilinear data");
  Rational s;
  for (std::size_t i = 0; i < rank; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < rank; ++j)
      for (std::size_t k = 0; k < rank; ++k)
        s += a[i] * b[j] * c[k] * (*trilinear)[i].at(j, k);
  }
  return s;
}

void validate_threefold_model(const ThreefoldModel& m) {
  if (m.rank == 0 || m.basis_labels.size() != m.rank)
    throw ModelError("threefold model '" + m.name + "': bad basis");
  if (m.eff_cone.dim() != m.rank)
    throw ModelError("threefold model '" + m.name + "': effective cone dimension");
  if (m.eff_generators.size() != m.eff_generator_labels.size())
    throw ModelError("threefold model '" + m.name + "': generator labels");
  for (const auto& g : m.eff_generators)
    if (!m.eff_cone.contains(g))
      throw ModelError("threefold model '" + m.name +
                       "': listed generator outside the effective cone");
  m.flag_surface_class();  // throws when the label is unknown
  if (m.restriction_map.rows != m.surface.rank || m.restriction_map.cols != m.rank)
    throw ModelError("threefold model '" + m.name + "': restriction map shape");
  validate_surface_model(m.surface);
  if (!m.surface.eff_cone.contains(m.surface_flag.curve_class))
    throw ModelError("threefold model '" + m.name +
                     "': flag curve class not effective on the flag surface");
  for (const auto& [label, s] : m.n_generator_shifts) {
    bool known = false;
    for (const auto& l : m.eff_generator_labels) known |= (l == label);
    if (!known)
      throw ModelError("threefold model '" + m.name + "': shift data for "
                       "unknown generator '" + label + "'");
  }
  std::set<std::string> names;
  for (const auto& c : m.chambers) {
    if (!names.insert(c.name).second)
      throw ModelError("threefold model '" + m.name + "': duplicate chamber '" +
                       c.name + "'");
    if (c.cone.dim() != m.rank)
      throw ModelError("chamber '" + c.name + "': cone dimension mismatch");
    // p + n must be the identity on the whole Picard group.
    for (std::size_t i = 0; i < m.rank; ++i)
      for (std::size_t j = 0; j < m.rank; ++j)
        if (c.p_map.at(i, j) + c.n_map.at(i, j) !=
            Rational(i == j ? 1 : 0))
          throw ModelError("chamber '" + c.name + "': p_map + n_map != id");
    for (const auto& g : c.cone.generators()) {
      if (!m.eff_cone.contains(g))
        throw ModelError("chamber '" + c.name +
                         "': chamber leaves the effective cone");
      // The negative part of every chamber point must expand non-negatively.
      expand_generators(m, mat_vec(c.n_map, g),
                        ("chamber '" + c.name + "' n_map").c_str());
    }
  }
  // Sample-point coverage audit: generators, pairwise sums and the total sum
  // of the effective generators must each lie in some chamber.
  std::vector<QVec> samples = m.eff_generators;
  for (std::size_t i = 0; i < m.eff_generators.size(); ++i)
    for (std::size_t j = i; j < m.eff_generators.size(); ++j)
      samples.push_back(vadd(m.eff_generators[i], m.eff_generators[j]));
  QVec total = zero_vec(m.rank);
  for (const auto& g : m.eff_generators) total = vadd(total, g);
  samples.push_back(total);
  for (const auto& s : samples) {
    bool covered = false;
    for (const auto& c : m.chambers) covered |= c.cone.contains(s);
    if (!covered)
      throw ModelError("threefold model '" + m.name +
                       "': chambers do not cover the effective cone (sample "
                       "audit failed)");
  }
  // Interiors must be disjoint: a strictly interior point of one chamber may
  // not be strictly interior to another.
  for (const auto& c : m.chambers) {
    QVec centroid = zero_vec(m.rank);
    for (const auto& g : c.cone.generators()) centroid = vadd(centroid, g);
    for (const auto& other : m.chambers) {
      if (other.name == c.name) continue;
      if (c.cone.contains_interior(centroid) &&
          other.cone.contains_interior(centroid))
        throw ModelError("threefold model '" + m.name + "': chambers '" +
                         c.name + "' and '" + other.name +
                         "' have overlapping interiors");
    }
  }
  if (m.trilinear) {
    if (m.trilinear->size() != m.rank)
      throw ModelError("threefold model '" + m.name + "': trilinear shape");
    for (std::size_t i = 0; i < m.rank; ++i)
      for (std::size_t j = 0; j < m.rank; ++j)
        for (std::size_t k = 0; k < m.rank; ++k) {
          Rational v = (*m.trilinear)[i].at(j, k);
          if (v != (*m.trilinear)[j].at(i, k) || v != (*m.trilinear)[i].at(k, j))
            throw ModelError("threefold model '" + m.name +
                             "': trilinear form not symmetric");
        }
  }
}

std::vector<std::string> chamber_of(const ThreefoldModel& m, const QVec& D) {
  if (D.size() != m.rank)
    throw ModelError("chamber_of: divisor dimension mismatch");
  if (!m.eff_cone.contains(D))
    throw ModelError("chamber_of: divisor class is not pseudo-effective");
  std::vector<std::string> out;
  for (const auto& c : m.chambers)
    if (c.cone.contains(D)) out.push_back(c.name);
  std::sort(out.begin(), out.end());
  if (out.empty())
    throw ModelError("chamber_of: chamber data incomplete for this divisor");
  return out;
}

MdsZariski zariski_mds(const ThreefoldModel& m, const QVec& D) {
  std::string primary = chamber_of(m, D).front();
  const MoriChamber& c = find_chamber(m, primary);
  MdsZariski z;
  z.chamber = primary;
  z.positive = mat_vec(c.p_map, D);
  z.negative = mat_vec(c.n_map, D);
  z.coeffs = expand_generators(m, z.negative, "zariski_mds");
  for (const auto& l : m.eff_generator_labels)
    if (z.coeffs.count(l)) z.support.push_back(l);
  return z;
}

Rational asymptotic_valuation_3(const ThreefoldModel& m, const QVec& D) {
  MdsZariski z = zariski_mds(m, D);
  if (m.flag_surface_label.empty()) return 0;  // movable flag surface
  auto it = z.coeffs.find(m.flag_surface_label);
  return it == z.coeffs.end() ? Rational(0) : it->second;
}

Rational mu_threefold(const ThreefoldModel& m, const QVec& D) {
  if (!m.eff_cone.contains(D))
    throw ModelError("mu_threefold: divisor class is not pseudo-effective");
  auto s = m.eff_cone.ray_exit(D, vneg(m.flag_surface_class()));
  if (!s)
    throw ModelError("mu_threefold: D - tS never leaves the effective cone; "
                     "model data inconsistent");
  return *s;
}

std::vector<ChamberInterval> t_partition(const ThreefoldModel& m, const QVec& D) {
  Rational ord = asymptotic_valuation_3(m, D);
  Rational mu = mu_threefold(m, D);
  QVec S = m.flag_surface_class();
  std::vector<ChamberInterval> parts;
  for (const auto& c : m.chambers) {
    Rational lo = ord, hi = mu;
    bool empty = false;
    for (const auto& f : c.cone.facets()) {
      Rational fd = dot(f, D), fs = dot(f, S);
      if (fs.sign() > 0)
        hi = min(hi, fd / fs);
      else if (fs.sign() < 0)
        lo = max(lo, fd / fs);
      else if (fd.sign() < 0)
        empty = true;
    }
    if (!empty && !(hi < lo)) parts.push_back({c.name, lo, hi});
  }
  std::sort(parts.begin(), parts.end(), [](const ChamberInterval& a,
                                           const ChamberInterval& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    if (a.hi != b.hi) return a.hi < b.hi;
    return a.chamber < b.chamber;
  });
  return parts;
}

std::pair<Rational, Rational> shift_l(const ThreefoldModel& m,
                                      const std::string& chamber, const QVec& D,
                                      const Rational& t) {
  const MoriChamber& c = find_chamber(m, chamber);
  QVec Dt = vsub(D, vscale(t, m.flag_surface_class()));
  if (!c.cone.contains(Dt))
    throw ModelError("shift_l: D - tS is not in chamber '" + chamber + "'");
  auto coeffs = expand_generators(m, mat_vec(c.n_map, Dt), "shift_l");
  return shift_of_coeffs(m, coeffs);
}

namespace {

SliceResult slice_with_chamber(const ThreefoldModel& m, const MoriChamber& c,
                               const QVec& Dt) {
  SliceResult r;
  r.chamber = c.name;
  QVec P = mat_vec(c.p_map, Dt);
  r.restricted_class = mat_vec(m.restriction_map, P);
  SurfacePolygon sp =
      okounkov_polygon(m.surface, m.surface_flag, r.restricted_class, true);
  auto coeffs = expand_generators(m, mat_vec(c.n_map, Dt), "slice shift");
  r.shift = shift_of_coeffs(m, coeffs);
  r.polygon = translate(sp.polygon, {r.shift.first, r.shift.second});
  return r;
}

struct Cover {
  std::vector<ChamberInterval> pieces;
};

// Greedy admissible cover of [ord, mu]; throws AdmissibilityError naming an
// offending chamber when a stretch of the path is only covered by chambers
// whose small modification moves the flag surface.
Cover admissible_cover(const ThreefoldModel& m,
                       const std::vector<ChamberInterval>& parts,
                       const Rational& ord, const Rational& mu) {
  auto offender_at = [&](const Rational& t) -> std::string {
    for (const auto& p : parts)
      if (!admissible(find_chamber(m, p.chamber)) && !(t < p.lo) && t < p.hi)
        return p.chamber;
    for (const auto& p : parts)
      if (!admissible(find_chamber(m, p.chamber)) && !(t < p.lo) && !(p.hi < t))
        return p.chamber;
    return "";
  };
  auto bail = [&](const Rational& t) -> Cover {
    std::string who = offender_at(t);
    if (who.empty())
      throw ModelError("okounkov_body: no chamber covers t = " + t.str() +
                       "; chamber data incomplete");
    throw AdmissibilityError(
        "slice formula not valid at t = " + t.str() + ": chamber '" + who +
        "' is neither an identity small modification nor disjoint from the "
        "flag surface");
  };
  Cover cover;
  if (ord == mu) {
    for (const auto& p : parts)
      if (admissible(find_chamber(m, p.chamber)) && !(ord < p.lo) &&
          !(p.hi < ord)) {
        cover.pieces.push_back({p.chamber, ord, mu});
        return cover;
      }
    return bail(ord);
  }
  Rational cur = ord;
  while (cur < mu) {
    const ChamberInterval* best = nullptr;
    for (const auto& p : parts) {
      if (!admissible(find_chamber(m, p.chamber))) continue;
      if (p.lo < cur || p.lo == cur) {
        if (cur < p.hi &&
            (!best || best->hi < p.hi ||
             (best->hi == p.hi && p.chamber < best->chamber)))
          best = &p;
      }
    }
    if (!best) return bail(cur);
    cover.pieces.push_back({best->chamber, cur, best->hi});
    cur = best->hi;
  }
  return cover;
}

OkounkovBody body_impl(const ThreefoldModel& m, const QVec& D, bool limiting) {
  validate_threefold_model(m);
  if (!m.eff_cone.contains(D))
    throw ModelError("okounkov_body: divisor class is not pseudo-effective");
  bool big = m.eff_cone.contains_interior(D);
  if (!big && !limiting)
    throw ModelError("okounkov_body: divisor class is not big "
                     "(use the limiting body for boundary classes)");
  OkounkovBody out;
  out.limiting = !big;
  out.ord = asymptotic_valuation_3(m, D);
  out.mu = mu_threefold(m, D);
  QVec S = m.flag_surface_class();
  auto parts = t_partition(m, D);
  Cover cover = admissible_cover(m, parts, out.ord, out.mu);
  out.partition = cover.pieces;

  // Wall agreement audit: consecutive cover pieces must produce the same slice
  // at the shared parameter.
  for (std::size_t i = 0; i + 1 < cover.pieces.size(); ++i) {
    const Rational& t = cover.pieces[i].hi;
    QVec Dt = vsub(D, vscale(t, S));
    SliceResult a =
        slice_with_chamber(m, find_chamber(m, cover.pieces[i].chamber), Dt);
    SliceResult b =
        slice_with_chamber(m, find_chamber(m, cover.pieces[i + 1].chamber), Dt);
    if (a.polygon != b.polygon)
      throw ModelError("okounkov_body: chambers '" + cover.pieces[i].chamber +
                       "' and '" + cover.pieces[i + 1].chamber +
                       "' disagree at the wall t = " + t.str() +
                       "; model data inconsistent");
  }

  // Breakpoint collection: chamber walls plus surface-level chamber changes of
  // the restricted family, computed exactly per cover piece.
  std::vector<std::pair<Rational, std::string>> jobs;  // (t, chamber)
  std::set<Rational> seen;
  for (const auto& piece : cover.pieces) {
    const MoriChamber& c = find_chamber(m, piece.chamber);
    QVec A0 = mat_vec(m.restriction_map, mat_vec(c.p_map, D));
    QVec A1 = vneg(mat_vec(m.restriction_map, mat_vec(c.p_map, S)));
    std::set<Rational> ts{piece.lo, piece.hi};
    for (const auto& t : surface_family_breakpoints(
             m.surface, m.surface_flag.curve_class, A0, A1, piece.lo, piece.hi))
      ts.insert(t);
    for (const auto& t : ts)
      if (seen.insert(t).second) jobs.push_back({t, piece.chamber});
  }
  std::sort(jobs.begin(), jobs.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  auto run_job = [&](const std::pair<Rational, std::string>& job) {
    QVec Dt = vsub(D, vscale(job.first, S));
    return slice_with_chamber(m, find_chamber(m, job.second), Dt);
  };
  std::vector<SliceResult> slices(jobs.size());
  unsigned nthreads = get_threads();
  if (nthreads <= 1 || jobs.size() < 2) {
    for (std::size_t i = 0; i < jobs.size(); ++i) slices[i] = run_job(jobs[i]);
  } else {
    std::vector<std::future<void>> futs;
    std::atomic<std::size_t> next{0};
    for (unsigned w = 0; w < nthreads; ++w)
      futs.push_back(std::async(std::launch::async, [&]() {
        for (std::size_t i = next++; i < jobs.size(); i = next++)
          slices[i] = run_job(jobs[i]);
      }));
    for (auto& f : futs) f.get();
  }

  std::vector<QVec> cloud;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    out.profile.breakpoints.push_back(jobs[i].first);
    out.profile.slices.push_back(slices[i].polygon);
    out.profile.slice_chambers.push_back(jobs[i].second);
    for (const auto& v : slices[i].polygon.vertices)
      cloud.push_back({jobs[i].first, v[0], v[1]});
  }
  out.body = convex_hull_3d(cloud);

  // Convexity audit: between consecutive breakpoints the body's cross-section
  // must equal the directly computed slice.
  for (std::size_t i = 0; i + 1 < jobs.size(); ++i) {
    Rational tm = (jobs[i].first + jobs[i + 1].first) / 2;
    std::string ch;
    for (const auto& piece : cover.pieces)
      if (!(tm < piece.lo) && !(piece.hi < tm)) ch = piece.chamber;
    QVec Dt = vsub(D, vscale(tm, S));
    SliceResult direct = slice_with_chamber(m, find_chamber(m, ch), Dt);
    Polygon2 section = polytope_section(out.body, tm);
    if (direct.polygon != section)
      throw ModelError(
          "okounkov_body: slice family is not convex at t = " + tm.str() +
          "; model data inconsistent");
  }
  return out;
}

}  // namespace

OkounkovBody okounkov_body(const ThreefoldModel& m, const QVec& D) {
  return body_impl(m, D, false);
}

OkounkovBody limiting_body(const ThreefoldModel& m, const QVec& D) {
  return body_impl(m, D, true);
}

SliceResult slice_at(const ThreefoldModel& m, const QVec& D, const Rational& t,
                     bool allow_limiting) {
  if (!m.eff_cone.contains(D))
    throw ModelError("slice_at: divisor class is not pseudo-effective");
  if (!allow_limiting && !m.eff_cone.contains_interior(D))
    throw ModelError("slice_at: divisor class is not big");
  Rational ord = asymptotic_valuation_3(m, D);
  Rational mu = mu_threefold(m, D);
  if (t < ord || mu < t)
    throw ModelError("slice_at: empty slice, t = " + t.str() +
                     " outside [" + ord.str() + ", " + mu.str() + "]");
  QVec Dt = vsub(D, vscale(t, m.flag_surface_class()));
  for (const auto& name : chamber_of(m, Dt)) {
    const MoriChamber& c = find_chamber(m, name);
    if (admissible(c)) return slice_with_chamber(m, c, Dt);
  }
  std::string who = chamber_of(m, Dt).front();
  throw AdmissibilityError(
      "slice formula not valid at t = " + t.str() + ": chamber '" + who +
      "' is neither an identity small modification nor disjoint from the flag "
      "surface");
}

QVec body_translation_vector(const ThreefoldModel& m, const QVec& D) {
  if (!m.eff_cone.contains_interior(D))
    throw ModelError("body_translation_vector: divisor class is not big");
  auto chs = chamber_of(m, D);
  if (chs.size() != 1)
    throw ModelError("body_translation_vector: divisor lies on a chamber wall; "
                     "single-chamber containment required");
  MdsZariski z = zariski_mds(m, D);
  auto itS = z.coeffs.find(m.flag_surface_label);
  Rational aS = itS == z.coeffs.end() ? Rational(0) : itS->second;
  auto l = shift_of_coeffs(m, z.coeffs);
  QVec a = {aS, l.first, l.second};
  OkounkovBody full = limiting_body(m, D);
  OkounkovBody pos = limiting_body(m, z.positive);
  if (full.body != translate(pos.body, a))
    throw ModelError("body_translation_vector: translation law fails; model "
                     "data inconsistent");
  return a;
}

AdmissibilityReport check_flag_admissibility(const ThreefoldModel& m,
                                             const QVec& D) {
  AdmissibilityReport rep;
  auto parts = t_partition(m, D);
  std::set<std::string> met, bad;
  for (const auto& p : parts) {
    met.insert(p.chamber);
    if (!admissible(find_chamber(m, p.chamber))) bad.insert(p.chamber);
  }
  rep.chambers_met.assign(met.begin(), met.end());
  rep.inadmissible_met.assign(bad.begin(), bad.end());
  try {
    admissible_cover(m, parts, asymptotic_valuation_3(m, D), mu_threefold(m, D));
    rep.pass = true;
  } catch (const AdmissibilityError&) {
    rep.pass = false;
  }
  return rep;
}

PolyhedralityReport polyhedrality_report(const ThreefoldModel& m, const QVec& D) {
  OkounkovBody body = limiting_body(m, D);
  PolyhedralityReport rep;
  rep.chamber_intervals = body.partition.size();
  rep.slice_breakpoints = body.profile.breakpoints.size();
  rep.flag_picard_rank = m.surface.rank;
  rep.rank_one_shortcut = (m.surface.rank == 1);
  rep.vertices = body.body.vertices;
  rep.polyhedral = true;  // assembled from finitely many exact linear slices
  // mu_t (the width of the slice in x2) is piecewise linear; count its
  // maximal linear runs using the exact slice data.
  const auto& bp = body.profile.breakpoints;
  if (bp.size() <= 1) {
    rep.mu_t_pieces = bp.empty() ? 0 : 1;
    return rep;
  }
  auto width = [&](std::size_t i) {
    const auto& vs = body.profile.slices[i].vertices;
    Rational w = vs.empty() ? Rational(0) : vs[0][0];
    for (const auto& v : vs) w = max(w, v[0]);
    return w;  // max x2 of the slice; realizes mu_t plus the linear shift
  };
  std::vector<Rational> slopes;
  for (std::size_t i = 0; i + 1 < bp.size(); ++i)
    slopes.push_back((width(i + 1) - width(i)) / (bp[i + 1] - bp[i]));
  rep.mu_t_pieces = 1;
  for (std::size_t i = 1; i < slopes.size(); ++i)
    if (slopes[i] != slopes[i - 1]) ++rep.mu_t_pieces;
  return rep;
}

VolumeResult divisor_volume(const ThreefoldModel& m, const QVec& D) {
  VolumeResult r;
  if (!m.trilinear) {
    r.reason = "model carries no trilinear intersection data";
    return r;
  }
  MdsZariski z = zariski_mds(m, D);
  const MoriChamber& c = find_chamber(m, z.chamber);
  if (!c.identity_sqm) {
    r.reason = "primary chamber '" + c.name +
               "' is a non-identity small modification; volume via the "
               "trilinear form is not available";
    return r;
  }
  r.available = true;
  r.value = m.triple(z.positive, z.positive, z.positive);
  return r;
}

void set_threads(unsigned n) { g_threads.store(n == 0 ? 1 : n); }

unsigned get_threads() {
  unsigned v = g_threads.load();
  if (v == 0) {
    const char* env = std::getenv("OKOUNKOV_THREADS");
    v = 1;
    if (env) {
      long parsed = std::strtol(env, nullptr, 10);
      if (parsed > 0 && parsed <= 256) v = static_cast<unsigned>(parsed);
    }
    g_threads.store(v);
  }
  return v;
}

}  // namespace okb
