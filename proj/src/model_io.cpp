#include "okbody/model_io.hpp"

#include <json.hpp>

namespace okb {

namespace {

using Json = nlohmann::ordered_json;

Json rational_to_json(const Rational& r) {
  if (r.is_integer()) {
    mpz_class n = r.num();
    if (n.fits_slong_p()) return Json(n.get_si());
  }
  return Json(r.str());
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
  if (j.is_string()) return Rational::from_string(j.get<std::string>());
  throw ModelError("model file: expected integer or \"p/q\" string, got " +
                   j.dump());
}

Json vec_to_json(const QVec& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(rational_to_json(x));
  return a;
}

QVec vec_from_json(const Json& j) {
  if (!j.is_array()) throw ModelError("model file: expected array " + j.dump());
  QVec v;
  for (const auto& x : j) v.push_back(rational_from_json(x));
  return v;
}

Json mat_to_json(const QMat& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows; ++i) a.push_back(vec_to_json(m.row(i)));
  return a;
}

QMat mat_from_json(const Json& j) {
  std::vector<QVec> rows;
  for (const auto& r : j) rows.push_back(vec_from_json(r));
  if (rows.empty()) throw ModelError("model file: empty matrix");
  return QMat::from_rows(rows);
}

Json cone_to_json(const PolyhedralCone& c) {
  Json j;
  Json gens = Json::array(), facets = Json::array();
  for (const auto& g : c.generators()) gens.push_back(vec_to_json(g));
  for (const auto& f : c.facets()) facets.push_back(vec_to_json(f));
  j["generators"] = gens;
  j["facets"] = facets;
  return j;
}

PolyhedralCone cone_from_json(const Json& j, std::size_t dim,
                              const std::string& what) {
  bool has_g = j.contains("generators") && !j["generators"].empty();
  bool has_f = j.contains("facets") && !j["facets"].empty();
  if (!has_g && !has_f)
    throw ModelError("model file: " + what + " needs generators or facets");
  PolyhedralCone c;
  if (has_g) {
    std::vector<QVec> gens;
    for (const auto& g : j["generators"]) gens.push_back(vec_from_json(g));
    c = PolyhedralCone::from_generators(dim, gens);
  } else {
    std::vector<QVec> facets;
    for (const auto& f : j["facets"]) facets.push_back(vec_from_json(f));
    c = PolyhedralCone::from_facets(dim, facets);
  }
  if (has_g && has_f) {
    std::vector<QVec> facets;
    for (const auto& f : j["facets"]) facets.push_back(vec_from_json(f));
    PolyhedralCone c2 = PolyhedralCone::from_facets(dim, facets);
    if (!(c == c2))
      throw ModelError("model file: " + what +
                       " generators and facets describe different cones");
  }
  return c;
}

Json surface_to_json(const SurfaceModel& m, const SurfaceFlag& flag) {
  Json j;
  j["kind"] = "surface";
  j["name"] = m.name;
  j["basis"] = m.basis_labels;
  j["intersection_form"] = mat_to_json(m.intersection_form);
  Json curves = Json::array();
  for (std::size_t i = 0; i < m.negative_curves.size(); ++i) {
    Json c;
    c["label"] = m.negative_curve_labels[i];
    c["class"] = vec_to_json(m.negative_curves[i]);
    curves.push_back(c);
  }
  j["negative_curves"] = curves;
  j["eff_cone"] = cone_to_json(m.eff_cone);
  j["nef_cone"] = cone_to_json(m.nef_cone);
  Json fl;
  fl["curve_class"] = vec_to_json(flag.curve_class);
  fl["curve_selfint"] = rational_to_json(m.pair(flag.curve_class, flag.curve_class));
  Json pd = Json::object();
  for (const auto& [label, r] : flag.point_data) pd[label] = rational_to_json(r);
  fl["point_data"] = pd;
  j["flag"] = fl;
  return j;
}

SurfacePackage surface_from_json(const Json& j) {
  SurfacePackage pkg;
  SurfaceModel& m = pkg.model;
  m.name = j.value("name", std::string("surface"));
  m.basis_labels = j.at("basis").get<std::vector<std::string>>();
  m.rank = m.basis_labels.size();
  m.intersection_form = mat_from_json(j.at("intersection_form"));
  if (j.contains("negative_curves"))
    for (const auto& c : j["negative_curves"]) {
      m.negative_curve_labels.push_back(c.at("label").get<std::string>());
      m.negative_curves.push_back(vec_from_json(c.at("class")));
    }
  m.eff_cone = cone_from_json(j.at("eff_cone"), m.rank, "eff_cone");
  m.nef_cone = cone_from_json(j.at("nef_cone"), m.rank, "nef_cone");
  const Json& fl = j.at("flag");
  pkg.flag.curve_class = vec_from_json(fl.at("curve_class"));
  if (fl.contains("point_data"))
    for (const auto& [label, r] : fl["point_data"].items())
      pkg.flag.point_data[label] = rational_from_json(r);
  if (fl.contains("curve_selfint")) {
    Rational claimed = rational_from_json(fl["curve_selfint"]);
    if (claimed != m.pair(pkg.flag.curve_class, pkg.flag.curve_class))
      throw ModelError("model file: curve_selfint does not match the "
                       "intersection form");
  }
  validate_surface_model(m);
  return pkg;
}

Json threefold_to_json(const ThreefoldModel& m) {
  Json j;
  j["kind"] = "threefold";
  j["name"] = m.name;
  j["basis"] = m.basis_labels;
  if (m.trilinear) {
    Json t = Json::array();
    for (const auto& mat : *m.trilinear) t.push_back(mat_to_json(mat));
    j["trilinear_form"] = t;
  }
  Json eff = cone_to_json(m.eff_cone);
  eff["generator_labels"] = m.eff_generator_labels;
  Json gens = Json::array();
  for (const auto& g : m.eff_generators) gens.push_back(vec_to_json(g));
  eff["generators"] = gens;
  j["eff_cone"] = eff;
  Json chambers = Json::array();
  for (const auto& c : m.chambers) {
    Json cj;
    cj["name"] = c.name;
    Json cg = Json::array();
    for (const auto& g : c.cone.generators()) cg.push_back(vec_to_json(g));
    cj["generators"] = cg;
    cj["p_map"] = mat_to_json(c.p_map);
    cj["n_map"] = mat_to_json(c.n_map);
    cj["identity_sqm"] = c.identity_sqm;
    cj["flag_disjoint"] = c.flag_disjoint;
    Json shifts = Json::object();
    for (const auto& [label, s] : m.n_generator_shifts) {
      Json pair = Json::array();
      pair.push_back(rational_to_json(s.first));
      pair.push_back(rational_to_json(s.second));
      shifts[label] = pair;
    }
    cj["n_generator_shifts"] = shifts;
    chambers.push_back(cj);
  }
  j["chambers"] = chambers;
  Json fl;
  fl["surface_label"] = m.flag_surface_label;
  fl["surface_class"] = vec_to_json(m.flag_class);
  fl["restriction_map"] = mat_to_json(m.restriction_map);
  fl["curve_class"] = vec_to_json(m.surface_flag.curve_class);
  fl["curve_selfint"] = rational_to_json(
      m.surface.pair(m.surface_flag.curve_class, m.surface_flag.curve_class));
  Json pd = Json::object();
  for (const auto& [label, r] : m.surface_flag.point_data)
    pd[label] = rational_to_json(r);
  fl["point_data"] = pd;
  fl["surface"] = surface_to_json(m.surface, m.surface_flag);
  j["flag"] = fl;
  return j;
}

ThreefoldModel threefold_from_json(const Json& j) {
  ThreefoldModel m;
  m.name = j.value("name", std::string("threefold"));
  m.basis_labels = j.at("basis").get<std::vector<std::string>>();
  m.rank = m.basis_labels.size();
  if (j.contains("trilinear_form")) {
    std::vector<QMat> t;
    for (const auto& mat : j["trilinear_form"]) t.push_back(mat_from_json(mat));
    m.trilinear = t;
  }
  const Json& eff = j.at("eff_cone");
  m.eff_cone = cone_from_json(eff, m.rank, "eff_cone");
  if (eff.contains("generator_labels")) {
    m.eff_generator_labels =
        eff["generator_labels"].get<std::vector<std::string>>();
    for (const auto& g : eff.at("generators"))
      m.eff_generators.push_back(vec_from_json(g));
    if (m.eff_generators.size() != m.eff_generator_labels.size())
      throw ModelError("model file: eff generator labels/classes mismatch");
  }
  for (const auto& cj : j.at("chambers")) {
    MoriChamber c;
    c.name = cj.at("name").get<std::string>();
    std::vector<QVec> gens;
    for (const auto& g : cj.at("generators")) gens.push_back(vec_from_json(g));
    c.cone = PolyhedralCone::from_generators(m.rank, gens);
    c.p_map = mat_from_json(cj.at("p_map"));
    c.n_map = mat_from_json(cj.at("n_map"));
    c.identity_sqm = cj.value("identity_sqm", true);
    c.flag_disjoint = cj.value("flag_disjoint", false);
    if (cj.contains("n_generator_shifts"))
      for (const auto& [label, pair] : cj["n_generator_shifts"].items()) {
        std::pair<Rational, Rational> s = {rational_from_json(pair.at(0)),
                                           rational_from_json(pair.at(1))};
        auto it = m.n_generator_shifts.find(label);
        if (it != m.n_generator_shifts.end() && it->second != s)
          throw ModelError("model file: conflicting shift data for '" + label +
                           "' across chambers");
        m.n_generator_shifts[label] = s;
      }
    m.chambers.push_back(c);
  }
  const Json& fl = j.at("flag");
  m.flag_surface_label = fl.value("surface_label", std::string());
  m.flag_class = vec_from_json(fl.at("surface_class"));
  m.restriction_map = mat_from_json(fl.at("restriction_map"));
  SurfacePackage spkg = surface_from_json(fl.at("surface"));
  m.surface = spkg.model;
  m.surface_flag = spkg.flag;
  // The top-level flag block repeats the curve data; keep them consistent.
  if (fl.contains("curve_class") &&
      vec_from_json(fl["curve_class"]) != m.surface_flag.curve_class)
    throw ModelError("model file: flag curve_class disagrees with the nested "
                     "surface flag");
  validate_threefold_model(m);
  return m;
}

}  // namespace

std::string export_surface_json(const SurfaceModel& model,
                                const SurfaceFlag& flag) {
  return surface_to_json(model, flag).dump(2) + "\n";
}

std::string export_threefold_json(const ThreefoldModel& model) {
  return threefold_to_json(model).dump(2) + "\n";
}

LoadedModel load_model_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    throw ModelError(std::string("model file: JSON parse error: ") + e.what());
  }
  LoadedModel out;
  std::string kind = j.value("kind", std::string());
  try {
    if (kind == "surface")
      out.surface = surface_from_json(j);
    else if (kind == "threefold")
      out.threefold = threefold_from_json(j);
    else
      throw ModelError("model file: kind must be 'surface' or 'threefold'");
  } catch (const ModelError&) {
    throw;
  } catch (const std::exception& e) {
    throw ModelError(std::string("model file: ") + e.what());
  }
  return out;
}

}  // namespace okb
