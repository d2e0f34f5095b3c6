// Python bindings for the main operations.  Rationals cross the boundary as
// "p/q" strings (or ints), so exactness is preserved end to end.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "okbody/model_io.hpp"
#include "okbody/models.hpp"
#include "okbody/oracle.hpp"

namespace py = pybind11;
using namespace okb;

namespace {

Rational to_rational(const py::handle& h) {
  if (py::isinstance<py::int_>(h))
    return Rational(static_cast<long>(h.cast<long long>()));
  return Rational::from_string(h.cast<std::string>());
}

QVec to_qvec(const py::sequence& seq) {
  QVec v;
  for (const auto& x : seq) v.push_back(to_rational(x));
  return v;
}

py::list from_qvec(const QVec& v) {
  py::list out;
  for (const auto& x : v) out.append(x.str());
  return out;
}

py::list from_points(const std::vector<QVec>& pts) {
  py::list out;
  for (const auto& p : pts) out.append(from_qvec(p));
  return out;
}

Params to_params(const py::dict& d) {
  Params p;
  for (const auto& [k, v] : d) p[k.cast<std::string>()] = to_rational(v);
  return p;
}

py::dict polygon_dict(const Polygon2& p) {
  py::dict d;
  d["vertices"] = from_points(p.vertices);
  d["affine_dim"] = p.affine_dim;
  d["area"] = p.area().str();
  return d;
}

py::dict body_dict(const OkounkovBody& b) {
  py::dict d;
  d["vertices"] = from_points(b.body.vertices);
  py::list facets;
  for (const auto& [n, c] : b.body.facets)
    facets.append(py::make_tuple(from_qvec(n), c.str()));
  d["facets"] = facets;
  d["affine_dim"] = b.body.affine_dim;
  d["volume"] = b.body.volume().str();
  d["ord"] = b.ord.str();
  d["mu"] = b.mu.str();
  d["limiting"] = b.limiting;
  return d;
}

py::dict zariski_dict(const QVec& positive, const QVec& negative,
                      const std::map<std::string, Rational>& coeffs) {
  py::dict d;
  d["positive"] = from_qvec(positive);
  d["negative"] = from_qvec(negative);
  py::dict cs;
  for (const auto& [label, c] : coeffs) cs[py::str(label)] = c.str();
  d["coeffs"] = cs;
  return d;
}

struct PySurface {
  SurfacePackage pkg;
};

struct PyThreefold {
  ThreefoldModel model;
};

}  // namespace

PYBIND11_MODULE(_okbody, mod) {
  mod.doc() = "Exact Okounkov bodies on surfaces and Mori dream threefolds";

  mod.def("surface_names", &builtin_surface_names);
  mod.def("threefold_names", &builtin_threefold_names);

  py::register_exception<ModelError>(mod, "ModelError");
  py::register_exception<AdmissibilityError>(mod, "AdmissibilityError");

  py::class_<PySurface>(mod, "Surface")
      .def_static("builtin",
                  [](const std::string& name, const py::dict& params) {
                    return PySurface{builtin_surface(name, to_params(params))};
                  },
                  py::arg("name"), py::arg("params") = py::dict())
      .def_property_readonly(
          "name", [](const PySurface& s) { return s.pkg.model.name; })
      .def_property_readonly(
          "basis", [](const PySurface& s) { return s.pkg.model.basis_labels; })
      .def("zariski",
           [](const PySurface& s, const py::sequence& D) {
             auto z = zariski_decompose(s.pkg.model, to_qvec(D));
             return zariski_dict(z.positive, z.negative, z.coeffs);
           })
      .def("mu",
           [](const PySurface& s, const py::sequence& D) {
             return mu_surface(s.pkg.model, to_qvec(D), s.pkg.flag.curve_class)
                 .str();
           })
      .def("ord",
           [](const PySurface& s, const py::sequence& D) {
             return asymptotic_valuation_surface(s.pkg.model, to_qvec(D),
                                                 s.pkg.flag.curve_class)
                 .str();
           })
      .def("polygon",
           [](const PySurface& s, const py::sequence& D, bool limiting) {
             auto sp =
                 okounkov_polygon(s.pkg.model, s.pkg.flag, to_qvec(D), limiting);
             py::dict d = polygon_dict(sp.polygon);
             d["ord"] = sp.ord.str();
             d["mu"] = sp.mu.str();
             d["limiting"] = sp.limiting;
             return d;
           },
           py::arg("divisor"), py::arg("limiting") = false)
      .def("to_json", [](const PySurface& s) {
        return export_surface_json(s.pkg.model, s.pkg.flag);
      });

  py::class_<PyThreefold>(mod, "Threefold")
      .def_static("builtin",
                  [](const std::string& name, const py::dict& params) {
                    return PyThreefold{
                        builtin_threefold(name, to_params(params))};
                  },
                  py::arg("name"), py::arg("params") = py::dict())
      .def_static("from_json",
                  [](const std::string& text) {
                    LoadedModel lm = load_model_json(text);
                    if (!lm.threefold)
                      throw ModelError("document does not describe a threefold");
                    return PyThreefold{*lm.threefold};
                  })
      .def_property_readonly(
          "name", [](const PyThreefold& t) { return t.model.name; })
      .def_property_readonly(
          "basis", [](const PyThreefold& t) { return t.model.basis_labels; })
      .def("body",
           [](const PyThreefold& t, const py::sequence& D, bool limiting) {
             auto b = limiting ? limiting_body(t.model, to_qvec(D))
                               : okounkov_body(t.model, to_qvec(D));
             return body_dict(b);
           },
           py::arg("divisor"), py::arg("limiting") = false)
      .def("slice",
           [](const PyThreefold& t, const py::sequence& D,
              const py::handle& tval) {
             auto s = slice_at(t.model, to_qvec(D), to_rational(tval), true);
             py::dict d = polygon_dict(s.polygon);
             d["chamber"] = s.chamber;
             return d;
           })
      .def("zariski",
           [](const PyThreefold& t, const py::sequence& D) {
             auto z = zariski_mds(t.model, to_qvec(D));
             py::dict d = zariski_dict(z.positive, z.negative, z.coeffs);
             d["chamber"] = z.chamber;
             return d;
           })
      .def("mu",
           [](const PyThreefold& t, const py::sequence& D) {
             return mu_threefold(t.model, to_qvec(D)).str();
           })
      .def("ord",
           [](const PyThreefold& t, const py::sequence& D) {
             return asymptotic_valuation_3(t.model, to_qvec(D)).str();
           })
      .def("partition",
           [](const PyThreefold& t, const py::sequence& D) {
             py::list out;
             for (const auto& iv : t_partition(t.model, to_qvec(D)))
               out.append(py::make_tuple(iv.chamber, iv.lo.str(), iv.hi.str()));
             return out;
           })
      .def("chambers",
           [](const PyThreefold& t, const py::sequence& D) {
             return chamber_of(t.model, to_qvec(D));
           })
      .def("admissibility",
           [](const PyThreefold& t, const py::sequence& D) {
             auto r = check_flag_admissibility(t.model, to_qvec(D));
             py::dict d;
             d["chambers"] = r.chambers_met;
             d["inadmissible"] = r.inadmissible_met;
             d["pass"] = r.pass;
             return d;
           })
      .def("polyhedrality",
           [](const PyThreefold& t, const py::sequence& D) {
             auto r = polyhedrality_report(t.model, to_qvec(D));
             py::dict d;
             d["polyhedral"] = r.polyhedral;
             d["chamber_intervals"] = r.chamber_intervals;
             d["slice_breakpoints"] = r.slice_breakpoints;
             d["mu_t_pieces"] = r.mu_t_pieces;
             d["flag_picard_rank"] = r.flag_picard_rank;
             d["rank_one_shortcut"] = r.rank_one_shortcut;
             d["vertices"] = from_points(r.vertices);
             return d;
           })
      .def("volume",
           [](const PyThreefold& t, const py::sequence& D) -> py::object {
             auto v = divisor_volume(t.model, to_qvec(D));
             if (!v.available) return py::none();
             return py::str(v.value.str());
           })
      .def("to_json",
           [](const PyThreefold& t) { return export_threefold_json(t.model); });

  mod.def(
      "oracle_hull",
      [](const std::string& kind, long alpha, long beta1, long beta2,
         long mmax) {
        OracleKind k;
        if (kind == "p3")
          k = OracleKind::p3;
        else if (kind == "blowup1")
          k = OracleKind::blowup1;
        else if (kind == "blowup2")
          k = OracleKind::blowup2;
        else
          throw ModelError("unknown oracle kind '" + kind + "'");
        auto hull = oracle_hull(k, {alpha, beta1, beta2}, mmax);
        py::dict d;
        d["vertices"] = from_points(hull.vertices);
        d["affine_dim"] = hull.affine_dim;
        d["volume"] = hull.volume().str();
        return d;
      },
      py::arg("kind"), py::arg("alpha"), py::arg("beta1"), py::arg("beta2"),
      py::arg("mmax"));

  mod.def("set_threads", &set_threads);
}
