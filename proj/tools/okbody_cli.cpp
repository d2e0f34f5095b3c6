// Command-line front door: run body/slice/decomposition computations on
// built-in or file-backed models and emit deterministic text, CSV or OFF
// output.  Exit codes: 0 success, 2 validation error, 3 admissibility
// failure, 4 usage error.
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "okbody/model_io.hpp"
#include "okbody/models.hpp"
#include "okbody/oracle.hpp"

namespace {

using namespace okb;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonOpts {
  std::string model_name;
  std::string model_file;
  std::vector<std::string> params;
  std::string divisor;
  std::string divisor_expr;
  std::string format = "text";
  unsigned threads = 0;
};

void add_common(CLI::App* sub, CommonOpts& o, bool with_divisor) {
  sub->add_option("--model", o.model_name, "built-in model name");
  sub->add_option("--model-file", o.model_file, "path to a model JSON file");
  sub->add_option("--param", o.params, "model parameter, as key=value");
  if (with_divisor) {
    sub->add_option("--divisor", o.divisor,
                    "divisor coordinates in the model basis, comma-separated");
    sub->add_option("--divisor-expr", o.divisor_expr,
                    "divisor as a label expression, e.g. \"1*H+2*E2\"");
  }
  sub->add_option("--format", o.format, "output format: text, csv or off");
  sub->add_option("--threads", o.threads, "worker threads for slice fan-out");
}

Params parse_params(const std::vector<std::string>& kvs) {
  Params p;
  for (const auto& kv : kvs) {
    auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw UsageError("--param expects key=value, got '" + kv + "'");
    p[kv.substr(0, eq)] = Rational::from_string(kv.substr(eq + 1));
  }
  return p;
}

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

LoadedModel resolve_model(const CommonOpts& o) {
  if (o.model_name.empty() == o.model_file.empty())
    throw UsageError("exactly one of --model and --model-file is required");
  LoadedModel out;
  if (!o.model_file.empty()) {
    if (!o.params.empty())
      throw UsageError("--param applies only to built-in models");
    std::ifstream in(o.model_file);
    if (!in) throw ModelError("cannot read model file '" + o.model_file + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return load_model_json(ss.str());
  }
  Params params = parse_params(o.params);
  if (contains(builtin_threefold_names(), o.model_name))
    out.threefold = builtin_threefold(o.model_name, params);
  else if (contains(builtin_surface_names(), o.model_name))
    out.surface = builtin_surface(o.model_name, params);
  else
    throw UsageError("unknown model '" + o.model_name + "'");
  return out;
}

QVec parse_divisor(const CommonOpts& o,
                   const std::vector<std::string>& basis_labels) {
  if (o.divisor.empty() == o.divisor_expr.empty())
    throw UsageError("exactly one of --divisor and --divisor-expr is required");
  std::size_t rank = basis_labels.size();
  QVec D(rank, Rational(0));
  if (!o.divisor.empty()) {
    std::stringstream ss(o.divisor);
    std::string tok;
    std::size_t i = 0;
    while (std::getline(ss, tok, ',')) {
      if (i >= rank) throw ModelError("divisor has more coordinates than the basis");
      D[i++] = Rational::from_string(tok);
    }
    if (i != rank) throw ModelError("divisor has fewer coordinates than the basis");
    return D;
  }
  // Expression form: terms coef*label or label, joined with + and -.
  std::string expr = o.divisor_expr;
  std::size_t pos = 0;
  while (pos < expr.size()) {
    int sign = 1;
    while (pos < expr.size() && (expr[pos] == '+' || expr[pos] == '-')) {
      if (expr[pos] == '-') sign = -sign;
      ++pos;
    }
    std::size_t end = pos;
    while (end < expr.size() && expr[end] != '+' && expr[end] != '-') ++end;
    std::string term = expr.substr(pos, end - pos);
    pos = end;
    if (term.empty()) throw UsageError("empty term in --divisor-expr");
    Rational coef(1);
    std::string label = term;
    auto star = term.find('*');
    if (star != std::string::npos) {
      coef = Rational::from_string(term.substr(0, star));
      label = term.substr(star + 1);
    }
    auto it = std::find(basis_labels.begin(), basis_labels.end(), label);
    // Accept a pullback-style "phi" prefix on basis labels, e.g. phiH for H.
    if (it == basis_labels.end() && label.rfind("phi", 0) == 0)
      it = std::find(basis_labels.begin(), basis_labels.end(), label.substr(3));
    if (it == basis_labels.end())
      throw UsageError("unknown basis label '" + label + "' in --divisor-expr");
    D[static_cast<std::size_t>(it - basis_labels.begin())] += Rational(sign) * coef;
  }
  return D;
}

std::string vec_line(const QVec& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].str();
  }
  return s;
}

void print_sorted_vertices(std::ostream& os, std::vector<QVec> verts) {
  std::sort(verts.begin(), verts.end(), lex_less);
  for (const auto& v : verts) os << vec_line(v) << "\n";
}

void print_polytope_text(std::ostream& os, const Polytope3& p) {
  print_sorted_vertices(os, p.vertices);
  for (const auto& [n, c] : p.facets)
    os << vec_line(n) << " <= " << c.str() << "\n";
}

std::vector<std::pair<QVec, Rational>> polygon_facets(const Polygon2& p) {
  std::vector<std::pair<QVec, Rational>> out;
  if (p.affine_dim != 2) return out;
  std::size_t n = p.vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    const QVec& a = p.vertices[i];
    const QVec& b = p.vertices[(i + 1) % n];
    QVec normal = primitive({b[1] - a[1], a[0] - b[0]});
    out.push_back({normal, dot(normal, a)});
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return lex_less(x.first, y.first) ||
           (x.first == y.first && x.second < y.second);
  });
  return out;
}

void print_polygon_text(std::ostream& os, const Polygon2& p) {
  print_sorted_vertices(os, p.vertices);
  for (const auto& [n, c] : polygon_facets(p))
    os << vec_line(n) << " <= " << c.str() << "\n";
}

std::string vertices_cell(const Polygon2& p) {
  std::vector<QVec> verts = p.vertices;
  std::sort(verts.begin(), verts.end(), lex_less);
  std::string s;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    if (i) s += " ";
    s += verts[i][0].str() + ":" + verts[i][1].str();
  }
  return s;
}

void print_off(std::ostream& os, const Polytope3& p) {
  if (p.affine_dim < 3)
    throw ModelError("OFF export requires a full-dimensional body");
  auto cycles = facet_cycles(p);
  std::size_t ntris = 0;
  for (const auto& c : cycles) ntris += c.size() - 2;
  os << "OFF\n" << p.vertices.size() << " " << ntris << " 0\n";
  char buf[96];
  for (const auto& v : p.vertices) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", v[0].approx(),
                  v[1].approx(), v[2].approx());
    os << buf;
  }
  for (auto cycle : cycles) {
    // Fan from the lowest-index vertex, preserving the cycle orientation.
    auto lowest = std::min_element(cycle.begin(), cycle.end());
    std::rotate(cycle.begin(), lowest, cycle.end());
    for (std::size_t j = 1; j + 1 < cycle.size(); ++j)
      os << "3 " << cycle[0] << " " << cycle[j] << " " << cycle[j + 1] << "\n";
  }
}

void print_body_csv(std::ostream& os, const OkounkovBody& b) {
  os << "t,vertices\n";
  for (std::size_t i = 0; i < b.profile.breakpoints.size(); ++i)
    os << b.profile.breakpoints[i].str() << ","
       << vertices_cell(b.profile.slices[i]) << "\n";
}

int run_body(const CommonOpts& o, bool limiting) {
  LoadedModel lm = resolve_model(o);
  if (lm.surface) {
    const auto& pkg = *lm.surface;
    QVec D = parse_divisor(o, pkg.model.basis_labels);
    SurfacePolygon sp = okounkov_polygon(pkg.model, pkg.flag, D, limiting);
    if (o.format == "text")
      print_polygon_text(std::cout, sp.polygon);
    else if (o.format == "csv")
      std::cout << "t,vertices\n" << "-" << "," << vertices_cell(sp.polygon)
                << "\n";
    else
      throw UsageError("format '" + o.format + "' not supported for surfaces");
    return 0;
  }
  const ThreefoldModel& m = *lm.threefold;
  QVec D = parse_divisor(o, m.basis_labels);
  OkounkovBody b = limiting ? limiting_body(m, D) : okounkov_body(m, D);
  if (o.format == "text")
    print_polytope_text(std::cout, b.body);
  else if (o.format == "csv")
    print_body_csv(std::cout, b);
  else if (o.format == "off")
    print_off(std::cout, b.body);
  else
    throw UsageError("unknown format '" + o.format + "'");
  return 0;
}

int run_slice(const CommonOpts& o, const std::string& t_str) {
  LoadedModel lm = resolve_model(o);
  if (!lm.threefold) throw UsageError("slice requires a threefold model");
  const ThreefoldModel& m = *lm.threefold;
  QVec D = parse_divisor(o, m.basis_labels);
  Rational t = Rational::from_string(t_str);
  SliceResult s = slice_at(m, D, t, true);
  if (o.format == "text") {
    std::cout << "t " << t.str() << "\n";
    std::cout << "chamber " << s.chamber << "\n";
    print_polygon_text(std::cout, s.polygon);
  } else if (o.format == "csv") {
    std::cout << "t,vertices\n" << t.str() << "," << vertices_cell(s.polygon)
              << "\n";
  } else {
    throw UsageError("format '" + o.format + "' not supported for slice");
  }
  return 0;
}

int run_zariski(const CommonOpts& o) {
  LoadedModel lm = resolve_model(o);
  if (lm.surface) {
    const auto& pkg = *lm.surface;
    QVec D = parse_divisor(o, pkg.model.basis_labels);
    ZariskiDecomposition z = zariski_decompose(pkg.model, D);
    std::cout << "P " << vec_line(z.positive) << "\n";
    std::cout << "N " << vec_line(z.negative) << "\n";
    for (const auto& label : z.support)
      std::cout << "N[" << label << "] " << z.coeffs.at(label).str() << "\n";
    return 0;
  }
  const ThreefoldModel& m = *lm.threefold;
  QVec D = parse_divisor(o, m.basis_labels);
  MdsZariski z = zariski_mds(m, D);
  std::cout << "chamber " << z.chamber << "\n";
  std::cout << "P " << vec_line(z.positive) << "\n";
  std::cout << "N " << vec_line(z.negative) << "\n";
  for (const auto& label : z.support)
    std::cout << "N[" << label << "] " << z.coeffs.at(label).str() << "\n";
  return 0;
}

int run_scalar(const CommonOpts& o, bool want_mu) {
  LoadedModel lm = resolve_model(o);
  Rational v;
  if (lm.surface) {
    const auto& pkg = *lm.surface;
    QVec D = parse_divisor(o, pkg.model.basis_labels);
    v = want_mu ? mu_surface(pkg.model, D, pkg.flag.curve_class)
                : asymptotic_valuation_surface(pkg.model, D,
                                               pkg.flag.curve_class);
  } else {
    const ThreefoldModel& m = *lm.threefold;
    QVec D = parse_divisor(o, m.basis_labels);
    v = want_mu ? mu_threefold(m, D) : asymptotic_valuation_3(m, D);
  }
  std::cout << v.str() << "\n";
  return 0;
}

int run_partition(const CommonOpts& o) {
  LoadedModel lm = resolve_model(o);
  if (!lm.threefold) throw UsageError("partition requires a threefold model");
  const ThreefoldModel& m = *lm.threefold;
  QVec D = parse_divisor(o, m.basis_labels);
  for (const auto& iv : t_partition(m, D))
    std::cout << iv.chamber << " [" << iv.lo.str() << ", " << iv.hi.str()
              << "]\n";
  return 0;
}

int run_chambers(const CommonOpts& o) {
  LoadedModel lm = resolve_model(o);
  if (!lm.threefold) throw UsageError("chambers requires a threefold model");
  const ThreefoldModel& m = *lm.threefold;
  QVec D = parse_divisor(o, m.basis_labels);
  for (const auto& name : chamber_of(m, D)) std::cout << name << "\n";
  return 0;
}

int run_admissibility(const CommonOpts& o) {
  LoadedModel lm = resolve_model(o);
  if (!lm.threefold)
    throw UsageError("admissibility requires a threefold model");
  const ThreefoldModel& m = *lm.threefold;
  QVec D = parse_divisor(o, m.basis_labels);
  AdmissibilityReport r = check_flag_admissibility(m, D);
  std::cout << "chambers";
  for (const auto& n : r.chambers_met) std::cout << " " << n;
  std::cout << "\ninadmissible";
  for (const auto& n : r.inadmissible_met) std::cout << " " << n;
  std::cout << "\npass " << (r.pass ? "yes" : "no") << "\n";
  return 0;
}

int run_polyhedrality(const CommonOpts& o) {
  LoadedModel lm = resolve_model(o);
  if (!lm.threefold)
    throw UsageError("polyhedrality requires a threefold model");
  const ThreefoldModel& m = *lm.threefold;
  QVec D = parse_divisor(o, m.basis_labels);
  PolyhedralityReport r = polyhedrality_report(m, D);
  std::cout << "polyhedral " << (r.polyhedral ? "yes" : "no") << "\n";
  std::cout << "chamber_intervals " << r.chamber_intervals << "\n";
  std::cout << "slice_breakpoints " << r.slice_breakpoints << "\n";
  std::cout << "mu_t_pieces " << r.mu_t_pieces << "\n";
  std::cout << "flag_picard_rank " << r.flag_picard_rank << "\n";
  std::cout << "rank_one_shortcut " << (r.rank_one_shortcut ? "yes" : "no")
            << "\n";
  std::cout << "vertices " << r.vertices.size() << "\n";
  print_sorted_vertices(std::cout, r.vertices);
  return 0;
}

int run_oracle(const CommonOpts& o, long mmax) {
  LoadedModel lm = resolve_model(o);
  if (!lm.threefold || lm.threefold->name != "blowup-p3-2pts")
    throw UsageError("oracle supports only the blowup-p3-2pts model");
  QVec D = parse_divisor(o, lm.threefold->basis_labels);
  OracleClass cls;
  for (std::size_t i = 0; i < 3; ++i)
    if (!D[i].is_integer())
      throw ModelError("oracle requires an integral divisor class");
  cls.alpha = static_cast<long>(D[0].num().get_si());
  cls.beta1 = -static_cast<long>(D[1].num().get_si());
  cls.beta2 = -static_cast<long>(D[2].num().get_si());
  Polytope3 hull = oracle_hull(OracleKind::blowup2, cls, mmax);
  print_polytope_text(std::cout, hull);
  return 0;
}

int run_validate(const CommonOpts& o) {
  LoadedModel lm = resolve_model(o);
  if (lm.threefold) {
    std::string text = export_threefold_json(*lm.threefold);
    LoadedModel back = load_model_json(text);
    if (!back.threefold || !(*back.threefold == *lm.threefold))
      throw ModelError("model did not survive an export/load round-trip");
    std::cout << "ok threefold " << lm.threefold->name << " chambers "
              << lm.threefold->chambers.size() << "\n";
  } else {
    std::string text = export_surface_json(lm.surface->model, lm.surface->flag);
    LoadedModel back = load_model_json(text);
    if (!back.surface || !(back.surface->model == lm.surface->model) ||
        !(back.surface->flag == lm.surface->flag))
      throw ModelError("model did not survive an export/load round-trip");
    std::cout << "ok surface " << lm.surface->model.name << " curves "
              << lm.surface->model.negative_curves.size() << "\n";
  }
  return 0;
}

int run_export(const CommonOpts& o) {
  LoadedModel lm = resolve_model(o);
  if (lm.threefold)
    std::cout << export_threefold_json(*lm.threefold);
  else
    std::cout << export_surface_json(lm.surface->model, lm.surface->flag);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Okounkov bodies of divisors on surfaces and Mori dream "
               "threefolds, in exact rational arithmetic"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string t_str;
  long mmax = 1;

  auto* body = app.add_subcommand("body", "Okounkov body of a big divisor");
  add_common(body, o, true);
  auto* lim = app.add_subcommand("limiting-body",
                                 "limiting body of a pseudo-effective divisor");
  add_common(lim, o, true);
  auto* slice = app.add_subcommand("slice", "cross-section of the body at x1=t");
  add_common(slice, o, true);
  slice->add_option("--t", t_str, "slice parameter, p/q")->required();
  auto* zar = app.add_subcommand("zariski", "Zariski decomposition");
  add_common(zar, o, true);
  auto* mu = app.add_subcommand("mu", "effective threshold along the flag");
  add_common(mu, o, true);
  auto* ord = app.add_subcommand("ord", "asymptotic valuation along the flag");
  add_common(ord, o, true);
  auto* part = app.add_subcommand("partition", "chamber intervals of D - tS");
  add_common(part, o, true);
  auto* cham = app.add_subcommand("chambers", "Mori chambers containing D");
  add_common(cham, o, true);
  auto* adm = app.add_subcommand("admissibility", "flag admissibility report");
  add_common(adm, o, true);
  auto* poly = app.add_subcommand("polyhedrality", "polyhedrality report");
  add_common(poly, o, true);
  auto* oracle = app.add_subcommand(
      "oracle", "brute-force section-enumeration hull (blowup-p3-2pts)");
  add_common(oracle, o, true);
  oracle->add_option("--mmax", mmax, "largest multiple enumerated")->required();
  auto* val = app.add_subcommand("validate", "validate a model end to end");
  add_common(val, o, false);
  auto* exp = app.add_subcommand("export-model", "emit the model as JSON");
  add_common(exp, o, false);

  try {
    app.parse(argc, argv);
    if (o.threads > 0) okb::set_threads(o.threads);
    if (o.format != "text" && o.format != "csv" && o.format != "off")
      throw UsageError("unknown format '" + o.format + "'");
    if (body->parsed()) return run_body(o, false);
    if (lim->parsed()) return run_body(o, true);
    if (slice->parsed()) return run_slice(o, t_str);
    if (zar->parsed()) return run_zariski(o);
    if (mu->parsed()) return run_scalar(o, true);
    if (ord->parsed()) return run_scalar(o, false);
    if (part->parsed()) return run_partition(o);
    if (cham->parsed()) return run_chambers(o);
    if (adm->parsed()) return run_admissibility(o);
    if (poly->parsed()) return run_polyhedrality(o);
    if (oracle->parsed()) return run_oracle(o, mmax);
    if (val->parsed()) return run_validate(o);
    if (exp->parsed()) return run_export(o);
    std::cerr << "error: no subcommand\n";
    return 4;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 4;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const okb::AdmissibilityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
