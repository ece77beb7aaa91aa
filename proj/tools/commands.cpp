#include "commands.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

namespace relproj::cli {

namespace {

ojson check_json(const CheckReport& c) {
  ojson j = ojson::object();
  j["name"] = c.name;
  j["status"] = c.passed() ? "pass" : "fail";
  j["checked"] = c.checked;
  j["violations"] = c.violations;
  j["notes"] = c.notes;
  return j;
}

ojson vec_json(const Vec& v) {
  ojson out = ojson::array();
  for (const auto& x : v) out.push_back(format_rational(x));
  return out;
}

ojson matrix_json(const Matrix& m) {
  ojson out = ojson::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(vec_json(m.row(r)));
  return out;
}

// A degree-e element printed as a single rational when it is a multiple of the unit.
ojson element_json(const AlgebraInC& A, const Vec& v) {
  const auto zero = A.degree_zero_indices();
  if (zero.size() == 1) return format_rational(v[zero[0]] / A.unit()[zero[0]]);
  ojson out = ojson::array();
  for (auto i : zero) out.push_back(format_rational(v[i]));
  return out;
}

ojson coords_json(const AlgebraInC& A, const ChartCoords& c) {
  ojson j = ojson::object();
  j["chart"] = c.index;
  ojson cs = ojson::array();
  for (const auto& v : c.coords) cs.push_back(element_json(A, v));
  j["coords"] = cs;
  return j;
}

CheckReport single(const std::string& name, bool ok, const std::string& witness) {
  CheckReport c(name);
  c.checked = 1;
  if (!ok) c.fail(witness);
  return c;
}

std::vector<std::size_t> dims_of(const GradedSpace& X) { return X.dims(); }

ModulePtr super_odd_line() {
  const AlgebraPtr k = ground_field(Category::super_vector_spaces());
  GradedSpace X(Category::super_vector_spaces(), {0, 1});
  return std::make_shared<const ModuleInC>(k, X, std::vector<Vec>{Vec{Q(1)}}, "odd line");
}

void line_data(Report& r, const LineVerdict& v) {
  r.data["invertible"] = v.invertible;
  r.data["line_object"] = v.line;
  if (v.certificate) r.data["triangles"] = v.certificate->triangles;
  if (v.sig) r.data["signature"] = vec_json(v.sig->value);
}

std::vector<ProjPoint> random_points(const AlgebraPtr& A, std::size_t n, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  std::uniform_int_distribution<std::size_t> chart(0, n);
  std::vector<ProjPoint> out;
  const auto zero = A->degree_zero_indices();
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t i = chart(rng);
    std::vector<Vec> coords;
    for (std::size_t j = 0; j < n; ++j) {
      Vec c(A->dim(), Q(0));
      for (auto z : zero) {
        c[z] = Q(num(rng), den(rng));
        c[z].canonicalize();
      }
      coords.push_back(A->from_degree_zero(A->degree_zero_part(c)));
    }
    out.push_back(point_from_chart(A, n, i, coords));
  }
  return out;
}

Report axioms_command(Workspace& ws, const json& def) {
  Report r;
  r.suite = "axioms";
  const CategoryPtr cat = ws.category(def, "input");
  r.add(check_pentagon(cat->associator()));
  r.add(check_hexagon(cat->associator(), cat->symmetry()));
  r.data["group"] = cat->group().orders();
  r.data["order"] = cat->group().size();
  return r;
}

Report algebra_command(Workspace& ws, const json& def) {
  Report r;
  r.suite = "algebra";
  const AlgebraPtr A = ws.algebra(def, "input");
  r.add(check_algebra_axioms(*A));
  r.data["name"] = A->name;
  r.data["dim"] = A->dim();
  r.data["dims"] = dims_of(A->carrier());
  if (A->dim() > 0) {
    const auto ms = maximal_ideals(A);
    ojson mj = ojson::array();
    for (const auto& m : ms) mj.push_back(m.subspace.total_dim());
    r.data["maximal_ideal_dims"] = mj;
    r.data["field_object"] = is_field_object(A);
  }
  return r;
}

Report ideal_command(Workspace& ws, const json& def) {
  Report r;
  r.suite = "ideal";
  const AlgebraPtr A = ws.algebra(def.at("algebra"), "input/algebra");
  const auto gens = ws.coordinates(A, def.contains("generators") ? def.at("generators") : json::array(), "input/generators");
  std::vector<ElementEndo> family;
  for (const auto& g : gens) family.push_back(ElementEndo::multiplication(A, g));
  const Ideal I = generated_ideal(A, family);
  const auto s = partition_of_unity(A, family);
  r.data["ideal_dims"] = I.subspace.dims();
  r.data["generating"] = I.is_whole();
  r.add(single("partition of unity agrees with the generated ideal", s.has_value() == I.is_whole(),
               s ? "partition found for a family generating a proper ideal" : "no partition for a generating family"));
  if (s) {
    Vec total(A->dim(), Q(0));
    ojson coeffs = ojson::array();
    for (std::size_t k = 0; k < family.size(); ++k) {
      axpy(total, Q(1), A->multiply((*s)[k].element, family[k].element));
      coeffs.push_back(element_json(*A, (*s)[k].element));
    }
    r.add(single("sum s_i f_i = 1", total == A->unit(), "sum differs from the unit"));
    r.data["partition"] = coeffs;
  }
  return r;
}

Report localize_command(Workspace& ws, const json& def) {
  Report r;
  r.suite = "localize";
  const AlgebraPtr A = ws.algebra(def.at("algebra"), "input/algebra");
  const Vec f = ws.scalar(A, def.at("element"), "input/element");
  const Localization L = localize(A, ElementEndo::multiplication(A, f));
  r.data["dim"] = L.algebra->dim();
  r.data["fitting_index"] = L.fitting_index;
  r.add(check_algebra_axioms(*L.algebra));
  r.add(single("u(f) is invertible in A_f",
               L.algebra->multiply(L.to_local.apply(f), L.inverse_image) == L.algebra->unit(),
               "u(f) times its claimed inverse is not 1"));
  const json& targets = def.contains("targets") ? def.at("targets") : json::array();
  for (std::size_t k = 0; k < targets.size(); ++k) {
    const AlgebraMap v = ws.morphism(targets[k], "input/targets/" + std::to_string(k));
    auto w = L.factor(v);
    CheckReport c("factorization through A_f, target " + std::to_string(k));
    c.checked = 1;
    if (!w) c.note("v(f) is not invertible: no factorization");
    else if (!(w->map * L.to_local.map == v.map)) c.fail("factored map does not restrict to v");
    r.add(std::move(c));
  }
  return r;
}

Report cover_command(Workspace& ws, const json& def, const Options& opt) {
  Report r;
  r.suite = "cover";
  const Covering cov = ws.covering(def, "input");
  const std::size_t samples = opt.samples.value_or(8);
  const CoveringReport cr = verify_covering(cov, samples, opt.seed);
  r.seed = opt.seed;
  r.samples = samples;
  r.add(cr.report);
  r.add(single("is covering", cr.is_covering(), "flat=" + to_string(cr.flat) + " jointly conservative=" +
                                                     to_string(cr.jointly_conservative)));
  r.data["flat"] = to_string(cr.flat);
  r.data["jointly_conservative"] = to_string(cr.jointly_conservative);
  r.data["finite_presentation"] = to_string(cr.finite_presentation);
  ojson ov = ojson::object();
  for (const auto& [key, t] : cov.overlaps)
    ov[std::to_string(key.first) + "," + std::to_string(key.second)] = t.algebra->dim();
  r.data["overlap_dims"] = ov;
  return r;
}

Report glue_command(Workspace& ws, const json& def) {
  Report r;
  r.suite = "glue";
  const DescentDatum d = ws.descent(def, "input");
  const CheckReport cocycle = check_cocycle(d);
  r.add(cocycle);
  if (!cocycle.passed()) return r;
  const GlueResult g = glue(d);
  r.add(g.report);
  r.data["dim"] = g.module->dim();
  r.data["dims"] = dims_of(g.module->carrier());
  r.data["comparisons_iso"] = g.comparisons_iso;
  const LineVerdict v = is_line_object(g.module);
  line_data(r, v);
  return r;
}

Report line_command(Workspace& ws, const json& def) {
  Report r;
  r.suite = "line";
  const ModulePtr L = ws.module(def, "input");
  r.add(check_module_axioms(*L));
  const LineVerdict v = is_line_object(L);
  r.add(v.report);
  line_data(r, v);
  return r;
}

Report point_verify(Workspace& ws, const json& def) {
  Report r;
  r.suite = "proj verify";
  auto in = ws.point(def, "input");
  if (in.n == 0) r.warnings.push_back("n = 0: P^0 is a single point");
  if (in.sub) {
    r.add(single("point", in.sub->point.has_value(), in.sub->failure));
    if (in.sub->point) {
      ojson charts = ojson::array();
      for (std::size_t i = 0; i <= in.n; ++i)
        if (chart_membership(*in.sub->point, i)) charts.push_back(i);
      r.data["charts"] = charts;
      r.data["retraction"] = matrix_json(in.sub->point->retraction.map.dense());
    }
  } else {
    r.add(single("quotient point", in.quot->point.has_value(), in.quot->failure));
    if (in.quot->point) {
      ojson charts = ojson::array();
      for (std::size_t i = 0; i <= in.n; ++i)
        if (quot_chart_membership(*in.quot->point, i)) charts.push_back(i);
      r.data["charts"] = charts;
    }
  }
  return r;
}

Report point_chart(Workspace& ws, const json& def) {
  Report r;
  r.suite = "proj chart";
  auto in = ws.point(def, "input");
  if (in.n == 0) r.warnings.push_back("n = 0: P^0 is a single point");
  ojson charts = ojson::array();
  if (in.sub) {
    r.add(single("point", in.sub->point.has_value(), in.sub->failure));
    if (!in.sub->point) return r;
    CheckReport rt("chart round trip");
    for (std::size_t i = 0; i <= in.n; ++i) {
      if (!chart_membership(*in.sub->point, i)) continue;
      const ChartCoords c = chart_coordinates(*in.sub->point, i);
      charts.push_back(coords_json(*in.algebra, c));
      rt.checked++;
      if (!points_equal(point_from_chart(in.algebra, in.n, i, c.coords), *in.sub->point))
        rt.fail("point_from_chart(chart_coordinates) differs in chart " + std::to_string(i));
    }
    r.add(std::move(rt));
  } else {
    r.add(single("quotient point", in.quot->point.has_value(), in.quot->failure));
    if (!in.quot->point) return r;
    for (std::size_t i = 0; i <= in.n; ++i)
      if (quot_chart_membership(*in.quot->point, i)) charts.push_back(coords_json(*in.algebra, quot_chart_coordinates(*in.quot->point, i)));
  }
  r.data["charts"] = charts;
  return r;
}

Report point_dualize(Workspace& ws, const json& def) {
  Report r;
  r.suite = "proj dualize";
  auto in = ws.point(def, "input");
  const bool sub_form = in.sub.has_value();
  const std::string failure = sub_form ? in.sub->failure : in.quot->failure;
  const bool ok = sub_form ? in.sub->point.has_value() : in.quot->point.has_value();
  r.add(single("input point", ok, failure));
  if (!ok) return r;
  const QuotPoint q = sub_form ? dualize_point_inv(*in.sub->point) : *in.quot->point;
  const ProjPoint p = dualize_point(q);
  if (sub_form) r.add(single("round trip", points_equal(p, *in.sub->point), "dualizing twice gives another subobject"));
  else r.add(single("round trip", quotients_equal(dualize_point_inv(p), q), "dualizing twice gives another quotient"));
  CheckReport charts("charts agree");
  ojson cj = ojson::array();
  for (std::size_t i = 0; i <= in.n; ++i) {
    const bool qm = quot_chart_membership(q, i), pm = chart_membership(p, i);
    charts.checked++;
    if (qm != pm) {
      charts.fail("chart " + std::to_string(i) + " membership differs");
      continue;
    }
    if (!qm) continue;
    const ChartCoords a = quot_chart_coordinates(q, i), b = chart_coordinates(p, i);
    if (!(a == b)) charts.fail("chart " + std::to_string(i) + " coordinates differ");
    cj.push_back(coords_json(*in.algebra, b));
  }
  r.add(std::move(charts));
  r.data["charts"] = cj;
  if (sub_form) r.data["epi"] = matrix_json(q.epi.map.dense());
  else r.data["mono"] = matrix_json(p.mono.map.dense());
  return r;
}

Report point_glue(Workspace& ws, const json& def) {
  Report r;
  r.suite = "proj glue";
  const Covering cov = ws.covering(def.at("covering"), "input/covering");
  const json& pts = def.at("points");
  std::vector<ProjPoint> locals;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    auto in = ws.point(pts[k], "input/points/" + std::to_string(k));
    if (!in.sub || !in.sub->point) throw InputError("input/points/" + std::to_string(k) + ": not a valid point" +
                                                    (in.sub ? ": " + in.sub->failure : ""));
    locals.push_back(*in.sub->point);
  }
  const SheafResult s = sheaf_condition_instance(cov, locals);
  r.add(s.report);
  r.add(single("glued point", s.point.has_value(), s.diagnosis));
  if (!s.point) return r;
  r.add(single("product of local lines is a line", s.product_line, "product line check failed"));
  r.add(single("glued point restricts to the local points", s.counit, "restriction differs"));
  ojson charts = ojson::array();
  for (std::size_t i = 0; i <= s.point->n; ++i)
    if (chart_membership(*s.point, i)) charts.push_back(coords_json(*cov.base, chart_coordinates(*s.point, i)));
  r.data["charts"] = charts;
  r.data["mono"] = matrix_json(s.point->mono.map.dense());
  return r;
}

Report point_fieldcover(Workspace& ws, const json& def, const Options& opt) {
  Report r;
  r.suite = "proj fieldcover";
  const AlgebraPtr K = ws.algebra(def.contains("algebra") ? def.at("algebra") : json("O"), "input/algebra");
  const std::size_t n = def.at("n").get<std::size_t>();
  if (n == 0) r.warnings.push_back("n = 0: P^0 is a single point");
  std::vector<ProjPoint> points;
  const json& pts = def.contains("points") ? def.at("points") : json::array();
  for (std::size_t k = 0; k < pts.size(); ++k) {
    json p = pts[k];
    if (p.is_object() && !p.contains("n")) p["n"] = n;
    if (p.is_object() && !p.contains("algebra")) p["algebra"] = def.contains("algebra") ? def.at("algebra") : json("O");
    auto in = ws.point(p, "input/points/" + std::to_string(k));
    if (!in.sub || !in.sub->point) throw InputError("input/points/" + std::to_string(k) + ": not a valid point");
    points.push_back(*in.sub->point);
  }
  const std::size_t samples = opt.samples.value_or(def.contains("samples") ? def.at("samples").get<std::size_t>() : 0);
  if (samples > 0) {
    r.seed = opt.seed;
    r.samples = samples;
    for (auto& p : random_points(K, n, samples, opt.seed)) points.push_back(std::move(p));
  }
  r.add(field_cover_check(K, n, points));
  r.data["field_object"] = true;
  r.data["points"] = points.size();
  return r;
}

}  // namespace

bool Report::passed() const {
  for (const auto& c : checks)
    if (!c.passed()) return false;
  return true;
}

ojson report_json(const Report& r) {
  ojson j = ojson::object();
  j["suite"] = r.suite;
  if (r.seed) j["seed"] = *r.seed;
  if (r.samples) j["samples"] = *r.samples;
  j["status"] = r.passed() ? "pass" : "fail";
  ojson cs = ojson::array();
  for (const auto& c : r.checks) cs.push_back(check_json(c));
  j["checks"] = cs;
  if (!r.warnings.empty()) j["warnings"] = r.warnings;
  j["data"] = r.data;
  return j;
}

std::string report_text(const Report& r) {
  std::ostringstream os;
  os << r.suite << "\n";
  if (r.seed) os << "  seed: " << *r.seed << "\n";
  if (r.samples) os << "  samples: " << *r.samples << "\n";
  for (const auto& w : r.warnings) os << "  warning: " << w << "\n";
  for (const auto& c : r.checks) {
    os << (c.passed() ? "PASS  " : "FAIL  ") << c.name << " (" << c.checked << " checked)\n";
    for (const auto& v : c.violations) os << "    witness: " << v << "\n";
    for (const auto& n : c.notes) os << "    note: " << n << "\n";
  }
  for (auto it = r.data.begin(); it != r.data.end(); ++it) {
    os << it.key() << ": ";
    if (it->is_string()) os << it->get<std::string>();
    else os << it->dump();
    os << "\n";
  }
  os << "result: " << (r.passed() ? "pass" : "fail") << "\n";
  os << "elapsed: " << static_cast<long long>(r.elapsed_ms) << " ms\n";
  return os.str();
}

Report octonion_suite(const Options& opt) {
  Report r;
  r.suite = "octonion";
  const std::size_t trials = opt.samples.value_or(1000);
  r.seed = opt.seed;
  r.samples = trials;
  const CategoryPtr cat = Category::octonionic();
  r.add(check_pentagon(cat->associator()));
  r.add(check_hexagon(cat->associator(), cat->symmetry()));
  const AlgebraPtr O = octonions();
  r.add(check_algebra_axioms(*O));
  const IdentityReport id = underlying_identities(*O, trials, opt.seed);
  r.add(id.left_alternative);
  r.add(id.right_alternative);
  r.add(id.moufang);
  r.add(id.norm);
  r.add(single("non-associativity witness (e1 e2) e4 != e1 (e2 e4)", id.non_associative_witness,
               "(e1 e2) e4 equals e1 (e2 e4)"));
  r.add(single("field object", is_field_object(O), "the octonions have a proper nonzero ideal"));
  const LineVerdict v = is_line_object(regular_module(O));
  r.add(v.report);
  r.data["dim"] = O->dim();
  return r;
}

Report transition_command(const AlgebraPtr& A, std::size_t n, std::size_t from, std::size_t to,
                          const std::vector<Vec>& coords) {
  Report r;
  r.suite = "proj transition";
  if (n == 0) r.warnings.push_back("n = 0: P^0 is a single point");
  const ChartCoords t = transition(A, n, from, to, coords);
  const ChartCoords direct = chart_coordinates(point_from_chart(A, n, from, coords), to);
  r.add(single("transition agrees with re-normalizing the point", t == direct, "transition differs from chart coordinates"));
  ojson cs = ojson::array();
  for (const auto& c : t.coords) cs.push_back(element_json(*A, c));
  r.data["chart"] = to;
  r.data["coords"] = cs;
  return r;
}

Report builtin_suite(const Options& opt) {
  Report r;
  r.suite = "suite all";
  r.seed = opt.seed;
  Report o = octonion_suite(opt);
  for (auto& c : o.checks) r.add(std::move(c));

  const AlgebraPtr Q3 = product_of_fields(3);
  const Localization l1 = localize(Q3, ElementEndo::multiplication(Q3, {Q(1), Q(1), Q(0)}));
  const Localization l2 = localize(Q3, ElementEndo::multiplication(Q3, {Q(0), Q(1), Q(1)}));
  const Covering cov = Covering::make(Q3, {l1.to_local, l2.to_local});
  const CoveringReport cr = verify_covering(cov, opt.samples.value_or(8), opt.seed);
  r.add(single("Q^3 two-chart covering", cr.is_covering(), "not a covering"));
  for (const Q& lambda : {Q(1), Q(2), Q(-3)}) {
    DescentDatum d = make_datum(cov, {regular_module(l1.algebra), regular_module(l2.algebra)});
    const auto& [a, b] = d.restricted.at({0, 1});
    const ModuleMap ia = base_change_regular_iso(a), ib = base_change_regular_iso(b);
    d.transitions.emplace(std::make_pair(std::size_t{0}, std::size_t{1}), ib.inverse()->after(ia.scaled(lambda)));
    const GlueResult g = glue(d);
    const LineVerdict v = is_line_object(g.module);
    r.add(single("glue with transition " + format_rational(lambda), g.comparisons_iso && v.line,
                 "glued module is not a line with base-change isomorphisms"));
  }
  const LineVerdict odd = is_line_object(super_odd_line());
  r.add(single("odd line has signature -1", odd.invertible && odd.sig && odd.sig->value == Vec{Q(-1)},
               "signature of the odd line is not -1"));

  Report t = transition_command(ground_field(Category::plain()), 1, 0, 1, {Vec{Q(2)}});
  r.add(single("P^1 transition 2 -> 1/2", t.data["coords"] == ojson::array({"1/2"}), "unexpected transition"));
  const AlgebraPtr O = octonions();
  const auto pts = random_points(O, 2, opt.samples.value_or(8), opt.seed);
  r.add(field_cover_check(O, 2, pts));
  CheckReport psi("duality of point presentations on P^2(O)");
  for (const auto& p : pts) {
    psi.checked++;
    if (!points_equal(dualize_point(dualize_point_inv(p)), p)) psi.fail("round trip differs");
  }
  r.add(std::move(psi));
  return r;
}

Report dispatch(const std::string& command, const std::string& sub, Workspace& ws, const json& input, const Options& opt) {
  if (command == "axioms") return axioms_command(ws, input);
  if (command == "octonion") return octonion_suite(opt);
  if (command == "algebra") return algebra_command(ws, input);
  if (command == "ideal") return ideal_command(ws, input);
  if (command == "localize") return localize_command(ws, input);
  if (command == "cover") return cover_command(ws, input, opt);
  if (command == "glue") return glue_command(ws, input);
  if (command == "line") return line_command(ws, input);
  if (command == "proj") {
    if (sub == "verify") return point_verify(ws, input);
    if (sub == "chart") return point_chart(ws, input);
    if (sub == "dualize") return point_dualize(ws, input);
    if (sub == "glue") return point_glue(ws, input);
    if (sub == "fieldcover") return point_fieldcover(ws, input, opt);
    if (sub == "transition") {
      const AlgebraPtr A = ws.algebra(input.contains("algebra") ? input.at("algebra") : json("Q"), "input/algebra");
      return transition_command(A, input.at("n").get<std::size_t>(), input.at("from").get<std::size_t>(),
                                input.at("to").get<std::size_t>(), ws.coordinates(A, input.at("coords"), "input/coords"));
    }
    throw InputError("unknown proj subcommand \"" + sub + "\"");
  }
  throw InputError("unknown command \"" + command + "\"");
}

namespace {

json load_file(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw InputError(file + ": cannot open");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(file + ": " + e.what());
  }
}

// The input of a command: the file itself, or with "objects" present, the object named by
// --target or the document's "input".
std::pair<Workspace, json> open_input(const std::string& file, const std::string& target) {
  // A bare builtin name such as "O" or "Q^3" stands for itself.
  if (!std::ifstream(file) && file.find('/') == std::string::npos && file.find(".json") == std::string::npos)
    return {Workspace(), json(file)};
  json doc = load_file(file);
  if (!doc.is_object() || !doc.contains("objects")) return {Workspace(), doc};
  Workspace ws(doc);
  if (!target.empty()) {
    if (!doc.at("objects").contains(target)) throw InputError(file + ": no object named \"" + target + "\"");
    return {ws, json(target)};
  }
  if (doc.contains("input")) return {ws, doc.at("input")};
  throw InputError(file + ": document has objects; name one with --target");
}

Report run_tasks(const std::string& file, const Options& opt) {
  json doc = load_file(file);
  Workspace ws(doc);
  Report r;
  r.suite = "suite " + file;
  r.seed = opt.seed;
  ojson results = ojson::array();
  const json& tasks = ws.tasks();
  for (std::size_t k = 0; k < tasks.size(); ++k) {
    const json& t = tasks[k];
    const std::string where = "/tasks/" + std::to_string(k);
    if (!t.is_object() || !t.contains("command") || !t.at("command").is_string())
      throw InputError(where + ": expected {\"command\": ..., \"input\": ...}");
    const std::string command = t.at("command").get<std::string>();
    const std::string sub = t.contains("sub") ? t.at("sub").get<std::string>() : "";
    Report tr = dispatch(command, sub, ws, t.contains("input") ? t.at("input") : json(), opt);
    for (auto c : tr.checks) {
      c.name = "task " + std::to_string(k) + " (" + command + (sub.empty() ? "" : " " + sub) + "): " + c.name;
      r.add(std::move(c));
    }
    results.push_back(report_json(tr));
  }
  r.data["tasks"] = results;
  return r;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact verification of algebraic geometry relative to a twisted monoidal category"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  std::uint64_t seed = 1;
  std::size_t samples = 0;
  std::string format = "text", out_path, target;
  app.add_option("--seed", seed, "Seed for every sampled verdict");
  auto* samples_opt = app.add_option("--samples", samples, "Sample count for property-based checks");
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--out", out_path, "Write the report to this file");
  app.add_option("--target", target, "Object to use when the input file holds a workspace");

  std::string file;
  std::string command, sub;
  auto with_file = [&](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    s->add_option("file", file, "Input definition")->required();
    s->callback([&command, name] { command = name; });
    return s;
  };
  with_file("axioms", "Pentagon and hexagon for a cochain");
  app.add_subcommand("octonion", "Builtin octonion suite")->callback([&] { command = "octonion"; });
  with_file("algebra", "Algebra axioms, maximal ideals, field test");
  with_file("ideal", "Generated ideal and partition of unity");
  with_file("localize", "Localization at an element and its universal property");
  with_file("cover", "Covering verification");
  with_file("glue", "Descent datum: cocycle and gluing");
  with_file("line", "Line-object certificate");
  auto* proj = app.add_subcommand("proj", "Points of projective space");
  proj->require_subcommand(1);
  const std::pair<const char*, const char*> proj_subs[]{
      {"verify", "Check that a map into A^(n+1) is a point"},
      {"chart", "Find a chart containing the point and its coordinates"},
      {"dualize", "Convert between the mono and epi descriptions"},
      {"glue", "Glue points given on a covering"},
      {"fieldcover", "Cover a field object by the standard charts"}};
  for (const auto& [s, help] : proj_subs) {
    auto* p = proj->add_subcommand(s, help);
    p->add_option("file", file, "Point or covering definition")->required();
    p->callback([&command, &sub, s] {
      command = "proj";
      sub = s;
    });
  }
  std::size_t n = 1, from = 0, to = 0;
  std::vector<std::string> coords;
  std::string alg = "Q";
  auto* tr = proj->add_subcommand("transition", "Change of chart");
  tr->add_option("--n", n)->required();
  tr->add_option("--from", from)->required();
  tr->add_option("--to", to)->required();
  tr->add_option("--coords", coords)->required();
  tr->add_option("--algebra", alg, "Builtin algebra name");
  tr->callback([&] {
    command = "proj";
    sub = "transition";
  });
  auto* suite = app.add_subcommand("suite", "Builtin battery (all) or the tasks of a workspace file");
  suite->add_option("which", file, "\"all\" or a workspace file")->required();
  suite->callback([&] { command = "suite"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }
  opt.seed = seed;
  if (samples_opt->count() > 0) opt.samples = samples;
  opt.format = format;

  const auto start = std::chrono::steady_clock::now();
  Report r;
  try {
    if (command == "suite") {
      r = file == "all" ? builtin_suite(opt) : run_tasks(file, opt);
    } else if (command == "octonion") {
      r = octonion_suite(opt);
    } else if (command == "proj" && sub == "transition") {
      Workspace ws;
      json input = {{"algebra", alg}, {"n", n}, {"from", from}, {"to", to}, {"coords", coords}};
      r = dispatch(command, sub, ws, input, opt);
    } else {
      auto [ws, input] = open_input(file, target);
      r = dispatch(command, sub, ws, input, opt);
    }
  } catch (const InputError& e) {
    const std::string what = e.what();
    err << "error: " << (file.empty() || what.rfind(file, 0) == 0 ? "" : file + ": ") << what << "\n";
    return 2;
  } catch (const json::exception& e) {
    err << "error: " << file << ": " << e.what() << "\n";
    return 2;
  }
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  for (const auto& w : r.warnings) err << "warning: " << w << "\n";
  const std::string text = format == "json" ? report_json(r).dump(2) + "\n" : report_text(r);
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) {
      err << "error: cannot write " << out_path << "\n";
      return 2;
    }
    f << text;
  } else {
    out << text;
  }
  return r.passed() ? 0 : 1;
}

}  // namespace relproj::cli
