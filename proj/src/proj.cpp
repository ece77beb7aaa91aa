#include "relproj/proj.hpp"

#include <stdexcept>

namespace relproj {

namespace {

void require_index(std::size_t i, std::size_t n, const char* what) {
  if (i > n) throw InputError(std::string(what) + ": index " + std::to_string(i) + " out of range 0.." + std::to_string(n));
}

void require_degree_zero(const AlgebraInC& A, const Vec& c, const char* what) {
  if (c.size() != A.dim()) throw InputError(std::string(what) + ": coordinate has the wrong length");
  if (is_zero(c)) return;
  auto d = A.carrier().homogeneous_degree(c);
  if (!d || *d != 0) throw InputError(std::string(what) + ": coordinate is not a degree-e element");
}

Vec basis_generator(const ModuleSum& free, std::size_t j) {
  return free.injections[j].apply(free.injections[j].source->algebra()->unit());
}

// The operator y -> sum_j m(a_j, pi_j f(y)) from |L| to |A|, for a in A^{n+1} and f : L -> A^{n+1}.
Matrix pair_with(const AlgebraInC& A, const ModuleSum& free, const Vec& a, const GradedMap& f) {
  Matrix op(A.dim(), f.source().total_dim());
  for (std::size_t j = 0; j < free.projections.size(); ++j) {
    const Vec aj = free.projections[j].apply(a);
    if (is_zero(aj)) continue;
    op = op + A.left_multiplication(aj) * (free.projections[j].map * f).dense();
  }
  return op;
}

std::vector<Vec> full_coordinates(const AlgebraInC& A, std::size_t n, std::size_t i, const std::vector<Vec>& coords) {
  if (coords.size() != n) throw InputError("chart coordinates: expected " + std::to_string(n) + " entries");
  std::vector<Vec> full;
  for (std::size_t j = 0, k = 0; j <= n; ++j) full.push_back(j == i ? A.unit() : coords[k++]);
  return full;
}

// B (x)_A x : B (x)_A L -> B^{n+1}.
ModuleMap restricted_mono(const BaseChange& line, const ModuleMap& x, const ModuleSum& src, const ModuleSum& dst) {
  const BaseChange bf = base_change(line.u, src.module);
  return base_change_free_iso(bf, src, dst).after(base_change_map(line, bf, x));
}

}  // namespace

PointCheck verify_point(const AlgebraPtr& A, std::size_t n, const ModulePtr& L, const ModuleMap& x) {
  ModuleSum free = free_rank(A, n + 1);
  if (!same_module(x.source, L) || !same_module(x.target, free.module))
    throw InputError("verify_point: map is not L -> A^" + std::to_string(n + 1));
  PointCheck out;
  if (!x.map.is_mono()) {
    out.failure = "not a monomorphism";
    return out;
  }
  LineVerdict v = is_line_object(L);
  if (!v.line) {
    out.failure = v.invertible ? "L is invertible but its signature is not trivial" : "L is not invertible";
    return out;
  }
  const ModuleMap mono{L, free.module, x.map};
  auto r = find_retraction(mono);
  if (!r) {
    out.failure = "no retraction A^" + std::to_string(n + 1) + " -> L";
    return out;
  }
  out.point = ProjPoint{A, n, L, free, mono, *r, std::move(*v.certificate)};
  return out;
}

QuotCheck verify_quot_point(const AlgebraPtr& A, std::size_t n, const ModulePtr& L, const ModuleMap& q) {
  ModuleSum free = free_rank(A, n + 1);
  if (!same_module(q.target, L) || !same_module(q.source, free.module))
    throw InputError("verify_quot_point: map is not A^" + std::to_string(n + 1) + " -> L");
  QuotCheck out;
  if (!q.map.is_epi()) {
    out.failure = "not an epimorphism";
    return out;
  }
  LineVerdict v = is_line_object(L);
  if (!v.line) {
    out.failure = v.invertible ? "L is invertible but its signature is not trivial" : "L is not invertible";
    return out;
  }
  out.point = QuotPoint{A, n, L, free, ModuleMap{free.module, L, q.map}, std::move(*v.certificate)};
  return out;
}

bool chart_membership(const ProjPoint& p, std::size_t i) {
  require_index(i, p.n, "chart_membership");
  return p.free.projections[i].after(p.mono).is_iso();
}

ChartCoords chart_coordinates(const ProjPoint& p, std::size_t i) {
  require_index(i, p.n, "chart_coordinates");
  auto inv = p.free.projections[i].after(p.mono).inverse();
  if (!inv) throw InputError("chart_coordinates: point is not in chart " + std::to_string(i));
  const Vec normalized = p.mono.apply(inv->apply(p.algebra->unit()));
  ChartCoords out{i, {}};
  for (std::size_t j = 0; j <= p.n; ++j)
    if (j != i) out.coords.push_back(p.free.projections[j].apply(normalized));
  return out;
}

ProjPoint point_from_chart(const AlgebraPtr& A, std::size_t n, std::size_t i, const std::vector<Vec>& coords) {
  require_index(i, n, "point_from_chart");
  for (const auto& c : coords) require_degree_zero(*A, c, "point_from_chart");
  const auto full = full_coordinates(*A, n, i, coords);
  ModuleSum free = free_rank(A, n + 1);
  const ModulePtr R = regular_module(A);
  std::vector<Vec> images;
  for (std::size_t k = 0; k < A->dim(); ++k) {
    Vec v(free.module->dim(), Q(0));
    for (std::size_t j = 0; j <= n; ++j) axpy(v, Q(1), free.injections[j].apply(A->multiply(unit_vec(A->dim(), k), full[j])));
    images.push_back(std::move(v));
  }
  ModuleMap mono = ModuleMap::make(R, free.module, GradedMap::from_images(A->carrier(), free.module->carrier(), images));
  ModuleMap retraction{free.module, R, free.projections[i].map};
  LineVerdict v = is_line_object(R);
  if (!v.line) throw std::logic_error("point_from_chart: the algebra is not a line over itself");
  return ProjPoint{A, n, R, free, std::move(mono), std::move(retraction), std::move(*v.certificate)};
}

ChartCoords transition(const AlgebraPtr& A, std::size_t n, std::size_t i, std::size_t j, const std::vector<Vec>& coords) {
  require_index(i, n, "transition");
  require_index(j, n, "transition");
  for (const auto& c : coords) require_degree_zero(*A, c, "transition");
  const auto full = full_coordinates(*A, n, i, coords);
  auto inv = invert_degree_zero(*A, full[j]);
  if (!inv) throw InputError("transition: pivot x_" + std::to_string(j) + "/x_" + std::to_string(i) + " is not invertible");
  ChartCoords out{j, {}};
  for (std::size_t k = 0; k <= n; ++k)
    if (k != j) out.coords.push_back(A->multiply(*inv, full[k]));
  return out;
}

std::optional<ModuleMap> connecting_iso(const ProjPoint& p1, const ProjPoint& p2) {
  if (!same_algebra(p1.algebra, p2.algebra) || p1.n != p2.n) return std::nullopt;
  MapSystem sys(p1.line, p2.line);
  sys.add_linearity();
  for (std::size_t l = 0; l < p1.line->dim(); ++l)
    if (!sys.add_value(unit_vec(p1.line->dim(), l), p1.mono.map.image_of_basis(l), &p2.mono.map)) return std::nullopt;
  auto m = sys.solution();
  if (!m) return std::nullopt;
  ModuleMap lambda{p1.line, p2.line, GradedMap::from_dense(p1.line->carrier(), p2.line->carrier(), *m)};
  if (!lambda.is_iso()) return std::nullopt;
  return lambda;
}

bool points_equal(const ProjPoint& p1, const ProjPoint& p2) { return connecting_iso(p1, p2).has_value(); }

std::optional<ModuleMap> connecting_iso(const QuotPoint& q1, const QuotPoint& q2) {
  if (!same_algebra(q1.algebra, q2.algebra) || q1.n != q2.n) return std::nullopt;
  MapSystem sys(q1.line, q2.line);
  sys.add_linearity();
  for (std::size_t k = 0; k < q1.free.module->dim(); ++k)
    if (!sys.add_value(q1.epi.map.image_of_basis(k), q2.epi.map.image_of_basis(k))) return std::nullopt;
  auto m = sys.solution();
  if (!m) return std::nullopt;
  ModuleMap lambda{q1.line, q2.line, GradedMap::from_dense(q1.line->carrier(), q2.line->carrier(), *m)};
  if (!lambda.is_iso()) return std::nullopt;
  return lambda;
}

bool quotients_equal(const QuotPoint& q1, const QuotPoint& q2) { return connecting_iso(q1, q2).has_value(); }

bool quot_chart_membership(const QuotPoint& q, std::size_t i) {
  require_index(i, q.n, "quot_chart_membership");
  const ModuleMap c = q.epi.after(q.free.injections[i]);
  if (!c.map.is_epi()) return false;
  const EpiVerdict v = epi_from_unit_is_iso(c, q.cert);
  if (!v.iso) throw std::logic_error("epimorphism from the unit onto a line is not invertible");
  return true;
}

ChartCoords quot_chart_coordinates(const QuotPoint& q, std::size_t i) {
  if (!quot_chart_membership(q, i)) throw InputError("quot_chart_coordinates: point is not in chart " + std::to_string(i));
  auto inv = q.epi.after(q.free.injections[i]).inverse();
  ChartCoords out{i, {}};
  for (std::size_t j = 0; j <= q.n; ++j)
    if (j != i) out.coords.push_back(inv->apply(q.epi.apply(basis_generator(q.free, j))));
  return out;
}

ProjPoint dualize_point(const QuotPoint& q) {
  const auto& A = *q.algebra;
  const HomModule& D = q.cert.dual;
  ModuleSum free = free_rank(q.algebra, q.n + 1);
  std::vector<Vec> qe;
  for (std::size_t j = 0; j <= q.n; ++j) qe.push_back(q.epi.apply(basis_generator(q.free, j)));
  std::vector<Vec> images;
  for (std::size_t h = 0; h < D.module->dim(); ++h) {
    Vec v(free.module->dim(), Q(0));
    for (std::size_t j = 0; j <= q.n; ++j) axpy(v, Q(1), free.injections[j].apply(D.elements[h] * qe[j]));
    images.push_back(std::move(v));
  }
  ModuleMap mono = ModuleMap::make(D.module, free.module,
                                   GradedMap::from_images(D.module->carrier(), free.module->carrier(), images));
  auto s = find_section(q.epi);
  if (!s) throw std::logic_error("dualize_point: epimorphism onto a line has no section");
  std::vector<Vec> r_images;
  for (std::size_t b = 0; b < free.module->dim(); ++b) {
    auto c = D.coordinates(pair_with(A, q.free, unit_vec(free.module->dim(), b), s->map));
    if (!c) throw std::logic_error("dualize_point: retraction value is not in the dual");
    r_images.push_back(std::move(*c));
  }
  ModuleMap r = ModuleMap::make(free.module, D.module,
                                GradedMap::from_images(free.module->carrier(), D.module->carrier(), r_images));
  if (!(r.after(mono) == ModuleMap::identity(D.module))) throw std::logic_error("dualize_point: retraction check failed");
  LineVerdict v = is_line_object(D.module);
  if (!v.line) throw std::logic_error("dualize_point: dual of a line is not a line");
  return ProjPoint{q.algebra, q.n, D.module, free, std::move(mono), std::move(r), std::move(*v.certificate)};
}

QuotPoint dualize_point_inv(const ProjPoint& p) {
  const auto& A = *p.algebra;
  const HomModule& D = p.cert.dual;
  std::vector<Vec> images;
  for (std::size_t b = 0; b < p.free.module->dim(); ++b) {
    auto c = D.coordinates(pair_with(A, p.free, unit_vec(p.free.module->dim(), b), p.mono.map));
    if (!c) throw std::logic_error("dualize_point_inv: value is not in the dual");
    images.push_back(std::move(*c));
  }
  ModuleMap epi = ModuleMap::make(p.free.module, D.module,
                                  GradedMap::from_images(p.free.module->carrier(), D.module->carrier(), images));
  QuotCheck q = verify_quot_point(p.algebra, p.n, D.module, epi);
  if (!q.point) throw std::logic_error("dualize_point_inv: " + q.failure);
  return std::move(*q.point);
}

ProjPoint base_change_point(const AlgebraMap& u, const ProjPoint& p) {
  if (!same_algebra(u.source, p.algebra)) throw InputError("base_change_point: map does not start at the point's algebra");
  const BaseChange bl = base_change(u, p.line);
  const ModuleSum dst = free_rank(u.target, p.n + 1);
  PointCheck c = verify_point(u.target, p.n, bl.module, restricted_mono(bl, p.mono, p.free, dst));
  if (!c.point) throw std::logic_error("base_change_point: " + c.failure);
  return std::move(*c.point);
}

SheafResult sheaf_condition_instance(const Covering& cov, const std::vector<ProjPoint>& locals) {
  const std::size_t k = cov.legs.size();
  if (locals.size() != k) throw InputError("sheaf_condition_instance: one local point per leg required");
  if (k == 0) throw InputError("sheaf_condition_instance: empty covering");
  const std::size_t n = locals.front().n;
  std::vector<ModulePtr> lines;
  for (std::size_t i = 0; i < k; ++i) {
    if (!same_algebra(locals[i].algebra, cov.legs[i].target) || locals[i].n != n)
      throw InputError("sheaf_condition_instance: local point " + std::to_string(i) + " does not match its leg");
    lines.push_back(locals[i].line);
  }
  SheafResult out;
  const CoveringReport cr = verify_covering(cov);
  out.report.absorb(cr.report);
  if (!cr.is_covering()) {
    out.diagnosis = "the family is not a covering";
    return out;
  }
  DescentDatum d = make_datum(cov, lines);
  for (const auto& [key, pair] : d.restricted) {
    const auto [i, j] = key;
    const ModuleSum dst = free_rank(cov.overlap(i, j).algebra, n + 1);
    const ModuleMap xi = restricted_mono(pair.first, locals[i].mono, locals[i].free, dst);
    const ModuleMap xj = restricted_mono(pair.second, locals[j].mono, locals[j].free, dst);
    MapSystem sys(pair.first.module, pair.second.module);
    sys.add_linearity();
    bool ok = true;
    for (std::size_t l = 0; l < pair.first.module->dim() && ok; ++l)
      ok = sys.add_value(unit_vec(pair.first.module->dim(), l), xi.map.image_of_basis(l), &xj.map);
    auto m = ok ? sys.solution() : std::nullopt;
    out.report.checked++;
    const std::string where = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
    if (!m) {
      out.diagnosis = "local points differ on overlap " + where;
      out.report.note(out.diagnosis);
      return out;
    }
    ModuleMap theta{pair.first.module, pair.second.module,
                    GradedMap::from_dense(pair.first.module->carrier(), pair.second.module->carrier(), *m)};
    if (!theta.is_iso()) {
      out.diagnosis = "local lines are not identified on overlap " + where;
      out.report.note(out.diagnosis);
      return out;
    }
    d.transitions.emplace(key, std::move(theta));
  }
  GlueResult g = glue(d);
  out.report.absorb(g.report);

  // The glued mono is the unique A-linear x with u_i(x(l)) = x_i(pr_i l) for every leg.
  const AlgebraPtr& A = cov.base;
  const ModuleSum FA = free_rank(A, n + 1);
  std::vector<ModulePtr> restricted;
  for (std::size_t i = 0; i < k; ++i) restricted.push_back(restriction_of_scalars(cov.legs[i], lines[i]));
  const ModuleSum S = direct_sum(A, restricted);
  MapSystem sys(g.module, FA.module);
  sys.add_linearity();
  bool consistent = true;
  for (std::size_t i = 0; i < k && consistent; ++i) {
    const auto& Fi = locals[i].free;
    GradedMap post = GradedMap::zero(FA.module->carrier(), Fi.module->carrier());
    for (std::size_t j = 0; j <= n; ++j) post = post + Fi.injections[j].map * cov.legs[i].map * FA.projections[j].map;
    for (std::size_t l = 0; l < g.module->dim() && consistent; ++l) {
      const Vec li = S.projections[i].apply(g.inclusion.map.image_of_basis(l));
      consistent = sys.add_value(unit_vec(g.module->dim(), l), locals[i].mono.apply(li), &post);
    }
  }
  auto xm = consistent ? sys.solution() : std::nullopt;
  out.report.checked++;
  if (!xm) {
    out.diagnosis = "glued line admits no map into A^" + std::to_string(n + 1) + " restricting to the local points";
    out.report.fail(out.diagnosis);
    out.glued = std::move(g);
    return out;
  }
  const ModuleMap x = ModuleMap::make(g.module, FA.module, GradedMap::from_dense(g.module->carrier(), FA.module->carrier(), *xm));
  PointCheck pc = verify_point(A, n, g.module, x);
  out.report.checked++;
  if (!pc.point) {
    out.diagnosis = "glued point fails verification: " + pc.failure;
    out.report.fail(out.diagnosis);
    out.glued = std::move(g);
    return out;
  }

  std::vector<AlgebraPtr> factors;
  for (const auto& u : cov.legs) factors.push_back(u.target);
  const ProductAlgebra B = product_algebra(factors);
  out.product_line = product_line(B, lines).verdict.line;
  out.report.checked++;
  if (!out.product_line) out.report.fail("product of the local lines is not a line over the product algebra");

  out.counit = true;
  for (std::size_t i = 0; i < k; ++i) {
    out.report.checked++;
    if (!points_equal(base_change_point(cov.legs[i], *pc.point), locals[i])) {
      out.counit = false;
      out.report.fail("glued point does not restrict to local point " + std::to_string(i));
    }
  }
  out.point = std::move(pc.point);
  out.glued = std::move(g);
  return out;
}

CheckReport field_cover_check(const AlgebraPtr& K, std::size_t n, const std::vector<ProjPoint>& points) {
  if (!is_field_object(K)) throw InputError("field_cover_check: algebra is not a field object");
  CheckReport rep("field cover");
  for (std::size_t p = 0; p < points.size(); ++p) {
    if (!same_algebra(points[p].algebra, K) || points[p].n != n)
      throw InputError("field_cover_check: point " + std::to_string(p) + " is not a point of P^" + std::to_string(n));
    rep.checked++;
    bool found = false;
    for (std::size_t j = 0; j <= n && !found; ++j) found = chart_membership(points[p], j);
    if (!found) rep.fail("point " + std::to_string(p) + " lies in no chart");
  }
  return rep;
}

}  // namespace relproj
