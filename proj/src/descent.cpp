#include "relproj/descent.hpp"

#include <random>
#include <stdexcept>

namespace relproj {

AlgebraTensor algebra_tensor_over(const AlgebraMap& u1, const AlgebraMap& u2) {
  if (!same_algebra(u1.source, u2.source)) throw InputError("algebra_tensor_over: maps from different algebras");
  const auto& A1 = *u1.target;
  const auto& A2 = *u2.target;
  const auto& cat = *A1.category();
  const auto& G = cat.group();
  TensorOver T = tensor_over(restriction_of_scalars(u1, regular_module(u1.target)),
                             restriction_of_scalars(u2, regular_module(u2.target)));
  const std::size_t nraw = T.raw.space.total_dim();
  // (b (x) c)(b' (x) c') = s m(b,b') (x) m(c,c') with the scalar collecting the rebracketings and the swap of c, b'.
  auto raw_product = [&](std::size_t t, std::size_t t2) {
    const auto [b, c] = T.raw.index_to_pair[t];
    const auto [b2, c2] = T.raw.index_to_pair[t2];
    const Element db = A1.degree_of(b), dc = A2.degree_of(c), db2 = A1.degree_of(b2), dc2 = A2.degree_of(c2);
    const Q s = cat.phi(db, dc, G.add(db2, dc2)) / cat.phi(dc, db2, dc2) * cat.R(dc, db2) * cat.phi(db2, dc, dc2) /
                cat.phi(db, db2, G.add(dc, dc2));
    const Vec& bb = A1.product(b, b2);
    const Vec& cc = A2.product(c, c2);
    Vec out(nraw, Q(0));
    for (std::size_t k = 0; k < bb.size(); ++k) {
      if (sgn(bb[k]) == 0) continue;
      for (std::size_t l = 0; l < cc.size(); ++l)
        if (sgn(cc[l]) != 0) out[T.raw.index(k, l)] += s * bb[k] * cc[l];
    }
    return out;
  };
  const std::size_t n = T.module->dim();
  std::vector<Vec> lifts;
  for (std::size_t p = 0; p < n; ++p) lifts.push_back(T.section.image_of_basis(p));
  std::vector<Vec> products;
  products.reserve(n * n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) {
      Vec raw(nraw, Q(0));
      for (std::size_t t = 0; t < nraw; ++t) {
        if (sgn(lifts[p][t]) == 0) continue;
        for (std::size_t t2 = 0; t2 < nraw; ++t2)
          if (sgn(lifts[q][t2]) != 0) axpy(raw, lifts[p][t] * lifts[q][t2], raw_product(t, t2));
      }
      products.push_back(T.projection.apply(raw));
    }
  Vec raw_unit(nraw, Q(0));
  for (std::size_t k = 0; k < A1.dim(); ++k)
    for (std::size_t l = 0; l < A2.dim(); ++l)
      if (sgn(A1.unit()[k]) != 0 && sgn(A2.unit()[l]) != 0) add_product(raw_unit[T.raw.index(k, l)], A1.unit()[k], A2.unit()[l]);
  AlgebraPtr P = std::make_shared<const AlgebraInC>(T.module->carrier(), std::move(products), T.projection.apply(raw_unit),
                                                    A1.name + " (x)_A " + A2.name);
  std::vector<Vec> left_images, right_images;
  for (std::size_t b = 0; b < A1.dim(); ++b) {
    Vec v(nraw, Q(0));
    for (std::size_t l = 0; l < A2.dim(); ++l)
      if (sgn(A2.unit()[l]) != 0) v[T.raw.index(b, l)] += A2.unit()[l];
    left_images.push_back(T.projection.apply(v));
  }
  for (std::size_t c = 0; c < A2.dim(); ++c) {
    Vec v(nraw, Q(0));
    for (std::size_t k = 0; k < A1.dim(); ++k)
      if (sgn(A1.unit()[k]) != 0) v[T.raw.index(k, c)] += A1.unit()[k];
    right_images.push_back(T.projection.apply(v));
  }
  auto from_left = AlgebraMap::make(u1.target, P, GradedMap::from_images(A1.carrier(), P->carrier(), left_images));
  auto from_right = AlgebraMap::make(u2.target, P, GradedMap::from_images(A2.carrier(), P->carrier(), right_images));
  return AlgebraTensor{P, std::move(from_left), std::move(from_right), std::move(T)};
}

AlgebraMap induced_from_tensor(const AlgebraTensor& T, const AlgebraMap& v1, const AlgebraMap& v2) {
  if (!same_algebra(v1.source, T.from_left.source) || !same_algebra(v2.source, T.from_right.source) ||
      !same_algebra(v1.target, v2.target))
    throw InputError("induced_from_tensor: maps do not match the tensor factors");
  const auto& C = *v1.target;
  const auto& raw = T.tensor.raw;
  std::vector<Vec> images(raw.space.total_dim());
  for (std::size_t t = 0; t < images.size(); ++t) {
    const auto [b, c] = raw.index_to_pair[t];
    images[t] = C.multiply(v1.map.image_of_basis(b), v2.map.image_of_basis(c));
  }
  const GradedMap raw_map = GradedMap::from_images(raw.space, C.carrier(), images);
  const GradedMap m = raw_map * T.tensor.section;
  if (!(m * T.tensor.projection == raw_map))
    throw InputError("induced_from_tensor: the maps do not agree on the base algebra");
  return AlgebraMap::make(T.algebra, v1.target, m);
}

Covering Covering::make(AlgebraPtr base, std::vector<AlgebraMap> legs) {
  for (const auto& u : legs)
    if (!same_algebra(u.source, base)) throw InputError("covering: leg does not start at the base algebra");
  Covering cov{std::move(base), std::move(legs), {}};
  for (std::size_t i = 0; i < cov.legs.size(); ++i)
    for (std::size_t j = i + 1; j < cov.legs.size(); ++j)
      cov.overlaps.emplace(std::make_pair(i, j), algebra_tensor_over(cov.legs[i], cov.legs[j]));
  return cov;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Certified:
      return "certified";
    case Verdict::NotRefuted:
      return "not refuted";
    case Verdict::Refuted:
      return "refuted";
  }
  return "?";
}

namespace {

bool structural_leg(const AlgebraMap& u) {
  return u.kind == MapKind::Identity || u.kind == MapKind::Localization || u.kind == MapKind::ProductProjection;
}

Vec inverted_element(const AlgebraMap& u) { return u.kind == MapKind::Identity ? u.source->unit() : u.inverted_element; }

bool kills(const AlgebraMap& u, const ModulePtr& M) { return base_change(u, M).module->dim() == 0; }

}  // namespace

CoveringReport verify_covering(const Covering& cov, std::size_t samples, std::uint64_t seed) {
  CoveringReport out;
  out.seed = seed;
  out.samples = samples;
  const AlgebraPtr& A = cov.base;
  bool all_structural = true;
  for (const auto& u : cov.legs) all_structural = all_structural && structural_leg(u);

  // Flatness.
  if (all_structural) {
    out.flat = Verdict::Certified;
    out.report.note("flat: every leg is a localization or a direct factor");
  } else {
    out.flat = Verdict::NotRefuted;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coef(-2, 2);
    const auto zero_idx = A->degree_zero_indices();
    const ModulePtr R = regular_module(A);
    for (std::size_t s = 0; s < samples && out.flat != Verdict::Refuted; ++s) {
      Vec g(A->dim(), Q(0));
      for (auto i : zero_idx) g[i] = coef(rng);
      const Ideal I = generated_ideal(A, std::vector<Vec>{g});
      const Submodule S = submodule(R, I.subspace);
      for (std::size_t k = 0; k < cov.legs.size(); ++k) {
        out.report.checked++;
        const BaseChange bs = base_change(cov.legs[k], S.module);
        const BaseChange br = base_change(cov.legs[k], R);
        if (!base_change_map(bs, br, S.inclusion).map.is_mono()) {
          out.flat = Verdict::Refuted;
          out.report.fail("flatness: leg " + std::to_string(k) + " does not preserve an ideal inclusion (sample " +
                          std::to_string(s) + ")");
          break;
        }
      }
    }
    out.report.note("flat: property-based, seed=" + std::to_string(seed) + " samples=" + std::to_string(samples));
  }

  // Joint conservativity.
  if (all_structural) {
    std::vector<ElementEndo> family;
    for (const auto& u : cov.legs) family.push_back(ElementEndo::multiplication(A, inverted_element(u)));
    out.partition = partition_of_unity(A, family);
    out.report.checked++;
    if (out.partition) {
      out.jointly_conservative = Verdict::Certified;
      out.report.note("jointly conservative: partition of unity found");
    } else {
      out.jointly_conservative = Verdict::Refuted;
      const Ideal J = generated_ideal(A, family);
      const Ideal m = maximal_ideal_above(A, J);
      const ModulePtr K = quotient_module(regular_module(A), m.subspace).module;
      bool all_killed = true;
      for (const auto& u : cov.legs) all_killed = all_killed && kills(u, K);
      out.report.note("jointly conservative: the inverted elements generate a proper ideal");
      if (all_killed) out.report.note("witness: A/m for a maximal ideal m above it is killed by every leg");
      else out.report.fail("witness module A/m is not killed by every leg");
    }
  } else {
    out.jointly_conservative = Verdict::NotRefuted;
    for (const auto& m : maximal_ideals(A)) {
      out.report.checked++;
      const ModulePtr K = quotient_module(regular_module(A), m.subspace).module;
      bool all_killed = true;
      for (const auto& u : cov.legs) all_killed = all_killed && kills(u, K);
      if (all_killed) {
        out.jointly_conservative = Verdict::Refuted;
        out.report.note("jointly conservative: a simple quotient A/m is killed by every leg");
        break;
      }
    }
  }
  out.finite_presentation = Verdict::Certified;
  out.report.note("finite presentation: structural (finite dimension)");
  return out;
}

bool membership_U_I(const AlgebraMap& u, const Ideal& I) {
  if (!same_algebra(u.source, I.algebra)) throw InputError("membership_U_I: ideal is not in the source algebra");
  const auto& B = *u.target;
  std::vector<Vec> span;
  for (const auto& v : I.subspace.global_basis()) {
    const Vec uv = u.apply(v);
    for (std::size_t k = 0; k < B.dim(); ++k) span.push_back(B.multiply(unit_vec(B.dim(), k), uv));
  }
  return Subspace::from_vectors(B.carrier(), span).total_dim() == B.dim();
}

DescentDatum make_datum(const Covering& cov, std::vector<ModulePtr> locals) {
  if (locals.size() != cov.legs.size()) throw InputError("descent datum: one local module per leg required");
  for (std::size_t i = 0; i < locals.size(); ++i)
    if (!same_algebra(locals[i]->algebra(), cov.legs[i].target))
      throw InputError("descent datum: local module " + std::to_string(i) + " is over the wrong algebra");
  DescentDatum d{cov, std::move(locals), {}, {}};
  for (const auto& [key, ov] : cov.overlaps)
    d.restricted.emplace(key, std::make_pair(base_change(ov.from_left, d.locals[key.first]),
                                             base_change(ov.from_right, d.locals[key.second])));
  return d;
}

DescentDatum restriction_datum(const Covering& cov, const ModulePtr& M) {
  std::vector<BaseChange> inner;
  std::vector<ModulePtr> locals;
  for (const auto& u : cov.legs) {
    inner.push_back(base_change(u, M));
    locals.push_back(inner.back().module);
  }
  DescentDatum d = make_datum(cov, locals);
  for (const auto& [key, ov] : cov.overlaps) {
    const auto [i, j] = key;
    const auto& [ri, rj] = d.restricted.at(key);
    const BaseChange composite = base_change(ov.from_left.after(cov.legs[i]), M);
    BaseChange composite_j = composite;
    composite_j.u = ov.from_right.after(cov.legs[j]);
    const ModuleMap ci = collapse_iso(ri, inner[i], composite);
    const ModuleMap cj = collapse_iso(rj, inner[j], composite_j);
    auto cj_inv = cj.inverse();
    if (!cj_inv) throw std::logic_error("restriction_datum: collapse map is not invertible");
    d.transitions.emplace(key, ModuleMap{ri.module, rj.module, cj_inv->map * ci.map});
  }
  return d;
}

CheckReport check_cocycle(const DescentDatum& d) {
  CheckReport rep("cocycle");
  const auto& cov = d.covering;
  const std::size_t n = cov.legs.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        rep.checked++;
        const auto& ij = cov.overlap(i, j);
        const auto& ik = cov.overlap(i, k);
        const auto& jk = cov.overlap(j, k);
        const AlgebraTensor T = algebra_tensor_over(ij.from_left.after(cov.legs[i]), cov.legs[k]);
        const AlgebraMap to_i = T.from_left.after(ij.from_left);
        const AlgebraMap to_j = T.from_left.after(ij.from_right);
        const AlgebraMap& to_k = T.from_right;
        const AlgebraMap rho_ij = T.from_left;
        const AlgebraMap rho_ik = induced_from_tensor(ik, to_i, to_k);
        const AlgebraMap rho_jk = induced_from_tensor(jk, to_j, to_k);
        const BaseChange ci = base_change(to_i, d.locals[i]);
        const BaseChange cj = base_change(to_j, d.locals[j]);
        const BaseChange ck = base_change(to_k, d.locals[k]);
        auto lift = [&](std::size_t a, std::size_t b, const AlgebraMap& rho, const BaseChange& ca, const BaseChange& cb) {
          const auto& [ra, rb] = d.restricted.at({a, b});
          const BaseChange oa = base_change(rho, ra.module);
          const BaseChange ob = base_change(rho, rb.module);
          BaseChange ca_path = ca, cb_path = cb;
          ca_path.u = rho.after(ra.u);
          cb_path.u = rho.after(rb.u);
          const ModuleMap into = collapse_iso(oa, ra, ca_path);
          const ModuleMap outof = collapse_iso(ob, rb, cb_path);
          const ModuleMap mid = base_change_map(oa, ob, d.transitions.at({a, b}));
          return outof.map * mid.map * into.inverse()->map;
        };
        const GradedMap t_ij = lift(i, j, rho_ij, ci, cj);
        const GradedMap t_jk = lift(j, k, rho_jk, cj, ck);
        const GradedMap t_ik = lift(i, k, rho_ik, ci, ck);
        if (!(t_jk * t_ij == t_ik))
          rep.fail("cocycle fails on (" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")");
      }
  return rep;
}

GlueResult glue(const DescentDatum& d) {
  const auto& cov = d.covering;
  const AlgebraPtr& A = cov.base;
  const std::size_t n = cov.legs.size();
  for (const auto& [key, pair] : d.restricted) {
    auto it = d.transitions.find(key);
    if (it == d.transitions.end())
      throw InputError("glue: missing transition for (" + std::to_string(key.first) + "," + std::to_string(key.second) + ")");
    if (!same_module(it->second.source, pair.first.module) || !same_module(it->second.target, pair.second.module))
      throw InputError("glue: transition does not match the restricted modules");
    if (!it->second.is_iso()) throw InputError("glue: transition is not an isomorphism");
  }
  const CheckReport cocycle = check_cocycle(d);
  if (!cocycle.passed()) throw InputError("glue: " + cocycle.violations.front());

  std::vector<ModulePtr> restricted;
  for (std::size_t i = 0; i < n; ++i) restricted.push_back(restriction_of_scalars(cov.legs[i], d.locals[i]));
  const ModuleSum S = direct_sum(A, restricted);
  std::vector<GradedSpace> targets;
  for (const auto& [key, pair] : d.restricted) targets.push_back(pair.second.module->carrier());
  const DirectSum T = direct_sum(A->category(), targets);
  GradedMap alpha = GradedMap::zero(S.module->carrier(), T.space);
  std::size_t slot = 0;
  for (const auto& [key, pair] : d.restricted) {
    const auto [i, j] = key;
    const GradedMap& theta = d.transitions.at(key).map;
    const GradedMap left = theta * pair.first.unit * S.projections[i].map;
    const GradedMap right = pair.second.unit * S.projections[j].map;
    alpha = alpha + T.injections[slot] * (left - right);
    ++slot;
  }
  const Submodule L = submodule(S.module, kernel_subspace(alpha));
  GlueResult out;
  out.module = L.module;
  out.inclusion = L.inclusion;
  out.comparisons_iso = true;
  for (std::size_t i = 0; i < n; ++i) {
    const BaseChange bc = base_change(cov.legs[i], L.module);
    const auto& Li = *d.locals[i];
    std::vector<Vec> images(bc.raw.space.total_dim());
    for (std::size_t t = 0; t < images.size(); ++t) {
      const auto [b, l] = bc.raw.index_to_pair[t];
      images[t] = Li.action_operator(b) * S.projections[i].map.apply(L.inclusion.map.image_of_basis(l));
    }
    const GradedMap raw = GradedMap::from_images(bc.raw.space, Li.carrier(), images);
    out.comparisons.push_back(ModuleMap::make(bc.module, d.locals[i], raw * bc.section));
    out.report.checked++;
    if (!out.comparisons.back().is_iso()) {
      out.comparisons_iso = false;
      out.report.fail("comparison A_" + std::to_string(i) + " (x)_A L -> L_" + std::to_string(i) + " is not an isomorphism");
    }
  }
  out.report.absorb(cocycle);
  out.report.note("glued dimension=" + std::to_string(L.module->dim()));
  return out;
}

}  // namespace relproj
