#include "relproj/line.hpp"

#include <stdexcept>

namespace relproj {

namespace {

// eps(x (x) h) = R(x,h) h(x) on the raw tensor L (x) L^v.
GradedMap raw_evaluation(const HomModule& D, const TensorOver& LD) {
  const auto& L = *D.source;
  const auto& A = *L.algebra();
  const auto& cat = *L.category();
  std::vector<Vec> images(LD.raw.space.total_dim());
  for (std::size_t t = 0; t < images.size(); ++t) {
    const auto [x, h] = LD.raw.index_to_pair[t];
    images[t] = D.elements[h].column(x);
    const Q s = cat.R(L.degree_of(x), D.module->degree_of(h));
    for (auto& c : images[t]) c *= s;
  }
  return GradedMap::from_images(LD.raw.space, A.carrier(), images);
}

// The endomorphism [x (x) y] -> R(x,y)[y (x) x] of T = M (x)_A M.
Matrix symmetry_on(const TensorOver& T) {
  const auto& M = *T.left;
  const auto& cat = *M.category();
  const std::size_t n = T.raw.space.total_dim();
  Matrix raw(n, n);
  for (std::size_t t = 0; t < n; ++t) {
    const auto [x, y] = T.raw.index_to_pair[t];
    raw(T.raw.index(y, x), t) = cat.R(M.degree_of(x), M.degree_of(y));
  }
  const Matrix proj = T.projection.dense();
  const Matrix induced = proj * raw * T.section.dense();
  if (!(induced * proj == proj * raw)) throw std::logic_error("symmetry does not descend to the tensor product");
  return induced;
}

// The degree-e element s with rho_T(s, -) equal to the symmetry of M (x)_A M, if any.
std::optional<Vec> signature_element(const ModulePtr& M) {
  const TensorOver T = tensor_over(M, M);
  const Matrix sigma = symmetry_on(T);
  const auto& A = *M->algebra();
  const auto zero_idx = A.degree_zero_indices();
  const std::size_t n = T.module->dim();
  LinearSystem sys(zero_idx.size());
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      Vec coeffs(zero_idx.size());
      for (std::size_t k = 0; k < zero_idx.size(); ++k) coeffs[k] = T.module->action_operator(zero_idx[k])(r, c);
      if (!sys.add(std::move(coeffs), sigma(r, c))) return std::nullopt;
    }
  auto s = sys.particular();
  if (!s) return std::nullopt;
  return A.from_degree_zero(*s);
}

}  // namespace

std::optional<LineCertificate> find_inverse(const ModulePtr& L) {
  const AlgebraPtr& Ap = L->algebra();
  const auto& A = *Ap;
  const auto& cat = *A.category();
  HomModule D = dual_module(L);
  TensorOver LD = tensor_over(L, D.module);
  TensorOver DL = tensor_over(D.module, L);
  const GradedMap raw_eval = raw_evaluation(D, LD);
  const GradedMap eval_map = raw_eval * LD.section;
  if (!(eval_map * LD.projection == raw_eval)) throw std::logic_error("evaluation does not descend to L (x)_A L^v");
  const ModulePtr R = regular_module(Ap);
  ModuleMap eval = ModuleMap::make(LD.module, R, eval_map);
  if (!eval.is_iso()) return std::nullopt;

  // Coevaluation delta(1) = w in degree e of L^v (x)_A L, solved from the first triangle identity:
  // sum_{(h,y)} w[h,y] phi(x,h,y)^-1 rho_L(eps(x (x) h), y) = x for every basis vector x of L.
  const auto& DLs = DL.module->carrier();
  const std::size_t nw = DLs.dim(0);
  const std::size_t nl = L->dim();
  auto eps = [&](std::size_t x, std::size_t h) {
    Vec v = D.elements[h].column(x);
    const Q s = cat.R(L->degree_of(x), D.module->degree_of(h));
    for (auto& c : v) c *= s;
    return v;
  };
  std::vector<Vec> lifts;
  for (std::size_t q = 0; q < nw; ++q) lifts.push_back(DL.section.image_of_basis(DLs.index(0, q)));
  LinearSystem tri1(nw);
  for (std::size_t x = 0; x < nl; ++x) {
    std::vector<Vec> contrib(nw, Vec(nl, Q(0)));
    for (std::size_t q = 0; q < nw; ++q)
      for (std::size_t t = 0; t < lifts[q].size(); ++t) {
        if (sgn(lifts[q][t]) == 0) continue;
        const auto [h, y] = DL.raw.index_to_pair[t];
        const Q s = lifts[q][t] / cat.phi(L->degree_of(x), D.module->degree_of(h), L->degree_of(y));
        axpy(contrib[q], s, L->act(eps(x, h), unit_vec(nl, y)));
      }
    for (std::size_t k = 0; k < nl; ++k) {
      Vec coeffs(nw);
      for (std::size_t q = 0; q < nw; ++q) coeffs[q] = contrib[q][k];
      tri1.add(std::move(coeffs), k == x ? Q(1) : Q(0));
    }
  }
  LineCertificate cert{L, D, LD, DL, eval, ModuleMap::zero(R, DL.module), false};
  auto w = tri1.particular();
  if (!w) return cert;
  const Vec wv = DLs.embed(0, *w);
  std::vector<Vec> coeval_images;
  for (std::size_t i = 0; i < A.dim(); ++i) coeval_images.push_back(DL.module->action_operator(i) * wv);
  cert.coeval = ModuleMap::make(R, DL.module, GradedMap::from_images(A.carrier(), DLs, coeval_images));

  // Second triangle: sum w[h_k,y] phi(h_k,y,h) (h_k . eps(y (x) h)) = h, with the right action
  // h . a = R(h,a) (a . h).
  Vec raw_w(DL.raw.space.total_dim(), Q(0));
  for (std::size_t q = 0; q < nw; ++q) axpy(raw_w, (*w)[q], lifts[q]);
  const std::size_t nd = D.module->dim();
  bool ok = true;
  for (std::size_t h = 0; h < nd && ok; ++h) {
    Vec total(nd, Q(0));
    for (std::size_t t = 0; t < raw_w.size(); ++t) {
      if (sgn(raw_w[t]) == 0) continue;
      const auto [hk, y] = DL.raw.index_to_pair[t];
      const Vec a = eps(y, h);
      const auto deg_a = A.carrier().homogeneous_degree(a);
      if (!deg_a) continue;
      const Q s = raw_w[t] * cat.phi(D.module->degree_of(hk), L->degree_of(y), D.module->degree_of(h)) *
                  cat.R(D.module->degree_of(hk), *deg_a);
      axpy(total, s, D.module->act(a, unit_vec(nd, hk)));
    }
    ok = total == unit_vec(nd, h);
  }
  cert.triangles = ok;
  return cert;
}

Signature signature(const LineCertificate& cert) {
  Signature s;
  auto v = signature_element(cert.line);
  auto d = signature_element(cert.dual.module);
  if (!v || !d) throw std::logic_error("signature: symmetry is not multiplication by a degree-e element");
  s.value = *v;
  s.via_dual = *d;
  const auto& A = *cert.line->algebra();
  s.consistent = s.value == s.via_dual && A.multiply(s.value, s.value) == A.unit();
  return s;
}

LineVerdict is_line_object(const ModulePtr& L) {
  LineVerdict v;
  v.certificate = find_inverse(L);
  v.report.checked++;
  if (!v.certificate) {
    v.report.note("evaluation L (x)_A L^v -> A is not an isomorphism");
    return v;
  }
  v.invertible = true;
  v.report.checked++;
  if (!v.certificate->triangles) v.report.fail("duality triangle identities fail");
  v.sig = signature(*v.certificate);
  v.report.checked++;
  if (!v.sig->consistent) v.report.fail("signature differs between L and its dual");
  const auto& A = *L->algebra();
  v.line = v.certificate->triangles && v.sig->value == A.unit();
  std::string sig;
  for (std::size_t i = 0; i < v.sig->value.size(); ++i) sig += (i ? "," : "") + format_rational(v.sig->value[i]);
  v.report.note("signature=(" + sig + ")");
  return v;
}

EpiVerdict epi_from_unit_is_iso(const ModuleMap& p, const LineCertificate& cert) {
  if (!same_module(p.target, cert.line)) throw InputError("epi_from_unit_is_iso: target is not the certified line");
  if (!same_module(p.source, regular_module(p.source->algebra())))
    throw InputError("epi_from_unit_is_iso: source is not the algebra itself");
  if (!p.map.is_epi()) throw InputError("epi_from_unit_is_iso: map is not an epimorphism");
  EpiVerdict v;
  v.inverse = p.inverse();
  v.iso = v.inverse.has_value();
  if (!v.iso) v.witness = "epimorphism from A onto a line object has a nonzero kernel";
  return v;
}

ProductAlgebra product_algebra(const std::vector<AlgebraPtr>& factors) {
  if (factors.empty()) throw InputError("product_algebra: at least one factor required");
  const CategoryPtr cat = factors.front()->category();
  std::vector<GradedSpace> spaces;
  std::string name;
  for (const auto& f : factors) {
    spaces.push_back(f->carrier());
    name += (name.empty() ? "" : " x ") + f->name;
  }
  DirectSum ds = direct_sum(cat, spaces);
  const std::size_t n = ds.space.total_dim();
  std::vector<Vec> products(n * n, Vec(n, Q(0)));
  Vec unit(n, Q(0));
  std::vector<Vec> idempotents;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    const auto& F = *factors[k];
    for (std::size_t i = 0; i < F.dim(); ++i)
      for (std::size_t j = 0; j < F.dim(); ++j)
        products[ds.embed_index[k][i] * n + ds.embed_index[k][j]] = ds.injections[k].apply(F.product(i, j));
    idempotents.push_back(ds.injections[k].apply(F.unit()));
    axpy(unit, Q(1), idempotents.back());
  }
  AlgebraPtr B = std::make_shared<const AlgebraInC>(ds.space, std::move(products), unit, name);
  ProductAlgebra out{B, {}, idempotents, ds};
  for (std::size_t k = 0; k < factors.size(); ++k)
    out.projections.push_back(
        AlgebraMap::make(B, factors[k], ds.projections[k], MapKind::ProductProjection, idempotents[k]));
  return out;
}

ProductLine product_line(const ProductAlgebra& B, const std::vector<ModulePtr>& lines) {
  if (lines.size() != B.projections.size()) throw InputError("product_line: one line per factor required");
  std::vector<GradedSpace> spaces;
  for (std::size_t k = 0; k < lines.size(); ++k) {
    if (!same_algebra(lines[k]->algebra(), B.projections[k].target))
      throw InputError("product_line: line " + std::to_string(k) + " is not over the matching factor");
    spaces.push_back(lines[k]->carrier());
  }
  const DirectSum ds = direct_sum(B.algebra->category(), spaces);
  const std::size_t n = ds.space.total_dim(), nb = B.algebra->dim();
  std::vector<Vec> action(nb * n, Vec(n, Q(0)));
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const auto& F = *B.projections[k].target;
    for (std::size_t i = 0; i < F.dim(); ++i)
      for (std::size_t j = 0; j < lines[k]->dim(); ++j)
        action[B.sum.embed_index[k][i] * n + ds.embed_index[k][j]] = ds.injections[k].apply(lines[k]->act(i, j));
  }
  auto J = std::make_shared<const ModuleInC>(B.algebra, ds.space, std::move(action), "product line");
  return ProductLine{J, is_line_object(J)};
}

}  // namespace relproj
