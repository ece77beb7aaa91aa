#include "relproj/module.hpp"

#include <random>
#include <stdexcept>

namespace relproj {

namespace {

Vec flatten(const Matrix& m) {
  Vec v;
  v.reserve(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) v.push_back(m(r, c));
  return v;
}

// Coordinates with respect to the global basis of a subspace, in the order used by as_space().
SpanCoordinates subspace_coordinates(const Subspace& sub) { return SpanCoordinates(sub.global_basis()); }

Vec coords_or_throw(const SpanCoordinates& sc, const Vec& v, const char* what) {
  auto c = sc(v);
  if (!c) throw std::logic_error(what);
  return std::move(*c);
}

// Throws unless projection * raw_op kills every relation, i.e. the raw operator descends to the quotient.
void require_descends(const Matrix& projected_op, const std::vector<Vec>& relations, const char* what) {
  for (const auto& r : relations)
    if (!is_zero(projected_op * r)) throw std::logic_error(what);
}

}  // namespace

ModuleInC::ModuleInC(AlgebraPtr algebra, GradedSpace carrier, std::vector<Vec> action, std::string name_)
    : name(std::move(name_)), algebra_(std::move(algebra)), carrier_(std::move(carrier)), action_(std::move(action)) {
  if (!algebra_) throw std::logic_error("module: null algebra");
  if (!same_category(algebra_->category(), carrier_.category()))
    throw InputError("module: algebra and carrier live in different categories");
  const std::size_t na = algebra_->dim(), n = carrier_.total_dim();
  if (action_.size() != na * n) throw InputError("module: expected dim(A) * dim(X) action vectors");
  const auto& G = carrier_.group();
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Vec& v = action_[i * n + j];
      if (v.size() != n) throw InputError("module: action vector has the wrong length");
      const Element want = G.add(algebra_->degree_of(i), carrier_.degree_of(j));
      for (std::size_t k = 0; k < n; ++k)
        if (sgn(v[k]) != 0 && carrier_.degree_of(k) != want)
          throw InputError("module: action of a" + std::to_string(i) + " on x" + std::to_string(j) +
                           " is not in degree " + G.label(want));
    }
  operators_.reserve(na);
  for (std::size_t i = 0; i < na; ++i) {
    Matrix op(n, n);
    for (std::size_t j = 0; j < n; ++j) op.set_column(j, action_[i * n + j]);
    operators_.push_back(std::move(op));
  }
}

Vec ModuleInC::act(const Vec& a, const Vec& x) const {
  Vec out(dim(), Q(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    if (sgn(a[i]) != 0) axpy(out, a[i], operators_[i] * x);
  return out;
}

bool ModuleInC::operator==(const ModuleInC& other) const {
  return same_algebra(algebra_, other.algebra_) && carrier_ == other.carrier_ && action_ == other.action_;
}

bool same_module(const ModulePtr& a, const ModulePtr& b) { return a == b || (a && b && *a == *b); }

ModuleMap ModuleMap::make(ModulePtr source, ModulePtr target, GradedMap map) {
  if (!same_algebra(source->algebra(), target->algebra())) throw InputError("module map: modules over different algebras");
  if (!(map.source() == source->carrier()) || !(map.target() == target->carrier()))
    throw InputError("module map: linear map does not match the carriers");
  const std::size_t na = source->algebra()->dim();
  for (std::size_t j = 0; j < source->dim(); ++j) {
    const Vec fx = map.image_of_basis(j);
    for (std::size_t i = 0; i < na; ++i)
      if (map.apply(source->act(i, j)) != target->action_operator(i) * fx)
        throw InputError("module map: not A-linear on (a" + std::to_string(i) + ", x" + std::to_string(j) + ")");
  }
  return ModuleMap{std::move(source), std::move(target), std::move(map)};
}

ModuleMap ModuleMap::identity(const ModulePtr& M) { return ModuleMap{M, M, GradedMap::identity(M->carrier())}; }

ModuleMap ModuleMap::zero(const ModulePtr& source, const ModulePtr& target) {
  return ModuleMap{source, target, GradedMap::zero(source->carrier(), target->carrier())};
}

ModuleMap ModuleMap::after(const ModuleMap& first) const {
  if (!same_module(first.target, source)) throw InputError("module map composition: mismatched modules");
  return ModuleMap{first.source, target, map * first.map};
}

ModuleMap ModuleMap::operator+(const ModuleMap& rhs) const { return ModuleMap{source, target, map + rhs.map}; }
ModuleMap ModuleMap::operator-(const ModuleMap& rhs) const { return ModuleMap{source, target, map - rhs.map}; }

std::optional<ModuleMap> ModuleMap::inverse() const {
  auto inv = map.inverse();
  if (!inv) return std::nullopt;
  return ModuleMap{target, source, std::move(*inv)};
}

CheckReport check_module_axioms(const ModuleInC& M) {
  CheckReport rep("module axioms");
  const auto& A = *M.algebra();
  const auto& cat = *M.category();
  const std::size_t n = M.dim(), na = A.dim();
  for (std::size_t j = 0; j < n; ++j) {
    rep.checked++;
    if (M.act(A.unit(), unit_vec(n, j)) != unit_vec(n, j)) rep.fail("unit does not act as identity on x" + std::to_string(j));
  }
  std::size_t triples = 0;
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t k = 0; k < na; ++k) {
      const Matrix& Lk = M.action_operator(k);
      for (std::size_t j = 0; j < n; ++j) {
        ++triples;
        const Vec lhs = M.act(A.product(i, k), unit_vec(n, j));
        Vec rhs = M.action_operator(i) * Lk.column(j);
        const Q s = cat.phi(A.degree_of(i), A.degree_of(k), M.degree_of(j));
        for (auto& x : rhs) x *= s;
        if (lhs != rhs)
          rep.fail("twisted associativity fails on (a" + std::to_string(i) + ", a" + std::to_string(k) + ", x" +
                   std::to_string(j) + ")");
      }
    }
  rep.checked += triples;
  rep.note("triples=" + std::to_string(triples));
  return rep;
}

ModulePtr regular_module(const AlgebraPtr& A) {
  return std::make_shared<const ModuleInC>(A, A->carrier(), A->products(), A->name);
}

ModulePtr zero_module(const AlgebraPtr& A) {
  return std::make_shared<const ModuleInC>(A, GradedSpace::zero(A->category()), std::vector<Vec>{}, "0");
}

FreeModule free_module(const AlgebraPtr& A, const GradedSpace& X) {
  TensorProduct T = tensor(A->carrier(), X);
  const auto& cat = *A->category();
  const std::size_t na = A->dim(), n = T.space.total_dim();
  std::vector<Vec> action(na * n, Vec(n, Q(0)));
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t t = 0; t < n; ++t) {
      const auto [b, x] = T.index_to_pair[t];
      const Q s = 1 / cat.phi(A->degree_of(i), A->degree_of(b), X.degree_of(x));
      const Vec& p = A->product(i, b);
      Vec& out = action[i * n + t];
      for (std::size_t k = 0; k < na; ++k)
        if (sgn(p[k]) != 0) add_product(out[T.index(k, x)], s, p[k]);
    }
  auto M = std::make_shared<const ModuleInC>(A, T.space, std::move(action), "free");
  std::vector<Vec> unit_images;
  for (std::size_t x = 0; x < X.total_dim(); ++x) {
    Vec v(n, Q(0));
    for (std::size_t k = 0; k < na; ++k)
      if (sgn(A->unit()[k]) != 0) v[T.index(k, x)] += A->unit()[k];
    unit_images.push_back(std::move(v));
  }
  GradedMap unit = GradedMap::from_images(X, T.space, unit_images);
  return FreeModule{M, X, std::move(T), std::move(unit)};
}

ModuleMap FreeModule::extend(const ModulePtr& M, const GradedMap& g) const {
  if (!(g.source() == generators) || !(g.target() == M->carrier())) throw InputError("extend: map has the wrong shape");
  std::vector<Vec> images(tensor.space.total_dim());
  for (std::size_t t = 0; t < images.size(); ++t) {
    const auto [b, x] = tensor.index_to_pair[t];
    images[t] = M->action_operator(b) * g.image_of_basis(x);
  }
  return ModuleMap::make(module, M, GradedMap::from_images(module->carrier(), M->carrier(), images));
}

ModuleSum direct_sum(const AlgebraPtr& A, const std::vector<ModulePtr>& summands) {
  std::vector<GradedSpace> spaces;
  for (const auto& s : summands) {
    if (!same_algebra(s->algebra(), A)) throw InputError("direct sum: summand over a different algebra");
    spaces.push_back(s->carrier());
  }
  const DirectSum ds = direct_sum(A->category(), spaces);
  const std::size_t na = A->dim(), n = ds.space.total_dim();
  std::vector<Vec> action(na * n, Vec(n, Q(0)));
  for (std::size_t k = 0; k < summands.size(); ++k)
    for (std::size_t i = 0; i < na; ++i)
      for (std::size_t j = 0; j < summands[k]->dim(); ++j)
        action[i * n + ds.embed_index[k][j]] = ds.injections[k].apply(summands[k]->act(i, j));
  auto M = std::make_shared<const ModuleInC>(A, ds.space, std::move(action), "sum");
  ModuleSum out{M, {}, {}};
  for (std::size_t k = 0; k < summands.size(); ++k) {
    out.injections.push_back(ModuleMap{summands[k], M, ds.injections[k]});
    out.projections.push_back(ModuleMap{M, summands[k], ds.projections[k]});
  }
  return out;
}

ModuleSum free_rank(const AlgebraPtr& A, std::size_t k) {
  const auto R = regular_module(A);
  ModuleSum s = direct_sum(A, std::vector<ModulePtr>(k, R));
  auto named = std::make_shared<ModuleInC>(*s.module);
  named->name = A->name + "^" + std::to_string(k);
  ModulePtr M = named;
  for (auto& f : s.injections) f.target = M;
  for (auto& f : s.projections) f.source = M;
  s.module = M;
  return s;
}

MapSystem::MapSystem(ModulePtr M, ModulePtr N, Element shift)
    : M_(std::move(M)), N_(std::move(N)), shift_(shift), sys_(0) {
  if (!same_algebra(M_->algebra(), N_->algebra())) throw InputError("hom: modules over different algebras");
  const auto& G = M_->carrier().group();
  var_of_.assign(N_->dim(), std::vector<long>(M_->dim(), -1));
  for (std::size_t c = 0; c < M_->dim(); ++c) {
    const Element want = G.add(M_->degree_of(c), shift_);
    for (std::size_t s = 0; s < N_->carrier().dim(want); ++s) {
      const std::size_t r = N_->carrier().index(want, s);
      var_of_[r][c] = static_cast<long>(vars_.size());
      vars_.emplace_back(r, c);
    }
  }
  sys_ = LinearSystem(vars_.size());
}

void MapSystem::add_linearity() {
  const auto& A = *M_->algebra();
  const auto& cat = *M_->category();
  const auto& G = cat.group();
  const std::size_t nv = vars_.size();
  for (std::size_t i = 0; i < A.dim(); ++i) {
    const Element a = A.degree_of(i);
    const Matrix& LN = N_->action_operator(i);
    for (std::size_t j = 0; j < M_->dim(); ++j) {
      const Element d = M_->degree_of(j);
      const Q c = cat.R(shift_, a) * cat.phi(a, shift_, d) / cat.phi(shift_, a, d);
      const Vec& v = M_->act(i, j);
      const Element out_deg = G.add(G.add(a, d), shift_);
      for (std::size_t s = 0; s < N_->carrier().dim(out_deg); ++s) {
        const std::size_t k = N_->carrier().index(out_deg, s);
        Vec coeffs(nv, Q(0));
        bool any = false;
        for (std::size_t col = 0; col < v.size(); ++col) {
          if (sgn(v[col]) == 0) continue;
          const long var = var_of_[k][col];
          if (var >= 0) {
            coeffs[static_cast<std::size_t>(var)] += v[col];
            any = true;
          }
        }
        for (std::size_t r = 0; r < N_->dim(); ++r) {
          if (sgn(LN(k, r)) == 0) continue;
          const long var = var_of_[r][j];
          if (var >= 0) {
            sub_product(coeffs[static_cast<std::size_t>(var)], c, LN(k, r));
            any = true;
          }
        }
        if (any) sys_.add(std::move(coeffs));
      }
    }
  }
}

bool MapSystem::add_value(const Vec& v, const Vec& w, const GradedMap* post) {
  const std::size_t nv = vars_.size();
  const Matrix P = post ? post->dense() : Matrix::identity(N_->dim());
  if (w.size() != P.rows()) throw std::logic_error("MapSystem::add_value: target has the wrong length");
  for (std::size_t p = 0; p < P.rows(); ++p) {
    Vec coeffs(nv, Q(0));
    for (std::size_t r = 0; r < N_->dim(); ++r) {
      if (sgn(P(p, r)) == 0) continue;
      for (std::size_t c = 0; c < v.size(); ++c) {
        if (sgn(v[c]) == 0) continue;
        const long var = var_of_[r][c];
        if (var >= 0) add_product(coeffs[static_cast<std::size_t>(var)], P(p, r), v[c]);
      }
    }
    if (!sys_.add(std::move(coeffs), w[p])) return false;
  }
  return sys_.consistent();
}

Matrix MapSystem::assemble(const Vec& values) const {
  Matrix m(N_->dim(), M_->dim());
  for (std::size_t k = 0; k < vars_.size(); ++k) m(vars_[k].first, vars_[k].second) = values[k];
  return m;
}

std::optional<Matrix> MapSystem::solution() const {
  auto p = sys_.particular();
  if (!p) return std::nullopt;
  return assemble(*p);
}

std::vector<Matrix> MapSystem::kernel() const {
  std::vector<Matrix> out;
  for (const auto& k : sys_.kernel()) out.push_back(assemble(k));
  return out;
}

std::vector<ModuleMap> hom_basis(const ModulePtr& M, const ModulePtr& N) {
  MapSystem sys(M, N);
  sys.add_linearity();
  std::vector<ModuleMap> out;
  for (const auto& m : sys.kernel()) out.push_back(ModuleMap{M, N, GradedMap::from_dense(M->carrier(), N->carrier(), m)});
  return out;
}

std::optional<ModuleMap> find_isomorphism(const ModulePtr& M, const ModulePtr& N, std::uint64_t seed) {
  if (!same_algebra(M->algebra(), N->algebra())) return std::nullopt;
  if (M->carrier().dims() != N->carrier().dims()) return std::nullopt;
  if (M->dim() == 0) return ModuleMap::zero(M, N);
  const auto basis = hom_basis(M, N);
  if (basis.empty()) return std::nullopt;
  auto combo = [&](const std::vector<Q>& c) {
    ModuleMap f = ModuleMap::zero(M, N);
    for (std::size_t k = 0; k < c.size(); ++k)
      if (sgn(c[k]) != 0) f = f + basis[k].scaled(c[k]);
    return f;
  };
  std::vector<std::vector<Q>> candidates;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    std::vector<Q> c(basis.size(), Q(0));
    c[k] = 1;
    candidates.push_back(c);
  }
  candidates.emplace_back(basis.size(), Q(1));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    std::vector<Q> c(basis.size());
    for (std::size_t t = 0; t < c.size(); ++t) c[t] = Q(static_cast<long>(t + 1));
    c[k] = 0;
    candidates.push_back(c);
  }
  {
    std::vector<Q> c(basis.size());
    for (std::size_t t = 0; t < c.size(); ++t) c[t] = Q(static_cast<long>(t * t + 1));
    candidates.push_back(c);
  }
  for (const auto& c : candidates) {
    ModuleMap f = combo(c);
    if (f.is_iso()) return f;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-7, 7);
  for (int attempt = 0; attempt < 24; ++attempt) {
    std::vector<Q> c(basis.size());
    for (auto& x : c) x = coef(rng);
    ModuleMap f = combo(c);
    if (f.is_iso()) return f;
  }
  return std::nullopt;
}

Submodule submodule(const ModulePtr& M, const Subspace& sub) {
  if (!(sub.ambient == M->carrier())) throw InputError("submodule: subspace is not inside the module");
  const auto gens = sub.global_basis();
  const SpanCoordinates sc = subspace_coordinates(sub);
  const std::size_t na = M->algebra()->dim(), n = gens.size();
  std::vector<Vec> action;
  action.reserve(na * n);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto c = sc(M->action_operator(i) * gens[j]);
      if (!c) throw InputError("submodule: subspace is not closed under the action");
      action.push_back(std::move(*c));
    }
  auto S = std::make_shared<const ModuleInC>(M->algebra(), sub.as_space(), std::move(action), "sub");
  return Submodule{S, ModuleMap{S, M, sub.inclusion()}};
}

QuotientModule quotient_module(const ModulePtr& M, const Subspace& sub) {
  if (!(sub.ambient == M->carrier())) throw InputError("quotient module: subspace is not inside the module");
  const std::size_t na = M->algebra()->dim();
  for (const auto& v : sub.global_basis())
    for (std::size_t i = 0; i < na; ++i)
      if (!sub.contains(M->action_operator(i) * v)) throw InputError("quotient module: subspace is not a submodule");
  const Quotient q = quotient(sub);
  const std::size_t n = q.space.total_dim();
  std::vector<Vec> action;
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < n; ++j)
      action.push_back(q.projection.apply(M->action_operator(i) * q.section.image_of_basis(j)));
  auto Qm = std::make_shared<const ModuleInC>(M->algebra(), q.space, std::move(action), "quotient");
  return QuotientModule{Qm, ModuleMap{M, Qm, q.projection}, q.section};
}

Submodule kernel_module(const ModuleMap& f) { return submodule(f.source, kernel_subspace(f.map)); }

ModuleImage image_module(const ModuleMap& f) {
  const Subspace sub = image_subspace(f.map);
  Submodule S = submodule(f.target, sub);
  const SpanCoordinates sc = subspace_coordinates(sub);
  std::vector<Vec> images;
  for (std::size_t j = 0; j < f.source->dim(); ++j)
    images.push_back(coords_or_throw(sc, f.map.image_of_basis(j), "image: value outside the image"));
  ModuleMap epi{f.source, S.module, GradedMap::from_images(f.source->carrier(), S.module->carrier(), images)};
  return ModuleImage{S.module, S.inclusion, std::move(epi)};
}

ModulePtr restriction_of_scalars(const AlgebraMap& u, const ModulePtr& N) {
  if (!same_algebra(u.target, N->algebra())) throw InputError("restriction: module is not over the target algebra");
  const std::size_t na = u.source->dim(), n = N->dim();
  std::vector<Vec> action;
  action.reserve(na * n);
  for (std::size_t i = 0; i < na; ++i) {
    const Vec ui = u.map.image_of_basis(i);
    for (std::size_t j = 0; j < n; ++j) action.push_back(N->act(ui, unit_vec(n, j)));
  }
  return std::make_shared<const ModuleInC>(u.source, N->carrier(), std::move(action), N->name);
}

ModulePtr transport(const ModulePtr& M, const GradedMap& P) {
  if (!(P.source() == M->carrier()) || !(P.target() == M->carrier())) throw InputError("transport: map has the wrong shape");
  auto inv = P.inverse();
  if (!inv) throw InputError("transport: map is not invertible");
  const Matrix p = P.dense(), pinv = inv->dense();
  const std::size_t na = M->algebra()->dim(), n = M->dim();
  std::vector<Vec> action;
  for (std::size_t i = 0; i < na; ++i) {
    const Matrix op = pinv * M->action_operator(i) * p;
    for (std::size_t j = 0; j < n; ++j) action.push_back(op.column(j));
  }
  return std::make_shared<const ModuleInC>(M->algebra(), M->carrier(), std::move(action), M->name + "'");
}

ModulePtr o_module_from_degree_zero(const AlgebraPtr& A, std::size_t d, const std::vector<Matrix>& isos) {
  const auto& C = A->carrier();
  const auto& G = C.group();
  for (Element g = 0; g < G.size(); ++g)
    if (C.dim(g) != 1) throw InputError("o_module_from_degree_zero: algebra must have one basis vector per degree");
  if (isos.size() + 1 != G.size()) throw InputError("o_module_from_degree_zero: one isomorphism per non-identity degree required");
  std::vector<Matrix> T{Matrix::identity(d)}, Tinv{Matrix::identity(d)};
  for (const auto& m : isos) {
    if (m.rows() != d || m.cols() != d) throw InputError("o_module_from_degree_zero: isomorphism has the wrong size");
    auto inv = inverse(m);
    if (!inv) throw InputError("o_module_from_degree_zero: supplied matrix is not invertible");
    T.push_back(m);
    Tinv.push_back(std::move(*inv));
  }
  GradedSpace X(A->category(), std::vector<std::size_t>(G.size(), d));
  const std::size_t n = X.total_dim();
  std::vector<Vec> action;
  for (Element h = 0; h < G.size(); ++h)
    for (std::size_t j = 0; j < n; ++j) {
      const Element k = X.degree_of(j);
      const Element hk = G.add(h, k);
      const Q F = A->product(C.index(h, 0), C.index(k, 0))[C.index(hk, 0)];
      const Matrix op = (T[hk] * Tinv[k]).scaled(F);
      Vec out(n, Q(0));
      for (std::size_t r = 0; r < d; ++r) out[X.index(hk, r)] = op(r, X.slot_of(j));
      action.push_back(std::move(out));
    }
  return std::make_shared<const ModuleInC>(A, X, std::move(action), "O-module(d=" + std::to_string(d) + ")");
}

std::vector<Matrix> degree_zero_data(const ModulePtr& M) {
  const auto& A = *M->algebra();
  const auto& X = M->carrier();
  const auto& G = X.group();
  std::vector<Matrix> out;
  for (Element g = 1; g < G.size(); ++g) {
    if (A.carrier().dim(g) == 0) throw InputError("degree_zero_data: algebra has no basis vector in some degree");
    const Matrix& op = M->action_operator(A.carrier().index(g, 0));
    Matrix block(X.dim(g), X.dim(0));
    for (std::size_t r = 0; r < X.dim(g); ++r)
      for (std::size_t c = 0; c < X.dim(0); ++c) block(r, c) = op(X.index(g, r), X.index(0, c));
    out.push_back(std::move(block));
  }
  return out;
}

namespace {

// Relation vectors R(x,a)[rho_M(a,x) (x) y] - phi(x,a,y)[x (x) rho_N(a,y)] spanning the kernel of M (x) N -> M (x)_A N.
Subspace tensor_relations(const ModuleInC& M, const ModuleInC& N, const TensorProduct& raw) {
  const auto& A = *M.algebra();
  const auto& cat = *M.category();
  std::vector<Vec> rels;
  const std::size_t n = raw.space.total_dim();
  for (std::size_t i = 0; i < A.dim(); ++i) {
    const Element a = A.degree_of(i);
    for (std::size_t x = 0; x < M.dim(); ++x) {
      const Vec& ax = M.act(i, x);
      const Q Rxa = cat.R(M.degree_of(x), a);
      for (std::size_t y = 0; y < N.dim(); ++y) {
        const Vec& ay = N.act(i, y);
        const Q ph = cat.phi(M.degree_of(x), a, N.degree_of(y));
        Vec r(n, Q(0));
        for (std::size_t k = 0; k < ax.size(); ++k)
          if (sgn(ax[k]) != 0) add_product(r[raw.index(k, y)], Rxa, ax[k]);
        for (std::size_t l = 0; l < ay.size(); ++l)
          if (sgn(ay[l]) != 0) sub_product(r[raw.index(x, l)], ph, ay[l]);
        if (!is_zero(r)) rels.push_back(std::move(r));
      }
    }
  }
  return Subspace::from_vectors(raw.space, rels);
}

// a . (x (x) y) = phi(a,x,y)^-1 (a x) (x) y on the raw tensor, for `act` the left factor's action by a_i.
Matrix raw_left_action(const Matrix& act_op, Element a, const GradedSpace& X, const GradedSpace& Y, const TensorProduct& raw,
                       const Category& cat) {
  const std::size_t n = raw.space.total_dim();
  Matrix op(n, n);
  for (std::size_t t = 0; t < n; ++t) {
    const auto [x, y] = raw.index_to_pair[t];
    const Q s = 1 / cat.phi(a, X.degree_of(x), Y.degree_of(y));
    for (std::size_t k = 0; k < X.total_dim(); ++k)
      if (sgn(act_op(k, x)) != 0) add_product(op(raw.index(k, y), t), s, act_op(k, x));
  }
  return op;
}

}  // namespace

TensorOver tensor_over(const ModulePtr& M, const ModulePtr& N) {
  if (!same_algebra(M->algebra(), N->algebra())) throw InputError("tensor_over: modules over different algebras");
  const auto& A = *M->algebra();
  const auto& cat = *M->category();
  TensorProduct raw = tensor(M->carrier(), N->carrier());
  const Subspace rel = tensor_relations(*M, *N, raw);
  const Quotient q = quotient(rel);
  const std::size_t n = q.space.total_dim();
  const Matrix proj = q.projection.dense(), sec = q.section.dense();
  const std::vector<Vec> rel_basis = rel.global_basis();
  std::vector<Vec> action;
  for (std::size_t i = 0; i < A.dim(); ++i) {
    const Matrix op = raw_left_action(M->action_operator(i), A.degree_of(i), M->carrier(), N->carrier(), raw, cat);
    const Matrix projected = proj * op;
    require_descends(projected, rel_basis, "tensor_over: action does not preserve the relations");
    const Matrix induced = projected * sec;
    for (std::size_t j = 0; j < n; ++j) action.push_back(induced.column(j));
  }
  auto T = std::make_shared<const ModuleInC>(M->algebra(), q.space, std::move(action), M->name + " (x)_A " + N->name);
  return TensorOver{T, M, N, std::move(raw), q.projection, q.section};
}

ModuleMap tensor_over_maps(const ModuleMap& f, const ModuleMap& g, const TensorOver& S, const TensorOver& T) {
  const GradedMap raw = tensor_maps(f.map, g.map, S.raw, T.raw);
  return ModuleMap::make(S.module, T.module, T.projection * raw * S.section);
}

ModuleMap left_unit_iso(const TensorOver& T) {
  if (!same_module(T.left, regular_module(T.left->algebra())))
    throw InputError("left_unit_iso: left factor is not the algebra itself");
  const auto& M = *T.right;
  std::vector<Vec> images(T.raw.space.total_dim());
  for (std::size_t t = 0; t < images.size(); ++t) {
    const auto [a, x] = T.raw.index_to_pair[t];
    images[t] = M.act(a, x);
  }
  const GradedMap raw = GradedMap::from_images(T.raw.space, M.carrier(), images);
  return ModuleMap::make(T.module, T.right, raw * T.section);
}

BaseChange base_change(const AlgebraMap& u, const ModulePtr& M) {
  if (!same_algebra(u.source, M->algebra())) throw InputError("base_change: module is not over the source algebra");
  const auto& B = *u.target;
  const auto& cat = *B.category();
  const ModulePtr BA = restriction_of_scalars(u, regular_module(u.target));
  TensorProduct raw = tensor(B.carrier(), M->carrier());
  const Subspace rel = tensor_relations(*BA, *M, raw);
  const Quotient q = quotient(rel);
  const std::size_t n = q.space.total_dim();
  const Matrix proj = q.projection.dense(), sec = q.section.dense();
  const std::vector<Vec> rel_basis = rel.global_basis();
  std::vector<Vec> action;
  for (std::size_t i = 0; i < B.dim(); ++i) {
    const Matrix op = raw_left_action(B.left_multiplication(unit_vec(B.dim(), i)), B.degree_of(i), B.carrier(),
                                      M->carrier(), raw, cat);
    const Matrix projected = proj * op;
    require_descends(projected, rel_basis, "base_change: B-action does not preserve the relations");
    const Matrix induced = projected * sec;
    for (std::size_t j = 0; j < n; ++j) action.push_back(induced.column(j));
  }
  auto BM = std::make_shared<const ModuleInC>(u.target, q.space, std::move(action), B.name + " (x)_A " + M->name);
  std::vector<Vec> unit_images;
  for (std::size_t x = 0; x < M->dim(); ++x) {
    Vec v(raw.space.total_dim(), Q(0));
    for (std::size_t k = 0; k < B.dim(); ++k)
      if (sgn(B.unit()[k]) != 0) v[raw.index(k, x)] += B.unit()[k];
    unit_images.push_back(q.projection.apply(v));
  }
  GradedMap unit = GradedMap::from_images(M->carrier(), q.space, unit_images);
  return BaseChange{u, M, BM, std::move(raw), q.projection, q.section, std::move(unit)};
}

ModuleMap base_change_map(const BaseChange& S, const BaseChange& T, const ModuleMap& f) {
  if (!same_module(f.source, S.source) || !same_module(f.target, T.source))
    throw InputError("base_change_map: map does not match the base changes");
  const GradedMap raw = tensor_maps(GradedMap::identity(S.u.target->carrier()), f.map, S.raw, T.raw);
  return ModuleMap::make(S.module, T.module, T.projection * raw * S.section);
}

ModuleMap base_change_regular_iso(const BaseChange& bc) {
  const auto& B = *bc.u.target;
  if (!same_module(bc.source, regular_module(bc.u.source)))
    throw InputError("base_change_regular_iso: module is not the source algebra itself");
  std::vector<Vec> images(bc.raw.space.total_dim());
  for (std::size_t t = 0; t < images.size(); ++t) {
    const auto [b, a] = bc.raw.index_to_pair[t];
    images[t] = B.multiply(unit_vec(B.dim(), b), bc.u.map.image_of_basis(a));
  }
  const GradedMap raw = GradedMap::from_images(bc.raw.space, B.carrier(), images);
  return ModuleMap::make(bc.module, regular_module(bc.u.target), raw * bc.section);
}

ModuleMap base_change_free_iso(const BaseChange& bc, const ModuleSum& src, const ModuleSum& dst) {
  const auto& B = *bc.u.target;
  if (!same_module(bc.source, src.module)) throw InputError("base_change_free_iso: module mismatch");
  if (src.projections.size() != dst.injections.size()) throw InputError("base_change_free_iso: rank mismatch");
  std::vector<Vec> images(bc.raw.space.total_dim());
  for (std::size_t t = 0; t < images.size(); ++t) {
    const auto [b, x] = bc.raw.index_to_pair[t];
    Vec out(dst.module->dim(), Q(0));
    for (std::size_t k = 0; k < src.projections.size(); ++k) {
      const Vec comp = src.projections[k].map.image_of_basis(x);
      if (is_zero(comp)) continue;
      axpy(out, Q(1), dst.injections[k].apply(B.multiply(unit_vec(B.dim(), b), bc.u.apply(comp))));
    }
    images[t] = std::move(out);
  }
  const GradedMap raw = GradedMap::from_images(bc.raw.space, dst.module->carrier(), images);
  return ModuleMap::make(bc.module, dst.module, raw * bc.section);
}

ModuleMap collapse_iso(const BaseChange& outer, const BaseChange& inner, const BaseChange& composite) {
  if (!same_module(outer.source, inner.module) || !same_module(inner.source, composite.source))
    throw InputError("collapse_iso: base changes do not compose");
  if (!(outer.u.map * inner.u.map == composite.u.map)) throw InputError("collapse_iso: composite algebra map mismatch");
  const auto& C = *outer.u.target;
  const std::size_t nc = C.dim();
  std::vector<Vec> images(outer.raw.space.total_dim());
  for (std::size_t t = 0; t < images.size(); ++t) {
    const auto [c, s] = outer.raw.index_to_pair[t];
    const Vec lift = inner.section.image_of_basis(s);
    Vec raw_out(composite.raw.space.total_dim(), Q(0));
    for (std::size_t r = 0; r < lift.size(); ++r) {
      if (sgn(lift[r]) == 0) continue;
      const auto [b, x] = inner.raw.index_to_pair[r];
      const Vec cb = C.multiply(unit_vec(nc, c), outer.u.map.image_of_basis(b));
      for (std::size_t k = 0; k < nc; ++k)
        if (sgn(cb[k]) != 0) add_product(raw_out[composite.raw.index(k, x)], lift[r], cb[k]);
    }
    images[t] = composite.projection.apply(raw_out);
  }
  const GradedMap raw = GradedMap::from_images(outer.raw.space, composite.module->carrier(), images);
  return ModuleMap::make(outer.module, composite.module, raw * outer.section);
}

Matrix HomModule::operator_of(const Vec& coords) const {
  Matrix m(target->dim(), source->dim());
  for (std::size_t k = 0; k < coords.size(); ++k)
    if (sgn(coords[k]) != 0) m = m + elements[k].scaled(coords[k]);
  return m;
}

std::optional<Vec> HomModule::coordinates(const Matrix& op) const {
  const auto& X = source->carrier();
  const auto& Y = target->carrier();
  const auto& G = X.group();
  const auto& H = module->carrier();
  Vec out(H.total_dim(), Q(0));
  for (Element g = 0; g < G.size(); ++g) {
    Matrix part(op.rows(), op.cols());
    bool nonzero = false;
    for (std::size_t r = 0; r < op.rows(); ++r)
      for (std::size_t c = 0; c < op.cols(); ++c)
        if (sgn(op(r, c)) != 0 && Y.degree_of(r) == G.add(X.degree_of(c), g)) {
          part(r, c) = op(r, c);
          nonzero = true;
        }
    if (!nonzero) continue;
    auto c = per_degree[g](flatten(part));
    if (!c) return std::nullopt;
    for (std::size_t k = 0; k < c->size(); ++k) out[H.index(g, k)] = (*c)[k];
  }
  if (operator_of(out) != op) return std::nullopt;
  return out;
}

HomModule inner_hom(const ModulePtr& M, const ModulePtr& N) {
  if (!same_algebra(M->algebra(), N->algebra())) throw InputError("inner_hom: modules over different algebras");
  const auto& A = *M->algebra();
  const auto& cat = *M->category();
  const auto& G = cat.group();
  std::vector<std::size_t> dims;
  std::vector<Matrix> elements;
  std::vector<SpanCoordinates> per_degree;
  for (Element g = 0; g < G.size(); ++g) {
    MapSystem sys(M, N, g);
    sys.add_linearity();
    auto ker = sys.kernel();
    dims.push_back(ker.size());
    std::vector<Vec> flat;
    for (const auto& k : ker) flat.push_back(flatten(k));
    per_degree.emplace_back(flat);
    for (auto& k : ker) elements.push_back(std::move(k));
  }
  GradedSpace H(M->category(), dims);
  std::vector<Vec> action;
  for (std::size_t i = 0; i < A.dim(); ++i) {
    const Element a = A.degree_of(i);
    const Matrix& LN = N->action_operator(i);
    for (std::size_t k = 0; k < elements.size(); ++k) {
      const Element g = H.degree_of(k);
      Matrix img = LN * elements[k];
      for (std::size_t c = 0; c < img.cols(); ++c) {
        const Q s = cat.phi(a, g, M->degree_of(c));
        if (s != 1)
          for (std::size_t r = 0; r < img.rows(); ++r) img(r, c) *= s;
      }
      const Element ag = G.add(a, g);
      Vec out(H.total_dim(), Q(0));
      if (!img.is_zero()) {
        auto c = per_degree[ag](flatten(img));
        if (!c) throw std::logic_error("inner_hom: action leaves the space of twisted-linear maps");
        for (std::size_t t = 0; t < c->size(); ++t) out[H.index(ag, t)] = (*c)[t];
      }
      action.push_back(std::move(out));
    }
  }
  auto Hm = std::make_shared<const ModuleInC>(M->algebra(), H, std::move(action), "hom(" + M->name + "," + N->name + ")");
  return HomModule{M, N, Hm, std::move(elements), std::move(per_degree)};
}

HomModule dual_module(const ModulePtr& M) { return inner_hom(M, regular_module(M->algebra())); }

ModuleMap hom_from_unit_iso(const HomModule& H) {
  const auto& A = *H.source->algebra();
  if (!same_module(H.source, regular_module(H.source->algebra())))
    throw InputError("hom_from_unit_iso: source is not the algebra itself");
  std::vector<Vec> images;
  for (const auto& e : H.elements) images.push_back(e * A.unit());
  return ModuleMap::make(H.module, H.target, GradedMap::from_images(H.module->carrier(), H.target->carrier(), images));
}

Vec hom_element(const HomModule& H, const ModuleMap& f) {
  auto c = H.coordinates(f.map.dense());
  if (!c) throw InputError("hom_element: map is not A-linear");
  return *c;
}

ZetaResult zeta_map(const AlgebraMap& u, const ModulePtr& M, const ModulePtr& N) {
  ZetaResult res;
  res.report = CheckReport("zeta");
  const auto& B = *u.target;
  const auto& cat = *B.category();
  const HomModule H = inner_hom(M, N);
  const BaseChange BH = base_change(u, H.module);
  const BaseChange BM = base_change(u, M);
  const BaseChange BN = base_change(u, N);
  const HomModule HB = inner_hom(BM.module, BN.module);
  const Matrix pM = BM.projection.dense(), sM = BM.section.dense(), pN = BN.projection.dense();
  res.well_defined = true;
  // 1 (x) h for each basis element h of hom_A(M, N).
  std::vector<Vec> one_tensor_h;
  for (std::size_t k = 0; k < H.elements.size(); ++k) {
    const Element g = H.module->degree_of(k);
    const Matrix& Hk = H.elements[k];
    Matrix raw(BN.raw.space.total_dim(), BM.raw.space.total_dim());
    for (std::size_t t = 0; t < BM.raw.space.total_dim(); ++t) {
      const auto [b, x] = BM.raw.index_to_pair[t];
      const Element db = B.degree_of(b), dx = M->degree_of(x);
      const Q s = cat.R(g, db) * cat.phi(db, g, dx) / cat.phi(g, db, dx);
      for (std::size_t y = 0; y < N->dim(); ++y)
        if (sgn(Hk(y, x)) != 0) add_product(raw(BN.raw.index(b, y), t), s, Hk(y, x));
    }
    const Matrix induced = pN * raw * sM;
    res.report.checked++;
    if (!(induced * pM == pN * raw)) {
      res.well_defined = false;
      res.report.fail("1 (x) h" + std::to_string(k) + " does not descend to the tensor product");
    }
    auto c = HB.coordinates(induced);
    if (!c) {
      res.well_defined = false;
      res.report.fail("1 (x) h" + std::to_string(k) + " is not B-linear");
      c = Vec(HB.module->dim(), Q(0));
    }
    one_tensor_h.push_back(std::move(*c));
  }
  std::vector<Vec> raw_images(BH.raw.space.total_dim());
  for (std::size_t t = 0; t < raw_images.size(); ++t) {
    const auto [b, k] = BH.raw.index_to_pair[t];
    raw_images[t] = HB.module->action_operator(b) * one_tensor_h[k];
  }
  const GradedMap raw = GradedMap::from_images(BH.raw.space, HB.module->carrier(), raw_images);
  const GradedMap z = raw * BH.section;
  res.report.checked++;
  if (!(z * BH.projection == raw)) {
    res.well_defined = false;
    res.report.fail("zeta does not descend to B (x)_A hom_A(M, N)");
  }
  try {
    res.zeta = ModuleMap::make(BH.module, HB.module, z);
  } catch (const InputError& e) {
    res.well_defined = false;
    res.report.fail(e.what());
    res.zeta = ModuleMap{BH.module, HB.module, z};
  }
  res.invertible = z.is_invertible();
  res.report.checked++;
  if (!res.invertible) res.report.fail("zeta is not invertible");
  res.report.note("dim source=" + std::to_string(BH.module->dim()) + " dim target=" + std::to_string(HB.module->dim()));
  return res;
}

std::optional<ModuleMap> find_retraction(const ModuleMap& x) {
  if (!x.map.is_mono()) throw InputError("find_retraction: map is not a monomorphism");
  MapSystem sys(x.target, x.source);
  sys.add_linearity();
  for (std::size_t l = 0; l < x.source->dim(); ++l)
    if (!sys.add_value(x.map.image_of_basis(l), unit_vec(x.source->dim(), l))) return std::nullopt;
  auto m = sys.solution();
  if (!m) return std::nullopt;
  return ModuleMap::make(x.target, x.source, GradedMap::from_dense(x.target->carrier(), x.source->carrier(), *m));
}

std::optional<ModuleMap> find_section(const ModuleMap& q) {
  if (!q.map.is_epi()) throw InputError("find_section: map is not an epimorphism");
  MapSystem sys(q.target, q.source);
  sys.add_linearity();
  for (std::size_t l = 0; l < q.target->dim(); ++l)
    if (!sys.add_value(unit_vec(q.target->dim(), l), unit_vec(q.target->dim(), l), &q.map)) return std::nullopt;
  auto m = sys.solution();
  if (!m) return std::nullopt;
  return ModuleMap::make(q.target, q.source, GradedMap::from_dense(q.target->carrier(), q.source->carrier(), *m));
}

ConservativeReport v0_conservative_check(const ModuleMap& f) {
  ConservativeReport out;
  const Matrix& fe = f.map.block(0);
  out.v0_invertible = is_invertible(fe);
  out.f_invertible = f.map.is_invertible();
  const auto TM = degree_zero_data(f.source);
  const auto TN = degree_zero_data(f.target);
  const auto& G = f.source->carrier().group();
  for (Element g = 1; g < G.size(); ++g) {
    out.report.checked++;
    auto inv = inverse(TM[g - 1]);
    if (!inv) {
      out.report.fail("e_" + G.label(g) + " does not act invertibly X_e -> X_g on the source");
      continue;
    }
    if (!(TN[g - 1] * fe * *inv == f.map.block(g)))
      out.report.fail("block in degree " + G.label(g) + " is not determined by the degree-e block");
  }
  out.report.checked++;
  if (out.v0_invertible && !out.f_invertible) out.report.fail("V0(f) invertible but f is not");
  out.report.note(std::string("V0(f) invertible: ") + (out.v0_invertible ? "yes" : "no"));
  out.report.note(std::string("f invertible: ") + (out.f_invertible ? "yes" : "no"));
  return out;
}

CheckReport generator_check(const AlgebraPtr& A, const std::vector<ModuleMap>& epis,
                            const std::vector<std::pair<ModuleMap, ModuleMap>>& distinct_pairs) {
  CheckReport rep("projective generator");
  const ModulePtr R = regular_module(A);
  for (std::size_t e = 0; e < epis.size(); ++e) {
    const auto& f = epis[e];
    rep.checked++;
    if (!f.map.is_epi()) {
      rep.fail("map " + std::to_string(e) + " is not an epimorphism");
      continue;
    }
    for (const auto& h : hom_basis(R, f.target)) {
      rep.checked++;
      MapSystem sys(R, f.source);
      sys.add_linearity();
      if (!sys.add_value(A->unit(), h.apply(A->unit()), &f.map) || !sys.solution())
        rep.fail("map " + std::to_string(e) + ": a morphism A -> N does not lift through the epimorphism");
    }
  }
  for (std::size_t p = 0; p < distinct_pairs.size(); ++p) {
    const auto& [f, g] = distinct_pairs[p];
    rep.checked++;
    if (f == g) {
      rep.note("pair " + std::to_string(p) + " consists of equal maps");
      continue;
    }
    bool separated = false;
    for (const auto& h : hom_basis(R, f.source))
      if (f.apply(h.apply(A->unit())) != g.apply(h.apply(A->unit()))) {
        separated = true;
        break;
      }
    if (!separated) rep.fail("pair " + std::to_string(p) + " is not separated by Hom_A(A, -)");
  }
  rep.note("finite presentation: structural (finite dimension)");
  return rep;
}

OperatorAlgebra enveloping_action_algebra(const ModulePtr& M) {
  const std::size_t n = M->dim();
  const auto& A = *M->algebra();
  const auto& G = M->carrier().group();
  OperatorAlgebra out;
  out.space_dim = n;
  IncrementalSpan span(n * n);
  if (n == 0) return out;
  auto consider = [&](Matrix op, Element shift) {
    if (span.add(flatten(op))) {
      out.basis.push_back(std::move(op));
      out.shifts.push_back(shift);
    }
  };
  consider(Matrix::identity(n), 0);
  for (std::size_t k = 0; k < out.basis.size(); ++k)
    for (std::size_t i = 0; i < A.dim(); ++i)
      consider(M->action_operator(i) * out.basis[k], G.add(A.degree_of(i), out.shifts[k]));
  return out;
}

}  // namespace relproj
