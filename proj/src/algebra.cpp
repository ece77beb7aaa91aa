#include "relproj/algebra.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

#include "relproj/polynomial.hpp"

namespace relproj {

AlgebraInC::AlgebraInC(GradedSpace carrier, std::vector<Vec> products, Vec unit, std::string name_)
    : name(std::move(name_)), carrier_(std::move(carrier)), products_(std::move(products)), unit_(std::move(unit)) {
  const std::size_t n = carrier_.total_dim();
  if (products_.size() != n * n) throw InputError("algebra: expected dim^2 structure vectors");
  if (unit_.size() != n) throw InputError("algebra: unit has the wrong length");
  const auto& G = carrier_.group();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Vec& p = products_[i * n + j];
      if (p.size() != n) throw InputError("algebra: structure vector has the wrong length");
      const Element want = G.add(carrier_.degree_of(i), carrier_.degree_of(j));
      for (std::size_t k = 0; k < n; ++k)
        if (sgn(p[k]) != 0 && carrier_.degree_of(k) != want)
          throw InputError("algebra: product of b" + std::to_string(i) + " and b" + std::to_string(j) +
                           " is not in degree " + G.label(want));
    }
  for (std::size_t k = 0; k < n; ++k)
    if (sgn(unit_[k]) != 0 && carrier_.degree_of(k) != 0) throw InputError("algebra: unit is not of degree e");
}

Vec AlgebraInC::multiply(const Vec& a, const Vec& b) const {
  const std::size_t n = dim();
  Vec out(n, Q(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(b[j]) == 0) continue;
      axpy(out, a[i] * b[j], products_[i * n + j]);
    }
  }
  return out;
}

Matrix AlgebraInC::left_multiplication(const Vec& a) const {
  const std::size_t n = dim();
  Matrix m(n, n);
  for (std::size_t j = 0; j < n; ++j) m.set_column(j, multiply(a, unit_vec(n, j)));
  return m;
}

std::vector<std::size_t> AlgebraInC::degree_zero_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < carrier_.dim(0); ++s) out.push_back(carrier_.index(0, s));
  return out;
}

bool AlgebraInC::operator==(const AlgebraInC& other) const {
  return carrier_ == other.carrier_ && products_ == other.products_ && unit_ == other.unit_;
}

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) { return a == b || (a && b && *a == *b); }

AlgebraMap AlgebraMap::make(AlgebraPtr source, AlgebraPtr target, GradedMap map, MapKind kind, Vec inverted) {
  if (!(map.source() == source->carrier()) || !(map.target() == target->carrier()))
    throw InputError("algebra map: linear map does not match source and target carriers");
  if (map.apply(source->unit()) != target->unit()) throw InputError("algebra map: unit is not preserved");
  const std::size_t n = source->dim();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec ui = map.image_of_basis(i);
    for (std::size_t j = 0; j < n; ++j)
      if (map.apply(source->product(i, j)) != target->multiply(ui, map.image_of_basis(j)))
        throw InputError("algebra map: not multiplicative on b" + std::to_string(i) + ", b" + std::to_string(j));
  }
  return AlgebraMap{std::move(source), std::move(target), std::move(map), kind, std::move(inverted)};
}

AlgebraMap AlgebraMap::identity(const AlgebraPtr& A) {
  return AlgebraMap{A, A, GradedMap::identity(A->carrier()), MapKind::Identity, {}};
}

AlgebraMap AlgebraMap::after(const AlgebraMap& first) const {
  if (!same_algebra(first.target, source)) throw InputError("algebra map composition: mismatched algebras");
  return AlgebraMap{first.source, target, map * first.map, MapKind::Other, {}};
}

CheckReport check_algebra_axioms(const AlgebraInC& A) {
  CheckReport rep("algebra axioms");
  const auto& cat = *A.category();
  const std::size_t n = A.dim();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec b = unit_vec(n, i);
    rep.checked += 2;
    if (A.multiply(A.unit(), b) != b) rep.fail("left unit fails on b" + std::to_string(i));
    if (A.multiply(b, A.unit()) != b) rep.fail("right unit fails on b" + std::to_string(i));
  }
  std::size_t triples = 0, pairs = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Element a = A.degree_of(i), b = A.degree_of(j);
      ++pairs;
      Vec swapped = A.product(j, i);
      for (auto& x : swapped) x *= cat.R(a, b);
      if (swapped != A.product(i, j))
        rep.fail("commutativity fails on (b" + std::to_string(i) + ", b" + std::to_string(j) + ")");
      for (std::size_t k = 0; k < n; ++k) {
        ++triples;
        const Element c = A.degree_of(k);
        const Vec lhs = A.multiply(A.product(i, j), unit_vec(n, k));
        Vec rhs = A.multiply(unit_vec(n, i), A.product(j, k));
        for (auto& x : rhs) x *= cat.phi(a, b, c);
        if (lhs != rhs)
          rep.fail("associativity fails on (b" + std::to_string(i) + ", b" + std::to_string(j) + ", b" +
                   std::to_string(k) + ")");
      }
    }
  rep.checked += triples + pairs;
  rep.note("triples=" + std::to_string(triples));
  rep.note("pairs=" + std::to_string(pairs));
  return rep;
}

AlgebraPtr twisted_group_algebra(const CategoryPtr& cat) {
  const auto& G = cat->group();
  const std::size_t n = G.size();
  GradedSpace carrier(cat, std::vector<std::size_t>(n, 1));
  std::vector<Vec> products;
  products.reserve(n * n);
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) {
      Vec v(n, Q(0));
      v[carrier.index(G.add(x, y), 0)] = cat->cochain()(x, y);
      products.push_back(std::move(v));
    }
  return std::make_shared<const AlgebraInC>(carrier, std::move(products), unit_vec(n, 0),
                                            "twisted group algebra (" + cat->name + ")");
}

AlgebraPtr octonions() {
  auto A = twisted_group_algebra(Category::octonionic());
  auto copy = std::make_shared<AlgebraInC>(*A);
  copy->name = "O";
  return copy;
}

AlgebraPtr product_of_fields(std::size_t n, const CategoryPtr& cat) {
  GradedSpace carrier = GradedSpace::concentrated(cat, 0, n);
  std::vector<Vec> products;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) products.push_back(i == j ? unit_vec(n, i) : zero_vec(n));
  return std::make_shared<const AlgebraInC>(carrier, std::move(products), Vec(n, Q(1)),
                                            "Q^" + std::to_string(n));
}

AlgebraPtr ground_field(const CategoryPtr& cat) {
  return std::make_shared<const AlgebraInC>(GradedSpace::unit(cat), std::vector<Vec>{Vec{Q(1)}}, Vec{Q(1)}, "Q");
}

AlgebraPtr dual_numbers(const CategoryPtr& cat) {
  GradedSpace carrier = GradedSpace::concentrated(cat, 0, 2);
  std::vector<Vec> products{{Q(1), Q(0)}, {Q(0), Q(1)}, {Q(0), Q(1)}, {Q(0), Q(0)}};
  return std::make_shared<const AlgebraInC>(carrier, std::move(products), Vec{Q(1), Q(0)}, "Q[eps]/(eps^2)");
}

IdentityReport underlying_identities(const AlgebraInC& A, std::size_t trials, std::uint64_t seed) {
  IdentityReport rep;
  rep.seed = seed;
  rep.trials = trials;
  const std::size_t n = A.dim();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
  auto random_element = [&] {
    Vec v(n);
    for (auto& x : v) {
      const int p = num(rng);
      const int q = den(rng);
      x = Q(p, q);
      x.canonicalize();
    }
    return v;
  };
  auto norm = [](const Vec& v) {
    Q s = 0;
    for (const auto& x : v) s += x * x;
    return s;
  };
  auto m = [&](const Vec& a, const Vec& b) { return A.multiply(a, b); };
  for (std::size_t t = 0; t < trials; ++t) {
    const Vec x = random_element(), y = random_element(), z = random_element();
    const std::string tag = "trial " + std::to_string(t);
    rep.left_alternative.checked++;
    if (m(m(x, x), y) != m(x, m(x, y))) rep.left_alternative.fail(tag);
    rep.right_alternative.checked++;
    if (m(y, m(x, x)) != m(m(y, x), x)) rep.right_alternative.fail(tag);
    rep.moufang.checked++;
    if (m(m(m(x, y), x), z) != m(x, m(y, m(x, z)))) rep.moufang.fail(tag);
    rep.norm.checked++;
    if (norm(m(x, y)) != norm(x) * norm(y)) rep.norm.fail(tag);
  }
  const auto& C = A.carrier();
  if (C.group() == GradingGroup::z2_cubed()) {
    const Element d1 = C.group().index_of({1, 0, 0}), d2 = C.group().index_of({0, 1, 0}),
                  d4 = C.group().index_of({0, 0, 1});
    if (C.dim(d1) > 0 && C.dim(d2) > 0 && C.dim(d4) > 0) {
      const Vec e1 = unit_vec(n, C.index(d1, 0)), e2 = unit_vec(n, C.index(d2, 0)), e4 = unit_vec(n, C.index(d4, 0));
      rep.non_associative_witness = m(m(e1, e2), e4) != m(e1, m(e2, e4));
    }
  }
  return rep;
}

ElementEndo ElementEndo::multiplication(const AlgebraPtr& A, const Vec& element) {
  if (element.size() != A->dim()) throw InputError("element has the wrong length");
  const auto deg = A->carrier().homogeneous_degree(element);
  if (deg && *deg != 0) throw InputError("multiplication endomorphisms require an element of degree e");
  if (!deg && !is_zero(element)) throw InputError("multiplication endomorphisms require an element of degree e");
  return ElementEndo{A, element, GradedMap::from_dense(A->carrier(), A->carrier(), A->left_multiplication(element))};
}

std::vector<ElementEndo> element_endos(const AlgebraPtr& A) {
  std::vector<ElementEndo> out;
  for (auto i : A->degree_zero_indices()) out.push_back(ElementEndo::multiplication(A, unit_vec(A->dim(), i)));
  return out;
}

Ideal Ideal::make(const AlgebraPtr& A, Subspace sub) {
  if (!(sub.ambient == A->carrier())) throw InputError("ideal: subspace is not inside the algebra");
  const std::size_t n = A->dim();
  for (const auto& v : sub.global_basis())
    for (std::size_t i = 0; i < n; ++i)
      if (!sub.contains(A->multiply(unit_vec(n, i), v))) throw InputError("ideal: subspace is not closed under multiplication");
  return Ideal{A, std::move(sub)};
}

Ideal generated_ideal(const AlgebraPtr& A, const std::vector<Vec>& generators) {
  const std::size_t n = A->dim();
  Subspace current = Subspace::from_vectors(A->carrier(), generators);
  std::vector<Vec> frontier = current.global_basis();
  while (!frontier.empty()) {
    std::vector<Vec> fresh;
    for (const auto& v : frontier)
      for (std::size_t i = 0; i < n; ++i) {
        Vec p = A->multiply(unit_vec(n, i), v);
        if (!current.contains(p)) {
          auto all = current.global_basis();
          all.push_back(p);
          current = Subspace::from_vectors(A->carrier(), all);
          fresh.push_back(std::move(p));
        }
      }
    frontier = std::move(fresh);
  }
  return Ideal{A, std::move(current)};
}

Ideal generated_ideal(const AlgebraPtr& A, const std::vector<ElementEndo>& generators) {
  std::vector<Vec> v;
  for (const auto& g : generators) v.push_back(g.element);
  return generated_ideal(A, v);
}

std::optional<std::vector<ElementEndo>> partition_of_unity(const AlgebraPtr& A, const std::vector<ElementEndo>& family) {
  const auto zero_idx = A->degree_zero_indices();
  const std::size_t d0 = zero_idx.size();
  std::vector<Vec> columns;
  for (const auto& f : family)
    for (auto t : zero_idx) columns.push_back(A->multiply(unit_vec(A->dim(), t), f.element));
  std::optional<Vec> sol;
  if (columns.empty()) {
    if (!is_zero(A->unit())) return std::nullopt;
    sol = Vec{};
  } else {
    sol = solve(Matrix::from_columns(A->dim(), columns), A->unit());
  }
  if (!sol) return std::nullopt;
  std::vector<ElementEndo> s;
  GradedMap total = GradedMap::zero(A->carrier(), A->carrier());
  for (std::size_t k = 0; k < family.size(); ++k) {
    Vec local(sol->begin() + static_cast<std::ptrdiff_t>(k * d0), sol->begin() + static_cast<std::ptrdiff_t>((k + 1) * d0));
    s.push_back(ElementEndo::multiplication(A, A->from_degree_zero(local)));
    total = total + s.back().map * family[k].map;
  }
  if (!(total == GradedMap::identity(A->carrier())))
    throw std::logic_error("partition of unity: sum s_i f_i is not the identity");
  return s;
}

QuotientAlgebra quotient_algebra(const Ideal& I) {
  const auto& A = I.algebra;
  const Quotient q = quotient(I.subspace);
  const std::size_t m = q.space.total_dim();
  std::vector<Vec> lifts;
  for (std::size_t i = 0; i < m; ++i) lifts.push_back(q.section.image_of_basis(i));
  std::vector<Vec> products;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) products.push_back(q.projection.apply(A->multiply(lifts[i], lifts[j])));
  auto B = std::make_shared<const AlgebraInC>(q.space, std::move(products), q.projection.apply(A->unit()),
                                              A->name + "/I");
  auto proj = AlgebraMap::make(A, B, q.projection, MapKind::Quotient);
  return QuotientAlgebra{B, std::move(proj), q.section};
}

std::optional<Vec> invert_degree_zero(const AlgebraInC& A, const Vec& a) {
  const auto zero_idx = A.degree_zero_indices();
  if (zero_idx.empty()) return is_zero(A.unit()) ? std::optional<Vec>(Vec(A.dim(), Q(0))) : std::nullopt;
  std::vector<Vec> columns;
  for (auto t : zero_idx) columns.push_back(A.multiply(a, unit_vec(A.dim(), t)));
  auto sol = solve(Matrix::from_columns(A.dim(), columns), A.unit());
  if (!sol) return std::nullopt;
  return A.from_degree_zero(*sol);
}

Localization localize(const AlgebraPtr& A, const ElementEndo& f) {
  if (!same_algebra(A, f.algebra)) throw InputError("localize: element belongs to another algebra");
  GradedMap power = GradedMap::identity(A->carrier());
  std::size_t N = 0;
  std::size_t r = A->dim();
  while (true) {
    GradedMap next = f.map * power;
    const std::size_t rn = rank(next.dense());
    if (rn == r) break;
    power = std::move(next);
    r = rn;
    ++N;
  }
  Ideal K = Ideal::make(A, kernel_subspace(power));
  QuotientAlgebra q = quotient_algebra(K);
  auto B = std::make_shared<AlgebraInC>(*q.algebra);
  B->name = A->name + "_f";
  AlgebraPtr Bp = B;
  auto u = AlgebraMap::make(A, Bp, q.projection.map, MapKind::Localization, f.element);
  auto inv = invert_degree_zero(*Bp, u.apply(f.element));
  if (!inv) throw std::logic_error("localize: image of f is not invertible in A_f");
  return Localization{Bp, std::move(u), q.section, N, f.element, *inv};
}

std::optional<AlgebraMap> Localization::factor(const AlgebraMap& v) const {
  if (!same_algebra(v.source, to_local.source)) throw InputError("factor: map does not start at the localized algebra");
  if (!invert_degree_zero(*v.target, v.apply(element))) return std::nullopt;
  GradedMap w = v.map * section;
  if (!(w * to_local.map == v.map)) return std::nullopt;
  return AlgebraMap::make(algebra, v.target, std::move(w));
}

// ---------------------------------------------------------------------------
// Degree-e commutative algebra: radical, idempotent splitting, maximal ideals.

namespace {

struct CommAlg {
  std::size_t n = 0;
  std::vector<Vec> prod;
  Vec one;

  Vec mul(const Vec& a, const Vec& b) const {
    Vec out(n, Q(0));
    for (std::size_t i = 0; i < n; ++i) {
      if (sgn(a[i]) == 0) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (sgn(b[j]) != 0) axpy(out, a[i] * b[j], prod[i * n + j]);
    }
    return out;
  }
  Matrix mult_matrix(const Vec& a) const {
    Matrix m(n, n);
    for (std::size_t j = 0; j < n; ++j) m.set_column(j, mul(a, unit_vec(n, j)));
    return m;
  }
};

CommAlg degree_zero_algebra(const AlgebraInC& A) {
  CommAlg K;
  K.n = A.carrier().dim(0);
  for (std::size_t i = 0; i < K.n; ++i)
    for (std::size_t j = 0; j < K.n; ++j) K.prod.push_back(A.degree_zero_part(A.product(i, j)));
  K.one = A.degree_zero_part(A.unit());
  return K;
}

std::size_t span_dim(std::size_t n, const std::vector<Vec>& vs) { return canonical_span(n, vs).size(); }

struct Splitting {
  std::vector<Vec> radical;  // basis of the nilradical of K
  Quotient reduced_map;      // K -> K / rad (plain one-degree spaces)
  CommAlg reduced;
  std::vector<Vec> idempotents;  // primitive idempotents of the reduced algebra
};

constexpr std::size_t kCandidateBudget = 64;

// Splits the reduced (semisimple) algebra into a product of fields.
std::vector<Vec> primitive_idempotents(const CommAlg& R) {
  std::vector<Vec> done;
  if (R.n == 0) return done;
  std::vector<Vec> work{R.one};
  std::mt19937_64 rng(0x5eedULL);
  std::uniform_int_distribution<int> coef(-3, 3);
  while (!work.empty()) {
    Vec e = work.back();
    work.pop_back();
    std::vector<Vec> piece;
    for (std::size_t i = 0; i < R.n; ++i) piece.push_back(R.mul(e, unit_vec(R.n, i)));
    const std::size_t d = span_dim(R.n, piece);
    if (d == 1) {
      done.push_back(e);
      continue;
    }
    bool resolved = false;
    for (std::size_t attempt = 0; attempt < kCandidateBudget && !resolved; ++attempt) {
      Vec z(R.n, Q(0));
      if (attempt < R.n) {
        z = piece[attempt];
      } else {
        for (const auto& p : piece) axpy(z, Q(coef(rng)), p);
      }
      std::vector<Vec> powers{e};
      poly::Poly minpoly;
      while (true) {
        Vec next = R.mul(z, powers.back());
        auto c = coordinates_in(powers, next);
        if (c) {
          minpoly.assign(powers.size() + 1, Q(0));
          for (std::size_t k = 0; k < c->size(); ++k) minpoly[k] = -(*c)[k];
          minpoly.back() = 1;
          break;
        }
        powers.push_back(std::move(next));
      }
      const auto factors = poly::factor_squarefree(minpoly);
      if (factors.size() == 1) {
        if (static_cast<std::size_t>(poly::degree(minpoly)) == d) {
          done.push_back(e);
          resolved = true;
        }
        continue;
      }
      poly::Poly rest{Q(1)};
      for (std::size_t k = 1; k < factors.size(); ++k) rest = poly::multiply(rest, factors[k]);
      const auto bz = poly::extended_gcd(factors[0], rest);
      const poly::Poly select = poly::multiply(bz.t, rest);
      // Evaluate select(z) inside eR, where z^0 = e.
      Vec eps(R.n, Q(0)), zp = e;
      for (std::size_t k = 0; k < select.size(); ++k) {
        if (k > 0) zp = R.mul(z, zp);
        axpy(eps, select[k], zp);
      }
      if (R.mul(eps, eps) != eps) throw std::logic_error("idempotent splitting produced a non-idempotent");
      Vec other = e;
      axpy(other, Q(-1), eps);
      work.push_back(other);
      work.push_back(eps);
      resolved = true;
    }
    if (!resolved)
      throw std::runtime_error("could not split the degree-e algebra into fields within the candidate budget");
  }
  return done;
}

Splitting split(const CommAlg& K) {
  Splitting s;
  const auto cat = Category::plain();
  GradedSpace space(cat, {K.n});
  std::vector<Matrix> L;
  for (std::size_t i = 0; i < K.n; ++i) L.push_back(K.mult_matrix(unit_vec(K.n, i)));
  Matrix gram(K.n, K.n);
  for (std::size_t i = 0; i < K.n; ++i)
    for (std::size_t j = 0; j < K.n; ++j) {
      const Matrix p = L[i] * L[j];
      Q t = 0;
      for (std::size_t k = 0; k < K.n; ++k) t += p(k, k);
      gram(i, j) = t;
    }
  s.radical = canonical_span(K.n, nullspace(gram));
  s.reduced_map = quotient(Subspace::from_vectors(space, s.radical));
  const std::size_t m = s.reduced_map.space.total_dim();
  s.reduced.n = m;
  std::vector<Vec> lifts;
  for (std::size_t i = 0; i < m; ++i) lifts.push_back(s.reduced_map.section.image_of_basis(i));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) s.reduced.prod.push_back(s.reduced_map.projection.apply(K.mul(lifts[i], lifts[j])));
  s.reduced.one = s.reduced_map.projection.apply(K.one);
  s.idempotents = primitive_idempotents(s.reduced);
  return s;
}

// Maximal ideals of K, each as a basis (local coordinates) of a subspace of K.
std::vector<std::vector<Vec>> degree_zero_maximal_ideals(const CommAlg& K, const Splitting& s) {
  std::vector<std::vector<Vec>> out;
  for (const auto& eps : s.idempotents) {
    Vec comp = s.reduced.one;
    axpy(comp, Q(-1), eps);
    std::vector<Vec> gens = s.radical;
    for (std::size_t i = 0; i < s.reduced.n; ++i)
      gens.push_back(s.reduced_map.section.apply(s.reduced.mul(comp, unit_vec(s.reduced.n, i))));
    out.push_back(canonical_span(K.n, gens));
  }
  return out;
}

// The ideal of A lying over the maximal ideal p of A_e: M_g = {b in A_g : A_{-g} b in p}.
Ideal ideal_over(const AlgebraPtr& A, const std::vector<Vec>& p) {
  const auto& C = A->carrier();
  const auto& G = C.group();
  const std::size_t d0 = C.dim(0);
  const Quotient modp = quotient(Subspace::from_vectors(GradedSpace(Category::plain(), {d0}), p));
  std::vector<Vec> gens;
  for (Element g = 0; g < G.size(); ++g) {
    const std::size_t dg = C.dim(g);
    if (dg == 0) continue;
    const Element h = G.negate(g);
    std::vector<Vec> rows;
    for (std::size_t c = 0; c < C.dim(h); ++c) {
      const Vec cv = unit_vec(A->dim(), C.index(h, c));
      std::vector<Vec> cols;
      for (std::size_t b = 0; b < dg; ++b)
        cols.push_back(modp.projection.apply(A->degree_zero_part(A->multiply(cv, unit_vec(A->dim(), C.index(g, b))))));
      const Matrix block = Matrix::from_columns(modp.space.total_dim(), cols);
      for (std::size_t r = 0; r < block.rows(); ++r) rows.push_back(block.row(r));
    }
    std::vector<Vec> kern;
    if (rows.empty()) {
      for (std::size_t b = 0; b < dg; ++b) kern.push_back(unit_vec(dg, b));
    } else {
      kern = nullspace(Matrix::from_rows(dg, rows));
    }
    for (const auto& k : kern) gens.push_back(C.embed(g, k));
  }
  return Ideal::make(A, Subspace::from_vectors(C, gens));
}

}  // namespace

std::vector<Ideal> maximal_ideals(const AlgebraPtr& A) {
  if (A->dim() == 0 || is_zero(A->unit())) return {};
  const CommAlg K = degree_zero_algebra(*A);
  const Splitting s = split(K);
  std::vector<Ideal> out;
  for (const auto& p : degree_zero_maximal_ideals(K, s)) out.push_back(ideal_over(A, p));
  std::sort(out.begin(), out.end(), [](const Ideal& a, const Ideal& b) { return a.subspace.lex_less(b.subspace); });
  return out;
}

Ideal maximal_ideal_above(const AlgebraPtr& A, const Ideal& I) {
  if (I.is_whole()) throw InputError("maximal_ideal_above: the ideal is not proper");
  const QuotientAlgebra q = quotient_algebra(I);
  std::vector<Ideal> lifted;
  for (const auto& M : maximal_ideals(q.algebra)) {
    std::vector<Vec> gens = I.subspace.global_basis();
    for (const auto& v : M.subspace.global_basis()) gens.push_back(q.section.apply(v));
    lifted.push_back(Ideal::make(A, Subspace::from_vectors(A->carrier(), gens)));
  }
  if (lifted.empty()) throw std::logic_error("maximal_ideal_above: no maximal ideal found");
  return *std::min_element(lifted.begin(), lifted.end(),
                           [](const Ideal& a, const Ideal& b) { return a.subspace.lex_less(b.subspace); });
}

bool is_field_object(const AlgebraPtr& A) {
  if (A->dim() == 0) throw InputError("the zero algebra is not a field object");
  const auto M = maximal_ideals(A);
  return M.size() == 1 && M.front().is_zero();
}

namespace {

Vec flatten(const Matrix& m) {
  Vec v;
  v.reserve(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) v.push_back(m(r, c));
  return v;
}

}  // namespace

std::optional<Vec> OperatorAlgebra::coordinates(const Matrix& op) const {
  std::vector<Vec> flat;
  for (const auto& b : basis) flat.push_back(flatten(b));
  return coordinates_in(flat, flatten(op));
}

std::vector<std::vector<Vec>> OperatorAlgebra::structure_constants() const {
  std::vector<Vec> flat;
  for (const auto& b : basis) flat.push_back(flatten(b));
  const SpanCoordinates coords(flat);
  std::vector<std::vector<Vec>> out(dim());
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j) {
      auto c = coords(flatten(basis[i] * basis[j]));
      if (!c) throw std::logic_error("operator algebra is not closed under composition");
      out[i].push_back(std::move(*c));
    }
  return out;
}

}  // namespace relproj
