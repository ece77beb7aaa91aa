#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "relproj/proj.hpp"

namespace relproj::testing {

inline Q random_rational(std::mt19937_64& rng, int range = 5, int max_den = 4) {
  std::uniform_int_distribution<int> num(-range, range), den(1, max_den);
  Q q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

inline Vec random_vec(std::mt19937_64& rng, std::size_t n, int range = 5) {
  Vec v(n);
  for (auto& x : v) x = random_rational(rng, range);
  return v;
}

/// Random element supported on the degree-e component.
inline Vec random_degree_zero(std::mt19937_64& rng, const AlgebraPtr& A) {
  Vec v(A->dim(), Q(0));
  for (auto i : A->degree_zero_indices()) v[i] = random_rational(rng);
  return v;
}

/// A degree-e element whose every coordinate is nonzero (so it is invertible in a product of fields).
inline Vec random_unit_like(std::mt19937_64& rng, const AlgebraPtr& A) {
  Vec v(A->dim(), Q(0));
  std::uniform_int_distribution<int> num(1, 5), den(1, 3), sign(0, 1);
  for (auto i : A->degree_zero_indices()) {
    v[i] = Q(sign(rng) ? num(rng) : -num(rng), den(rng));
    v[i].canonicalize();
  }
  return v;
}

inline std::vector<Vec> random_coords(std::mt19937_64& rng, const AlgebraPtr& A, std::size_t n) {
  std::vector<Vec> out;
  for (std::size_t j = 0; j < n; ++j) out.push_back(random_degree_zero(rng, A));
  return out;
}

inline ProjPoint random_point(std::mt19937_64& rng, const AlgebraPtr& A, std::size_t n) {
  std::uniform_int_distribution<std::size_t> chart(0, n);
  const std::size_t i = chart(rng);
  return point_from_chart(A, n, i, random_coords(rng, A, n));
}

inline Q determinant_leibniz(const Matrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  Q total(0);
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Q term(inversions % 2 ? -1 : 1);
    for (std::size_t i = 0; i < n; ++i) term *= m(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// The super line concentrated in odd degree over the ground field.
inline ModulePtr odd_line() {
  const AlgebraPtr k = ground_field(Category::super_vector_spaces());
  GradedSpace X(Category::super_vector_spaces(), {0, 1});
  return std::make_shared<const ModuleInC>(k, X, std::vector<Vec>{Vec{Q(1)}}, "odd line");
}

/// The unit map Q -> A.
inline AlgebraMap unit_map(const AlgebraPtr& A) {
  const AlgebraPtr k = ground_field(A->category());
  return AlgebraMap::make(k, A, GradedMap::from_images(k->carrier(), A->carrier(), {A->unit()}));
}

/// The diagonal A -> A x ... x A.
inline AlgebraMap diagonal(const AlgebraPtr& A, std::size_t copies) {
  const ProductAlgebra P = product_algebra(std::vector<AlgebraPtr>(copies, A));
  GradedMap d = GradedMap::zero(A->carrier(), P.algebra->carrier());
  for (const auto& inj : P.sum.injections) d = d + inj;
  return AlgebraMap::make(A, P.algebra, d);
}

/// a -> (m(a, c_0), ..., m(a, c_k)) from A into A^{k+1}.
inline ModuleMap components_map(const AlgebraPtr& A, const ModuleSum& free, const std::vector<Vec>& cs) {
  const ModulePtr R = regular_module(A);
  std::vector<Vec> images;
  for (std::size_t b = 0; b < A->dim(); ++b) {
    Vec v(free.module->dim(), Q(0));
    for (std::size_t j = 0; j < cs.size(); ++j) axpy(v, Q(1), free.injections[j].apply(A->multiply(unit_vec(A->dim(), b), cs[j])));
    images.push_back(std::move(v));
  }
  return ModuleMap::make(R, free.module, GradedMap::from_images(R->carrier(), free.module->carrier(), images));
}

/// The square-zero element of Q[eps]/(eps^2).
inline Vec epsilon(const AlgebraPtr& D) {
  const auto ms = maximal_ideals(D);
  return ms.at(0).subspace.global_basis().at(0);
}

/// An O-module with random invertible degree-e transition data.
inline ModulePtr random_o_module(std::mt19937_64& rng, const AlgebraPtr& O, std::size_t d) {
  std::vector<Matrix> isos;
  while (isos.size() + 1 < O->carrier().group().size()) {
    Matrix m(d, d);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) m(r, c) = random_rational(rng, 3);
    if (is_invertible(m)) isos.push_back(m);
  }
  return o_module_from_degree_zero(O, d, isos);
}

/// Brute-force retraction search: solves for every entry of a degree-preserving r : T -> S with
/// r(rho(a_i, y_j)) = rho(a_i, r(y_j)) and r x = id as one dense system.
inline std::optional<Matrix> brute_force_retraction(const ModuleMap& x) {
  const ModulePtr& S = x.source;
  const ModulePtr& T = x.target;
  const std::size_t ns = S->dim(), nt = T->dim(), na = S->algebra()->dim();
  const std::size_t unknowns = ns * nt;
  auto var = [&](std::size_t s, std::size_t t) { return s * nt + t; };
  std::vector<Vec> rows;
  Vec rhs;
  for (std::size_t s = 0; s < ns; ++s)
    for (std::size_t t = 0; t < nt; ++t)
      if (S->degree_of(s) != T->degree_of(t)) {
        Vec row(unknowns, Q(0));
        row[var(s, t)] = 1;
        rows.push_back(std::move(row));
        rhs.push_back(0);
      }
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nt; ++j) {
      const Vec& y = T->act(i, j);
      for (std::size_t s = 0; s < ns; ++s) {
        Vec row(unknowns, Q(0));
        for (std::size_t t = 0; t < nt; ++t)
          if (y[t] != 0) row[var(s, t)] += y[t];
        for (std::size_t s2 = 0; s2 < ns; ++s2) {
          const Q& c = S->act(i, s2)[s];
          if (c != 0) row[var(s2, j)] -= c;
        }
        if (!is_zero(row)) {
          rows.push_back(std::move(row));
          rhs.push_back(0);
        }
      }
    }
  for (std::size_t l = 0; l < ns; ++l) {
    const Vec xl = x.map.image_of_basis(l);
    for (std::size_t s = 0; s < ns; ++s) {
      Vec row(unknowns, Q(0));
      for (std::size_t t = 0; t < nt; ++t)
        if (xl[t] != 0) row[var(s, t)] = xl[t];
      rows.push_back(std::move(row));
      rhs.push_back(s == l ? 1 : 0);
    }
  }
  auto sol = solve(Matrix::from_rows(unknowns, rows), rhs);
  if (!sol) return std::nullopt;
  Matrix r(ns, nt);
  for (std::size_t s = 0; s < ns; ++s)
    for (std::size_t t = 0; t < nt; ++t) r(s, t) = (*sol)[var(s, t)];
  return r;
}

struct RetractionCase {
  std::string label;
  ModuleMap mono;
};

/// Monomorphisms with and without retractions, including eps A inside Q[eps]/(eps^2).
inline std::vector<RetractionCase> retraction_corpus(std::uint64_t seed, std::size_t octonion_cases = 2) {
  std::mt19937_64 rng(seed);
  std::vector<RetractionCase> out;
  for (const AlgebraPtr& A : {product_of_fields(2), product_of_fields(3), dual_numbers()}) {
    for (int t = 0; t < 4; ++t) {
      const std::size_t k = 1 + t % 3;
      const ModuleSum F = free_rank(A, k);
      auto cs = random_coords(rng, A, k);
      const ModuleMap x = components_map(A, F, cs);
      if (x.map.is_mono()) out.push_back({A->name + " components", x});
    }
  }
  const AlgebraPtr D = dual_numbers();
  const ModulePtr R = regular_module(D);
  const Submodule eps = submodule(R, Subspace::from_vectors(D->carrier(), {epsilon(D)}));
  out.push_back({"eps A in Q[eps]", eps.inclusion});
  const AlgebraPtr Q2 = product_of_fields(2);
  const Submodule half = submodule(regular_module(Q2), Subspace::from_vectors(Q2->carrier(), {Vec{Q(1), Q(0)}}));
  out.push_back({"e1 A in Q^2", half.inclusion});
  const AlgebraPtr O = octonions();
  for (std::size_t t = 0; t < octonion_cases; ++t) {
    const ModuleSum F = free_rank(O, 2);
    out.push_back({"O components", components_map(O, F, random_coords(rng, O, 2))});
  }
  return out;
}

struct ZetaCase {
  std::string label;
  AlgebraMap u;
  ModulePtr M;
  ModulePtr N;
};

/// Faithfully flat base changes with finitely presented modules on both sides.
inline std::vector<ZetaCase> zeta_corpus(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<ZetaCase> out;
  auto all_pairs = [&](const std::string& label, const AlgebraMap& u, const std::vector<ModulePtr>& ms) {
    for (const auto& M : ms)
      for (const auto& N : ms) out.push_back({label + " (" + M->name + ", " + N->name + ")", u, M, N});
  };
  const AlgebraPtr Q2 = product_of_fields(2);
  const ModulePtr R2 = regular_module(Q2);
  const ModulePtr half = quotient_module(R2, Subspace::from_vectors(Q2->carrier(), {Vec{Q(1), Q(0)}})).module;
  all_pairs("id Q^2", AlgebraMap::identity(Q2), {R2, half, free_rank(Q2, 2).module});

  const AlgebraPtr k = ground_field(Category::plain());
  std::vector<ModulePtr> spaces;
  for (std::size_t d : {1, 2}) spaces.push_back(free_module(k, GradedSpace(Category::plain(), {d})).module);
  all_pairs("Q -> Q^2", unit_map(Q2), spaces);
  all_pairs("Q -> Q[eps]", unit_map(dual_numbers()), spaces);

  const AlgebraPtr D = dual_numbers();
  const ModulePtr RD = regular_module(D);
  const ModulePtr residue = quotient_module(RD, Subspace::from_vectors(D->carrier(), {epsilon(D)})).module;
  all_pairs("id Q[eps]", AlgebraMap::identity(D), {RD, residue});
  all_pairs("Q^2 diagonal", diagonal(Q2, 2), {R2, half});

  const AlgebraPtr O = octonions();
  all_pairs("id O", AlgebraMap::identity(O), {regular_module(O), random_o_module(rng, O, 1)});
  out.push_back({"O diagonal", diagonal(O, 2), regular_module(O), regular_module(O)});
  return out;
}

}  // namespace relproj::testing
