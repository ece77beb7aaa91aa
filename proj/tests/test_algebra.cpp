#include <gtest/gtest.h>

#include "support.hpp"

using namespace relproj;
using relproj::testing::random_degree_zero;
using relproj::testing::random_rational;
using relproj::testing::random_unit_like;

namespace {

// Dimension of the smallest subspace containing v and closed under left multiplication by basis elements.
std::size_t closure_dim(const AlgebraInC& A, const Vec& v) {
  std::vector<Vec> basis;
  std::vector<Vec> todo{v};
  auto independent = [&](const Vec& w) { return rank(Matrix::from_columns(A.dim(), [&] {
                                                  auto cols = basis;
                                                  cols.push_back(w);
                                                  return cols;
                                                }())) > basis.size(); };
  while (!todo.empty()) {
    Vec w = todo.back();
    todo.pop_back();
    if (is_zero(w) || !independent(w)) continue;
    basis.push_back(w);
    for (std::size_t i = 0; i < A.dim(); ++i) todo.push_back(A.multiply(unit_vec(A.dim(), i), w));
  }
  return basis.size();
}

AlgebraMap coordinate_projection(const AlgebraPtr& A, std::size_t k) {
  const AlgebraPtr Qf = ground_field(A->category());
  Matrix row(1, A->dim());
  row(0, k) = Q(1);
  return AlgebraMap::make(A, Qf, GradedMap::from_dense(A->carrier(), Qf->carrier(), row));
}

}  // namespace

TEST(Algebra, OctonionAxiomsExhaustive) {
  const auto O = octonions();
  EXPECT_EQ(O->dim(), 8u);
  const auto r = check_algebra_axioms(*O);
  EXPECT_TRUE(r.passed()) << r.summary();
  EXPECT_GE(r.checked, 512u + 64u);
}

TEST(Algebra, OctonionUnderlyingIdentities) {
  const auto rep = underlying_identities(*octonions(), 300, 42);
  EXPECT_TRUE(rep.identities_pass());
  EXPECT_TRUE(rep.non_associative_witness);
  EXPECT_EQ(rep.trials, 300u);
}

TEST(Algebra, OctonionMultiplicationIsDivision) {
  // Left multiplication by a nonzero octonion is invertible: det = N(a)^4.
  std::mt19937_64 rng(9);
  const auto O = octonions();
  for (int trial = 0; trial < 20; ++trial) {
    const Vec a = relproj::testing::random_vec(rng, 8, 3);
    if (is_zero(a)) continue;
    Q norm(0);
    for (const auto& x : a) norm += x * x;
    const Q d = determinant(O->left_multiplication(a));
    EXPECT_EQ(d, norm * norm * norm * norm);
  }
}

TEST(Algebra, PerturbedCubicTermBreaksAlternativity) {
  const auto G = GradingGroup::z2_cubed();
  std::vector<Q> table;
  for (Element x = 0; x < 8; ++x)
    for (Element y = 0; y < 8; ++y) {
      const auto a = G.residues(x), b = G.residues(y);
      const int f = eval_f(a, b) + a[0] * a[1] * b[2] + a[0] * b[1] * b[2];
      table.push_back(f % 2 ? Q(-1) : Q(1));
    }
  const auto A = twisted_group_algebra(Category::make(Cochain2(G, table)));
  const auto rep = underlying_identities(*A, 200, 3);
  EXPECT_FALSE(rep.identities_pass());
}

TEST(Algebra, SmallAlgebrasSatisfyAxioms) {
  for (const auto& A : {product_of_fields(3), dual_numbers(), ground_field(Category::octonionic()),
                        ground_field(Category::super_vector_spaces())}) {
    EXPECT_TRUE(check_algebra_axioms(*A).passed()) << A->name;
  }
}

TEST(Algebra, FieldObjectAgreesWithClosureOracle) {
  std::mt19937_64 rng(13);
  struct Case {
    AlgebraPtr algebra;
    bool field;
  };
  const std::vector<Case> cases{{octonions(), true},
                                {ground_field(Category::plain()), true},
                                {product_of_fields(2), false},
                                {product_of_fields(3), false},
                                {dual_numbers(), false}};
  for (const auto& c : cases) {
    EXPECT_EQ(is_field_object(c.algebra), c.field) << c.algebra->name;
    // Oracle: in a field object every nonzero homogeneous element generates everything.
    bool all_generate = true;
    for (std::size_t i = 0; i < c.algebra->dim(); ++i)
      all_generate &= closure_dim(*c.algebra, unit_vec(c.algebra->dim(), i)) == c.algebra->dim();
    for (int t = 0; t < 5; ++t) {
      const Vec v = random_degree_zero(rng, c.algebra);
      if (!is_zero(v)) all_generate &= closure_dim(*c.algebra, v) == c.algebra->dim();
    }
    EXPECT_EQ(all_generate, c.field) << c.algebra->name;
  }
  const auto zero = std::make_shared<const AlgebraInC>(GradedSpace::zero(Category::plain()), std::vector<Vec>{}, Vec{});
  EXPECT_THROW(is_field_object(zero), InputError);
}

TEST(Algebra, MaximalIdeals) {
  for (std::size_t k = 1; k <= 4; ++k) {
    const auto ms = maximal_ideals(product_of_fields(k));
    ASSERT_EQ(ms.size(), k);
    for (const auto& m : ms) EXPECT_EQ(m.subspace.total_dim(), k - 1);
  }
  const auto D = dual_numbers();
  const auto ms = maximal_ideals(D);
  ASSERT_EQ(ms.size(), 1u);
  EXPECT_EQ(ms[0].subspace.total_dim(), 1u);
  const auto O = octonions();
  const auto mo = maximal_ideals(O);
  ASSERT_EQ(mo.size(), 1u);
  EXPECT_TRUE(mo[0].is_zero());
  const auto Q3 = product_of_fields(3);
  const Ideal I = generated_ideal(Q3, std::vector<Vec>{{Q(1), Q(0), Q(0)}});
  const Ideal M = maximal_ideal_above(Q3, I);
  EXPECT_TRUE(M.subspace.contains(I.subspace));
  EXPECT_EQ(M.subspace.total_dim(), 2u);
}

TEST(Algebra, PartitionOfUnityOnProductsOfFields) {
  std::mt19937_64 rng(101);
  std::size_t generating = 0, total = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 5;
    const auto A = product_of_fields(n);
    const std::size_t k = 1 + rng() % 3;
    std::vector<ElementEndo> family;
    std::vector<bool> covered(n, false);
    for (std::size_t j = 0; j < k; ++j) {
      Vec v(n, Q(0));
      for (std::size_t c = 0; c < n; ++c)
        if (rng() % 2) v[c] = random_rational(rng);
      for (std::size_t c = 0; c < n; ++c) covered[c] = covered[c] || v[c] != 0;
      family.push_back(ElementEndo::multiplication(A, v));
    }
    const bool oracle = std::all_of(covered.begin(), covered.end(), [](bool b) { return b; });
    const auto s = partition_of_unity(A, family);
    ++total;
    EXPECT_EQ(s.has_value(), oracle);
    EXPECT_EQ(generated_ideal(A, family).is_whole(), oracle);
    if (!s) continue;
    ++generating;
    Vec sum(n, Q(0));
    for (std::size_t j = 0; j < k; ++j) axpy(sum, Q(1), A->multiply((*s)[j].element, family[j].element));
    EXPECT_EQ(sum, A->unit());
  }
  EXPECT_GT(generating, 0u);
  EXPECT_LT(generating, total);
}

TEST(Algebra, PartitionOfUnityOverDualNumbers) {
  const auto D = dual_numbers();
  // An element generates iff its constant term is nonzero.
  const auto idx = D->degree_zero_indices();
  Vec eps(D->dim(), Q(0));
  ASSERT_EQ(idx.size(), 2u);
  eps[idx[1]] = Q(1);
  if (!is_zero(D->multiply(eps, eps))) std::swap(eps[idx[0]], eps[idx[1]]);
  EXPECT_TRUE(is_zero(D->multiply(eps, eps)));
  EXPECT_FALSE(partition_of_unity(D, {ElementEndo::multiplication(D, eps)}));
  Vec one_plus = D->unit();
  axpy(one_plus, Q(3), eps);
  EXPECT_TRUE(partition_of_unity(D, {ElementEndo::multiplication(D, one_plus)}));
  EXPECT_TRUE(partition_of_unity(D, {}) == std::nullopt);
}

TEST(Algebra, LocalizationProperties) {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const auto A = product_of_fields(n);
    Vec f(n, Q(0));
    std::size_t support = 0;
    for (std::size_t c = 0; c < n; ++c)
      if (rng() % 3) {
        f[c] = random_unit_like(rng, product_of_fields(1))[0];
        ++support;
      }
    const Localization L = localize(A, ElementEndo::multiplication(A, f));
    EXPECT_EQ(L.algebra->dim(), support);
    EXPECT_EQ(L.algebra->multiply(L.to_local.apply(f), L.inverse_image), L.algebra->unit());
    EXPECT_TRUE(check_algebra_axioms(*L.algebra).passed());
    for (std::size_t c = 0; c < n; ++c) {
      const auto w = L.factor(coordinate_projection(A, c));
      EXPECT_EQ(w.has_value(), f[c] != 0);
      if (w) EXPECT_TRUE(w->map * L.to_local.map == coordinate_projection(A, c).map);
    }
  }
}

TEST(Algebra, LocalizingAtUnitIsIdentity) {
  for (const auto& A : {product_of_fields(3), dual_numbers(), octonions()}) {
    const Localization L = localize(A, ElementEndo::multiplication(A, A->unit()));
    EXPECT_EQ(L.algebra->dim(), A->dim());
    EXPECT_EQ(L.fitting_index, 0u);
    EXPECT_TRUE(L.to_local.map.dense().is_identity());
  }
}

TEST(Algebra, LocalizingDualNumbersAtEpsilonIsZero) {
  const auto D = dual_numbers();
  for (const auto& m : maximal_ideals(D)) {
    const Vec eps = m.subspace.global_basis().at(0);
    const Localization L = localize(D, ElementEndo::multiplication(D, eps));
    EXPECT_EQ(L.algebra->dim(), 0u);
    EXPECT_EQ(L.fitting_index, 2u);
  }
}

TEST(Algebra, QuotientAlgebraByMaximalIdeal) {
  const auto Q3 = product_of_fields(3);
  for (const auto& m : maximal_ideals(Q3)) {
    const auto q = quotient_algebra(m);
    EXPECT_EQ(q.algebra->dim(), 1u);
    EXPECT_TRUE(is_field_object(q.algebra));
    EXPECT_TRUE(q.projection.map.is_epi());
  }
}

TEST(Algebra, RejectsBadInputs) {
  const auto Q2 = product_of_fields(2);
  EXPECT_THROW(ElementEndo::multiplication(Q2, {Q(1)}), InputError);
  EXPECT_THROW(Ideal::make(Q2, Subspace::from_vectors(Q2->carrier(), {Vec{Q(1), Q(1)}})), InputError);
  const auto O = octonions();
  EXPECT_THROW(ElementEndo::multiplication(O, unit_vec(8, 3)), InputError);
  EXPECT_FALSE(invert_degree_zero(*Q2, {Q(1), Q(0)}));
  EXPECT_EQ(*invert_degree_zero(*Q2, {Q(2), Q(-3)}), (Vec{Q(1, 2), Q(-1, 3)}));
}
