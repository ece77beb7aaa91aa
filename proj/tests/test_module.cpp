#include <gtest/gtest.h>

#include "support.hpp"

using namespace relproj;
namespace rt = relproj::testing;

TEST(Module, AxiomsHoldForConstructions) {
  std::mt19937_64 rng(4);
  const auto O = octonions();
  for (const ModulePtr& M : {regular_module(O), free_rank(O, 2).module, rt::random_o_module(rng, O, 2),
                             free_module(O, GradedSpace(Category::octonionic(), {0, 1, 0, 0, 0, 0, 1, 0})).module,
                             dual_module(regular_module(O)).module, regular_module(dual_numbers()), rt::odd_line()}) {
    const auto r = check_module_axioms(*M);
    EXPECT_TRUE(r.passed()) << M->name << ": " << r.summary();
  }
}

TEST(Module, BrokenActionIsRejected) {
  const auto D = dual_numbers();
  auto action = regular_module(D)->action();
  for (auto& v : action)
    for (auto& x : v) x *= 2;
  const ModuleInC bad(D, D->carrier(), action);
  EXPECT_FALSE(check_module_axioms(bad).passed());
}

TEST(Module, FreeModuleAdjunction) {
  std::mt19937_64 rng(8);
  const auto O = octonions();
  const GradedSpace X(Category::octonionic(), {1, 0, 0, 1, 0, 0, 0, 0});
  const FreeModule F = free_module(O, X);
  const ModulePtr M = rt::random_o_module(rng, O, 1);
  std::vector<Vec> images;
  for (std::size_t x = 0; x < X.total_dim(); ++x) {
    Vec v(M->dim(), Q(0));
    v[M->carrier().index(X.degree_of(x), 0)] = rt::random_rational(rng);
    images.push_back(v);
  }
  const GradedMap g = GradedMap::from_images(X, M->carrier(), images);
  const ModuleMap ext = F.extend(M, g);
  EXPECT_TRUE(F.restrict(ext) == g);
}

TEST(Module, UnitIsomorphisms) {
  for (const auto& A : {octonions(), dual_numbers(), product_of_fields(2)}) {
    const ModulePtr R = regular_module(A);
    const TensorOver T = tensor_over(R, R);
    EXPECT_EQ(T.module->dim(), A->dim());
    EXPECT_TRUE(left_unit_iso(T).is_iso());
    const HomModule H = inner_hom(R, R);
    EXPECT_TRUE(hom_from_unit_iso(H).is_iso());
    const BaseChange bc = base_change(AlgebraMap::identity(A), R);
    EXPECT_TRUE(base_change_regular_iso(bc).is_iso());
  }
}

TEST(Module, TensorOverDualNumbersResidue) {
  // Q (x)_{Q[eps]} Q is one-dimensional; Q[eps] (x) Q is the residue field.
  const auto D = dual_numbers();
  const ModulePtr R = regular_module(D);
  const ModulePtr k = quotient_module(R, Subspace::from_vectors(D->carrier(), {rt::epsilon(D)})).module;
  EXPECT_EQ(tensor_over(k, k).module->dim(), 1u);
  EXPECT_EQ(tensor_over(R, k).module->dim(), 1u);
  EXPECT_EQ(hom_basis(k, R).size(), 1u);
  EXPECT_EQ(hom_basis(R, k).size(), 1u);
}

TEST(Module, HomBasisElementsAreLinear) {
  std::mt19937_64 rng(6);
  const auto O = octonions();
  const ModulePtr M = rt::random_o_module(rng, O, 2), N = rt::random_o_module(rng, O, 1);
  const auto basis = hom_basis(M, N);
  EXPECT_EQ(basis.size(), 2u);  // Hom_O(M, N) = Hom_Q(M_e, N_e)
  for (const auto& f : basis) EXPECT_NO_THROW(ModuleMap::make(M, N, f.map));
}

TEST(Module, FindIsomorphismAfterTransport) {
  std::mt19937_64 rng(19);
  const auto O = octonions();
  const ModulePtr M = rt::random_o_module(rng, O, 2);
  std::vector<Matrix> blocks;
  for (Element g = 0; g < 8; ++g) {
    Matrix m(2, 2);
    do
      for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) m(r, c) = rt::random_rational(rng, 3);
    while (!is_invertible(m));
    blocks.push_back(m);
  }
  const ModulePtr T = transport(M, GradedMap(M->carrier(), M->carrier(), blocks));
  EXPECT_TRUE(check_module_axioms(*T).passed());
  const auto iso = find_isomorphism(T, M);
  ASSERT_TRUE(iso);
  EXPECT_TRUE(iso->is_iso());
  EXPECT_FALSE(find_isomorphism(M, regular_module(O)));
}

TEST(Module, KernelAndImageOfMaps) {
  const auto Q2 = product_of_fields(2);
  const ModuleSum F = free_rank(Q2, 2);
  const ModuleMap x = rt::components_map(Q2, F, {Vec{Q(1), Q(0)}, Vec{Q(2), Q(0)}});
  const Submodule K = kernel_module(x);
  EXPECT_EQ(K.module->dim(), 1u);
  const ModuleImage I = image_module(x);
  EXPECT_TRUE(I.mono.after(I.epi) == x);
  EXPECT_TRUE(x.after(K.inclusion).map.is_zero());
}

TEST(Module, RetractionAgreesWithBruteForce) {
  std::size_t with = 0, without = 0;
  for (const auto& c : rt::retraction_corpus(31, 1)) {
    const auto r = find_retraction(c.mono);
    const auto oracle = rt::brute_force_retraction(c.mono);
    EXPECT_EQ(r.has_value(), oracle.has_value()) << c.label;
    if (r) {
      EXPECT_TRUE(r->after(c.mono).map.dense().is_identity()) << c.label;
      ++with;
    } else {
      ++without;
    }
  }
  EXPECT_GT(with, 0u);
  EXPECT_GT(without, 0u);
}

TEST(Module, EpsilonIdealHasNoRetraction) {
  const auto D = dual_numbers();
  const Submodule eps = submodule(regular_module(D), Subspace::from_vectors(D->carrier(), {rt::epsilon(D)}));
  EXPECT_FALSE(find_retraction(eps.inclusion));
  EXPECT_FALSE(rt::brute_force_retraction(eps.inclusion));
  const ModuleMap zero = ModuleMap::zero(regular_module(D), regular_module(D));
  EXPECT_THROW(find_retraction(zero), InputError);
}

TEST(Module, SectionOfProjection) {
  const auto Q2 = product_of_fields(2);
  const ModuleSum F = free_rank(Q2, 3);
  const auto s = find_section(F.projections[1]);
  ASSERT_TRUE(s);
  EXPECT_TRUE(F.projections[1].after(*s).map.dense().is_identity());
  const auto D = dual_numbers();
  const auto q = quotient_module(regular_module(D), Subspace::from_vectors(D->carrier(), {rt::epsilon(D)}));
  EXPECT_FALSE(find_section(q.projection));
}

TEST(Module, ZetaIsInvertibleOnFlatCorpus) {
  for (const auto& c : rt::zeta_corpus(12)) {
    const ZetaResult z = zeta_map(c.u, c.M, c.N);
    EXPECT_TRUE(z.well_defined) << c.label << ": " << z.report.summary();
    EXPECT_TRUE(z.invertible) << c.label;
  }
}

TEST(Module, ZetaFailsForNonFlatQuotient) {
  // Q[eps] -> Q is not flat; hom(Q, Q[eps]) = eps Q base-changes to Q but hom_Q(Q, 0) = 0.
  const auto D = dual_numbers();
  const Ideal m = maximal_ideals(D).at(0);
  const QuotientAlgebra q = quotient_algebra(m);
  const ModulePtr R = regular_module(D);
  const ModulePtr k = quotient_module(R, m.subspace).module;
  const ZetaResult z = zeta_map(q.projection, k, R);
  EXPECT_FALSE(z.invertible && z.well_defined);
}

TEST(Module, ConservativityOverOctonions) {
  std::mt19937_64 rng(2);
  const auto O = octonions();
  const ModulePtr M = rt::random_o_module(rng, O, 2);
  for (const auto& f : hom_basis(M, M)) {
    const auto rep = v0_conservative_check(f);
    EXPECT_TRUE(rep.report.passed()) << rep.report.summary();
    EXPECT_EQ(rep.v0_invertible, rep.f_invertible);
  }
  const auto id = v0_conservative_check(ModuleMap::identity(M));
  EXPECT_TRUE(id.v0_invertible && id.f_invertible);
}

TEST(Module, RegularModuleIsProjectiveGenerator) {
  const auto Q2 = product_of_fields(2);
  const ModuleSum F = free_rank(Q2, 2);
  const auto rep = generator_check(Q2, {F.projections[0]}, {{F.projections[0], F.projections[1]}});
  EXPECT_TRUE(rep.passed()) << rep.summary();
}

TEST(Module, EnvelopingAlgebraOfRegularOctonions) {
  // Left multiplications generate all of End(O) as an associative algebra.
  const auto env = enveloping_action_algebra(regular_module(octonions()));
  EXPECT_EQ(env.dim(), 64u);
}
