#include <gtest/gtest.h>

#include "support.hpp"

using namespace relproj;
namespace rt = relproj::testing;

namespace {

Localization loc(const AlgebraPtr& A, const Vec& f) { return localize(A, ElementEndo::multiplication(A, f)); }

Covering q3_cover() {
  const auto Q3 = product_of_fields(3);
  return Covering::make(Q3, {loc(Q3, {Q(1), Q(1), Q(0)}).to_local, loc(Q3, {Q(0), Q(1), Q(1)}).to_local});
}

// theta_ij = lambda * (canonical identification of A_ij (x) A_i with A_ij (x) A_j).
void set_scalar_transition(DescentDatum& d, std::size_t i, std::size_t j, const Q& lambda) {
  const auto& [a, b] = d.restricted.at({i, j});
  const ModuleMap ia = base_change_regular_iso(a), ib = base_change_regular_iso(b);
  d.transitions.insert_or_assign(std::make_pair(i, j), ib.inverse()->after(ia.scaled(lambda)));
}

DescentDatum trivial_datum(const Covering& cov) {
  std::vector<ModulePtr> locals;
  for (const auto& u : cov.legs) locals.push_back(regular_module(u.target));
  return make_datum(cov, locals);
}

// A seeded module over Q^k: a sum of coordinate quotients of the regular module, in a scrambled basis.
ModulePtr random_module(std::mt19937_64& rng, const AlgebraPtr& A) {
  std::vector<ModulePtr> parts;
  const std::size_t count = 1 + rng() % 2;
  for (std::size_t p = 0; p < count; ++p) {
    std::vector<Vec> kill;
    for (std::size_t c = 0; c < A->dim(); ++c)
      if (rng() % 3 == 0) kill.push_back(unit_vec(A->dim(), c));
    parts.push_back(quotient_module(regular_module(A), Subspace::from_vectors(A->carrier(), kill)).module);
  }
  const ModulePtr M = direct_sum(A, parts).module;
  Matrix P(M->dim(), M->dim());
  do
    for (std::size_t r = 0; r < P.rows(); ++r)
      for (std::size_t c = 0; c < P.cols(); ++c) P(r, c) = rt::random_rational(rng, 2);
  while (!is_invertible(P));
  return transport(M, GradedMap::from_dense(M->carrier(), M->carrier(), P));
}

}  // namespace

TEST(Covering, TwoChartCoverOfQ3IsCertified) {
  const Covering cov = q3_cover();
  const CoveringReport r = verify_covering(cov);
  EXPECT_EQ(r.flat, Verdict::Certified);
  EXPECT_EQ(r.jointly_conservative, Verdict::Certified);
  EXPECT_TRUE(r.is_covering());
  ASSERT_TRUE(r.partition);
  EXPECT_EQ(cov.overlap(0, 1).algebra->dim(), 1u);
}

TEST(Covering, MissingCoordinateIsRefuted) {
  const auto Q3 = product_of_fields(3);
  const Covering cov = Covering::make(Q3, {loc(Q3, {Q(1), Q(1), Q(0)}).to_local});
  const CoveringReport r = verify_covering(cov);
  EXPECT_EQ(r.jointly_conservative, Verdict::Refuted);
  EXPECT_FALSE(r.is_covering());
}

TEST(Covering, ProductProjectionsCoverTheProduct) {
  const ProductAlgebra P = product_algebra({octonions(), octonions()});
  const Covering cov = Covering::make(P.algebra, P.projections);
  const CoveringReport r = verify_covering(cov);
  EXPECT_TRUE(r.is_covering());
  EXPECT_EQ(r.flat, Verdict::Certified);
  EXPECT_EQ(cov.overlap(0, 1).algebra->dim(), 0u);
}

TEST(Covering, NonStructuralLegsAreSampled) {
  const CoveringReport free_ext = verify_covering(Covering::make(ground_field(Category::plain()), {rt::unit_map(product_of_fields(2))}), 10, 3);
  EXPECT_EQ(free_ext.flat, Verdict::NotRefuted);
  EXPECT_TRUE(free_ext.is_covering());
  const auto D = dual_numbers();
  const Ideal m = maximal_ideals(D).at(0);
  const CoveringReport residue = verify_covering(Covering::make(D, {quotient_algebra(m).projection}), 20, 3);
  EXPECT_EQ(residue.flat, Verdict::Refuted);
}

TEST(Covering, MembershipInUI) {
  const auto Q3 = product_of_fields(3);
  const Localization l = loc(Q3, {Q(1), Q(0), Q(0)});
  EXPECT_TRUE(membership_U_I(l.to_local, generated_ideal(Q3, std::vector<Vec>{{Q(1), Q(1), Q(0)}})));
  EXPECT_FALSE(membership_U_I(l.to_local, generated_ideal(Q3, std::vector<Vec>{{Q(0), Q(1), Q(0)}})));
}

TEST(Descent, AlgebraTensorOfLocalizations) {
  const auto Q3 = product_of_fields(3);
  const AlgebraTensor T = algebra_tensor_over(loc(Q3, {Q(1), Q(1), Q(0)}).to_local, loc(Q3, {Q(0), Q(1), Q(1)}).to_local);
  EXPECT_EQ(T.algebra->dim(), 1u);
  EXPECT_TRUE(check_algebra_axioms(*T.algebra).passed());
  const AlgebraTensor TO = algebra_tensor_over(AlgebraMap::identity(octonions()), AlgebraMap::identity(octonions()));
  EXPECT_EQ(TO.algebra->dim(), 8u);
  EXPECT_TRUE(check_algebra_axioms(*TO.algebra).passed());
}

TEST(Descent, GlueScalarTransitionsOnQ3) {
  const Covering cov = q3_cover();
  for (const Q& lambda : {Q(1), Q(2), Q(-3)}) {
    DescentDatum d = trivial_datum(cov);
    set_scalar_transition(d, 0, 1, lambda);
    EXPECT_TRUE(check_cocycle(d).passed());
    const GlueResult g = glue(d);
    EXPECT_TRUE(g.report.passed()) << g.report.summary();
    EXPECT_TRUE(g.comparisons_iso);
    EXPECT_EQ(g.module->dim(), 3u);
    EXPECT_TRUE(check_module_axioms(*g.module).passed());
    EXPECT_TRUE(is_line_object(g.module).line);
    EXPECT_TRUE(find_retraction(g.inclusion).has_value());
  }
}

TEST(Descent, CocycleViolationIsRejected) {
  const auto Q3 = product_of_fields(3);
  const Covering cov = Covering::make(Q3, {loc(Q3, {Q(1), Q(1), Q(0)}).to_local, loc(Q3, {Q(0), Q(1), Q(1)}).to_local,
                                           loc(Q3, Q3->unit()).to_local});
  DescentDatum good = trivial_datum(cov);
  set_scalar_transition(good, 0, 1, Q(2));
  set_scalar_transition(good, 1, 2, Q(3));
  set_scalar_transition(good, 0, 2, Q(6));
  EXPECT_TRUE(check_cocycle(good).passed());
  EXPECT_TRUE(glue(good).comparisons_iso);
  DescentDatum bad = good;
  set_scalar_transition(bad, 0, 2, Q(5));
  const CheckReport c = check_cocycle(bad);
  EXPECT_FALSE(c.passed());
  EXPECT_THROW(glue(bad), InputError);
}

TEST(Descent, RestrictThenGlueRoundTrip) {
  std::mt19937_64 rng(77);
  const Covering cov = q3_cover();
  for (int trial = 0; trial < 12; ++trial) {
    const ModulePtr M = random_module(rng, cov.base);
    const DescentDatum d = restriction_datum(cov, M);
    EXPECT_TRUE(check_cocycle(d).passed());
    const GlueResult g = glue(d);
    EXPECT_TRUE(g.comparisons_iso);
    EXPECT_TRUE(find_isomorphism(g.module, M).has_value()) << "trial " << trial;
  }
}

TEST(Descent, RoundTripOverOctonionProduct) {
  std::mt19937_64 rng(5);
  const auto O = octonions();
  const ProductAlgebra P = product_algebra({O, O});
  const Covering cov = Covering::make(P.algebra, P.projections);
  const ModulePtr M = product_line(P, {rt::random_o_module(rng, O, 1), regular_module(O)}).module;
  const GlueResult g = glue(restriction_datum(cov, M));
  EXPECT_TRUE(g.comparisons_iso);
  EXPECT_TRUE(find_isomorphism(g.module, M).has_value());
}
