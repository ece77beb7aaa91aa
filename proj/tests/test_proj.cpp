#include <gtest/gtest.h>

#include "support.hpp"

using namespace relproj;
namespace rt = relproj::testing;

namespace {

// Coordinatewise projective transition over Q^k: insert 1 at slot i, divide by slot j, drop slot j.
std::vector<Vec> transition_oracle(std::size_t k, std::size_t n, std::size_t i, std::size_t j, const std::vector<Vec>& coords) {
  std::vector<Vec> full;
  for (std::size_t s = 0, c = 0; s <= n; ++s) full.push_back(s == i ? Vec(k, Q(1)) : coords[c++]);
  std::vector<Vec> out;
  for (std::size_t s = 0; s <= n; ++s) {
    if (s == j) continue;
    Vec v(k);
    for (std::size_t t = 0; t < k; ++t) v[t] = full[s][t] / full[j][t];
    out.push_back(v);
  }
  return out;
}

bool all_nonzero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Q& q) { return q != 0; });
}

// x composed with right multiplication by an invertible degree-e element of A.
ProjPoint rescaled(const ProjPoint& p, const Vec& u) {
  const AlgebraPtr& A = p.algebra;
  const ModulePtr R = regular_module(A);
  std::vector<Vec> images;
  for (std::size_t b = 0; b < A->dim(); ++b) images.push_back(A->multiply(unit_vec(A->dim(), b), u));
  const ModuleMap s = ModuleMap::make(R, R, GradedMap::from_images(R->carrier(), R->carrier(), images));
  const PointCheck c = verify_point(A, p.n, R, p.mono.after(s));
  if (!c.point) throw std::logic_error("rescaled point rejected: " + c.failure);
  return *c.point;
}

}  // namespace

TEST(Proj, ProjectiveLineTransition) {
  const AlgebraPtr k = ground_field(Category::plain());
  const ChartCoords t = transition(k, 1, 0, 1, {Vec{Q(2)}});
  EXPECT_EQ(t.index, 1u);
  ASSERT_EQ(t.coords.size(), 1u);
  EXPECT_EQ(t.coords[0], (Vec{Q(1, 2)}));
  EXPECT_THROW(transition(k, 1, 0, 1, {Vec{Q(0)}}), InputError);
}

TEST(Proj, TransitionMatchesCoordinatewiseOracle) {
  std::mt19937_64 rng(41);
  for (std::size_t k : {1, 2, 3}) {
    const AlgebraPtr A = product_of_fields(k);
    for (int trial = 0; trial < 15; ++trial) {
      const std::size_t n = 1 + trial % 3, i = rng() % (n + 1), j = rng() % (n + 1);
      const auto coords = rt::random_coords(rng, A, n);
      const std::size_t pivot = j < i ? j : j - 1;
      if (i != j && !all_nonzero(coords[pivot])) {
        EXPECT_THROW(transition(A, n, i, j, coords), InputError);
        continue;
      }
      const ChartCoords t = transition(A, n, i, j, coords);
      EXPECT_EQ(t.coords, transition_oracle(k, n, i, j, coords));
      EXPECT_TRUE(t == chart_coordinates(point_from_chart(A, n, i, coords), j));
    }
  }
}

TEST(Proj, TransitionCocycleOnP2) {
  std::mt19937_64 rng(43);
  for (const AlgebraPtr& A : {product_of_fields(1), product_of_fields(2), product_of_fields(3), octonions()}) {
    std::size_t checked = 0;
    for (int trial = 0; trial < 12; ++trial) {
      const auto c = rt::random_coords(rng, A, 2);
      const ProjPoint p = point_from_chart(A, 2, 0, c);
      if (!chart_membership(p, 1) || !chart_membership(p, 2)) continue;
      const ChartCoords t01 = transition(A, 2, 0, 1, c);
      const ChartCoords t12 = transition(A, 2, 1, 2, t01.coords);
      EXPECT_TRUE(transition(A, 2, 0, 2, c) == t12);
      ++checked;
    }
    EXPECT_GT(checked, 0u) << A->name;
  }
}

TEST(Proj, ChartRoundTripAndScalingInvariance) {
  std::mt19937_64 rng(47);
  for (const AlgebraPtr& A : {product_of_fields(1), product_of_fields(2), product_of_fields(3), octonions()}) {
    const int trials = A->dim() == 8 ? 4 : 10;
    for (int t = 0; t < trials; ++t) {
      const std::size_t n = 1 + t % 3;
      const ProjPoint p = rt::random_point(rng, A, n);
      const ProjPoint q = rescaled(p, rt::random_unit_like(rng, A));
      EXPECT_TRUE(points_equal(p, q));
      for (std::size_t i = 0; i <= n; ++i) {
        EXPECT_EQ(chart_membership(p, i), chart_membership(q, i));
        if (!chart_membership(p, i)) continue;
        const ChartCoords c = chart_coordinates(p, i);
        EXPECT_TRUE(c == chart_coordinates(q, i));
        EXPECT_TRUE(points_equal(point_from_chart(A, n, i, c.coords), p));
      }
    }
  }
}

TEST(Proj, DistinctChartPointsDiffer) {
  const AlgebraPtr k = ground_field(Category::plain());
  EXPECT_FALSE(points_equal(point_from_chart(k, 1, 0, {Vec{Q(1)}}), point_from_chart(k, 1, 0, {Vec{Q(2)}})));
  EXPECT_TRUE(points_equal(point_from_chart(k, 1, 0, {Vec{Q(2)}}), point_from_chart(k, 1, 1, {Vec{Q(1, 2)}})));
}

TEST(Proj, PointOutsideEveryChart) {
  // Over Q x Q the point ((1,0) : (0,1)) lies in no standard chart.
  const AlgebraPtr A = product_of_fields(2);
  const ModuleSum F = free_rank(A, 2);
  const PointCheck c = verify_point(A, 1, regular_module(A), rt::components_map(A, F, {Vec{Q(1), Q(0)}, Vec{Q(0), Q(1)}}));
  ASSERT_TRUE(c.point) << c.failure;
  EXPECT_FALSE(chart_membership(*c.point, 0));
  EXPECT_FALSE(chart_membership(*c.point, 1));
  const QuotPoint q = dualize_point_inv(*c.point);
  EXPECT_FALSE(quot_chart_membership(q, 0));
  EXPECT_TRUE(points_equal(dualize_point(q), *c.point));
}

TEST(Proj, RejectsNonPoints) {
  const auto D = dual_numbers();
  const ModuleSum F = free_rank(D, 2);
  const Vec eps = rt::epsilon(D);
  const PointCheck c = verify_point(D, 1, regular_module(D), rt::components_map(D, F, {eps, Vec(D->dim(), Q(0))}));
  EXPECT_FALSE(c.point);
  EXPECT_EQ(c.failure, "not a monomorphism");
  const auto Q2 = product_of_fields(2);
  const ModuleSum F2 = free_rank(Q2, 2);
  const ModulePtr half = quotient_module(regular_module(Q2), Subspace::from_vectors(Q2->carrier(), {Vec{Q(0), Q(1)}})).module;
  std::vector<Vec> images{F2.injections[0].apply(Vec{Q(1), Q(0)})};
  const ModuleMap x = ModuleMap::make(half, F2.module, GradedMap::from_images(half->carrier(), F2.module->carrier(), images));
  const PointCheck h = verify_point(Q2, 1, half, x);
  EXPECT_FALSE(h.point);
  EXPECT_EQ(h.failure, "L is not invertible");
  EXPECT_THROW(verify_point(Q2, 2, half, x), InputError);
}

TEST(Proj, DualityRoundTripsAndMatchesCharts) {
  std::mt19937_64 rng(53);
  for (const AlgebraPtr& A : {product_of_fields(2), product_of_fields(3), octonions()}) {
    const int trials = A->dim() == 8 ? 2 : 6;
    for (int t = 0; t < trials; ++t) {
      const std::size_t n = 1 + t % 2;
      const ProjPoint p = rt::random_point(rng, A, n);
      const QuotPoint q = dualize_point_inv(p);
      EXPECT_TRUE(points_equal(dualize_point(q), p));
      EXPECT_TRUE(quotients_equal(dualize_point_inv(dualize_point(q)), q));
      for (std::size_t i = 0; i <= n; ++i) {
        ASSERT_EQ(quot_chart_membership(q, i), chart_membership(p, i));
        if (chart_membership(p, i)) EXPECT_TRUE(quot_chart_coordinates(q, i) == chart_coordinates(p, i));
      }
    }
  }
}

TEST(Proj, QuotientFromComponents) {
  const AlgebraPtr A = product_of_fields(2);
  const ModuleSum F = free_rank(A, 2);
  const ModulePtr R = regular_module(A);
  // q(a_0, a_1) = a_0 (1,2) + a_1 (3,0).
  const std::vector<Vec> cs{{Q(1), Q(2)}, {Q(3), Q(0)}};
  std::vector<Vec> images;
  for (std::size_t b = 0; b < F.module->dim(); ++b) {
    Vec v(2, Q(0));
    for (std::size_t j = 0; j < 2; ++j) axpy(v, Q(1), A->multiply(F.projections[j].apply(unit_vec(F.module->dim(), b)), cs[j]));
    images.push_back(v);
  }
  const QuotCheck qc = verify_quot_point(A, 1, R, ModuleMap::make(F.module, R, GradedMap::from_images(F.module->carrier(), R->carrier(), images)));
  ASSERT_TRUE(qc.point) << qc.failure;
  EXPECT_TRUE(quot_chart_membership(*qc.point, 0));
  EXPECT_FALSE(quot_chart_membership(*qc.point, 1));
  EXPECT_EQ(quot_chart_coordinates(*qc.point, 0).coords[0], (Vec{Q(3), Q(0)}));
}

TEST(Proj, BaseChangeAlongLocalization) {
  const AlgebraPtr A = product_of_fields(3);
  const Localization l = localize(A, ElementEndo::multiplication(A, {Q(1), Q(0), Q(1)}));
  const ProjPoint p = point_from_chart(A, 2, 1, {Vec{Q(2), Q(3), Q(5)}, Vec{Q(-1), Q(0), Q(7)}});
  const ProjPoint b = base_change_point(l.to_local, p);
  ASSERT_TRUE(chart_membership(b, 1));
  const ChartCoords c = chart_coordinates(b, 1);
  EXPECT_EQ(c.coords[0], l.to_local.apply(Vec{Q(2), Q(3), Q(5)}));
  EXPECT_EQ(c.coords[1], l.to_local.apply(Vec{Q(-1), Q(0), Q(7)}));
}

TEST(Proj, SheafConditionGluesRestrictedPoints) {
  std::mt19937_64 rng(59);
  const AlgebraPtr A = product_of_fields(3);
  const Covering cov = Covering::make(A, {localize(A, ElementEndo::multiplication(A, {Q(1), Q(1), Q(0)})).to_local,
                                          localize(A, ElementEndo::multiplication(A, {Q(0), Q(1), Q(1)})).to_local});
  for (int t = 0; t < 4; ++t) {
    const ProjPoint p = rt::random_point(rng, A, 2);
    std::vector<ProjPoint> locals;
    for (const auto& u : cov.legs) locals.push_back(base_change_point(u, p));
    const SheafResult s = sheaf_condition_instance(cov, locals);
    ASSERT_TRUE(s.point) << s.diagnosis;
    EXPECT_TRUE(s.report.passed()) << s.report.summary();
    EXPECT_TRUE(s.product_line);
    EXPECT_TRUE(s.counit);
    EXPECT_TRUE(points_equal(*s.point, p));
  }
}

TEST(Proj, SheafConditionRejectsDisagreeingPoints) {
  const AlgebraPtr A = product_of_fields(3);
  const Covering cov = Covering::make(A, {localize(A, ElementEndo::multiplication(A, {Q(1), Q(1), Q(0)})).to_local,
                                          localize(A, ElementEndo::multiplication(A, {Q(0), Q(1), Q(1)})).to_local});
  const ProjPoint p = point_from_chart(A, 1, 0, {Vec{Q(1), Q(2), Q(3)}});
  const ProjPoint q = point_from_chart(A, 1, 0, {Vec{Q(1), Q(4), Q(3)}});
  const SheafResult s = sheaf_condition_instance(cov, {base_change_point(cov.legs[0], p), base_change_point(cov.legs[1], q)});
  EXPECT_FALSE(s.point);
  EXPECT_NE(s.diagnosis.find("differ on overlap"), std::string::npos);
}

TEST(Proj, OctonionPointsLieInCharts) {
  std::mt19937_64 rng(61);
  const AlgebraPtr O = octonions();
  EXPECT_TRUE(is_field_object(O));
  std::vector<ProjPoint> pts;
  for (int t = 0; t < 6; ++t) pts.push_back(rt::random_point(rng, O, 1 + t % 3));
  for (const auto& p : pts) {
    const CheckReport r = field_cover_check(O, p.n, {p});
    EXPECT_TRUE(r.passed()) << r.summary();
  }
  EXPECT_THROW(field_cover_check(product_of_fields(2), 1, {}), InputError);
}
