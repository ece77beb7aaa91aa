#include <gtest/gtest.h>

#include "support.hpp"

using namespace relproj;
using relproj::testing::random_rational;

namespace {

GradedMap random_map(std::mt19937_64& rng, const GradedSpace& X, const GradedSpace& Y, int zero_bias = 0) {
  std::vector<Matrix> blocks;
  for (Element g = 0; g < X.group().size(); ++g) {
    Matrix m(Y.dim(g), X.dim(g));
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = (int(rng() % 3) < zero_bias) ? Q(0) : random_rational(rng, 2);
    blocks.push_back(m);
  }
  return GradedMap(X, Y, blocks);
}

}  // namespace

TEST(Graded, LayoutIsDegreeMajor) {
  GradedSpace X(Category::octonionic(), {1, 0, 2, 0, 0, 1, 0, 0});
  EXPECT_EQ(X.total_dim(), 4u);
  EXPECT_EQ(X.offset(2), 1u);
  EXPECT_EQ(X.degree_of(3), 5u);
  EXPECT_EQ(X.slot_of(2), 1u);
  EXPECT_EQ(X.homogeneous_degree(X.embed(2, {Q(1), Q(3)})), Element(2));
  EXPECT_FALSE(X.homogeneous_degree(Vec{Q(1), Q(1), Q(0), Q(0)}));
}

TEST(Graded, AssociatorSatisfiesPentagonAsMaps) {
  const auto cat = Category::octonionic();
  const GradedSpace W(cat, {0, 1, 0, 0, 1, 0, 0, 0}), X(cat, {0, 0, 1, 0, 0, 0, 0, 1}),
      Y(cat, {1, 0, 0, 0, 1, 0, 0, 0}), Z(cat, {0, 1, 1, 0, 0, 0, 0, 0});
  const auto WX = tensor(W, X).space, XY = tensor(X, Y).space, YZ = tensor(Y, Z).space;
  const auto lhs = associator_map(W, X, YZ) * associator_map(WX, Y, Z);
  const auto rhs = tensor_maps(GradedMap::identity(W), associator_map(X, Y, Z)) * associator_map(W, XY, Z) *
                   tensor_maps(associator_map(W, X, Y), GradedMap::identity(Z));
  EXPECT_TRUE(lhs == rhs);
}

TEST(Graded, SymmetryIsInvolutive) {
  const auto cat = Category::octonionic();
  const GradedSpace X(cat, {1, 1, 0, 1, 0, 1, 0, 1}), Y(cat, {0, 1, 1, 0, 1, 0, 1, 1});
  EXPECT_TRUE((symmetry_map(Y, X) * symmetry_map(X, Y)).dense().is_identity());
}

TEST(Graded, UnitorsAreIsomorphisms) {
  const GradedSpace X(Category::super_vector_spaces(), {2, 1});
  EXPECT_TRUE(left_unitor(X).is_invertible());
  EXPECT_TRUE(right_unitor(X).is_invertible());
}

TEST(Graded, KernelCokernelImageProperties) {
  std::mt19937_64 rng(21);
  const auto cat = Category::super_vector_spaces();
  for (int trial = 0; trial < 25; ++trial) {
    const GradedSpace X(cat, {std::size_t(1 + trial % 3), std::size_t(trial % 4)});
    const GradedSpace Y(cat, {std::size_t(2 + trial % 2), std::size_t(1 + trial % 3)});
    const GradedMap f = random_map(rng, X, Y, 1);
    const Kernel K = kernel(f);
    const Quotient C = cokernel(f);
    const Image I = image(f);
    EXPECT_TRUE((f * K.inclusion).is_zero());
    EXPECT_TRUE((C.projection * f).is_zero());
    EXPECT_TRUE(I.mono * I.epi == f);
    EXPECT_TRUE(I.mono.is_mono());
    EXPECT_TRUE(I.epi.is_epi());
    EXPECT_EQ(K.space.total_dim() + I.space.total_dim(), X.total_dim());
    EXPECT_EQ(C.space.total_dim() + I.space.total_dim(), Y.total_dim());
    EXPECT_TRUE((C.projection * C.section).dense().is_identity());
  }
}

TEST(Graded, FromImagesRejectsWrongDegree) {
  const auto cat = Category::super_vector_spaces();
  const GradedSpace X(cat, {1, 0}), Y(cat, {0, 1});
  EXPECT_THROW(GradedMap::from_images(X, Y, {Vec{Q(1)}}), std::logic_error);
}

TEST(Graded, SubspaceAndDirectSum) {
  const auto cat = Category::plain();
  const GradedSpace X(cat, {3});
  const Subspace S = Subspace::from_vectors(X, {Vec{Q(1), Q(2), Q(0)}, Vec{Q(2), Q(4), Q(0)}});
  EXPECT_EQ(S.total_dim(), 1u);
  EXPECT_TRUE(S.contains(Vec{Q(-1, 2), Q(-1), Q(0)}));
  EXPECT_FALSE(S.contains(Vec{Q(0), Q(0), Q(1)}));
  const Quotient qt = quotient(S);
  EXPECT_EQ(qt.space.total_dim(), 2u);
  const DirectSum D = direct_sum(cat, {X, GradedSpace(cat, {2})});
  EXPECT_EQ(D.space.total_dim(), 5u);
  for (std::size_t k = 0; k < 2; ++k) EXPECT_TRUE((D.projections[k] * D.injections[k]).dense().is_identity());
  EXPECT_TRUE((D.projections[0] * D.injections[1]).is_zero());
  EXPECT_TRUE(direct_sum(cat, {}).space.is_zero());
}
