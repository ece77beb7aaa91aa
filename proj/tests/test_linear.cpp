#include <gtest/gtest.h>

#include "relproj/polynomial.hpp"
#include "support.hpp"

using namespace relproj;
using relproj::testing::determinant_leibniz;
using relproj::testing::random_vec;

TEST(Rational, ParseAndFormat) {
  EXPECT_EQ(parse_rational("3/6"), Q(1, 2));
  EXPECT_EQ(parse_rational("-4"), Q(-4));
  EXPECT_EQ(format_rational(Q(6, -4)), "-3/2");
  EXPECT_EQ(format_rational(Q(8, 4)), "2");
  EXPECT_THROW(parse_rational("0.5"), InputError);
  EXPECT_THROW(parse_rational("1/0"), InputError);
  EXPECT_THROW(parse_rational("abc"), InputError);
}

TEST(Matrix, DeterminantMatchesLeibniz) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + trial % 5;
    Matrix m(n, n);
    for (std::size_t r = 0; r < n; ++r) {
      const Vec row = random_vec(rng, n, 3);
      for (std::size_t c = 0; c < n; ++c) m(r, c) = row[c];
    }
    if (trial % 7 == 0 && n > 1) m.set_column(n - 1, m.column(0));
    EXPECT_EQ(determinant(m), determinant_leibniz(m)) << m.to_string();
    EXPECT_EQ(is_invertible(m), determinant_leibniz(m) != 0);
  }
}

TEST(Matrix, InverseAndSolve) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + trial % 4;
    Matrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) m(r, c) = random_vec(rng, 1)[0];
    auto inv = inverse(m);
    ASSERT_EQ(inv.has_value(), determinant(m) != 0);
    if (!inv) continue;
    EXPECT_TRUE((m * *inv).is_identity());
    const Vec b = random_vec(rng, n);
    auto x = solve(m, b);
    ASSERT_TRUE(x);
    EXPECT_EQ(m * *x, b);
  }
}

TEST(Matrix, NullspaceAndRank) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t rows = 1 + trial % 4, cols = 2 + trial % 5;
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = random_vec(rng, 1, 2)[0];
    const auto ns = nullspace(m);
    EXPECT_EQ(rank(m) + ns.size(), cols);
    for (const auto& v : ns) EXPECT_TRUE(is_zero(m * v));
  }
}

TEST(Matrix, SpanToolsAgree) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 5;
    std::vector<Vec> vs;
    for (int k = 0; k < 3; ++k) vs.push_back(random_vec(rng, n));
    vs.push_back(vs[0]);
    axpy(vs.back(), Q(2), vs[1]);
    IncrementalSpan span(n);
    std::size_t added = 0;
    for (const auto& v : vs) added += span.add(v);
    EXPECT_EQ(added, canonical_span(n, vs).size());
    const auto basis = canonical_span(n, vs);
    SpanCoordinates sc(basis);
    Vec probe = vs[2];
    axpy(probe, Q(-3, 2), vs[0]);
    auto c = sc(probe);
    ASSERT_TRUE(c);
    Vec rebuilt(n, Q(0));
    for (std::size_t k = 0; k < basis.size(); ++k) axpy(rebuilt, (*c)[k], basis[k]);
    EXPECT_EQ(rebuilt, probe);
    EXPECT_EQ(coordinates_in(basis, probe).has_value(), true);
  }
}

TEST(LinearSystem, ParticularAndKernel) {
  LinearSystem sys(3);
  EXPECT_TRUE(sys.add({Q(1), Q(1), Q(0)}, Q(2)));
  EXPECT_TRUE(sys.add({Q(2), Q(2), Q(0)}, Q(4)));
  EXPECT_EQ(sys.rank(), 1u);
  auto x = sys.particular();
  ASSERT_TRUE(x);
  EXPECT_EQ((*x)[0] + (*x)[1], Q(2));
  EXPECT_EQ(sys.kernel().size(), 2u);
  EXPECT_FALSE(sys.add({Q(1), Q(1), Q(0)}, Q(3)));
  EXPECT_FALSE(sys.consistent());
}

TEST(Polynomial, GcdAndFactor) {
  using poly::Poly;
  const Poly a{Q(-1), Q(0), Q(1)};         // x^2 - 1
  const Poly b{Q(1), Q(1)};                // x + 1
  EXPECT_EQ(poly::gcd(a, b), (Poly{Q(1), Q(1)}));
  const auto bz = poly::extended_gcd(a, Poly{Q(-2), Q(1)});
  EXPECT_EQ(poly::add(poly::multiply(bz.s, a), poly::multiply(bz.t, Poly{Q(-2), Q(1)})), bz.g);
  const Poly p = poly::multiply(Poly{Q(-2), Q(0), Q(1)}, Poly{Q(3), Q(1)});  // (x^2-2)(x+3)
  const auto f = poly::factor_squarefree(p);
  EXPECT_EQ(f.size(), 2u);
  EXPECT_TRUE(poly::is_irreducible(Poly{Q(-2), Q(0), Q(1)}));
  EXPECT_FALSE(poly::is_irreducible(a));
  const auto [q, r] = poly::divmod(p, Poly{Q(3), Q(1)});
  EXPECT_EQ(q, (Poly{Q(-2), Q(0), Q(1)}));
  EXPECT_EQ(poly::degree(r), -1);
}
