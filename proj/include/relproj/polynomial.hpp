#pragma once

#include <optional>
#include <vector>

#include "relproj/rational.hpp"

namespace relproj::poly {

/// Univariate polynomial over Q, coefficients from degree 0 upwards, no trailing zeros.
using Poly = std::vector<Q>;

Poly trim(Poly p);
int degree(const Poly& p);  // -1 for the zero polynomial
Poly multiply(const Poly& a, const Poly& b);
Poly add(const Poly& a, const Poly& b);
Poly subtract(const Poly& a, const Poly& b);
/// Quotient and remainder; b must be nonzero.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly monic(const Poly& p);
Poly gcd(const Poly& a, const Poly& b);
/// s, t with s a + t b = gcd(a, b) (monic).
struct Bezout {
  Poly s, t, g;
};
Bezout extended_gcd(const Poly& a, const Poly& b);

/// Factors a squarefree polynomial into monic irreducible factors over Q.
/// Uses rational roots first and Kronecker's method for higher-degree factors;
/// throws std::runtime_error if the search exceeds `budget` candidate interpolations.
std::vector<Poly> factor_squarefree(const Poly& p, std::size_t budget = 2'000'000);

bool is_irreducible(const Poly& p, std::size_t budget = 2'000'000);

}  // namespace relproj::poly
