#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace relproj {

/// Exact rational scalar. Every computation in the library is carried out over Q.
using Q = mpq_class;
using Vec = std::vector<Q>;

/// Thrown when caller-supplied data violates a documented precondition.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parses "p/q" or "p". Rejects floating literals and zero denominators.
Q parse_rational(std::string_view text);

/// Canonical "p/q" form (q > 0, gcd 1); integers print without "/1".
std::string format_rational(const Q& value);

inline bool is_zero(const Q& value) { return sgn(value) == 0; }

inline bool is_zero(const Vec& v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

Vec zero_vec(std::size_t n);
Vec unit_vec(std::size_t n, std::size_t i);

/// acc += a * b and acc -= a * b without allocating a temporary.
inline void add_product(Q& acc, const Q& a, const Q& b) {
  thread_local Q scratch;
  mpq_mul(scratch.get_mpq_t(), a.get_mpq_t(), b.get_mpq_t());
  mpq_add(acc.get_mpq_t(), acc.get_mpq_t(), scratch.get_mpq_t());
}
inline void sub_product(Q& acc, const Q& a, const Q& b) {
  thread_local Q scratch;
  mpq_mul(scratch.get_mpq_t(), a.get_mpq_t(), b.get_mpq_t());
  mpq_sub(acc.get_mpq_t(), acc.get_mpq_t(), scratch.get_mpq_t());
}

/// a + s * b, in place.
void axpy(Vec& a, const Q& s, const Vec& b);

}  // namespace relproj
