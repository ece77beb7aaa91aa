#include "relproj/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace relproj::poly {

Poly trim(Poly p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
  return p;
}

int degree(const Poly& p) { return static_cast<int>(trim(p).size()) - 1; }

Poly multiply(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, Q(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) add_product(out[i + j], a[i], b[j]);
  return trim(std::move(out));
}

Poly add(const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), Q(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return trim(std::move(out));
}

Poly subtract(const Poly& a, const Poly& b) {
  Poly nb = b;
  for (auto& c : nb) c = -c;
  return add(a, nb);
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  const Poly d = trim(b);
  if (d.empty()) throw std::domain_error("polynomial division by zero");
  Poly r = trim(a);
  Poly q(r.size() >= d.size() ? r.size() - d.size() + 1 : 0, Q(0));
  while (r.size() >= d.size() && !r.empty()) {
    const std::size_t shift = r.size() - d.size();
    const Q f = r.back() / d.back();
    q[shift] = f;
    for (std::size_t i = 0; i < d.size(); ++i) sub_product(r[i + shift], f, d[i]);
    r = trim(std::move(r));
  }
  return {trim(std::move(q)), r};
}

Poly monic(const Poly& p) {
  Poly t = trim(p);
  if (t.empty()) return t;
  const Q lead = t.back();
  for (auto& c : t) c /= lead;
  return t;
}

Poly gcd(const Poly& a, const Poly& b) { return extended_gcd(a, b).g; }

Bezout extended_gcd(const Poly& a, const Poly& b) {
  Poly r0 = trim(a), r1 = trim(b);
  Poly s0{Q(1)}, s1{}, t0{}, t1{Q(1)};
  while (!r1.empty()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly s2 = subtract(s0, multiply(q, s1));
    Poly t2 = subtract(t0, multiply(q, t1));
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.empty()) return {s0, t0, r0};
  const Q lead = r0.back();
  for (auto& c : r0) c /= lead;
  for (auto& c : s0) c /= lead;
  for (auto& c : t0) c /= lead;
  return {trim(s0), trim(t0), r0};
}

namespace {

using ZPoly = std::vector<mpz_class>;

ZPoly primitive_integer(const Poly& p) {
  mpz_class l = 1;
  for (const auto& c : p) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  ZPoly z;
  for (const auto& c : p) z.push_back(mpz_class(c * l));
  mpz_class g = 0;
  for (const auto& c : z) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g != 0)
    for (auto& c : z) c /= g;
  return z;
}

mpz_class eval(const ZPoly& p, const mpz_class& x) {
  mpz_class v = 0;
  for (std::size_t i = p.size(); i-- > 0;) v = v * x + p[i];
  return v;
}

std::vector<mpz_class> positive_divisors(mpz_class n) {
  if (n < 0) n = -n;
  std::vector<mpz_class> small, large;
  for (mpz_class d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

// Lagrange interpolation through (xs[k], ys[k]).
Poly interpolate(const std::vector<mpz_class>& xs, const std::vector<mpz_class>& ys) {
  Poly result;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    Poly basis{Q(1)};
    Q denom = 1;
    for (std::size_t m = 0; m < xs.size(); ++m) {
      if (m == k) continue;
      basis = multiply(basis, Poly{Q(-xs[m]), Q(1)});
      denom *= Q(xs[k] - xs[m]);
    }
    for (auto& c : basis) c *= Q(ys[k]) / denom;
    result = add(result, basis);
  }
  return result;
}

bool integral(const Poly& p) {
  for (const auto& c : p)
    if (c.get_den() != 1) return false;
  return true;
}

std::optional<Poly> find_factor(const Poly& p, std::size_t& budget) {
  const int n = degree(p);
  if (n <= 1) return std::nullopt;
  const ZPoly z = primitive_integer(p);
  if (z[0] == 0) return Poly{Q(0), Q(1)};

  // Degree-one factors from the rational root theorem.
  for (const auto& a : positive_divisors(z[0]))
    for (const auto& b : positive_divisors(z.back()))
      for (int s : {1, -1}) {
        const Q root(s * a, b);
        Q v = 0;
        for (std::size_t i = p.size(); i-- > 0;) v = v * root + p[i];
        if (sgn(v) == 0) return Poly{-root, Q(1)};
      }

  for (int d = 2; d <= n / 2; ++d) {
    std::vector<std::pair<mpz_class, mpz_class>> candidates;
    for (long x = -30; x <= 30; ++x) {
      const mpz_class v = eval(z, mpz_class(x));
      if (v != 0) candidates.emplace_back(mpz_class(x), v);
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const auto& a, const auto& b) { return abs(a.second) < abs(b.second); });
    if (candidates.size() < static_cast<std::size_t>(d + 1)) continue;
    std::vector<mpz_class> xs;
    std::vector<std::vector<mpz_class>> choices;
    for (int k = 0; k <= d; ++k) {
      xs.push_back(candidates[static_cast<std::size_t>(k)].first);
      std::vector<mpz_class> divs;
      for (const auto& dv : positive_divisors(candidates[static_cast<std::size_t>(k)].second)) {
        divs.push_back(dv);
        if (k > 0) divs.push_back(-dv);
      }
      choices.push_back(std::move(divs));
    }
    std::vector<std::size_t> pick(choices.size(), 0);
    while (true) {
      if (budget-- == 0) throw std::runtime_error("polynomial factorization budget exhausted");
      std::vector<mpz_class> ys;
      for (std::size_t k = 0; k < pick.size(); ++k) ys.push_back(choices[k][pick[k]]);
      const Poly h = interpolate(xs, ys);
      if (degree(h) >= 1 && degree(h) < n && integral(h) && divmod(p, h).second.empty()) return monic(h);
      std::size_t k = 0;
      while (k < pick.size() && ++pick[k] == choices[k].size()) pick[k++] = 0;
      if (k == pick.size()) break;
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<Poly> factor_squarefree(const Poly& p, std::size_t budget) {
  std::vector<Poly> out;
  std::vector<Poly> work{monic(p)};
  while (!work.empty()) {
    Poly cur = work.back();
    work.pop_back();
    if (degree(cur) < 1) continue;
    auto f = find_factor(cur, budget);
    if (!f) {
      out.push_back(cur);
      continue;
    }
    work.push_back(monic(divmod(cur, *f).first));
    work.push_back(*f);
  }
  std::sort(out.begin(), out.end(), [](const Poly& a, const Poly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  });
  return out;
}

bool is_irreducible(const Poly& p, std::size_t budget) { return factor_squarefree(p, budget).size() == 1; }

}  // namespace relproj::poly
