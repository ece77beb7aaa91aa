#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "relproj/algebra.hpp"

namespace relproj {

/// A left A-module (X, rho) in C, stored as structure constants rho(a_i, x_j).
/// Construction enforces degree-additivity only; the twisted action laws are
/// verified by check_module_axioms.
class ModuleInC {
 public:
  ModuleInC(AlgebraPtr algebra, GradedSpace carrier, std::vector<Vec> action, std::string name = {});

  const AlgebraPtr& algebra() const { return algebra_; }
  const GradedSpace& carrier() const { return carrier_; }
  const CategoryPtr& category() const { return carrier_.category(); }
  std::size_t dim() const { return carrier_.total_dim(); }
  Element degree_of(std::size_t j) const { return carrier_.degree_of(j); }

  /// rho(a_i, x_j).
  const Vec& act(std::size_t i, std::size_t j) const { return action_[i * dim() + j]; }
  const std::vector<Vec>& action() const { return action_; }
  Vec act(const Vec& a, const Vec& x) const;
  /// Dense matrix of x -> rho(a_i, x).
  const Matrix& action_operator(std::size_t i) const { return operators_[i]; }

  bool operator==(const ModuleInC& other) const;

  std::string name;

 private:
  AlgebraPtr algebra_;
  GradedSpace carrier_;
  std::vector<Vec> action_;
  std::vector<Matrix> operators_;
};

using ModulePtr = std::shared_ptr<const ModuleInC>;

bool same_module(const ModulePtr& a, const ModulePtr& b);

/// An A-linear morphism. make() verifies equivariance on every basis pair.
struct ModuleMap {
  ModulePtr source;
  ModulePtr target;
  GradedMap map;

  static ModuleMap make(ModulePtr source, ModulePtr target, GradedMap map);
  static ModuleMap identity(const ModulePtr& M);
  static ModuleMap zero(const ModulePtr& source, const ModulePtr& target);

  Vec apply(const Vec& x) const { return map.apply(x); }
  /// (*this) after `first`.
  ModuleMap after(const ModuleMap& first) const;
  ModuleMap scaled(const Q& s) const { return ModuleMap{source, target, map.scaled(s)}; }
  ModuleMap operator+(const ModuleMap& rhs) const;
  ModuleMap operator-(const ModuleMap& rhs) const;
  bool is_iso() const { return map.is_invertible(); }
  std::optional<ModuleMap> inverse() const;
  bool operator==(const ModuleMap& rhs) const { return map == rhs.map; }
};

/// rho(1, x) = x and rho(m(a,b), x) = phi(a,b,x) rho(a, rho(b, x)) on all basis tuples.
CheckReport check_module_axioms(const ModuleInC& M);

/// A acting on itself by multiplication.
ModulePtr regular_module(const AlgebraPtr& A);
ModulePtr zero_module(const AlgebraPtr& A);

/// The free module A (x) X with rho(a, b (x) x) = phi(a,b,x)^-1 m(a,b) (x) x.
struct FreeModule {
  ModulePtr module;
  GradedSpace generators;
  TensorProduct tensor;
  GradedMap unit;  // X -> |A (x) X|, x -> 1 (x) x

  /// The A-linear extension of g : X -> |M| (one side of the adjunction bijection).
  ModuleMap extend(const ModulePtr& M, const GradedMap& g) const;
  /// f o unit (the other side).
  GradedMap restrict(const ModuleMap& f) const { return f.map * unit; }
};
FreeModule free_module(const AlgebraPtr& A, const GradedSpace& X);

/// Direct sum of modules over one algebra, with injections and projections.
struct ModuleSum {
  ModulePtr module;
  std::vector<ModuleMap> injections;
  std::vector<ModuleMap> projections;
};
ModuleSum direct_sum(const AlgebraPtr& A, const std::vector<ModulePtr>& summands);
/// A^k as the sum of k copies of the regular module (lambda_j = injections, pi_j = projections).
ModuleSum free_rank(const AlgebraPtr& A, std::size_t k);

/// Linear system for the entries of a graded map h : |M| -> |N| raising degree by `shift`,
/// subject to twisted A-linearity and optional value constraints.
class MapSystem {
 public:
  MapSystem(ModulePtr M, ModulePtr N, Element shift = 0);

  /// h(rho(a, x)) = c(shift, a, x) rho_N(a, h(x)), c = phi(g,a,x)^-1 R(g,a) phi(a,g,x).
  void add_linearity();
  /// post(h(v)) = w, or h(v) = w when `post` is null. Returns false once inconsistent.
  bool add_value(const Vec& v, const Vec& w, const GradedMap* post = nullptr);

  std::size_t unknowns() const { return vars_.size(); }
  std::optional<Matrix> solution() const;
  std::vector<Matrix> kernel() const;
  Matrix assemble(const Vec& values) const;

 private:
  ModulePtr M_, N_;
  Element shift_;
  std::vector<std::pair<std::size_t, std::size_t>> vars_;  // (row in N, column in M)
  std::vector<std::vector<long>> var_of_;                 // [row][col] -> var or -1
  LinearSystem sys_;
};

/// Basis of Hom_A(M, N).
std::vector<ModuleMap> hom_basis(const ModulePtr& M, const ModulePtr& N);

/// An isomorphism M -> N if one is found. Deterministic search: hom-space basis elements,
/// then small fixed combinations, then seeded random combinations.
std::optional<ModuleMap> find_isomorphism(const ModulePtr& M, const ModulePtr& N, std::uint64_t seed = 0x15);

/// Submodule spanned by a graded subspace closed under the action (InputError otherwise).
struct Submodule {
  ModulePtr module;
  ModuleMap inclusion;
};
Submodule submodule(const ModulePtr& M, const Subspace& sub);

struct QuotientModule {
  ModulePtr module;
  ModuleMap projection;
  GradedMap section;
};
QuotientModule quotient_module(const ModulePtr& M, const Subspace& sub);

Submodule kernel_module(const ModuleMap& f);
/// f = mono o epi with mono : Im f -> target.
struct ModuleImage {
  ModulePtr module;
  ModuleMap mono;
  ModuleMap epi;
};
ModuleImage image_module(const ModuleMap& f);

/// M with the action conjugated by an invertible graded map P: rho'(a, x) = P^-1 rho(a, P x).
/// P itself is then an isomorphism from the result to M.
ModulePtr transport(const ModulePtr& M, const GradedMap& P);

/// N over B regarded as an A-module along u.
ModulePtr restriction_of_scalars(const AlgebraMap& u, const ModulePtr& N);

/// The O-module with degree-e component of dimension d whose e_g-multiplications X_e -> X_g are
/// the given isomorphisms (one for each non-identity degree, in group order). Works for any
/// twisted group algebra; non-invertible matrices are rejected.
ModulePtr o_module_from_degree_zero(const AlgebraPtr& A, std::size_t d, const std::vector<Matrix>& isos);
/// The matrices of e_g acting X_e -> X_g, g != e.
std::vector<Matrix> degree_zero_data(const ModulePtr& M);

/// M (x)_A N: cokernel of the two actions on M (x) N, with its induced A-action.
struct TensorOver {
  ModulePtr module;
  ModulePtr left;
  ModulePtr right;
  TensorProduct raw;
  GradedMap projection;  // |M (x) N| -> |M (x)_A N|
  GradedMap section;

  /// Class of x_i (x) y_j.
  Vec class_of(std::size_t i, std::size_t j) const { return projection.image_of_basis(raw.index(i, j)); }
};
TensorOver tensor_over(const ModulePtr& M, const ModulePtr& N);
/// f (x)_A g.
ModuleMap tensor_over_maps(const ModuleMap& f, const ModuleMap& g, const TensorOver& source, const TensorOver& target);
/// A (x)_A M -> M, [a (x) x] -> rho(a, x).
ModuleMap left_unit_iso(const TensorOver& T);

/// B (x)_A M over B.
struct BaseChange {
  AlgebraMap u;
  ModulePtr source;  // M over A
  ModulePtr module;  // over B
  TensorProduct raw;  // B (x) M
  GradedMap projection;
  GradedMap section;
  GradedMap unit;  // |M| -> |B (x)_A M|, x -> [1 (x) x]
};
BaseChange base_change(const AlgebraMap& u, const ModulePtr& M);
ModuleMap base_change_map(const BaseChange& source, const BaseChange& target, const ModuleMap& f);
/// B (x)_A A -> B, [b (x) a] -> m(b, u(a)).
ModuleMap base_change_regular_iso(const BaseChange& bc);
/// B (x)_A (sum A) -> sum B componentwise.
ModuleMap base_change_free_iso(const BaseChange& bc, const ModuleSum& source_free, const ModuleSum& target_free);
/// C (x)_B (B (x)_A M) -> C (x)_A M along v o u, [c (x) [b (x) x]] -> [m(c, v b) (x) x].
ModuleMap collapse_iso(const BaseChange& outer, const BaseChange& inner, const BaseChange& composite);

/// hom_A(M, N): homogeneous component g holds the maps raising degree by g that are A-linear
/// up to the twisting scalar; A acts by (a.h)(x) = phi(a,g,x) rho_N(a, h(x)).
struct HomModule {
  ModulePtr source;
  ModulePtr target;
  ModulePtr module;
  /// Dense matrix |M| -> |N| for each carrier basis vector.
  std::vector<Matrix> elements;

  Matrix operator_of(const Vec& coords) const;
  /// Coordinates of a homogeneous-by-degree operator; nothing if outside the space.
  std::optional<Vec> coordinates(const Matrix& op) const;
  Vec eval(const Vec& h, const Vec& x) const { return operator_of(h) * x; }

  std::vector<SpanCoordinates> per_degree;
};
HomModule inner_hom(const ModulePtr& M, const ModulePtr& N);
/// hom_A(M, A).
HomModule dual_module(const ModulePtr& M);
/// hom_A(A, M) -> M, h -> h(1).
ModuleMap hom_from_unit_iso(const HomModule& H);
/// The degree-e element of hom_A(M, N) corresponding to a morphism.
Vec hom_element(const HomModule& H, const ModuleMap& f);

/// zeta : B (x)_A hom_A(M, N) -> hom_B(B (x)_A M, B (x)_A N), [b (x) h] -> b . (1 (x) h).
struct ZetaResult {
  ModuleMap zeta;
  bool well_defined = false;
  bool invertible = false;
  CheckReport report;
};
ZetaResult zeta_map(const AlgebraMap& u, const ModulePtr& M, const ModulePtr& N);

/// r with r o x = id, if one exists. Throws InputError when x is not a monomorphism.
std::optional<ModuleMap> find_retraction(const ModuleMap& x);
/// s with q o s = id, if one exists. Throws InputError when q is not an epimorphism.
std::optional<ModuleMap> find_section(const ModuleMap& q);

/// For a morphism of modules over a twisted group algebra: V0(f) invertible implies f invertible,
/// with every block reconstructed from the degree-e block through the distinguished isomorphisms.
struct ConservativeReport {
  bool v0_invertible = false;
  bool f_invertible = false;
  CheckReport report{"V0 conservative"};
};
ConservativeReport v0_conservative_check(const ModuleMap& f);

/// Projectivity and generator instances of Hom_A(A, -) on supplied epimorphisms and map pairs.
CheckReport generator_check(const AlgebraPtr& A, const std::vector<ModuleMap>& epis,
                            const std::vector<std::pair<ModuleMap, ModuleMap>>& distinct_pairs);

/// Span closure of the homogeneous action operators of A on M.
OperatorAlgebra enveloping_action_algebra(const ModulePtr& M);

}  // namespace relproj
