#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "relproj/graded.hpp"
#include "relproj/report.hpp"

namespace relproj {

/// A finite-dimensional algebra object in C given by structure constants on a
/// homogeneous basis. Construction enforces degree-additivity and a unit of degree e;
/// associativity and commutativity up to Phi and sigma are verified by check_algebra_axioms.
class AlgebraInC {
 public:
  AlgebraInC(GradedSpace carrier, std::vector<Vec> products, Vec unit, std::string name = {});

  const GradedSpace& carrier() const { return carrier_; }
  const CategoryPtr& category() const { return carrier_.category(); }
  std::size_t dim() const { return carrier_.total_dim(); }
  Element degree_of(std::size_t i) const { return carrier_.degree_of(i); }

  /// m(b_i, b_j) in carrier coordinates.
  const Vec& product(std::size_t i, std::size_t j) const { return products_[i * dim() + j]; }
  const std::vector<Vec>& products() const { return products_; }
  Vec multiply(const Vec& a, const Vec& b) const;
  const Vec& unit() const { return unit_; }

  /// Matrix of x -> m(a, x) on the carrier.
  Matrix left_multiplication(const Vec& a) const;

  /// Global indices of the degree-e basis vectors.
  std::vector<std::size_t> degree_zero_indices() const;
  /// Embeds coordinates on the degree-e component into the carrier.
  Vec from_degree_zero(const Vec& local) const { return carrier_.embed(0, local); }
  Vec degree_zero_part(const Vec& v) const { return carrier_.component(v, 0); }

  bool operator==(const AlgebraInC& other) const;

  std::string name;

 private:
  GradedSpace carrier_;
  std::vector<Vec> products_;
  Vec unit_;
};

using AlgebraPtr = std::shared_ptr<const AlgebraInC>;

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b);

/// Where an algebra map came from; used to attach structural certificates to coverings.
enum class MapKind { Identity, Localization, ProductProjection, Quotient, Other };

/// A morphism of algebras in C. Construction verifies unit and multiplicativity.
struct AlgebraMap {
  AlgebraPtr source;
  AlgebraPtr target;
  GradedMap map;
  MapKind kind = MapKind::Other;
  /// For localizations and product projections: the degree-e element of the source being inverted.
  Vec inverted_element;

  static AlgebraMap make(AlgebraPtr source, AlgebraPtr target, GradedMap map, MapKind kind = MapKind::Other,
                         Vec inverted = {});
  static AlgebraMap identity(const AlgebraPtr& A);

  Vec apply(const Vec& a) const { return map.apply(a); }
  /// (*this) after `first`.
  AlgebraMap after(const AlgebraMap& first) const;
};

/// Verifies m(1,a) = m(a,1) = a, and on all homogeneous basis tuples
/// m(m(a,b),c) = phi(a,b,c) m(a,m(b,c)) and R(a,b) m(b,a) = m(a,b).
CheckReport check_algebra_axioms(const AlgebraInC& A);

/// m(e_x, e_y) = F(x,y) e_{x+y} on the group algebra of the category's grading group.
AlgebraPtr twisted_group_algebra(const CategoryPtr& cat);
/// The octonions as the twisted group algebra of Z2^3.
AlgebraPtr octonions();
/// Q x ... x Q (n factors), trivially graded in `cat` (degree e only).
AlgebraPtr product_of_fields(std::size_t n, const CategoryPtr& cat = Category::plain());
/// The ground field Q as the unit object.
AlgebraPtr ground_field(const CategoryPtr& cat);
/// Q[eps]/(eps^2), trivially graded.
AlgebraPtr dual_numbers(const CategoryPtr& cat = Category::plain());

/// Classical identities of the underlying (untwisted) multiplication, evaluated on random elements.
struct IdentityReport {
  CheckReport left_alternative{"alternativity (xx)y = x(xy)"};
  CheckReport right_alternative{"alternativity y(xx) = (yx)x"};
  CheckReport moufang{"Moufang ((xy)x)z = x(y(xz))"};
  CheckReport norm{"norm multiplicativity N(ab) = N(a)N(b)"};
  /// (e1 e2) e4 != e1 (e2 e4) for the basis vectors of degrees (1,0,0),(0,1,0),(0,0,1).
  bool non_associative_witness = false;
  std::uint64_t seed = 0;
  std::size_t trials = 0;

  bool identities_pass() const {
    return left_alternative.passed() && right_alternative.passed() && moufang.passed() && norm.passed();
  }
};
IdentityReport underlying_identities(const AlgebraInC& A, std::size_t trials, std::uint64_t seed);

/// Multiplication by a degree-e element: an endomorphism of A as a module over itself.
struct ElementEndo {
  AlgebraPtr algebra;
  Vec element;  // carrier coordinates, supported in degree e
  GradedMap map;

  static ElementEndo multiplication(const AlgebraPtr& A, const Vec& element);
};

/// One generator per degree-e basis vector.
std::vector<ElementEndo> element_endos(const AlgebraPtr& A);

/// A graded subspace closed under multiplication by every basis element.
struct Ideal {
  AlgebraPtr algebra;
  Subspace subspace;

  /// Throws InputError if the subspace is not closed under multiplication.
  static Ideal make(const AlgebraPtr& A, Subspace sub);
  bool is_whole() const { return subspace.total_dim() == algebra->dim(); }
  bool is_zero() const { return subspace.total_dim() == 0; }
  bool operator==(const Ideal& other) const { return subspace == other.subspace; }
};

/// Smallest ideal containing the homogeneous components of the given vectors (closure to a fixed point).
Ideal generated_ideal(const AlgebraPtr& A, const std::vector<Vec>& generators);
Ideal generated_ideal(const AlgebraPtr& A, const std::vector<ElementEndo>& generators);

/// s_i with sum s_i f_i = id when the family generates A; nothing otherwise.
std::optional<std::vector<ElementEndo>> partition_of_unity(const AlgebraPtr& A, const std::vector<ElementEndo>& family);

/// A / I with the induced multiplication and the quotient map.
struct QuotientAlgebra {
  AlgebraPtr algebra;
  AlgebraMap projection;
  GradedMap section;
};
QuotientAlgebra quotient_algebra(const Ideal& I);

/// A_f realized as A / ker(f^N) where image(f^N) = image(f^(N+1)).
struct Localization {
  AlgebraPtr algebra;
  AlgebraMap to_local;  // u : A -> A_f
  GradedMap section;
  std::size_t fitting_index = 0;
  Vec element;          // f, in A
  Vec inverse_image;    // (u f)^-1, in A_f

  /// The unique algebra map A_f -> B through which `v` factors, provided v(f) is invertible in B.
  std::optional<AlgebraMap> factor(const AlgebraMap& v) const;
};
Localization localize(const AlgebraPtr& A, const ElementEndo& f);

/// Inverse of a degree-e element in the (associative, commutative) degree-e subalgebra.
std::optional<Vec> invert_degree_zero(const AlgebraInC& A, const Vec& a);

/// True iff A has no ideals other than 0 and A. Throws InputError on the zero algebra.
bool is_field_object(const AlgebraPtr& A);

/// The associative algebra of operators on M spanned by composites of homogeneous action operators.
struct OperatorAlgebra {
  std::size_t space_dim = 0;
  std::vector<Matrix> basis;
  /// Degree shift of each basis operator.
  std::vector<Element> shifts;

  std::size_t dim() const { return basis.size(); }
  std::optional<Vec> coordinates(const Matrix& op) const;
  /// c[i][j] = coordinates of basis[i] * basis[j].
  std::vector<std::vector<Vec>> structure_constants() const;
};

/// Maximal proper ideal containing I (I must be proper). Ties are broken by the
/// lexicographically smallest canonical basis.
Ideal maximal_ideal_above(const AlgebraPtr& A, const Ideal& I);
/// All maximal ideals of A, sorted by the same lexicographic order.
std::vector<Ideal> maximal_ideals(const AlgebraPtr& A);

}  // namespace relproj
