#pragma once

#include <memory>
#include <string>
#include <vector>

#include "relproj/rational.hpp"
#include "relproj/report.hpp"

namespace relproj {

/// G = Z_{m1} x ... x Z_{mk}. Elements are addressed by their index in the
/// lexicographic order of residue vectors (first coordinate most significant).
class GradingGroup {
 public:
  using Element = std::size_t;

  explicit GradingGroup(std::vector<int> orders);

  /// Z2 x Z2 x Z2, the grading of the octonions.
  static GradingGroup z2_cubed() { return GradingGroup({2, 2, 2}); }
  static GradingGroup trivial() { return GradingGroup({}); }

  const std::vector<int>& orders() const { return orders_; }
  std::size_t size() const { return size_; }

  Element identity() const { return 0; }
  Element add(Element a, Element b) const { return add_table_[a * size_ + b]; }
  Element negate(Element a) const { return neg_table_[a]; }
  Element subtract(Element a, Element b) const { return add(a, negate(b)); }

  std::vector<int> residues(Element a) const;
  Element index_of(const std::vector<int>& residues) const;

  /// "(1,0,0)"
  std::string label(Element a) const;

  bool operator==(const GradingGroup& other) const { return orders_ == other.orders_; }

 private:
  std::vector<int> orders_;
  std::size_t size_;
  std::vector<Element> add_table_;
  std::vector<Element> neg_table_;
};

using Element = GradingGroup::Element;

/// A 2-cochain F: G x G -> Q^x, stored densely.
class Cochain2 {
 public:
  /// Throws InputError if any entry is zero or the table has the wrong size.
  Cochain2(GradingGroup group, std::vector<Q> table);

  static Cochain2 trivial(const GradingGroup& group);

  const GradingGroup& group() const { return group_; }
  const Q& operator()(Element x, Element y) const { return table_[x * group_.size() + y]; }
  const std::vector<Q>& table() const { return table_; }

  /// F(e, y) = F(x, e) = 1 for all x, y.
  bool is_normalized() const;

 private:
  GradingGroup group_;
  std::vector<Q> table_;
};

/// A scalar 3-cochain, used for the associator table phi(x, y, z).
class Scalar3 {
 public:
  Scalar3(GradingGroup group, std::vector<Q> table);

  const GradingGroup& group() const { return group_; }
  const Q& operator()(Element x, Element y, Element z) const {
    const auto n = group_.size();
    return table_[(x * n + y) * n + z];
  }
  Q& at(Element x, Element y, Element z) {
    const auto n = group_.size();
    return table_[(x * n + y) * n + z];
  }

 private:
  GradingGroup group_;
  std::vector<Q> table_;
};

/// R(x, y), the scalar by which the symmetry acts on x (x) y.
class SymmetryTable {
 public:
  SymmetryTable(GradingGroup group, std::vector<Q> table);

  const GradingGroup& group() const { return group_; }
  const Q& operator()(Element x, Element y) const { return table_[x * group_.size() + y]; }

 private:
  GradingGroup group_;
  std::vector<Q> table_;
};

/// f(x, y) mod 2 for x, y in Z2^3 given as bit vectors of length 3.
int eval_f(const std::vector<int>& x, const std::vector<int>& y);

/// F(x, y) = (-1)^f(x, y) on Z2^3.
Cochain2 octonion_cochain();

/// phi(x,y,z) = F(x,y) F(x+y,z) / (F(y,z) F(x,y+z)). Requires a normalized F.
Scalar3 coboundary3(const Cochain2& F);

/// R(x, y) = F(x, y) / F(y, x).
SymmetryTable symmetry_ratio(const Cochain2& F);

/// phi(y,z,w) phi(x,y+z,w) phi(x,y,z) = phi(x+y,z,w) phi(x,y,z+w) on all |G|^4 quadruples.
CheckReport check_pentagon(const Scalar3& phi);

/// Both hexagons for associator phi and symmetry R on all |G|^3 triples.
CheckReport check_hexagon(const Scalar3& phi, const SymmetryTable& R);
CheckReport check_hexagon(const Cochain2& F);

/// The ambient symmetric monoidal category (Vect_Q^G, (x), 1, Phi, sigma) in which all
/// objects of the library live. Associator is always the coboundary of F; the symmetry is
/// R_F(x, y) = F(x,y)/F(y,x), optionally multiplied by a symmetric sign bicharacter
/// (the Koszul sign of super vector spaces is the one case that needs it).
class Category {
 public:
  explicit Category(Cochain2 F);
  Category(Cochain2 F, SymmetryTable symmetry);

  static std::shared_ptr<const Category> make(Cochain2 F);

  /// Z2^3 with the octonion cochain.
  static std::shared_ptr<const Category> octonionic();
  /// Trivially graded vector spaces.
  static std::shared_ptr<const Category> plain();
  /// Z2 grading, trivial cochain, Koszul sign symmetry R(1,1) = -1.
  static std::shared_ptr<const Category> super_vector_spaces();

  const GradingGroup& group() const { return group_; }
  const Cochain2& cochain() const { return F_; }
  const Q& phi(Element x, Element y, Element z) const { return phi_(x, y, z); }
  const Q& R(Element x, Element y) const { return R_(x, y); }
  const Scalar3& associator() const { return phi_; }
  const SymmetryTable& symmetry() const { return R_; }

  std::string name;

 private:
  GradingGroup group_;
  Cochain2 F_;
  Scalar3 phi_;
  SymmetryTable R_;
};

using CategoryPtr = std::shared_ptr<const Category>;

/// Same category: identical pointer or identical structure tables.
bool same_category(const CategoryPtr& a, const CategoryPtr& b);

}  // namespace relproj
