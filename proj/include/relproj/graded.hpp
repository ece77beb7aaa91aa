#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "relproj/cochain.hpp"
#include "relproj/matrix.hpp"

namespace relproj {

/// A finite-dimensional G-graded vector space. The basis is indexed globally in
/// degree-major order: all slots of degree 0, then degree 1, and so on.
class GradedSpace {
 public:
  GradedSpace() = default;
  GradedSpace(CategoryPtr cat, std::vector<std::size_t> dims);

  static GradedSpace zero(CategoryPtr cat);
  /// The monoidal unit: one dimension in the identity degree.
  static GradedSpace unit(CategoryPtr cat);
  static GradedSpace concentrated(CategoryPtr cat, Element degree, std::size_t dim);

  const CategoryPtr& category() const { return cat_; }
  const GradingGroup& group() const { return cat_->group(); }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t dim(Element g) const { return dims_[g]; }
  std::size_t total_dim() const { return total_; }
  bool is_zero() const { return total_ == 0; }

  std::size_t offset(Element g) const { return offsets_[g]; }
  Element degree_of(std::size_t index) const { return degree_of_[index]; }
  std::size_t slot_of(std::size_t index) const { return index - offsets_[degree_of_[index]]; }
  std::size_t index(Element g, std::size_t slot) const { return offsets_[g] + slot; }

  /// Restriction of a global vector to its degree-g coordinates, and the reverse embedding.
  Vec component(const Vec& v, Element g) const;
  Vec embed(Element g, const Vec& local) const;

  /// Degree of a nonzero homogeneous vector; nothing if v is zero or inhomogeneous.
  std::optional<Element> homogeneous_degree(const Vec& v) const;

  bool operator==(const GradedSpace& other) const;

 private:
  CategoryPtr cat_;
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> offsets_;
  std::vector<Element> degree_of_;
  std::size_t total_ = 0;
};

/// A degree-preserving linear map, stored as one block per degree.
class GradedMap {
 public:
  GradedMap() = default;
  GradedMap(GradedSpace source, GradedSpace target, std::vector<Matrix> blocks);

  static GradedMap zero(const GradedSpace& source, const GradedSpace& target);
  static GradedMap identity(const GradedSpace& space);
  /// Builds the map from the images of the source basis vectors (global coordinates).
  /// Throws std::logic_error if some image is not of the right degree.
  static GradedMap from_images(const GradedSpace& source, const GradedSpace& target, const std::vector<Vec>& images);
  static GradedMap from_dense(const GradedSpace& source, const GradedSpace& target, const Matrix& dense);

  const GradedSpace& source() const { return source_; }
  const GradedSpace& target() const { return target_; }
  const Matrix& block(Element g) const { return blocks_[g]; }
  const std::vector<Matrix>& blocks() const { return blocks_; }

  Matrix dense() const;
  Vec apply(const Vec& v) const;
  Vec image_of_basis(std::size_t index) const;

  bool is_zero() const;
  bool is_invertible() const;
  std::optional<GradedMap> inverse() const;
  bool is_mono() const;
  bool is_epi() const;

  GradedMap operator*(const GradedMap& rhs) const;  // composition: (*this) after rhs
  GradedMap operator+(const GradedMap& rhs) const;
  GradedMap operator-(const GradedMap& rhs) const;
  GradedMap scaled(const Q& s) const;
  bool operator==(const GradedMap& rhs) const;

 private:
  GradedSpace source_;
  GradedSpace target_;
  std::vector<Matrix> blocks_;
};

/// X (x) Y with its basis pairing. Within each degree g the basis runs over
/// (left degree a, left slot i, right slot j) lexicographically, with b = g - a.
struct TensorProduct {
  GradedSpace left;
  GradedSpace right;
  GradedSpace space;
  std::vector<std::size_t> pair_to_index;                   // left.total * right.total
  std::vector<std::pair<std::size_t, std::size_t>> index_to_pair;

  std::size_t index(std::size_t left_index, std::size_t right_index) const {
    return pair_to_index[left_index * right.total_dim() + right_index];
  }
};

TensorProduct tensor(const GradedSpace& X, const GradedSpace& Y);

/// f (x) g between the given tensor products.
GradedMap tensor_maps(const GradedMap& f, const GradedMap& g, const TensorProduct& source, const TensorProduct& target);
GradedMap tensor_maps(const GradedMap& f, const GradedMap& g);

/// (X (x) Y) (x) Z -> X (x) (Y (x) Z), scaling the basis triple of degrees (a,b,c) by phi(a,b,c).
GradedMap associator_map(const GradedSpace& X, const GradedSpace& Y, const GradedSpace& Z);
/// X (x) Y -> Y (x) X, scaling degrees (a,b) by R(a,b).
GradedMap symmetry_map(const GradedSpace& X, const GradedSpace& Y);
GradedMap left_unitor(const GradedSpace& X);   // 1 (x) X -> X
GradedMap right_unitor(const GradedSpace& X);  // X (x) 1 -> X

/// A graded subspace, stored per degree as canonical (reduced echelon) basis vectors in local coordinates.
struct Subspace {
  GradedSpace ambient;
  std::vector<std::vector<Vec>> basis;

  static Subspace from_vectors(const GradedSpace& ambient, const std::vector<Vec>& homogeneous_global_vectors);
  static Subspace zero(const GradedSpace& ambient);
  static Subspace whole(const GradedSpace& ambient);

  std::vector<std::size_t> dims() const;
  std::size_t total_dim() const;
  bool contains(const Vec& global) const;
  bool contains(const Subspace& other) const;
  bool operator==(const Subspace& other) const;
  /// Basis vectors in global coordinates, degree-major.
  std::vector<Vec> global_basis() const;
  GradedSpace as_space() const;
  GradedMap inclusion() const;
  /// Lexicographic comparison of the canonical bases (used for reproducible tie-breaks).
  bool lex_less(const Subspace& other) const;
};

struct Quotient {
  GradedSpace space;
  GradedMap projection;  // ambient -> space
  GradedMap section;     // space -> ambient, projection * section = id
};

Quotient quotient(const Subspace& sub);

struct Kernel {
  GradedSpace space;
  GradedMap inclusion;
};
struct Image {
  GradedSpace space;
  GradedMap mono;
  GradedMap epi;  // f = mono * epi
};

Kernel kernel(const GradedMap& f);
Quotient cokernel(const GradedMap& f);
Image image(const GradedMap& f);
Subspace image_subspace(const GradedMap& f);
Subspace kernel_subspace(const GradedMap& f);

struct DirectSum {
  GradedSpace space;
  std::vector<GradedMap> injections;
  std::vector<GradedMap> projections;
  /// Global index in the sum of basis vector `index` of summand `k`.
  std::vector<std::vector<std::size_t>> embed_index;
};

/// An empty list yields the zero object of `cat`.
DirectSum direct_sum(const CategoryPtr& cat, const std::vector<GradedSpace>& spaces);

}  // namespace relproj
