#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "relproj/rational.hpp"

namespace relproj {

/// Dense row-major matrix over Q.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Q(0)) {}

  static Matrix identity(std::size_t n);
  static Matrix from_columns(std::size_t rows, const std::vector<Vec>& columns);
  static Matrix from_rows(std::size_t cols, const std::vector<Vec>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Q& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Q& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vec column(std::size_t c) const;
  Vec row(std::size_t r) const;
  void set_column(std::size_t c, const Vec& v);

  Matrix transpose() const;
  bool is_zero() const;
  bool is_identity() const;

  Matrix operator*(const Matrix& rhs) const;
  Vec operator*(const Vec& v) const;
  Matrix operator+(const Matrix& rhs) const;
  Matrix operator-(const Matrix& rhs) const;
  Matrix scaled(const Q& s) const;

  bool operator==(const Matrix& rhs) const = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Q> data_;
};

/// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(Matrix& m);

std::size_t rank(const Matrix& m);

/// Basis of {x : m x = 0}, one vector per free column, in RREF parametrization.
std::vector<Vec> nullspace(const Matrix& m);

/// Canonical basis of the span of `vectors` (each of length n): rows of the RREF, nonzero rows only.
std::vector<Vec> canonical_span(std::size_t n, const std::vector<Vec>& vectors);

/// Canonical basis of the column space of m.
std::vector<Vec> column_space(const Matrix& m);

/// Some x with m x = b, or nothing.
std::optional<Vec> solve(const Matrix& m, const Vec& b);

/// Inverse of a square matrix, or nothing when singular.
std::optional<Matrix> inverse(const Matrix& m);

Q determinant(const Matrix& m);

inline bool is_invertible(const Matrix& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

/// Coordinates of v in the basis `basis` (vectors of equal length), or nothing when v is outside the span.
std::optional<Vec> coordinates_in(const std::vector<Vec>& basis, const Vec& v);

/// Grows a span one vector at a time; add() reports whether the vector was new.
class IncrementalSpan {
 public:
  explicit IncrementalSpan(std::size_t n) : n_(n) {}
  bool add(const Vec& v);
  bool contains(const Vec& v) const;
  std::size_t dim() const { return rows_.size(); }

 private:
  Vec reduce(Vec v) const;
  std::size_t n_;
  std::vector<std::pair<std::size_t, Vec>> rows_;  // (pivot, row normalized at pivot)
};

/// Fast repeated coordinate extraction with respect to a fixed linearly independent family.
class SpanCoordinates {
 public:
  SpanCoordinates() = default;
  explicit SpanCoordinates(const std::vector<Vec>& basis);

  /// Coordinates of v; nothing if v is outside the span (when `check` is set).
  std::optional<Vec> operator()(const Vec& v, bool check = true) const;
  std::size_t dim() const { return basis_.size(); }

 private:
  std::vector<Vec> basis_;
  std::vector<std::size_t> rows_;
  Matrix inv_;
};

/// Incremental linear system over Q: rows are reduced against existing pivots as they arrive.
/// Suited to the very sparse, heavily redundant constraint sets produced by equivariance conditions.
class LinearSystem {
 public:
  explicit LinearSystem(std::size_t unknowns) : n_(unknowns) {}

  /// Adds the equation coeffs . x = rhs. Returns false once the system is known to be inconsistent.
  bool add(Vec coeffs, const Q& rhs = Q(0));

  std::size_t unknowns() const { return n_; }
  std::size_t rank() const { return pivots_.size(); }
  bool consistent() const { return consistent_; }

  /// A particular solution (free variables set to zero).
  std::optional<Vec> particular() const;
  /// Basis of the homogeneous solution space.
  std::vector<Vec> kernel() const;

 private:
  struct PivotRow {
    std::size_t col;
    Vec coeffs;
    Q rhs;
  };
  std::vector<PivotRow> back_substituted() const;

  std::size_t n_;
  std::vector<PivotRow> pivots_;
  std::vector<bool> is_pivot_col_ = std::vector<bool>(n_, false);
  bool consistent_ = true;
};

}  // namespace relproj
