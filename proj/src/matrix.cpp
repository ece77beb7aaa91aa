#include "relproj/matrix.hpp"

#include <sstream>

namespace relproj {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_columns(std::size_t rows, const std::vector<Vec>& columns) {
  Matrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) m.set_column(c, columns[c]);
  return m;
}

Matrix Matrix::from_rows(std::size_t cols, const std::vector<Vec>& rows) {
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::logic_error("Matrix::from_rows: ragged input");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Vec Matrix::column(std::size_t c) const {
  Vec v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

Vec Matrix::row(std::size_t r) const {
  return Vec(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
             data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

void Matrix::set_column(std::size_t c, const Vec& v) {
  if (v.size() != rows_) throw std::logic_error("Matrix::set_column: size mismatch");
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool Matrix::is_zero() const {
  for (const auto& x : data_)
    if (sgn(x) != 0) return false;
  return true;
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if ((*this)(r, c) != (r == c ? 1 : 0)) return false;
  return true;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::logic_error("Matrix::operator*: shape mismatch");
  Matrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Q& a = (*this)(i, k);
      if (sgn(a) == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j)
        if (sgn(rhs(k, j)) != 0) add_product(out(i, j), a, rhs(k, j));
    }
  return out;
}

Vec Matrix::operator*(const Vec& v) const {
  if (v.size() != cols_) throw std::logic_error("Matrix::operator*(Vec): shape mismatch");
  Vec out(rows_, Q(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k)
      if (sgn(v[k]) != 0 && sgn((*this)(i, k)) != 0) add_product(out[i], (*this)(i, k), v[k]);
  return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::logic_error("Matrix::operator+: shape mismatch");
  Matrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += rhs.data_[i];
  return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::logic_error("Matrix::operator-: shape mismatch");
  Matrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= rhs.data_[i];
  return out;
}

Matrix Matrix::scaled(const Q& s) const {
  Matrix out = *this;
  for (auto& x : out.data_) x *= s;
  return out;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ",[" : "[");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? "," : "") << format_rational((*this)(r, c));
    os << ']';
  }
  os << ']';
  return os.str();
}

std::vector<std::size_t> rref(Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && sgn(m(sel, col)) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row)
      for (std::size_t c = 0; c < m.cols(); ++c) swap(m(sel, c), m(row, c));
    const Q inv = 1 / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || sgn(m(r, col)) == 0) continue;
      const Q f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c)
        if (sgn(m(row, c)) != 0) sub_product(m(r, c), f, m(row, c));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t rank(const Matrix& m) {
  Matrix copy = m;
  return rref(copy).size();
}

std::vector<Vec> nullspace(const Matrix& m) {
  Matrix r = m;
  const auto pivots = rref(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec v(m.cols(), Q(0));
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Vec> canonical_span(std::size_t n, const std::vector<Vec>& vectors) {
  if (vectors.empty()) return {};
  Matrix m = Matrix::from_rows(n, vectors);
  const auto pivots = rref(m);
  std::vector<Vec> out;
  out.reserve(pivots.size());
  for (std::size_t i = 0; i < pivots.size(); ++i) out.push_back(m.row(i));
  return out;
}

std::vector<Vec> column_space(const Matrix& m) {
  std::vector<Vec> cols;
  for (std::size_t c = 0; c < m.cols(); ++c) cols.push_back(m.column(c));
  return canonical_span(m.rows(), cols);
}

std::optional<Vec> solve(const Matrix& m, const Vec& b) {
  if (b.size() != m.rows()) throw std::logic_error("solve: shape mismatch");
  LinearSystem sys(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    if (!sys.add(m.row(r), b[r])) return std::nullopt;
  return sys.particular();
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const std::size_t n = m.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = 1;
  }
  const auto pivots = rref(aug);
  if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) return std::nullopt;
  Matrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = aug(r, n + c);
  return inv;
}

Q determinant(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::logic_error("determinant: non-square matrix");
  Matrix a = m;
  const std::size_t n = a.rows();
  Q det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = col;
    while (sel < n && sgn(a(sel, col)) == 0) ++sel;
    if (sel == n) return Q(0);
    if (sel != col) {
      for (std::size_t c = 0; c < n; ++c) swap(a(sel, c), a(col, c));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (sgn(a(r, col)) == 0) continue;
      const Q f = a(r, col) / a(col, col);
      for (std::size_t c = col; c < n; ++c) sub_product(a(r, c), f, a(col, c));
    }
  }
  return det;
}

std::optional<Vec> coordinates_in(const std::vector<Vec>& basis, const Vec& v) {
  if (basis.empty()) return is_zero(v) ? std::optional<Vec>(Vec{}) : std::nullopt;
  return solve(Matrix::from_columns(v.size(), basis), v);
}

Vec IncrementalSpan::reduce(Vec v) const {
  for (const auto& [pivot, row] : rows_) {
    const Q f = v[pivot];
    if (sgn(f) != 0) axpy(v, -f, row);
  }
  return v;
}

bool IncrementalSpan::add(const Vec& v) {
  if (v.size() != n_) throw std::logic_error("IncrementalSpan::add: wrong length");
  Vec r = reduce(v);
  std::size_t lead = 0;
  while (lead < n_ && sgn(r[lead]) == 0) ++lead;
  if (lead == n_) return false;
  const Q inv = 1 / r[lead];
  for (auto& x : r) x *= inv;
  rows_.emplace_back(lead, std::move(r));
  return true;
}

bool IncrementalSpan::contains(const Vec& v) const { return is_zero(reduce(v)); }

SpanCoordinates::SpanCoordinates(const std::vector<Vec>& basis) : basis_(basis) {
  if (basis_.empty()) return;
  const std::size_t n = basis_.front().size();
  // Rows of the basis matrix that form an invertible square submatrix.
  Matrix t = Matrix::from_rows(n, basis_);  // k x n
  Matrix copy = t;
  rows_ = rref(copy);
  if (rows_.size() != basis_.size()) throw std::logic_error("SpanCoordinates: basis is linearly dependent");
  Matrix sub(basis_.size(), basis_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (std::size_t k = 0; k < basis_.size(); ++k) sub(i, k) = t(k, rows_[i]);
  auto inv = inverse(sub);
  if (!inv) throw std::logic_error("SpanCoordinates: pivot submatrix singular");
  inv_ = std::move(*inv);
}

std::optional<Vec> SpanCoordinates::operator()(const Vec& v, bool check) const {
  if (basis_.empty()) {
    if (check && !is_zero(v)) return std::nullopt;
    return Vec{};
  }
  Vec picked(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) picked[i] = v[rows_[i]];
  Vec c = inv_ * picked;
  if (check) {
    Vec recon(v.size(), Q(0));
    for (std::size_t k = 0; k < basis_.size(); ++k) axpy(recon, c[k], basis_[k]);
    if (recon != v) return std::nullopt;
  }
  return c;
}

bool LinearSystem::add(Vec coeffs, const Q& rhs) {
  if (coeffs.size() != n_) throw std::logic_error("LinearSystem::add: wrong arity");
  Q b = rhs;
  for (const auto& p : pivots_) {
    const Q f = coeffs[p.col];
    if (sgn(f) == 0) continue;
    for (std::size_t c = 0; c < n_; ++c)
      if (sgn(p.coeffs[c]) != 0) sub_product(coeffs[c], f, p.coeffs[c]);
    sub_product(b, f, p.rhs);
  }
  std::size_t lead = 0;
  while (lead < n_ && sgn(coeffs[lead]) == 0) ++lead;
  if (lead == n_) {
    if (sgn(b) != 0) consistent_ = false;
    return consistent_;
  }
  const Q inv = 1 / coeffs[lead];
  for (std::size_t c = lead; c < n_; ++c)
    if (sgn(coeffs[c]) != 0) coeffs[c] *= inv;
  b *= inv;
  is_pivot_col_[lead] = true;
  pivots_.push_back({lead, std::move(coeffs), std::move(b)});
  return consistent_;
}

std::vector<LinearSystem::PivotRow> LinearSystem::back_substituted() const {
  // Each row is zero at the pivot columns of earlier rows; clearing later pivots
  // from earlier rows, walking backwards, yields the reduced form.
  auto rows = pivots_;
  for (std::size_t k = rows.size(); k-- > 0;) {
    const auto& pk = rows[k];
    for (std::size_t j = 0; j < k; ++j) {
      const Q f = rows[j].coeffs[pk.col];
      if (sgn(f) == 0) continue;
      for (std::size_t c = 0; c < n_; ++c)
        if (sgn(pk.coeffs[c]) != 0) sub_product(rows[j].coeffs[c], f, pk.coeffs[c]);
      sub_product(rows[j].rhs, f, pk.rhs);
    }
  }
  return rows;
}

std::optional<Vec> LinearSystem::particular() const {
  if (!consistent_) return std::nullopt;
  Vec x(n_, Q(0));
  for (const auto& p : back_substituted()) x[p.col] = p.rhs;
  return x;
}

std::vector<Vec> LinearSystem::kernel() const {
  const auto rows = back_substituted();
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < n_; ++free) {
    if (is_pivot_col_[free]) continue;
    Vec v(n_, Q(0));
    v[free] = 1;
    for (const auto& p : rows) v[p.col] = -p.coeffs[free];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace relproj
