#include "kern/matrix.hpp"

#include <sstream>

namespace kern {

namespace {

[[noreturn]] void shape_error(const std::string& what) {
  throw FieldError("matrix shape mismatch in " + what);
}

}  // namespace

Matrix::Matrix(Field field, int rows, int cols)
    : field_(field), rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, Scalar(0)) {
  if (rows < 0 || cols < 0) shape_error("construction");
}

Matrix Matrix::identity(Field field, int n) {
  Matrix m(field, n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, Scalar(1));
  return m;
}

Matrix Matrix::column(Field field, const std::vector<Scalar>& entries) {
  Matrix m(field, static_cast<int>(entries.size()), 1);
  for (int i = 0; i < m.rows(); ++i) m.set(i, 0, entries[i]);
  return m;
}

Matrix Matrix::from_rows(Field field, const std::vector<std::vector<Scalar>>& rows) {
  int r = static_cast<int>(rows.size());
  int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
  Matrix m(field, r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c) shape_error("from_rows");
    for (int j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

void Matrix::set(int i, int j, const Scalar& v) {
  a_[static_cast<size_t>(i) * cols_ + j] = field_.reduce(v);
}

bool Matrix::operator==(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || !(field_ == o.field_)) return false;
  return a_ == o.a_;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) shape_error("addition");
  Matrix r(field_, rows_, cols_);
  for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = field_.add(a_[k], o.a_[k]);
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) shape_error("subtraction");
  Matrix r(field_, rows_, cols_);
  for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = field_.sub(a_[k], o.a_[k]);
  return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) shape_error("multiplication");
  Matrix r(field_, rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Scalar& aik = at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < o.cols_; ++j) {
        const Scalar& b = o.at(k, j);
        if (b == 0) continue;
        r.a_[static_cast<size_t>(i) * o.cols_ + j] += aik * b;
      }
    }
  for (auto& x : r.a_) x = field_.reduce(x);
  return r;
}

Matrix Matrix::operator-() const {
  Matrix r(field_, rows_, cols_);
  for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = field_.neg(a_[k]);
  return r;
}

Matrix Matrix::scaled(const Scalar& c) const {
  Matrix r(field_, rows_, cols_);
  for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = field_.mul(a_[k], c);
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(field_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.set(j, i, at(i, j));
  return r;
}

bool Matrix::is_zero() const {
  for (const auto& x : a_)
    if (x != 0) return false;
  return true;
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (at(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

Matrix Matrix::col(int j) const {
  Matrix r(field_, rows_, 1);
  for (int i = 0; i < rows_; ++i) r.set(i, 0, at(i, j));
  return r;
}

std::vector<Scalar> Matrix::col_vec(int j) const {
  std::vector<Scalar> v(static_cast<size_t>(rows_));
  for (int i = 0; i < rows_; ++i) v[i] = at(i, j);
  return v;
}

Matrix Matrix::hstack(const Matrix& o) const {
  if (rows_ != o.rows_) shape_error("hstack");
  Matrix r(field_, rows_, cols_ + o.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) r.set(i, j, at(i, j));
    for (int j = 0; j < o.cols_; ++j) r.set(i, cols_ + j, o.at(i, j));
  }
  return r;
}

Matrix Matrix::vstack(const Matrix& o) const {
  if (cols_ != o.cols_) shape_error("vstack");
  Matrix r(field_, rows_ + o.rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.set(i, j, at(i, j));
  for (int i = 0; i < o.rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.set(rows_ + i, j, o.at(i, j));
  return r;
}

Matrix Matrix::submatrix(int r0, int c0, int nrows, int ncols) const {
  Matrix r(field_, nrows, ncols);
  for (int i = 0; i < nrows; ++i)
    for (int j = 0; j < ncols; ++j) r.set(i, j, at(r0 + i, c0 + j));
  return r;
}

Matrix Matrix::kronecker(const Matrix& o) const {
  Matrix r(field_, rows_ * o.rows_, cols_ * o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      const Scalar& a = at(i, j);
      if (a == 0) continue;
      for (int k = 0; k < o.rows_; ++k)
        for (int l = 0; l < o.cols_; ++l)
          r.set(i * o.rows_ + k, j * o.cols_ + l, field_.mul(a, o.at(k, l)));
    }
  return r;
}

Echelon Matrix::echelon() const {
  Matrix m = *this;
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < cols_ && row < rows_; ++col) {
    int piv = -1;
    for (int i = row; i < rows_; ++i)
      if (m.at(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < cols_; ++j) {
        Scalar tmp = m.at(row, j);
        m.set(row, j, m.at(piv, j));
        m.set(piv, j, tmp);
      }
    Scalar inv = field_.inv(m.at(row, col));
    for (int j = col; j < cols_; ++j) m.set(row, j, field_.mul(m.at(row, j), inv));
    for (int i = 0; i < rows_; ++i) {
      if (i == row) continue;
      Scalar f = m.at(i, col);
      if (f == 0) continue;
      for (int j = col; j < cols_; ++j)
        m.set(i, j, field_.sub(m.at(i, j), field_.mul(f, m.at(row, j))));
    }
    pivots.push_back(col);
    ++row;
  }
  return Echelon{std::move(m), std::move(pivots), row};
}

int Matrix::rank() const { return echelon().rank; }

Matrix Matrix::kernel_basis() const {
  Echelon e = echelon();
  std::vector<bool> is_pivot(static_cast<size_t>(cols_), false);
  for (int p : e.pivot_cols) is_pivot[static_cast<size_t>(p)] = true;
  int nullity = cols_ - e.rank;
  Matrix basis(field_, cols_, nullity);
  int bcol = 0;
  for (int j = 0; j < cols_; ++j) {
    if (is_pivot[static_cast<size_t>(j)]) continue;
    basis.set(j, bcol, Scalar(1));
    for (int r = 0; r < e.rank; ++r)
      basis.set(e.pivot_cols[static_cast<size_t>(r)], bcol, field_.neg(e.rref.at(r, j)));
    ++bcol;
  }
  return basis;
}

Matrix Matrix::column_space_basis() const {
  Echelon e = transpose().echelon();
  Matrix basis(field_, rows_, e.rank);
  for (int r = 0; r < e.rank; ++r)
    for (int j = 0; j < rows_; ++j) basis.set(j, r, e.rref.at(r, j));
  return basis;
}

std::optional<Matrix> Matrix::solve(const Matrix& b) const {
  if (b.rows() != rows_) shape_error("solve");
  Matrix aug = hstack(b);
  Echelon e = aug.echelon();
  // Inconsistent iff some pivot lands in the rhs block.
  for (int p : e.pivot_cols)
    if (p >= cols_) return std::nullopt;
  Matrix x(field_, cols_, b.cols());
  for (int r = 0; r < e.rank; ++r) {
    int p = e.pivot_cols[static_cast<size_t>(r)];
    for (int j = 0; j < b.cols(); ++j) x.set(p, j, e.rref.at(r, cols_ + j));
  }
  return x;
}

std::optional<Matrix> Matrix::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  auto x = solve(identity(field_, rows_));
  if (!x) return std::nullopt;
  if (!((*x) * (*this)).is_identity()) return std::nullopt;
  return x;
}

bool Matrix::is_invertible() const {
  return rows_ == cols_ && rank() == rows_;
}

std::pair<Matrix, Matrix> split_idempotent(const Matrix& e) {
  if (!e.is_square()) throw FieldError("split_idempotent: matrix is not square");
  if (e * e != e) throw FieldError("split_idempotent: matrix is not idempotent");
  Matrix sigma = e.column_space_basis();
  auto rho = sigma.solve(e);
  if (!rho) throw FieldError("split_idempotent: internal solve failed");
  return {sigma, *rho};
}

Subspace::Subspace(Field field, int ambient) : ambient_(ambient), basis_(field, ambient, 0) {}

Subspace Subspace::from_spanning(const Matrix& spanning_cols) {
  Subspace s(spanning_cols.field(), spanning_cols.rows());
  s.basis_ = spanning_cols.column_space_basis();
  return s;
}

bool Subspace::contains(const Matrix& v) const {
  return basis_.solve(v).has_value();
}

std::optional<Matrix> Subspace::coordinates(const Matrix& v) const {
  return basis_.solve(v);
}

LinearSystem::LinearSystem(Field field, int unknowns) : field_(field), unknowns_(unknowns) {}

void LinearSystem::add_equation(const std::vector<Scalar>& coeffs, const Scalar& rhs) {
  if (static_cast<int>(coeffs.size()) != unknowns_)
    throw FieldError("linear system: coefficient count mismatch");
  for (const auto& c : coeffs) coeffs_.push_back(field_.reduce(c));
  rhs_.push_back(field_.reduce(rhs));
}

void LinearSystem::add_matrix_equation(const Matrix& coeff_columns, const Matrix& rhs) {
  if (coeff_columns.cols() != unknowns_ || coeff_columns.rows() != rhs.rows() * rhs.cols())
    throw FieldError("linear system: matrix equation shape mismatch");
  for (int i = 0; i < coeff_columns.rows(); ++i) {
    for (int j = 0; j < unknowns_; ++j) coeffs_.push_back(coeff_columns.at(i, j));
    rhs_.push_back(rhs.at(i / rhs.cols(), i % rhs.cols()));
  }
}

std::optional<Matrix> LinearSystem::solve() const {
  int m = equations();
  Matrix a(field_, m, unknowns_);
  Matrix b(field_, m, 1);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < unknowns_; ++j)
      a.set(i, j, coeffs_[static_cast<size_t>(i) * unknowns_ + j]);
    b.set(i, 0, rhs_[static_cast<size_t>(i)]);
  }
  return a.solve(b);
}

Matrix LinearSystem::homogeneous_kernel() const {
  int m = equations();
  for (const auto& r : rhs_)
    if (r != 0) throw FieldError("homogeneous_kernel: system has nonzero rhs");
  Matrix a(field_, m, unknowns_);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < unknowns_; ++j)
      a.set(i, j, coeffs_[static_cast<size_t>(i) * unknowns_ + j]);
  return a.kernel_basis();
}

namespace {

// Incremental sparse row reduction; finalize() returns the unique RREF rows
// of the inserted row space, keyed by pivot column.
class SparseRref {
public:
  explicit SparseRref(Field field) : field_(field) {}

  void insert(SparseVec row) {
    for (auto it = row.begin(); it != row.end();) {
      if (field_.is_zero(it->second)) {
        it = row.erase(it);
        continue;
      }
      auto hit = rows_.find(it->first);
      if (hit == rows_.end()) break;
      Scalar c = it->second;
      for (const auto& [col, val] : hit->second) {
        auto slot = row.try_emplace(col, Scalar(0)).first;
        slot->second = field_.sub(slot->second, field_.mul(c, val));
      }
      it = row.begin();
    }
    while (!row.empty() && field_.is_zero(row.begin()->second)) row.erase(row.begin());
    if (row.empty()) return;
    Scalar inv = field_.inv(row.begin()->second);
    SparseVec norm;
    for (const auto& [col, val] : row) {
      Scalar v = field_.mul(val, inv);
      if (!field_.is_zero(v)) norm.emplace(col, std::move(v));
    }
    rows_.emplace(norm.begin()->first, std::move(norm));
  }

  // Back-eliminate pivot columns from the other rows.
  std::map<int, SparseVec> finalize() {
    for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
      for (auto& [piv, row] : rows_) {
        if (piv == it->first) continue;
        auto hit = row.find(it->first);
        if (hit == row.end()) continue;
        Scalar c = hit->second;
        for (const auto& [col, val] : it->second) {
          auto slot = row.try_emplace(col, Scalar(0)).first;
          slot->second = field_.sub(slot->second, field_.mul(c, val));
          if (field_.is_zero(slot->second)) row.erase(slot);
        }
      }
    }
    return std::move(rows_);
  }

private:
  Field field_;
  std::map<int, SparseVec> rows_;
};

QuotientSpace quotient_from_rref(Field f, int n, const std::map<int, SparseVec>& rref) {
  int rank = static_cast<int>(rref.size());
  int q = n - rank;
  std::vector<bool> is_pivot(static_cast<size_t>(n), false);
  for (const auto& [piv, row] : rref) is_pivot[static_cast<size_t>(piv)] = true;
  std::vector<int> free_index(static_cast<size_t>(n), -1);
  int idx = 0;
  for (int k = 0; k < n; ++k)
    if (!is_pivot[static_cast<size_t>(k)]) free_index[static_cast<size_t>(k)] = idx++;

  // e_j reduces to e_j (free) or to -row_j off the pivot (pivot column).
  Matrix proj(f, q, n);
  for (int j = 0; j < n; ++j) {
    auto hit = rref.find(j);
    if (hit == rref.end()) {
      proj.set(free_index[static_cast<size_t>(j)], j, Scalar(1));
      continue;
    }
    for (const auto& [col, val] : hit->second) {
      if (col == j) continue;
      proj.set(free_index[static_cast<size_t>(col)], j, f.neg(val));
    }
  }
  Matrix sect(f, n, q);
  for (int k = 0; k < n; ++k)
    if (!is_pivot[static_cast<size_t>(k)]) sect.set(k, free_index[static_cast<size_t>(k)], Scalar(1));
  return QuotientSpace{std::move(proj), std::move(sect)};
}

}  // namespace

QuotientSpace quotient_by(const Matrix& spanning_cols) {
  std::vector<SparseVec> rows;
  for (int j = 0; j < spanning_cols.cols(); ++j) {
    SparseVec row;
    for (int i = 0; i < spanning_cols.rows(); ++i)
      if (spanning_cols.at(i, j) != 0) row.emplace(i, spanning_cols.at(i, j));
    rows.push_back(std::move(row));
  }
  return quotient_by_sparse(spanning_cols.field(), spanning_cols.rows(), rows);
}

QuotientSpace quotient_by_sparse(Field field, int width, const std::vector<SparseVec>& spanning) {
  SparseRref rref(field);
  for (const auto& row : spanning) rref.insert(row);
  return quotient_from_rref(field, width, rref.finalize());
}

Matrix mul_block_diag(const Matrix& proj, int blocks, const Matrix& u) {
  const Field& f = proj.field();
  int ru = u.rows(), cu = u.cols();
  if (proj.cols() != blocks * ru) throw FieldError("mul_block_diag: shape mismatch");
  Matrix out(f, proj.rows(), blocks * cu);
  for (int r = 0; r < proj.rows(); ++r)
    for (int i = 0; i < blocks; ++i)
      for (int k = 0; k < ru; ++k) {
        const Scalar& p = proj.at(r, i * ru + k);
        if (p == 0) continue;
        for (int j = 0; j < cu; ++j) {
          const Scalar& x = u.at(k, j);
          if (x == 0) continue;
          out.set(r, i * cu + j, f.add(out.at(r, i * cu + j), f.mul(p, x)));
        }
      }
  return out;
}

Matrix mul_kron_left(const Matrix& proj, const Matrix& l, int m) {
  const Field& f = proj.field();
  int s = l.rows();
  if (l.rows() != l.cols() || proj.cols() != s * m) throw FieldError("mul_kron_left: shape mismatch");
  Matrix out(f, proj.rows(), s * m);
  for (int r = 0; r < proj.rows(); ++r)
    for (int k = 0; k < s; ++k)
      for (int j = 0; j < m; ++j) {
        const Scalar& p = proj.at(r, k * m + j);
        if (p == 0) continue;
        for (int i = 0; i < s; ++i) {
          const Scalar& x = l.at(k, i);
          if (x == 0) continue;
          out.set(r, i * m + j, f.add(out.at(r, i * m + j), f.mul(p, x)));
        }
      }
  return out;
}

Matrix select_columns(const Matrix& m, const Matrix& sect) {
  Matrix out(m.field(), m.rows(), sect.cols());
  for (int j = 0; j < sect.cols(); ++j) {
    int hit = -1;
    for (int i = 0; i < sect.rows(); ++i)
      if (sect.at(i, j) != 0) {
        if (hit >= 0 || sect.at(i, j) != 1) return m * sect;  // general fallback
        hit = i;
      }
    if (hit < 0) return m * sect;
    for (int i = 0; i < m.rows(); ++i) out.set(i, j, m.at(i, hit));
  }
  return out;
}

Matrix matrix_of_operator(Field field, int in_dim, int out_dim,
                          const std::function<Matrix(const Matrix&)>& op) {
  Matrix result(field, out_dim, in_dim);
  for (int j = 0; j < in_dim; ++j) {
    Matrix e(field, in_dim, 1);
    e.set(j, 0, Scalar(1));
    Matrix img = op(e);
    if (img.rows() != out_dim || img.cols() != 1)
      throw FieldError("matrix_of_operator: operator output shape mismatch");
    for (int i = 0; i < out_dim; ++i) result.set(i, j, img.at(i, 0));
  }
  return result;
}

Matrix vec_rm(const Matrix& m) {
  Matrix v(m.field(), m.rows() * m.cols(), 1);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) v.set(i * m.cols() + j, 0, m.at(i, j));
  return v;
}

Matrix unvec_rm(const Matrix& v, int rows, int cols) {
  Matrix m(v.field(), rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.set(i, j, v.at(i * cols + j, 0));
  return m;
}

}  // namespace kern
