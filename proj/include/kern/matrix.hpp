#pragma once

#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "kern/field.hpp"

namespace kern {

struct Echelon;

// Dense matrix with exact entries over a fixed field. Degenerate shapes
// (0 x n, n x 0) are legal and behave as zero objects.
class Matrix {
public:
  Matrix(Field field, int rows, int cols);
  static Matrix identity(Field field, int n);
  static Matrix zero(Field field, int rows, int cols) { return Matrix(field, rows, cols); }
  static Matrix column(Field field, const std::vector<Scalar>& entries);
  static Matrix from_rows(Field field, const std::vector<std::vector<Scalar>>& rows);

  const Field& field() const { return field_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  const Scalar& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }
  void set(int i, int j, const Scalar& v);

  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Matrix operator-() const;
  Matrix scaled(const Scalar& c) const;
  Matrix transpose() const;

  bool is_zero() const;
  bool is_identity() const;
  bool is_square() const { return rows_ == cols_; }

  // Column j as a rows x 1 matrix.
  Matrix col(int j) const;
  std::vector<Scalar> col_vec(int j) const;

  Matrix hstack(const Matrix& o) const;
  Matrix vstack(const Matrix& o) const;
  Matrix submatrix(int r0, int c0, int nrows, int ncols) const;

  // Kronecker product; (A (x) B)(i*b_rows+k, j*b_cols+l) = A(i,j) B(k,l).
  Matrix kronecker(const Matrix& o) const;

  // Reduced row echelon form. Pivot choice: first nonzero entry in column
  // order, so results are deterministic.
  Echelon echelon() const;

  int rank() const;

  // Basis of {x : A x = 0}, columns of the result. Deterministic: the free
  // variable of each basis vector carries coefficient 1.
  Matrix kernel_basis() const;

  // Canonical basis of the column space (reduced echelon of the transpose,
  // transposed back), columns of the result.
  Matrix column_space_basis() const;

  // Solves A X = B exactly; nullopt if inconsistent.
  std::optional<Matrix> solve(const Matrix& b) const;
  std::optional<Matrix> inverse() const;
  bool is_invertible() const;

private:
  Field field_;
  int rows_, cols_;
  std::vector<Scalar> a_;
};

struct Echelon {
  Matrix rref;
  std::vector<int> pivot_cols;
  int rank;
};

// Splits an idempotent e = e^2 into sigma (ambient <- image) and rho
// (image <- ambient) with rho*sigma = id and sigma*rho = e.
std::pair<Matrix, Matrix> split_idempotent(const Matrix& e);

// A subspace of K^ambient with a canonical basis (columns).
class Subspace {
public:
  Subspace(Field field, int ambient);
  static Subspace from_spanning(const Matrix& spanning_cols);

  const Field& field() const { return basis_.field(); }
  int ambient() const { return ambient_; }
  int dim() const { return basis_.cols(); }
  const Matrix& basis() const { return basis_; }

  bool contains(const Matrix& v) const;
  // Coordinates of v in the canonical basis; nullopt if not contained.
  std::optional<Matrix> coordinates(const Matrix& v) const;

  bool operator==(const Subspace& o) const { return ambient_ == o.ambient_ && basis_ == o.basis_; }

private:
  int ambient_;
  Matrix basis_;
};

// Affine system over a vector of unknowns: rows (c, r) meaning c . x = r.
class LinearSystem {
public:
  LinearSystem(Field field, int unknowns);

  int unknowns() const { return unknowns_; }
  int equations() const { return static_cast<int>(rhs_.size()); }
  void add_equation(const std::vector<Scalar>& coeffs, const Scalar& rhs);
  // All entries of lhs - rhs must vanish; both matrices are linear
  // expressions in the unknowns evaluated via `columns`, see below.
  void add_matrix_equation(const Matrix& coeff_columns, const Matrix& rhs);

  // Witness satisfying every equation, or nullopt.
  std::optional<Matrix> solve() const;
  // Solution space of the homogeneous part (needs all rhs zero).
  Matrix homogeneous_kernel() const;

private:
  Field field_;
  int unknowns_;
  std::vector<Scalar> coeffs_;  // row-major, equations x unknowns
  std::vector<Scalar> rhs_;
};

// Quotient K^N / W presented by a projection with a chosen section,
// proj * sect = id. Canonical: built from the unique RREF of the row space
// of the spanning set, so independent of spanning order.
struct QuotientSpace {
  Matrix proj;  // q x N
  Matrix sect;  // N x q
  int dim() const { return proj.rows(); }
};
QuotientSpace quotient_by(const Matrix& spanning_cols);

using SparseVec = std::map<int, Scalar>;
// Same quotient from sparse spanning vectors; avoids materializing large
// relation matrices.
QuotientSpace quotient_by_sparse(Field field, int width, const std::vector<SparseVec>& spanning);

// proj * (I_blocks (x) u) without materializing the Kronecker factor.
Matrix mul_block_diag(const Matrix& proj, int blocks, const Matrix& u);
// proj * (L (x) I_m) without materializing the Kronecker factor.
Matrix mul_kron_left(const Matrix& proj, const Matrix& l, int m);
// m * sect for unit-column sections (falls back to a general product).
Matrix select_columns(const Matrix& m, const Matrix& sect);

// Matrix of a linear operator K^in -> K^out obtained by evaluating `op` on
// the standard basis e_0..e_{in-1}.
Matrix matrix_of_operator(Field field, int in_dim, int out_dim,
                          const std::function<Matrix(const Matrix&)>& op);

// Row-major vectorization: vec(M) stacks rows, so index = i*cols + j.
Matrix vec_rm(const Matrix& m);
Matrix unvec_rm(const Matrix& v, int rows, int cols);

}  // namespace kern
