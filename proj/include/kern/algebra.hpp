#pragma once

#include <memory>
#include <string>
#include <vector>

#include "kern/matrix.hpp"

namespace kern {

class AlgebraError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Finite group as a multiplication table; elements are 0..order-1.
struct GroupTable {
  int order = 0;
  std::vector<std::vector<int>> mul;  // mul[g][h] = g*h
  int identity = 0;
  std::vector<int> inverse;

  static GroupTable cyclic(int n);
  static GroupTable symmetric(int n);  // n <= 4
  static GroupTable from_table(const std::vector<std::vector<int>>& mul);

  int times(int g, int h) const { return mul[static_cast<size_t>(g)][static_cast<size_t>(h)]; }
  int inv(int g) const { return inverse[static_cast<size_t>(g)]; }
  bool abelian() const;
  void validate() const;
};

// Action of a finite group on points 0..npoints-1.
struct GroupAction {
  GroupTable group;
  int npoints = 0;
  std::vector<std::vector<int>> act;  // act[g][x] = g.x

  static GroupAction trivial(GroupTable g, int npoints);
  static GroupAction from_table(GroupTable g, int npoints, std::vector<std::vector<int>> act);

  int apply(int g, int x) const { return act[static_cast<size_t>(g)][static_cast<size_t>(x)]; }
  std::vector<int> orbit_of() const;  // orbit index per point
  int orbit_count() const;
  void validate() const;
};

class Algebra;
using AlgebraRef = std::shared_ptr<const Algebra>;

// Structural comparison with a pointer fast path.
bool same_algebra(const AlgebraRef& a, const AlgebraRef& b);

// Finite-dimensional associative unital algebra given by left-multiplication
// matrices of its basis elements.
class Algebra {
public:
  Algebra(Field field, std::vector<Matrix> left_mult, Matrix unit, std::string name);

  const Field& field() const { return field_; }
  int dim() const { return dim_; }
  const std::string& name() const { return name_; }
  bool commutative() const { return commutative_; }
  const Matrix& unit() const { return unit_; }
  const Matrix& left_mult(int i) const { return left_mult_[static_cast<size_t>(i)]; }

  // Operator of left multiplication by x.
  Matrix mult_op(const Matrix& x) const;
  Matrix mult(const Matrix& x, const Matrix& y) const { return mult_op(x) * y; }
  Matrix basis_vector(int i) const;

  // Throws with the offending basis indices when an axiom fails.
  void validate() const;

  // Structural equality (names ignored).
  bool operator==(const Algebra& o) const {
    return field_ == o.field_ && dim_ == o.dim_ && unit_ == o.unit_ && left_mult_ == o.left_mult_;
  }

  static AlgebraRef field_algebra(Field f);
  // k[x]/(f) for monic f given by coefficients c0..cn (cn = 1).
  static AlgebraRef quotient_poly(Field f, const std::vector<Scalar>& coeffs,
                                  const std::string& name = "");
  static AlgebraRef product(const AlgebraRef& a, const AlgebraRef& b);
  static AlgebraRef group_algebra(Field f, const GroupTable& g);
  static AlgebraRef functions(Field f, int npoints, const std::string& name = "");
  static AlgebraRef from_structure(Field f, int dim,
                                   const std::vector<std::vector<std::vector<Scalar>>>& c,
                                   const std::vector<Scalar>& unit, const std::string& name = "");

private:
  Field field_;
  int dim_;
  std::vector<Matrix> left_mult_;
  Matrix unit_;
  bool commutative_;
  std::string name_;
};

// Unital algebra homomorphism, stored as its matrix on basis vectors.
struct AlgebraMorphism {
  AlgebraRef source;
  AlgebraRef target;
  Matrix map;  // target.dim x source.dim

  AlgebraMorphism(AlgebraRef src, AlgebraRef tgt, Matrix m);
  static AlgebraMorphism identity(const AlgebraRef& a);

  Matrix apply(const Matrix& x) const { return map * x; }
  void validate() const;
  AlgebraMorphism then(const AlgebraMorphism& next) const;  // next o this
};

// Quotient algebra A (x)_R B through phi_a: R -> A, phi_b: R -> B; carries
// the two insertions and the pure-tensor projection.
struct TensorAlgebra {
  AlgebraRef out;
  QuotientSpace quot;          // of the A (x)_k B space, index i*dimB + j
  AlgebraMorphism left;        // A -> out
  AlgebraMorphism right;       // B -> out

  // Class of a (x) b.
  Matrix pure(const Matrix& a, const Matrix& b) const;
};

TensorAlgebra tensor_over(const AlgebraRef& a, const AlgebraRef& b, const AlgebraMorphism& phi_a,
                          const AlgebraMorphism& phi_b, const std::string& name = "");

}  // namespace kern
