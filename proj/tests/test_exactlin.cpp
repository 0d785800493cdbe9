#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kern/matrix.hpp"
#include "kern/rng.hpp"

using namespace kern;

namespace {

const Field Q = Field::rationals();

Matrix mat(Field f, std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<std::vector<Scalar>> r;
  for (const auto& row : rows) {
    std::vector<Scalar> v;
    for (long x : row) v.emplace_back(x);
    r.push_back(std::move(v));
  }
  return Matrix::from_rows(f, r);
}

}  // namespace

TEST_CASE("field arithmetic is exact and canonical") {
  CHECK(Q.parse("2/4") == Scalar(1, 2));
  CHECK(Field::to_string(Q.parse("-6/4")) == "-3/2");
  Field f5 = Field::prime(5);
  CHECK(f5.parse("7") == Scalar(2));
  CHECK(f5.inv(Scalar(2)) == Scalar(3));
  CHECK(f5.reduce(Scalar(1, 2)) == Scalar(3));  // 2^{-1} = 3 mod 5
  CHECK_THROWS_AS(Field::prime(6), FieldError);
}

TEST_CASE("kernel_basis dimensions") {
  CHECK(Matrix::zero(Q, 2, 2).kernel_basis().cols() == 2);
  CHECK(Matrix::identity(Q, 3).kernel_basis().cols() == 0);

  Matrix a = mat(Q, {{1, 1}, {2, 2}});
  Matrix k = a.kernel_basis();
  REQUIRE(k.cols() == 1);
  // spanned by (1,-1) up to scale
  CHECK(Q.mul(k.at(0, 0), Scalar(-1)) == k.at(1, 0));
  CHECK((a * k).is_zero());
}

TEST_CASE("solve") {
  Matrix id = Matrix::identity(Q, 3);
  Matrix b = mat(Q, {{4}, {-1}, {7}});
  CHECK(*id.solve(b) == b);

  Matrix a = mat(Q, {{1, 0}, {0, 0}});
  CHECK_FALSE(a.solve(mat(Q, {{0}, {1}})).has_value());

  Matrix two = mat(Q, {{2}});
  auto x = two.solve(mat(Q, {{1}}));
  REQUIRE(x.has_value());
  CHECK(x->at(0, 0) == Scalar(1, 2));
}

TEST_CASE("split_idempotent basics") {
  auto [s0, r0] = split_idempotent(Matrix::zero(Q, 3, 3));
  CHECK(s0.cols() == 0);
  auto [s1, r1] = split_idempotent(Matrix::identity(Q, 2));
  CHECK(s1.is_identity());
  CHECK(r1.is_identity());

  Matrix e = mat(Q, {{1, 0}, {0, 0}});
  auto [sigma, rho] = split_idempotent(e);
  CHECK(sigma.cols() == 1);
  CHECK((rho * sigma).is_identity());
  CHECK(sigma * rho == e);

  CHECK_THROWS_AS(split_idempotent(mat(Q, {{1, 1}, {0, 1}})), FieldError);
}

TEST_CASE("random idempotents split exactly") {
  for (auto field : {Q, Field::prime(2), Field::prime(5)}) {
    Rng rng(42);
    for (int trial = 0; trial < 20; ++trial) {
      int n = 1 + rng.below(5);
      int r = rng.below(n + 1);
      Matrix p = rng.invertible_matrix(field, n);
      Matrix diag(field, n, n);
      for (int i = 0; i < r; ++i) diag.set(i, i, Scalar(1));
      Matrix e = p * diag * *p.inverse();
      REQUIRE(e * e == e);
      auto [sigma, rho] = split_idempotent(e);
      CHECK(sigma.cols() == r);
      CHECK((rho * sigma).is_identity());
      CHECK(sigma * rho == e);
    }
  }
}

TEST_CASE("rank-nullity and solvability iff in column space") {
  for (auto field : {Q, Field::prime(3)}) {
    Rng rng(7);
    for (int trial = 0; trial < 30; ++trial) {
      int rows = rng.below(5), cols = rng.below(5);
      Matrix a = rng.matrix(field, rows, cols);
      CHECK(a.rank() + a.kernel_basis().cols() == cols);

      Matrix b = rng.matrix(field, rows, 1);
      bool solvable = a.solve(b).has_value();
      bool in_col_space = a.hstack(b).rank() == a.rank();
      CHECK(solvable == in_col_space);
      if (solvable) CHECK(a * *a.solve(b) == b);
    }
  }
}

TEST_CASE("associativity is exact on random triples") {
  Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix a = rng.matrix(Q, 3, 4), b = rng.matrix(Q, 4, 2), c = rng.matrix(Q, 2, 5);
    CHECK((a * b) * c == a * (b * c));
  }
}

TEST_CASE("linear feasibility") {
  SUBCASE("vacuous system has the zero witness") {
    LinearSystem sys(Q, 1);
    auto w = sys.solve();
    REQUIRE(w.has_value());
    CHECK(w->at(0, 0) == 0);
  }
  SUBCASE("contradiction") {
    LinearSystem sys(Q, 1);
    sys.add_equation({Scalar(1)}, Scalar(1));
    sys.add_equation({Scalar(1)}, Scalar(2));
    CHECK_FALSE(sys.solve().has_value());
  }
  SUBCASE("retraction of the diagonal embedding") {
    // sigma o incl = id for incl: Q -> Q^2, x |-> (x, x).
    LinearSystem sys(Q, 2);
    sys.add_equation({Scalar(1), Scalar(1)}, Scalar(1));
    auto w = sys.solve();
    REQUIRE(w.has_value());
    CHECK(w->at(0, 0) + w->at(1, 0) == Scalar(1));
  }
}

TEST_CASE("quotient space projection/section") {
  // Quotient of Q^3 by span{(1,1,0)}.
  Matrix w = mat(Q, {{1}, {1}, {0}});
  QuotientSpace q = quotient_by(w);
  CHECK(q.dim() == 2);
  CHECK((q.proj * q.sect).is_identity());
  CHECK((q.proj * w).is_zero());
}

TEST_CASE("degenerate shapes behave as zero objects") {
  Matrix a(Q, 0, 3);
  CHECK(a.rank() == 0);
  CHECK(a.kernel_basis().cols() == 3);
  Matrix b(Q, 3, 0);
  CHECK(b.rank() == 0);
  auto x = b.solve(Matrix(Q, 3, 1));
  REQUIRE(x.has_value());
  CHECK(x->rows() == 0);
  Matrix prod = b * Matrix(Q, 0, 2);
  CHECK(prod.rows() == 3);
  CHECK(prod.cols() == 2);
  CHECK(prod.is_zero());
}
