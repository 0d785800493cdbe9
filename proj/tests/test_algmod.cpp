#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kern/module.hpp"
#include "kern/rng.hpp"

using namespace kern;

namespace {

const Field Q = Field::rationals();

// k[x]/(x^2 - 2)
AlgebraRef sqrt2(Field f = Q) {
  return Algebra::quotient_poly(f, {Scalar(-2), Scalar(0), Scalar(1)}, "Q(sqrt2)");
}

AlgebraMorphism unit_morphism(const AlgebraRef& target) {
  AlgebraRef base = Algebra::field_algebra(target->field());
  return AlgebraMorphism(base, target, target->unit());
}

// Sign representation of k[Z/2].
Module sign_module(const AlgebraRef& kz2) {
  Matrix plus = Matrix::identity(kz2->field(), 1);
  Matrix minus(kz2->field(), 1, 1);
  minus.set(0, 0, Scalar(-1));
  return Module(kz2, {plus, minus}, "sign");
}

Module trivial_rep(const AlgebraRef& group_alg, int dim = 1) {
  Matrix id = Matrix::identity(group_alg->field(), dim);
  std::vector<Matrix> act(static_cast<size_t>(group_alg->dim()), id);
  return Module(group_alg, std::move(act), "triv");
}

}  // namespace

TEST_CASE("algebra constructors validate their axioms") {
  auto s = sqrt2();
  CHECK(s->dim() == 2);
  CHECK(s->commutative());
  // x * x = 2
  Matrix x = s->basis_vector(1);
  Matrix two = s->unit().scaled(Scalar(2));
  CHECK(s->mult(x, x) == two);

  auto g = Algebra::group_algebra(Q, GroupTable::cyclic(2));
  CHECK(g->dim() == 2);
  CHECK(g->commutative());

  auto s3 = Algebra::group_algebra(Q, GroupTable::symmetric(3));
  CHECK(s3->dim() == 6);
  CHECK_FALSE(s3->commutative());

  auto fun = Algebra::functions(Q, 3);
  CHECK(fun->dim() == 3);
  for (int i = 0; i < 3; ++i)
    CHECK(fun->mult(fun->basis_vector(i), fun->basis_vector(i)) == fun->basis_vector(i));

  CHECK_THROWS_AS(GroupTable::from_table({{0, 1}, {1, 1}}), AlgebraError);
}

TEST_CASE("hom spaces") {
  auto kz3 = Algebra::group_algebra(Q, GroupTable::cyclic(3));
  Module reg = Module::regular(kz3);
  CHECK(hom_space(reg, reg).dim() == 3);

  auto kz2 = Algebra::group_algebra(Q, GroupTable::cyclic(2));
  CHECK(hom_space(trivial_rep(kz2), sign_module(kz2)).dim() == 0);

  Module z = Module::zero(kz2);
  CHECK(hom_space(z, z).dim() == 0);

  CHECK_THROWS_AS(hom_space(trivial_rep(kz2), reg), AlgebraError);
}

TEST_CASE("extension of scalars") {
  SUBCASE("identity base change") {
    auto s = sqrt2();
    ScalarExtension ext(AlgebraMorphism::identity(s));
    Module reg = Module::regular(s);
    Extension e = ext.extend(reg);
    CHECK(e.out.dim() == 2);
    // unit is an iso here
    CHECK(e.unit.is_invertible());
  }
  SUBCASE("Q -> Q(sqrt2) on the base field") {
    ScalarExtension ext(unit_morphism(sqrt2()));
    Module base = Module::regular(Algebra::field_algebra(Q));
    CHECK(ext.extend(base).out.dim() == 2);
  }
  SUBCASE("projection kills the complementary factor") {
    auto qq = Algebra::product(Algebra::field_algebra(Q), Algebra::field_algebra(Q));
    auto q = Algebra::field_algebra(Q);
    Matrix pr(Q, 1, 2);
    pr.set(0, 0, Scalar(1));
    AlgebraMorphism proj(qq, q, pr);
    proj.validate();
    // (0, Q) as a module over Q x Q
    Matrix zero1(Q, 1, 1), one1 = Matrix::identity(Q, 1);
    Module second(qq, {zero1, one1}, "(0,Q)");
    ScalarExtension ext(proj);
    CHECK(ext.extend(second).out.dim() == 0);
  }
}

TEST_CASE("restriction of scalars") {
  auto s = sqrt2();
  auto phi = unit_morphism(s);
  Module n = Module::regular(s);
  CHECK(restrict_scalars(phi, n).dim() == 2);
  CHECK(restrict_scalars(AlgebraMorphism::identity(s), n) == Module::regular(s));

  auto qq = Algebra::product(Algebra::field_algebra(Q), Algebra::field_algebra(Q));
  ScalarExtension ext(unit_morphism(qq));
  Module base = Module::regular(Algebra::field_algebra(Q));
  CHECK(restrict_scalars(unit_morphism(qq), ext.extend(base).out).dim() == 2);
}

TEST_CASE("adjunction unit/counit and triangle identities") {
  Rng rng(11);
  auto qq = Algebra::product(Algebra::field_algebra(Q), Algebra::field_algebra(Q));
  for (const auto& phi : {unit_morphism(sqrt2()), unit_morphism(qq),
                          AlgebraMorphism::identity(sqrt2())}) {
    ScalarExtension ext(phi);
    for (int trial = 0; trial < 3; ++trial) {
      int dim = 1 + rng.below(3);
      Module h = Module::free(phi.source, dim);
      Extension eh = ext.extend(h);

      // triangle 1: counit(extend H) o extend(unit H) = id
      Module rh = ext.restrict(eh.out);
      Extension erh = ext.extend(rh);
      Matrix tri1 = ext.counit(erh, eh.out) * ext.extend_map(eh, erh, eh.unit);
      CHECK(tri1.is_identity());

      // triangle 2: restrict(counit N) o unit(restrict N) = id at N = extend H
      Matrix tri2 = ext.counit(erh, eh.out) * erh.unit;
      CHECK(tri2.is_identity());
    }
  }
}

TEST_CASE("adjunction hom dimension identity") {
  auto s = sqrt2();
  auto phi = unit_morphism(s);
  ScalarExtension ext(phi);
  auto base = Algebra::field_algebra(Q);
  Module m1 = Module::free(base, 1), m2 = Module::free(base, 2);
  Module n = Module::regular(s);
  Extension e1 = ext.extend(m1), e2 = ext.extend(m2);
  CHECK(hom_space(e1.out, n).dim() == hom_space(m1, ext.restrict(n)).dim());
  CHECK(hom_space(e2.out, n).dim() == hom_space(m2, ext.restrict(n)).dim());
}

TEST_CASE("extension is functorial on homs") {
  auto s = sqrt2();
  ScalarExtension ext(unit_morphism(s));
  auto base = Algebra::field_algebra(Q);
  Module a = Module::free(base, 2), b = Module::free(base, 3), c = Module::free(base, 1);
  Rng rng(5);
  Matrix f = rng.matrix(Q, 3, 2), g = rng.matrix(Q, 1, 3);
  Extension ea = ext.extend(a), eb = ext.extend(b), ec = ext.extend(c);
  CHECK(ext.extend_map(ea, ec, g * f) == ext.extend_map(eb, ec, g) * ext.extend_map(ea, eb, f));
  CHECK(ext.extend_map(ea, ea, Matrix::identity(Q, 2)).is_identity());
}

TEST_CASE("flatness and faithful flatness") {
  SUBCASE("free quadratic extension is faithfully flat") {
    auto rep = flatness(unit_morphism(sqrt2()));
    CHECK(rep.flat);
    CHECK(rep.faithfully_flat);
  }
  SUBCASE("projection Q x Q -> Q is flat, not faithfully flat") {
    auto qq = Algebra::product(Algebra::field_algebra(Q), Algebra::field_algebra(Q));
    auto q = Algebra::field_algebra(Q);
    Matrix pr(Q, 1, 2);
    pr.set(0, 0, Scalar(1));
    AlgebraMorphism proj(qq, q, pr);
    auto rep = flatness(proj);
    CHECK(rep.flat);
    CHECK_FALSE(rep.faithfully_flat);
    REQUIRE(rep.faithful_witness.has_value());
    CHECK(rep.faithful_witness->dim() == 1);
    // the witness dies under extension
    ScalarExtension ext(proj);
    CHECK(ext.extend(*rep.faithful_witness).out.dim() == 0);
  }
  SUBCASE("Q[x]/(x^2) -> k is not flat") {
    auto dual = Algebra::quotient_poly(Q, {Scalar(0), Scalar(0), Scalar(1)}, "Q[x]/(x^2)");
    auto q = Algebra::field_algebra(Q);
    Matrix pr(Q, 1, 2);
    pr.set(0, 0, Scalar(1));
    AlgebraMorphism quot(dual, q, pr);
    quot.validate();
    auto rep = flatness(quot);
    CHECK_FALSE(rep.flat);
    REQUIRE(rep.nonflat_kernel.has_value());
    CHECK(rep.nonflat_kernel->dim() == 1);  // the ideal (x)
    CHECK(rep.nonflat_lost_dim > 0);        // tensoring loses exactness
  }
}

TEST_CASE("trace maps") {
  SUBCASE("identity has trace id") {
    auto s = sqrt2();
    Matrix tr = trace_map(AlgebraMorphism::identity(s));
    CHECK(tr.is_identity());
  }
  SUBCASE("quadratic field: Tr(1) = 2, Tr(x) = 0") {
    auto phi = unit_morphism(sqrt2());
    Matrix tr = trace_map(phi);
    CHECK(tr.at(0, 0) == Scalar(2));
    CHECK(tr.at(0, 1) == Scalar(0));
  }
  SUBCASE("split quadratic: Tr(1,1) = 2, Tr(1,0) = 1") {
    auto qq = Algebra::product(Algebra::field_algebra(Q), Algebra::field_algebra(Q));
    Matrix tr = trace_map(unit_morphism(qq));
    CHECK(tr.at(0, 0) + tr.at(0, 1) == Scalar(2));
    CHECK(tr.at(0, 0) == Scalar(1));
  }
  SUBCASE("trace after unit is rank times identity") {
    for (const auto& phi : {unit_morphism(sqrt2()), unit_morphism(Algebra::functions(Q, 3))}) {
      Matrix tr = trace_map(phi);
      auto fb = find_free_basis(phi);
      REQUIRE(fb.has_value());
      CHECK(tr * phi.map == Matrix::identity(Q, 1).scaled(Scalar(fb->rank)));
    }
  }
  SUBCASE("non-free extension is rejected") {
    auto dual = Algebra::quotient_poly(Q, {Scalar(0), Scalar(0), Scalar(1)});
    auto q = Algebra::field_algebra(Q);
    Matrix pr(Q, 1, 2);
    pr.set(0, 0, Scalar(1));
    CHECK_THROWS_AS(trace_map(AlgebraMorphism(dual, q, pr)), AlgebraError);
  }
}

TEST_CASE("tensor powers") {
  SUBCASE("(Q^2) (x)_Q (Q^2) has dimension 4") {
    auto qq = Algebra::product(Algebra::field_algebra(Q), Algebra::field_algebra(Q));
    auto tower = tensor_power_tower(unit_morphism(qq), 1);
    CHECK(tower.levels[1]->dim() == 4);
    tower.augment[1].validate();
    for (const auto& ins : tower.insertion[1]) ins.validate();
  }
  SUBCASE("S (x)_S S = S") {
    auto s = sqrt2();
    auto tower = tensor_power_tower(AlgebraMorphism::identity(s), 2);
    CHECK(tower.levels[1]->dim() == 2);
    CHECK(tower.levels[2]->dim() == 2);
  }
  SUBCASE("S (x)_Q S splits for S = Q(sqrt2)") {
    auto tower = tensor_power_tower(unit_morphism(sqrt2()), 1);
    auto ss = tower.levels[1];
    CHECK(ss->dim() == 4);
    // e = 1/2 + (x (x) x)/4 is a nontrivial idempotent
    Matrix x = sqrt2()->basis_vector(1);
    Matrix xx = tower.insertion[1][0].apply(x);
    Matrix yy = tower.insertion[1][1].apply(x);
    Matrix t = ss->mult(xx, yy);
    Matrix e = ss->unit().scaled(Scalar(1, 2)) + t.scaled(Scalar(1, 4));
    CHECK(ss->mult(e, e) == e);
    CHECK(e != ss->unit());
    CHECK_FALSE(e.is_zero());
  }
}

TEST_CASE("flat base change of extensions commutes on samples") {
  // R = Q, S = Q(sqrt2), R' = Q[y]/(y^2+1); S (x)_R R' both ways.
  auto s = sqrt2();
  auto rp = Algebra::quotient_poly(Q, {Scalar(1), Scalar(0), Scalar(1)}, "Q(i)");
  auto base = Algebra::field_algebra(Q);
  auto phi = unit_morphism(s);
  auto chi = unit_morphism(rp);
  TensorAlgebra sp = tensor_over(s, rp, phi, chi);
  CHECK(sp.out->dim() == 4);
  // extension along the two routes gives the same dimensions on samples
  ScalarExtension via_s(phi), via_sp_left(sp.left);
  ScalarExtension via_rp(chi), via_sp_right(sp.right);
  for (int d = 1; d <= 3; ++d) {
    Module m = Module::free(base, d);
    Module left = via_sp_left.extend(via_s.extend(m).out).out;
    Module right = via_sp_right.extend(via_rp.extend(m).out).out;
    CHECK(left.dim() == right.dim());
    CHECK(left.dim() == 4 * d);
  }
}
