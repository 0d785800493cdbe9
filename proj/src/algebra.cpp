#include "kern/algebra.hpp"

#include <algorithm>
#include <numeric>

namespace kern {

bool same_algebra(const AlgebraRef& a, const AlgebraRef& b) {
  return a.get() == b.get() || *a == *b;
}

GroupTable GroupTable::cyclic(int n) {
  GroupTable g;
  g.order = n;
  g.mul.assign(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g.mul[static_cast<size_t>(a)][static_cast<size_t>(b)] = (a + b) % n;
  g.identity = 0;
  g.inverse.resize(static_cast<size_t>(n));
  for (int a = 0; a < n; ++a) g.inverse[static_cast<size_t>(a)] = (n - a) % n;
  g.validate();
  return g;
}

GroupTable GroupTable::symmetric(int n) {
  if (n < 1 || n > 4) throw AlgebraError("symmetric group supported for n in 1..4");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(static_cast<size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  int order = static_cast<int>(perms.size());
  std::vector<std::vector<int>> mul(static_cast<size_t>(order),
                                    std::vector<int>(static_cast<size_t>(order)));
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) {
      std::vector<int> c(static_cast<size_t>(n));
      for (int i = 0; i < n; ++i)
        c[static_cast<size_t>(i)] =
            perms[static_cast<size_t>(a)][static_cast<size_t>(perms[static_cast<size_t>(b)][static_cast<size_t>(i)])];
      auto it = std::find(perms.begin(), perms.end(), c);
      mul[static_cast<size_t>(a)][static_cast<size_t>(b)] = static_cast<int>(it - perms.begin());
    }
  return from_table(mul);
}

GroupTable GroupTable::from_table(const std::vector<std::vector<int>>& mul) {
  GroupTable g;
  g.order = static_cast<int>(mul.size());
  g.mul = mul;
  int id = -1;
  for (int e = 0; e < g.order; ++e) {
    bool ok = true;
    for (int a = 0; a < g.order; ++a)
      if (g.times(e, a) != a || g.times(a, e) != a) {
        ok = false;
        break;
      }
    if (ok) {
      id = e;
      break;
    }
  }
  if (id < 0) throw AlgebraError("group table has no identity");
  g.identity = id;
  g.inverse.assign(static_cast<size_t>(g.order), -1);
  for (int a = 0; a < g.order; ++a)
    for (int b = 0; b < g.order; ++b)
      if (g.times(a, b) == id && g.times(b, a) == id) g.inverse[static_cast<size_t>(a)] = b;
  g.validate();
  return g;
}

bool GroupTable::abelian() const {
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b)
      if (times(a, b) != times(b, a)) return false;
  return true;
}

void GroupTable::validate() const {
  if (order <= 0) throw AlgebraError("empty group table");
  if (static_cast<int>(mul.size()) != order) throw AlgebraError("group table size mismatch");
  for (const auto& row : mul) {
    if (static_cast<int>(row.size()) != order) throw AlgebraError("group table row size mismatch");
    for (int v : row)
      if (v < 0 || v >= order) throw AlgebraError("group table entry out of range");
  }
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b)
      for (int c = 0; c < order; ++c)
        if (times(times(a, b), c) != times(a, times(b, c)))
          throw AlgebraError("group table not associative at (" + std::to_string(a) + "," +
                             std::to_string(b) + "," + std::to_string(c) + ")");
  for (int a = 0; a < order; ++a)
    if (times(identity, a) != a || times(a, identity) != a)
      throw AlgebraError("group identity fails at " + std::to_string(a));
  for (int a = 0; a < order; ++a) {
    int b = inverse[static_cast<size_t>(a)];
    if (b < 0 || times(a, b) != identity || times(b, a) != identity)
      throw AlgebraError("group inverse fails at " + std::to_string(a));
  }
}

GroupAction GroupAction::trivial(GroupTable g, int npoints) {
  GroupAction a;
  a.group = std::move(g);
  a.npoints = npoints;
  a.act.assign(static_cast<size_t>(a.group.order), std::vector<int>(static_cast<size_t>(npoints)));
  for (auto& row : a.act) std::iota(row.begin(), row.end(), 0);
  a.validate();
  return a;
}

GroupAction GroupAction::from_table(GroupTable g, int npoints, std::vector<std::vector<int>> act) {
  GroupAction a;
  a.group = std::move(g);
  a.npoints = npoints;
  a.act = std::move(act);
  a.validate();
  return a;
}

std::vector<int> GroupAction::orbit_of() const {
  std::vector<int> orbit(static_cast<size_t>(npoints), -1);
  int next = 0;
  for (int x = 0; x < npoints; ++x) {
    if (orbit[static_cast<size_t>(x)] >= 0) continue;
    // Orbits of a group action: every g.x is reachable in one step.
    for (int g = 0; g < group.order; ++g) orbit[static_cast<size_t>(apply(g, x))] = next;
    ++next;
  }
  return orbit;
}

int GroupAction::orbit_count() const {
  auto o = orbit_of();
  return o.empty() ? 0 : *std::max_element(o.begin(), o.end()) + 1;
}

void GroupAction::validate() const {
  group.validate();
  if (static_cast<int>(act.size()) != group.order) throw AlgebraError("action table size mismatch");
  for (const auto& row : act) {
    if (static_cast<int>(row.size()) != npoints) throw AlgebraError("action row size mismatch");
    for (int v : row)
      if (v < 0 || v >= npoints) throw AlgebraError("action entry out of range");
  }
  for (int x = 0; x < npoints; ++x)
    if (apply(group.identity, x) != x) throw AlgebraError("action identity fails");
  for (int g = 0; g < group.order; ++g)
    for (int h = 0; h < group.order; ++h)
      for (int x = 0; x < npoints; ++x)
        if (apply(group.times(g, h), x) != apply(g, apply(h, x)))
          throw AlgebraError("action compatibility fails at g=" + std::to_string(g) +
                             " h=" + std::to_string(h) + " x=" + std::to_string(x));
}

Algebra::Algebra(Field field, std::vector<Matrix> left_mult, Matrix unit, std::string name)
    : field_(field),
      dim_(static_cast<int>(left_mult.size())),
      left_mult_(std::move(left_mult)),
      unit_(std::move(unit)),
      commutative_(false),
      name_(std::move(name)) {
  for (const auto& m : left_mult_)
    if (m.rows() != dim_ || m.cols() != dim_) throw AlgebraError(name_ + ": bad multiplication matrix shape");
  if (unit_.rows() != dim_ || unit_.cols() != 1) throw AlgebraError(name_ + ": bad unit shape");
  double cost = static_cast<double>(dim_) * dim_ * dim_ * dim_;
  if (cost <= 2e8) validate();
  commutative_ = [this] {
    for (int i = 0; i < dim_; ++i)
      for (int j = i + 1; j < dim_; ++j)
        if (this->left_mult(i) * basis_vector(j) != this->left_mult(j) * basis_vector(i))
          return false;
    return true;
  }();
}

Matrix Algebra::mult_op(const Matrix& x) const {
  Matrix op(field_, dim_, dim_);
  for (int i = 0; i < dim_; ++i) {
    if (x.at(i, 0) == 0) continue;
    op = op + left_mult(i).scaled(x.at(i, 0));
  }
  return op;
}

Matrix Algebra::basis_vector(int i) const {
  Matrix v(field_, dim_, 1);
  v.set(i, 0, Scalar(1));
  return v;
}

void Algebra::validate() const {
  if (dim_ <= 0) throw AlgebraError(name_ + ": algebra dimension must be positive");
  Matrix unit_op = mult_op(unit_);
  if (!unit_op.is_identity()) throw AlgebraError(name_ + ": unit is not a left identity");
  for (int i = 0; i < dim_; ++i)
    if (left_mult(i) * unit_ != basis_vector(i))
      throw AlgebraError(name_ + ": unit is not a right identity at basis " + std::to_string(i));
  // Associativity on basis triples: L_{e_i e_j} = L_i L_j.
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) {
      Matrix prod = left_mult(i) * basis_vector(j);
      if (mult_op(prod) != left_mult(i) * left_mult(j))
        throw AlgebraError(name_ + ": associativity fails at basis pair (" + std::to_string(i) +
                           "," + std::to_string(j) + ")");
    }
}

AlgebraRef Algebra::field_algebra(Field f) {
  std::vector<Matrix> mult{Matrix::identity(f, 1)};
  Matrix unit(f, 1, 1);
  unit.set(0, 0, Scalar(1));
  return std::make_shared<Algebra>(f, std::move(mult), std::move(unit), f.name());
}

AlgebraRef Algebra::quotient_poly(Field f, const std::vector<Scalar>& coeffs,
                                  const std::string& name) {
  int n = static_cast<int>(coeffs.size()) - 1;
  if (n < 1) throw AlgebraError("quotient_poly: degree must be >= 1");
  if (!f.eq(coeffs.back(), Scalar(1))) throw AlgebraError("quotient_poly: polynomial must be monic");
  // Companion matrix of f is multiplication by x on the basis 1, x, .., x^{n-1}.
  Matrix companion(f, n, n);
  for (int i = 0; i + 1 < n; ++i) companion.set(i + 1, i, Scalar(1));
  for (int i = 0; i < n; ++i) companion.set(i, n - 1, f.neg(coeffs[static_cast<size_t>(i)]));
  std::vector<Matrix> mult;
  Matrix power = Matrix::identity(f, n);
  for (int i = 0; i < n; ++i) {
    mult.push_back(power);
    power = companion * power;
  }
  Matrix unit(f, n, 1);
  unit.set(0, 0, Scalar(1));
  std::string nm = name.empty() ? f.name() + "[x]/(f), deg " + std::to_string(n) : name;
  return std::make_shared<Algebra>(f, std::move(mult), std::move(unit), nm);
}

AlgebraRef Algebra::product(const AlgebraRef& a, const AlgebraRef& b) {
  if (!(a->field() == b->field())) throw AlgebraError("product: field mismatch");
  Field f = a->field();
  int n = a->dim() + b->dim();
  std::vector<Matrix> mult;
  for (int i = 0; i < a->dim(); ++i) {
    Matrix m(f, n, n);
    for (int r = 0; r < a->dim(); ++r)
      for (int c = 0; c < a->dim(); ++c) m.set(r, c, a->left_mult(i).at(r, c));
    mult.push_back(std::move(m));
  }
  for (int i = 0; i < b->dim(); ++i) {
    Matrix m(f, n, n);
    for (int r = 0; r < b->dim(); ++r)
      for (int c = 0; c < b->dim(); ++c) m.set(a->dim() + r, a->dim() + c, b->left_mult(i).at(r, c));
    mult.push_back(std::move(m));
  }
  Matrix unit(f, n, 1);
  for (int i = 0; i < a->dim(); ++i) unit.set(i, 0, a->unit().at(i, 0));
  for (int i = 0; i < b->dim(); ++i) unit.set(a->dim() + i, 0, b->unit().at(i, 0));
  return std::make_shared<Algebra>(f, std::move(mult), std::move(unit),
                                   a->name() + " x " + b->name());
}

AlgebraRef Algebra::group_algebra(Field f, const GroupTable& g) {
  g.validate();
  std::vector<Matrix> mult;
  for (int a = 0; a < g.order; ++a) {
    Matrix m(f, g.order, g.order);
    for (int b = 0; b < g.order; ++b) m.set(g.times(a, b), b, Scalar(1));
    mult.push_back(std::move(m));
  }
  Matrix unit(f, g.order, 1);
  unit.set(g.identity, 0, Scalar(1));
  return std::make_shared<Algebra>(f, std::move(mult), std::move(unit),
                                   f.name() + "[G], |G|=" + std::to_string(g.order));
}

AlgebraRef Algebra::functions(Field f, int npoints, const std::string& name) {
  if (npoints <= 0) throw AlgebraError("functions: need at least one point");
  std::vector<Matrix> mult;
  for (int i = 0; i < npoints; ++i) {
    Matrix m(f, npoints, npoints);
    m.set(i, i, Scalar(1));
    mult.push_back(std::move(m));
  }
  Matrix unit(f, npoints, 1);
  for (int i = 0; i < npoints; ++i) unit.set(i, 0, Scalar(1));
  std::string nm = name.empty() ? "Fun(" + std::to_string(npoints) + " pts)" : name;
  return std::make_shared<Algebra>(f, std::move(mult), std::move(unit), nm);
}

AlgebraRef Algebra::from_structure(Field f, int dim,
                                   const std::vector<std::vector<std::vector<Scalar>>>& c,
                                   const std::vector<Scalar>& unit, const std::string& name) {
  std::vector<Matrix> mult;
  for (int i = 0; i < dim; ++i) {
    Matrix m(f, dim, dim);
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        m.set(k, j, c[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(k)]);
    mult.push_back(std::move(m));
  }
  return std::make_shared<Algebra>(f, std::move(mult), Matrix::column(f, unit),
                                   name.empty() ? "A(dim " + std::to_string(dim) + ")" : name);
}

AlgebraMorphism::AlgebraMorphism(AlgebraRef src, AlgebraRef tgt, Matrix m)
    : source(std::move(src)), target(std::move(tgt)), map(std::move(m)) {
  if (map.rows() != target->dim() || map.cols() != source->dim())
    throw AlgebraError("algebra morphism: matrix shape mismatch");
}

AlgebraMorphism AlgebraMorphism::identity(const AlgebraRef& a) {
  return AlgebraMorphism(a, a, Matrix::identity(a->field(), a->dim()));
}

void AlgebraMorphism::validate() const {
  if (!(source->field() == target->field())) throw AlgebraError("algebra morphism: field mismatch");
  if (apply(source->unit()) != target->unit()) throw AlgebraError("algebra morphism: unit not preserved");
  for (int i = 0; i < source->dim(); ++i)
    for (int j = 0; j < source->dim(); ++j) {
      Matrix lhs = apply(source->left_mult(i) * source->basis_vector(j));
      Matrix rhs = target->mult(apply(source->basis_vector(i)), apply(source->basis_vector(j)));
      if (lhs != rhs)
        throw AlgebraError("algebra morphism: multiplication not preserved at basis pair (" +
                           std::to_string(i) + "," + std::to_string(j) + ")");
    }
}

AlgebraMorphism AlgebraMorphism::then(const AlgebraMorphism& next) const {
  if (!same_algebra(next.source, target)) throw AlgebraError("algebra morphism composition mismatch");
  return AlgebraMorphism(source, next.target, next.map * map);
}

Matrix TensorAlgebra::pure(const Matrix& a, const Matrix& b) const {
  return quot.proj * a.kronecker(b);
}

TensorAlgebra tensor_over(const AlgebraRef& a, const AlgebraRef& b, const AlgebraMorphism& phi_a,
                          const AlgebraMorphism& phi_b, const std::string& name) {
  if (!(a->field() == b->field())) throw AlgebraError("tensor_over: field mismatch");
  if (!same_algebra(phi_a.target, a) || !same_algebra(phi_b.target, b) ||
      !same_algebra(phi_a.source, phi_b.source))
    throw AlgebraError("tensor_over: morphism endpoints mismatch");
  const AlgebraRef& r = phi_a.source;
  if (!r->commutative()) throw AlgebraError("tensor_over: base algebra must be commutative");
  // Commutativity of the factors keeps the relation span a two-sided ideal,
  // so the quotient multiplication is well-defined.
  if (!a->commutative() || !b->commutative())
    throw AlgebraError("tensor_over: factors must be commutative");
  Field f = a->field();
  int na = a->dim(), nb = b->dim(), big = na * nb;

  // Relations a phi_a(e_r) (x) e_j - e_i (x) phi_b(e_r) e_j.
  Matrix rel(f, big, 0);
  for (int rr = 0; rr < r->dim(); ++rr) {
    Matrix ar = phi_a.apply(r->basis_vector(rr));
    Matrix br = phi_b.apply(r->basis_vector(rr));
    for (int i = 0; i < na; ++i) {
      Matrix left = a->mult(a->basis_vector(i), ar);
      for (int j = 0; j < nb; ++j) {
        Matrix w = left.kronecker(b->basis_vector(j)) -
                   a->basis_vector(i).kronecker(b->mult(br, b->basis_vector(j)));
        rel = rel.hstack(w);
      }
    }
  }
  QuotientSpace q = quotient_by(rel);
  int n = q.dim();

  std::vector<Matrix> mult;
  for (int u = 0; u < n; ++u) {
    Matrix x = q.sect.col(u);
    // Left multiplication by the class of x on the big space.
    Matrix big_op(f, big, big);
    for (int i = 0; i < na; ++i)
      for (int j = 0; j < nb; ++j) {
        const Scalar& c = x.at(i * nb + j, 0);
        if (c == 0) continue;
        big_op = big_op + a->left_mult(i).kronecker(b->left_mult(j)).scaled(c);
      }
    mult.push_back(q.proj * big_op * q.sect);
  }
  Matrix unit = q.proj * a->unit().kronecker(b->unit());
  std::string nm = name.empty() ? a->name() + " (x) " + b->name() : name;
  AlgebraRef out = std::make_shared<Algebra>(f, std::move(mult), std::move(unit), nm);

  Matrix ins_a(f, n, na), ins_b(f, n, nb);
  for (int i = 0; i < na; ++i) {
    Matrix v = q.proj * a->basis_vector(i).kronecker(b->unit());
    for (int k = 0; k < n; ++k) ins_a.set(k, i, v.at(k, 0));
  }
  for (int j = 0; j < nb; ++j) {
    Matrix v = q.proj * a->unit().kronecker(b->basis_vector(j));
    for (int k = 0; k < n; ++k) ins_b.set(k, j, v.at(k, 0));
  }
  TensorAlgebra t{out, std::move(q), AlgebraMorphism(a, out, std::move(ins_a)),
                  AlgebraMorphism(b, out, std::move(ins_b))};
  t.left.validate();
  t.right.validate();
  return t;
}

}  // namespace kern
