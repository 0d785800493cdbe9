#include "kern/module.hpp"

#include "kern/rng.hpp"

namespace kern {

Module::Module(AlgebraRef alg, std::vector<Matrix> action, std::string name)
    : alg_(std::move(alg)),
      dim_(action.empty() ? 0 : action[0].rows()),
      action_(std::move(action)),
      name_(std::move(name)) {
  if (static_cast<int>(action_.size()) != alg_->dim())
    throw AlgebraError("module: one action matrix per algebra basis element required");
  for (const auto& m : action_)
    if (m.rows() != dim_ || m.cols() != dim_) throw AlgebraError("module: action shape mismatch");
  // Axiom checks are quadratic in the algebra dimension and cubic in the
  // module dimension; beyond the desk-scale envelope construction is trusted
  // and validate() stays available to callers.
  double cost = static_cast<double>(alg_->dim()) * alg_->dim() * dim_ *
                static_cast<double>(dim_) * dim_;
  if (cost <= 2e8) validate();
}

Module Module::zero(const AlgebraRef& alg) {
  std::vector<Matrix> act(static_cast<size_t>(alg->dim()), Matrix(alg->field(), 0, 0));
  return Module(alg, std::move(act), "0");
}

Module Module::regular(const AlgebraRef& alg) {
  std::vector<Matrix> act;
  for (int i = 0; i < alg->dim(); ++i) act.push_back(alg->left_mult(i));
  return Module(alg, std::move(act), alg->name());
}

Module Module::free(const AlgebraRef& alg, int rank) {
  Matrix id = Matrix::identity(alg->field(), rank);
  std::vector<Matrix> act;
  for (int i = 0; i < alg->dim(); ++i) act.push_back(id.kronecker(alg->left_mult(i)));
  return Module(alg, std::move(act), alg->name() + "^" + std::to_string(rank));
}

Matrix Module::action_op(const Matrix& x) const {
  Matrix op(field(), dim_, dim_);
  for (int i = 0; i < alg_->dim(); ++i) {
    if (x.at(i, 0) == 0) continue;
    op = op + action(i).scaled(x.at(i, 0));
  }
  return op;
}

void Module::validate() const {
  if (!action_op(alg_->unit()).is_identity())
    throw AlgebraError("module: unit does not act as identity");
  for (int i = 0; i < alg_->dim(); ++i)
    for (int j = 0; j < alg_->dim(); ++j) {
      Matrix prod = alg_->mult(alg_->basis_vector(i), alg_->basis_vector(j));
      if (action(i) * action(j) != action_op(prod))
        throw AlgebraError("module: action incompatible with structure constants at (" +
                           std::to_string(i) + "," + std::to_string(j) + ")");
    }
}

bool Module::operator==(const Module& o) const {
  return same_algebra(alg_, o.alg_) && dim_ == o.dim_ && action_ == o.action_;
}

std::string Module::fingerprint() const {
  std::string key = std::to_string(alg_->dim()) + ":" + std::to_string(dim_) + ":";
  for (const auto& m : action_)
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) {
        key += Field::to_string(m.at(i, j));
        key += ',';
      }
  return key;
}

ModuleHom::ModuleHom(Module src, Module tgt, Matrix m)
    : source(std::move(src)), target(std::move(tgt)), map(std::move(m)) {
  if (map.rows() != target.dim() || map.cols() != source.dim())
    throw AlgebraError("module hom: matrix shape mismatch");
  if (!same_algebra(source.algebra(), target.algebra()))
    throw AlgebraError("module hom: algebra mismatch");
}

ModuleHom ModuleHom::identity(const Module& m) {
  return ModuleHom(m, m, Matrix::identity(m.field(), m.dim()));
}

ModuleHom ModuleHom::zero(const Module& src, const Module& tgt) {
  return ModuleHom(src, tgt, Matrix(src.field(), tgt.dim(), src.dim()));
}

bool ModuleHom::intertwines() const {
  for (int i = 0; i < source.algebra()->dim(); ++i)
    if (map * source.action(i) != target.action(i) * map) return false;
  return true;
}

void ModuleHom::validate() const {
  if (!intertwines()) throw AlgebraError("module hom: matrix does not intertwine the actions");
}

ModuleHom ModuleHom::then(const ModuleHom& next) const {
  if (!(next.source == target)) throw AlgebraError("module hom composition mismatch");
  return ModuleHom(source, next.target, next.map * map);
}

bool ModuleHom::is_iso() const { return map.is_invertible(); }

ModuleHom ModuleHom::inverse() const {
  auto inv = map.inverse();
  if (!inv) throw AlgebraError("module hom: not invertible");
  return ModuleHom(target, source, *inv);
}

Subspace hom_space(const Module& m, const Module& n) {
  if (!same_algebra(m.algebra(), n.algebra())) throw AlgebraError("hom_space: algebra mismatch");
  const Field& f = m.field();
  int t = n.dim(), s = m.dim();
  // X intertwines iff (act_N(e_i) (x) I - I (x) act_M(e_i)^T) vec(X) = 0.
  Matrix sys(f, 0, t * s);
  for (int i = 0; i < m.algebra()->dim(); ++i) {
    Matrix row = n.action(i).kronecker(Matrix::identity(f, s)) -
                 Matrix::identity(f, t).kronecker(m.action(i).transpose());
    sys = sys.vstack(row);
  }
  return Subspace::from_spanning(sys.kernel_basis());
}

std::vector<Matrix> hom_basis_matrices(const Module& m, const Module& n) {
  Subspace h = hom_space(m, n);
  std::vector<Matrix> out;
  for (int j = 0; j < h.dim(); ++j) out.push_back(unvec_rm(h.basis().col(j), n.dim(), m.dim()));
  return out;
}

SubmoduleResult submodule_on(const Module& m, const Matrix& basis_cols) {
  Matrix basis = Subspace::from_spanning(basis_cols).basis();
  std::vector<Matrix> act;
  for (int i = 0; i < m.algebra()->dim(); ++i) {
    auto coords = basis.solve(m.action(i) * basis);
    if (!coords) throw AlgebraError("submodule_on: subspace not action-stable");
    act.push_back(*coords);
  }
  Module sub(m.algebra(), std::move(act));
  return SubmoduleResult{std::move(sub), basis};
}

SubmoduleResult kernel_module(const ModuleHom& f) {
  return submodule_on(f.source, f.map.kernel_basis());
}

ScalarExtension::ScalarExtension(AlgebraMorphism phi) : phi_(std::move(phi)) {
  if (!phi_.source->commutative())
    throw AlgebraError("extension of scalars: base algebra must be commutative");
}

Extension ScalarExtension::extend(const Module& m) const {
  if (!same_algebra(m.algebra(), phi_.source))
    throw AlgebraError("extension of scalars: module is not over the source algebra");
  const AlgebraRef& s = phi_.target;
  const Field& f = s->field();
  int ns = s->dim(), nm = m.dim();
  // Relations e_i phi(e_r) (x) v_j - e_i (x) e_r v_j spanning the kernel of
  // S (x)_k M ->> S (x)_R M; built sparsely, index i*nm + j.
  std::vector<SparseVec> rel;
  for (int r = 0; r < phi_.source->dim(); ++r) {
    Matrix sr = phi_.apply(phi_.source->basis_vector(r));
    Matrix mult_sr = s->mult_op(sr);
    const Matrix& act_r = m.action(r);
    for (int i = 0; i < ns; ++i)
      for (int j = 0; j < nm; ++j) {
        SparseVec row;
        for (int k = 0; k < ns; ++k) {
          const Scalar& v = mult_sr.at(k, i);
          if (v == 0) continue;
          auto slot = row.try_emplace(k * nm + j, Scalar(0)).first;
          slot->second = f.add(slot->second, v);
        }
        for (int k = 0; k < nm; ++k) {
          const Scalar& v = act_r.at(k, j);
          if (v == 0) continue;
          auto slot = row.try_emplace(i * nm + k, Scalar(0)).first;
          slot->second = f.sub(slot->second, v);
        }
        bool nonzero = false;
        for (const auto& [col, val] : row)
          if (!f.is_zero(val)) nonzero = true;
        if (nonzero) rel.push_back(std::move(row));
      }
  }
  QuotientSpace q = quotient_by_sparse(f, ns * nm, rel);
  std::vector<Matrix> act;
  for (int i = 0; i < ns; ++i)
    act.push_back(select_columns(mul_kron_left(q.proj, s->left_mult(i), nm), q.sect));
  Module out(s, std::move(act), s->name() + "(x)" + m.name());
  // unit column j: sum_k unit_k proj(., k*nm + j).
  Matrix unit(f, q.dim(), nm);
  for (int k = 0; k < ns; ++k) {
    const Scalar& uk = s->unit().at(k, 0);
    if (uk == 0) continue;
    for (int j = 0; j < nm; ++j)
      for (int r = 0; r < q.dim(); ++r)
        unit.set(r, j, f.add(unit.at(r, j), f.mul(uk, q.proj.at(r, k * nm + j))));
  }
  return Extension{std::move(out), std::move(q), std::move(unit)};
}

Matrix ScalarExtension::extend_map(const Extension& ext_src, const Extension& ext_tgt,
                                   const Matrix& f) const {
  return select_columns(mul_block_diag(ext_tgt.quot.proj, phi_.target->dim(), f),
                        ext_src.quot.sect);
}

Module ScalarExtension::restrict(const Module& n) const { return restrict_scalars(phi_, n); }

Matrix ScalarExtension::counit(const Extension& ext_of_restrict, const Module& n) const {
  const AlgebraRef& s = phi_.target;
  const Field& f = s->field();
  int ns = s->dim(), nn = n.dim();
  Matrix big(f, nn, ns * nn);
  for (int i = 0; i < ns; ++i) {
    const Matrix& act = n.action(i);
    for (int j = 0; j < nn; ++j)
      for (int k = 0; k < nn; ++k) big.set(k, i * nn + j, act.at(k, j));
  }
  return big * ext_of_restrict.quot.sect;
}

Module restrict_scalars(const AlgebraMorphism& phi, const Module& n) {
  if (!same_algebra(n.algebra(), phi.target))
    throw AlgebraError("restriction of scalars: module is not over the target algebra");
  std::vector<Matrix> act;
  for (int r = 0; r < phi.source->dim(); ++r)
    act.push_back(n.action_op(phi.apply(phi.source->basis_vector(r))));
  return Module(phi.source, std::move(act), n.name() + "|R");
}

FlatnessReport flatness(const AlgebraMorphism& phi) {
  const AlgebraRef& r = phi.source;
  const AlgebraRef& s = phi.target;
  if (!r->commutative()) throw AlgebraError("flatness: base algebra must be commutative");
  const Field& f = r->field();
  FlatnessReport rep;

  Module s_r = restrict_scalars(phi, Module::regular(s));
  int ns = s->dim();
  Module fr = Module::free(r, ns);
  // Presentation R^{dim S} ->> S, copy t goes to phi(.) s_t.
  Matrix pres(f, ns, fr.dim());
  for (int t = 0; t < ns; ++t)
    for (int a = 0; a < r->dim(); ++a) {
      Matrix col = s->mult(phi.apply(r->basis_vector(a)), s->basis_vector(t));
      for (int k = 0; k < ns; ++k) pres.set(k, t * r->dim() + a, col.at(k, 0));
    }
  ModuleHom pi(fr, s_r, pres);
  pi.validate();

  // Projectivity: an R-linear right inverse of pi.
  int unknowns = fr.dim() * ns;
  LinearSystem sys(f, unknowns);
  for (int a = 0; a < r->dim(); ++a) {
    Matrix lhs = fr.action(a).kronecker(Matrix::identity(f, ns)) -
                 Matrix::identity(f, fr.dim()).kronecker(s_r.action(a).transpose());
    sys.add_matrix_equation(lhs, Matrix(f, fr.dim(), ns));
  }
  sys.add_matrix_equation(pres.kronecker(Matrix::identity(f, ns)), Matrix::identity(f, ns));
  rep.flat = sys.solve().has_value();

  if (!rep.flat) {
    auto kernel = kernel_module(pi);
    ScalarExtension ext(phi);
    Matrix extended_incl =
        ext.extend_map(ext.extend(kernel.sub), ext.extend(fr), kernel.inclusion);
    rep.nonflat_lost_dim = extended_incl.kernel_basis().cols();
    rep.nonflat_kernel = std::move(kernel.sub);
    return rep;
  }

  // Faithful flatness: flat S is killed on some factor iff phi has kernel.
  Matrix ker = phi.map.kernel_basis();
  if (ker.cols() == 0) {
    rep.faithfully_flat = true;
  } else {
    auto witness = submodule_on(Module::regular(r), ker);
    rep.faithful_witness = std::move(witness.sub);
  }
  return rep;
}

std::optional<FreeBasis> find_free_basis(const AlgebraMorphism& phi, int random_tries) {
  const AlgebraRef& r = phi.source;
  const AlgebraRef& s = phi.target;
  const Field& f = r->field();
  int nr = r->dim(), ns = s->dim();
  if (ns % nr != 0) return std::nullopt;
  int rank = ns / nr;

  auto columns_for = [&](const Matrix& v) {
    Matrix cols(f, ns, nr);
    for (int a = 0; a < nr; ++a) {
      Matrix c = s->mult(phi.apply(r->basis_vector(a)), v);
      for (int k = 0; k < ns; ++k) cols.set(k, a, c.at(k, 0));
    }
    return cols;
  };

  Rng rng(0x66726565u);  // deterministic candidate stream
  Matrix chosen(f, ns, 0);
  int accepted = 0;
  int candidate = 0;
  while (accepted < rank) {
    Matrix v(f, ns, 1);
    if (candidate < ns) {
      v.set(candidate, 0, Scalar(1));
    } else if (candidate < ns + random_tries) {
      v = rng.matrix(f, ns, 1);
    } else {
      return std::nullopt;
    }
    ++candidate;
    Matrix trial = chosen.hstack(columns_for(v));
    if (trial.rank() == (accepted + 1) * nr) {
      chosen = std::move(trial);
      ++accepted;
    }
  }
  if (chosen.rank() != ns) return std::nullopt;
  return FreeBasis{rank, std::move(chosen)};
}

Matrix trace_map(const AlgebraMorphism& phi) {
  auto basis = find_free_basis(phi);
  if (!basis)
    throw AlgebraError("trace_map: target is not free over the base through this morphism");
  const AlgebraRef& r = phi.source;
  const AlgebraRef& s = phi.target;
  const Field& f = r->field();
  int nr = r->dim(), ns = s->dim();
  // Recover the basis vectors v_j = phi(1) v_j from the grouped columns.
  std::vector<Matrix> basis_vecs;
  for (int j = 0; j < basis->rank; ++j)
    basis_vecs.push_back(basis->basis_map.submatrix(0, j * nr, ns, nr) * r->unit());
  Matrix tr(f, nr, ns);
  for (int b = 0; b < ns; ++b) {
    Matrix acc(f, nr, 1);
    for (int j = 0; j < basis->rank; ++j) {
      // e_b v_j = sum_i phi(c_ij) v_i; the trace collects the c_jj.
      auto y = basis->basis_map.solve(s->left_mult(b) * basis_vecs[static_cast<size_t>(j)]);
      if (!y) throw AlgebraError("trace_map: coordinate solve failed");
      acc = acc + y->submatrix(j * nr, 0, nr, 1);
    }
    for (int k = 0; k < nr; ++k) tr.set(k, b, acc.at(k, 0));
  }
  return tr;
}

TensorPowerTower tensor_power_tower(const AlgebraMorphism& phi, int max_level) {
  TensorPowerTower tower;
  tower.base = phi.source;
  tower.levels.push_back(phi.target);
  tower.augment.push_back(phi);
  tower.insertion.push_back({AlgebraMorphism::identity(phi.target)});
  for (int k = 1; k <= max_level; ++k) {
    TensorAlgebra t = tensor_over(tower.levels.back(), phi.target, tower.augment.back(), phi,
                                  phi.target->name() + "^(x)" + std::to_string(k + 1));
    std::vector<AlgebraMorphism> ins;
    for (const auto& prev : tower.insertion.back()) ins.push_back(prev.then(t.left));
    ins.push_back(t.right);
    tower.insertion.push_back(std::move(ins));
    tower.augment.push_back(tower.augment.back().then(t.left));
    tower.levels.push_back(t.out);
  }
  return tower;
}

}  // namespace kern
