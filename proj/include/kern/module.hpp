#pragma once

#include <optional>

#include "kern/algebra.hpp"

namespace kern {

// Finite-dimensional left module over an Algebra, one action matrix per
// algebra basis element.
class Module {
public:
  Module(AlgebraRef alg, std::vector<Matrix> action, std::string name = "");
  static Module zero(const AlgebraRef& alg);
  static Module regular(const AlgebraRef& alg);
  static Module free(const AlgebraRef& alg, int rank);

  const AlgebraRef& algebra() const { return alg_; }
  const Field& field() const { return alg_->field(); }
  int dim() const { return dim_; }
  const std::string& name() const { return name_; }
  const Matrix& action(int i) const { return action_[static_cast<size_t>(i)]; }
  Matrix action_op(const Matrix& x) const;

  void validate() const;
  bool operator==(const Module& o) const;
  // Exact content key (dims and entries); used for memoization.
  std::string fingerprint() const;

private:
  AlgebraRef alg_;
  int dim_;
  std::vector<Matrix> action_;
  std::string name_;
};

// Module homomorphism as an intertwining matrix.
struct ModuleHom {
  Module source;
  Module target;
  Matrix map;

  ModuleHom(Module src, Module tgt, Matrix m);
  static ModuleHom identity(const Module& m);
  static ModuleHom zero(const Module& src, const Module& tgt);

  bool intertwines() const;
  void validate() const;
  ModuleHom then(const ModuleHom& next) const;  // next o this
  bool is_iso() const;
  ModuleHom inverse() const;
};

// Basis of Hom_A(M, N) inside the space of target x source matrices
// (row-major vectorization).
Subspace hom_space(const Module& m, const Module& n);
std::vector<Matrix> hom_basis_matrices(const Module& m, const Module& n);

// The kernel of a module hom as a module with its inclusion.
struct SubmoduleResult {
  Module sub;
  Matrix inclusion;  // source.dim x sub.dim
};
SubmoduleResult kernel_module(const ModuleHom& f);
SubmoduleResult submodule_on(const Module& m, const Matrix& basis_cols);

// Extension of scalars along phi: R -> S applied to a module over R,
// realized as a quotient of S (x)_k M with index i*dim(M)+j.
struct Extension {
  Module out;
  QuotientSpace quot;
  // unit M -> restrict(out), x |-> class(1 (x) x).
  Matrix unit;
};

class ScalarExtension {
public:
  explicit ScalarExtension(AlgebraMorphism phi);

  const AlgebraMorphism& phi() const { return phi_; }

  Extension extend(const Module& m) const;
  // Functor on morphisms; ext_src/ext_tgt must come from extend().
  Matrix extend_map(const Extension& ext_src, const Extension& ext_tgt, const Matrix& f) const;

  Module restrict(const Module& n) const;
  // Counit extend(restrict(N)) -> N.
  Matrix counit(const Extension& ext_of_restrict, const Module& n) const;

private:
  AlgebraMorphism phi_;
};

Module restrict_scalars(const AlgebraMorphism& phi, const Module& n);

// Flatness and faithful flatness of S as an R-module through phi; flat means
// projective here (finite-dimensional algebras), decided by a splitting
// search for the generator presentation R^n ->> S.
struct FlatnessReport {
  bool flat = false;
  bool faithfully_flat = false;
  // Nonzero R-module killed by extension, present when flat but not faithful.
  std::optional<Module> faithful_witness;
  // Kernel of the presentation whose extension loses exactness when not flat.
  std::optional<Module> nonflat_kernel;
  int nonflat_lost_dim = 0;
};
FlatnessReport flatness(const AlgebraMorphism& phi);

// R-basis of S through phi when S is free; rank = dim S / dim R.
struct FreeBasis {
  int rank;
  Matrix basis_map;  // k-iso R^rank -> S, columns grouped per copy of R
};
std::optional<FreeBasis> find_free_basis(const AlgebraMorphism& phi, int random_tries = 64);

// Trace of multiplication as an R-linear map S -> R; requires S free over R.
Matrix trace_map(const AlgebraMorphism& phi);

// S^{(x)_R n} tower with insertion maps; level k is S^{(x) k+1}.
struct TensorPowerTower {
  AlgebraRef base;                       // R
  std::vector<AlgebraRef> levels;        // levels[k] = S^{(x) k+1}
  std::vector<AlgebraMorphism> augment;  // R -> levels[k]
  // insertion[k][i]: S -> levels[k] into slot i (0-based, i <= k).
  std::vector<std::vector<AlgebraMorphism>> insertion;
};
TensorPowerTower tensor_power_tower(const AlgebraMorphism& phi, int max_level);

}  // namespace kern
