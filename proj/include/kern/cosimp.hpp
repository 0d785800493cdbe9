#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <variant>

#include "kern/module.hpp"
#include "kern/simplex.hpp"

namespace kern {

class CosimpError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct AmitsurInfo {
  AlgebraMorphism phi;  // R -> S
};
struct ActionNerveInfo {
  GroupAction action;
};

// Truncated augmented cosimplicial category of concrete module categories.
// Level k (set [1..k+1]) carries an algebra; P_f^* is extension of scalars
// along the recorded algebra morphism, P_{f*} is restriction. The pullback
// pseudofunctor is strict on the algebra maps; the coherence isos eps are
// computed per object.
class Tcc {
public:
  static Tcc amitsur(const AlgebraMorphism& phi, int truncation = 3);
  static Tcc action_nerve(const GroupAction& action, Field field, int truncation = 3);

  Tcc(Tcc&&) noexcept;
  Tcc& operator=(Tcc&&) noexcept;
  ~Tcc();

  int truncation() const { return truncation_; }
  const Field& field() const { return field_; }
  const AlgebraRef& level(int k) const;  // k in [-1 .. truncation]
  const std::variant<AmitsurInfo, ActionNerveInfo>& info() const { return info_; }
  bool is_action_nerve() const { return std::holds_alternative<ActionNerveInfo>(info_); }

  // Monotone maps act on set sizes: f: [1..a] -> [1..b] maps level a-1 to
  // level b-1, with a = 0 for the augmentation level.
  const AlgebraMorphism& alg_map(const MonotoneMap& f) const;

  Extension pull_ext(const MonotoneMap& f, const Module& m) const;
  Module pull(const MonotoneMap& f, const Module& m) const { return pull_ext(f, m).out; }
  Matrix pull_map(const MonotoneMap& f, const Module& src, const Module& tgt,
                  const Matrix& u) const;
  Module push(const MonotoneMap& f, const Module& n) const;

  // Adjunction (P_f^*, P_{f*}).
  Matrix unit(const MonotoneMap& f, const Module& m) const;
  Matrix counit(const MonotoneMap& f, const Module& n) const;

  // eps_{g,f}(M): P_g^* P_f^* M -> P_{gf}^* M.
  Matrix eps(const MonotoneMap& g, const MonotoneMap& f, const Module& m) const;
  // P_id^* M -> M.
  Matrix pull_id_iso(const Module& m) const;

  // Base change P_g^* P_{f*} M -> P_{f'*} P_{g'}^* M for a commuting square.
  Matrix base_change(const SimplexSquare& sq, const Module& m) const;

  // All monotone maps between set sizes lo..hi recorded in this truncation.
  std::vector<MonotoneMap> maps(int source_size, int target_size) const;

private:
  Tcc(Field field, std::variant<AmitsurInfo, ActionNerveInfo> info, int truncation);
  void register_map(const MonotoneMap& f, AlgebraMorphism m);
  void check_strict_functoriality() const;

  Field field_;
  int truncation_;
  std::vector<AlgebraRef> levels_;  // index k+1 for level k, index 0 = augmentation
  std::map<MonotoneMap, AlgebraMorphism> maps_;
  std::variant<AmitsurInfo, ActionNerveInfo> info_;
  // Extensions are pure in (f, module); memoized under a lock so shared
  // read-only use stays safe.
  struct ExtCache;
  std::unique_ptr<ExtCache> cache_;
};

// Classical descent datum (F, theta) over level 0.
struct DescentTheta {
  Module f;
  Matrix theta;  // pull(i1, f) -> pull(i2, f)
};

// Descent datum as a compatible family (F_i, phi_f).
struct DescentFamily {
  std::vector<Module> levels;         // index 0..truncation
  std::map<MonotoneMap, Matrix> phi;  // phi_f: pull(f, F_m) -> F_n over Delta
};

// Distinguished face maps.
const MonotoneMap& face_i1();
const MonotoneMap& face_i2();
const MonotoneMap& diag_d();
const MonotoneMap& face_12();
const MonotoneMap& face_13();
const MonotoneMap& face_23();
MonotoneMap vertex_map(int level);  // f_k: [1] -> [1..k+1], 1 |-> 1
MonotoneMap augmentation_map(int level);

// Operations on the descent category of a fixed TCC.
class Kern {
public:
  explicit Kern(const Tcc& tcc) : tcc_(&tcc) {}

  const Tcc& tcc() const { return *tcc_; }

  bool check_theta(const DescentTheta& obj, std::string* why = nullptr) const;
  // Morphisms a -> b cut inside the target x source matrix space.
  Subspace hom_theta(const DescentTheta& a, const DescentTheta& b) const;

  DescentFamily theta_to_family(const DescentTheta& obj) const;
  DescentTheta family_to_theta(const DescentFamily& fam) const;
  bool check_family(const DescentFamily& fam, std::string* why = nullptr) const;

  // Transport along an iso of the underlying object.
  DescentTheta transport(const DescentTheta& obj, const Module& target,
                         const Matrix& iso) const;

  // Canonical comparison Mod(level -1) -> Kern (needs augmentation).
  DescentFamily compare_family(const Module& h) const;
  DescentTheta compare(const Module& h) const;
  Matrix compare_map(const Module& h1, const Module& h2, const Matrix& u) const;

  // Right adjoint of the forgetful functor (F, theta) |-> F.
  DescentTheta right_adjoint_obj(const Module& f0) const;
  Matrix right_adjoint_map(const Module& src, const Module& tgt, const Matrix& u) const;
  Matrix kern_unit(const DescentTheta& x) const;   // F -> underlying(P_* F)
  Matrix kern_counit(const Module& f0) const;      // underlying(P_* F) -> F

private:
  const Tcc* tcc_;
};

// Coherence and base-change audit. eps_override, when set, replaces
// eps_{g,f} for fault-injection tests.
struct CoherenceFailure {
  MonotoneMap f, g, h;
  std::string what;
};
using EpsOverride =
    std::function<Matrix(const MonotoneMap&, const MonotoneMap&, const Module&, const Matrix&)>;
std::vector<CoherenceFailure> audit_eps_cocycle(const Tcc& tcc, const std::vector<Module>& samples,
                                                const EpsOverride& override = {});

struct BaseChangeFailure {
  SimplexSquare square;
  std::string sample;
};
struct A1A2Report {
  int squares_checked = 0;
  int triangles_checked = 0;
  std::vector<BaseChangeFailure> base_change_failures;
  std::vector<std::string> triangle_failures;
  bool ok() const { return base_change_failures.empty() && triangle_failures.empty(); }
};
// Samples are modules over level 0; pulled around as needed. Squares with an
// empty corner are included only when include_augmented is set.
A1A2Report check_a1_a2(const Tcc& tcc, const std::vector<Module>& level0_samples,
                       bool include_augmented);

}  // namespace kern
