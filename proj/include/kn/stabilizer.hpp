#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kn/invariants.hpp"
#include "kn/rep_model.hpp"

namespace kn {

/// Infinitesimal stabilizer: kernel of c -> (sum_j c_j X_j) v on C^m.
struct StabilizerReport {
  int lie_dim = 0;
  int orbit_dim = 0;
  int group_dim = 0;
  std::vector<CVector> kernel_basis;
  std::vector<double> singular_values;
};

/// Relative singular-value threshold for all rank decisions.
inline constexpr double kStabilizerRankTol = 1e-8;

StabilizerReport stabilizer_lie(const Representation& rep, const StateVector& v);

/// stabilizer_lie over extend_with_scalars(rep).
StabilizerReport extended_stabilizer_lie(const Representation& rep, const StateVector& v);

struct PhaseStabilizerHit {
  GroupElement element;
  Complex phase;
  /// Smallest p in 1..64 with |phase^p - 1| <= 1e-9, or 0.
  int phase_order = 0;
  double residual = 0.0;
};

int root_of_unity_order(Complex z, int max_order = 64, double tol = 1e-9);

/// Some hit iff g v is parallel to v: |gv - chi v| <= tol |v| with
/// chi = <gv, v>/|v|^2.
std::optional<PhaseStabilizerHit> phase_check(const GroupElement& g, const StateVector& v, double tol = 1e-9);

/// gcd of the degrees of the invariants with |f(x)| > 1e-10 |x|^deg.
/// Throws PreconditionError when all vanish (r_x undefined on the null cone).
int compute_r(const InvariantSet& invariants, const CVector& x);

enum class AdjointOutcome { Pass, Fail, NotApplicable };
std::string to_string(AdjointOutcome o);

struct AdjointCheck {
  AdjointOutcome outcome = AdjointOutcome::NotApplicable;
  std::optional<Complex> phase;
  std::optional<Complex> adjoint_phase;
};

struct AdjointClosureReport {
  std::vector<AdjointCheck> checks;
  bool all_pass() const;
};

/// For each candidate g with g v = chi v, checks that g^* v is also a
/// multiple of v. Requires v critical within 1e-10.
AdjointClosureReport verify_adjoint_closure(const Representation& rep, const std::vector<GroupElement>& candidates,
                                            const StateVector& v);

/// Decides when two group elements represent the same element of the group.
using GroupEquivalence = std::function<bool(const GroupElement&, const GroupElement&)>;

/// Entrywise match within 1e-9 (relative to the larger Frobenius norm).
bool matrix_equivalence(const GroupElement& a, const GroupElement& b);

/// Pairs (g, h) stored in `factors` identified modulo +-(I, I); falls back to
/// matrix_equivalence when the factors are absent.
bool pair_sign_equivalence(const GroupElement& a, const GroupElement& b);

struct FiniteGroupReport {
  int order = 0;
  bool closed_under_product = false;
  bool all_stabilize = false;
  double max_stabilize_residual = 0.0;
};

FiniteGroupReport verify_finite_group(const Representation& rep, const std::vector<GroupElement>& elements,
                                      const StateVector& v, const GroupEquivalence& equivalent = matrix_equivalence);

/// The 16 sign-diagonal pairs (eps, eps) acting on M4 by X -> eps X eps^{-1}.
std::vector<GroupElement> so4pair_sign_diagonal_pairs();

/// A^{(x)k} with A = diag(xi, xi^{-1}), xi = exp(i pi/4).
GroupElement eighth_root_tensor_element(int k);

}  // namespace kn
