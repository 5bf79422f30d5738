#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kn/core.hpp"

namespace kn {

/// Matrix realization of a reductive group acting on V = C^n.
///
/// The Lie algebra of the maximal compact subgroup is given by a basis of
/// skew-Hermitian n x n matrices; its complex span is Lie(G). Instances are
/// immutable; the constructor rejects any basis element that is not exactly
/// skew-Hermitian.
class Representation {
 public:
  Representation(std::string label, std::vector<CMatrix> k_basis);

  Eigen::Index dim_v() const { return dim_v_; }
  Eigen::Index group_dim() const { return static_cast<Eigen::Index>(k_basis_.size()); }
  const std::vector<CMatrix>& k_basis() const { return k_basis_; }
  const CMatrix& generator(Eigen::Index j) const { return k_basis_[static_cast<std::size_t>(j)]; }
  const std::string& label() const { return label_; }

  /// True when i*Identity is one of the basis elements.
  bool has_scalar_generator() const;

  /// sum_j coeffs_j X_j.
  CMatrix lie_element(const CVector& coeffs) const;

 private:
  std::string label_;
  Eigen::Index dim_v_ = 0;
  std::vector<CMatrix> k_basis_;
};

struct GroupElement {
  CMatrix matrix;
  /// Optional structured description, e.g. tensor factors A_1..A_k or the
  /// (left, right) pair of an SO(4) x SO(4) element.
  std::vector<CMatrix> factors;
  std::string provenance;

  /// Rejects singular or badly conditioned matrices (condition number above 1e12).
  explicit GroupElement(CMatrix m, std::vector<CMatrix> factors = {}, std::string provenance = {});

  GroupElement adjoint() const;
};

struct StateVector {
  CVector entries;

  StateVector() = default;
  explicit StateVector(CVector e);

  Eigen::Index size() const { return entries.size(); }
  double norm() const { return entries.norm(); }
};

/// SL(2,C)^{(x)k} on (C^2)^{(x)k}, generators (i/2)*Pauli at each tensor slot.
Representation build_sl2_tensor_rep(int k);

/// Appends i*Identity to the basis, modelling S^1 K inside C^x G.
Representation extend_with_scalars(const Representation& rep);

/// SO(4,C) x SO(4,C) acting on M4(C) by (g,h)X = g X h^{-1}; M4 flattened row-major.
Representation build_so4_pair_rep();

/// The six standard real antisymmetric 4x4 matrices E_ab - E_ba, a < b.
std::vector<CMatrix> so4_basis();

/// Fixed unitary Q with entries in {0, +-1, +-i}/sqrt(2) mapping su(2)+su(2) onto so(4).
CMatrix magic_basis();

/// Unitary Phi on C^16 taking a 4-qubit tensor t (qubit 1 most significant)
/// to the row-major flattening of Q^* T conj(Q), T the 4x4 matrix with rows
/// indexed by qubits (1,2) and columns by qubits (3,4). It intertwines the
/// sl2x4 action with the so4pair action.
CMatrix spin_isomorphism();

struct IntertwiningReport {
  /// Worst distance from Phi X_j Phi^* to the so4pair span, over all j.
  double span_residual = 0.0;
  /// max_j max_t |Phi X_j t - X'_j Phi t| / |t| with X'_j the projection of
  /// Phi X_j Phi^* onto the so4pair span.
  double action_residual = 0.0;
};

IntertwiningReport spin_intertwining_residual(const std::vector<CVector>& tensors);

/// Registry keys: "sl2x2".."sl2x6", "so4pair", optionally with suffix "+scalars".
Representation make_representation(const std::string& label);
std::vector<std::string> registry_labels();

/// exp(sum_j coeffs_j X_j) v.
StateVector exp_action(const Representation& rep, const CVector& coeffs, const StateVector& v);

/// exp(sum_j coeffs_j X_j) as a dense matrix.
CMatrix exp_lie(const Representation& rep, const CVector& coeffs);

struct RepValidation {
  bool skew_hermitian = false;
  double skew_residual = 0.0;
  bool bracket_closed = false;
  double bracket_residual = 0.0;
  bool independent = false;
  double min_singular_value = 0.0;

  bool ok() const { return skew_hermitian && bracket_closed && independent; }
};

RepValidation validate_rep(const Representation& rep);

/// Coefficients c minimizing |sum_j c_j X_j - target|_F, and the residual.
struct SpanProjection {
  CVector coeffs;
  double residual = 0.0;
};
SpanProjection project_onto_span(const Representation& rep, const CMatrix& target);

}  // namespace kn
