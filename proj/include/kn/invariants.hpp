#pragma once

#include <functional>
#include <string>
#include <vector>

#include "kn/core.hpp"

namespace kn {

/// Homogeneous polynomial invariant acting on the flattened module vector.
struct Invariant {
  std::string name;
  int degree = 0;
  std::function<Complex(const CVector&)> evaluate;
};

struct InvariantSet {
  std::vector<Invariant> items;
  /// Label of the representation whose module the evaluators expect.
  std::string domain_label;
  Eigen::Index dim = 0;
};

struct InvariantValues {
  std::vector<Complex> values;
  /// |x|^degree per item, the reference magnitude for relative comparisons.
  std::vector<double> scales;
};

/// tr(X X^T), det X, tr((X X^T)^2), tr((X X^T)^3) on M4(C), flattened
/// row-major. X^T is the plain transpose.
InvariantSet d4_invariant_set();

InvariantValues evaluate_all(const InvariantSet& set, const CVector& x);

/// True iff |f_i(x)| <= tol * |x|^deg_i for every item.
bool null_cone_test(const InvariantSet& set, const CVector& x, double tol);

/// Pulls an so4pair set back to 4-qubit tensors through the spin isomorphism.
InvariantSet pullback_via_spin(const InvariantSet& set);

/// The D4 set for a representation label, if one exists ("so4pair", "sl2x4").
InvariantSet invariant_set_for(const std::string& rep_label);
bool has_invariant_set(const std::string& rep_label);

}  // namespace kn
