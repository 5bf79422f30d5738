#include "kn/invariants.hpp"

#include <cmath>

#include "kn/rep_model.hpp"

namespace kn {

namespace {

CMatrix gram(const CVector& x) {
  const CMatrix m = unflatten_row_major(x, 4);
  return m * m.transpose();
}

void check_domain(const InvariantSet& set, const CVector& x) {
  if (x.size() != set.dim)
    throw InputError("invariants: input of size " + std::to_string(x.size()) + " does not match domain " +
                     set.domain_label);
}

}  // namespace

InvariantSet d4_invariant_set() {
  InvariantSet set;
  set.domain_label = "so4pair";
  set.dim = 16;
  set.items.push_back({"tr(XX^T)", 2, [](const CVector& x) { return gram(x).trace(); }});
  set.items.push_back({"det(X)", 4, [](const CVector& x) { return unflatten_row_major(x, 4).determinant(); }});
  set.items.push_back({"tr((XX^T)^2)", 4, [](const CVector& x) {
                         const CMatrix s = gram(x);
                         return (s * s).trace();
                       }});
  set.items.push_back({"tr((XX^T)^3)", 6, [](const CVector& x) {
                         const CMatrix s = gram(x);
                         return (s * s * s).trace();
                       }});
  return set;
}

InvariantValues evaluate_all(const InvariantSet& set, const CVector& x) {
  check_domain(set, x);
  InvariantValues out;
  const double norm = x.norm();
  for (const auto& item : set.items) {
    out.values.push_back(item.evaluate(x));
    out.scales.push_back(std::pow(norm, item.degree));
  }
  return out;
}

bool null_cone_test(const InvariantSet& set, const CVector& x, double tol) {
  const InvariantValues vals = evaluate_all(set, x);
  for (std::size_t i = 0; i < vals.values.size(); ++i)
    if (std::abs(vals.values[i]) > tol * vals.scales[i]) return false;
  return true;
}

InvariantSet pullback_via_spin(const InvariantSet& set) {
  if (set.domain_label != "so4pair")
    throw InputError("pullback_via_spin: expected an so4pair invariant set, got " + set.domain_label);
  const CMatrix phi = spin_isomorphism();
  InvariantSet out;
  out.domain_label = "sl2x4";
  out.dim = 16;
  for (const auto& item : set.items) {
    auto f = item.evaluate;
    out.items.push_back({item.name, item.degree, [phi, f](const CVector& t) { return f(phi * t); }});
  }
  return out;
}

bool has_invariant_set(const std::string& rep_label) {
  return rep_label == "so4pair" || rep_label == "sl2x4";
}

InvariantSet invariant_set_for(const std::string& rep_label) {
  if (rep_label == "so4pair") return d4_invariant_set();
  if (rep_label == "sl2x4") return pullback_via_spin(d4_invariant_set());
  throw InputError("no invariant set available for representation " + rep_label);
}

}  // namespace kn
