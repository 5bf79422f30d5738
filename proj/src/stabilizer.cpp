#include "kn/stabilizer.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "kn/kempf_ness.hpp"

namespace kn {

namespace {

constexpr double kGroupMatchTol = 1e-9;
constexpr double kInvariantNonzeroTol = 1e-10;

bool close(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  const double scale = std::max({1.0, a.norm(), b.norm()});
  return (a - b).norm() <= kGroupMatchTol * scale;
}

StabilizerReport kernel_of_action(const Representation& rep, const StateVector& v) {
  if (v.size() != rep.dim_v()) throw InputError("stabilizer_lie: vector dimension mismatch");
  const Eigen::Index m = rep.group_dim();
  CMatrix action(rep.dim_v(), m);
  for (Eigen::Index j = 0; j < m; ++j) action.col(j) = rep.generator(j) * v.entries;

  Eigen::JacobiSVD<CMatrix> svd(action, Eigen::ComputeFullV);
  const RVector& s = svd.singularValues();
  StabilizerReport out;
  out.group_dim = static_cast<int>(m);
  out.singular_values.assign(s.data(), s.data() + s.size());
  const double smax = s.size() > 0 ? s(0) : 0.0;
  int rank = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (smax > 0.0 && s(k) > kStabilizerRankTol * smax) ++rank;
  out.orbit_dim = rank;
  out.lie_dim = static_cast<int>(m) - rank;
  for (Eigen::Index k = rank; k < m; ++k) out.kernel_basis.push_back(svd.matrixV().col(k));
  return out;
}

}  // namespace

StabilizerReport stabilizer_lie(const Representation& rep, const StateVector& v) {
  return kernel_of_action(rep, v);
}

StabilizerReport extended_stabilizer_lie(const Representation& rep, const StateVector& v) {
  return kernel_of_action(extend_with_scalars(rep), v);
}

int root_of_unity_order(Complex z, int max_order, double tol) {
  Complex power = 1.0;
  for (int p = 1; p <= max_order; ++p) {
    power *= z;
    if (std::abs(power - 1.0) <= tol) return p;
  }
  return 0;
}

std::optional<PhaseStabilizerHit> phase_check(const GroupElement& g, const StateVector& v, double tol) {
  if (g.matrix.rows() != v.size()) throw InputError("phase_check: dimension mismatch");
  const double norm_sq = v.entries.squaredNorm();
  if (norm_sq == 0.0) throw InputError("phase_check: v must be nonzero");
  const CVector w = g.matrix * v.entries;
  const Complex chi = inner(w, v.entries) / norm_sq;
  const double residual = (w - chi * v.entries).norm();
  if (residual > tol * std::sqrt(norm_sq)) return std::nullopt;
  return PhaseStabilizerHit{g, chi, root_of_unity_order(chi), residual};
}

int compute_r(const InvariantSet& invariants, const CVector& x) {
  const InvariantValues vals = evaluate_all(invariants, x);
  int r = 0;
  for (std::size_t i = 0; i < vals.values.size(); ++i)
    if (std::abs(vals.values[i]) > kInvariantNonzeroTol * vals.scales[i])
      r = std::gcd(r, invariants.items[i].degree);
  if (r == 0) throw PreconditionError("r_x undefined on null cone");
  return r;
}

std::string to_string(AdjointOutcome o) {
  switch (o) {
    case AdjointOutcome::Pass:
      return "pass";
    case AdjointOutcome::Fail:
      return "fail";
    case AdjointOutcome::NotApplicable:
      return "not applicable";
  }
  return "?";
}

bool AdjointClosureReport::all_pass() const {
  for (const auto& c : checks)
    if (c.outcome == AdjointOutcome::Fail) return false;
  return true;
}

AdjointClosureReport verify_adjoint_closure(const Representation& rep, const std::vector<GroupElement>& candidates,
                                            const StateVector& v) {
  if (!is_critical(rep, v, 1e-10)) throw PreconditionError("verify_adjoint_closure: v is not critical within 1e-10");
  AdjointClosureReport report;
  for (const auto& g : candidates) {
    AdjointCheck check;
    if (const auto hit = phase_check(g, v)) {
      check.phase = hit->phase;
      const auto adj = phase_check(g.adjoint(), v);
      if (adj) check.adjoint_phase = adj->phase;
      check.outcome = adj ? AdjointOutcome::Pass : AdjointOutcome::Fail;
    }
    report.checks.push_back(check);
  }
  return report;
}

bool matrix_equivalence(const GroupElement& a, const GroupElement& b) { return close(a.matrix, b.matrix); }

bool pair_sign_equivalence(const GroupElement& a, const GroupElement& b) {
  if (a.factors.size() != 2 || b.factors.size() != 2) return matrix_equivalence(a, b);
  const bool same = close(a.factors[0], b.factors[0]) && close(a.factors[1], b.factors[1]);
  const bool negated = close(a.factors[0], -b.factors[0]) && close(a.factors[1], -b.factors[1]);
  return same || negated;
}

FiniteGroupReport verify_finite_group(const Representation& rep, const std::vector<GroupElement>& elements,
                                      const StateVector& v, const GroupEquivalence& equivalent) {
  if (elements.empty()) throw InputError("verify_finite_group: element list is empty");
  if (v.size() != rep.dim_v()) throw InputError("verify_finite_group: vector dimension mismatch");

  std::vector<GroupElement> classes;
  for (const auto& g : elements) {
    if (g.matrix.rows() != rep.dim_v()) throw InputError("verify_finite_group: element dimension mismatch");
    bool seen = false;
    for (const auto& c : classes) seen = seen || equivalent(g, c);
    if (!seen) classes.push_back(g);
  }

  FiniteGroupReport report;
  report.order = static_cast<int>(classes.size());
  report.closed_under_product = true;
  for (const auto& a : classes) {
    for (const auto& b : classes) {
      std::vector<CMatrix> factors;
      if (a.factors.size() == b.factors.size())
        for (std::size_t i = 0; i < a.factors.size(); ++i) factors.push_back(a.factors[i] * b.factors[i]);
      const GroupElement product(a.matrix * b.matrix, std::move(factors));
      bool found = false;
      for (const auto& c : classes) found = found || equivalent(product, c);
      report.closed_under_product = report.closed_under_product && found;
    }
  }

  const double norm_v = v.norm();
  for (const auto& g : elements)
    report.max_stabilize_residual = std::max(report.max_stabilize_residual, (g.matrix * v.entries - v.entries).norm());
  report.all_stabilize = report.max_stabilize_residual <= kGroupMatchTol * norm_v;
  return report;
}

std::vector<GroupElement> so4pair_sign_diagonal_pairs() {
  std::vector<GroupElement> out;
  for (int mask = 0; mask < 16; ++mask) {
    CMatrix eps = CMatrix::Zero(4, 4);
    for (int i = 0; i < 4; ++i) eps(i, i) = (mask >> i) & 1 ? -1.0 : 1.0;
    // X -> eps X eps^{-1}; row-major vec(A X B) = (A kron B^T) vec(X), eps^{-1} = eps^T = eps.
    out.emplace_back(kron(eps, eps), std::vector<CMatrix>{eps, eps}, "sign pair " + std::to_string(mask));
  }
  return out;
}

GroupElement eighth_root_tensor_element(int k) {
  if (k < 1) throw InputError("eighth_root_tensor_element: k must be positive");
  const Complex xi = std::polar(1.0, std::numbers::pi / 4.0);
  CMatrix a = CMatrix::Zero(2, 2);
  a(0, 0) = xi;
  a(1, 1) = 1.0 / xi;
  std::vector<CMatrix> factors(static_cast<std::size_t>(k), a);
  return GroupElement(kron_all(factors), factors, "diag(xi, xi^-1)^(x)" + std::to_string(k));
}

}  // namespace kn
