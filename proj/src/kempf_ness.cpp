#include "kn/kempf_ness.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

#include "kn/sampling.hpp"

namespace kn {

namespace {

constexpr double kRankTol = 1e-8;
constexpr double kCriticalPrecondition = 1e-10;
constexpr double kMinimalitySlack = 1e-9;
constexpr int kMaxBacktracks = 200;

const Complex I(0.0, 1.0);

void require_dim(const Representation& rep, const StateVector& v, const char* where) {
  if (v.size() != rep.dim_v())
    throw InputError(std::string(where) + ": vector has dimension " + std::to_string(v.size()) +
                     ", representation " + rep.label() + " expects " + std::to_string(rep.dim_v()));
}

}  // namespace

MomentValue moment_components(const Representation& rep, const StateVector& v) {
  require_dim(rep, v, "moment_components");
  MomentValue out;
  out.norm_sq_v = v.entries.squaredNorm();
  out.components.resize(rep.group_dim());
  for (Eigen::Index j = 0; j < rep.group_dim(); ++j) {
    const Complex f = inner(rep.generator(j) * v.entries, v.entries);
    // (1/2i) f = Im(f)/2 - i Re(f)/2
    out.components(j) = 0.5 * f.imag();
    out.imaginary_residue = std::max(out.imaginary_residue, std::abs(0.5 * f.real()));
  }
  return out;
}

bool is_critical(const Representation& rep, const StateVector& v, double tol) {
  const MomentValue mu = moment_components(rep, v);
  return mu.norm() <= tol * mu.norm_sq_v;
}

void FlowConfig::validate() const {
  if (max_iters < 0) throw InputError("FlowConfig: max_iters must be nonnegative");
  if (!(grad_tol > 0.0) || !(nullcone_tol > 0.0) || !(initial_step > 0.0))
    throw InputError("FlowConfig: tolerances and initial_step must be positive");
  if (!(armijo_c > 0.0 && armijo_c < 1.0)) throw InputError("FlowConfig: armijo_c must lie in (0,1)");
  if (!(backtrack_factor > 0.0 && backtrack_factor < 1.0))
    throw InputError("FlowConfig: backtrack_factor must lie in (0,1)");
}

std::string to_string(FlowStatus s) {
  switch (s) {
    case FlowStatus::Critical:
      return "Critical";
    case FlowStatus::NullCone:
      return "NullCone";
    case FlowStatus::MaxIterations:
      return "MaxIterations";
  }
  return "?";
}

std::string to_string(OrbitVerdict v) {
  switch (v) {
    case OrbitVerdict::ClosedOrbit:
      return "ClosedOrbit";
    case OrbitVerdict::NullCone:
      return "NullCone";
    case OrbitVerdict::Undetermined:
      return "Undetermined";
  }
  return "?";
}

FlowResult minimize_norm(const Representation& rep, const StateVector& v0, const FlowConfig& cfg) {
  cfg.validate();
  require_dim(rep, v0, "minimize_norm");
  const double norm0 = v0.norm();
  if (norm0 == 0.0) throw InputError("minimize_norm: v0 must be nonzero");

  FlowResult result;
  CVector v = v0.entries;
  double energy = v.squaredNorm();
  result.energy_trace.push_back(energy);

  for (int iter = 0;; ++iter) {
    const MomentValue mu = moment_components(rep, StateVector(v));
    const double grad_sq = mu.components.squaredNorm();
    result.final_grad_norm = std::sqrt(grad_sq);
    result.iterations = iter;

    if (result.final_grad_norm <= cfg.grad_tol * mu.norm_sq_v) {
      result.status = FlowStatus::Critical;
      break;
    }
    if (std::sqrt(mu.norm_sq_v) / norm0 <= cfg.nullcone_tol) {
      result.status = FlowStatus::NullCone;
      break;
    }
    if (iter >= cfg.max_iters) {
      result.status = FlowStatus::MaxIterations;
      break;
    }

    // H = sum_j g_j (i X_j) is Hermitian; in its eigenbasis exp(sH) is diagonal
    // so the line search costs O(n) per trial step.
    CMatrix h = CMatrix::Zero(rep.dim_v(), rep.dim_v());
    for (Eigen::Index j = 0; j < rep.group_dim(); ++j) h += (I * mu.components(j)) * rep.generator(j);
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(h);
    if (eig.info() != Eigen::Success) throw std::runtime_error("minimize_norm: eigensolver failed");
    const RVector& lambda = eig.eigenvalues();
    const CVector y = eig.eigenvectors().adjoint() * v;
    const RVector weights = y.cwiseAbs2();

    // d/ds |exp(sH) v|^2 at s = 0.
    const double slope = -4.0 * grad_sq;
    double step = cfg.initial_step / mu.norm_sq_v;
    double delta = 0.0;
    bool accepted = false;
    for (int bt = 0; bt < kMaxBacktracks; ++bt) {
      delta = 0.0;
      for (Eigen::Index k = 0; k < lambda.size(); ++k) delta += weights(k) * std::expm1(2.0 * step * lambda(k));
      if (!std::isfinite(delta)) {
        step *= cfg.backtrack_factor;
        continue;
      }
      if (delta <= cfg.armijo_c * step * slope) {
        accepted = true;
        break;
      }
      step *= cfg.backtrack_factor;
    }
    if (!accepted) {
      // No representable decrease left; report as a stall rather than a verdict.
      result.status = FlowStatus::MaxIterations;
      break;
    }

    CVector scaled(lambda.size());
    for (Eigen::Index k = 0; k < lambda.size(); ++k) scaled(k) = std::exp(step * lambda(k)) * y(k);
    v = eig.eigenvectors() * scaled;
    if (!v.allFinite()) throw std::runtime_error("minimize_norm: non-finite state after step");

    // Energy is tracked through the exact eigenbasis increments so the trace
    // reflects the accepted Armijo decreases without reorthogonalization noise.
    energy += delta;
    result.energy_trace.push_back(energy);
    result.group_log.push_back((I * step) * mu.components.cast<Complex>());
  }

  result.final_vector = StateVector(v);
  return result;
}

StateVector replay_group_log(const Representation& rep, const std::vector<CVector>& log, const StateVector& v) {
  require_dim(rep, v, "replay_group_log");
  CVector out = v.entries;
  for (const auto& c : log) out = exp_lie(rep, c) * out;
  return StateVector(out);
}

OrbitClassification classify_orbit(const Representation& rep, const StateVector& v, const FlowConfig& cfg,
                                   const InvariantSet* invariants) {
  if (v.norm() == 0.0) throw InputError("classify_orbit: v must be nonzero");
  OrbitClassification out;
  if (invariants != nullptr) {
    if (invariants->domain_label != rep.label())
      throw InputError("classify_orbit: invariant set domain " + invariants->domain_label +
                       " does not match representation " + rep.label());
    out.invariants = evaluate_all(*invariants, v.entries);
    out.invariants_vanish = null_cone_test(*invariants, v.entries, kInvariantVanishTol);
  }
  out.flow = minimize_norm(rep, v, cfg);

  switch (out.flow.status) {
    case FlowStatus::Critical:
      if (out.invariants_vanish.value_or(false)) {
        out.verdict = OrbitVerdict::Undetermined;
        out.reason = "flow reached a critical point but all invariants vanish";
      } else {
        out.verdict = OrbitVerdict::ClosedOrbit;
        out.reason = "flow reached a nonzero critical point";
      }
      break;
    case FlowStatus::NullCone:
      if (out.invariants_vanish.has_value() && !*out.invariants_vanish) {
        out.verdict = OrbitVerdict::Undetermined;
        out.reason = "flow collapsed but some invariant is nonzero";
      } else {
        out.verdict = OrbitVerdict::NullCone;
        out.reason = out.invariants_vanish ? "flow collapsed to 0 and all invariants vanish" : "flow collapsed to 0";
      }
      break;
    case FlowStatus::MaxIterations:
      out.verdict = OrbitVerdict::Undetermined;
      out.reason = "flow stopped without reaching a critical point or collapsing";
      break;
  }
  return out;
}

CriticalityRank criticality_rank(const Representation& rep, const StateVector& v) {
  require_dim(rep, v, "criticality_rank");
  CriticalityRank out;
  out.at_critical_point = is_critical(rep, v, kCriticalPrecondition);
  const Eigen::Index n = rep.dim_v();
  // omega(a, w) = Im <a, w> = Im(a) . Re(w) - Re(a) . Im(w)
  RMatrix functionals(rep.group_dim(), 2 * n);
  for (Eigen::Index j = 0; j < rep.group_dim(); ++j) {
    const CVector a = rep.generator(j) * v.entries;
    functionals.row(j).head(n) = a.imag().transpose();
    functionals.row(j).tail(n) = -a.real().transpose();
  }
  Eigen::JacobiSVD<RMatrix> svd(functionals);
  const RVector& s = svd.singularValues();
  out.singular_values.assign(s.data(), s.data() + s.size());
  const double smax = s.size() > 0 ? s(0) : 0.0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (smax > 0.0 && s(k) > kRankTol * smax) ++out.rank;
  return out;
}

MinimalityReport verify_kn_minimality(const Representation& rep, const StateVector& v, int n_samples,
                                      std::uint64_t seed, bool real_only) {
  require_dim(rep, v, "verify_kn_minimality");
  if (n_samples < 1) throw InputError("verify_kn_minimality: n_samples must be positive");
  if (!is_critical(rep, v, kCriticalPrecondition))
    throw PreconditionError("verify_kn_minimality: v is not critical within 1e-10");

  Rng rng(seed);
  std::uniform_real_distribution<double> radius_dist(0.0, 3.0);
  const double norm_v = v.norm();
  MinimalityReport report;
  report.n_samples = n_samples;
  report.min_ratio = std::numeric_limits<double>::infinity();
  report.max_ratio = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    const CVector c = real_only ? real_gaussian_coeffs(rep.group_dim(), rng) : gaussian_vector(rep.group_dim(), rng);
    CMatrix z = rep.lie_element(c);
    const double fro = z.norm();
    const double radius = radius_dist(rng);
    if (fro > 0.0) z *= radius / fro;
    const double ratio = (z.exp() * v.entries).norm() / norm_v;
    report.min_ratio = std::min(report.min_ratio, ratio);
    report.max_ratio = std::max(report.max_ratio, ratio);
  }
  report.passed = report.min_ratio >= 1.0 - kMinimalitySlack;
  return report;
}

}  // namespace kn
