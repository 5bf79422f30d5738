#include "kn/atlas.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numbers>
#include <thread>

#include "kn/json_io.hpp"
#include "kn/sampling.hpp"

namespace kn {

namespace {

constexpr std::uint64_t kMinimalitySeed = 20240607;

ScenarioCheck check(std::string name, bool passed, nlohmann::json detail = nlohmann::json::object()) {
  return ScenarioCheck{std::move(name), passed, std::move(detail)};
}

SurveySample survey_one(const Representation& rep, const SurveyConfig& cfg, const InvariantSet* inv,
                        std::uint64_t index) {
  Rng rng = stream_rng(cfg.seed, index);
  const StateVector v0(gaussian_vector(rep.dim_v(), rng));
  const FlowResult flow = minimize_norm(rep, v0, cfg.flow);

  SurveySample s;
  s.status = flow.status;
  s.iterations = flow.iterations;
  s.final_grad_norm = flow.final_grad_norm;
  if (flow.status == FlowStatus::Critical) {
    const StabilizerReport stab = stabilizer_lie(rep, flow.final_vector);
    s.stabilizer_lie_dim = stab.lie_dim;
    s.orbit_dim = stab.orbit_dim;
    s.criticality_rank = criticality_rank(rep, flow.final_vector).rank;
  }
  if (inv != nullptr) {
    s.invariants = evaluate_all(*inv, v0.entries);
    s.null_cone = null_cone_test(*inv, v0.entries, kInvariantVanishTol);
  }
  return s;
}

}  // namespace

CVector basis_tensor(const std::vector<int>& indices) {
  std::vector<CMatrix> factors;
  for (int i : indices) {
    if (i != 1 && i != 2) throw InputError("basis_tensor: indices must be 1 or 2");
    CMatrix e = CMatrix::Zero(2, 1);
    e(i - 1, 0) = 1.0;
    factors.push_back(e);
  }
  return kron_all(factors).col(0);
}

StateVector principal_nilpotent() {
  return StateVector(basis_tensor({1, 1, 2, 2}) + basis_tensor({1, 2, 1, 1}) + basis_tensor({2, 1, 1, 2}) +
                     basis_tensor({2, 1, 2, 1}));
}

StateVector example2_critical() {
  CVector w = CVector::Zero(32);
  for (int k = 0; k < 5; ++k) {
    std::vector<int> idx(5, 2);
    idx[static_cast<std::size_t>(k)] = 1;
    w += basis_tensor(idx);
  }
  return StateVector(basis_tensor({1, 1, 1, 1, 1}) - w / std::sqrt(3.0));
}

StateVector flattened_diagonal(const std::vector<Complex>& d) {
  if (d.size() != 4) throw InputError("flattened_diagonal: need four entries");
  CMatrix m = CMatrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i) m(i, i) = d[static_cast<std::size_t>(i)];
  return StateVector(flatten_row_major(m));
}

unsigned thread_count_from_env() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("KN_THREADS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n >= 1) return std::min(hw, static_cast<unsigned>(n));
  }
  return hw;
}

SurveyReport run_survey(const SurveyConfig& cfg) {
  if (cfg.n_samples < 1) throw InputError("run_survey: n_samples must be at least 1");
  cfg.flow.validate();
  const Representation rep = make_representation(cfg.rep_label);
  std::optional<InvariantSet> inv;
  if (cfg.with_invariants) inv = invariant_set_for(cfg.rep_label);

  SurveyReport report;
  report.config = cfg;
  report.group_dim = static_cast<int>(rep.group_dim());
  report.per_sample.resize(static_cast<std::size_t>(cfg.n_samples));

  const unsigned threads =
      std::min<unsigned>(cfg.threads ? cfg.threads : thread_count_from_env(), static_cast<unsigned>(cfg.n_samples));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < cfg.n_samples; i = next++)
      report.per_sample[static_cast<std::size_t>(i)] =
          survey_one(rep, cfg, inv ? &*inv : nullptr, static_cast<std::uint64_t>(i));
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  std::map<std::pair<int, int>, int> bins;
  std::map<int, int> critical_dims;
  for (const auto& s : report.per_sample) {
    ++bins[{static_cast<int>(s.status), s.stabilizer_lie_dim.value_or(-1)}];
    if (s.status == FlowStatus::Critical) {
      ++report.critical_count;
      ++critical_dims[*s.stabilizer_lie_dim];
      report.d_estimate = std::max(report.d_estimate.value_or(0), *s.orbit_dim);
    }
  }
  for (const auto& [key, count] : bins) {
    HistogramBin bin{static_cast<FlowStatus>(key.first), std::nullopt, count};
    if (key.second >= 0) bin.stabilizer_lie_dim = key.second;
    report.histogram.push_back(bin);
  }
  int best = 0;
  for (const auto& [dim, count] : critical_dims) {
    if (count > best) {
      best = count;
      report.generic_stab_dim = dim;
    }
  }
  report.off_modal_count = report.critical_count - best;
  return report;
}

bool ScenarioReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const ScenarioCheck& c) { return c.passed; });
}

std::vector<std::string> example_names() { return {"e1_nilpotent", "e1_diag", "e2_critical"}; }

ScenarioReport run_example(const std::string& name) {
  ScenarioReport report;
  report.name = name;

  if (name == "e1_nilpotent") {
    const Representation rep = build_sl2_tensor_rep(4);
    const StateVector x = principal_nilpotent();
    const InvariantSet inv = pullback_via_spin(d4_invariant_set());
    report.data["vector"] = json::from_vector(x.entries);

    const StabilizerReport stab = stabilizer_lie(rep, x);
    report.checks.push_back(check("stabilizer_lie_dim == 0", stab.lie_dim == 0, json::from_stabilizer_report(stab)));

    const InvariantValues vals = evaluate_all(inv, x.entries);
    report.checks.push_back(check("pulled-back invariants vanish (1e-10 relative)",
                                  null_cone_test(inv, x.entries, kInvariantVanishTol),
                                  json::from_invariants(inv, vals)));

    const OrbitClassification cls = classify_orbit(rep, x, FlowConfig{}, &inv);
    report.checks.push_back(check("classify_orbit == NullCone", cls.verdict == OrbitVerdict::NullCone,
                                  {{"verdict", to_string(cls.verdict)},
                                   {"reason", cls.reason},
                                   {"iterations", cls.flow.iterations},
                                   {"final_norm_ratio", cls.flow.final_vector.norm() / x.norm()}}));

    const MomentValue mu = moment_components(rep, x);
    report.data["moment_norm_relative"] = mu.norm() / mu.norm_sq_v;
    report.data["is_critical"] = is_critical(rep, x, 1e-10);
  } else if (name == "e1_diag") {
    const Representation rep = build_so4_pair_rep();
    const StateVector v = flattened_diagonal({1.0, 2.0, 3.0, 4.0});
    const InvariantSet inv = d4_invariant_set();
    report.data["vector"] = json::from_vector(v.entries);

    const MomentValue mu = moment_components(rep, v);
    report.checks.push_back(check("is_critical (1e-10)", is_critical(rep, v, 1e-10),
                                  {{"moment_norm_relative", mu.norm() / mu.norm_sq_v}}));

    const StabilizerReport stab = stabilizer_lie(rep, v);
    report.checks.push_back(check("stabilizer_lie_dim == 0", stab.lie_dim == 0, json::from_stabilizer_report(stab)));

    const FiniteGroupReport group = verify_finite_group(rep, so4pair_sign_diagonal_pairs(), v, pair_sign_equivalence);
    report.checks.push_back(check("sign-diagonal group: order 8, closed, stabilizing",
                                  group.order == 8 && group.closed_under_product && group.all_stabilize,
                                  {{"order", group.order},
                                   {"closed_under_product", group.closed_under_product},
                                   {"all_stabilize", group.all_stabilize},
                                   {"max_stabilize_residual", group.max_stabilize_residual}}));

    const int r = compute_r(inv, v.entries);
    report.checks.push_back(check("compute_r == 2", r == 2, {{"r", r}}));
    report.data["invariants"] = json::from_invariants(inv, evaluate_all(inv, v.entries));
  } else if (name == "e2_critical") {
    const Representation rep = build_sl2_tensor_rep(5);
    const StateVector v = example2_critical();
    report.data["vector"] = json::from_vector(v.entries);

    const MomentValue mu = moment_components(rep, v);
    const double max_component = mu.components.cwiseAbs().maxCoeff();
    report.checks.push_back(check("is_critical: max |g_j| <= 1e-12 |v|^2",
                                  is_critical(rep, v, 1e-10) && max_component <= 1e-12 * mu.norm_sq_v,
                                  {{"max_abs_component", max_component}, {"norm_sq", mu.norm_sq_v}}));

    const StabilizerReport stab = stabilizer_lie(rep, v);
    report.checks.push_back(check("stabilizer_lie_dim == 0", stab.lie_dim == 0, json::from_stabilizer_report(stab)));
    const StabilizerReport ext = extended_stabilizer_lie(rep, v);
    report.checks.push_back(
        check("extended stabilizer_lie_dim == 0", ext.lie_dim == 0, json::from_stabilizer_report(ext)));

    const GroupElement g = eighth_root_tensor_element(5);
    const Complex xi = std::polar(1.0, std::numbers::pi / 4.0);
    const Complex expected = std::pow(xi, -3);
    const auto hit = phase_check(g, v);
    const bool phase_ok = hit && std::abs(hit->phase - expected) <= 1e-12 && hit->phase_order == 8;
    nlohmann::json phase_detail = {{"expected", json::from_complex(expected)}};
    if (hit) phase_detail["hit"] = json::from_phase_hit(*hit);
    report.checks.push_back(check("phase_check(A^(x)5) == xi^-3, order 8", phase_ok, phase_detail));

    const AdjointClosureReport adj = verify_adjoint_closure(rep, {g, g.adjoint()}, v);
    bool adj_ok = adj.all_pass();
    for (const auto& c : adj.checks) adj_ok = adj_ok && c.outcome == AdjointOutcome::Pass;
    nlohmann::json adj_detail = nlohmann::json::array();
    for (const auto& c : adj.checks) {
      nlohmann::json e = {{"outcome", to_string(c.outcome)}};
      if (c.phase) e["phase"] = json::from_complex(*c.phase);
      if (c.adjoint_phase) e["adjoint_phase"] = json::from_complex(*c.adjoint_phase);
      adj_detail.push_back(e);
    }
    report.checks.push_back(check("adjoint closure for g and g*", adj_ok, adj_detail));

    const MinimalityReport kn = verify_kn_minimality(rep, v, 500, kMinimalitySeed);
    report.checks.push_back(check("|gv| >= |v| on 500 samples", kn.passed,
                                  {{"min_ratio", kn.min_ratio}, {"max_ratio", kn.max_ratio}}));

    const OrbitClassification cls = classify_orbit(rep, v);
    report.checks.push_back(check("classify_orbit == ClosedOrbit", cls.verdict == OrbitVerdict::ClosedOrbit,
                                  {{"verdict", to_string(cls.verdict)}, {"iterations", cls.flow.iterations}}));
  } else {
    throw InputError("unknown example: " + name);
  }
  return report;
}

}  // namespace kn
