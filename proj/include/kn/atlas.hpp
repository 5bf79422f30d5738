#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kn/invariants.hpp"
#include "kn/kempf_ness.hpp"
#include "kn/stabilizer.hpp"

namespace kn {

// Named vectors from the two worked examples.

/// Basis tensor e_{i1} (x) ... (x) e_{ik}, indices 1 or 2.
CVector basis_tensor(const std::vector<int>& indices);

/// e1e1e2e2 + e1e2e1e1 + e2e1e1e2 + e2e1e2e1 in (C^2)^{(x)4}.
StateVector principal_nilpotent();

/// e1^{(x)5} - w / sqrt(3), w the sum of the five tensors with a single index 1.
StateVector example2_critical();

/// Row-major flattening of diag(d) in M4(C).
StateVector flattened_diagonal(const std::vector<Complex>& d);

struct SurveyConfig {
  std::string rep_label;
  int n_samples = 1;
  std::uint64_t seed = 0;
  FlowConfig flow;
  bool with_invariants = false;
  /// 0 means: KN_THREADS if set, else hardware concurrency.
  unsigned threads = 0;
};

struct SurveySample {
  FlowStatus status = FlowStatus::MaxIterations;
  int iterations = 0;
  double final_grad_norm = 0.0;
  std::optional<int> stabilizer_lie_dim;
  std::optional<int> orbit_dim;
  std::optional<int> criticality_rank;
  std::optional<InvariantValues> invariants;
  std::optional<bool> null_cone;
};

struct HistogramBin {
  FlowStatus status;
  std::optional<int> stabilizer_lie_dim;
  int count = 0;
};

struct SurveyReport {
  SurveyConfig config;
  int group_dim = 0;
  std::vector<SurveySample> per_sample;
  std::vector<HistogramBin> histogram;
  std::optional<int> d_estimate;
  std::optional<int> generic_stab_dim;
  int critical_count = 0;
  /// Critical samples whose stabilizer dimension differs from the modal one.
  int off_modal_count = 0;
};

/// Standard complex Gaussian samples pushed through minimize_norm; the sample
/// with index i always uses stream_rng(seed, i), so results do not depend on
/// the thread count.
SurveyReport run_survey(const SurveyConfig& cfg);

struct ScenarioCheck {
  std::string name;
  bool passed = false;
  nlohmann::json detail;
};

struct ScenarioReport {
  std::string name;
  std::vector<ScenarioCheck> checks;
  nlohmann::json data;
  bool all_passed() const;
};

/// "e1_nilpotent", "e1_diag" or "e2_critical".
ScenarioReport run_example(const std::string& name);
std::vector<std::string> example_names();

unsigned thread_count_from_env();

}  // namespace kn
