#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kn/invariants.hpp"
#include "kn/rep_model.hpp"

namespace kn {

/// Moment-map components g_j(v) = (1/2i) <X_j v, v>, one per compact generator.
struct MomentValue {
  RVector components;
  double norm_sq_v = 0.0;
  /// Largest |Re <X_j v, v>|; zero up to rounding for skew-Hermitian X_j.
  double imaginary_residue = 0.0;

  double norm() const { return components.norm(); }
};

MomentValue moment_components(const Representation& rep, const StateVector& v);

/// |mu(v)|_2 <= tol * |v|^2. The zero vector is critical.
bool is_critical(const Representation& rep, const StateVector& v, double tol);

struct FlowConfig {
  int max_iters = 10000;
  double grad_tol = 1e-10;
  double nullcone_tol = 1e-8;
  double armijo_c = 1e-4;
  double backtrack_factor = 0.5;
  double initial_step = 1.0;

  /// Throws InputError if a field is out of range.
  void validate() const;
};

enum class FlowStatus { Critical, NullCone, MaxIterations };
std::string to_string(FlowStatus s);

struct FlowResult {
  FlowStatus status = FlowStatus::MaxIterations;
  StateVector final_vector;
  /// Per accepted step k, coefficients c_k with v_{k+1} = exp(sum_j c_kj X_j) v_k.
  std::vector<CVector> group_log;
  /// |v_t|^2 for t = 0..iterations.
  std::vector<double> energy_trace;
  double final_grad_norm = 0.0;
  int iterations = 0;
};

/// Descends |v|^2 along the G-orbit of v0 with steps v <- exp(s H(v)) v,
/// H(v) = sum_j g_j(v) (i X_j), and Armijo backtracking on s. The trial step
/// at each iteration is initial_step / |v|^2, which makes the iteration
/// invariant under rescaling of v0.
FlowResult minimize_norm(const Representation& rep, const StateVector& v0, const FlowConfig& cfg = {});

/// Replays a group log on v: prod_k exp(sum_j c_kj X_j) v.
StateVector replay_group_log(const Representation& rep, const std::vector<CVector>& log, const StateVector& v);

enum class OrbitVerdict { ClosedOrbit, NullCone, Undetermined };
std::string to_string(OrbitVerdict v);

struct OrbitClassification {
  OrbitVerdict verdict = OrbitVerdict::Undetermined;
  FlowResult flow;
  std::optional<InvariantValues> invariants;
  std::optional<bool> invariants_vanish;
  std::string reason;
};

/// Tolerance for "all invariants vanish" in classify_orbit, relative to |v|^deg.
inline constexpr double kInvariantVanishTol = 1e-10;

OrbitClassification classify_orbit(const Representation& rep, const StateVector& v, const FlowConfig& cfg = {},
                                   const InvariantSet* invariants = nullptr);

struct CriticalityRank {
  int rank = 0;
  bool at_critical_point = true;
  std::vector<double> singular_values;
};

/// Real rank of w -> omega(X_j v, w), j = 1..m, on V as R^{2n}; equals dim_R K v.
CriticalityRank criticality_rank(const Representation& rep, const StateVector& v);

struct MinimalityReport {
  int n_samples = 0;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  bool passed = false;
};

/// Samples g = exp(Z), Z = random complex combination of k_basis with |Z|_F
/// uniform in [0, 3], and checks |gv| >= |v|(1 - 1e-9). With real_only the
/// coefficients are real and g is unitary. Requires v critical within 1e-10.
MinimalityReport verify_kn_minimality(const Representation& rep, const StateVector& v, int n_samples,
                                      std::uint64_t seed, bool real_only = false);

}  // namespace kn
