#include <cmath>

#include <gtest/gtest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "kn/atlas.hpp"
#include "kn/kempf_ness.hpp"
#include "kn/sampling.hpp"

using namespace kn;

namespace {

const Complex kI(0.0, 1.0);

// Direct evaluation of g_j from its definition; no shared code with the library path.
double g_oracle(const CMatrix& x, const CVector& v) {
  Complex f = 0.0;
  const CVector xv = x * v;
  for (Eigen::Index k = 0; k < v.size(); ++k) f += xv(k) * std::conj(v(k));
  return (f / (2.0 * kI)).real();
}

StateVector random_state(const Representation& rep, std::uint64_t seed) {
  Rng rng = stream_rng(seed, 0);
  return StateVector(gaussian_vector(rep.dim_v(), rng));
}

const std::vector<std::string> kReps = {"sl2x2", "sl2x3", "sl2x4", "sl2x5", "so4pair"};

}  // namespace

TEST(moment, zero_vector) {
  const auto rep = build_sl2_tensor_rep(4);
  const auto mu = moment_components(rep, StateVector(CVector::Zero(16)));
  EXPECT_EQ(mu.components.size(), 12);
  EXPECT_EQ(mu.components.norm(), 0.0);
}

TEST(moment, so4pair_real_diagonal_vanishes) {
  const auto rep = build_so4_pair_rep();
  const auto mu = moment_components(rep, flattened_diagonal({1.0, 2.0, 3.0, 4.0}));
  EXPECT_EQ(mu.components.cwiseAbs().maxCoeff(), 0.0);
}

TEST(moment, example2_is_critical) {
  const auto rep = build_sl2_tensor_rep(5);
  const auto v = example2_critical();
  const auto mu = moment_components(rep, v);
  EXPECT_LE(mu.components.cwiseAbs().maxCoeff(), 1e-12 * mu.norm_sq_v);
}

TEST(moment, matches_definition_and_is_real) {
  for (const auto& label : kReps) {
    const auto rep = make_representation(label);
    const auto v = random_state(rep, 5);
    const auto mu = moment_components(rep, v);
    EXPECT_LE(mu.imaginary_residue, 1e-12 * mu.norm_sq_v);
    for (Eigen::Index j = 0; j < rep.group_dim(); ++j)
      EXPECT_NEAR(mu.components(j), g_oracle(rep.generator(j), v.entries), 1e-13 * mu.norm_sq_v);
  }
}

TEST(moment, scale_equivariance) {
  Rng rng(99);
  std::normal_distribution<double> normal;
  for (const auto& label : kReps) {
    const auto rep = make_representation(label);
    for (int trial = 0; trial < 20; ++trial) {
      const StateVector v(gaussian_vector(rep.dim_v(), rng));
      const Complex c(normal(rng), normal(rng));
      const auto mu = moment_components(rep, v);
      const auto mu_c = moment_components(rep, StateVector(c * v.entries));
      EXPECT_LE((mu_c.components - std::norm(c) * mu.components).norm(),
                1e-12 * std::norm(c) * mu.components.norm())
          << label;
    }
  }
}

TEST(moment, dimension_mismatch) {
  EXPECT_THROW(moment_components(build_sl2_tensor_rep(4), StateVector(CVector::Zero(8))), InputError);
}

TEST(is_critical, cases) {
  const auto rep4 = build_sl2_tensor_rep(4);
  EXPECT_TRUE(is_critical(rep4, StateVector(CVector::Zero(16)), 1e-10));
  EXPECT_TRUE(is_critical(build_sl2_tensor_rep(5), example2_critical(), 1e-10));
  // A nonzero null-cone point cannot be critical: critical orbits are closed.
  const auto x = principal_nilpotent();
  EXPECT_FALSE(is_critical(rep4, x, 1e-10));
  const auto mu = moment_components(rep4, x);
  EXPECT_GT(mu.norm() / mu.norm_sq_v, 0.1);
}

TEST(symplectic, alternating_and_antisymmetric) {
  Rng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const CVector x = gaussian_vector(16, rng);
    const CVector y = gaussian_vector(16, rng);
    EXPECT_NEAR(symplectic_pairing(x, x), 0.0, 1e-13);
    EXPECT_NEAR(symplectic_pairing(x, y), -symplectic_pairing(y, x), 1e-13);
  }
  EXPECT_THROW(symplectic_pairing(CVector::Zero(3), CVector::Zero(4)), InputError);
}

TEST(symplectic, differential_of_moment_component) {
  // Central difference of g_j at v in direction w equals omega(X_j v, w).
  for (const auto& label : kReps) {
    const auto rep = make_representation(label);
    Rng rng(31);
    std::uniform_int_distribution<Eigen::Index> pick(0, rep.group_dim() - 1);
    for (int trial = 0; trial < 20; ++trial) {
      const CVector v = gaussian_vector(rep.dim_v(), rng);
      const CVector w = gaussian_vector(rep.dim_v(), rng);
      const Eigen::Index j = pick(rng);
      const double h = 1e-5;
      const double fd =
          (g_oracle(rep.generator(j), v + h * w) - g_oracle(rep.generator(j), v - h * w)) / (2.0 * h);
      const double exact = symplectic_pairing(CVector(rep.generator(j) * v), w);
      EXPECT_NEAR(fd, exact, 1e-6 * std::max(1.0, std::abs(exact))) << label;
    }
  }
}

TEST(flow, descent_identity) {
  for (const auto& label : kReps) {
    const auto rep = make_representation(label);
    Rng rng(8);
    for (int trial = 0; trial < 10; ++trial) {
      const CVector v = gaussian_vector(rep.dim_v(), rng);
      const auto mu = moment_components(rep, StateVector(v));
      CMatrix hmat = CMatrix::Zero(rep.dim_v(), rep.dim_v());
      for (Eigen::Index j = 0; j < rep.group_dim(); ++j) hmat += kI * mu.components(j) * rep.generator(j);
      const double t = 1e-5;
      const double fd = ((CMatrix(t * hmat).exp() * v).squaredNorm() - (CMatrix(-t * hmat).exp() * v).squaredNorm()) /
                        (2.0 * t);
      const double expected = -4.0 * mu.components.squaredNorm();
      EXPECT_NEAR(fd, expected, 1e-6 * std::abs(expected)) << label;
    }
  }
}

TEST(flow, already_critical_returns_immediately) {
  const auto rep = build_sl2_tensor_rep(5);
  const auto v = example2_critical();
  const auto r = minimize_norm(rep, v);
  EXPECT_EQ(r.status, FlowStatus::Critical);
  EXPECT_LE(r.iterations, 1);
  EXPECT_LT((r.final_vector.entries - v.entries).norm(), 1e-15);
}

TEST(flow, principal_nilpotent_collapses) {
  const auto rep = build_sl2_tensor_rep(4);
  const auto r = minimize_norm(rep, principal_nilpotent());
  EXPECT_EQ(r.status, FlowStatus::NullCone);
  EXPECT_LE(r.final_vector.norm() / principal_nilpotent().norm(), 1e-8);
}

TEST(flow, generic_sl2x4_converges) {
  const auto rep = build_sl2_tensor_rep(4);
  int critical = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto r = minimize_norm(rep, random_state(rep, seed));
    if (r.status == FlowStatus::Critical) {
      ++critical;
      EXPECT_LE(r.final_grad_norm, 1e-10 * r.final_vector.entries.squaredNorm());
    }
    for (std::size_t k = 1; k < r.energy_trace.size(); ++k) ASSERT_LE(r.energy_trace[k], r.energy_trace[k - 1]);
    EXPECT_EQ(r.energy_trace.size(), static_cast<std::size_t>(r.iterations) + 1);
  }
  EXPECT_GE(critical, 95);
}

TEST(flow, group_log_reproduces_trajectory) {
  const auto rep = build_sl2_tensor_rep(4);
  const auto v0 = random_state(rep, 3);
  const auto r = minimize_norm(rep, v0);
  const auto replayed = replay_group_log(rep, r.group_log, v0);
  EXPECT_LT((replayed.entries - r.final_vector.entries).norm(), 1e-8 * v0.norm());
  EXPECT_EQ(r.group_log.size(), static_cast<std::size_t>(r.iterations));
}

TEST(flow, energy_trace_matches_states) {
  const auto rep = build_so4_pair_rep();
  const auto v0 = random_state(rep, 12);
  const auto r = minimize_norm(rep, v0);
  EXPECT_NEAR(r.energy_trace.back(), r.final_vector.entries.squaredNorm(), 1e-10 * v0.entries.squaredNorm());
}

TEST(flow, invariants_constant_along_trajectory) {
  for (const std::string label : {"sl2x4", "so4pair"}) {
    const auto rep = make_representation(label);
    const auto inv = invariant_set_for(label);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto v0 = random_state(rep, 100 + seed);
      const auto r = minimize_norm(rep, v0);
      const auto before = evaluate_all(inv, v0.entries);
      const auto after = evaluate_all(inv, r.final_vector.entries);
      for (std::size_t i = 0; i < before.values.size(); ++i)
        EXPECT_LE(std::abs(before.values[i] - after.values[i]), 1e-8 * before.scales[i]) << label;
    }
  }
}

TEST(flow, rejects_zero_and_bad_config) {
  const auto rep = build_sl2_tensor_rep(4);
  EXPECT_THROW(minimize_norm(rep, StateVector(CVector::Zero(16))), InputError);
  FlowConfig cfg;
  cfg.armijo_c = 1.0;
  EXPECT_THROW(minimize_norm(rep, principal_nilpotent(), cfg), InputError);
  cfg = FlowConfig{};
  cfg.backtrack_factor = 0.0;
  EXPECT_THROW(minimize_norm(rep, principal_nilpotent(), cfg), InputError);
  cfg = FlowConfig{};
  cfg.grad_tol = -1.0;
  EXPECT_THROW(minimize_norm(rep, principal_nilpotent(), cfg), InputError);
}

TEST(flow, max_iterations_status) {
  const auto rep = build_sl2_tensor_rep(4);
  FlowConfig cfg;
  cfg.max_iters = 3;
  const auto r = minimize_norm(rep, random_state(rep, 1), cfg);
  EXPECT_EQ(r.status, FlowStatus::MaxIterations);
  EXPECT_EQ(r.iterations, 3);
}

TEST(flow, k_equivariance_of_criticality) {
  const auto rep = build_sl2_tensor_rep(5);
  const auto v = example2_critical();
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto kv = exp_action(rep, real_gaussian_coeffs(rep.group_dim(), rng), v);
    EXPECT_TRUE(is_critical(rep, kv, 1e-10));
  }
}

TEST(flow, critical_norm_is_orbit_invariant) {
  for (const std::string label : {"sl2x4", "so4pair"}) {
    const auto rep = make_representation(label);
    const auto base = minimize_norm(rep, random_state(rep, 77));
    ASSERT_EQ(base.status, FlowStatus::Critical);
    Rng rng(78);
    for (int trial = 0; trial < 3; ++trial) {
      const GroupElement g = random_group_element(rep, rng, 1.0);
      const StateVector w(g.matrix * base.final_vector.entries);
      const auto again = minimize_norm(rep, w);
      ASSERT_EQ(again.status, FlowStatus::Critical);
      EXPECT_NEAR(again.final_vector.norm(), base.final_vector.norm(), 1e-8 * base.final_vector.norm()) << label;
    }
  }
}

TEST(classify, examples_and_generic) {
  const auto rep5 = build_sl2_tensor_rep(5);
  EXPECT_EQ(classify_orbit(rep5, example2_critical()).verdict, OrbitVerdict::ClosedOrbit);

  const auto rep4 = build_sl2_tensor_rep(4);
  const auto inv = invariant_set_for("sl2x4");
  const auto nil = classify_orbit(rep4, principal_nilpotent(), FlowConfig{}, &inv);
  EXPECT_EQ(nil.verdict, OrbitVerdict::NullCone);
  ASSERT_TRUE(nil.invariants_vanish.has_value());
  EXPECT_TRUE(*nil.invariants_vanish);
  EXPECT_LE(nil.flow.iterations, 10000);

  const auto gen = classify_orbit(rep4, random_state(rep4, 9), FlowConfig{}, &inv);
  EXPECT_EQ(gen.verdict, OrbitVerdict::ClosedOrbit);
}

TEST(classify, disagreement_is_undetermined) {
  // A loose collapse threshold makes the flow claim NullCone on a generic vector;
  // the nonzero invariants overrule it.
  const auto rep = build_sl2_tensor_rep(4);
  const auto inv = invariant_set_for("sl2x4");
  FlowConfig cfg;
  cfg.nullcone_tol = 0.999;
  const auto v = random_state(rep, 2);
  const auto c = classify_orbit(rep, v, cfg, &inv);
  ASSERT_EQ(c.flow.status, FlowStatus::NullCone);
  EXPECT_EQ(c.verdict, OrbitVerdict::Undetermined);

  FlowConfig short_cfg;
  short_cfg.max_iters = 1;
  EXPECT_EQ(classify_orbit(rep, v, short_cfg).verdict, OrbitVerdict::Undetermined);
}

TEST(classify, errors) {
  const auto rep = build_sl2_tensor_rep(4);
  EXPECT_THROW(classify_orbit(rep, StateVector(CVector::Zero(16))), InputError);
  const auto so4_inv = d4_invariant_set();
  EXPECT_THROW(classify_orbit(rep, principal_nilpotent(), FlowConfig{}, &so4_inv), InputError);
}

TEST(criticality_rank, cases) {
  const auto rep4 = build_sl2_tensor_rep(4);
  EXPECT_EQ(criticality_rank(rep4, StateVector(CVector::Zero(16))).rank, 0);

  const auto flow = minimize_norm(rep4, random_state(rep4, 21));
  ASSERT_EQ(flow.status, FlowStatus::Critical);
  const auto generic = criticality_rank(rep4, flow.final_vector);
  EXPECT_TRUE(generic.at_critical_point);
  EXPECT_EQ(generic.rank, 12);

  EXPECT_EQ(criticality_rank(build_sl2_tensor_rep(5), example2_critical()).rank, 15);

  const auto off = criticality_rank(rep4, random_state(rep4, 22));
  EXPECT_FALSE(off.at_critical_point);
}

TEST(minimality, example2) {
  const auto rep = build_sl2_tensor_rep(5);
  const auto report = verify_kn_minimality(rep, example2_critical(), 500, 1);
  EXPECT_TRUE(report.passed);
  EXPECT_GE(report.min_ratio, 1.0 - 1e-9);
}

TEST(minimality, unitary_samples_preserve_norm) {
  const auto rep = build_sl2_tensor_rep(5);
  const auto report = verify_kn_minimality(rep, example2_critical(), 100, 2, true);
  EXPECT_NEAR(report.min_ratio, 1.0, 1e-12);
  EXPECT_NEAR(report.max_ratio, 1.0, 1e-12);
}

TEST(minimality, flow_output) {
  const auto rep = build_sl2_tensor_rep(4);
  const auto flow = minimize_norm(rep, random_state(rep, 40));
  ASSERT_EQ(flow.status, FlowStatus::Critical);
  const auto report = verify_kn_minimality(rep, flow.final_vector, 500, 3);
  EXPECT_GE(report.min_ratio, 1.0 - 1e-9);
}

TEST(minimality, requires_critical_point) {
  const auto rep = build_sl2_tensor_rep(4);
  EXPECT_THROW(verify_kn_minimality(rep, random_state(rep, 1), 10, 1), PreconditionError);
}
