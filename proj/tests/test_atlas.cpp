#include <gtest/gtest.h>

#include "kn/atlas.hpp"
#include "kn/json_io.hpp"
#include "kn/sampling.hpp"

using namespace kn;

namespace {

SurveyConfig survey_config(const std::string& label, int n, std::uint64_t seed) {
  SurveyConfig cfg;
  cfg.rep_label = label;
  cfg.n_samples = n;
  cfg.seed = seed;
  return cfg;
}

int histogram_total(const SurveyReport& r) {
  int total = 0;
  for (const auto& b : r.histogram) total += b.count;
  return total;
}

}  // namespace

TEST(scenario_vectors, shapes) {
  EXPECT_EQ(principal_nilpotent().size(), 16);
  EXPECT_NEAR(principal_nilpotent().norm(), 2.0, 1e-15);
  const auto v = example2_critical();
  EXPECT_EQ(v.size(), 32);
  EXPECT_NEAR(v.entries.squaredNorm(), 1.0 + 5.0 / 3.0, 1e-15);
  EXPECT_EQ(v.entries(0), Complex(1.0));
  // e2 e1 e1 e1 e1 sits at index 16 (qubit 1 most significant).
  EXPECT_EQ(basis_tensor({2, 1, 1, 1, 1})(16), Complex(1.0));
  EXPECT_THROW(basis_tensor({0, 1}), InputError);
}

TEST(survey, single_sample) {
  const auto r = run_survey(survey_config("sl2x2", 1, 5));
  ASSERT_EQ(r.per_sample.size(), 1u);
  EXPECT_EQ(histogram_total(r), 1);
}

TEST(survey, deterministic_across_thread_counts) {
  auto cfg = survey_config("sl2x3", 12, 42);
  cfg.with_invariants = false;
  cfg.threads = 1;
  const auto a = json::from_survey_report(run_survey(cfg)).dump();
  cfg.threads = 3;
  const auto b = json::from_survey_report(run_survey(cfg)).dump();
  EXPECT_EQ(a, b);
  cfg.seed = 43;
  EXPECT_NE(a, json::from_survey_report(run_survey(cfg)).dump());
}

TEST(survey, sl2x4_generic_data) {
  auto cfg = survey_config("sl2x4", 40, 42);
  cfg.with_invariants = true;
  const auto r = run_survey(cfg);
  EXPECT_GE(r.critical_count, 38);
  ASSERT_TRUE(r.generic_stab_dim.has_value());
  ASSERT_TRUE(r.d_estimate.has_value());
  EXPECT_EQ(*r.generic_stab_dim, 0);
  EXPECT_EQ(*r.d_estimate, 12);
  EXPECT_EQ(*r.d_estimate + *r.generic_stab_dim, r.group_dim);
  EXPECT_EQ(histogram_total(r), 40);
  for (const auto& s : r.per_sample) {
    ASSERT_TRUE(s.invariants.has_value());
    if (s.status == FlowStatus::Critical) EXPECT_EQ(*s.criticality_rank, *s.orbit_dim);
    if (s.status == FlowStatus::NullCone) EXPECT_TRUE(*s.null_cone);
  }
}

TEST(survey, sl2x5_generic_data) {
  const auto r = run_survey(survey_config("sl2x5", 20, 7));
  ASSERT_TRUE(r.generic_stab_dim.has_value());
  EXPECT_EQ(*r.generic_stab_dim, 0);
  EXPECT_EQ(*r.d_estimate, 15);
}

TEST(survey, small_reps_have_positive_generic_stabilizers) {
  const auto r2 = run_survey(survey_config("sl2x2", 10, 1));
  EXPECT_EQ(*r2.generic_stab_dim, 3);
  EXPECT_EQ(*r2.d_estimate, 3);
  const auto r3 = run_survey(survey_config("sl2x3", 10, 1));
  EXPECT_EQ(*r3.generic_stab_dim, 2);
  EXPECT_EQ(*r3.d_estimate, 7);
}

TEST(survey, errors) {
  EXPECT_THROW(run_survey(survey_config("sl2x9", 1, 0)), InputError);
  EXPECT_THROW(run_survey(survey_config("sl2x4", 0, 0)), InputError);
  auto cfg = survey_config("sl2x5", 1, 0);
  cfg.with_invariants = true;
  EXPECT_THROW(run_survey(cfg), InputError);
}

TEST(examples, all_pass) {
  for (const auto& name : example_names()) {
    const auto r = run_example(name);
    EXPECT_TRUE(r.all_passed()) << json::from_scenario_report(r).dump(2);
    EXPECT_FALSE(r.checks.empty());
  }
  EXPECT_THROW(run_example("e3"), InputError);
}

TEST(examples, e1_diag_reports_order_eight) {
  const auto j = json::from_scenario_report(run_example("e1_diag"));
  bool found = false;
  for (const auto& c : j["checks"])
    if (c["detail"].contains("order")) {
      EXPECT_EQ(c["detail"]["order"], 8);
      found = true;
    }
  EXPECT_TRUE(found);
}

TEST(json_io, complex_vectors_and_matrices) {
  Rng rng(3);
  const CVector v = gaussian_vector(7, rng);
  EXPECT_EQ(json::to_vector(json::from_vector(v)), v);
  const CMatrix m = CMatrix::Random(3, 4);
  EXPECT_EQ(json::to_matrix(json::from_matrix(m)), m);
  EXPECT_EQ(json::to_vector_or_flattened_matrix(json::from_matrix(m.topLeftCorner(3, 3))),
            flatten_row_major(m.topLeftCorner(3, 3)));
  // Real matrices may be written without imaginary parts.
  const auto real_mat = nlohmann::json::parse("[[1,0,0,0],[0,2,0,0],[0,0,3,0],[0,0,0,4]]");
  EXPECT_EQ(json::to_vector_or_flattened_matrix(real_mat), flattened_diagonal({1.0, 2.0, 3.0, 4.0}).entries);
  EXPECT_THROW(json::to_vector(nlohmann::json::parse("[[1,2,3]]")), InputError);
  EXPECT_THROW(json::to_vector(nlohmann::json::parse("{}")), InputError);
}

TEST(json_io, flow_config) {
  const auto cfg = json::to_flow_config(nlohmann::json::parse(R"({"max_iters": 50, "grad_tol": 1e-9})"));
  EXPECT_EQ(cfg.max_iters, 50);
  EXPECT_EQ(cfg.grad_tol, 1e-9);
  EXPECT_EQ(cfg.armijo_c, 1e-4);
  EXPECT_THROW(json::to_flow_config(nlohmann::json::parse(R"({"armijo_c": 2})")), InputError);
  EXPECT_THROW(json::to_flow_config(nlohmann::json::parse(R"({"step": 1})")), InputError);
  EXPECT_THROW(json::to_flow_config(nlohmann::json::parse(R"({"max_iters": "many"})")), InputError);
}

TEST(json_io, flow_result_downsamples_trace) {
  const auto rep = build_sl2_tensor_rep(4);
  const auto r = minimize_norm(rep, principal_nilpotent());
  const auto j = json::from_flow_result(r);
  EXPECT_EQ(j["status"], "NullCone");
  EXPECT_EQ(j["energy_trace_every_10th"].size(), (r.energy_trace.size() + 9) / 10);
  EXPECT_EQ(j["iterations"], r.iterations);
}
