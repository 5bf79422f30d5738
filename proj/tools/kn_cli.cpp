// kn: command-line front end for orbit flows, stabilizers, invariants,
// surveys and the built-in example scenarios. All output is JSON.
//
// Exit codes: 0 success, 1 a scenario assertion failed, 2 input error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "kn/atlas.hpp"
#include "kn/json_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAssertion = 1;
constexpr int kExitInput = 2;

void emit(const nlohmann::json& j, const std::string& out_path) {
  if (out_path.empty())
    std::cout << j.dump(2) << '\n';
  else
    kn::json::write_file(out_path, j);
}

kn::StateVector load_vector(const std::string& path, const kn::Representation& rep) {
  kn::StateVector v(kn::json::to_vector_or_flattened_matrix(kn::json::read_file(path)));
  if (v.size() != rep.dim_v())
    throw kn::InputError("input vector has " + std::to_string(v.size()) + " entries, " + rep.label() + " expects " +
                         std::to_string(rep.dim_v()));
  return v;
}

int run_flow(const std::string& rep_label, const std::string& input, const std::string& config,
             const std::string& out) {
  const kn::Representation rep = kn::make_representation(rep_label);
  const kn::StateVector v = load_vector(input, rep);
  const kn::FlowConfig cfg = config.empty() ? kn::FlowConfig{} : kn::json::to_flow_config(kn::json::read_file(config));
  const kn::FlowResult result = kn::minimize_norm(rep, v, cfg);
  nlohmann::json j = kn::json::from_flow_result(result);
  j["rep"] = rep.label();
  j["config"] = kn::json::from_flow_config(cfg);
  emit(j, out);
  return kExitOk;
}

int run_stabilizer(const std::string& rep_label, const std::string& input, const std::string& candidates,
                   const std::string& out) {
  const kn::Representation rep = kn::make_representation(rep_label);
  const kn::StateVector v = load_vector(input, rep);
  nlohmann::json j;
  j["rep"] = rep.label();
  j["stabilizer"] = kn::json::from_stabilizer_report(kn::stabilizer_lie(rep, v));
  if (!rep.has_scalar_generator() && v.norm() > 0.0)
    j["extended_stabilizer"] = kn::json::from_stabilizer_report(kn::extended_stabilizer_lie(rep, v));
  const kn::CriticalityRank rank = kn::criticality_rank(rep, v);
  j["is_critical"] = rank.at_critical_point;
  j["criticality_rank"] = rank.rank;
  if (!candidates.empty()) {
    if (v.norm() == 0.0) throw kn::InputError("phase checks need a nonzero vector");
    const auto elements = kn::json::to_group_elements(kn::json::read_file(candidates));
    nlohmann::json hits = nlohmann::json::array();
    for (const auto& g : elements) {
      if (g.matrix.rows() != rep.dim_v()) throw kn::InputError("candidate element has wrong dimension");
      const auto hit = kn::phase_check(g, v);
      hits.push_back(hit ? nlohmann::json{{"phase", kn::json::from_complex(hit->phase)},
                                          {"phase_order", hit->phase_order},
                                          {"residual", hit->residual}}
                         : nlohmann::json(nullptr));
    }
    j["phase_checks"] = hits;
    if (rank.at_critical_point) {
      nlohmann::json adj = nlohmann::json::array();
      for (const auto& c : kn::verify_adjoint_closure(rep, elements, v).checks) adj.push_back(kn::to_string(c.outcome));
      j["adjoint_closure"] = adj;
    }
  }
  emit(j, out);
  return kExitOk;
}

int run_invariants(const std::string& domain, const std::string& input, const std::string& out) {
  const kn::InvariantSet set = kn::invariant_set_for(domain);
  const kn::CVector x = kn::json::to_vector_or_flattened_matrix(kn::json::read_file(input));
  const kn::InvariantValues vals = kn::evaluate_all(set, x);
  nlohmann::json j;
  j["domain"] = set.domain_label;
  j["invariants"] = kn::json::from_invariants(set, vals);
  j["null_cone"] = kn::null_cone_test(set, x, kn::kInvariantVanishTol);
  try {
    j["r"] = kn::compute_r(set, x);
  } catch (const kn::PreconditionError&) {
    j["r"] = nullptr;
  }
  emit(j, out);
  return kExitOk;
}

int run_survey_cmd(const std::string& rep_label, int n, std::uint64_t seed, bool with_invariants,
                   const std::string& config, const std::string& out) {
  kn::SurveyConfig cfg;
  cfg.rep_label = rep_label;
  cfg.n_samples = n;
  cfg.seed = seed;
  cfg.with_invariants = with_invariants;
  if (!config.empty()) cfg.flow = kn::json::to_flow_config(kn::json::read_file(config));
  emit(kn::json::from_survey_report(kn::run_survey(cfg)), out);
  return kExitOk;
}

int run_example_cmd(const std::string& name, const std::string& out) {
  const kn::ScenarioReport report = kn::run_example(name);
  emit(kn::json::from_scenario_report(report), out);
  return report.all_passed() ? kExitOk : kExitAssertion;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kempf-Ness orbit toolkit"};
  app.require_subcommand(1);

  std::string rep_label, input, config, out, domain, candidates, example;
  int n_samples = 1;
  std::uint64_t seed = 0;
  bool with_invariants = false;

  auto* flow = app.add_subcommand("flow", "Minimize the norm along the orbit of a vector");
  flow->add_option("--rep", rep_label, "Representation label")->required();
  flow->add_option("--input", input, "JSON vector")->required();
  flow->add_option("--config", config, "JSON flow configuration");
  flow->add_option("--out", out, "Write the report here instead of stdout");

  auto* stab = app.add_subcommand("stabilizer", "Infinitesimal stabilizer and orbit dimension");
  stab->add_option("--rep", rep_label, "Representation label")->required();
  stab->add_option("--input", input, "JSON vector")->required();
  stab->add_option("--candidates", candidates, "JSON list of group element matrices to phase-check");
  stab->add_option("--out", out, "Write the report here instead of stdout");

  auto* inv = app.add_subcommand("invariants", "Evaluate the D4 invariants");
  inv->add_option("--domain", domain, "so4pair or sl2x4")->required()->check(CLI::IsMember({"so4pair", "sl2x4"}));
  inv->add_option("--input", input, "JSON matrix or vector")->required();
  inv->add_option("--out", out, "Write the report here instead of stdout");

  auto* survey = app.add_subcommand("survey", "Randomized orbit survey");
  survey->add_option("--rep", rep_label, "Representation label")->required();
  survey->add_option("-n", n_samples, "Number of samples")->required()->check(CLI::PositiveNumber);
  survey->add_option("--seed", seed, "Master seed")->required();
  survey->add_flag("--invariants", with_invariants, "Evaluate invariants at each sample");
  survey->add_option("--config", config, "JSON flow configuration");
  survey->add_option("--out", out, "Write the report here instead of stdout");

  auto* ex = app.add_subcommand("example", "Run a built-in scenario");
  ex->add_option("name", example, "e1_nilpotent, e1_diag or e2_critical")
      ->required()
      ->check(CLI::IsMember(kn::example_names()));
  ex->add_option("--out", out, "Write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*flow) return run_flow(rep_label, input, config, out);
    if (*stab) return run_stabilizer(rep_label, input, candidates, out);
    if (*inv) return run_invariants(domain, input, out);
    if (*survey) return run_survey_cmd(rep_label, n_samples, seed, with_invariants, config, out);
    if (*ex) return run_example_cmd(example, out);
  } catch (const kn::InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const kn::PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitAssertion;
  }
  return kExitInput;
}
