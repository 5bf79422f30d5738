#include "kn/json_io.hpp"

#include <algorithm>
#include <fstream>

namespace kn::json {

namespace {

json optional_int(const std::optional<int>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

json from_complex(Complex z) { return json::array({z.real(), z.imag()}); }

Complex to_complex(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InputError("complex numbers must be [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

json from_vector(const CVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(from_complex(v(i)));
  return out;
}

CVector to_vector(const json& j) {
  if (!j.is_array() || j.empty()) throw InputError("vector must be a nonempty array of [re, im] pairs");
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = to_complex(j[i]);
  if (!v.allFinite()) throw InputError("vector has non-finite entries");
  return v;
}

json from_matrix(const CMatrix& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(from_vector(m.row(i).transpose()));
  return out;
}

CMatrix to_matrix(const json& j) {
  if (!j.is_array() || j.empty()) throw InputError("matrix must be a nonempty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  CMatrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw InputError("matrix rows must have equal length");
    m.row(static_cast<Eigen::Index>(i)) = to_vector(j[i]).transpose();
  }
  return m;
}

CVector to_vector_or_flattened_matrix(const json& j) {
  // A matrix is an array of arrays of [re, im] pairs (or of numbers).
  const bool is_matrix = j.is_array() && !j.empty() && j[0].is_array() && !j[0].empty() &&
                         (j[0][0].is_array() || (j[0].size() != 2 && j[0][0].is_number()));
  if (is_matrix) return flatten_row_major(to_matrix(j));
  return to_vector(j);
}

FlowConfig to_flow_config(const json& j) {
  if (!j.is_object()) throw InputError("flow config must be a JSON object");
  FlowConfig cfg;
  try {
    cfg.max_iters = j.value("max_iters", cfg.max_iters);
    cfg.grad_tol = j.value("grad_tol", cfg.grad_tol);
    cfg.nullcone_tol = j.value("nullcone_tol", cfg.nullcone_tol);
    cfg.armijo_c = j.value("armijo_c", cfg.armijo_c);
    cfg.backtrack_factor = j.value("backtrack_factor", cfg.backtrack_factor);
    cfg.initial_step = j.value("initial_step", cfg.initial_step);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("flow config: ") + e.what());
  }
  for (const auto& [key, _] : j.items()) {
    static const std::vector<std::string> known = {"max_iters",    "grad_tol",         "nullcone_tol",
                                                   "armijo_c",     "backtrack_factor", "initial_step"};
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw InputError("flow config: unknown key " + key);
  }
  cfg.validate();
  return cfg;
}

json from_flow_config(const FlowConfig& cfg) {
  return {{"max_iters", cfg.max_iters},       {"grad_tol", cfg.grad_tol},
          {"nullcone_tol", cfg.nullcone_tol}, {"armijo_c", cfg.armijo_c},
          {"backtrack_factor", cfg.backtrack_factor}, {"initial_step", cfg.initial_step}};
}

json from_flow_result(const FlowResult& r) {
  json trace = json::array();
  for (std::size_t i = 0; i < r.energy_trace.size(); i += 10) trace.push_back(r.energy_trace[i]);
  return {{"status", to_string(r.status)},
          {"iterations", r.iterations},
          {"final_grad_norm", r.final_grad_norm},
          {"final_norm_sq", r.final_vector.entries.squaredNorm()},
          {"final_vector", from_vector(r.final_vector.entries)},
          {"energy_trace_every_10th", trace}};
}

json from_stabilizer_report(const StabilizerReport& r) {
  json kernel = json::array();
  for (const auto& c : r.kernel_basis) kernel.push_back(from_vector(c));
  return {{"lie_dim", r.lie_dim},
          {"orbit_dim", r.orbit_dim},
          {"group_dim", r.group_dim},
          {"singular_values", r.singular_values},
          {"kernel_basis", kernel}};
}

json from_phase_hit(const PhaseStabilizerHit& hit) {
  return {{"phase", from_complex(hit.phase)},
          {"phase_order", hit.phase_order},
          {"residual", hit.residual},
          {"element", from_matrix(hit.element.matrix)},
          {"provenance", hit.element.provenance}};
}

json from_invariants(const InvariantSet& set, const InvariantValues& vals) {
  json out = json::array();
  for (std::size_t i = 0; i < set.items.size(); ++i)
    out.push_back({{"name", set.items[i].name},
                   {"degree", set.items[i].degree},
                   {"value", from_complex(vals.values[i])},
                   {"scale", vals.scales[i]}});
  return out;
}

json from_survey_report(const SurveyReport& r) {
  json samples = json::array();
  for (const auto& s : r.per_sample) {
    json e = {{"status", to_string(s.status)},
              {"iterations", s.iterations},
              {"final_grad_norm", s.final_grad_norm},
              {"stabilizer_lie_dim", optional_int(s.stabilizer_lie_dim)},
              {"orbit_dim", optional_int(s.orbit_dim)},
              {"criticality_rank", optional_int(s.criticality_rank)}};
    if (s.invariants) {
      json vals = json::array();
      for (const auto& z : s.invariants->values) vals.push_back(from_complex(z));
      e["invariant_vector"] = vals;
      e["null_cone_test"] = *s.null_cone;
    }
    samples.push_back(e);
  }
  json hist = json::array();
  for (const auto& b : r.histogram)
    hist.push_back({{"status", to_string(b.status)},
                    {"stabilizer_lie_dim", optional_int(b.stabilizer_lie_dim)},
                    {"count", b.count}});
  std::string evidence = "no critical sample outside the modal stabilizer class in " +
                         std::to_string(r.critical_count) + " critical samples (evidence, not proof)";
  if (r.off_modal_count > 0)
    evidence = std::to_string(r.off_modal_count) + " of " + std::to_string(r.critical_count) +
               " critical samples fall outside the modal stabilizer class";
  return {{"rep", r.config.rep_label},
          {"group_dim", r.group_dim},
          {"n_samples", r.config.n_samples},
          {"seed", r.config.seed},
          {"with_invariants", r.config.with_invariants},
          {"flow_config", from_flow_config(r.config.flow)},
          {"critical_count", r.critical_count},
          {"d_estimate", optional_int(r.d_estimate)},
          {"generic_stab_dim", optional_int(r.generic_stab_dim)},
          {"evidence", evidence},
          {"histogram", hist},
          {"per_sample", samples}};
}

json from_scenario_report(const ScenarioReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return {{"example", r.name}, {"all_passed", r.all_passed()}, {"checks", checks}, {"data", r.data}};
}

std::vector<GroupElement> to_group_elements(const json& j) {
  if (!j.is_array()) throw InputError("group elements must be a JSON array of matrices");
  std::vector<GroupElement> out;
  for (const auto& m : j) out.emplace_back(to_matrix(m));
  return out;
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace kn::json
