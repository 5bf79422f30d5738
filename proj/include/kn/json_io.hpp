#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "kn/atlas.hpp"
#include "kn/invariants.hpp"
#include "kn/kempf_ness.hpp"
#include "kn/stabilizer.hpp"

// Complex numbers serialize as [re, im], vectors as arrays, matrices as
// arrays of rows. Parse failures raise kn::InputError.

namespace kn::json {

using nlohmann::json;

json from_complex(Complex z);
Complex to_complex(const json& j);

json from_vector(const CVector& v);
CVector to_vector(const json& j);

json from_matrix(const CMatrix& m);
CMatrix to_matrix(const json& j);

/// Accepts either a flat vector or a matrix (flattened row-major).
CVector to_vector_or_flattened_matrix(const json& j);

FlowConfig to_flow_config(const json& j);
json from_flow_config(const FlowConfig& cfg);

/// Energy trace is down-sampled to every 10th value.
json from_flow_result(const FlowResult& r);
json from_stabilizer_report(const StabilizerReport& r);
json from_phase_hit(const PhaseStabilizerHit& hit);
json from_invariants(const InvariantSet& set, const InvariantValues& vals);
json from_survey_report(const SurveyReport& r);
json from_scenario_report(const ScenarioReport& r);

std::vector<GroupElement> to_group_elements(const json& j);

json read_file(const std::string& path);
void write_file(const std::string& path, const json& j);

}  // namespace kn::json
