// Copyright 2026 The cvcluster Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

/// Run reports: everything derivable from one circuit, as JSON or CSV.
///
/// A report depends only on the circuit spec plus the caller-supplied
/// `source` object, so a preset and its serialized netlist produce the same
/// bytes apart from that field.

#include "cvcluster/circuit.hpp"
#include "cvcluster/graph.hpp"
#include "cvcluster/measurement.hpp"

#include <nlohmann/json.hpp>

#include <sstream>
#include <string>

namespace cvcluster {

inline constexpr const char* kVersion = "0.1.0";

using Json = nlohmann::ordered_json;

struct ReportOptions {
  double epsilon = kDefaultEdgeEpsilon;
};

struct RunResult {
  CircuitSpec spec;
  CompiledCircuit compiled;
  GaussianState state;  // declared outputs, declared order
  ComplexGraph graph;
  GraphTopology topology;
  double nullifier_deviation = 0.0;
  std::optional<CorrelationReport> correlations;
};

/// Runs `spec` and derives every report quantity. Throws
/// SingularCovarianceError when the output position block cannot be inverted.
inline RunResult evaluate_circuit(const CircuitSpec& spec, const ReportOptions& options = {}) {
  CompiledCircuit compiled = compile_circuit(spec);
  GaussianState state = select_modes(run_circuit_register(spec, compiled), compiled.output_indices);
  ComplexGraph graph = compute_Z(state, spec.outputs);
  GraphTopology topology = extract_graph(graph.Z(), options.epsilon);
  const double deviation = max_abs(nullifier_covariance(state, graph.V) - 0.5 * graph.U);

  std::optional<CorrelationReport> correlations;
  if (state.n_modes() == 4) {
    try {
      CorrelationReport report{correlation_rows(state, spec.outputs), std::nullopt, std::nullopt, std::nullopt};
      std::vector<const SqueezedInput*> squeezed;
      for (const auto& in : spec.inputs) {
        if (const auto* sq = std::get_if<SqueezedInput>(&in.source)) squeezed.push_back(sq);
      }
      if (squeezed.size() == 1) {
        const SqueezeParams params(squeezed[0]->squeezing.r, squeezed[0]->squeezing.theta);
        report.input_kind = squeezed[0]->kind;
        report.input_squeezing_db = variance_to_db(params.q_variance());
        report.loss_transmittance = squeezed[0]->squeezing.loss;
      }
      attach_reference_values(report);
      correlations = std::move(report);
    } catch (const std::invalid_argument&) {
      // outputs are not one each of H10, V10, H01, V01
    }
  }
  return RunResult{spec, std::move(compiled), std::move(state), std::move(graph), std::move(topology), deviation,
                   std::move(correlations)};
}

namespace detail {

inline Json complex_json(Complex c) { return Json{{"re", c.real()}, {"im", c.imag()}}; }

inline Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

inline Json labels_json(const std::vector<ModeLabel>& labels) {
  Json out = Json::array();
  for (const auto& l : labels) out.push_back(l.str());
  return out;
}

}  // namespace detail

inline Json report_json(const RunResult& run, const Json& source, const ReportOptions& options = {}) {
  using detail::complex_json;
  using detail::optional_json;
  Json report;
  report["source"] = source;

  Json inputs = Json::array();
  for (const auto& in : run.spec.inputs) {
    Json entry{{"port", in.port}};
    if (const auto* sq = std::get_if<SqueezedInput>(&in.source)) {
      entry["state"] = "squeezed";
      entry["mode"] = sq->kind == BeamKind::R ? "R" : "A";
      entry["r"] = sq->squeezing.r;
      entry["theta"] = sq->squeezing.theta;
      entry["loss_t"] = optional_json(sq->squeezing.loss);
    } else {
      entry["state"] = "vacuum";
    }
    inputs.push_back(std::move(entry));
  }
  report["parameters"] = Json{{"inputs", std::move(inputs)}, {"epsilon", options.epsilon}};

  report["conventions"] = Json{
      {"quadrature_ordering", "q_1..q_n, p_1..p_n"},
      {"vacuum_variance", kVacuumVariance},
      {"symplectic_form", "[[0, I], [-I, 0]]"},
      {"annihilation_operator", "a = (q + i p) / sqrt(2)"},
      {"cli_squeeze_angle_unit", "rad"},
      {"netlist_wave_plate_angle_unit", "deg"},
      {"netlist_squeeze_angle_unit", "rad"},
      {"basis_mode_order", {"H10", "V10", "H01", "V01"}},
      {"shot_noise_two_mode", kTwoModeShotNoise},
  };
  report["versions"] = Json{{"cvcluster", kVersion}};

  const std::size_t n_register = run.compiled.final_modes.size();
  report["circuit"] = Json{
      {"register_modes", n_register},
      {"symplectic", is_symplectic(run.compiled.map, scaled_symplectic_tolerance(run.compiled.map.matrix()))},
      {"passive", run.compiled.map.is_passive()},
  };

  const Json ordering = detail::labels_json(run.spec.outputs);
  report["ordering"] = ordering;

  const Matrix& cov = run.state.cov();
  Json cov_data = Json::array();
  for (Eigen::Index i = 0; i < cov.rows(); ++i) {
    for (Eigen::Index j = 0; j < cov.cols(); ++j) cov_data.push_back(cov(i, j));
  }
  Json quad_order = Json::array();
  for (const auto& l : run.spec.outputs) quad_order.push_back("q(" + l.str() + ")");
  for (const auto& l : run.spec.outputs) quad_order.push_back("p(" + l.str() + ")");
  report["covariance"] = Json{{"ordering", std::move(quad_order)},
                              {"rows", cov.rows()},
                              {"cols", cov.cols()},
                              {"data", std::move(cov_data)}};

  const ComplexMatrix z = run.graph.Z();
  Json z_rows = Json::array();
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < z.cols(); ++j) row.push_back(complex_json(z(i, j)));
    z_rows.push_back(std::move(row));
  }
  report["Z"] = Json{{"ordering", ordering}, {"data", std::move(z_rows)}};

  Json edges = Json::array();
  for (const auto& e : run.topology.edges) {
    edges.push_back(Json{{"i", e.i},
                         {"j", e.j},
                         {"modes", {run.spec.outputs[e.i].str(), run.spec.outputs[e.j].str()}},
                         {"weight", complex_json(e.weight)}});
  }
  report["graph"] = Json{{"epsilon", run.topology.epsilon},
                         {"edges", std::move(edges)},
                         {"fully_connected", run.topology.fully_connected},
                         {"fully_symmetric", run.topology.fully_symmetric}};

  report["nullifier_check"] = Json{{"max_abs_deviation", run.nullifier_deviation}};

  if (run.correlations) {
    const auto& c = *run.correlations;
    Json rows = Json::array();
    for (const auto& row : c.rows) {
      rows.push_back(Json{{"label", row.label()},
                          {"pair", {row.first, row.second}},
                          {"sign", std::string(1, sign_char(row.label_sign))},
                          {"physical_sign", std::string(1, sign_char(row.physical_sign))},
                          {"predicted_db", row.predicted_db},
                          {"reference_db", optional_json(row.reference_db)},
                          {"reference_measured_db", optional_json(row.reference_measured_db)}});
    }
    Json kind = c.input_kind ? Json(*c.input_kind == BeamKind::R ? "R" : "A") : Json(nullptr);
    report["correlations"] = Json{{"input_kind", std::move(kind)},
                                  {"input_squeezing_db", optional_json(c.input_squeezing_db)},
                                  {"loss_t", optional_json(c.loss_transmittance)},
                                  {"rows", std::move(rows)}};
  } else {
    report["correlations"] = nullptr;
  }
  return report;
}

/// Correlation table only; a header line when the run has no table.
inline std::string correlations_csv(const RunResult& run) {
  std::ostringstream out;
  out << "label,first,second,sign,physical_sign,predicted_db,reference_db,reference_measured_db\n";
  if (!run.correlations) return out.str();
  auto opt = [](const std::optional<double>& v) { return v ? detail::format_number(*v) : std::string(); };
  for (const auto& row : run.correlations->rows) {
    out << row.label() << ',' << row.first << ',' << row.second << ',' << sign_char(row.label_sign) << ','
        << sign_char(row.physical_sign) << ',' << detail::format_number(row.predicted_db) << ','
        << opt(row.reference_db) << ',' << opt(row.reference_measured_db) << '\n';
  }
  return out.str();
}

}  // namespace cvcluster
