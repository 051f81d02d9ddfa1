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

// Command-line front end. Exit codes:
//   0 ok, 2 bad parameters, 3 netlist parse/wiring error, 4 I/O error,
//   5 physics error (singular position covariance).

#include "cvcluster/report.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace cvcluster::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitParse = 3;
inline constexpr int kExitIo = 4;
inline constexpr int kExitPhysics = 5;

struct SchemeArgs {
  int id = 1;
  std::optional<std::string> input;
  std::optional<double> r;
  std::optional<double> theta;
  std::optional<double> db;
  std::optional<double> loss_t;
};

/// Builds the preset spec and its `source` block. Throws std::invalid_argument
/// on inconsistent parameters.
inline std::pair<CircuitSpec, Json> scheme_spec(const SchemeArgs& args) {
  if (args.db && (args.r || args.theta)) {
    throw std::invalid_argument("give either --db or --r/--theta, not both");
  }
  if (args.loss_t && !(*args.loss_t >= 0.0 && *args.loss_t <= 1.0)) {
    throw std::invalid_argument("--loss-t must lie in [0, 1]");
  }
  Squeezing squeezing;
  Json source{{"type", "scheme"}, {"id", args.id}};
  if (args.db) {
    const AmplitudeSqueezing sq = squeezing_from_db(*args.db);
    squeezing.r = sq.params.r();
    squeezing.theta = sq.params.theta();
    source["db"] = *args.db;
  } else {
    squeezing.r = args.r.value_or(0.0);
    squeezing.theta = args.theta.value_or(0.0);
    SqueezeParams check(squeezing.r, squeezing.theta);
    source["r"] = squeezing.r;
    source["theta"] = squeezing.theta;
  }
  squeezing.loss = args.loss_t;
  source["loss_t"] = args.loss_t ? Json(*args.loss_t) : Json(nullptr);

  if (args.id == 1) {
    if (!args.input) throw std::invalid_argument("scheme 1 needs --input R or --input A");
    const BeamKind kind = *args.input == "R" ? BeamKind::R : BeamKind::A;
    source["input"] = *args.input;
    return {scheme1_circuit(kind, squeezing), source};
  }
  if (args.input) throw std::invalid_argument("scheme 2 takes both beams; --input does not apply");
  return {scheme2_circuit(squeezing, squeezing), source};
}

inline void emit(const RunResult& run, const Json& source, const ReportOptions& options, const std::string& format,
                 std::ostream& out) {
  if (format == "csv") {
    out << correlations_csv(run);
  } else {
    out << report_json(run, source, options).dump(2) << '\n';
  }
}

inline int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gaussian cluster-state simulator for cylindrically polarized light"};
  app.require_subcommand(1);

  SchemeArgs scheme_args;
  std::string format = "json";
  ReportOptions options;
  std::string path;

  auto* scheme = app.add_subcommand("scheme", "Run a preset scheme");
  scheme->add_option("--id", scheme_args.id, "Scheme number")->required()->check(CLI::IsMember({1, 2}));
  scheme->add_option("--input", scheme_args.input, "Squeezed beam for scheme 1")->check(CLI::IsMember({"R", "A"}));
  auto* r_opt = scheme->add_option("--r", scheme_args.r, "Squeeze magnitude r");
  auto* theta_opt = scheme->add_option("--theta", scheme_args.theta, "Squeeze angle in radians");
  auto* db_opt = scheme->add_option("--db", scheme_args.db, "Amplitude squeezing in dB (negative = squeezed)");
  db_opt->excludes(r_opt)->excludes(theta_opt);
  scheme->add_option("--loss-t", scheme_args.loss_t, "Converter transmittance applied to the squeezed beams");
  scheme->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  scheme->add_option("--epsilon", options.epsilon, "Edge threshold for graph extraction")
      ->check(CLI::PositiveNumber);

  auto* run = app.add_subcommand("run", "Run a netlist file");
  run->add_option("file", path, "Netlist file")->required();
  run->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  run->add_option("--epsilon", options.epsilon, "Edge threshold for graph extraction")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (scheme->parsed()) {
      CircuitSpec spec;
      Json source;
      try {
        std::tie(spec, source) = scheme_spec(scheme_args);
      } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
      }
      emit(evaluate_circuit(spec, options), source, options, format, out);
      return kExitOk;
    }

    std::ifstream file(path, std::ios::binary);
    if (!file) {
      err << "error: cannot read '" << path << "'\n";
      return kExitIo;
    }
    std::ostringstream text;
    text << file.rdbuf();
    if (file.bad()) {
      err << "error: failed reading '" << path << "'\n";
      return kExitIo;
    }
    CircuitSpec spec;
    try {
      spec = parse_circuit(text.str());
    } catch (const ParseError& e) {
      err << path << ':' << e.line() << ':' << e.column() << ": " << to_string(e.kind()) << " error: " << e.message()
          << '\n';
      return kExitParse;
    }
    emit(evaluate_circuit(spec, options), Json{{"type", "file"}, {"path", path}}, options, format, out);
    return kExitOk;
  } catch (const SingularCovarianceError& e) {
    err << "error: " << e.what() << " (rcond " << e.rcond() << ")\n";
    return kExitPhysics;
  } catch (const CircuitError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace cvcluster::cli
