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

/// Homodyne amplitude-correlation predictions relative to shot noise.
///
/// The amplitude quadrature is q. A two-mode combination q_i +- q_j is
/// compared against its shot-noise level 2 * (1/2) = 1.

#include "cvcluster/circuit.hpp"
#include "cvcluster/gaussian.hpp"
#include "cvcluster/optics.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace cvcluster {

enum class Sign { plus, minus };

inline char sign_char(Sign s) { return s == Sign::plus ? '+' : '-'; }

inline constexpr double kTwoModeShotNoise = 2.0 * kVacuumVariance;

/// 10 log10(Var(q_i +- q_j) / shot noise).
inline double correlation_db(const GaussianState& state, std::size_t i, std::size_t j, Sign sign) {
  const std::size_t n = state.n_modes();
  if (i == j) throw std::invalid_argument("correlation needs two distinct modes");
  if (i >= n || j >= n) throw std::out_of_range("correlation mode out of range");
  Vector c = Vector::Zero(static_cast<Eigen::Index>(2 * n));
  c(static_cast<Eigen::Index>(q_index(i))) = 1.0;
  c(static_cast<Eigen::Index>(q_index(j))) = sign == Sign::plus ? 1.0 : -1.0;
  return 10.0 * std::log10(quad_combination_variance(state, c) / kTwoModeShotNoise);
}

struct SqueezingLevel {
  double db = 0.0;
  double variance = kVacuumVariance;
};

struct AmplitudeSqueezing {
  SqueezingLevel level;
  SqueezeParams params;
};

/// Amplitude-quadrature squeezing of `db` relative to vacuum. Negative dB
/// squeezes q (theta = 0); positive dB anti-squeezes it (theta = pi).
inline AmplitudeSqueezing squeezing_from_db(double db) {
  if (!std::isfinite(db)) throw std::invalid_argument("squeezing level must be finite");
  const double variance = kVacuumVariance * std::pow(10.0, db / 10.0);
  const double r = -db * std::numbers::ln10 / 20.0;
  if (r >= 0.0) return {SqueezingLevel{db, variance}, SqueezeParams(r, 0.0)};
  return {SqueezingLevel{db, variance}, SqueezeParams(-r, std::numbers::pi)};
}

/// dB of a single-mode q variance relative to vacuum.
inline double variance_to_db(double variance) {
  if (!(variance > 0.0)) throw std::invalid_argument("variance must be positive");
  return 10.0 * std::log10(variance / kVacuumVariance);
}

// ---------------------------------------------------------------------------

struct CorrelationRow {
  std::string first;   // basis name, e.g. "H01"
  std::string second;  // basis name, e.g. "H10"
  /// Sign as labelled in the reference table: '+' rows are the correlated
  /// (squeezed) combinations, '-' rows the uncorrelated ones.
  Sign label_sign = Sign::plus;
  /// Sign actually combined for this row.
  Sign physical_sign = Sign::plus;
  double predicted_db = 0.0;
  std::optional<double> reference_db;
  std::optional<double> reference_measured_db;

  std::string label() const { return first + sign_char(label_sign) + second; }
};

struct CorrelationReport {
  std::vector<CorrelationRow> rows;
  std::optional<BeamKind> input_kind;
  std::optional<double> input_squeezing_db;
  std::optional<double> loss_transmittance;
};

/// Pair order of the reference correlation table; each pair appears with
/// '+' in the first six rows and '-' in the last six.
inline constexpr std::array<std::array<const char*, 2>, 6> kTablePairs = {{
    {"H01", "H10"}, {"H01", "V10"}, {"V01", "H10"}, {"V01", "V10"}, {"H01", "V01"}, {"V10", "H10"},
}};

/// Twelve rows over a four-mode state whose ordering holds each of H10, V10,
/// H01, V01 exactly once. For each pair the combination with the smaller
/// variance is reported as the '+' row.
inline std::vector<CorrelationRow> correlation_rows(const GaussianState& state, const std::vector<ModeLabel>& ordering) {
  if (state.n_modes() != 4 || ordering.size() != 4) {
    throw std::invalid_argument("correlation table needs exactly four modes");
  }
  auto find = [&](std::string_view basis) {
    std::optional<std::size_t> found;
    for (std::size_t k = 0; k < ordering.size(); ++k) {
      if (ordering[k].basis_name() == basis) {
        if (found) throw std::invalid_argument("basis mode " + std::string(basis) + " appears twice");
        found = k;
      }
    }
    if (!found) throw std::invalid_argument("basis mode " + std::string(basis) + " missing from ordering");
    return *found;
  };

  std::vector<CorrelationRow> plus_rows;
  std::vector<CorrelationRow> minus_rows;
  for (const auto& [a, b] : kTablePairs) {
    const std::size_t i = find(a);
    const std::size_t j = find(b);
    const double db_plus = correlation_db(state, i, j, Sign::plus);
    const double db_minus = correlation_db(state, i, j, Sign::minus);
    // ties keep the literal sign
    const bool swapped = db_minus < db_plus - 1e-12;
    plus_rows.push_back({a, b, Sign::plus, swapped ? Sign::minus : Sign::plus, swapped ? db_minus : db_plus, {}, {}});
    minus_rows.push_back({a, b, Sign::minus, swapped ? Sign::plus : Sign::minus, swapped ? db_plus : db_minus, {}, {}});
  }
  plus_rows.insert(plus_rows.end(), minus_rows.begin(), minus_rows.end());
  return plus_rows;
}

inline constexpr double kReferenceInputDb = -1.9;

/// Reference values for a -1.9 dB input: bracketed theory and measurement
/// columns, in table row order.
inline constexpr std::array<double, 12> kReferenceTheoryDb = {-0.8, -0.8, -0.8, -0.8, -0.8, -0.8,
                                                              0.0,  0.0,  0.0,  0.0,  0.0,  0.0};
inline constexpr std::array<double, 12> kReferenceMeasuredRadialDb = {-0.8, -0.8, -0.8, -0.7, -0.8, -0.7,
                                                                      0.0,  0.0,  0.1,  0.1,  0.1,  0.0};
inline constexpr std::array<double, 12> kReferenceMeasuredAzimuthalDb = {-0.9, -0.9, -0.8, -0.8, -0.9, -0.8,
                                                                         0.0,  0.0,  0.0,  0.0,  0.0,  0.0};

/// Attaches the reference values when the input matches the experiment.
inline void attach_reference_values(CorrelationReport& report) {
  if (!report.input_kind || !report.input_squeezing_db) return;
  if (std::abs(*report.input_squeezing_db - kReferenceInputDb) > 1e-9) return;
  const auto& measured =
      *report.input_kind == BeamKind::R ? kReferenceMeasuredRadialDb : kReferenceMeasuredAzimuthalDb;
  for (std::size_t k = 0; k < report.rows.size() && k < measured.size(); ++k) {
    report.rows[k].reference_db = kReferenceTheoryDb[k];
    report.rows[k].reference_measured_db = measured[k];
  }
}

/// Scheme-1 correlation table for an amplitude-squeezed input of `input_db`.
inline CorrelationReport correlation_table(BeamKind kind, double input_db,
                                          std::optional<double> loss_transmittance = std::nullopt) {
  const AmplitudeSqueezing sq = squeezing_from_db(input_db);
  const CircuitSpec spec =
      scheme1_circuit(kind, Squeezing{sq.params.r(), sq.params.theta(), loss_transmittance});
  const GaussianState out = run_circuit(spec);
  CorrelationReport report{correlation_rows(out, spec.outputs), kind, input_db, loss_transmittance};
  attach_reference_values(report);
  return report;
}

}  // namespace cvcluster
