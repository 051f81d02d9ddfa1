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

/// Polarization optics on first-order Hermite-Gaussian beams.
///
/// Every beam (port) carries four basis modes ordered [H10, V10, H01, V01]:
/// TEM10 before TEM01, horizontal before vertical within a profile.

#include "cvcluster/gaussian.hpp"

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace cvcluster {

enum class Profile { TEM10 = 0, TEM01 = 1 };
enum class Polarization { H = 0, V = 1 };

inline constexpr std::size_t kModesPerPort = 4;

/// Slot of (profile, pol) inside a port's four basis modes.
inline constexpr std::size_t local_index(Profile profile, Polarization pol) {
  return 2 * static_cast<std::size_t>(profile) + static_cast<std::size_t>(pol);
}

struct ModeLabel {
  std::string port;
  Profile profile = Profile::TEM10;
  Polarization pol = Polarization::H;

  std::size_t local() const { return local_index(profile, pol); }

  /// "H10", "V01", ...
  std::string basis_name() const {
    std::string s(1, pol == Polarization::H ? 'H' : 'V');
    s += profile == Profile::TEM10 ? "10" : "01";
    return s;
  }
  /// "port:H10"
  std::string str() const { return port + ":" + basis_name(); }

  friend auto operator<=>(const ModeLabel&, const ModeLabel&) = default;
};

/// Parses "H10" / "V10" / "H01" / "V01".
inline std::optional<std::pair<Profile, Polarization>> parse_basis_name(std::string_view name) {
  if (name.size() != 3) return std::nullopt;
  std::pair<Profile, Polarization> out;
  if (name[0] == 'H') out.second = Polarization::H;
  else if (name[0] == 'V') out.second = Polarization::V;
  else return std::nullopt;
  const auto profile = name.substr(1);
  if (profile == "10") out.first = Profile::TEM10;
  else if (profile == "01") out.first = Profile::TEM01;
  else return std::nullopt;
  return out;
}

/// The four basis labels of `port` in canonical order.
inline std::array<ModeLabel, kModesPerPort> port_modes(const std::string& port) {
  return {ModeLabel{port, Profile::TEM10, Polarization::H}, ModeLabel{port, Profile::TEM10, Polarization::V},
          ModeLabel{port, Profile::TEM01, Polarization::H}, ModeLabel{port, Profile::TEM01, Polarization::V}};
}

/// Co-rotating radial/azimuthal modes and their counter-rotating complements.
enum class CylindricalMode { R_plus = 0, A_plus = 1, A_minus = 2, R_minus = 3 };

/// Half-wave plate with fast axis at `phi` radians, on annihilation operators:
///   a_H -> cos(2 phi) a_H + sin(2 phi) a_V
///   a_V -> sin(2 phi) a_H - cos(2 phi) a_V
inline Matrix hwp_mode_matrix(double phi) {
  const double c = std::cos(2.0 * phi);
  const double s = std::sin(2.0 * phi);
  Matrix m(2, 2);
  m << c, s,
       s, -c;
  return m;
}

/// Two-mode (H, V) map of a half-wave plate.
inline SymplecticMap hwp_map(double phi) { return lift_passive(hwp_mode_matrix(phi)); }

/// Polarizing beam splitter between two beams occupying port slots `slot_a`
/// and `slot_b` of an `n_ports`-port register. Horizontal light is
/// transmitted and vertical light reflected, with no reflection phase, so the
/// transmitted output stays in slot_a and the reflected one in slot_b: the
/// map exchanges the V modes of the two slots.
inline SymplecticMap pbs_map(std::size_t slot_a, std::size_t slot_b, std::size_t n_ports) {
  if (slot_a >= n_ports || slot_b >= n_ports) throw std::out_of_range("PBS port slot out of range");
  if (slot_a == slot_b) throw std::invalid_argument("PBS inputs must be two distinct beams");
  const auto n = static_cast<Eigen::Index>(kModesPerPort * n_ports);
  Matrix perm = Matrix::Identity(n, n);
  for (Profile profile : {Profile::TEM10, Profile::TEM01}) {
    const auto a = static_cast<Eigen::Index>(kModesPerPort * slot_a + local_index(profile, Polarization::V));
    const auto b = static_cast<Eigen::Index>(kModesPerPort * slot_b + local_index(profile, Polarization::V));
    perm(a, a) = 0.0;
    perm(b, b) = 0.0;
    perm(a, b) = 1.0;
    perm(b, a) = 1.0;
  }
  return lift_passive(perm);
}

/// Rows are R+, A+, A-, R- expressed in [H10, V10, H01, V01]:
///   R+ = ( H10 + V01)/sqrt2      A+ = (V10 - H01)/sqrt2
///   A- = ( V10 + H01)/sqrt2      R- = (-H10 + V01)/sqrt2
inline Matrix cylindrical_mode_matrix() {
  const double h = 1.0 / std::numbers::sqrt2;
  Matrix m(4, 4);
  m << h, 0, 0, h,
       0, h, -h, 0,
       0, h, h, 0,
       -h, 0, 0, h;
  return m;
}

/// Basis change taking [H10, V10, H01, V01] quadratures to [R+, A+, A-, R-].
inline SymplecticMap cylindrical_basis_change() { return lift_passive(cylindrical_mode_matrix()); }

/// Four-mode state over [H10, V10, H01, V01] of one beam whose co-rotating
/// cylindrical mode `kind` is squeezed; other cylindrical modes are vacuum.
/// Optional converter loss acts on all four modes.
inline GaussianState prepare_squeezed_cylindrical(CylindricalMode kind, const SqueezeParams& params,
                                                  std::optional<double> loss_transmittance = std::nullopt) {
  if (kind != CylindricalMode::R_plus && kind != CylindricalMode::A_plus) {
    throw std::invalid_argument("only the co-rotating R+ or A+ mode can be the squeezed input");
  }
  const std::size_t slot = static_cast<std::size_t>(kind);
  const GaussianState in_cylindrical =
      apply_symplectic(vacuum_state(kModesPerPort), embed_map(single_mode_squeezer(params), {slot}, kModesPerPort));
  GaussianState out = apply_symplectic(in_cylindrical, cylindrical_basis_change().inverse());
  if (loss_transmittance) {
    for (std::size_t m = 0; m < kModesPerPort; ++m) out = loss_channel(out, m, *loss_transmittance);
  }
  return out;
}

}  // namespace cvcluster
