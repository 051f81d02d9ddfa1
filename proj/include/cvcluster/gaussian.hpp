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

/// Quadrature-space Gaussian states and symplectic maps.
///
/// Conventions used throughout the library:
///  - quadratures are stored in block order (q_1 ... q_n, p_1 ... p_n);
///  - the symplectic form is Omega = [[0, I], [-I, 0]];
///  - a = (q + i p) / sqrt(2), so the vacuum variance of every quadrature is 1/2.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cvcluster {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kVacuumVariance = 0.5;
inline constexpr double kSymplecticTolerance = 1e-10;
inline constexpr double kSymmetryTolerance = 1e-12;
inline constexpr double kPhysicalityTolerance = 1e-9;

/// Row/column of q_j and p_j in a 2n-dimensional block-ordered vector.
inline constexpr std::size_t q_index(std::size_t mode) { return mode; }
inline constexpr std::size_t p_index(std::size_t mode, std::size_t n_modes) { return n_modes + mode; }

inline Matrix symplectic_form(std::size_t n_modes) {
  const auto n = static_cast<Eigen::Index>(n_modes);
  Matrix omega = Matrix::Zero(2 * n, 2 * n);
  omega.topRightCorner(n, n) = Matrix::Identity(n, n);
  omega.bottomLeftCorner(n, n) = -Matrix::Identity(n, n);
  return omega;
}

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// ---------------------------------------------------------------------------

/// Squeeze magnitude r >= 0 and angle theta, stored reduced to [0, 2*pi).
class SqueezeParams {
 public:
  SqueezeParams(double r, double theta) : r_(r), theta_(theta) {
    if (!std::isfinite(r) || r < 0.0) {
      throw std::invalid_argument("squeeze magnitude must be finite and non-negative");
    }
    if (!std::isfinite(theta)) throw std::invalid_argument("squeeze angle must be finite");
    constexpr double two_pi = 2.0 * std::numbers::pi;
    theta_ = std::fmod(theta, two_pi);
    if (theta_ < 0.0) theta_ += two_pi;
    if (theta_ >= two_pi) theta_ = 0.0;
  }

  double r() const { return r_; }
  double theta() const { return theta_; }

  /// Vacuum-input moments <q^2> and <qp> after squeezing.
  double q_variance() const {
    return 0.5 * (std::cosh(2.0 * r_) - std::sinh(2.0 * r_) * std::cos(theta_));
  }
  double qp_covariance() const { return -0.5 * std::sinh(2.0 * r_) * std::sin(theta_); }

  friend bool operator==(const SqueezeParams&, const SqueezeParams&) = default;

 private:
  double r_;
  double theta_;
};

// ---------------------------------------------------------------------------

class GaussianState {
 public:
  /// Symmetrizes `cov` as (C + C^T)/2 after checking the asymmetry is float noise.
  GaussianState(Vector mean, Matrix cov) : mean_(std::move(mean)), cov_(std::move(cov)) {
    if (cov_.rows() != cov_.cols() || cov_.rows() == 0 || cov_.rows() % 2 != 0) {
      throw std::invalid_argument("covariance must be a non-empty square matrix of even size");
    }
    if (mean_.size() != cov_.rows()) {
      throw std::invalid_argument("mean vector length must match covariance size");
    }
    if (!cov_.allFinite() || !mean_.allFinite()) {
      throw std::invalid_argument("state moments must be finite");
    }
    const double scale = std::max(1.0, max_abs(cov_));
    if (max_abs(cov_ - cov_.transpose()) > 2.0 * kSymmetryTolerance * scale) {
      throw std::invalid_argument("covariance matrix is not symmetric");
    }
    cov_ = 0.5 * (cov_ + cov_.transpose()).eval();
  }

  std::size_t n_modes() const { return static_cast<std::size_t>(cov_.rows() / 2); }
  const Vector& mean() const { return mean_; }
  const Matrix& cov() const { return cov_; }

  Matrix qq() const { return block(0, 0); }
  /// Symmetrized cross block, entry (j, k) = <{q_j, p_k}>/2 - <q_j><p_k>.
  Matrix qp() const { return block(0, 1); }
  Matrix pp() const { return block(1, 1); }

  /// Smallest eigenvalue of the Hermitian matrix cov + (i/2) Omega.
  double min_uncertainty_eigenvalue() const {
    const auto dim = cov_.rows();
    ComplexMatrix h(dim, dim);
    h.real() = cov_;
    h.imag() = 0.5 * symplectic_form(n_modes());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
  }

  bool is_physical(double tol = kPhysicalityTolerance) const {
    return min_uncertainty_eigenvalue() >= -tol;
  }

  /// Symplectic eigenvalues in ascending order; all equal 1/2 for a pure state.
  std::vector<double> symplectic_eigenvalues() const {
    const Matrix m = symplectic_form(n_modes()) * cov_;
    Eigen::EigenSolver<Matrix> solver(m, false);
    std::vector<double> abs_vals;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
      abs_vals.push_back(std::abs(solver.eigenvalues()[i]));
    }
    std::sort(abs_vals.begin(), abs_vals.end());
    // eigenvalues of Omega*C come in +-i*nu pairs
    std::vector<double> nus;
    for (std::size_t i = 0; i < abs_vals.size(); i += 2) nus.push_back(0.5 * (abs_vals[i] + abs_vals[i + 1]));
    return nus;
  }

  /// det(2 * cov); equals 1 exactly for pure states.
  double purity_determinant() const { return (2.0 * cov_).determinant(); }

 private:
  Matrix block(int row_block, int col_block) const {
    const auto n = static_cast<Eigen::Index>(n_modes());
    return cov_.block(row_block * n, col_block * n, n, n);
  }

  Vector mean_;
  Matrix cov_;
};

inline bool is_symplectic(const Matrix& m, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (m.rows() != m.cols() || m.rows() % 2 != 0 || m.rows() == 0) return false;
  const Matrix omega = symplectic_form(static_cast<std::size_t>(m.rows() / 2));
  return max_abs(m * omega * m.transpose() - omega) <= tol;
}

/// kSymplecticTolerance scaled by max|S|^2, the growth of rounding error in
/// S Omega S^T.
inline double scaled_symplectic_tolerance(const Matrix& m) {
  const double a = max_abs(m);
  return kSymplecticTolerance * std::max(1.0, a * a);
}

/// Real 2n x 2n matrix preserving Omega. Construction checks symplecticity.
class SymplecticMap {
 public:
  explicit SymplecticMap(Matrix matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0 || matrix_.rows() % 2 != 0) {
      throw std::invalid_argument("symplectic map must be a non-empty square matrix of even size");
    }
    if (!is_symplectic(matrix_, scaled_symplectic_tolerance(matrix_))) {
      throw std::invalid_argument("matrix is not symplectic");
    }
  }

  static SymplecticMap identity(std::size_t n_modes) {
    const auto dim = static_cast<Eigen::Index>(2 * n_modes);
    return SymplecticMap(Matrix::Identity(dim, dim));
  }

  std::size_t n_modes() const { return static_cast<std::size_t>(matrix_.rows() / 2); }
  const Matrix& matrix() const { return matrix_; }

  /// S^{-1} = -Omega S^T Omega.
  SymplecticMap inverse() const {
    const Matrix omega = symplectic_form(n_modes());
    return SymplecticMap(-omega * matrix_.transpose() * omega);
  }

  /// True when the map is also orthogonal, i.e. a passive linear-optics network.
  bool is_passive(double tol = kSymplecticTolerance) const {
    return max_abs(matrix_ * matrix_.transpose() - Matrix::Identity(matrix_.rows(), matrix_.cols())) <= tol;
  }

 private:
  Matrix matrix_;
};

inline bool is_symplectic(const SymplecticMap& map, double tol) { return is_symplectic(map.matrix(), tol); }

/// Lifts a real orthogonal mode-space matrix O (a -> O a) to diag(O, O).
inline SymplecticMap lift_passive(const Matrix& mode_matrix) {
  if (mode_matrix.rows() != mode_matrix.cols() || mode_matrix.rows() == 0) {
    throw std::invalid_argument("mode matrix must be square and non-empty");
  }
  const auto n = mode_matrix.rows();
  Matrix s = Matrix::Zero(2 * n, 2 * n);
  s.topLeftCorner(n, n) = mode_matrix;
  s.bottomRightCorner(n, n) = mode_matrix;
  return SymplecticMap(std::move(s));
}

inline GaussianState vacuum_state(std::size_t n_modes) {
  if (n_modes == 0) throw std::invalid_argument("vacuum state needs at least one mode");
  const auto dim = static_cast<Eigen::Index>(2 * n_modes);
  return GaussianState(Vector::Zero(dim), kVacuumVariance * Matrix::Identity(dim, dim));
}

/// cosh(r) I - sinh(r) [[cos t, sin t], [sin t, -cos t]] on (q, p).
/// theta = 0 squeezes q.
inline SymplecticMap single_mode_squeezer(const SqueezeParams& params) {
  const double ch = std::cosh(params.r());
  const double sh = std::sinh(params.r());
  const double c = std::cos(params.theta());
  const double s = std::sin(params.theta());
  Matrix m(2, 2);
  m << ch - sh * c, -sh * s,
       -sh * s, ch + sh * c;
  return SymplecticMap(std::move(m));
}

inline GaussianState apply_symplectic(const GaussianState& state, const SymplecticMap& map) {
  if (state.n_modes() != map.n_modes()) {
    throw std::invalid_argument("mode count mismatch between state and map");
  }
  const Matrix& s = map.matrix();
  return GaussianState(s * state.mean(), s * state.cov() * s.transpose());
}

/// Places a k-mode map on `targets` inside an n-mode identity.
inline SymplecticMap embed_map(const SymplecticMap& map, std::span<const std::size_t> targets,
                               std::size_t n_modes) {
  const std::size_t k = map.n_modes();
  if (targets.size() != k) throw std::invalid_argument("target count must match map mode count");
  std::vector<bool> used(n_modes, false);
  for (std::size_t t : targets) {
    if (t >= n_modes) throw std::out_of_range("embed target out of range");
    if (used[t]) throw std::invalid_argument("duplicate embed target");
    used[t] = true;
  }
  std::vector<Eigen::Index> rows(2 * k);
  for (std::size_t i = 0; i < k; ++i) {
    rows[i] = static_cast<Eigen::Index>(q_index(targets[i]));
    rows[k + i] = static_cast<Eigen::Index>(p_index(targets[i], n_modes));
  }
  const auto dim = static_cast<Eigen::Index>(2 * n_modes);
  Matrix out = Matrix::Identity(dim, dim);
  for (std::size_t i = 0; i < 2 * k; ++i) {
    for (std::size_t j = 0; j < 2 * k; ++j) {
      out(rows[i], rows[j]) = map.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return SymplecticMap(std::move(out));
}

inline SymplecticMap embed_map(const SymplecticMap& map, std::initializer_list<std::size_t> targets,
                               std::size_t n_modes) {
  return embed_map(map, std::span<const std::size_t>(targets.begin(), targets.size()), n_modes);
}

/// Maps listed in application order; the first applied is the rightmost factor.
inline SymplecticMap compose(std::span<const SymplecticMap> maps) {
  if (maps.empty()) throw std::invalid_argument("compose needs at least one map");
  Matrix total = maps.front().matrix();
  for (std::size_t i = 1; i < maps.size(); ++i) {
    if (maps[i].n_modes() != maps.front().n_modes()) {
      throw std::invalid_argument("mode count mismatch in compose");
    }
    total = (maps[i].matrix() * total).eval();
  }
  return SymplecticMap(std::move(total));
}

inline SymplecticMap compose(std::initializer_list<SymplecticMap> maps) {
  return compose(std::span<const SymplecticMap>(maps.begin(), maps.size()));
}

/// Pure-loss channel of transmittance T on one mode (beam splitter with vacuum).
inline GaussianState loss_channel(const GaussianState& state, std::size_t mode, double transmittance) {
  if (!(transmittance >= 0.0 && transmittance <= 1.0)) {
    throw std::invalid_argument("transmittance must lie in [0, 1]");
  }
  const std::size_t n = state.n_modes();
  if (mode >= n) throw std::out_of_range("loss channel mode out of range");
  const auto iq = static_cast<Eigen::Index>(q_index(mode));
  const auto ip = static_cast<Eigen::Index>(p_index(mode, n));
  const double amp = std::sqrt(transmittance);

  Vector mean = state.mean();
  Matrix cov = state.cov();
  mean(iq) *= amp;
  mean(ip) *= amp;
  cov.row(iq) *= amp;
  cov.row(ip) *= amp;
  cov.col(iq) *= amp;
  cov.col(ip) *= amp;
  cov(iq, iq) += (1.0 - transmittance) * kVacuumVariance;
  cov(ip, ip) += (1.0 - transmittance) * kVacuumVariance;
  return GaussianState(std::move(mean), std::move(cov));
}

/// c^T cov c.
inline double quad_combination_variance(const GaussianState& state, const Vector& coeffs) {
  if (coeffs.size() != state.cov().rows()) throw std::invalid_argument("coefficient length must be 2n");
  if (coeffs.isZero(0.0)) throw std::invalid_argument("coefficient vector must be non-zero");
  return coeffs.dot(state.cov() * coeffs);
}

/// Uncorrelated joint state; mode order follows the argument order.
inline GaussianState direct_sum(std::span<const GaussianState> parts) {
  if (parts.empty()) throw std::invalid_argument("direct sum of no states");
  std::size_t n = 0;
  for (const auto& s : parts) n += s.n_modes();
  const auto dim = static_cast<Eigen::Index>(2 * n);
  Vector mean = Vector::Zero(dim);
  Matrix cov = Matrix::Zero(dim, dim);
  std::size_t offset = 0;
  for (const auto& s : parts) {
    const std::size_t k = s.n_modes();
    for (std::size_t a = 0; a < 2 * k; ++a) {
      const std::size_t ga = a < k ? offset + a : n + offset + (a - k);
      mean(static_cast<Eigen::Index>(ga)) = s.mean()(static_cast<Eigen::Index>(a));
      for (std::size_t b = 0; b < 2 * k; ++b) {
        const std::size_t gb = b < k ? offset + b : n + offset + (b - k);
        cov(static_cast<Eigen::Index>(ga), static_cast<Eigen::Index>(gb)) =
            s.cov()(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
      }
    }
    offset += k;
  }
  return GaussianState(std::move(mean), std::move(cov));
}

/// Marginal state on `modes`, in the listed order.
inline GaussianState select_modes(const GaussianState& state, std::span<const std::size_t> modes) {
  const std::size_t n = state.n_modes();
  const std::size_t k = modes.size();
  if (k == 0) throw std::invalid_argument("cannot select zero modes");
  std::vector<Eigen::Index> idx(2 * k);
  std::vector<bool> used(n, false);
  for (std::size_t i = 0; i < k; ++i) {
    if (modes[i] >= n) throw std::out_of_range("selected mode out of range");
    if (used[modes[i]]) throw std::invalid_argument("duplicate selected mode");
    used[modes[i]] = true;
    idx[i] = static_cast<Eigen::Index>(q_index(modes[i]));
    idx[k + i] = static_cast<Eigen::Index>(p_index(modes[i], n));
  }
  const auto dim = static_cast<Eigen::Index>(2 * k);
  Vector mean(dim);
  Matrix cov(dim, dim);
  for (Eigen::Index a = 0; a < dim; ++a) {
    mean(a) = state.mean()(idx[static_cast<std::size_t>(a)]);
    for (Eigen::Index b = 0; b < dim; ++b) {
      cov(a, b) = state.cov()(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]);
    }
  }
  return GaussianState(std::move(mean), std::move(cov));
}

}  // namespace cvcluster
