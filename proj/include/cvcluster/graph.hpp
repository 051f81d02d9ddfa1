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

/// Complex adjacency matrices Z = iU + V of Gaussian graph states.
///
/// For a zero-mean Gaussian state with position block C_qq and symmetrized
/// position-momentum block C_qp,
///
///   U = (1/2) C_qq^{-1},   V = C_qq^{-1} C_qp.
///
/// For pure states the nullifiers p - V q have covariance U / 2.

#include "cvcluster/gaussian.hpp"
#include "cvcluster/optics.hpp"

#include <array>
#include <complex>
#include <limits>
#include <optional>
#include <vector>

namespace cvcluster {

using Complex = std::complex<double>;

inline constexpr double kMinReciprocalCondition = 1e-10;
inline constexpr double kDefaultEdgeEpsilon = 1e-9;

/// Position covariance block too close to singular to invert.
class SingularCovarianceError : public std::domain_error {
 public:
  SingularCovarianceError(const std::string& message, double rcond)
      : std::domain_error(message), rcond_(rcond) {}
  double rcond() const { return rcond_; }

 private:
  double rcond_;
};

struct UVMatrices {
  Matrix U;
  Matrix V;
  /// Reciprocal condition estimate of C_qq.
  double rcond = 0.0;
};

struct ComplexGraph {
  std::vector<ModeLabel> ordering;
  Matrix U;
  Matrix V;

  std::size_t size() const { return static_cast<std::size_t>(U.rows()); }
  ComplexMatrix Z() const {
    ComplexMatrix z(U.rows(), U.cols());
    z.real() = V;
    z.imag() = U;
    return z;
  }
};

/// V is returned unsymmetrized.
inline UVMatrices compute_UV(const GaussianState& state) {
  const Matrix qq = state.qq();
  Eigen::LLT<Matrix> llt(qq);
  if (llt.info() != Eigen::Success) {
    throw SingularCovarianceError("position covariance block is not positive definite", 0.0);
  }
  const double rcond = llt.rcond();
  if (!(rcond >= kMinReciprocalCondition)) {
    throw SingularCovarianceError("position covariance block is near-singular", rcond);
  }
  const Matrix inv = llt.solve(Matrix::Identity(qq.rows(), qq.cols()));
  Matrix u = 0.5 * inv;
  u = 0.5 * (u + u.transpose()).eval();
  return UVMatrices{std::move(u), inv * state.qp(), rcond};
}

inline ComplexGraph compute_Z(const GaussianState& state, std::vector<ModeLabel> ordering = {}) {
  UVMatrices uv = compute_UV(state);
  if (!ordering.empty() && ordering.size() != state.n_modes()) {
    throw std::invalid_argument("ordering length must match mode count");
  }
  return ComplexGraph{std::move(ordering), std::move(uv.U), std::move(uv.V)};
}

// ---------------------------------------------------------------------------

struct ZParameter {
  Complex z;
};

/// z = (<qp> - i<q^2> + i/2) / (4 <q^2>) for given input moments.
inline ZParameter z_parameter(double q_variance, double qp_covariance) {
  if (!(q_variance > 0.0) || !std::isfinite(q_variance)) {
    throw std::invalid_argument("input q variance must be positive and finite");
  }
  return ZParameter{Complex(qp_covariance, 0.5 - q_variance) / (4.0 * q_variance)};
}

inline ZParameter z_parameter(const SqueezeParams& params) {
  return z_parameter(params.q_variance(), params.qp_covariance());
}

enum class Scheme { scheme1_A, scheme1_R, scheme2 };

/// Sign patterns of the closed-form adjacency matrices, over [H10, V10, H01, V01].
/// Scheme 1 is rank one, sigma sigma^T, with sigma = (1, 1, 1, 1) for an
/// azimuthal input and (1, -1, 1, -1) for a radial one.
inline Matrix scheme1_pattern(Scheme scheme) {
  if (scheme == Scheme::scheme2) throw std::invalid_argument("scheme 2 has no rank-one pattern");
  Vector sigma(4);
  if (scheme == Scheme::scheme1_A) sigma << 1, 1, 1, 1;
  else sigma << 1, -1, 1, -1;
  return sigma * sigma.transpose();
}

/// Box pattern: TEM10 modes couple only to TEM01 modes.
inline Matrix scheme2_pattern() {
  Matrix m(4, 4);
  m << 0, 0, 1, 1,
       0, 0, 1, -1,
       1, 1, 0, 0,
       1, -1, 0, 0;
  return m;
}

/// Scheme 1: i I + z P1.  Scheme 2: 2(z + i) I + sqrt(2) z P2.
inline ComplexMatrix analytic_Z(Scheme scheme, const ZParameter& zp) {
  const Complex i(0.0, 1.0);
  const ComplexMatrix id = ComplexMatrix::Identity(4, 4);
  if (scheme == Scheme::scheme2) {
    return 2.0 * (zp.z + i) * id + std::numbers::sqrt2 * zp.z * scheme2_pattern().cast<Complex>();
  }
  return i * id + zp.z * scheme1_pattern(scheme).cast<Complex>();
}

// ---------------------------------------------------------------------------

/// Covariance matrix of the operators p_j - sum_k V_jk q_k.
inline Matrix nullifier_covariance(const GaussianState& state, const Matrix& V) {
  const auto n = static_cast<Eigen::Index>(state.n_modes());
  if (V.rows() != n || V.cols() != n) throw std::invalid_argument("V must be n x n");
  Matrix l(n, 2 * n);
  l.leftCols(n) = -V;
  l.rightCols(n) = Matrix::Identity(n, n);
  return l * state.cov() * l.transpose();
}

/// Variances of p_j - sum_k A_jk q_k for a real symmetric A.
inline Vector ideal_nullifier_residual(const GaussianState& state, const Matrix& A) {
  const auto n = static_cast<Eigen::Index>(state.n_modes());
  if (A.rows() != n || A.cols() != n) throw std::invalid_argument("A must be n x n");
  if (max_abs(A - A.transpose()) > kSymmetryTolerance * std::max(1.0, max_abs(A))) {
    throw std::invalid_argument("A must be symmetric");
  }
  return nullifier_covariance(state, A).diagonal();
}

// ---------------------------------------------------------------------------

struct GraphEdge {
  std::size_t i;
  std::size_t j;
  Complex weight;
};

struct GraphTopology {
  std::size_t n = 0;
  std::vector<GraphEdge> edges;
  double epsilon = kDefaultEdgeEpsilon;
  /// Every pair of distinct nodes linked.
  bool fully_connected = false;
  /// All off-diagonal entries equal within epsilon.
  bool fully_symmetric = false;
};

inline GraphTopology extract_graph(const ComplexMatrix& Z, double epsilon = kDefaultEdgeEpsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (Z.rows() != Z.cols()) throw std::invalid_argument("adjacency matrix must be square");
  GraphTopology g;
  g.n = static_cast<std::size_t>(Z.rows());
  g.epsilon = epsilon;
  bool symmetric = true;
  std::optional<Complex> reference;
  for (Eigen::Index i = 0; i < Z.rows(); ++i) {
    for (Eigen::Index j = 0; j < Z.cols(); ++j) {
      if (i == j) continue;
      if (!reference) reference = Z(i, j);
      if (std::abs(Z(i, j) - *reference) > epsilon) symmetric = false;
      if (i < j && std::abs(Z(i, j)) > epsilon) {
        g.edges.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), Z(i, j)});
      }
    }
  }
  g.fully_connected = g.n > 1 && g.edges.size() == g.n * (g.n - 1) / 2;
  g.fully_symmetric = symmetric;
  return g;
}

// ---------------------------------------------------------------------------

struct SignMatch {
  /// Diagonal of D with D Z D closest to the reference.
  std::vector<int> signs;
  double max_abs_deviation = std::numeric_limits<double>::infinity();
};

/// Searches the 2^n diagonal +-1 similarities D Z D for the best entrywise
/// match against `reference`. Mode order is kept fixed.
inline SignMatch match_up_to_signs(const ComplexMatrix& Z, const ComplexMatrix& reference) {
  if (Z.rows() != reference.rows() || Z.cols() != reference.cols() || Z.rows() != Z.cols()) {
    throw std::invalid_argument("matrices must be square and of equal size");
  }
  const auto n = static_cast<std::size_t>(Z.rows());
  if (n > 20) throw std::invalid_argument("sign search limited to 20 modes");
  SignMatch best;
  // D and -D give the same similarity, so fix the first sign to +1.
  const std::size_t patterns = n == 0 ? 1 : (std::size_t{1} << (n - 1));
  for (std::size_t mask = 0; mask < patterns; ++mask) {
    std::vector<int> d(n, 1);
    for (std::size_t k = 1; k < n; ++k) d[k] = (mask >> (k - 1)) & 1U ? -1 : 1;
    double dev = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const auto ii = static_cast<Eigen::Index>(i);
        const auto jj = static_cast<Eigen::Index>(j);
        dev = std::max(dev, std::abs(static_cast<double>(d[i] * d[j]) * Z(ii, jj) - reference(ii, jj)));
      }
    }
    if (dev < best.max_abs_deviation) {
      best.max_abs_deviation = dev;
      best.signs = d;
    }
  }
  return best;
}

}  // namespace cvcluster
