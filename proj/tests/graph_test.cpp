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

#include "cvcluster/graph.hpp"

#include "gtest/gtest.h"

#include "test_util.hpp"

using namespace cvcluster;
using testutil::max_abs_diff;

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

// mpmath, 30 digits
constexpr double kZRe = -0.190398538988941;
constexpr double kZIm = -0.087986431584029;

ComplexMatrix permute(const ComplexMatrix& z, const std::vector<Eigen::Index>& perm) {
  ComplexMatrix out(z.rows(), z.cols());
  for (Eigen::Index i = 0; i < z.rows(); ++i)
    for (Eigen::Index j = 0; j < z.cols(); ++j) out(i, j) = z(perm[i], perm[j]);
  return out;
}

}  // namespace

TEST(ComputeUV, vacuum) {
  const UVMatrices uv = compute_UV(vacuum_state(3));
  EXPECT_LT(max_abs_diff(uv.U, Matrix::Identity(3, 3)), 1e-15);
  EXPECT_LT(max_abs(uv.V), 1e-15);
  EXPECT_NEAR(uv.rcond, 1.0, 1e-12);
}

TEST(ComputeUV, single_mode_squeezed) {
  const GaussianState s = apply_symplectic(vacuum_state(1), single_mode_squeezer(SqueezeParams(0.5, kPi / 2)));
  const UVMatrices uv = compute_UV(s);
  EXPECT_NEAR(uv.U(0, 0), 0.648054273663885, 1e-12);
  EXPECT_NEAR(uv.V(0, 0), -0.761594155955765, 1e-12);
}

TEST(ComputeUV, singular_position_block) {
  // ill-conditioned two-mode position block
  Matrix cov = Matrix::Identity(4, 4) * 0.5;
  cov(0, 0) = 1e-14;
  cov(2, 2) = 0.25 / 1e-14;
  const GaussianState s(Vector::Zero(4), cov);
  try {
    compute_UV(s);
    FAIL();
  } catch (const SingularCovarianceError& e) {
    EXPECT_LT(e.rcond(), kMinReciprocalCondition);
  }

  // a position block that is exactly singular
  Matrix deg = Matrix::Zero(4, 4);
  deg.topLeftCorner(2, 2) << 1, 1, 1, 1;
  deg.bottomRightCorner(2, 2) = Matrix::Identity(2, 2);
  EXPECT_THROW(compute_UV(GaussianState(Vector::Zero(4), deg)), SingularCovarianceError);
}

TEST(ComputeUV, pure_states_have_symmetric_V) {
  for (int k = 0; k < 10; ++k) {
    const GaussianState s = testutil::random_pure_state(4);
    const UVMatrices uv = compute_UV(s);
    EXPECT_LT(max_abs_diff(uv.V, uv.V.transpose()), 1e-9);
    EXPECT_EQ(uv.U.llt().info(), Eigen::Success);
  }
}

TEST(ComputeZ, ordering_checked) {
  const GaussianState s = vacuum_state(2);
  EXPECT_NO_THROW(compute_Z(s));
  const auto modes = port_modes("a");
  EXPECT_THROW(compute_Z(s, {modes.begin(), modes.end()}), std::invalid_argument);
}

TEST(ZParameter, examples) {
  const ZParameter vac = z_parameter(SqueezeParams(0.0, 0.0));
  EXPECT_EQ(vac.z, Complex(0.0, 0.0));

  const ZParameter z = z_parameter(SqueezeParams(0.5, kPi / 2));
  EXPECT_NEAR(z.z.real(), kZRe, 1e-12);
  EXPECT_NEAR(z.z.imag(), kZIm, 1e-12);

  const ZParameter half = z_parameter(0.25, 0.0);
  EXPECT_NEAR(std::abs(half.z - Complex(0.0, 0.25)), 0.0, 1e-15);

  EXPECT_THROW(z_parameter(0.0, 0.0), std::invalid_argument);
}

TEST(AnalyticZ, quoted_values) {
  const ZParameter zp{Complex(0.0, 0.25)};
  const ComplexMatrix a = analytic_Z(Scheme::scheme1_A, zp);
  for (Eigen::Index i = 0; i < 4; ++i) {
    EXPECT_NEAR(std::abs(a(i, i) - Complex(0.0, 1.25)), 0.0, 1e-15);
    for (Eigen::Index j = 0; j < 4; ++j) {
      if (i != j) {
        EXPECT_NEAR(std::abs(a(i, j) - Complex(0.0, 0.25)), 0.0, 1e-15);
      }
    }
  }
  const ComplexMatrix b = analytic_Z(Scheme::scheme2, ZParameter{0.0});
  EXPECT_LT(max_abs_diff(b, ComplexMatrix(2.0 * kI * ComplexMatrix::Identity(4, 4))), 1e-15);
  EXPECT_THROW(scheme1_pattern(Scheme::scheme2), std::invalid_argument);
}

TEST(Nullifier, covariance_equals_half_U_for_pure_states) {
  for (int k = 0; k < 10; ++k) {
    const GaussianState s = testutil::random_pure_state(4);
    const ComplexGraph g = compute_Z(s);
    EXPECT_LT(max_abs_diff(nullifier_covariance(s, g.V), 0.5 * g.U), 1e-9);
  }
}

TEST(Nullifier, ideal_residual_is_half_diag_U) {
  const GaussianState s = run_circuit(scheme1_circuit(BeamKind::A, Squeezing{0.5, 0.0, {}}));
  const ComplexGraph g = compute_Z(s);
  const Vector res = ideal_nullifier_residual(s, 0.5 * (g.V + g.V.transpose()));
  EXPECT_LT((res - 0.5 * g.U.diagonal()).cwiseAbs().maxCoeff(), 1e-12);
  Matrix asym = Matrix::Zero(4, 4);
  asym(0, 1) = 1.0;
  EXPECT_THROW(ideal_nullifier_residual(s, asym), std::invalid_argument);
}

TEST(Nullifier, residual_shrinks_with_squeezing_for_quadrature_phase) {
  // theta = pi/2 stretches the position spread, so U and the nullifier
  // variances fall as r grows.
  double previous = std::numeric_limits<double>::infinity();
  for (double r : {0.2, 0.5, 1.0}) {
    const GaussianState s = run_circuit(scheme1_circuit(BeamKind::A, Squeezing{r, kPi / 2, {}}));
    const ComplexGraph g = compute_Z(s);
    const double worst = ideal_nullifier_residual(s, g.V).maxCoeff();
    EXPECT_LT(worst, previous);
    previous = worst;
  }
}

TEST(ExtractGraph, cases) {
  ComplexMatrix diag = kI * ComplexMatrix::Identity(3, 3);
  GraphTopology g = extract_graph(diag);
  EXPECT_TRUE(g.edges.empty());
  EXPECT_FALSE(g.fully_connected);
  EXPECT_TRUE(g.fully_symmetric);

  ComplexMatrix full = ComplexMatrix::Constant(3, 3, Complex(0.1, -0.2));
  g = extract_graph(full);
  EXPECT_EQ(g.edges.size(), 3u);
  EXPECT_TRUE(g.fully_connected);
  EXPECT_TRUE(g.fully_symmetric);

  full(0, 2) = full(2, 0) = Complex(0.1, -0.2 + 1e-6);
  g = extract_graph(full, 1e-9);
  EXPECT_TRUE(g.fully_connected);
  EXPECT_FALSE(g.fully_symmetric);

  ComplexMatrix tiny = diag;
  tiny(0, 1) = tiny(1, 0) = 5e-10;
  g = extract_graph(tiny);
  EXPECT_TRUE(g.edges.empty());
  g = extract_graph(tiny, 1e-10);
  ASSERT_EQ(g.edges.size(), 1u);
  EXPECT_EQ(g.edges[0].i, 0u);
  EXPECT_EQ(g.edges[0].j, 1u);

  EXPECT_THROW(extract_graph(diag, 0.0), std::invalid_argument);
}

TEST(RankOne, V_and_U_minus_identity) {
  for (BeamKind kind : {BeamKind::R, BeamKind::A}) {
    const GaussianState s = run_circuit(scheme1_circuit(kind, Squeezing{0.7, 1.1, {}}));
    const ComplexGraph g = compute_Z(s);
    Eigen::JacobiSVD<Matrix> sv_v(g.V);
    Eigen::JacobiSVD<Matrix> sv_u(g.U - Matrix::Identity(4, 4));
    EXPECT_GT(sv_v.singularValues()(0), 1e-3);
    EXPECT_LT(sv_v.singularValues()(1), 1e-12);
    EXPECT_LT(sv_u.singularValues()(1), 1e-12);
  }
}

TEST(RankOne, scheme1_matches_closed_form) {
  for (BeamKind kind : {BeamKind::R, BeamKind::A}) {
    const SqueezeParams p(0.5, kPi / 2);
    const CircuitSpec spec = scheme1_circuit(kind, Squeezing{p.r(), p.theta(), {}});
    const ComplexMatrix z = compute_Z(run_circuit(spec), spec.outputs).Z();
    const Scheme which = kind == BeamKind::A ? Scheme::scheme1_A : Scheme::scheme1_R;
    const SignMatch m = match_up_to_signs(z, analytic_Z(which, z_parameter(p)));
    EXPECT_LT(m.max_abs_deviation, 1e-10);
  }
}

TEST(RankOne, azimuthal_is_literal_and_symmetric) {
  const SqueezeParams p(0.5, kPi / 2);
  const CircuitSpec spec = scheme1_circuit(BeamKind::A, Squeezing{p.r(), p.theta(), {}});
  const ComplexMatrix z = compute_Z(run_circuit(spec)).Z();
  EXPECT_LT(max_abs_diff(z, analytic_Z(Scheme::scheme1_A, z_parameter(p))), 1e-10);
  EXPECT_NEAR(z(0, 1).real(), kZRe, 1e-12);
  EXPECT_NEAR(z(0, 1).imag(), kZIm, 1e-12);
  const GraphTopology g = extract_graph(z, 1e-10);
  EXPECT_TRUE(g.fully_connected);
  EXPECT_TRUE(g.fully_symmetric);
}

TEST(RankOne, permutation_equivariance) {
  const CircuitSpec spec = scheme1_circuit(BeamKind::R, Squeezing{0.4, 0.3, {}});
  const GaussianState s = run_circuit(spec);
  const std::vector<std::size_t> perm{2, 0, 3, 1};
  const ComplexMatrix z = compute_Z(s).Z();
  const ComplexMatrix zp = compute_Z(select_modes(s, perm)).Z();
  EXPECT_LT(max_abs_diff(zp, permute(z, {2, 0, 3, 1})), 1e-12);
}

TEST(RankOne, random_draws_against_sherman_morrison_oracle) {
  for (int k = 0; k < 20; ++k) {
    const BeamKind kind = k % 2 ? BeamKind::R : BeamKind::A;
    const SqueezeParams p(testutil::uniform(0.05, 1.2), testutil::uniform(0.0, 2 * kPi));
    const CircuitSpec spec = scheme1_circuit(kind, Squeezing{p.r(), p.theta(), {}});
    const CompiledCircuit c = compile_circuit(spec);
    const Vector s = testutil::squeezed_mode_amplitudes(spec, c, "beam", squeezed_slot(kind));
    const ComplexMatrix z = compute_Z(select_modes(run_circuit_register(spec, c), c.output_indices)).Z();
    EXPECT_LT(max_abs_diff(z, testutil::rank_one_oracle_Z(s, p.q_variance(), p.qp_covariance())), 1e-10);
    EXPECT_LT(max_abs_diff(z, testutil::rank_one_closed_form(s, z_parameter(p).z)), 1e-10);
  }
}

TEST(Scheme2, box_graph_with_unit_diagonal_offset) {
  const SqueezeParams p(0.5, kPi / 2);
  const Squeezing sq{p.r(), p.theta(), {}};
  const CircuitSpec spec = scheme2_circuit(sq, sq);
  const ComplexMatrix z = compute_Z(run_circuit(spec)).Z();
  const Complex zz = z_parameter(p).z;

  // derived form: (2z + i) I + sqrt(2) z P2
  const ComplexMatrix derived = (2.0 * zz + kI) * ComplexMatrix::Identity(4, 4) +
                                std::numbers::sqrt2 * zz * scheme2_pattern().cast<Complex>();
  EXPECT_LT(match_up_to_signs(z, derived).max_abs_deviation, 1e-10);

  const GraphTopology g = extract_graph(z);
  ASSERT_EQ(g.edges.size(), 4u);
  const std::vector<std::pair<std::size_t, std::size_t>> expected{{0, 2}, {0, 3}, {1, 2}, {1, 3}};
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_EQ(g.edges[k].i, expected[k].first);
    EXPECT_EQ(g.edges[k].j, expected[k].second);
    EXPECT_NEAR(std::abs(g.edges[k].weight), std::numbers::sqrt2 * std::abs(zz), 1e-12);
  }
}

TEST(Scheme2, vacuum_inputs_give_identity) {
  const ComplexMatrix z = compute_Z(run_circuit(scheme2_circuit())).Z();
  EXPECT_LT(max_abs_diff(z, ComplexMatrix(kI * ComplexMatrix::Identity(4, 4))), 1e-15);
}

TEST(SignMatch, recovers_signs) {
  const ComplexMatrix ref = analytic_Z(Scheme::scheme1_A, ZParameter{Complex(0.3, -0.1)});
  std::vector<int> d{1, -1, -1, 1};
  ComplexMatrix z = ref;
  for (Eigen::Index i = 0; i < 4; ++i)
    for (Eigen::Index j = 0; j < 4; ++j) z(i, j) *= static_cast<double>(d[i] * d[j]);
  const SignMatch m = match_up_to_signs(z, ref);
  EXPECT_LT(m.max_abs_deviation, 1e-15);
  EXPECT_EQ(m.signs, d);
  EXPECT_THROW(match_up_to_signs(z, ComplexMatrix::Zero(3, 3)), std::invalid_argument);
}
