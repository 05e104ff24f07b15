#include "spinsqueeze/metrics.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"

#include "dense_oracle.hpp"
#include "spinsqueeze/propagators.hpp"

using namespace spinsq;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(VarianceMatrix, CoherentAlongX) {
  for (int n : {1, 10, 100, 600}) {
    const DickeState s = make_coherent_state(n, kPi / 2, 0.0);
    const VarianceResult v = variance_matrix(s, true);
    EXPECT_NEAR(v.v.yy, 0.25 * n, 1e-10);
    EXPECT_NEAR(v.v.zz, 0.25 * n, 1e-10);
    EXPECT_NEAR(v.v.yz, 0.0, 1e-10);
    const SqueezingReport r = squeezing_parameter(s);
    EXPECT_NEAR(r.v_minus, 0.25 * n, 1e-10);
    EXPECT_NEAR(r.xi2, 1.0, 1e-12);
    EXPECT_NEAR(r.xi2_db, 0.0, 1e-10);
  }
}

TEST(VarianceMatrix, PoleStateUsesQuarterTurnFrame) {
  const DickeState pole = make_coherent_state(16, 0.0, 0.0);
  const VarianceResult v = variance_matrix(pole, true);
  EXPECT_NEAR(v.frame.theta, 0.0, 1e-12);
  EXPECT_NEAR(v.v.yy, 4.0, 1e-10);
  EXPECT_NEAR(v.v.zz, 4.0, 1e-10);
  EXPECT_NEAR(v.v.yz, 0.0, 1e-10);
}

TEST(VarianceMatrix, LabFrameCentralMoments) {
  const DickeState s = make_coherent_state(12, 0.9, 0.4);
  const VarianceResult v = variance_matrix(s, false);
  const SpinMoments m = spin_moments(s);
  EXPECT_NEAR(v.v.yy, m.second[1][1] - m.mean[1] * m.mean[1], 1e-12);
  EXPECT_NEAR(v.v.yz, m.second[1][2] - m.mean[1] * m.mean[2], 1e-12);
  // Coherent state: variance along a unit vector n is (N/4)(1 - (n.u)^2).
  const double uy = std::sin(0.9) * std::sin(0.4);
  EXPECT_NEAR(v.v.yy, 3.0 * (1.0 - uy * uy), 1e-10);
}

// Raw second moments of the explicitly rotated state, computed with dense
// two-mode matrices, must agree with the O(N) projected route.
TEST(VarianceMatrix, MatchesDenseOracleForTwistedState) {
  const int n = 20;
  const DickeState start = make_coherent_state(n, 1.2, -0.5);
  const DickeState s = evolve_oat(start, 1.0, 1.0 / n);
  const VarianceResult v = variance_matrix(s, true);

  const FramedState framed = rotate_to_mean_spin_frame(s);
  const auto spin = oracle::schwinger_spin(n);
  const Eigen::VectorXcd psi = oracle::to_vector(framed.state.amplitudes());
  auto ev = [&](const oracle::Dense& a) { return psi.dot(a * psi).real(); };
  EXPECT_NEAR(ev(spin.jy), 0.0, 1e-9);
  EXPECT_NEAR(ev(spin.jz), 0.0, 1e-9);
  EXPECT_NEAR(v.v.yy, ev(spin.jy * spin.jy), 1e-10);
  EXPECT_NEAR(v.v.zz, ev(spin.jz * spin.jz), 1e-10);
  EXPECT_NEAR(v.v.yz, 0.5 * ev(spin.jy * spin.jz + spin.jz * spin.jy), 1e-10);
}

TEST(VarianceMatrix, UndefinedFrame) {
  const DickeState dicke = DickeState::basis(4, 2);
  EXPECT_THROW(variance_matrix(dicke, true), UndefinedFrameError);
  EXPECT_NO_THROW(variance_matrix(dicke, false));
  EXPECT_THROW(squeezing_parameter(dicke), UndefinedFrameError);
}

TEST(SqueezingParameter, ReportInvariants) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 10 + trial;
    const DickeState s = evolve_oat(make_coherent_state(n, u(rng), u(rng)), 1.0, u(rng) / n);
    const SqueezingReport r = squeezing_parameter(s);
    EXPECT_LE(r.v_minus, std::min(r.v.yy, r.v.zz) + 1e-12);
    EXPECT_GE(r.v_minus, -1e-10);
    EXPECT_EQ(r.xi2, 4.0 * r.v_minus / n);
    EXPECT_NEAR(r.xi2_db, 10.0 * std::log10(r.xi2), 1e-12);
    EXPECT_GT(r.ellipse_angle, -kPi / 2);
    EXPECT_LE(r.ellipse_angle, kPi / 2);
  }
}

// Weak one-axis twisting from +x: the minor axis starts at pi/4 from the pole.
TEST(SqueezingParameter, EarlyOatOrientationIsQuarterPi) {
  const int n = 100;
  const DickeState x = make_coherent_state(n, kPi / 2, 0.0);
  for (double nchi_t : {1e-3, 1e-2}) {
    const SqueezingReport r = squeezing_parameter(evolve_oat(x, 1.0, nchi_t / n));
    EXPECT_NEAR(r.ellipse_angle, kPi / 4, 2 * nchi_t);
    EXPECT_LT(r.xi2, 1.0);
  }
}

TEST(SqueezingParameter, DecibelConvention) {
  EXPECT_DOUBLE_EQ(to_db(1.0), 0.0);
  EXPECT_NEAR(to_db(0.01), -20.0, 1e-12);
  EXPECT_NEAR(to_db(std::exp(-1.0)), -4.342944819, 1e-9);
}
