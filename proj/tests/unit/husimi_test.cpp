#include "spinsqueeze/husimi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "gtest/gtest.h"

#include "spinsqueeze/propagators.hpp"
#include "spinsqueeze/protocols.hpp"

using namespace spinsq;

namespace {

constexpr double kPi = std::numbers::pi;

DickeState random_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<Complex> amp(static_cast<std::size_t>(n) + 1);
  for (auto& a : amp) a = {g(rng), g(rng)};
  return DickeState::normalized(std::move(amp));
}

Eigen::Vector3d direction(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

}  // namespace

TEST(QFunction, CoherentStatePeak) {
  const int n = 40;
  const DickeState x = make_coherent_state(n, kPi / 2, 0.0);
  const QFunctionGrid g = q_function(x, 181, 360);
  const double peak = (n + 1) / (4 * kPi);
  EXPECT_NEAR(g.at(90, 0), peak, 1e-12);
  EXPECT_NEAR(g.max_value(), peak, 1e-12);
  EXPECT_NEAR(q_value(x, kPi / 2, 0.0), peak, 1e-12);
  // Antipode vanishes.
  EXPECT_NEAR(g.at(90, 180), 0.0, 1e-15);
}

TEST(QFunction, GridLayout) {
  const QFunctionGrid g = q_function(DickeState::basis(3, 0), 5, 4);
  ASSERT_EQ(g.theta.size(), 5u);
  ASSERT_EQ(g.phi.size(), 4u);
  ASSERT_EQ(g.values.size(), 20u);
  EXPECT_EQ(g.theta.front(), 0.0);
  EXPECT_DOUBLE_EQ(g.theta.back(), kPi);
  EXPECT_DOUBLE_EQ(g.phi[1], kPi / 2);
}

// |m = -j> sits at the south pole, so Q is zero at the north pole and peaks
// at theta = pi for every phi.
TEST(QFunction, PoleState) {
  const int n = 6;
  const QFunctionGrid g = q_function(DickeState::basis(n, 0), 19, 12);
  for (std::size_t j = 0; j < g.phi.size(); ++j) {
    EXPECT_NEAR(g.at(0, j), 0.0, 1e-15);
    EXPECT_NEAR(g.at(18, j), (n + 1) / (4 * kPi), 1e-12);
  }
}

TEST(QFunction, GridMatchesPointwise) {
  std::mt19937_64 rng(3);
  const DickeState s = random_state(25, rng);
  const QFunctionGrid g = q_function(s, 13, 10, 3);
  for (std::size_t i = 0; i < g.theta.size(); ++i) {
    for (std::size_t j = 0; j < g.phi.size(); ++j) {
      EXPECT_NEAR(g.at(i, j), q_value(s, g.theta[i], g.phi[j]), 1e-12);
    }
  }
}

// Q of R psi at n equals Q of psi at R^T n.
TEST(QFunction, RotationCovariance) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int n = 12;
  const DickeState s = random_state(n, rng);
  for (Axis axis : {Axis::X, Axis::Y, Axis::Z}) {
    const double angle = 0.9;
    const DickeState r = rotate_state(s, axis, angle);
    Eigen::Vector3d unit = Eigen::Vector3d::Zero();
    unit[static_cast<int>(axis)] = 1.0;
    const Eigen::Matrix3d rot = Eigen::AngleAxisd(angle, unit).toRotationMatrix();
    for (int draw = 0; draw < 20; ++draw) {
      const double theta = std::acos(1.0 - 2.0 * u(rng));
      const double phi = 2 * kPi * u(rng);
      const Eigen::Vector3d back = rot.transpose() * direction(theta, phi);
      const double theta0 = std::acos(std::clamp(back.z(), -1.0, 1.0));
      const double phi0 = std::atan2(back.y(), back.x());
      EXPECT_NEAR(q_value(r, theta, phi), q_value(s, theta0, phi0), 1e-8);
    }
  }
}

TEST(QFunction, NormalizationIntegral) {
  std::mt19937_64 rng(5);
  for (int n : {1, 10, 100}) {
    const DickeState s = random_state(n, rng);
    EXPECT_NEAR(sphere_integral(q_function(s)), 1.0, 1e-3) << "N=" << n;
  }
  const DickeState squeezed =
      evolve_oat(make_coherent_state(200, kPi / 2, 0.0), 1.0, 2.0 / 200);
  EXPECT_NEAR(sphere_integral(q_function(squeezed)), 1.0, 1e-3);
}

// Best combined-scheme state: the ridge runs along the equator. The raw
// (theta, phi) marginals are distorted by the ridge bending over the sphere,
// so the anisotropy is measured in the tangent plane of the mean spin.
TEST(QFunction, CombinedBestStateIsElongated) {
  const int n = 100;
  const auto p = parameters_from_nchi(n, 1.0, 6.7, 0.04, 1.5, kDefaultNchiSampleSpacing);
  const auto sched = build_schedule(ProtocolLabel::Combined, p);
  const DickeState s = run_protocol(sched, equatorial_initial_state(n)).final_state;
  const QFunctionGrid g = q_function(s, 181, 360);

  double w = 0.0, my = 0.0, mz = 0.0, yy = 0.0, zz = 0.0, yz = 0.0;
  double m_th = 0.0, m_ph = 0.0, th2 = 0.0, ph2 = 0.0;
  for (std::size_t i = 0; i < g.theta.size(); ++i) {
    for (std::size_t j = 0; j < g.phi.size(); ++j) {
      const Eigen::Vector3d d = direction(g.theta[i], g.phi[j]);
      const double q = g.at(i, j) * std::sin(g.theta[i]);
      const double ph = g.phi[j] > kPi ? g.phi[j] - 2 * kPi : g.phi[j];
      w += q;
      my += q * d.y();
      mz += q * d.z();
      yy += q * d.y() * d.y();
      zz += q * d.z() * d.z();
      yz += q * d.y() * d.z();
      m_th += q * g.theta[i];
      th2 += q * g.theta[i] * g.theta[i];
      m_ph += q * ph;
      ph2 += q * ph * ph;
    }
  }
  my /= w;
  mz /= w;
  Eigen::Matrix2d cov;
  cov << yy / w - my * my, yz / w - my * mz, yz / w - my * mz, zz / w - mz * mz;
  const Eigen::Vector2d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(cov).eigenvalues();
  EXPECT_GT(ev[1] / ev[0], 10.0);
  const double var_th = th2 / w - (m_th / w) * (m_th / w);
  const double var_ph = ph2 / w - (m_ph / w) * (m_ph / w);
  EXPECT_GT(var_ph, var_th);
}

TEST(QFunction, RejectsDegenerateGrid) {
  const DickeState s = DickeState::basis(2, 1);
  EXPECT_THROW(q_function(s, 1, 10), std::invalid_argument);
  EXPECT_THROW(q_function(s, 10, 1), std::invalid_argument);
}
