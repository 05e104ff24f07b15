#include "spinsqueeze/wigner_d.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"

#include "dense_oracle.hpp"
#include "spinsqueeze/propagators.hpp"

using namespace spinsq;

namespace {

constexpr double kPi = std::numbers::pi;

double max_abs_diff(const WignerD& d, const oracle::Dense& ref) {
  double worst = 0.0;
  for (std::size_t r = 0; r < d.dimension(); ++r) {
    for (std::size_t c = 0; c < d.dimension(); ++c) {
      worst = std::max(worst, std::abs(Complex(d(r, c)) -
                                       ref(static_cast<Eigen::Index>(r),
                                           static_cast<Eigen::Index>(c))));
    }
  }
  return worst;
}

DickeState random_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<Complex> amp(static_cast<std::size_t>(n) + 1);
  for (auto& a : amp) a = {g(rng), g(rng)};
  return DickeState::normalized(std::move(amp));
}

}  // namespace

// exp(-i b sigma_y / 2) on (m = -1/2, m = +1/2).
TEST(WignerD, SpinHalf) {
  for (double b : {kPi / 2, 0.3, -1.1, 2.9}) {
    const WignerD d(1, b);
    const double c = std::cos(b / 2), s = std::sin(b / 2);
    EXPECT_NEAR(d(0, 0), c, 1e-15);
    EXPECT_NEAR(d(0, 1), s, 1e-15);
    EXPECT_NEAR(d(1, 0), -s, 1e-15);
    EXPECT_NEAR(d(1, 1), c, 1e-15);
  }
}

TEST(WignerD, FullTurnIsParity) {
  for (int n : {1, 2, 5, 8, 31}) {
    const WignerD d(n, 2 * kPi);
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    for (std::size_t r = 0; r < d.dimension(); ++r) {
      for (std::size_t c = 0; c < d.dimension(); ++c) {
        EXPECT_NEAR(d(r, c), r == c ? sign : 0.0, 1e-12);
      }
    }
  }
}

TEST(WignerD, MatchesDenseExponential) {
  const auto spin = oracle::schwinger_spin(6);
  const oracle::Dense ref = oracle::unitary(spin.jy, 0.7);
  EXPECT_LT(max_abs_diff(WignerD(6, 0.7), ref), 1e-10);
}

TEST(WignerD, RandomAnglesMatchOracle) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> angle(-4 * kPi, 4 * kPi);
  for (int n = 0; n <= 8; ++n) {
    const auto spin = oracle::schwinger_spin(n);
    for (int draw = 0; draw < 10; ++draw) {
      const double b = angle(rng);
      EXPECT_LT(max_abs_diff(WignerD(n, b), oracle::unitary(spin.jy, b)), 1e-8)
          << "N=" << n << " beta=" << b;
    }
    for (double b : {0.0, kPi, -kPi, 1e-9, kPi - 1e-9, 3 * kPi}) {
      EXPECT_LT(max_abs_diff(WignerD(n, b), oracle::unitary(spin.jy, b)), 1e-8)
          << "N=" << n << " beta=" << b;
    }
  }
}

// The m' = +j column of d(beta) is the coherent state at theta = beta.
TEST(WignerD, LargeNTopColumnIsCoherentState) {
  for (int n : {600, 1000}) {
    for (double b : {kPi / 2, 0.05, 2.5}) {
      const WignerD d(n, b);
      const auto expected = coherent_amplitudes(n, b, 0.0);
      double worst = 0.0;
      for (std::size_t k = 0; k < d.dimension(); ++k) {
        worst = std::max(worst, std::abs(d(k, d.dimension() - 1) - expected[k].real()));
      }
      EXPECT_LT(worst, 1e-10) << "N=" << n << " beta=" << b;
    }
  }
}

TEST(WignerD, CompositionAtLargeN) {
  std::mt19937_64 rng(23);
  const int n = 600;
  const DickeState psi = random_state(n, rng);
  const double a = 0.37, b = 1.21;
  const DickeState two = rotate_state(rotate_state(psi, Axis::Y, a), Axis::Y, b);
  const DickeState one = rotate_state(psi, Axis::Y, a + b);
  EXPECT_NEAR(std::abs(overlap(one, two) - 1.0), 0.0, 1e-9);

  const DickeState back =
      rotate_state(rotate_state(psi, Axis::Y, kPi / 2), Axis::Y, -kPi / 2);
  EXPECT_NEAR(std::abs(overlap(back, psi) - 1.0), 0.0, 1e-10);
}

TEST(WignerD, RejectsNonFiniteAngle) {
  EXPECT_THROW(WignerD(4, std::nan("")), std::invalid_argument);
  EXPECT_THROW(WignerD(-1, 0.3), std::invalid_argument);
}
