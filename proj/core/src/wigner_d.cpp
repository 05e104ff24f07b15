#include "spinsqueeze/wigner_d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Dense>

namespace spinsq {

namespace {

constexpr double kRescaleAbove = 1e100;
constexpr double kOrthonormalityTolerance = 1e-10;

}  // namespace

WignerD::WignerD(int n_particles, double beta)
    : n_(n_particles),
      dim_(static_cast<std::size_t>(std::max(n_particles, 0)) + 1),
      beta_(beta) {
  if (n_particles < 0) throw std::invalid_argument("WignerD: N must be >= 0");
  if (!std::isfinite(beta)) throw std::invalid_argument("WignerD: angle must be finite");

  data_.assign(dim_ * dim_, 0.0);

  // Reduce to [0, pi]: d(b + 2 pi) = (-1)^N d(b) and d(-b) = d(b)^T.
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double b = std::remainder(beta, two_pi);  // (-pi, pi]
  const double turns = std::round((beta - b) / two_pi);
  const bool odd_turn_flip = (n_ % 2 == 1) && (std::fmod(std::abs(turns), 2.0) == 1.0);
  const bool transpose = b < 0.0;
  b = std::abs(b);

  if (b == 0.0) {
    for (std::size_t k = 0; k < dim_; ++k) data_[k * dim_ + k] = 1.0;
  } else if (b == std::numbers::pi) {
    // d_{m,m'}(pi) = (-1)^(j+m) delta_{m,-m'}
    for (std::size_t col = 0; col < dim_; ++col) {
      const std::size_t row = dim_ - 1 - col;
      data_[col * dim_ + row] = (row % 2 == 0) ? 1.0 : -1.0;
    }
  } else {
    const double cos_b = std::cos(b);
    const double sin_b = std::sin(b);
    for (std::size_t col = 0; col < dim_; ++col) fill_column(col, cos_b, sin_b);
  }

  if (transpose) {
    for (std::size_t r = 0; r < dim_; ++r) {
      for (std::size_t c = r + 1; c < dim_; ++c) {
        std::swap(data_[c * dim_ + r], data_[r * dim_ + c]);
      }
    }
  }
  if (odd_turn_flip) {
    for (auto& x : data_) x = -x;
  }

  verify_orthonormal();
}

// Column m' solves (cos b Jz + sin b Jx) c = m' c. Row k of that tridiagonal
// system reads
//   h_{k-1} c_{k-1} + (cos b m_k - m') c_k + h_k c_{k+1} = 0,
// with h_k = sin b a_k / 2. The forward sweep from k = 0 and the backward
// sweep from k = N both grow toward the classically allowed band centred at
// m = m' cos b, so they are matched there.
void WignerD::fill_column(std::size_t col, double cos_b, double sin_b) {
  const std::size_t n = dim_ - 1;
  double* c = &data_[col * dim_];
  if (n == 0) {
    c[0] = 1.0;
    return;
  }

  const double j = 0.5 * n_;
  const double mp = static_cast<double>(col) - j;
  auto m = [j](std::size_t k) { return static_cast<double>(k) - j; };
  auto h = [j, sin_b, &m](std::size_t k) {
    const double mk = m(k);
    return 0.5 * sin_b * std::sqrt((j - mk) * (j + mk + 1.0));
  };
  auto diag_gap = [&](std::size_t k) { return mp - cos_b * m(k); };

  const double centre = std::round(mp * cos_b + j);
  const std::size_t p =
      static_cast<std::size_t>(std::clamp(centre, 0.0, static_cast<double>(n - 1)));

  std::vector<double> fwd(p + 2, 0.0);
  fwd[0] = 1.0;
  for (std::size_t k = 0; k <= p; ++k) {
    const double prev = (k == 0) ? 0.0 : h(k - 1) * fwd[k - 1];
    fwd[k + 1] = (diag_gap(k) * fwd[k] - prev) / h(k);
    if (std::abs(fwd[k + 1]) > kRescaleAbove) {
      for (std::size_t i = 0; i <= k + 1; ++i) fwd[i] /= kRescaleAbove;
    }
  }

  std::vector<double> bwd(dim_, 0.0);
  bwd[n] = 1.0;
  for (std::size_t k = n; k > p; --k) {
    const double next = (k == n) ? 0.0 : h(k) * bwd[k + 1];
    bwd[k - 1] = (diag_gap(k) * bwd[k] - next) / h(k - 1);
    if (std::abs(bwd[k - 1]) > kRescaleAbove) {
      for (std::size_t i = k - 1; i <= n; ++i) bwd[i] /= kRescaleAbove;
    }
  }

  // Least-squares match on the two shared points p, p+1.
  const double num = fwd[p] * bwd[p] + fwd[p + 1] * bwd[p + 1];
  const double den = bwd[p] * bwd[p] + bwd[p + 1] * bwd[p + 1];
  if (!(den > 0.0) || !std::isfinite(num / den)) {
    throw NumericalError("WignerD: recursion match failed for column " +
                         std::to_string(col));
  }
  const double scale = num / den;

  double norm2 = 0.0;
  for (std::size_t k = 0; k <= p; ++k) {
    c[k] = fwd[k];
    norm2 += c[k] * c[k];
  }
  for (std::size_t k = p + 1; k <= n; ++k) {
    c[k] = scale * bwd[k];
    norm2 += c[k] * c[k];
  }
  // For 0 < b < pi, sign(d_{j,m'}) = (-1)^(j - m') and bwd[n] = 1 > 0.
  const bool want_positive = ((n - col) % 2 == 0);
  double inv = 1.0 / std::sqrt(norm2);
  if ((scale > 0.0) != want_positive) inv = -inv;
  for (std::size_t k = 0; k <= n; ++k) c[k] *= inv;
}

void WignerD::verify_orthonormal() const {
  const auto d = static_cast<Eigen::Index>(dim_);
  Eigen::Map<const Eigen::MatrixXd> mat(data_.data(), d, d);
  const Eigen::MatrixXd gram = mat.transpose() * mat;
  const double err = (gram - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff();
  if (!(err <= kOrthonormalityTolerance)) {
    throw NumericalError("WignerD: columns not orthonormal (max error " +
                         std::to_string(err) + ")");
  }
}

std::vector<Complex> WignerD::apply(std::span<const Complex> psi) const {
  if (psi.size() != dim_) throw std::invalid_argument("WignerD::apply: dimension mismatch");
  const auto d = static_cast<Eigen::Index>(dim_);
  Eigen::Map<const Eigen::MatrixXd> mat(data_.data(), d, d);
  // Complex vectors viewed as 2 x dim real matrices (re; im).
  Eigen::Map<const Eigen::Matrix<double, 2, Eigen::Dynamic>> in(
      reinterpret_cast<const double*>(psi.data()), 2, d);
  std::vector<Complex> out(dim_);
  Eigen::Map<Eigen::Matrix<double, 2, Eigen::Dynamic>> res(
      reinterpret_cast<double*>(out.data()), 2, d);
  res.noalias() = in * mat.transpose();
  return out;
}

std::vector<Complex> WignerD::apply_transpose(std::span<const Complex> psi) const {
  if (psi.size() != dim_) throw std::invalid_argument("WignerD::apply: dimension mismatch");
  const auto d = static_cast<Eigen::Index>(dim_);
  Eigen::Map<const Eigen::MatrixXd> mat(data_.data(), d, d);
  Eigen::Map<const Eigen::Matrix<double, 2, Eigen::Dynamic>> in(
      reinterpret_cast<const double*>(psi.data()), 2, d);
  std::vector<Complex> out(dim_);
  Eigen::Map<Eigen::Matrix<double, 2, Eigen::Dynamic>> res(
      reinterpret_cast<double*>(out.data()), 2, d);
  res.noalias() = in * mat;
  return out;
}

}  // namespace spinsq
