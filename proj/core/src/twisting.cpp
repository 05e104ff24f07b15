#include "spinsqueeze/twisting.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

namespace spinsq {

namespace {

int axis_index(Axis axis) {
  switch (axis) {
    case Axis::X: return 0;
    case Axis::Y: return 1;
    case Axis::Z: return 2;
  }
  return 0;
}

// Cyclic Jacobi sweeps. An already diagonal input yields the identity, which
// is what makes degenerate tensors keep their input axis order.
void jacobi_eigen(Eigen::Matrix3d a, Eigen::Vector3d& values, Eigen::Matrix3d& vectors) {
  vectors.setIdentity();
  for (int sweep = 0; sweep < 64; ++sweep) {
    const double off = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
    if (off == 0.0) break;
    const double scale = a.squaredNorm();
    if (off <= 1e-34 * scale) break;
    for (int p = 0; p < 2; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = std::copysign(1.0, theta) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        Eigen::Matrix3d g = Eigen::Matrix3d::Identity();
        g(p, p) = c;
        g(q, q) = c;
        g(p, q) = s;
        g(q, p) = -s;
        a = g.transpose() * a * g;
        a(p, q) = a(q, p) = 0.0;
        vectors = vectors * g;
      }
    }
  }
  values = a.diagonal();
}

}  // namespace

TwistingTensor::TwistingTensor(const Eigen::Matrix3d& chi, const Eigen::Vector3d& omega)
    : chi_(chi), omega_(omega) {
  if (!chi.allFinite() || !omega.allFinite()) {
    throw std::invalid_argument("TwistingTensor: entries must be finite");
  }
  const double scale = std::max(chi.cwiseAbs().maxCoeff(), 1.0);
  const double asym = (chi - chi.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-14 * scale) {
    throw std::invalid_argument("TwistingTensor: chi is not symmetric");
  }
  chi_ = 0.5 * (chi + chi.transpose());
}

TwistingTensor oat_tensor(Axis axis, double chi) {
  Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
  const int i = axis_index(axis);
  m(i, i) = chi;
  return TwistingTensor(m);
}

TwistingTensor tact_tensor(double chi) {
  Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
  m(0, 0) = chi;
  m(1, 1) = -chi;
  return TwistingTensor(m);
}

CanonicalForm canonicalize(const TwistingTensor& tensor) {
  Eigen::Vector3d values;
  Eigen::Matrix3d vectors;
  jacobi_eigen(tensor.chi(), values, vectors);

  std::array<int, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return values[a] < values[b]; });

  CanonicalForm out;
  Eigen::Vector3d sorted;
  for (int i = 0; i < 3; ++i) {
    sorted[i] = values[order[i]];
    out.rotation.col(i) = vectors.col(order[i]);
  }
  if (out.rotation.determinant() < 0.0) out.rotation.col(2) *= -1.0;

  out.shift = sorted[1];
  out.eigenvalues = Eigen::Vector3d(sorted[0] - out.shift, 0.0, sorted[2] - out.shift);
  return out;
}

TwistingClass classify(const CanonicalForm& canonical, double tolerance) {
  if (tolerance < 0.0) throw std::invalid_argument("classify: negative tolerance");
  const double lo = canonical.eigenvalues[0];
  const double hi = canonical.eigenvalues[2];
  const double spread = hi - lo;
  const double reference = std::max({std::abs(lo), std::abs(hi), std::abs(canonical.shift)});
  if (reference == 0.0 || spread <= tolerance * reference) return TwistingClass::Isotropic;
  if (std::abs(lo) <= tolerance * spread || std::abs(hi) <= tolerance * spread) {
    return TwistingClass::OAT;
  }
  if (std::abs(lo + hi) <= tolerance * spread) return TwistingClass::TACT;
  return TwistingClass::Generic;
}

double max_squeezing_rate(const CanonicalForm& canonical, int n_particles) {
  if (n_particles < 1) throw std::invalid_argument("max_squeezing_rate: N must be >= 1");
  return n_particles * (canonical.eigenvalues[2] - canonical.eigenvalues[0]);
}

TwistingTensor effective_cycle_tensor(std::span<const CycleSegment> segments) {
  if (segments.empty()) throw std::invalid_argument("effective_cycle_tensor: no segments");
  double total = 0.0;
  Eigen::Matrix3d chi = Eigen::Matrix3d::Zero();
  Eigen::Vector3d omega = Eigen::Vector3d::Zero();
  for (const auto& seg : segments) {
    if (!(seg.fraction > 0.0)) {
      throw std::invalid_argument("effective_cycle_tensor: fractions must be positive");
    }
    total += seg.fraction;
    chi += seg.fraction * seg.tensor.chi();
    omega += seg.fraction * seg.tensor.omega();
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("effective_cycle_tensor: fractions sum to " +
                                std::to_string(total) + ", not 1");
  }
  return TwistingTensor(chi, omega);
}

}  // namespace spinsq
