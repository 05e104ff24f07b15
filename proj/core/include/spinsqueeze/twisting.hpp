#pragma once

// Quadratic collective-spin Hamiltonians H = omega.J + J.chi.J, described by
// the symmetric "twisting tensor" chi and the linear vector omega.

#include <span>

#include <Eigen/Dense>

#include "spinsqueeze/dicke.hpp"

namespace spinsq {

class TwistingTensor {
 public:
  /// Throws std::invalid_argument unless chi is finite and symmetric to 1e-14
  /// (relative to its largest entry); stores the exactly symmetrized matrix.
  explicit TwistingTensor(const Eigen::Matrix3d& chi,
                          const Eigen::Vector3d& omega = Eigen::Vector3d::Zero());

  const Eigen::Matrix3d& chi() const { return chi_; }
  const Eigen::Vector3d& omega() const { return omega_; }

 private:
  Eigen::Matrix3d chi_;
  Eigen::Vector3d omega_;
};

/// chi J_axis^2.
TwistingTensor oat_tensor(Axis axis, double chi);
/// chi (Jx^2 - Jy^2).
TwistingTensor tact_tensor(double chi);

struct CanonicalForm {
  /// Ascending, shifted so that the middle entry is exactly zero.
  Eigen::Vector3d eigenvalues;
  /// Proper rotation whose columns are the principal axes in lab
  /// coordinates: rotation^T (chi - shift I) rotation = diag(eigenvalues).
  Eigen::Matrix3d rotation;
  /// Multiple of the identity removed from chi (absorbed into a global phase).
  double shift = 0.0;
};

/// Principal-axis form. Degenerate eigenvalues keep the input axis order.
CanonicalForm canonicalize(const TwistingTensor& tensor);

enum class TwistingClass { OAT, TACT, Generic, Isotropic };

inline constexpr double kDefaultClassifyTolerance = 1e-9;

/// Relative tolerance; throws std::invalid_argument if negative.
TwistingClass classify(const CanonicalForm& canonical,
                       double tolerance = kDefaultClassifyTolerance);

/// N (chi_max - chi_min): the largest initial rate of ln(xi^2) decay.
double max_squeezing_rate(const CanonicalForm& canonical, int n_particles);

struct CycleSegment {
  TwistingTensor tensor;
  double fraction;
};

/// Fraction-weighted average of the segment tensors. Fractions must be
/// positive and sum to one within 1e-12.
TwistingTensor effective_cycle_tensor(std::span<const CycleSegment> segments);

}  // namespace spinsq
