#pragma once

// Exact propagators for the Hamiltonians the squeezing protocols use.
// Sign convention: evolution is exp(-i H t); a rotation by angle a about
// axis n is exp(-i a n.J).

#include <cstddef>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "spinsqueeze/dicke.hpp"
#include "spinsqueeze/wigner_d.hpp"

namespace spinsq {

/// exp(-i chi Jz^2 t): multiplies the amplitude at m by exp(-i chi m^2 t).
DickeState evolve_oat(const DickeState& state, double chi, double t);

/// exp(-i angle J_axis). Builds a fresh Wigner-d matrix for x and y; use
/// AxisRotation when the same rotation is applied repeatedly.
DickeState rotate_state(const DickeState& state, Axis axis, double angle);

/// Precomputed exp(-i angle J_axis) for a fixed N.
class AxisRotation {
 public:
  AxisRotation(int n_particles, Axis axis, double angle);

  int particles() const { return n_; }
  Axis axis() const { return axis_; }
  double angle() const { return angle_; }

  DickeState apply(const DickeState& state) const;

 private:
  int n_;
  Axis axis_;
  double angle_;
  std::shared_ptr<const WignerD> d_;  // null for z rotations
};

/// Eigendecomposition of the real symmetric tridiagonal rotating-frame
/// Hamiltonian H = omega_x Jx + chi Jz^2.
class TridiagonalSpectralCache {
 public:
  int particles() const { return n_; }
  std::size_t dimension() const { return static_cast<std::size_t>(n_) + 1; }
  double omega_x() const { return omega_x_; }
  double chi() const { return chi_; }

  /// Ascending eigenvalues.
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  /// Column i is the eigenvector of eigenvalues()[i].
  const Eigen::MatrixXd& eigenvectors() const { return eigenvectors_; }

 private:
  friend TridiagonalSpectralCache build_spectral_cache(int, double, double);

  int n_ = 0;
  double omega_x_ = 0.0;
  double chi_ = 0.0;
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXd eigenvectors_;
};

/// Throws NumericalError if the eigensolver does not converge or the
/// residual check ||H v - lambda v|| <= 1e-9 ||H|| fails.
TridiagonalSpectralCache build_spectral_cache(int n_particles, double omega_x,
                                              double chi);

/// exp(-i H t) through the cached spectral decomposition.
DickeState evolve_rotating_oat(const DickeState& state,
                               const TridiagonalSpectralCache& cache, double t);

}  // namespace spinsq
