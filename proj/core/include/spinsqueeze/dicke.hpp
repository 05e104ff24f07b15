#pragma once

// Pure states of N two-level particles restricted to the symmetric (Dicke)
// subspace, plus the collective angular-momentum operators acting on it.
//
// Index convention used throughout the library: amplitude index k = 0..N
// corresponds to the Jz eigenvalue m = k - N/2 (ascending).

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace spinsq {

using Complex = std::complex<double>;
using Vec3 = std::array<double, 3>;

enum class Axis { X, Y, Z };

/// Raised when a numerical routine fails to meet its accuracy contract.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when the mean spin is too short for its direction to be defined.
class UndefinedFrameError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

inline constexpr double kNormTolerance = 1e-10;

class DickeState {
 public:
  /// Takes ownership of N+1 amplitudes; throws std::invalid_argument if the
  /// vector is empty, contains non-finite entries, or is not unit norm
  /// within kNormTolerance.
  explicit DickeState(std::vector<Complex> amplitudes);

  /// Rescales `amplitudes` to unit norm before constructing.
  static DickeState normalized(std::vector<Complex> amplitudes);

  /// The Jz eigenstate with index k (m = k - N/2).
  static DickeState basis(int n_particles, int k);

  int particles() const { return static_cast<int>(amplitudes_.size()) - 1; }
  std::size_t dimension() const { return amplitudes_.size(); }
  double spin() const { return 0.5 * particles(); }
  double m(std::size_t k) const { return static_cast<double>(k) - spin(); }

  std::span<const Complex> amplitudes() const { return amplitudes_; }
  const Complex& operator[](std::size_t k) const { return amplitudes_[k]; }

  double norm() const;

 private:
  std::vector<Complex> amplitudes_;
};

/// Inner product <a|b>.
Complex overlap(const DickeState& a, const DickeState& b);

/// Diagonal and ladder matrix elements of Jx, Jy, Jz for spin j = N/2.
///
/// jz()[k] = m_k and jplus()[k] = <k+1|J+|k> = sqrt(j(j+1) - m_k(m_k+1)),
/// so Jx = (J+ + J-)/2 and Jy = (J+ - J-)/(2i) are tridiagonal.
class CollectiveOperators {
 public:
  explicit CollectiveOperators(int n_particles);

  int particles() const { return n_; }
  std::size_t dimension() const { return jz_.size(); }
  double spin() const { return 0.5 * n_; }

  std::span<const double> jz() const { return jz_; }
  std::span<const double> jplus() const { return jplus_; }

  /// J_axis |psi> for an arbitrary (not necessarily normalized) vector.
  std::vector<Complex> apply(Axis axis, std::span<const Complex> psi) const;

 private:
  int n_;
  std::vector<double> jz_;
  std::vector<double> jplus_;
};

enum class Observable {
  Jx,
  Jy,
  Jz,
  Jx2,
  Jy2,
  Jz2,
  JxJySym,  // (JxJy + JyJx)/2
  JxJzSym,
  JyJzSym,
};

double expectation(const CollectiveOperators& ops, const DickeState& state,
                   Observable observable);
double expectation(const DickeState& state, Observable observable);

/// First and symmetrized second moments of (Jx, Jy, Jz).
struct SpinMoments {
  Vec3 mean{};
  std::array<Vec3, 3> second{};  // second[a][b] = <J_a J_b + J_b J_a>/2
};

SpinMoments spin_moments(const CollectiveOperators& ops, const DickeState& state);
SpinMoments spin_moments(const DickeState& state);

/// log(binomial(n, k)) via lgamma; finite for n in the thousands.
double log_binomial(int n, int k);

/// Amplitudes of the spin coherent state pointing along (theta, phi):
/// sqrt(C(N,k)) cos(theta/2)^k sin(theta/2)^(N-k) exp(i (N-k) phi).
/// Magnitudes are evaluated in log space.
std::vector<Complex> coherent_amplitudes(int n_particles, double theta, double phi);

/// Spin coherent state whose mean spin is (N/2)(sin t cos p, sin t sin p, cos t).
DickeState make_coherent_state(int n_particles, double theta, double phi);

/// Polar/azimuthal direction of the mean spin. The frame change that maps
/// this direction onto +x is U = Ry(pi/2 - theta) Rz(-phi).
struct FrameRotation {
  double theta = 0.5 * 3.14159265358979323846;
  double phi = 0.0;
};

inline constexpr double kMinMeanSpinLength = 1e-9;

/// Mean-spin direction of `state`; throws UndefinedFrameError when the mean
/// spin length is below kMinMeanSpinLength.
FrameRotation mean_spin_direction(const SpinMoments& moments);

/// Lab-frame unit vectors of the mean-spin frame axes (x', y', z'):
/// x' along the mean spin, y' azimuthal, z' toward the +z pole.
std::array<Vec3, 3> frame_axes(const FrameRotation& frame);

struct FramedState {
  DickeState state;
  FrameRotation frame;
};

/// Rotates `state` so that <Jy> = <Jz> = 0 and <Jx> > 0.
FramedState rotate_to_mean_spin_frame(const DickeState& state);

/// Applies / inverts the frame change described by `frame`.
DickeState apply_frame(const DickeState& state, const FrameRotation& frame);
DickeState undo_frame(const DickeState& state, const FrameRotation& frame);

}  // namespace spinsq
