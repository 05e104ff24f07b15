#include "spinsqueeze/dicke.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "spinsqueeze/propagators.hpp"

namespace spinsq {

namespace {

double squared_norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& a : v) s += std::norm(a);
  return s;
}

void require_particles(int n, int min_n) {
  if (n < min_n) {
    throw std::invalid_argument("particle number must be >= " +
                                std::to_string(min_n) + ", got " +
                                std::to_string(n));
  }
}

}  // namespace

DickeState::DickeState(std::vector<Complex> amplitudes)
    : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.empty()) {
    throw std::invalid_argument("DickeState needs at least one amplitude");
  }
  for (const auto& a : amplitudes_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw std::invalid_argument("DickeState amplitude is not finite");
    }
  }
  const double n2 = squared_norm(amplitudes_);
  if (std::abs(n2 - 1.0) > kNormTolerance) {
    throw std::invalid_argument("DickeState is not normalized (|psi|^2 = " +
                                std::to_string(n2) + ")");
  }
}

DickeState DickeState::normalized(std::vector<Complex> amplitudes) {
  const double n2 = squared_norm(amplitudes);
  if (!(n2 > 0.0) || !std::isfinite(n2)) {
    throw std::invalid_argument("cannot normalize a zero or non-finite vector");
  }
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& a : amplitudes) a *= inv;
  return DickeState(std::move(amplitudes));
}

DickeState DickeState::basis(int n_particles, int k) {
  require_particles(n_particles, 0);
  if (k < 0 || k > n_particles) {
    throw std::invalid_argument("basis index out of range");
  }
  std::vector<Complex> amp(static_cast<std::size_t>(n_particles) + 1);
  amp[static_cast<std::size_t>(k)] = 1.0;
  return DickeState(std::move(amp));
}

double DickeState::norm() const { return std::sqrt(squared_norm(amplitudes_)); }

Complex overlap(const DickeState& a, const DickeState& b) {
  if (a.dimension() != b.dimension()) {
    throw std::invalid_argument("overlap: dimension mismatch");
  }
  Complex s = 0.0;
  for (std::size_t k = 0; k < a.dimension(); ++k) s += std::conj(a[k]) * b[k];
  return s;
}

CollectiveOperators::CollectiveOperators(int n_particles) : n_(n_particles) {
  require_particles(n_particles, 0);
  const double j = spin();
  const auto dim = static_cast<std::size_t>(n_) + 1;
  jz_.resize(dim);
  jplus_.resize(dim - 1);
  for (std::size_t k = 0; k < dim; ++k) jz_[k] = static_cast<double>(k) - j;
  for (std::size_t k = 0; k + 1 < dim; ++k) {
    const double m = jz_[k];
    // (j - m)(j + m + 1) == j(j+1) - m(m+1), without the cancellation.
    jplus_[k] = std::sqrt((j - m) * (j + m + 1.0));
  }
}

std::vector<Complex> CollectiveOperators::apply(Axis axis,
                                                std::span<const Complex> psi) const {
  if (psi.size() != dimension()) {
    throw std::invalid_argument("CollectiveOperators::apply: dimension mismatch");
  }
  const std::size_t dim = dimension();
  std::vector<Complex> out(dim);
  switch (axis) {
    case Axis::Z:
      for (std::size_t k = 0; k < dim; ++k) out[k] = jz_[k] * psi[k];
      break;
    case Axis::X:
      // (J+ psi)_{k+1} = a_k psi_k, (J- psi)_k = a_k psi_{k+1}
      for (std::size_t k = 0; k + 1 < dim; ++k) {
        out[k + 1] += 0.5 * jplus_[k] * psi[k];
        out[k] += 0.5 * jplus_[k] * psi[k + 1];
      }
      break;
    case Axis::Y: {
      const Complex half_i(0.0, 0.5);
      for (std::size_t k = 0; k + 1 < dim; ++k) {
        out[k + 1] -= half_i * jplus_[k] * psi[k];
        out[k] += half_i * jplus_[k] * psi[k + 1];
      }
      break;
    }
  }
  return out;
}

SpinMoments spin_moments(const CollectiveOperators& ops, const DickeState& state) {
  if (ops.dimension() != state.dimension()) {
    throw std::invalid_argument("spin_moments: dimension mismatch");
  }
  const auto psi = state.amplitudes();
  const std::array<std::vector<Complex>, 3> jpsi{
      ops.apply(Axis::X, psi), ops.apply(Axis::Y, psi), ops.apply(Axis::Z, psi)};

  auto inner = [](std::span<const Complex> a, std::span<const Complex> b) {
    Complex s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += std::conj(a[k]) * b[k];
    return s;
  };

  SpinMoments out;
  for (int a = 0; a < 3; ++a) {
    out.mean[a] = inner(psi, jpsi[a]).real();
    for (int b = a; b < 3; ++b) {
      // <psi|J_a J_b|psi> = <J_a psi|J_b psi>; its real part is the
      // symmetrized product.
      const double v = inner(jpsi[a], jpsi[b]).real();
      out.second[a][b] = v;
      out.second[b][a] = v;
    }
  }
  return out;
}

SpinMoments spin_moments(const DickeState& state) {
  return spin_moments(CollectiveOperators(state.particles()), state);
}

double expectation(const CollectiveOperators& ops, const DickeState& state,
                   Observable observable) {
  const SpinMoments mom = spin_moments(ops, state);
  switch (observable) {
    case Observable::Jx: return mom.mean[0];
    case Observable::Jy: return mom.mean[1];
    case Observable::Jz: return mom.mean[2];
    case Observable::Jx2: return mom.second[0][0];
    case Observable::Jy2: return mom.second[1][1];
    case Observable::Jz2: return mom.second[2][2];
    case Observable::JxJySym: return mom.second[0][1];
    case Observable::JxJzSym: return mom.second[0][2];
    case Observable::JyJzSym: return mom.second[1][2];
  }
  throw std::invalid_argument("unknown observable");
}

double expectation(const DickeState& state, Observable observable) {
  return expectation(CollectiveOperators(state.particles()), state, observable);
}

double log_binomial(int n, int k) {
  if (k < 0 || k > n) throw std::invalid_argument("log_binomial: k out of range");
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

std::vector<Complex> coherent_amplitudes(int n_particles, double theta, double phi) {
  require_particles(n_particles, 0);
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  const double log_c = std::log(std::abs(c));
  const double log_s = std::log(std::abs(s));
  const int n = n_particles;
  std::vector<Complex> amp(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    // 0 * log(0) must contribute 0, not NaN.
    double log_mag = 0.5 * log_binomial(n, k);
    if (k > 0) log_mag += k * log_c;
    if (n - k > 0) log_mag += (n - k) * log_s;
    double mag = std::exp(log_mag);
    if ((c < 0.0 && k % 2 == 1) != (s < 0.0 && (n - k) % 2 == 1)) mag = -mag;
    amp[static_cast<std::size_t>(k)] = std::polar(1.0, (n - k) * phi) * mag;
  }
  return amp;
}

DickeState make_coherent_state(int n_particles, double theta, double phi) {
  require_particles(n_particles, 1);
  if (!std::isfinite(theta) || !std::isfinite(phi)) {
    throw std::invalid_argument("make_coherent_state: angles must be finite");
  }
  return DickeState::normalized(coherent_amplitudes(n_particles, theta, phi));
}

FrameRotation mean_spin_direction(const SpinMoments& moments) {
  const auto& v = moments.mean;
  const double len = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  if (!(len > kMinMeanSpinLength)) {
    throw UndefinedFrameError("mean spin length " + std::to_string(len) +
                              " is too small to define a frame");
  }
  FrameRotation f;
  f.theta = std::acos(std::clamp(v[2] / len, -1.0, 1.0));
  f.phi = std::atan2(v[1], v[0]);
  return f;
}

std::array<Vec3, 3> frame_axes(const FrameRotation& frame) {
  const double st = std::sin(frame.theta), ct = std::cos(frame.theta);
  const double sp = std::sin(frame.phi), cp = std::cos(frame.phi);
  return {Vec3{st * cp, st * sp, ct}, Vec3{-sp, cp, 0.0},
          Vec3{-ct * cp, -ct * sp, st}};
}

DickeState apply_frame(const DickeState& state, const FrameRotation& frame) {
  const DickeState s = rotate_state(state, Axis::Z, -frame.phi);
  return rotate_state(s, Axis::Y, 0.5 * std::numbers::pi - frame.theta);
}

DickeState undo_frame(const DickeState& state, const FrameRotation& frame) {
  const DickeState s =
      rotate_state(state, Axis::Y, frame.theta - 0.5 * std::numbers::pi);
  return rotate_state(s, Axis::Z, frame.phi);
}

FramedState rotate_to_mean_spin_frame(const DickeState& state) {
  const FrameRotation frame = mean_spin_direction(spin_moments(state));
  return FramedState{apply_frame(state, frame), frame};
}

}  // namespace spinsq
