#include "spinsqueeze/propagators.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace spinsq {

namespace {

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument(std::string(what) + " must be finite");
  }
}

std::vector<Complex> z_phases(const DickeState& state, double angle) {
  const auto psi = state.amplitudes();
  std::vector<Complex> out(psi.size());
  for (std::size_t k = 0; k < psi.size(); ++k) {
    out[k] = psi[k] * std::polar(1.0, -angle * state.m(k));
  }
  return out;
}

// Rx(a) = Rz(-pi/2) Ry(a) Rz(pi/2)
std::vector<Complex> rotate_with(const DickeState& state, Axis axis,
                                 const WignerD& d) {
  if (axis == Axis::Y) return d.apply(state.amplitudes());
  const double quarter = 0.5 * std::numbers::pi;
  const DickeState pre = DickeState(z_phases(state, quarter));
  const DickeState mid = DickeState(d.apply(pre.amplitudes()));
  return z_phases(mid, -quarter);
}

}  // namespace

DickeState evolve_oat(const DickeState& state, double chi, double t) {
  const double ct = chi * t;
  require_finite(ct, "chi * t");
  const auto psi = state.amplitudes();
  std::vector<Complex> out(psi.size());
  for (std::size_t k = 0; k < psi.size(); ++k) {
    const double m = state.m(k);
    // m^2 ct can be large; reduce the phase before polar() to keep accuracy.
    const double phase = std::remainder(ct * m * m, 2.0 * std::numbers::pi);
    out[k] = psi[k] * std::polar(1.0, -phase);
  }
  return DickeState(std::move(out));
}

DickeState rotate_state(const DickeState& state, Axis axis, double angle) {
  require_finite(angle, "rotation angle");
  if (axis == Axis::Z) return DickeState(z_phases(state, angle));
  const WignerD d(state.particles(), angle);
  return DickeState(rotate_with(state, axis, d));
}

AxisRotation::AxisRotation(int n_particles, Axis axis, double angle)
    : n_(n_particles), axis_(axis), angle_(angle) {
  require_finite(angle, "rotation angle");
  if (n_particles < 0) throw std::invalid_argument("AxisRotation: N must be >= 0");
  if (axis != Axis::Z) d_ = std::make_shared<const WignerD>(n_particles, angle);
}

DickeState AxisRotation::apply(const DickeState& state) const {
  if (state.particles() != n_) {
    throw std::invalid_argument("AxisRotation::apply: dimension mismatch");
  }
  if (axis_ == Axis::Z) return DickeState(z_phases(state, angle_));
  return DickeState(rotate_with(state, axis_, *d_));
}

TridiagonalSpectralCache build_spectral_cache(int n_particles, double omega_x,
                                              double chi) {
  if (n_particles < 1) throw std::invalid_argument("build_spectral_cache: N must be >= 1");
  require_finite(omega_x, "omega_x");
  require_finite(chi, "chi");

  const CollectiveOperators ops(n_particles);
  const auto dim = static_cast<Eigen::Index>(ops.dimension());
  Eigen::VectorXd diag(dim);
  Eigen::VectorXd sub(dim - 1);
  for (Eigen::Index k = 0; k < dim; ++k) {
    const double m = ops.jz()[static_cast<std::size_t>(k)];
    diag[k] = chi * m * m;
  }
  for (Eigen::Index k = 0; k + 1 < dim; ++k) {
    sub[k] = 0.5 * omega_x * ops.jplus()[static_cast<std::size_t>(k)];
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("build_spectral_cache: tridiagonal eigensolver did not converge");
  }

  TridiagonalSpectralCache cache;
  cache.n_ = n_particles;
  cache.omega_x_ = omega_x;
  cache.chi_ = chi;
  cache.eigenvalues_ = solver.eigenvalues();
  cache.eigenvectors_ = solver.eigenvectors();

  // Residual check: ||H v_i - lambda_i v_i|| <= 1e-9 ||H||.
  double h_norm = 0.0;  // infinity norm bounds the spectral norm
  for (Eigen::Index k = 0; k < dim; ++k) {
    double row = std::abs(diag[k]);
    if (k > 0) row += std::abs(sub[k - 1]);
    if (k + 1 < dim) row += std::abs(sub[k]);
    h_norm = std::max(h_norm, row);
  }
  const auto& v = cache.eigenvectors_;
  double worst = 0.0;
  for (Eigen::Index i = 0; i < dim; ++i) {
    double r2 = 0.0;
    for (Eigen::Index k = 0; k < dim; ++k) {
      double hv = diag[k] * v(k, i);
      if (k > 0) hv += sub[k - 1] * v(k - 1, i);
      if (k + 1 < dim) hv += sub[k] * v(k + 1, i);
      const double r = hv - cache.eigenvalues_[i] * v(k, i);
      r2 += r * r;
    }
    worst = std::max(worst, std::sqrt(r2));
  }
  if (worst > 1e-9 * h_norm) {
    throw NumericalError("build_spectral_cache: eigenpair residual " +
                         std::to_string(worst) + " exceeds tolerance");
  }
  return cache;
}

DickeState evolve_rotating_oat(const DickeState& state,
                               const TridiagonalSpectralCache& cache, double t) {
  if (state.dimension() != cache.dimension()) {
    throw std::invalid_argument("evolve_rotating_oat: dimension mismatch");
  }
  require_finite(t, "t");
  const auto dim = static_cast<Eigen::Index>(state.dimension());
  Eigen::Map<const Eigen::VectorXcd> psi(state.amplitudes().data(), dim);
  const Eigen::MatrixXd& v = cache.eigenvectors();

  const Eigen::VectorXd re = psi.real();
  const Eigen::VectorXd im = psi.imag();
  const Eigen::VectorXd c_re = v.transpose() * re;
  const Eigen::VectorXd c_im = v.transpose() * im;
  Eigen::VectorXd p_re(dim), p_im(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const Complex c = Complex(c_re[i], c_im[i]) * std::polar(1.0, -cache.eigenvalues()[i] * t);
    p_re[i] = c.real();
    p_im[i] = c.imag();
  }
  const Eigen::VectorXd out_re = v * p_re;
  const Eigen::VectorXd out_im = v * p_im;
  std::vector<Complex> out(state.dimension());
  for (Eigen::Index k = 0; k < dim; ++k) out[static_cast<std::size_t>(k)] = {out_re[k], out_im[k]};
  return DickeState(std::move(out));
}

}  // namespace spinsq
