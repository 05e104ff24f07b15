#include "spinsqueeze/husimi.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

namespace spinsq {

namespace {

// |coherent(theta, 0)> magnitudes times psi_k; the phi dependence is
// exp(i (N-k) phi), so the overlap is a polynomial in exp(-i phi).
std::vector<Complex> weighted_row(const DickeState& state, double theta) {
  const auto mags = coherent_amplitudes(state.particles(), theta, 0.0);
  std::vector<Complex> w(state.dimension());
  for (std::size_t k = 0; k < w.size(); ++k) w[k] = std::conj(mags[k]) * state[k];
  return w;
}

// sum_k w_k z^(N-k) with z = exp(-i phi), by Horner's rule.
Complex overlap_at(const std::vector<Complex>& w, double phi) {
  const Complex z = std::polar(1.0, -phi);
  Complex acc = 0.0;
  for (const auto& wk : w) acc = acc * z + wk;
  return acc;
}

}  // namespace

double QFunctionGrid::max_value() const {
  return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

double q_value(const DickeState& state, double theta, double phi) {
  const double norm = (state.particles() + 1) / (4.0 * std::numbers::pi);
  return norm * std::norm(overlap_at(weighted_row(state, theta), phi));
}

QFunctionGrid q_function(const DickeState& state, std::size_t n_theta, std::size_t n_phi,
                         unsigned max_workers) {
  if (n_theta < 2 || n_phi < 2) {
    throw std::invalid_argument("q_function: need at least 2 samples per direction");
  }
  QFunctionGrid grid;
  grid.theta.resize(n_theta);
  grid.phi.resize(n_phi);
  for (std::size_t i = 0; i < n_theta; ++i) {
    grid.theta[i] = std::numbers::pi * static_cast<double>(i) / static_cast<double>(n_theta - 1);
  }
  for (std::size_t j = 0; j < n_phi; ++j) {
    grid.phi[j] = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n_phi);
  }
  grid.values.assign(n_theta * n_phi, 0.0);

  const double norm = (state.particles() + 1) / (4.0 * std::numbers::pi);
  auto fill_row = [&](std::size_t i) {
    const auto w = weighted_row(state, grid.theta[i]);
    for (std::size_t j = 0; j < n_phi; ++j) {
      grid.values[i * n_phi + j] = norm * std::norm(overlap_at(w, grid.phi[j]));
    }
  };

  unsigned workers = max_workers != 0 ? max_workers : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1u, static_cast<unsigned>(n_theta));
  if (workers == 1) {
    for (std::size_t i = 0; i < n_theta; ++i) fill_row(i);
    return grid;
  }
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n_theta; i = next++) fill_row(i);
      });
    }
  }
  return grid;
}

double sphere_integral(const QFunctionGrid& grid) {
  const std::size_t nt = grid.theta.size();
  const std::size_t np = grid.phi.size();
  if (nt < 2 || np < 1) return 0.0;
  const double dphi = 2.0 * std::numbers::pi / static_cast<double>(np);
  double total = 0.0;
  for (std::size_t i = 0; i < nt; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < np; ++j) row += grid.at(i, j);
    const double dtheta_weight =
        (i == 0 || i + 1 == nt) ? 0.5 * (grid.theta[1] - grid.theta[0])
                                : 0.5 * (grid.theta[i + 1] - grid.theta[i - 1]);
    total += row * dphi * std::sin(grid.theta[i]) * dtheta_weight;
  }
  return total;
}

}  // namespace spinsq
