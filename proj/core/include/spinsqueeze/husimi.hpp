#pragma once

#include <cstddef>
#include <vector>

#include "spinsqueeze/dicke.hpp"

namespace spinsq {

/// Husimi Q-function sampled on a (theta, phi) sphere grid.
struct QFunctionGrid {
  std::vector<double> theta;  // ascending, pi * i / (n_theta - 1)
  std::vector<double> phi;    // ascending, 2 pi * j / n_phi
  std::vector<double> values;  // theta-major: values[i * phi.size() + j]

  double at(std::size_t i, std::size_t j) const { return values[i * phi.size() + j]; }
  double max_value() const;
};

inline constexpr std::size_t kDefaultThetaSamples = 181;
inline constexpr std::size_t kDefaultPhiSamples = 360;

/// Q(theta, phi) = (N+1)/(4 pi) |<theta, phi|psi>|^2, so that the sphere
/// integral is one. Rows are evaluated concurrently on up to `max_workers`
/// threads (0 = hardware concurrency). Throws std::invalid_argument unless
/// n_theta >= 2 and n_phi >= 2.
QFunctionGrid q_function(const DickeState& state,
                         std::size_t n_theta = kDefaultThetaSamples,
                         std::size_t n_phi = kDefaultPhiSamples,
                         unsigned max_workers = 0);

/// Single-point evaluation of the same normalized Q-function.
double q_value(const DickeState& state, double theta, double phi);

/// Integral of Q over the sphere: trapezoid rule in theta with the sin(theta)
/// measure, periodic rectangle rule in phi.
double sphere_integral(const QFunctionGrid& grid);

}  // namespace spinsq
