#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "spinsqueeze/dicke.hpp"

namespace spinsq {

/// Real orthogonal matrix d^j(beta) = exp(-i beta Jy) in the Dicke basis,
/// for j = N/2.
///
/// Each column is the eigenvector of cos(beta) Jz + sin(beta) Jx belonging to
/// eigenvalue m'. It is generated by the three-term recursion of that
/// eigenproblem, run inward from both ends of the m range and matched inside
/// the classically allowed band, so it stays stable for N in the thousands.
/// Construction verifies column orthonormality to 1e-10 and throws
/// NumericalError otherwise.
class WignerD {
 public:
  WignerD(int n_particles, double beta);

  int particles() const { return n_; }
  std::size_t dimension() const { return dim_; }
  double angle() const { return beta_; }

  /// d_{row, col} with indices in the k = m + j convention.
  double operator()(std::size_t row, std::size_t col) const {
    return data_[col * dim_ + row];
  }

  /// d |psi>.
  std::vector<Complex> apply(std::span<const Complex> psi) const;
  /// d^T |psi> = d(-beta) |psi>.
  std::vector<Complex> apply_transpose(std::span<const Complex> psi) const;

 private:
  void fill_column(std::size_t col, double cos_b, double sin_b);
  void verify_orthonormal() const;

  int n_;
  std::size_t dim_;
  double beta_;
  std::vector<double> data_;  // column-major
};

}  // namespace spinsq
