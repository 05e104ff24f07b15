#include "spinsqueeze/metrics.hpp"

#include <cmath>
#include <numbers>

namespace spinsq {

namespace {

double project(const std::array<Vec3, 3>& s, const Vec3& a, const Vec3& b) {
  double out = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out += a[i] * s[i][j] * b[j];
  }
  return out;
}

double half_gap(const VarianceMatrix& v) {
  return std::hypot(0.5 * (v.yy - v.zz), v.yz);
}

}  // namespace

double VarianceMatrix::minor() const { return 0.5 * (yy + zz) - half_gap(*this); }
double VarianceMatrix::major() const { return 0.5 * (yy + zz) + half_gap(*this); }

VarianceResult variance_matrix(const CollectiveOperators& ops, const DickeState& state,
                               bool use_mean_spin_frame) {
  const SpinMoments mom = spin_moments(ops, state);
  VarianceResult out;
  out.mean_spin = mom.mean;
  if (use_mean_spin_frame) {
    out.frame = mean_spin_direction(mom);
    const auto axes = frame_axes(out.frame);
    // Mean of J.e vanishes for e perpendicular to <J>, so raw and central
    // moments coincide in this frame.
    out.v.yy = project(mom.second, axes[1], axes[1]);
    out.v.zz = project(mom.second, axes[2], axes[2]);
    out.v.yz = project(mom.second, axes[1], axes[2]);
  } else {
    const auto& m = mom.mean;
    out.v.yy = mom.second[1][1] - m[1] * m[1];
    out.v.zz = mom.second[2][2] - m[2] * m[2];
    out.v.yz = mom.second[1][2] - m[1] * m[2];
  }
  return out;
}

VarianceResult variance_matrix(const DickeState& state, bool use_mean_spin_frame) {
  return variance_matrix(CollectiveOperators(state.particles()), state,
                         use_mean_spin_frame);
}

double to_db(double xi2) { return 10.0 * std::log10(xi2); }

SqueezingReport squeezing_parameter(const CollectiveOperators& ops, const DickeState& state) {
  if (state.particles() < 1) throw std::invalid_argument("squeezing_parameter: N must be >= 1");
  const VarianceResult vr = variance_matrix(ops, state, true);
  SqueezingReport r;
  r.v = vr.v;
  r.mean_spin = vr.mean_spin;
  r.v_minus = vr.v.minor();
  r.xi2 = 4.0 * r.v_minus / state.particles();
  r.xi2_db = to_db(r.xi2);

  const double gap = half_gap(vr.v);
  const double scale = std::abs(vr.v.yy) + std::abs(vr.v.zz);
  if (gap > 1e-12 * scale) {
    // Minor-axis eigenvector (vy, vz), written so that it is well conditioned.
    double vy, vz;
    if (vr.v.yy <= vr.v.zz) {
      vy = r.v_minus - vr.v.zz;
      vz = vr.v.yz;
    } else {
      vy = vr.v.yz;
      vz = r.v_minus - vr.v.yy;
    }
    // Rotating z' toward -y' is positive about the outward normal x'.
    double angle = std::atan2(-vy, vz);
    if (angle <= -0.5 * std::numbers::pi) angle += std::numbers::pi;
    if (angle > 0.5 * std::numbers::pi) angle -= std::numbers::pi;
    r.ellipse_angle = angle;
  }
  return r;
}

SqueezingReport squeezing_parameter(const DickeState& state) {
  return squeezing_parameter(CollectiveOperators(state.particles()), state);
}

}  // namespace spinsq
