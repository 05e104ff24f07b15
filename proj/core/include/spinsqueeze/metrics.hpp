#pragma once

#include "spinsqueeze/dicke.hpp"

namespace spinsq {

/// Transverse variance matrix [[yy, yz], [yz, zz]].
struct VarianceMatrix {
  double yy = 0.0;
  double zz = 0.0;
  double yz = 0.0;

  /// Smaller eigenvalue.
  double minor() const;
  /// Larger eigenvalue.
  double major() const;
};

struct VarianceResult {
  VarianceMatrix v;
  FrameRotation frame;  // identity frame when computed in the lab frame
  Vec3 mean_spin{};
};

/// With `use_mean_spin_frame`, returns the raw second moments of Jy', Jz' in
/// the frame where the mean spin points along +x' (equivalent to rotating the
/// state with rotate_to_mean_spin_frame first; computed from the lab-frame
/// moments in O(N)). Without it, returns the lab-frame central moments of
/// Jy, Jz. Throws UndefinedFrameError when the frame is requested but the
/// mean spin is shorter than kMinMeanSpinLength.
VarianceResult variance_matrix(const CollectiveOperators& ops, const DickeState& state,
                               bool use_mean_spin_frame);
VarianceResult variance_matrix(const DickeState& state, bool use_mean_spin_frame);

struct SqueezingReport {
  double t = 0.0;
  double nchi_t = 0.0;
  VarianceMatrix v;
  double v_minus = 0.0;
  double xi2 = 1.0;
  double xi2_db = 0.0;
  /// Orientation of the minor axis in the y'-z' tangent plane, measured from
  /// the z' (pole) direction, positive in the right-handed sense about the
  /// mean spin; in (-pi/2, pi/2]. Zero when the variance is isotropic.
  double ellipse_angle = 0.0;
  Vec3 mean_spin{};
};

/// xi^2 = 4 V_- / N with V taken in the mean-spin frame. `t` and `nchi_t`
/// are left at zero; callers that track time fill them in.
SqueezingReport squeezing_parameter(const CollectiveOperators& ops, const DickeState& state);
SqueezingReport squeezing_parameter(const DickeState& state);

/// 10 log10(xi2).
double to_db(double xi2);

}  // namespace spinsq
