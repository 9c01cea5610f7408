// Numerical conformal maps from the unit disk onto cuspidal horn domains.
//
// The map is built with a geodesic zipper construction: the target Jordan
// curve is discretized into nodes, and the domain is unzipped by a sequence of
// elementary slit maps of the upper half plane.  Compositions of elementary
// conformal maps are exactly conformal at any finite resolution; the finite
// resolution only controls how closely the image boundary follows the curve.
// The curve is built through a safety corridor strictly inside the horn and
// the image is verified against the full profile, converting approximation
// into a certificate.
#pragma once

#include <array>
#include <functional>
#include <vector>

#include "holoext/common.hpp"

namespace holoext {

// Angle profile of a horn domain: r e^{i phi} is in the horn iff
// 0 <= phi <= theta(r), with theta continuous, vanishing at 0 and 1, positive
// between, and capped by pi/4.
class CuspProfile {
 public:
  explicit CuspProfile(std::function<double(double)> theta, int samples = 512);

  double theta(double r) const;
  const std::vector<std::array<double, 2>>& samples() const { return samples_; }

 private:
  std::function<double(double)> theta_;
  std::vector<std::array<double, 2>> samples_;
};

// One elementary unzip step acting on the upper half plane: the Mobius map
// z -> z/(1 - z/d) (skipped when d is infinite), then the vertical-slit map
// w -> sqrt(w^2 + s^2), then a renormalization that keeps infinity fixed,
// then rescaling by lambda.
struct ZipStep {
  bool mu_finite = false;
  double d = 0.0;
  double s = 0.0;
  // image of infinity under the raw slit map, sqrt(d^2 + s^2) with the sign
  // opposite to d; the step subtracts the simple pole there so that infinity
  // stays a fixed point and far-field structure survives in double precision
  double vinf = 0.0;
  double lambda = 1.0;
};

class ConformalMap {
 public:
  // checked evaluation on the closed disk; boundary points by radial limit
  // with a Richardson step, with snapping to prescribed node values
  Cplx operator()(Cplx zeta) const;
  // unchecked interior evaluation through the slit-map composition
  Cplx eval_interior(Cplx zeta) const;

  int node_count() const { return static_cast<int>(curve_pts_.size()); }
  double node_angle(int j) const { return pre_angles_[static_cast<std::size_t>(j)]; }
  Cplx node_curve_point(int j) const { return curve_pts_[static_cast<std::size_t>(j)]; }
  // circle preimages of the curve points nearest 0 and 1
  Cplx z0_pre() const { return z0_pre_; }
  Cplx z1_pre() const { return z1_pre_; }
  // max deviation of midpoint boundary samples from the discretized curve
  double accuracy() const { return accuracy_; }
  bool horn_mode() const { return horn_mode_; }

  // construction parameters, exposed for serialization and audits
  const std::vector<ZipStep>& steps() const { return steps_; }
  Cplx base0() const { return base0_; }
  Cplx base1() const { return base1_; }
  double lambda1() const { return lambda1_; }
  double lambda_c() const { return lambda_c_; }
  Cplx post_b() const { return post_b_; }
  Cplx post_rot() const { return post_rot_; }
  const std::vector<double>& node_angles() const { return pre_angles_; }
  const std::vector<Cplx>& curve_points() const { return curve_pts_; }

 private:
  friend ConformalMap build_zipper(std::vector<Cplx> curve, bool horn_mode);
  friend ConformalMap build_cusp_map(const CuspProfile& profile, int N,
                                     double shrink);
  friend ConformalMap build_circle_calibration(int N);

  Cplx base0_, base1_;          // first two curve nodes (phi_1 parameters)
  double lambda1_ = 1.0;        // rescale after phi_1
  std::vector<ZipStep> steps_;  // elementary steps for nodes 2..M-1
  double lambda_c_ = 1.0;       // rescale after closing
  bool horn_mode_ = true;
  // normalizing disk automorphism w -> rot * (w - b)/(1 - conj(b) w) applied
  // after the chain; identity for horn maps, Riemann normalization (center to
  // center, positive derivative) for the calibration map
  Cplx post_b_{0.0, 0.0};
  Cplx post_rot_{1.0, 0.0};

  std::vector<Cplx> curve_pts_;    // prescribed curve nodes, in order
  std::vector<double> pre_angles_; // their circle preimage angles
  // designated boundary points: at the exact preimages z0_pre_/z1_pre_ the map
  // takes the prescribed cusp values z0_val_/z1_val_
  Cplx z0_val_{0.0, 0.0}, z1_val_{1.0, 0.0};
  Cplx z0_pre_{-1.0, 0.0}, z1_pre_{1.0, 0.0};
  double accuracy_ = 0.0;
};

// Builds the conformal map onto a safety corridor of the shrunken profile
// (upper edge at (1 - shrink) * theta, lower edge lifted off the axis) and
// certifies containment in the closed horn of the full profile.  Both cusp
// tips 0 and 1 are curve nodes.
ConformalMap build_cusp_map(const CuspProfile& profile, int N,
                            double shrink = 0.2);

// Calibration: the same construction on a regular polygonal approximation of
// the unit circle; the result must agree with a disk automorphism.
ConformalMap build_circle_calibration(int N);

struct ContainmentReport {
  double min_upper_margin = 0.0;  // min of theta(|G|) - arg G
  double min_lower_margin = 0.0;  // min of arg G
  double max_abs = 0.0;           // max of |G|
  bool ok = false;
};

// Samples grid^2 interior points and grid boundary points and reports horn
// membership margins (angle margins are skipped for calibration maps).
ContainmentReport verify_containment(const ConformalMap& G,
                                     const CuspProfile& profile, int grid);

}  // namespace holoext
