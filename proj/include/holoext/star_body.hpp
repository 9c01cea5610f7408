// Star-shaped bodies in C^n with Minkowski gauge evaluation, hull bodies,
// products, and empirical modulus-of-continuity bounds for the gauge.
#pragma once

#include <array>
#include <memory>

#include "holoext/common.hpp"

namespace holoext {

enum class BodyKind {
  Ball,
  Polydisk,
  RadialProfile,
  ConvexHullEps,
  Product,
  CustomGauge,  // programmatic bodies built from a gauge callable (not serialized)
};

/// Concave nondecreasing majorant m(t) >= |p(u) - p(v)| for ||u - v|| <= t,
/// clamped by the Lipschitz slope: m(t) = min(lipschitz * t, envelope(t)).
struct ModulusBound {
  double lipschitz = 0.0;
  double domain_max = 0.0;
  std::vector<double> knot_t;  // increasing, knot_t[0] = 0
  std::vector<double> knot_v;  // concave envelope, knot_v[0] = 0

  double operator()(double t) const;
};

/// A bounded star-shaped body M in C^n together with its Minkowski gauge
/// p(v) = inf { 1/t : center + t (v - center) in M, t > 0 }.
/// Closed-form gauges are used where available; hull bodies use ray bisection
/// against a convex-membership oracle.
class StarBody {
 public:
  static StarBody ball(VecC center, double radius);
  static StarBody polydisk(VecC center, VecR radii);
  /// dim-1 body given by a strictly positive 2*pi-periodic radius function.
  static StarBody radial_profile(std::function<double(double)> radius,
                                 int table_size = 4096);
  static StarBody radial_profile_samples(
      const std::vector<std::array<double, 2>>& angle_radius);
  /// Closed eps-neighborhood of the convex hull of `points`, centered at the
  /// centroid of `points`. Requires eps > 0.
  static StarBody hull_eps(std::vector<VecC> points, double eps);
  static StarBody product(const StarBody& a, const StarBody& b);
  /// Body {p < 1} recovered from a positively homogeneous continuous gauge
  /// (centered at 0). Gauge evaluation goes through the membership oracle and
  /// ray bisection, so gauge(from_gauge(p)) reproduces p on rays.
  static StarBody from_gauge(int dim, std::function<double(const VecC&)> p);

  int dim() const { return dim_; }
  BodyKind kind() const { return kind_; }
  const VecC& center() const { return center_; }
  double kernel_inradius() const { return rho_; }
  double outradius() const { return outr_; }
  /// Lipschitz convention for the gauge: R / rho^2.
  double lipschitz_bound() const { return outr_ / (rho_ * rho_); }

  double gauge(const VecC& v) const;
  /// Membership with the 1e-9 boundary tolerance band.
  bool contains(const VecC& v) const { return gauge(v) <= 1.0 + 1e-9; }

  /// The body r*M (about its center), r > 0.
  StarBody scaled(double r) const;

  // introspection used by serialization
  double param_radius() const { return radius_; }
  const VecR& param_radii() const { return radii_; }
  const std::vector<std::array<double, 2>>& profile_table() const {
    return profile_;
  }
  const std::vector<VecC>& hull_points() const { return hull_points_; }
  double hull_eps_value() const { return eps_; }
  const StarBody* factor(int i) const {
    return i == 0 ? factor_a_.get() : factor_b_.get();
  }

 private:
  StarBody() = default;
  void finish_radii();  // computes rho_, outr_ for sampled kinds

  BodyKind kind_ = BodyKind::Ball;
  int dim_ = 1;
  VecC center_;
  double rho_ = 1.0, outr_ = 1.0;

  double radius_ = 1.0;                       // Ball
  VecR radii_;                                // Polydisk
  std::vector<std::array<double, 2>> profile_;  // RadialProfile (sorted)
  std::function<double(double)> profile_fn_;  // optional exact profile
  std::vector<VecC> hull_points_;             // ConvexHullEps
  double eps_ = 0.0;
  std::shared_ptr<StarBody> factor_a_, factor_b_;  // Product
  std::function<double(const VecC&)> custom_p_;    // CustomGauge

  // precomputed hull geometry (dim 1): convex polygon or degenerate segment
  std::vector<Cplx> poly_;
  bool hull_degenerate_ = false;
  Cplx seg_a_{0.0, 0.0}, seg_b_{0.0, 0.0};

  double hull_dist(const VecC& x) const;  // distance to co(points), absolute
  double gauge_by_bisection(const VecC& u,
                            const std::function<bool(const VecC&)>& member) const;
};

/// Empirical modulus bound for the gauge over the ball of radius hull_radius
/// around the body's center: max sampled increment per distance bin, upper
/// concave envelope with a 5% safety margin, clamped by lipschitz_bound().
ModulusBound modulus_bound(const StarBody& body, double hull_radius,
                           RngStream rng, int pair_samples = 20000);

}  // namespace holoext
