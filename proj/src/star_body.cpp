// Star-body gauges: closed forms for ball/polydisk/radial profiles, ray
// bisection against convex-membership oracles for hull bodies, products,
// and the empirical gauge modulus bound.
#include "holoext/star_body.hpp"

#include <algorithm>
#include <cmath>

namespace holoext {
namespace {

double norm2(const VecC& v) { return std::sqrt(v.squaredNorm()); }

double angle_of(const Cplx& z) {
  double a = std::arg(z);
  if (a < 0) a += 2 * kPi;
  return a;
}

double cross(const Cplx& o, const Cplx& a, const Cplx& b) {
  return (a.real() - o.real()) * (b.imag() - o.imag()) -
         (a.imag() - o.imag()) * (b.real() - o.real());
}

// Andrew monotone chain; returns counterclockwise polygon without repeats.
std::vector<Cplx> convex_hull_2d(std::vector<Cplx> pts) {
  std::sort(pts.begin(), pts.end(), [](const Cplx& p, const Cplx& q) {
    return p.real() < q.real() ||
           (p.real() == q.real() && p.imag() < q.imag());
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const int n = static_cast<int>(pts.size());
  if (n <= 2) return pts;
  std::vector<Cplx> h(2 * n);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (int i = n - 2, lower = k + 1; i >= 0; --i) {
    while (k >= lower && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

double dist_point_segment(const Cplx& p, const Cplx& a, const Cplx& b) {
  const Cplx ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  double t = ((p.real() - a.real()) * ab.real() +
              (p.imag() - a.imag()) * ab.imag()) /
             len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

bool point_in_convex_polygon(const Cplx& p, const std::vector<Cplx>& poly) {
  const int n = static_cast<int>(poly.size());
  for (int i = 0; i < n; ++i) {
    if (cross(poly[i], poly[(i + 1) % n], p) < 0) return false;
  }
  return true;
}

// Min-norm-point style solver: distance from x to co(points) in C^n viewed
// as R^{2n}. Frank-Wolfe with away steps on the simplex; point counts are
// small so this converges to ~1e-13 quickly.
double dist_to_hull_general(const VecC& x, const std::vector<VecC>& pts) {
  const int k = static_cast<int>(pts.size());
  Eigen::VectorXd lambda = Eigen::VectorXd::Constant(k, 1.0 / k);
  VecC y = VecC::Zero(x.size());
  for (int i = 0; i < k; ++i) y += lambda[i] * pts[i];
  double scale = 1.0;
  for (const auto& p : pts) scale = std::max(scale, norm2(p));
  scale = std::max(scale, norm2(x));
  for (int it = 0; it < 20000; ++it) {
    const VecC r = y - x;  // gradient of .5*||y - x||^2 w.r.t. y
    int best = 0, worst = 0;
    double bd = 1e300, wd = -1e300;
    for (int i = 0; i < k; ++i) {
      const double d = (r.conjugate().cwiseProduct(pts[i])).sum().real();
      if (d < bd) bd = d, best = i;
      if (lambda[i] > 0 && d > wd) wd = d, worst = i;
    }
    const double gap = wd - bd;
    if (gap <= 1e-14 * scale * scale) break;
    // prefer the step (toward `best` or away from `worst`) with larger payoff
    const VecC d_to = pts[best] - y;
    const VecC d_away = y - pts[worst];
    const double g_to = -(r.conjugate().cwiseProduct(d_to)).sum().real();
    const double g_away = -(r.conjugate().cwiseProduct(d_away)).sum().real();
    if (g_to >= g_away) {
      const double den = d_to.squaredNorm();
      if (den == 0) break;
      const double step = std::clamp(g_to / den, 0.0, 1.0);
      lambda *= (1.0 - step);
      lambda[best] += step;
      y += step * d_to;
    } else {
      const double den = d_away.squaredNorm();
      if (den == 0) break;
      const double cap = lambda[worst] / std::max(1e-300, 1.0 - lambda[worst]);
      const double step = std::clamp(g_away / den, 0.0, cap);
      lambda = (1.0 + step) * lambda;
      lambda[worst] = std::max(0.0, lambda[worst] - step);
      y = (1.0 + step) * y - step * pts[worst];
    }
  }
  return norm2(y - x);
}

}  // namespace

double ModulusBound::operator()(double t) const {
  if (t <= 0) return 0.0;
  double env;
  if (knot_t.size() < 2) {
    env = lipschitz * t;
  } else if (t >= knot_t.back()) {
    const std::size_t m = knot_t.size();
    const double slope = (knot_v[m - 1] - knot_v[m - 2]) /
                         std::max(1e-300, knot_t[m - 1] - knot_t[m - 2]);
    env = knot_v.back() + slope * (t - knot_t.back());
  } else {
    const auto it = std::upper_bound(knot_t.begin(), knot_t.end(), t);
    const std::size_t j = static_cast<std::size_t>(it - knot_t.begin());
    const double w = (t - knot_t[j - 1]) / (knot_t[j] - knot_t[j - 1]);
    env = knot_v[j - 1] + w * (knot_v[j] - knot_v[j - 1]);
  }
  return std::max(0.0, std::min(lipschitz * t, env));
}

StarBody StarBody::ball(VecC center, double radius) {
  if (radius <= 0) throw EngineError("invalid_body", "ball radius must be > 0");
  StarBody b;
  b.kind_ = BodyKind::Ball;
  b.dim_ = static_cast<int>(center.size());
  b.center_ = std::move(center);
  b.radius_ = radius;
  b.rho_ = b.outr_ = radius;
  return b;
}

StarBody StarBody::polydisk(VecC center, VecR radii) {
  if (center.size() != radii.size())
    throw EngineError("invalid_body", "polydisk center/radii size mismatch");
  if ((radii.array() <= 0).any())
    throw EngineError("invalid_body", "polydisk radii must be > 0");
  StarBody b;
  b.kind_ = BodyKind::Polydisk;
  b.dim_ = static_cast<int>(center.size());
  b.center_ = std::move(center);
  b.radii_ = std::move(radii);
  b.rho_ = b.radii_.minCoeff();
  b.outr_ = std::sqrt(b.radii_.squaredNorm());
  return b;
}

StarBody StarBody::radial_profile(std::function<double(double)> radius,
                                  int table_size) {
  StarBody b;
  b.kind_ = BodyKind::RadialProfile;
  b.dim_ = 1;
  b.center_ = VecC::Zero(1);
  b.profile_fn_ = radius;
  b.profile_.reserve(table_size);
  double lo = 1e300, hi = 0.0;
  for (int i = 0; i < table_size; ++i) {
    const double a = 2 * kPi * i / table_size;
    const double r = radius(a);
    if (!(r > 0) || !std::isfinite(r))
      throw EngineError("invalid_body", "radial profile must be positive");
    b.profile_.push_back({a, r});
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  b.rho_ = lo;
  b.outr_ = hi;
  return b;
}

StarBody StarBody::radial_profile_samples(
    const std::vector<std::array<double, 2>>& angle_radius) {
  if (angle_radius.size() < 3)
    throw EngineError("invalid_body", "radial profile needs >= 3 samples");
  StarBody b;
  b.kind_ = BodyKind::RadialProfile;
  b.dim_ = 1;
  b.center_ = VecC::Zero(1);
  b.profile_ = angle_radius;
  for (auto& s : b.profile_) {
    s[0] = std::fmod(s[0], 2 * kPi);
    if (s[0] < 0) s[0] += 2 * kPi;
    if (!(s[1] > 0))
      throw EngineError("invalid_body", "radial profile must be positive");
  }
  std::sort(b.profile_.begin(), b.profile_.end());
  double lo = 1e300, hi = 0.0;
  for (const auto& s : b.profile_) {
    lo = std::min(lo, s[1]);
    hi = std::max(hi, s[1]);
  }
  b.rho_ = lo;
  b.outr_ = hi;
  return b;
}

StarBody StarBody::hull_eps(std::vector<VecC> points, double eps) {
  if (points.empty())
    throw EngineError("invalid_body", "hull body needs at least one point");
  if (!(eps > 0))
    throw EngineError("invalid_body", "hull body requires eps > 0");
  StarBody b;
  b.kind_ = BodyKind::ConvexHullEps;
  b.dim_ = static_cast<int>(points[0].size());
  for (const auto& p : points)
    if (static_cast<int>(p.size()) != b.dim_)
      throw EngineError("invalid_body", "hull points of mixed dimension");
  b.hull_points_ = std::move(points);
  b.eps_ = eps;
  VecC c = VecC::Zero(b.dim_);
  for (const auto& p : b.hull_points_) c += p;
  c /= static_cast<double>(b.hull_points_.size());
  b.center_ = c;

  double inner = 0.0;  // distance from centroid to the hull boundary
  if (b.dim_ == 1) {
    std::vector<Cplx> flat;
    flat.reserve(b.hull_points_.size());
    for (const auto& p : b.hull_points_) flat.push_back(p[0]);
    auto poly = convex_hull_2d(flat);
    if (poly.size() >= 3) {
      b.poly_ = poly;
      inner = 1e300;
      const int n = static_cast<int>(poly.size());
      for (int i = 0; i < n; ++i)
        inner = std::min(
            inner, dist_point_segment(c[0], poly[i], poly[(i + 1) % n]));
    } else {
      b.hull_degenerate_ = true;
      Cplx lo = flat[0], hi = flat[0];
      for (const Cplx& z : flat) {
        if (std::abs(z - c[0]) > std::abs(lo - c[0])) lo = z;
      }
      for (const Cplx& z : flat) {
        if (std::abs(z - lo) > std::abs(hi - lo)) hi = z;
      }
      b.seg_a_ = lo;
      b.seg_b_ = hi;
      inner = 0.0;
    }
  } else {
    // sampled distance to supporting hyperplanes, with a safety factor
    RngStream rng(12345, 7);
    double d = 1e300;
    for (int s = 0; s < 4096; ++s) {
      VecC u(b.dim_);
      double nn = 0;
      for (int j = 0; j < b.dim_; ++j) {
        const double re = rng.uniform(-1, 1), im = rng.uniform(-1, 1);
        u[j] = Cplx(re, im);
        nn += re * re + im * im;
      }
      if (nn < 1e-12) continue;
      u /= std::sqrt(nn);
      double h = -1e300;
      for (const auto& p : b.hull_points_)
        h = std::max(h, (u.conjugate().cwiseProduct(p - c)).sum().real());
      d = std::min(d, h);
    }
    inner = std::max(0.0, 0.95 * d);
  }
  b.rho_ = eps + inner;
  double r = 0;
  for (const auto& p : b.hull_points_) r = std::max(r, norm2(p - c));
  b.outr_ = r + eps;
  return b;
}

StarBody StarBody::product(const StarBody& a, const StarBody& b) {
  StarBody p;
  p.kind_ = BodyKind::Product;
  p.dim_ = a.dim_ + b.dim_;
  p.center_ = VecC(p.dim_);
  p.center_ << a.center_, b.center_;
  p.factor_a_ = std::make_shared<StarBody>(a);
  p.factor_b_ = std::make_shared<StarBody>(b);
  p.rho_ = std::min(a.rho_, b.rho_);
  p.outr_ = std::sqrt(a.outr_ * a.outr_ + b.outr_ * b.outr_);
  return p;
}

StarBody StarBody::from_gauge(int dim, std::function<double(const VecC&)> p) {
  StarBody b;
  b.kind_ = BodyKind::CustomGauge;
  b.dim_ = dim;
  b.center_ = VecC::Zero(dim);
  b.custom_p_ = std::move(p);
  // spot-check positive homogeneity and derive radial bounds
  RngStream rng(99, 3);
  double lo = 1e300, hi = 0.0;
  for (int s = 0; s < 256; ++s) {
    VecC u(dim);
    double nn = 0;
    for (int j = 0; j < dim; ++j) {
      const double re = rng.uniform(-1, 1), im = rng.uniform(-1, 1);
      u[j] = Cplx(re, im);
      nn += re * re + im * im;
    }
    if (nn < 1e-12) continue;
    u /= std::sqrt(nn);
    const double p1 = b.custom_p_(u), p2 = b.custom_p_(2.0 * u);
    if (!(p1 > 0) || !std::isfinite(p1))
      throw EngineError("invalid_gauge", "gauge must be positive on rays");
    if (std::abs(p2 - 2.0 * p1) > 1e-6 * (1.0 + p1))
      throw EngineError("invalid_gauge", "gauge fails positive homogeneity");
    lo = std::min(lo, 1.0 / p1);
    hi = std::max(hi, 1.0 / p1);
  }
  b.rho_ = lo;
  b.outr_ = hi;
  return b;
}

double StarBody::hull_dist(const VecC& x) const {
  if (dim_ == 1) {
    const Cplx z = x[0];
    if (hull_degenerate_) return dist_point_segment(z, seg_a_, seg_b_);
    if (!poly_.empty()) {
      if (point_in_convex_polygon(z, poly_)) return 0.0;
      double d = 1e300;
      const int n = static_cast<int>(poly_.size());
      for (int i = 0; i < n; ++i)
        d = std::min(d, dist_point_segment(z, poly_[i], poly_[(i + 1) % n]));
      return d;
    }
    return std::abs(z - hull_points_[0][0]);
  }
  return dist_to_hull_general(x, hull_points_);
}

double StarBody::gauge_by_bisection(
    const VecC& u, const std::function<bool(const VecC&)>& member) const {
  const double un = norm2(u);
  if (un == 0.0) return 0.0;
  double t_lo = 0.0;
  double t_hi = std::max(1e-6, 2.0 * outr_ / un);
  int guard = 0;
  while (member(center_ + t_hi * u)) {
    t_hi *= 2.0;
    if (++guard > 200)
      throw EngineError("invalid_body", "body appears unbounded on a ray");
  }
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (t_lo + t_hi);
    if (member(center_ + mid * u))
      t_lo = mid;
    else
      t_hi = mid;
  }
  return 2.0 / (t_lo + t_hi);
}

double StarBody::gauge(const VecC& v) const {
  if (static_cast<int>(v.size()) != dim_)
    throw EngineError("invalid_input", "gauge: dimension mismatch");
  for (int j = 0; j < dim_; ++j)
    if (!std::isfinite(v[j].real()) || !std::isfinite(v[j].imag()))
      throw EngineError("invalid_input", "gauge: non-finite input");
  const VecC u = v - center_;
  switch (kind_) {
    case BodyKind::Ball:
      return norm2(u) / radius_;
    case BodyKind::Polydisk: {
      double m = 0;
      for (int j = 0; j < dim_; ++j) m = std::max(m, std::abs(u[j]) / radii_[j]);
      return m;
    }
    case BodyKind::RadialProfile: {
      const double r = std::abs(u[0]);
      if (r == 0.0) return 0.0;
      const double a = angle_of(u[0]);
      double rad;
      if (profile_fn_) {
        rad = profile_fn_(a);
      } else {
        // linear interpolation in angle with wraparound
        const auto it = std::lower_bound(
            profile_.begin(), profile_.end(), std::array<double, 2>{a, -1.0});
        std::size_t j = static_cast<std::size_t>(it - profile_.begin());
        const std::size_t n = profile_.size();
        const std::size_t j1 = j % n, j0 = (j + n - 1) % n;
        double a0 = profile_[j0][0], a1 = profile_[j1][0];
        double span = a1 - a0, off = a - a0;
        if (span <= 0) span += 2 * kPi;
        if (off < 0) off += 2 * kPi;
        const double w = span > 0 ? off / span : 0.0;
        rad = profile_[j0][1] + w * (profile_[j1][1] - profile_[j0][1]);
      }
      return r / rad;
    }
    case BodyKind::ConvexHullEps:
      return gauge_by_bisection(
          u, [this](const VecC& x) { return hull_dist(x) <= eps_; });
    case BodyKind::Product: {
      const int da = factor_a_->dim_;
      return std::max(factor_a_->gauge(v.head(da)),
                      factor_b_->gauge(v.tail(dim_ - da)));
    }
    case BodyKind::CustomGauge:
      return gauge_by_bisection(
          u, [this](const VecC& x) { return custom_p_(x) < 1.0; });
  }
  return 0.0;
}

StarBody StarBody::scaled(double r) const {
  if (!(r > 0)) throw EngineError("invalid_input", "scale must be > 0");
  StarBody b = *this;
  b.rho_ *= r;
  b.outr_ *= r;
  switch (kind_) {
    case BodyKind::Ball:
      b.radius_ *= r;
      break;
    case BodyKind::Polydisk:
      b.radii_ *= r;
      break;
    case BodyKind::RadialProfile:
      for (auto& s : b.profile_) s[1] *= r;
      if (profile_fn_) {
        auto fn = profile_fn_;
        b.profile_fn_ = [fn, r](double a) { return r * fn(a); };
      }
      break;
    case BodyKind::ConvexHullEps: {
      b.eps_ *= r;
      for (auto& p : b.hull_points_) p = center_ + r * (p - center_);
      for (auto& z : b.poly_) z = center_[0] + r * (z - center_[0]);
      b.seg_a_ = center_[0] + r * (seg_a_ - center_[0]);
      b.seg_b_ = center_[0] + r * (seg_b_ - center_[0]);
      break;
    }
    case BodyKind::Product:
      b.factor_a_ = std::make_shared<StarBody>(factor_a_->scaled(r));
      b.factor_b_ = std::make_shared<StarBody>(factor_b_->scaled(r));
      break;
    case BodyKind::CustomGauge: {
      auto p = custom_p_;
      b.custom_p_ = [p, r](const VecC& v) { return p(v) / r; };
      break;
    }
  }
  return b;
}

ModulusBound modulus_bound(const StarBody& body, double hull_radius,
                           RngStream rng, int pair_samples) {
  if (!(body.kernel_inradius() > 0))
    throw EngineError("gauge_modulus_unavailable",
                      "gauge modulus unavailable: kernel inradius is 0");
  ModulusBound m;
  m.domain_max = 2.0 * hull_radius;
  const int nbins = 64;
  std::vector<double> bin_max(nbins, 0.0);
  const int n = body.dim();
  auto rand_dir = [&](void) {
    VecC u(n);
    double nn = 0;
    do {
      nn = 0;
      for (int j = 0; j < n; ++j) {
        const double re = rng.uniform(-1, 1), im = rng.uniform(-1, 1);
        u[j] = Cplx(re, im);
        nn += re * re + im * im;
      }
    } while (nn < 1e-12);
    return VecC(u / std::sqrt(nn));
  };
  double max_slope = 0.0;
  for (int s = 0; s < pair_samples; ++s) {
    const VecC v = body.center() + (hull_radius * rng.uniform01()) * rand_dir();
    const double t = m.domain_max * rng.uniform01();
    const VecC w = v + t * rand_dir();
    const double inc = std::abs(body.gauge(v) - body.gauge(w));
    if (t > 1e-9) max_slope = std::max(max_slope, inc / t);
    int b = static_cast<int>(std::ceil(t / m.domain_max * nbins));
    b = std::clamp(b, 1, nbins);
    bin_max[b - 1] = std::max(bin_max[b - 1], inc);
  }
  // close-pair pass to estimate the local steepness for the Lipschitz clamp
  for (int s = 0; s < pair_samples / 4; ++s) {
    const VecC v = body.center() + (hull_radius * rng.uniform01()) * rand_dir();
    const double t = hull_radius * 1e-4 * (0.5 + rng.uniform01());
    const VecC w = v + t * rand_dir();
    max_slope = std::max(max_slope, std::abs(body.gauge(v) - body.gauge(w)) / t);
  }
  // convention bound R/rho^2, tightened by the sampled slope with 10% safety
  m.lipschitz = std::min(body.lipschitz_bound(), 1.1 * max_slope + 1e-9);
  for (int b = 1; b < nbins; ++b)
    bin_max[b] = std::max(bin_max[b], bin_max[b - 1]);
  // points at bin upper edges with 5% safety, then upper concave envelope
  std::vector<double> pt(nbins + 1), pv(nbins + 1);
  pt[0] = 0.0;
  pv[0] = 0.0;
  for (int b = 0; b < nbins; ++b) {
    pt[b + 1] = m.domain_max * (b + 1) / nbins;
    pv[b + 1] = bin_max[b] * 1.05 + 1e-12;
  }
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < pt.size(); ++i) {
    while (stack.size() >= 2) {
      const std::size_t a = stack[stack.size() - 2], b = stack.back();
      const double s1 = (pv[b] - pv[a]) / (pt[b] - pt[a]);
      const double s2 = (pv[i] - pv[b]) / (pt[i] - pt[b]);
      if (s1 <= s2)
        stack.pop_back();  // middle point below the chord: not on upper hull
      else
        break;
    }
    stack.push_back(i);
  }
  for (const std::size_t i : stack) {
    m.knot_t.push_back(pt[i]);
    m.knot_v.push_back(pv[i]);
  }
  return m;
}

}  // namespace holoext
