// Geodesic zipper construction of conformal maps onto horn domains.
//
// Pipeline: the Jordan curve through the prescribed nodes is unzipped into the
// upper half plane H by phi_1(z) = i sqrt((z - z1)/(z - z0)), then one
// elementary slit map per remaining node, then a closing map; the Cayley map
// ties H to the unit disk.  The forward disk-to-domain map inverts the chain.
// Every step is an exact conformal bijection, so the composition is conformal
// at any resolution; node positions are renormalized after each step to keep
// double-precision magnitudes stable even when boundary crowding is severe.
#include "holoext/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dd_eval.hpp"

namespace holoext {

namespace {

const double kInfD = std::numeric_limits<double>::infinity();
const Cplx kInfC(kInfD, 0.0);

bool is_inf(Cplx z) {
  return std::isinf(z.real()) || std::isinf(z.imag());
}

Cplx psqrt(Cplx z) { return std::sqrt(z); }

// forward elementary map applied to a tracked position: Mobius part, slit
// part with the fold rule on the reals, renormalization fixing infinity, then
// rescaling
Cplx push_step(Cplx x, const ZipStep& st) {
  Cplx q;
  if (st.mu_finite) {
    if (is_inf(x)) return kInfC;  // infinity is a fixed point of the step
    const Cplx den = 1.0 - x / st.d;
    if (den == 0.0) {
      // x at the Mobius pole: the slit map sends it to infinity, and the
      // renormalization below maps that to -1/vinf
      return st.lambda * Cplx(-1.0 / st.vinf, 0.0);
    }
    q = x / den;
  } else {
    q = x;
  }
  if (is_inf(q)) return kInfC;
  Cplx w;
  if (st.s == 0.0) {
    w = q;  // degenerate step
  } else if (q.imag() == 0.0) {
    // already-flattened boundary position: fold rule; the tip at 0 continues
    // on the negative prong because the domain lies left of the walk
    const double qr = q.real();
    if (qr == 0.0)
      w = Cplx(-st.s, 0.0);
    else
      w = Cplx(qr > 0 ? std::hypot(qr, st.s) : -std::hypot(qr, st.s), 0.0);
  } else if (std::abs(q) > 1e150) {
    const Cplx t = st.s / q;  // far field: q*q would overflow
    w = q * psqrt(1.0 + t * t);
    if (w.imag() < 0.0) w = -w;
  } else {
    // factored form of q^2 + s^2: near the slit tip q ~ +-i s the direct sum
    // cancels catastrophically while each factor stays fully accurate
    w = psqrt((q - Cplx(0.0, st.s)) * (q + Cplx(0.0, st.s)));
    if (w.imag() < 0.0) w = -w;
  }
  // a pure slit step fixes infinity on its own; the Mobius part moves it to
  // vinf, so post-compose with A(w) = 1/(vinf - w) - 1/vinf to pin it back
  if (!st.mu_finite) return st.lambda * w;
  Cplx y;
  if (std::abs(st.vinf - w) >= 0.1 * std::abs(st.vinf)) {
    y = w / (st.vinf * (st.vinf - w));
  } else {
    // near-cancellation: use vinf^2 - w^2 = d^3 (d - 2x) / (d - x)^2, exact
    // because w^2 = mu(x)^2 + s^2 and vinf^2 = d^2 + s^2; the association
    // below keeps intermediates below overflow even for huge |x|
    const Cplx dmx = st.d - x;
    y = w * (st.vinf + w) / (st.vinf * st.d * st.d * st.d) * dmx *
        (dmx / (st.d - 2.0 * x));
  }
  return st.lambda * y;
}

// relative proximity to a slit tip or Mobius pole below which a double-
// precision transit loses enough digits to matter; such evaluations are
// retried in double-double arithmetic
const double kHotTol2 = 1e-6;  // squared relative threshold (1e-3)^2

// inverse slit map: branch of sqrt(u^2 - s^2) mapping H into H, asymptotic to
// the identity at infinity

Cplx v_inverse(Cplx u, double s, bool* hot = nullptr) {
  if (s == 0.0 || is_inf(u)) return u;
  const double au = std::abs(u);
  if (au <= 1e-8 * s) return Cplx(0, 1) * psqrt(s * s - u * u);
  // factored form of u^2 - s^2: near the slit tip u ~ +-s the difference
  // cancels catastrophically while u - s and u + s stay fully accurate
  const Cplx f1 = u - s, f2 = u + s;
  if (hot != nullptr &&
      std::min(std::norm(f1), std::norm(f2)) < kHotTol2 * s * s)
    *hot = true;
  Cplx w = psqrt(f1 * f2);
  // align the root with u (identity at infinity, signed on the real banks)
  if (w.real() * u.real() + w.imag() * u.imag() < 0.0) w = -w;
  if (w.imag() < -1e-12 * std::abs(w)) w = -w;
  return w;
}

double clamp_mag(double x) { return std::clamp(x, 1e-200, 1e200); }

double wrap_angle(double a) {
  a = std::fmod(a, 2 * kPi);
  if (a < 0) a += 2 * kPi;
  return a;
}

}  // namespace

CuspProfile::CuspProfile(std::function<double(double)> theta, int samples)
    : theta_(std::move(theta)) {
  if (samples < 16)
    throw EngineError("invalid_input", "profile needs at least 16 samples");
  samples_.reserve(static_cast<std::size_t>(samples));
  double interior_min = kInfD;
  for (int i = 0; i < samples; ++i) {
    const double r = static_cast<double>(i) / (samples - 1);
    const double t = theta_(r);
    if (!std::isfinite(t) || t < -1e-12 || t > kPi / 4 + 1e-12)
      throw EngineError("invalid_profile",
                        "profile must take values in [0, pi/4]");
    if (i > 0 && i < samples - 1) interior_min = std::min(interior_min, t);
    samples_.push_back({r, t});
  }
  if (std::abs(theta_(0.0)) > 1e-12 || std::abs(theta_(1.0)) > 1e-12)
    throw EngineError("invalid_profile", "profile must vanish at 0 and 1");
  if (!(interior_min > 0))
    throw EngineError("invalid_profile",
                      "profile must be positive on the interior grid");
}

double CuspProfile::theta(double r) const {
  r = std::clamp(r, 0.0, 1.0);
  return std::max(0.0, theta_(r));
}

// core construction shared by the horn and calibration builders
ConformalMap build_zipper(std::vector<Cplx> curve, bool horn_mode) {
  const int M = static_cast<int>(curve.size());
  if (M < 8) throw EngineError("resolution", "too few curve nodes");
  ConformalMap map;
  map.horn_mode_ = horn_mode;
  map.curve_pts_ = curve;
  map.base0_ = curve[0];
  map.base1_ = curve[1];

  // positions of all nodes in the evolving half-plane picture
  std::vector<Cplx> pos(static_cast<std::size_t>(M));
  pos[0] = kInfC;
  pos[1] = Cplx(0.0, 0.0);
  for (int j = 2; j < M; ++j) {
    const Cplx ratio = (curve[static_cast<std::size_t>(j)] - map.base1_) /
                       (curve[static_cast<std::size_t>(j)] - map.base0_);
    pos[static_cast<std::size_t>(j)] = Cplx(0, 1) * psqrt(ratio);
  }
  map.lambda1_ = 1.0 / clamp_mag(std::abs(pos[2]));
  for (int j = 2; j < M; ++j) pos[static_cast<std::size_t>(j)] *= map.lambda1_;

  map.steps_.reserve(static_cast<std::size_t>(M - 2));
  for (int k = 2; k < M; ++k) {
    const Cplx a = pos[static_cast<std::size_t>(k)];
    ZipStep st;
    if (!is_inf(a) && a.imag() > std::abs(a) * 1e-14) {
      const double m2 = std::norm(a);
      st.s = m2 / a.imag();
      if (std::abs(a.real()) > std::abs(a) * 1e-14) {
        st.mu_finite = true;
        st.d = m2 / a.real();
        st.vinf = (st.d > 0 ? -1.0 : 1.0) * std::hypot(st.d, st.s);
      }
    }  // else: position collapsed onto the boundary; skip with identity step
    // choose the rescale so the next active position has unit magnitude
    const int nxt = (k + 1 < M) ? k + 1 : 0;
    st.lambda = 1.0;
    const Cplx wn = push_step(pos[static_cast<std::size_t>(nxt)], st);
    if (!is_inf(wn)) st.lambda = 1.0 / clamp_mag(std::abs(wn));
    for (int j = 0; j < M; ++j) {
      if (j == k) continue;
      pos[static_cast<std::size_t>(j)] =
          push_step(pos[static_cast<std::size_t>(j)], st);
    }
    pos[static_cast<std::size_t>(k)] =
        (st.s == 0.0) ? Cplx(a.real(), 0.0) : Cplx(0.0, 0.0);
    map.steps_.push_back(st);
  }

  // closing: every step fixed infinity, so base0 still sits there while the
  // welded banks accumulate on the negative axis and the final tip sits at 0;
  // the leftover edge is the geodesic from 0 out to infinity.  Which side of
  // that edge holds the domain depends on the walk orientation: the
  // calibration circle is walked counterclockwise (domain left of the edge,
  // sealed by C(x) = (-1/x)^2) while the horn curve is walked clockwise
  // (domain right, sealed by C(x) = x^2); either closing flattens the edge
  // with the domain landing in the upper half plane
  auto close_fwd = [horn_mode](Cplx x) -> Cplx {
    if (horn_mode) {
      if (is_inf(x)) return kInfC;
      return x * x;
    }
    if (is_inf(x)) return Cplx(0.0, 0.0);
    if (std::abs(x) < 1e-300) return kInfC;
    const Cplx m = -1.0 / x;
    return m * m;
  };
  std::vector<Cplx> closed(static_cast<std::size_t>(M));
  std::vector<double> mags;
  for (int j = 0; j < M; ++j) {
    closed[static_cast<std::size_t>(j)] = close_fwd(pos[static_cast<std::size_t>(j)]);
    const double m = std::abs(closed[static_cast<std::size_t>(j)]);
    if (std::isfinite(m) && m > 1e-200) mags.push_back(m);
  }
  if (mags.empty())
    throw EngineError("insufficient_shrink",
                      "insufficient shrink or resolution (collapsed closing)");
  std::nth_element(mags.begin(), mags.begin() + mags.size() / 2, mags.end());
  map.lambda_c_ = 1.0 / clamp_mag(mags[mags.size() / 2]);

  map.pre_angles_.resize(static_cast<std::size_t>(M));
  for (int j = 0; j < M; ++j) {
    const Cplx xc = closed[static_cast<std::size_t>(j)];
    Cplx zeta;
    if (is_inf(xc)) {
      zeta = Cplx(-1.0, 0.0);
    } else {
      const Cplx x = xc * map.lambda_c_;
      zeta = (Cplx(0, 1) - x) / (Cplx(0, 1) + x);
      const double az = std::abs(zeta);
      if (az > 0) zeta /= az;
    }
    map.pre_angles_[static_cast<std::size_t>(j)] =
        wrap_angle(std::atan2(zeta.imag(), zeta.real()));
  }
  map.z0_pre_ = std::polar(1.0, map.pre_angles_[0]);
  map.z0_val_ = map.curve_pts_[0];
  map.z1_pre_ = map.z0_pre_;
  map.z1_val_ = map.curve_pts_[0];
  return map;
}

Cplx ConformalMap::eval_interior(Cplx zeta) const {
  bool hot = false;
  const Cplx den0 = 1.0 + zeta;
  Cplx u;
  if (std::abs(den0) < 1e-300) {
    // zeta = -1 is the Cayley preimage of infinity: the final tip under the
    // counterclockwise closing, the anchor node base0 under the clockwise one
    u = horn_mode_ ? kInfC : Cplx(0.0, 0.0);
  } else {
    const Cplx w = Cplx(0, 1) * (1.0 - zeta) / den0;  // Cayley to H
    const Cplx x = w / lambda_c_;
    if (horn_mode_) {
      u = psqrt(x);  // invert the closing weld C = x^2; u in the first quadrant
    } else {
      const Cplx q = psqrt(x);
      // invert the closing weld C = (-1/x)^2: the principal branch picks the
      // sheet outside the closing cell, with u in the second quadrant
      u = (std::abs(q) < 1e-300) ? kInfC : -1.0 / q;
    }
  }
  for (std::size_t k = steps_.size(); k-- > 0;) {
    const ZipStep& st = steps_[k];
    if (!is_inf(u)) u /= st.lambda;
    if (st.mu_finite) {
      // invert the renormalization A: w = y vinf^2 / (1 + y vinf)
      if (is_inf(u)) {
        u = Cplx(st.vinf, 0.0);
      } else if (std::abs(u) > 1e150) {
        u = (st.vinf * st.vinf) / (1.0 / u + st.vinf);
      } else {
        // fused real part keeps the denominator accurate when u vinf ~ -1
        const Cplx den(std::fma(u.real(), st.vinf, 1.0), u.imag() * st.vinf);
        if (std::norm(den) < kHotTol2) hot = true;
        u = (std::abs(den) < 1e-300) ? kInfC : u * (st.vinf * st.vinf) / den;
      }
    }
    u = v_inverse(u, st.s, &hot);
    if (st.mu_finite) {
      if (is_inf(u)) {
        u = Cplx(st.d, 0.0);
      } else {
        // d + u is exact near the pole u ~ -d, unlike 1 + u/d
        const Cplx den = st.d + u;
        if (std::norm(den) < kHotTol2 * st.d * st.d) hot = true;
        u = (std::abs(den) < 1e-300 * std::abs(st.d)) ? kInfC
                                                      : u * (st.d / den);
      }
    }
  }
  Cplx res;
  if (is_inf(u)) {
    res = base0_;
  } else {
    const Cplx t = u / lambda1_;
    const Cplx t2 = t * t;
    // factored 1 + t^2 = (1 + it)(1 - it) stays accurate near t ~ +-i
    const Cplx den =
        (1.0 + Cplx(0, 1) * t) * (1.0 - Cplx(0, 1) * t);
    if (std::norm(den) < kHotTol2) hot = true;
    // audited: interior points never land on the phi_1 branch point
    res = (std::abs(den) < 1e-300) ? base0_ : (base1_ + t2 * base0_) / den;
  }
  if (hot) return detail::eval_deep(*this, zeta);
  if (post_b_ == Cplx(0.0, 0.0) && post_rot_ == Cplx(1.0, 0.0)) return res;
  return post_rot_ * (res - post_b_) / (1.0 - std::conj(post_b_) * res);
}

Cplx ConformalMap::operator()(Cplx zeta) const {
  const double az = std::abs(zeta);
  if (az > 1.0 + 1e-12)
    throw EngineError("outside_disk", "outside closed disk");
  if (az < 1.0 - 1e-8) return eval_interior(zeta);
  // the designated endpoint preimages take their prescribed values; matched
  // exactly because boundary crowding can pack many node preimages into any
  // positive-width window around them
  if (zeta == z0_pre_) return z0_val_;
  if (zeta == z1_pre_) return z1_val_;
  const double ang = wrap_angle(std::atan2(zeta.imag(), zeta.real()));
  // snap to the prescribed value of the nearest node preimage within
  // tolerance; under severe crowding the radial limit cannot resolve these
  double best = 1e300;
  std::size_t best_j = 0;
  for (std::size_t j = 0; j < pre_angles_.size(); ++j) {
    double d = std::abs(ang - pre_angles_[j]);
    d = std::min(d, 2 * kPi - d);
    if (d < best) {
      best = d;
      best_j = j;
    }
  }
  if (best <= 1e-9) return curve_pts_[best_j];
  const Cplx dir = std::polar(1.0, ang);
  const Cplx f1 = eval_interior((1.0 - 1e-8) * dir);
  const Cplx f2 = eval_interior((1.0 - 2e-8) * dir);
  return 2.0 * f1 - f2;  // Richardson step toward the boundary
}

namespace {

double dist_to_segment(Cplx p, Cplx a, Cplx b) {
  const Cplx ab = b - a;
  const double n2 = std::norm(ab);
  if (n2 < 1e-300) return std::abs(p - a);
  double t = ((p - a) * std::conj(ab)).real() / n2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

double dist_to_polyline(Cplx p, const std::vector<Cplx>& pts) {
  double best = 1e300;
  for (std::size_t j = 0; j < pts.size(); ++j)
    best = std::min(best,
                    dist_to_segment(p, pts[j], pts[(j + 1) % pts.size()]));
  return best;
}

// max deviation of midpoint boundary samples from the discretized curve
double midpoint_accuracy(const ConformalMap& map) {
  const int M = map.node_count();
  double worst = 0.0;
  for (int j = 0; j < M; ++j) {
    const int k = (j + 1) % M;
    const Cplx za = std::polar(1.0, map.node_angle(j));
    const Cplx zb = std::polar(1.0, map.node_angle(k));
    Cplx mid = za + zb;
    const double n = std::abs(mid);
    if (n < 1e-9) continue;  // antipodal preimages: midpoint undefined
    mid /= n;
    worst = std::max(worst, dist_to_polyline(map(mid), map.curve_points()));
  }
  return worst;
}

}  // namespace

ContainmentReport verify_containment(const ConformalMap& G,
                                     const CuspProfile& profile, int grid) {
  if (grid < 1) throw EngineError("invalid_input", "grid must be positive");
  ContainmentReport rep;
  rep.min_upper_margin = kInfD;
  rep.min_lower_margin = kInfD;
  rep.max_abs = 0.0;
  int accounted = 0;
  auto account = [&](Cplx w) {
    rep.max_abs = std::max(rep.max_abs, std::abs(w));
    if (!G.horn_mode()) return;
    const double r = std::abs(w);
    if (r <= 1e-9 || std::abs(w - 1.0) <= 1e-9) return;  // cusp tips
    const double arg = std::atan2(w.imag(), w.real());
    rep.min_lower_margin = std::min(rep.min_lower_margin, arg);
    rep.min_upper_margin =
        std::min(rep.min_upper_margin, profile.theta(std::min(r, 1.0)) - arg);
    ++accounted;
  };
  for (int i = 0; i < grid; ++i) {
    const double rho = (i + 0.5) / grid;
    for (int k = 0; k < grid; ++k)
      account(G.eval_interior(std::polar(rho, 2 * kPi * k / grid)));
  }
  for (int k = 0; k < grid; ++k)
    account(G(std::polar(1.0, 2 * kPi * (k + 0.5) / grid)));
  if (!G.horn_mode()) {
    rep.min_lower_margin = 0.0;
    rep.min_upper_margin = 0.0;
    rep.ok = rep.max_abs <= 1.0 + 1e-9;
    return rep;
  }
  // a report where every sample was skipped as a cusp tip certifies nothing
  if (accounted == 0) {
    rep.min_lower_margin = -kInfD;
    rep.min_upper_margin = -kInfD;
    rep.ok = false;
    return rep;
  }
  rep.ok = rep.min_lower_margin >= -1e-9 && rep.min_upper_margin >= -1e-9 &&
           rep.max_abs <= 1.0 + 1e-9;
  return rep;
}

ConformalMap build_cusp_map(const CuspProfile& profile, int N, double shrink) {
  if (N < 64) throw EngineError("resolution", "N too small for cusp resolution");
  if (!(shrink > 0.0) || !(shrink < 1.0))
    throw EngineError("invalid_input", "shrink must lie in (0, 1)");
  // The discretized curve runs through a safety corridor strictly inside the
  // open horn: upper edge on the shrunk profile, lower edge lifted to a fifth
  // of it.  Between nodes the as-built boundary is a geodesic of the
  // partially slit plane and wiggles to both sides of the chord (pushed away
  // from the opposite wall by roughly cell^2 / corridor width), so a target
  // curve lying on the horn boundary itself could never certify containment.
  // Both corridor edges still terminate at the cusp tips 0 and 1, which are
  // curve nodes carrying exact designated values.
  const auto th = [&](double r) { return (1.0 - shrink) * profile.theta(r); };
  const auto upper = [&](double r) { return std::polar(r, th(r)); };
  const auto lower = [&](double r) { return std::polar(r, 0.2 * th(r)); };

  // Cell-size rule: the relative part keeps the geodesic wiggle a fixed
  // fraction of the local clearance (both scale with theta); the absolute
  // part, scaled by the density factor t, bounds the absolute midpoint
  // deviation; the 0.35 cap turns the rule into geometric ladders into the
  // cusps.
  const auto cell_of = [&](double r, double t) {
    const double tf = profile.theta(r);
    double c = std::min(0.3 * tf, t * std::sqrt(8.1e-4 * tf));
    c = std::min(c, 0.35 * std::min(r, 1.0 - r));
    return std::max(c, 1e-9);
  };
  // Ladder floor: deep enough that no feasible audit sample lands in the
  // unresolved tip neighbourhoods (the harmonic measure of {|w| < r} seen
  // from the disk decays like a high power of r), shallow enough that slit
  // positions stay far above double-precision resolution; relaxed for small
  // N so the fixed-ratio cusp ladders fit the node budget.
  const double sigma =
      std::max(std::pow(2.0, -14.0), 0.5 * std::exp(-(N - 12.0) / 34.0));

  // The unzipping anchor z0 sits on the lower corridor edge, away from both
  // cusps.  The closing weld treats the one unwelded cell as the frame
  // geodesic; its error grows with the corner angle the curve makes at the
  // gap ends, so the two flank cells are shrunk to dampen the local turn.
  const double anchor_r = 0.75;
  int zero_idx = -1, one_idx = -1;
  const auto assemble = [&](double t, std::vector<Cplx>* out) -> int {
    int count = 0;
    const auto add = [&](Cplx p) {
      if (out) {
        if (!out->empty() && std::abs(p - out->back()) < 1e-12) return;
        out->push_back(p);
      }
      ++count;
    };
    const double gap = cell_of(anchor_r, t);
    add(lower(anchor_r));               // closing anchor z0
    add(lower(anchor_r - gap / 16.0));  // shrunk flank cell at the anchor
    double r = anchor_r - gap / 16.0;
    while (r - cell_of(r, t) > sigma) {
      r -= cell_of(r, t);
      add(lower(r));
    }
    add(lower(sigma));
    if (out) zero_idx = count;
    add(Cplx(0.0, 0.0));  // cusp tip node
    r = sigma;
    while (r < 1.0 - sigma) {
      add(upper(r));
      r += cell_of(r, t);
    }
    add(upper(1.0 - sigma));
    if (out) one_idx = count;
    add(Cplx(1.0, 0.0));  // corner node at the 1 cusp
    r = 1.0 - sigma;
    const double r_end = anchor_r + gap;
    while (r - cell_of(r, t) > r_end + gap / 16.0) {
      add(lower(r));
      r -= cell_of(r, t);
    }
    add(lower(r));
    add(lower(r_end + gap / 16.0));  // shrunk flank cell at the gap end
    add(lower(r_end));  // trailing node; the unwelded gap cell runs to z0
    return count;
  };

  // calibrate the density factor to the node budget (count decreases in t)
  double t_lo = 0.02, t_hi = 50.0;
  for (int it = 0; it < 48; ++it) {
    const double tm = std::sqrt(t_lo * t_hi);
    (assemble(tm, nullptr) > N ? t_lo : t_hi) = tm;
  }
  std::vector<Cplx> curve;
  curve.reserve(static_cast<std::size_t>(N) + 8);
  assemble(t_hi, &curve);

  ConformalMap map = build_zipper(std::move(curve), true);
  // designated endpoints: both cusp tips are curve nodes, so the preimages of
  // the nodes nearest 0 and 1 carry the exact cusp values
  map.z0_pre_ = std::polar(1.0, map.node_angle(zero_idx));
  map.z0_val_ = Cplx(0.0, 0.0);
  map.z1_pre_ = std::polar(1.0, map.node_angle(one_idx));
  map.z1_val_ = Cplx(1.0, 0.0);
  map.accuracy_ = midpoint_accuracy(map);
  const ContainmentReport rep = verify_containment(map, profile, 48);
  if (!rep.ok)
    throw EngineError("insufficient_shrink", "insufficient shrink or resolution");
  return map;
}

ConformalMap build_circle_calibration(int N) {
  if (N < 64) throw EngineError("resolution", "N too small for cusp resolution");
  // The three cells around the anchor are shrunk 128-fold: the closing weld
  // is exact for a straight gap, and its residual bulge scales with the turn
  // the polygon makes at the anchor, i.e. with the adjacent cell sizes.
  const double cell = 2 * kPi / N;
  const double h = cell / 128.0;
  std::vector<Cplx> curve;
  curve.reserve(static_cast<std::size_t>(N));
  curve.push_back(Cplx(1.0, 0.0));
  curve.push_back(std::polar(1.0, h));
  const int n_mid = N - 3;
  for (int j = 1; j <= n_mid; ++j)
    curve.push_back(std::polar(1.0, h + (2 * kPi - 2 * h) * j / (n_mid + 1.0)));
  curve.push_back(std::polar(1.0, 2 * kPi - h));
  ConformalMap map = build_zipper(std::move(curve), false);
  // Riemann normalization: the raw chain sends the disk center next to the
  // closing cell; post-compose with the disk automorphism taking the center
  // back to the center with positive derivative, so the calibration map is
  // comparable to a rotation
  const Cplx b = map.eval_interior(Cplx(0.0, 0.0));
  map.post_b_ = b;
  const double step = 1e-5;
  const Cplx der = (map.eval_interior(Cplx(step, 0.0)) -
                    map.eval_interior(Cplx(-step, 0.0))) /
                   (2.0 * step);
  map.post_rot_ = std::abs(der) > 0 ? std::conj(der) / std::abs(der)
                                    : Cplx(1.0, 0.0);
  // contract so the closed image stays inside the closed disk: the closing
  // arc may bow outward by a sliver, and the certificate wants |G| <= 1
  double max_abs = 0.0;
  for (int k = 0; k < 4096; ++k)
    max_abs = std::max(max_abs,
                       std::abs(map(std::polar(1.0, 2 * kPi * (k + 0.5) / 4096))));
  if (max_abs > 1.0) map.post_rot_ /= max_abs * (1.0 + 1e-12);
  // keep the stored boundary correspondence consistent with the normalized map
  for (Cplx& p : map.curve_pts_)
    p = map.post_rot_ * (p - b) / (1.0 - std::conj(b) * p);
  map.z0_val_ = map.curve_pts_.front();
  map.z1_val_ = map.curve_pts_.front();
  map.accuracy_ = midpoint_accuracy(map);
  return map;
}

}  // namespace holoext
