// Tolerance schedule construction.
//
// The damping recursion needs, for each stage k, the minimum over tuples
// (r_1..r_{k-1}) in [0,1]^{k-1} of
//   Psi(x/2^k + sum_i r_i/2^i) - sum_i psi_i(r_i).
// Since Psi depends on the tuple only through the weighted sum, the tensor
// minimization collapses to a one-dimensional dynamic program over the
// relaxed partial-sum state
//   m_j(t) := min{ -sum_{i<=j} psi_i(r_i) : sum_{i<=j} r_i/2^i <= t },
// which is nonincreasing in t and satisfies
//   min over tuples = min over t of { Psi(x/2^k + t) + m_{k-1}(t) }
// exactly (the relaxation is tight because Psi is increasing).  This keeps
// the effective resolution far above what a (k-1)-dimensional tensor grid
// could afford at equal cost.
#include "holoext/schedule.hpp"

#include <algorithm>
#include <cmath>

namespace holoext {

PwLinear::PwLinear(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2)
    throw EngineError("invalid_input", "table needs at least two knots");
}

double PwLinear::operator()(double x) const {
  x = std::clamp(x, 0.0, 1.0);
  const double pos = x * static_cast<double>(values_.size() - 1);
  const std::size_t j =
      std::min(values_.size() - 2, static_cast<std::size_t>(pos));
  const double frac = pos - static_cast<double>(j);
  return values_[j] + frac * (values_[j + 1] - values_[j]);
}

OmegaPair build_omega(const RealFn& modulus, double diam,
                      bool boundary_contact) {
  if (!(diam > 0.0) || !std::isfinite(diam))
    throw EngineError("invalid_input", "diameter must be positive");
  if (std::abs(modulus(0.0)) > 1e-12)
    throw EngineError("invalid_input", "modulus bound must vanish at 0");
  double prev = modulus(0.0);
  for (int i = 1; i <= 64; ++i) {
    const double v = modulus(diam * i / 64.0);
    if (!std::isfinite(v) || v < prev - 1e-12 * (1.0 + std::abs(prev)))
      throw EngineError("invalid_input", "modulus bound must be nondecreasing");
    prev = v;
  }
  OmegaPair pair;
  pair.diam = diam;
  pair.omega = [modulus](double t) { return t + modulus(t); };
  pair.top = pair.omega(diam);
  if (boundary_contact && pair.top < 1.0)
    throw EngineError("boundary_scale", "data does not reach the boundary scale");
  pair.omega_inv = [omega = pair.omega, diam, top = pair.top](double s) {
    if (s < -1e-15 || s > top * (1.0 + 1e-15) + 1e-15)
      throw EngineError("invalid_input",
                        "argument outside the inverse majorant domain");
    s = std::clamp(s, 0.0, top);
    double lo = 0.0, hi = diam;
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
      const double mid = 0.5 * (lo + hi);
      (omega(mid) < s ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };
  return pair;
}

std::vector<RealFn> psi_sequence(const RealFn& Psi, int k_max, int grid) {
  if (k_max > 8) throw EngineError("depth_cap", "schedule depth cap");
  if (k_max < 1)
    throw EngineError("invalid_input", "need at least one stage");
  if (grid < 17)
    throw EngineError("invalid_input", "minimization grid too coarse");
  if (std::abs(Psi(0.0)) > 1e-12)
    throw EngineError("invalid_input", "Psi must vanish at 0");
  {
    // reject decreases outright; a flat stretch is tolerated (it can arise
    // from clamping the inverse majorant at the top of its range) as long as
    // Psi grows overall
    double last = Psi(0.0);
    const double first = last;
    for (int i = 1; i <= 256; ++i) {
      const double v = Psi(i / 256.0);
      if (!std::isfinite(v) || v < last - 1e-12 * (1.0 + std::abs(last)))
        throw EngineError("invalid_input", "Psi must be increasing");
      last = v;
    }
    if (!(last > first))
      throw EngineError("invalid_input", "Psi must be increasing");
  }

  const int ns = (grid % 2 == 0) ? grid + 1 : grid;  // knots, includes 1/2
  const int nt = 16 * (ns - 1) + 1;                  // partial-sum states
  const auto knot = [ns](int i) {
    return static_cast<double>(i) / (ns - 1);
  };
  const auto state = [nt](int i) { return static_cast<double>(i) / (nt - 1); };

  // knot tables drive the recursion; the first damping function is kept in
  // closed form so it carries no interpolation error (a chord between knots
  // would overshoot it near 0 whenever Psi is convex there, and the later
  // stages' 10% deflation cannot absorb a first-cell overshoot)
  std::vector<std::vector<double>> tables;
  std::vector<RealFn> psi;
  psi.reserve(static_cast<std::size_t>(k_max));
  {
    std::vector<double> v(static_cast<std::size_t>(ns));
    for (int i = 0; i < ns; ++i)
      v[static_cast<std::size_t>(i)] = (1.0 - knot(i)) * Psi(knot(i) / 2.0);
    tables.push_back(std::move(v));
    psi.push_back([Psi](double r) { return (1.0 - r) * Psi(r / 2.0); });
  }

  // m holds the relaxed partial-sum minimum after the stages built so far,
  // tabulated on the state grid over [0, 1]
  std::vector<double> m(static_cast<std::size_t>(nt), 0.0);
  const auto m_at = [&](double t) {
    t = std::clamp(t, 0.0, 1.0);
    const double pos = t * (nt - 1);
    const std::size_t j =
        std::min(static_cast<std::size_t>(nt - 2), static_cast<std::size_t>(pos));
    const double frac = pos - static_cast<double>(j);
    return m[j] + frac * (m[j + 1] - m[j]);
  };

  for (int k = 2; k <= k_max; ++k) {
    // fold stage k-1 into the partial-sum state
    const double scale = std::ldexp(1.0, -(k - 1));  // r contributes r/2^{k-1}
    const std::vector<double>& prev = tables.back();
    std::vector<double> mnext(static_cast<std::size_t>(nt));
    for (int it = 0; it < nt; ++it) {
      const double t = state(it);
      double best = m_at(t);  // r_{k-1} = 0
      for (int ir = 1; ir < ns; ++ir) {
        const double r = knot(ir);
        if (r * scale > t) break;
        best = std::min(best,
                        m_at(t - r * scale) - prev[static_cast<std::size_t>(ir)]);
      }
      mnext[static_cast<std::size_t>(it)] = best;
    }
    m = std::move(mnext);

    // assemble stage k: coarse scan of the state, then local refinement
    std::vector<double> v(static_cast<std::size_t>(ns), 0.0);
    const double self = std::ldexp(1.0, -k);
    for (int i = 1; i < ns - 1; ++i) {
      const double x = knot(i);
      const int stride = 4;
      double best = 1e300;
      int best_it = 0;
      for (int it = 0; it < nt; it += stride) {
        const double cand = Psi(x * self + state(it)) + m[static_cast<std::size_t>(it)];
        if (cand < best) {
          best = cand;
          best_it = it;
        }
      }
      for (int it = std::max(0, best_it - stride);
           it <= std::min(nt - 1, best_it + stride); ++it) {
        best = std::min(best,
                        Psi(x * self + state(it)) + m[static_cast<std::size_t>(it)]);
      }
      v[static_cast<std::size_t>(i)] = 0.9 * (1.0 - x) * std::max(best, 0.0);
    }
    tables.push_back(v);
    psi.push_back(PwLinear(std::move(v)));
  }
  return psi;
}

std::vector<CuspProfile> theta_profiles(const std::vector<RealFn>& theta_tilde,
                                        double m_norm) {
  if (!(m_norm > 0.0))
    throw EngineError("invalid_input", "norm bound must be positive");
  std::vector<CuspProfile> out;
  for (std::size_t k = 1; k <= theta_tilde.size(); ++k) {
    const double scale = std::ldexp(1.0, static_cast<int>(k)) / m_norm;
    const RealFn fn = theta_tilde[k - 1];
    double peak = 0.0;
    for (int i = 0; i <= 4096; ++i)
      peak = std::max(peak, std::min(scale * fn(i / 4096.0), kPi / 4));
    if (peak < 1e-4) break;  // unrealizable at the conformal resolution floor
    out.emplace_back([fn, scale](double r) {
      return std::min(scale * fn(1.0 - r), kPi / 4);
    });
  }
  return out;
}

std::vector<double> epsilon_sequence(const OmegaPair& omega, double m_norm,
                                     double m_gauge, int k_max) {
  if (!(m_norm > 0.0))
    throw EngineError("invalid_input", "norm bound must be positive");
  if (k_max < 0) throw EngineError("invalid_input", "negative stage count");
  const double ratio = std::max(m_gauge / m_norm, 1.0);
  std::vector<double> eps{1.0};
  for (int n = 0; n < k_max; ++n) {
    const double en = eps.back();
    // clamping the argument to the inverse domain only shrinks the candidate,
    // which keeps every downstream inequality valid
    const double arg = std::min(en / ratio, omega.top);
    const double cand =
        std::ldexp(1.0, n) / m_norm * omega.omega_inv(arg);
    eps.push_back(std::min({en, cand, std::ldexp(1.0, -(n + 2))}));
  }
  return eps;
}

Schedule build_schedule(const RealFn& modulus, double diam, double m_norm,
                        double m_gauge, int k_max, int grid,
                        bool boundary_contact) {
  if (k_max > 8) throw EngineError("depth_cap", "schedule depth cap");
  if (k_max < 1)
    throw EngineError("invalid_input", "need at least one stage");
  if (!(m_norm > 0.0))
    throw EngineError("invalid_input", "norm bound must be positive");
  Schedule sched;
  sched.modulus = modulus;
  sched.omega = build_omega(modulus, diam, boundary_contact);
  sched.m_norm = m_norm;
  sched.m_gauge = m_gauge;
  sched.k_max_requested = k_max;

  // table-accelerated inverse for the recursion's inner loops; the public
  // inverse stays a strict bisection.  Knots are clustered quadratically
  // toward 0 so that a convex inverse (the usual case: concave modulus)
  // keeps a uniformly small relative interpolation error near the origin,
  // where the damping inequality has the least slack.
  const int ninv = 16385;
  const double top_eff = std::min(sched.omega.top, 1.0);
  std::vector<double> invtab(static_cast<std::size_t>(ninv));
  for (int i = 0; i < ninv; ++i) {
    const double frac = static_cast<double>(i) / (ninv - 1);
    invtab[static_cast<std::size_t>(i)] =
        sched.omega.omega_inv(top_eff * frac * frac);
  }
  const RealFn Psi = [invtab = std::move(invtab), top_eff](double s) {
    s = std::clamp(s, 0.0, top_eff);
    const int n = static_cast<int>(invtab.size());
    const double u = std::sqrt(s / top_eff) * (n - 1);
    const std::size_t j =
        std::min(static_cast<std::size_t>(n - 2), static_cast<std::size_t>(u));
    const double a = top_eff * sqr(static_cast<double>(j) / (n - 1));
    const double b = top_eff * sqr(static_cast<double>(j + 1) / (n - 1));
    const double w = (s - a) / (b - a);
    return 0.5 * (invtab[j] + w * (invtab[j + 1] - invtab[j]));
  };

  sched.theta_tilde = psi_sequence(Psi, k_max, grid);
  sched.theta = theta_profiles(sched.theta_tilde, m_norm);
  sched.k_max = static_cast<int>(sched.theta.size());
  if (sched.k_max == 0)
    throw EngineError("unrealizable",
                      "no stage profile is realizable at the resolution floor");
  sched.theta_tilde.resize(static_cast<std::size_t>(sched.k_max));
  sched.eps = epsilon_sequence(sched.omega, m_norm, m_gauge, sched.k_max);
  sched.weights.assign(static_cast<std::size_t>(sched.k_max), 0.0);
  for (int k = 1; k <= sched.k_max; ++k)
    sched.weights[static_cast<std::size_t>(k - 1)] = std::ldexp(1.0, -k);
  sched.weights.back() *= 2.0;  // doubled last weight: the sum is exactly 1
  return sched;
}

}  // namespace holoext
