// Tolerance schedule: the modulus majorant and its inverse, the recursive
// damping sequence, per-stage horn angle profiles, and the shrinking
// tolerance sequence that drives the stage construction.
#pragma once

#include <functional>
#include <vector>

#include "holoext/common.hpp"
#include "holoext/conformal.hpp"

namespace holoext {

using RealFn = std::function<double(double)>;

/// Piecewise-linear function with uniformly spaced knots on [0, 1].
class PwLinear {
 public:
  PwLinear() = default;
  explicit PwLinear(std::vector<double> values);

  double operator()(double x) const;
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;
};

/// Strictly increasing majorant omega(t) = t + modulus(t) on [0, diam],
/// paired with its bisection inverse on [0, omega(diam)].
struct OmegaPair {
  RealFn omega;
  RealFn omega_inv;  // absolute tolerance 1e-12; throws outside its domain
  double diam = 0.0;
  double top = 0.0;  // omega(diam)
};

/// Builds the majorant and its inverse from a nondecreasing modulus bound
/// vanishing at 0.  When `boundary_contact` is set, the range of omega must
/// cover [0, 1] (the data reaches the boundary scale); otherwise smaller
/// ranges are accepted.
OmegaPair build_omega(const RealFn& modulus, double diam,
                      bool boundary_contact = false);

/// Recursive damping sequence for a continuous increasing Psi with
/// Psi(0) = 0:
///   psi_1(r) = (1 - r) Psi(r / 2), and for k >= 2
///   psi_k(r) = (1 - r) * min over r_1..r_{k-1} in [0, 1] of
///              { Psi(sum_{i<=k} r_i / 2^i, with r_k = r)
///                - sum_{i<k} psi_i(r_i) },
/// so that sum_i psi_i(r_i) <= Psi(sum_i r_i / 2^i) for every tuple.  The
/// minimized tables for k >= 2 are deflated by 0.9 so the inequality stays
/// certified despite discretization; psi_1 is tabulated exactly at its
/// knots.  `grid` controls both the stored knot count and the minimization
/// density.
std::vector<RealFn> psi_sequence(const RealFn& Psi, int k_max, int grid);

/// Stage angle profiles theta_k(r) = min{(2^k / m_norm) tt_k(1 - r), pi/4}
/// built from the damping tables tt.  Profiles whose peak angle falls below
/// the conformal resolution floor 1e-4 are unrealizable; the returned prefix
/// stops at the first such stage, so it may be shorter than the input.
std::vector<CuspProfile> theta_profiles(const std::vector<RealFn>& theta_tilde,
                                        double m_norm);

/// Tolerance recursion eps_0 = 1 and
///   eps_{n+1} = min{eps_n,
///                   (2^n / m_norm) omega_inv(eps_n / max{m_gauge/m_norm, 1}),
///                   2^{-(n+2)}}.
std::vector<double> epsilon_sequence(const OmegaPair& omega, double m_norm,
                                     double m_gauge, int k_max);

/// Immutable stage schedule consumed by the extension engine.
struct Schedule {
  RealFn modulus;  // modulus bound of the gauge on the data hull
  OmegaPair omega;
  double m_norm = 1.0;   // sup of the data norm over the boundary grid
  double m_gauge = 1.0;  // sup of the data gauge over the boundary grid
  int k_max_requested = 0;
  int k_max = 0;  // realized stage count (unrealizable depths dropped)
  std::vector<RealFn> theta_tilde;  // damping functions, Psi = omega_inv / 2
  std::vector<CuspProfile> theta;     // stage profiles, size k_max
  std::vector<double> eps;            // eps_0..eps_{k_max}
  std::vector<double> weights;        // w_1..w_{k_max}; sums to 1 exactly
};

/// Assembles the full schedule.  The damping recursion uses Psi equal to
/// half the inverse majorant; the stage count is reduced to the realizable
/// prefix and the dyadic weights double the last entry so they sum to 1.
Schedule build_schedule(const RealFn& modulus, double diam, double m_norm,
                        double m_gauge, int k_max = 5, int grid = 513,
                        bool boundary_contact = false);

}  // namespace holoext
