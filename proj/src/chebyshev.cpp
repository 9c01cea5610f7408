// Sup-norm-minimizing interpolating polynomial on the boundary circle.
//
// The sup norm is discretized on a uniform boundary grid and the resulting
// minimax problem over the interpolation-preserving affine family is solved
// with Lawson's iteratively reweighted least squares, keeping the best iterate
// seen.  The reported bound is read off a 4x refined grid and padded by the
// observed refinement delta, and is never below max |values|.
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "holoext/holo_fn.hpp"

namespace holoext {

namespace {

Cplx horner(const VecC& c, Cplx z) {
  if (c.size() == 0) return 0.0;
  Cplx acc = c[c.size() - 1];
  for (Eigen::Index k = c.size() - 2; k >= 0; --k) acc = c[k] + z * acc;
  return acc;
}

double grid_sup(const VecC& c, int n) {
  double s = 0.0;
  for (int g = 0; g < n; ++g)
    s = std::max(s, std::abs(horner(c, std::polar(1.0, 2 * kPi * g / n))));
  return s;
}

}  // namespace

std::pair<HoloPtr, double> min_supnorm_extension(const NodeSet& S,
                                                 const VecC& values, int degree,
                                                 int grid) {
  const int m = S.size();
  if (static_cast<int>(values.size()) != m)
    throw EngineError("invalid_input",
                      "min_supnorm_extension: sizes of nodes and values differ");
  if (degree < 0)
    throw EngineError("invalid_input", "degree must be nonnegative");
  if (grid < 1) throw EngineError("invalid_input", "grid must be positive");
  const int N = std::max({grid, 4 * (degree + 1), 64});
  double scale = 0.0;
  for (int j = 0; j < m; ++j) scale = std::max(scale, std::abs(values[j]));

  VecC grid_pts(N);
  for (int g = 0; g < N; ++g) grid_pts[g] = std::polar(1.0, 2 * kPi * g / N);

  bool have_best = false;
  VecC best_coeffs;
  double best_bound = 0.0;

  for (int deg = 0; deg <= degree; ++deg) {
    // minimum-norm interpolant of this degree (if the system is consistent)
    Eigen::MatrixXcd V(m, deg + 1);
    for (int j = 0; j < m; ++j) {
      Cplx p = 1.0;
      for (int k = 0; k <= deg; ++k) {
        V(j, k) = p;
        p *= S.point(j);
      }
    }
    Eigen::VectorXcd rhs(m);
    for (int j = 0; j < m; ++j) rhs[j] = values[j];
    const VecC p0 = V.completeOrthogonalDecomposition().solve(rhs);
    if ((V * p0 - rhs).cwiseAbs().maxCoeff() > 1e-8 * (1.0 + scale))
      continue;  // this degree cannot interpolate the data

    VecC cand = p0;
    double cand_grid_sup = grid_sup(p0, N);

    const int K = deg - m;  // highest shift of the vanishing factor, inclusive
    if (K >= 0) {
      // columns omega(z) z^l, omega = prod (z - s_j), preserve interpolation
      Eigen::VectorXcd omega(N);
      for (int g = 0; g < N; ++g) {
        Cplx w = 1.0;
        for (int j = 0; j < m; ++j) w *= grid_pts[g] - S.point(j);
        omega[g] = w;
      }
      Eigen::MatrixXcd A(N, K + 1);
      Eigen::VectorXcd base(N);
      for (int g = 0; g < N; ++g) {
        base[g] = horner(p0, grid_pts[g]);
        Cplx p = omega[g];
        for (int l = 0; l <= K; ++l) {
          A(g, l) = p;
          p *= grid_pts[g];
        }
      }
      Eigen::VectorXd w = Eigen::VectorXd::Constant(N, 1.0 / N);
      Eigen::VectorXcd best_c = Eigen::VectorXcd::Zero(K + 1);
      double best_sup = base.cwiseAbs().maxCoeff();
      for (int it = 0; it < 120; ++it) {
        const Eigen::VectorXd d = w.cwiseSqrt();
        const Eigen::MatrixXcd Aw = d.asDiagonal() * A;
        const Eigen::VectorXcd bw = d.asDiagonal() * (-base);
        const Eigen::VectorXcd c = Aw.colPivHouseholderQr().solve(bw);
        const Eigen::VectorXd r = (base + A * c).cwiseAbs();
        const double sup = r.maxCoeff();
        if (sup < best_sup - 1e-15) {
          best_sup = sup;
          best_c = c;
        }
        w = w.cwiseProduct(r).cwiseMax(1e-300);
        w /= w.sum();
      }
      // assemble the winning candidate in the power basis
      VecC wcoef = VecC::Zero(m + 1);
      wcoef[0] = 1.0;
      int len = 1;
      for (int j = 0; j < m; ++j) {
        // multiply by (z - s_j)
        for (int k = len; k >= 1; --k)
          wcoef[k] = wcoef[k - 1] - S.point(j) * wcoef[k];
        wcoef[0] = -S.point(j) * wcoef[0];
        ++len;
      }
      VecC full = VecC::Zero(deg + 1);
      full.head(p0.size()) = p0;
      for (int l = 0; l <= K; ++l)
        for (int k = 0; k <= m; ++k) full[l + k] += best_c[l] * wcoef[k];
      // conditioning guard: the assembled candidate must still interpolate
      double node_res = 0.0;
      for (int j = 0; j < m; ++j)
        node_res = std::max(node_res, std::abs(horner(full, S.point(j)) - values[j]));
      if (node_res <= 1e-8 * (1.0 + scale)) {
        cand = full;
        cand_grid_sup = best_sup;
      }
    }

    const double sup_fine = grid_sup(cand, 4 * N);
    const double delta = std::max(0.0, sup_fine - cand_grid_sup);
    const double bound = std::max(sup_fine + delta, scale);
    if (!have_best || bound < best_bound - 1e-15) {
      have_best = true;
      best_bound = bound;
      best_coeffs = cand;
    }
  }

  if (!have_best)
    throw EngineError("infeasible",
                      "no polynomial of the requested degree interpolates the data");
  auto p = std::make_shared<PolyNode>(best_coeffs);
  p->sup_bound = best_bound;
  p->meta_node_angles = S.angles();
  p->meta_node_values.assign(values.data(), values.data() + m);
  return {p, best_bound};
}

}  // namespace holoext
