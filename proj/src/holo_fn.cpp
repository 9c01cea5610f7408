// Disk-algebra expression DAG: node evaluation, peak functions, Mobius
// transforms, Lagrange extensions, and the Cauchy-Riemann audit.
#include "holoext/holo_fn.hpp"

#include <algorithm>
#include <cmath>

namespace holoext {

namespace {
constexpr double kDiskTol = 1e-12;

// principal branch power after clamping a nonnegative-real-part base; the
// clamp only absorbs rounding of order 1e-12 introduced by |z| <= 1 + 1e-12
Cplx pow_principal_clamped(Cplx base, double q) {
  if (base.real() < 0.0) base = Cplx(0.0, base.imag());
  return std::pow(base, q);
}
}  // namespace

NodeSet::NodeSet(std::vector<double> angles, double sep_min)
    : angles_(std::move(angles)), sep_min_(sep_min) {
  if (angles_.empty())
    throw EngineError("invalid_input", "node set must be nonempty");
  if (!(sep_min_ > 0))
    throw EngineError("invalid_input", "sep_min must be positive");
  for (double& a : angles_) {
    if (!std::isfinite(a))
      throw EngineError("invalid_input", "node angle must be finite");
    a = std::fmod(a, 2 * kPi);
    if (a < 0) a += 2 * kPi;
  }
  min_sep_ = 2 * kPi;
  for (std::size_t i = 0; i < angles_.size(); ++i)
    for (std::size_t j = i + 1; j < angles_.size(); ++j) {
      double d = std::abs(angles_[i] - angles_[j]);
      d = std::min(d, 2 * kPi - d);
      min_sep_ = std::min(min_sep_, d);
    }
  if (angles_.size() >= 2) {
    if (min_sep_ < 1e-12)
      throw EngineError("duplicate_nodes", "duplicate nodes in node set");
    if (min_sep_ < sep_min_)
      throw EngineError("ill_conditioned_nodes",
                        "node separation below declared sep_min");
  }
}

Cplx HoloFunction::operator()(Cplx z) const {
  if (std::abs(z) > 1.0 + kDiskTol)
    throw EngineError("outside_disk", "outside closed disk");
  return eval_impl(z);
}

Cplx PolyNode::eval_impl(Cplx z) const {
  if (coeffs.size() == 0) return 0.0;
  Cplx acc = coeffs[coeffs.size() - 1];
  for (Eigen::Index k = coeffs.size() - 2; k >= 0; --k)
    acc = coeffs[k] + z * acc;
  return acc;
}

Cplx NewtonPolyNode::eval_impl(Cplx z) const {
  const std::size_t n = divided.size();
  Cplx acc = divided[n - 1];
  for (std::size_t k = n - 1; k-- > 0;)
    acc = divided[k] + (z - centers[k]) * acc;
  return acc;
}

MobiusNode::MobiusNode(double a, Cplx z0) : a(a), z0(z0) {
  if (!(std::abs(a) < 1.0))
    throw EngineError("invalid_input", "mobius parameter must satisfy |a| < 1");
  if (std::abs(std::abs(z0) - 1.0) > 1e-12)
    throw EngineError("invalid_input", "mobius fixed point must be unimodular");
}

Cplx MobiusNode::eval_impl(Cplx z) const {
  return (z - a * z0) / (1.0 - a * std::conj(z0) * z);
}

PeakNode::PeakNode(std::vector<double> angles_in) : angles(std::move(angles_in)) {
  // distinctness is validated by NodeSet in the factory; re-check cheaply here
  for (std::size_t i = 0; i < angles.size(); ++i)
    for (std::size_t j = i + 1; j < angles.size(); ++j) {
      double d = std::abs(angles[i] - angles[j]);
      d = std::min(d, 2 * kPi - d);
      if (d < 1e-12)
        throw EngineError("duplicate_nodes", "duplicate peak nodes");
    }
}

Cplx PeakNode::eval_impl(Cplx z) const {
  const double m = static_cast<double>(angles.size());
  Cplx prod = 1.0;
  for (const double a : angles) {
    const Cplx base = 1.0 - std::polar(1.0, -a) * z;
    // snap: once any factor vanishes the whole product is 0 and chi = 1
    // exactly; evaluating pow on a ~1e-16 rounding residue would instead
    // produce an error of order (1e-16)^{1/m}
    if (std::abs(base) <= 1e-13) return 1.0;
    prod *= pow_principal_clamped(base, 1.0 / m);
  }
  // each factor has |arg| <= pi/(2m), so the product has Re >= 0; clamp the
  // rounding residue so |chi| <= 1 is unconditional
  if (prod.real() < 0.0) prod = Cplx(0.0, prod.imag());
  return std::exp(-prod);
}

Cplx AffinePowNode::eval_impl(Cplx z) const {
  const Cplx base = 1.0 - std::conj(s) * z;
  if (std::abs(base) <= 1e-13) return q > 0 ? Cplx(0.0) : Cplx(1.0);
  return pow_principal_clamped(base, q);
}

Cplx ExpNode::eval_impl(Cplx z) const { return std::exp(raw_eval(*inner, z)); }

Cplx ScaleNode::eval_impl(Cplx z) const {
  return mul * raw_eval(*inner, z) + add;
}

bool SumNode::certified() const {
  return std::all_of(terms.begin(), terms.end(),
                     [](const auto& t) { return t.second->certified(); });
}

Cplx SumNode::eval_impl(Cplx z) const {
  Cplx acc = 0.0;
  for (const auto& [w, f] : terms) acc += w * raw_eval(*f, z);
  return acc;
}

bool ProductNode::certified() const {
  return std::all_of(factors.begin(), factors.end(),
                     [](const HoloPtr& f) { return f->certified(); });
}

Cplx ProductNode::eval_impl(Cplx z) const {
  Cplx acc = 1.0;
  for (const HoloPtr& f : factors) acc *= raw_eval(*f, z);
  return acc;
}

Cplx PowIntNode::eval_impl(Cplx z) const {
  Cplx base = raw_eval(*inner, z);
  Cplx acc = 1.0;
  long p = power;
  while (p > 0) {
    if (p & 1) acc *= base;
    base *= base;
    p >>= 1;
  }
  return acc;
}

ComposeNode::ComposeNode(HoloPtr outer_in, HoloPtr inner_in)
    : outer(std::move(outer_in)), inner(std::move(inner_in)) {
  if (std::isfinite(inner->sup_bound) && inner->sup_bound > 1.0 + 1e-9)
    throw EngineError("invalid_input",
                      "composition requires the inner range in the closed disk");
}

Cplx ComposeNode::eval_impl(Cplx z) const {
  Cplx w = raw_eval(*inner, z);
  const double aw = std::abs(w);
  if (aw > 1.0 && aw <= 1.0 + 1e-9) w /= aw;  // absorb rounding drift
  return (*outer)(w);
}

HoloPtr poly(VecC coeffs) { return std::make_shared<PolyNode>(std::move(coeffs)); }

HoloPtr constant(Cplx c) {
  VecC v(1);
  v[0] = c;
  auto p = std::make_shared<PolyNode>(std::move(v));
  p->sup_bound = std::abs(c);
  return p;
}

HoloPtr identity_fn() {
  VecC v(2);
  v[0] = 0.0;
  v[1] = 1.0;
  auto p = std::make_shared<PolyNode>(std::move(v));
  p->sup_bound = 1.0;
  return p;
}

HoloPtr exp_of(HoloPtr inner) { return std::make_shared<ExpNode>(std::move(inner)); }

HoloPtr scale(Cplx mul, HoloPtr inner, Cplx add) {
  return std::make_shared<ScaleNode>(mul, add, std::move(inner));
}

HoloPtr sum_of(std::vector<std::pair<Cplx, HoloPtr>> terms) {
  return std::make_shared<SumNode>(std::move(terms));
}

HoloPtr product_of(std::vector<HoloPtr> factors) {
  return std::make_shared<ProductNode>(std::move(factors));
}

HoloPtr pow_int(HoloPtr inner, long power) {
  if (power < 0) throw EngineError("invalid_input", "pow_int needs power >= 0");
  return std::make_shared<PowIntNode>(std::move(inner), power);
}

HoloPtr compose(HoloPtr outer, HoloPtr inner) {
  return std::make_shared<ComposeNode>(std::move(outer), std::move(inner));
}

HoloPtr callable(std::function<Cplx(Cplx)> fn, bool certified, std::string label) {
  return std::make_shared<CallableNode>(std::move(fn), certified, std::move(label));
}

HoloPtr peak_function(const NodeSet& S) {
  auto chi = std::make_shared<PeakNode>(S.angles());
  chi->sup_bound = 1.0;
  chi->meta_node_angles = S.angles();
  chi->meta_node_values.assign(S.angles().size(), Cplx(1.0));
  return chi;
}

Cplx mobius_apply(double a, Cplx z0, Cplx z) {
  if (!(std::abs(a) < 1.0))
    throw EngineError("invalid_input", "mobius parameter must satisfy |a| < 1");
  return (z - a * z0) / (1.0 - a * std::conj(z0) * z);
}

HoloPtr mobius(double a, Cplx z0) {
  auto g = std::make_shared<MobiusNode>(a, z0);
  g->sup_bound = 1.0;
  return g;
}

HoloPtr lagrange_extension(const NodeSet& S, const VecC& values) {
  const int m = S.size();
  if (static_cast<int>(values.size()) != m)
    throw EngineError("invalid_input",
                      "lagrange_extension: sizes of nodes and values differ");
  if (m > 12)
    throw EngineError(
        "invalid_input",
        "lagrange_extension limited to 12 nodes; use min_supnorm_extension");
  std::vector<Cplx> centers(static_cast<std::size_t>(m));
  std::vector<Cplx> dd(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    centers[static_cast<std::size_t>(i)] = S.point(i);
    dd[static_cast<std::size_t>(i)] = values[i];
  }
  for (int j = 1; j < m; ++j)
    for (int i = m - 1; i >= j; --i)
      dd[static_cast<std::size_t>(i)] =
          (dd[static_cast<std::size_t>(i)] - dd[static_cast<std::size_t>(i - 1)]) /
          (centers[static_cast<std::size_t>(i)] -
           centers[static_cast<std::size_t>(i - j)]);
  auto p = std::make_shared<NewtonPolyNode>(std::move(centers), std::move(dd));
  p->meta_node_angles = S.angles();
  p->meta_node_values.assign(values.data(), values.data() + m);
  return p;
}

double cr_residual(const HoloFunction& f, int grid) {
  if (grid < 1) throw EngineError("invalid_input", "grid must be positive");
  const double h = 1e-5;
  double worst = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double r = 0.95 * (i + 0.5) / grid;
    for (int k = 0; k < 2 * grid; ++k) {
      const double th = kPi * k / grid;
      const Cplx z = std::polar(r, th);
      const Cplx fx = (f.eval_impl(z + h) - f.eval_impl(z - h)) / (2 * h);
      const Cplx fy =
          (f.eval_impl(z + Cplx(0, h)) - f.eval_impl(z - Cplx(0, h))) / (2 * h);
      const double denom =
          std::max({1.0, std::abs(fx), std::abs(fy)});
      worst = std::max(worst, std::abs(fx + Cplx(0, 1) * fy) / denom);
    }
  }
  return worst;
}

}  // namespace holoext
