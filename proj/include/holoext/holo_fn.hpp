// Disk-algebra functions represented as immutable expression DAGs.
//
// Every node type is holomorphic on the open unit disk and continuous up to
// the boundary by construction, so membership in the disk algebra is certified
// structurally.  The one escape hatch, CallableNode, carries an explicit
// certification flag and is additionally subject to the numerical
// Cauchy-Riemann audit in cr_residual().
#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "holoext/common.hpp"

namespace holoext {

// Finite set of pairwise distinct boundary points, stored as angles so that
// |s_j| = 1 holds exactly.
class NodeSet {
 public:
  explicit NodeSet(std::vector<double> angles, double sep_min = 1e-6);

  int size() const { return static_cast<int>(angles_.size()); }
  double angle(int i) const { return angles_[static_cast<std::size_t>(i)]; }
  Cplx point(int i) const { return std::polar(1.0, angle(i)); }
  const std::vector<double>& angles() const { return angles_; }
  double sep_min() const { return sep_min_; }
  // smallest pairwise circular distance actually present
  double min_separation() const { return min_sep_; }

 private:
  std::vector<double> angles_;
  double sep_min_;
  double min_sep_;
};

class HoloFunction;
using HoloPtr = std::shared_ptr<const HoloFunction>;

class HoloFunction {
 public:
  virtual ~HoloFunction() = default;

  // Checked evaluation on the closed disk; throws outside |z| <= 1 + 1e-12.
  Cplx operator()(Cplx z) const;

  // True when holomorphy is certified by the node structure alone.
  virtual bool certified() const { return true; }
  virtual std::string tag() const = 0;

  // Optional metadata, set once by factory functions.
  double sup_bound = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> meta_node_angles;
  std::vector<Cplx> meta_node_values;

 protected:
  friend double cr_residual(const HoloFunction&, int);
  virtual Cplx eval_impl(Cplx z) const = 0;
  // unchecked evaluation of a child node, for composite node types
  static Cplx raw_eval(const HoloFunction& f, Cplx z) { return f.eval_impl(z); }
};

// ---- concrete node types (public parameter members for serialization) ----

// polynomial in the power basis, evaluated by Horner's rule
class PolyNode final : public HoloFunction {
 public:
  explicit PolyNode(VecC coeffs) : coeffs(std::move(coeffs)) {}
  std::string tag() const override { return "poly"; }
  VecC coeffs;  // coeffs[k] multiplies z^k

 protected:
  Cplx eval_impl(Cplx z) const override;
};

// interpolating polynomial in Newton form (numerically stable at the nodes)
class NewtonPolyNode final : public HoloFunction {
 public:
  NewtonPolyNode(std::vector<Cplx> centers, std::vector<Cplx> divided)
      : centers(std::move(centers)), divided(std::move(divided)) {}
  std::string tag() const override { return "newton"; }
  std::vector<Cplx> centers;   // interpolation nodes s_0..s_{m-1}
  std::vector<Cplx> divided;   // divided differences

 protected:
  Cplx eval_impl(Cplx z) const override;
};

// disk automorphism g_a(z) = (z - a z0) / (1 - a conj(z0) z), fixing z0
class MobiusNode final : public HoloFunction {
 public:
  MobiusNode(double a, Cplx z0);
  std::string tag() const override { return "mobius"; }
  double a;
  Cplx z0;

 protected:
  Cplx eval_impl(Cplx z) const override;
};

// peak function exp(-prod_j (1 - conj(s_j) z)^{1/m}); equals 1 exactly on S
// and has modulus < 1 elsewhere on the closed disk
class PeakNode final : public HoloFunction {
 public:
  explicit PeakNode(std::vector<double> angles);
  std::string tag() const override { return "peak"; }
  std::vector<double> angles;

 protected:
  Cplx eval_impl(Cplx z) const override;
};

// principal-branch power of the affine factor (1 - conj(s) z); the base has
// nonnegative real part on the closed disk so the branch is safe
class AffinePowNode final : public HoloFunction {
 public:
  AffinePowNode(Cplx s, double q) : s(s), q(q) {}
  std::string tag() const override { return "affine_pow"; }
  Cplx s;
  double q;

 protected:
  Cplx eval_impl(Cplx z) const override;
};

class ExpNode final : public HoloFunction {
 public:
  explicit ExpNode(HoloPtr inner) : inner(std::move(inner)) {}
  std::string tag() const override { return "exp"; }
  bool certified() const override { return inner->certified(); }
  HoloPtr inner;

 protected:
  Cplx eval_impl(Cplx z) const override;
};

class ScaleNode final : public HoloFunction {
 public:
  ScaleNode(Cplx mul, Cplx add, HoloPtr inner)
      : mul(mul), add(add), inner(std::move(inner)) {}
  std::string tag() const override { return "scale"; }
  bool certified() const override { return inner->certified(); }
  Cplx mul, add;
  HoloPtr inner;

 protected:
  Cplx eval_impl(Cplx z) const override;
};

class SumNode final : public HoloFunction {
 public:
  explicit SumNode(std::vector<std::pair<Cplx, HoloPtr>> terms)
      : terms(std::move(terms)) {}
  std::string tag() const override { return "sum"; }
  bool certified() const override;
  std::vector<std::pair<Cplx, HoloPtr>> terms;

 protected:
  Cplx eval_impl(Cplx z) const override;
};

class ProductNode final : public HoloFunction {
 public:
  explicit ProductNode(std::vector<HoloPtr> factors)
      : factors(std::move(factors)) {}
  std::string tag() const override { return "product"; }
  bool certified() const override;
  std::vector<HoloPtr> factors;

 protected:
  Cplx eval_impl(Cplx z) const override;
};

class PowIntNode final : public HoloFunction {
 public:
  PowIntNode(HoloPtr inner, long power) : inner(std::move(inner)), power(power) {}
  std::string tag() const override { return "pow_int"; }
  bool certified() const override { return inner->certified(); }
  HoloPtr inner;
  long power;  // nonnegative integer exponent

 protected:
  Cplx eval_impl(Cplx z) const override;
};

// outer(inner(z)); requires the inner map to send the closed disk into the
// closed disk (checked against the inner node's declared sup bound if set)
class ComposeNode final : public HoloFunction {
 public:
  ComposeNode(HoloPtr outer, HoloPtr inner);
  std::string tag() const override { return "compose"; }
  bool certified() const override {
    return outer->certified() && inner->certified();
  }
  HoloPtr outer, inner;

 protected:
  Cplx eval_impl(Cplx z) const override;
};

// generic callable; holomorphy only by the caller's declaration
class CallableNode final : public HoloFunction {
 public:
  CallableNode(std::function<Cplx(Cplx)> fn, bool is_certified,
               std::string label)
      : fn(std::move(fn)), is_certified(is_certified), label(std::move(label)) {}
  std::string tag() const override { return "callable"; }
  bool certified() const override { return is_certified; }
  std::function<Cplx(Cplx)> fn;
  bool is_certified;
  std::string label;

 protected:
  Cplx eval_impl(Cplx z) const override { return fn(z); }
};

// ---- factory helpers ----

HoloPtr poly(VecC coeffs);
HoloPtr constant(Cplx c);
HoloPtr identity_fn();
HoloPtr exp_of(HoloPtr inner);
HoloPtr scale(Cplx mul, HoloPtr inner, Cplx add = 0.0);
HoloPtr sum_of(std::vector<std::pair<Cplx, HoloPtr>> terms);
HoloPtr product_of(std::vector<HoloPtr> factors);
HoloPtr pow_int(HoloPtr inner, long power);
HoloPtr compose(HoloPtr outer, HoloPtr inner);
HoloPtr callable(std::function<Cplx(Cplx)> fn, bool certified, std::string label);

// chi with chi|_S = 1 exactly and |chi| < 1 off S on the closed disk
HoloPtr peak_function(const NodeSet& S);

// scalar Mobius evaluation and the corresponding DAG node
Cplx mobius_apply(double a, Cplx z0, Cplx z);
HoloPtr mobius(double a, Cplx z0);

// Lagrange interpolating polynomial through (s_j, values_j), |S| <= 12
HoloPtr lagrange_extension(const NodeSet& S, const VecC& values);

// polynomial of at most the given degree interpolating the values whose sup
// norm over the boundary is (approximately) minimal; returns the polynomial
// and a defensible upper estimate of its sup norm
std::pair<HoloPtr, double> min_supnorm_extension(const NodeSet& S,
                                                 const VecC& values, int degree,
                                                 int grid = 512);

// max over an interior polar grid (|z| <= 0.95) of the normalized
// finite-difference Cauchy-Riemann residual; analytic DAGs score <= 1e-6
double cr_residual(const HoloFunction& f, int grid);

}  // namespace holoext
