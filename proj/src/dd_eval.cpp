// Double-double evaluation path for the inverse welding chain.
//
// The compensated primitives (two_sum, two_prod) require strict IEEE double
// semantics per operation; this translation unit must be compiled with FP
// contraction disabled.  Explicit std::fma calls are the only fused ops.

#include "dd_eval.hpp"

#include <cmath>
#include <cstddef>

namespace holoext {
namespace detail {
namespace {

// ---------------------------------------------------------------------------
// real double-double primitives
// ---------------------------------------------------------------------------

struct DD {
  double hi = 0.0;
  double lo = 0.0;
};

inline DD quick_two_sum(double a, double b) {  // requires |a| >= |b| or a == 0
  const double s = a + b;
  return {s, b - (s - a)};
}

inline DD two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline DD two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline DD dd(double x) { return {x, 0.0}; }

inline DD add(DD a, DD b) {
  const DD s = two_sum(a.hi, b.hi);
  const DD t = two_sum(a.lo, b.lo);
  const DD r = quick_two_sum(s.hi, s.lo + t.hi);
  return quick_two_sum(r.hi, r.lo + t.lo);
}

inline DD neg(DD a) { return {-a.hi, -a.lo}; }

inline DD sub(DD a, DD b) { return add(a, neg(b)); }

inline DD mul(DD a, DD b) {
  const DD p = two_prod(a.hi, b.hi);
  return quick_two_sum(p.hi, p.lo + (a.hi * b.lo + a.lo * b.hi));
}

inline DD mul(DD a, double b) {
  const DD p = two_prod(a.hi, b);
  return quick_two_sum(p.hi, p.lo + a.lo * b);
}

inline DD div(DD a, DD b) {
  const double q1 = a.hi / b.hi;
  DD r = sub(a, mul(b, q1));
  const double q2 = r.hi / b.hi;
  r = sub(r, mul(b, q2));
  const double q3 = r.hi / b.hi;
  const DD q = quick_two_sum(q1, q2);
  return add(q, dd(q3));
}

inline DD div(DD a, double b) {
  const double q1 = a.hi / b;
  DD r = sub(a, two_prod(q1, b));
  const double q2 = r.hi / b;
  r = sub(r, two_prod(q2, b));
  const double q3 = r.hi / b;
  const DD q = quick_two_sum(q1, q2);
  return add(q, dd(q3));
}

inline DD sqrt(DD a) {  // a >= 0; one Newton step from the double seed
  if (a.hi <= 0.0) return dd(0.0);
  const double x = 1.0 / std::sqrt(a.hi);
  const double ax = a.hi * x;
  const DD err = sub(a, two_prod(ax, ax));
  return quick_two_sum(ax, err.hi * (x * 0.5));
}

// ---------------------------------------------------------------------------
// complex double-double
// ---------------------------------------------------------------------------

struct DC {
  DD re, im;
};

inline DC dc(Cplx z) { return {dd(z.real()), dd(z.imag())}; }

inline Cplx demote(DC z) {
  return Cplx(z.re.hi + z.re.lo, z.im.hi + z.im.lo);
}

inline DC add(DC a, DC b) { return {add(a.re, b.re), add(a.im, b.im)}; }
inline DC sub(DC a, DC b) { return {sub(a.re, b.re), sub(a.im, b.im)}; }
inline DC neg(DC a) { return {neg(a.re), neg(a.im)}; }
inline DC muli(DC a) { return {neg(a.im), a.re}; }  // multiply by i

inline DC mul(DC a, DC b) {
  return {sub(mul(a.re, b.re), mul(a.im, b.im)),
          add(mul(a.re, b.im), mul(a.im, b.re))};
}

inline DC mul(DC a, double b) { return {mul(a.re, b), mul(a.im, b)}; }

inline DD norm2(DC a) { return add(mul(a.re, a.re), mul(a.im, a.im)); }

inline DC div(DC a, DC b) {
  const DD n = norm2(b);
  const DC t = {add(mul(a.re, b.re), mul(a.im, b.im)),
                sub(mul(a.im, b.re), mul(a.re, b.im))};  // a * conj(b)
  return {div(t.re, n), div(t.im, n)};
}

inline DC div(DC a, double b) { return {div(a.re, b), div(a.im, b)}; }

inline DD abs(DC a) { return sqrt(norm2(a)); }

// cheap magnitude estimate for threshold tests, safe across the full range
inline double abs_est(DC a) { return std::hypot(a.re.hi, a.im.hi); }

inline DC sqrt(DC z) {  // principal branch, matching std::sqrt
  const DD r = abs(z);
  if (r.hi == 0.0) return dc(Cplx(0.0, 0.0));
  DD re, im;
  if (z.re.hi >= 0.0) {
    re = sqrt(mul(add(r, z.re), 0.5));
    im = div(z.im, mul(re, 2.0));
  } else {
    im = sqrt(mul(sub(r, z.re), 0.5));
    if (im.hi != 0.0) {
      if (z.im.hi < 0.0 || (z.im.hi == 0.0 && z.im.lo < 0.0)) im = neg(im);
      re = div(z.im, mul(im, 2.0));
      if (re.hi < 0.0) re = neg(re);
    } else {
      re = dd(0.0);
    }
  }
  return {re, im};
}

}  // namespace

// ---------------------------------------------------------------------------
// inverse chain replica
// ---------------------------------------------------------------------------

Cplx eval_deep(const ConformalMap& map, Cplx zeta) {
  const DC one = dc(Cplx(1.0, 0.0));
  const DC z = dc(zeta);
  const DC den0 = add(one, z);
  DC u = dc(Cplx(0.0, 0.0));
  bool u_inf = false;
  if (abs_est(den0) < 1e-300) {
    if (map.horn_mode()) u_inf = true;  // else u stays 0
  } else {
    const DC w = div(muli(sub(one, z)), den0);
    const DC x = div(w, map.lambda_c());
    if (map.horn_mode()) {
      u = sqrt(x);
    } else {
      const DC q = sqrt(x);
      if (abs_est(q) < 1e-300)
        u_inf = true;
      else
        u = neg(div(one, q));
    }
  }
  const auto& steps = map.steps();
  for (std::size_t k = steps.size(); k-- > 0;) {
    const ZipStep& st = steps[k];
    if (!u_inf && abs_est(u) > 1e299) u_inf = true;
    if (!u_inf) u = div(u, st.lambda);
    if (st.mu_finite) {
      const double vinf = st.vinf;
      if (u_inf) {
        u = dc(Cplx(vinf, 0.0));
        u_inf = false;
      } else if (abs_est(u) > 1e150) {
        u = div(dc(Cplx(vinf * vinf, 0.0)), add(div(one, u), dc(Cplx(vinf, 0.0))));
      } else {
        const DC den = {add(mul(u.re, vinf), dd(1.0)), mul(u.im, vinf)};
        if (abs_est(den) < 1e-300)
          u_inf = true;
        else
          u = div(mul(u, vinf * vinf), den);
      }
    }
    if (st.s != 0.0 && !u_inf) {
      const double s = st.s;
      if (abs(u).hi <= 1e-8 * s) {
        u = muli(sqrt(sub(dc(Cplx(s * s, 0.0)), mul(u, u))));
      } else {
        const DC sdc = dc(Cplx(s, 0.0));
        DC w = sqrt(mul(sub(u, sdc), add(u, sdc)));
        const DD dot = add(mul(w.re, u.re), mul(w.im, u.im));
        if (dot.hi < 0.0) w = neg(w);
        if (w.im.hi < -1e-12 * abs_est(w)) w = neg(w);
        u = w;
      }
    }
    if (st.mu_finite && !u_inf) {
      const double d = st.d;
      const DC den = add(dc(Cplx(d, 0.0)), u);
      if (abs_est(den) < 1e-300 * std::abs(d))
        u_inf = true;
      else
        u = mul(u, div(dc(Cplx(d, 0.0)), den));
    }
  }
  const DC b0 = dc(map.base0());
  const DC b1 = dc(map.base1());
  DC res;
  if (u_inf) {
    res = b0;
  } else {
    const DC t = div(u, map.lambda1());
    const DC t2 = mul(t, t);
    const DC den = mul(add(one, muli(t)), sub(one, muli(t)));
    res = (abs_est(den) < 1e-300) ? b0 : div(add(b1, mul(t2, b0)), den);
  }
  const Cplx r = demote(res);
  const Cplx pb = map.post_b();
  const Cplx pr = map.post_rot();
  if (pb == Cplx(0.0, 0.0) && pr == Cplx(1.0, 0.0)) return r;
  return pr * (r - pb) / (1.0 - std::conj(pb) * r);
}

}  // namespace detail
}  // namespace holoext
