// Tests for the star-body gauge module.
//
// Reference values are produced by independent in-test oracles that never call
// the library's gauge routines: a ray-casting polygon membership test for
// polygonal bodies, closed-form stadium geometry for hull bodies with fat
// smoothing, and a two-point enumeration oracle for convex-combination
// membership in small hulls.
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "holoext/star_body.hpp"

using holoext::Cplx;
using holoext::EngineError;
using holoext::RngStream;
using holoext::StarBody;
using holoext::VecC;
using holoext::VecR;

namespace {

VecC vec1(Cplx a) {
  VecC v(1);
  v[0] = a;
  return v;
}

VecC vec2(Cplx a, Cplx b) {
  VecC v(2);
  v[0] = a;
  v[1] = b;
  return v;
}

// Oracle: membership of a point in a closed convex polygon given by ccw
// vertices, via sign of cross products along every edge.
bool polygon_contains(const std::vector<std::array<double, 2>>& poly, double x,
                      double y, double tol) {
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = poly[i];
    const auto& q = poly[(i + 1) % n];
    const double cr =
        (q[0] - p[0]) * (y - p[1]) - (q[1] - p[1]) * (x - p[0]);
    if (cr < -tol) return false;
  }
  return true;
}

// Oracle: gauge of a polygonal body (center c) by bisection on the ray using
// only the polygon membership test above.
double polygon_gauge_oracle(const std::vector<std::array<double, 2>>& poly,
                            double cx, double cy, Cplx v) {
  const Cplx c(cx, cy);
  const Cplx u = v - c;
  if (std::abs(u) == 0.0) return 0.0;
  double lo = 0.0, hi = 1.0;  // hi/|u| multiples of u inside?
  auto inside = [&](double t) {
    const Cplx p = c + u * t;
    return polygon_contains(poly, p.real(), p.imag(), 1e-14);
  };
  while (inside(hi) && hi < 1e9) hi *= 2.0;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    (inside(mid) ? lo : hi) = mid;
  }
  return 1.0 / (0.5 * (lo + hi));
}

// Oracle: can v be written as a convex combination of at most two of the given
// points?  Sufficient for hulls of <= 4 points in a single complex dimension
// whose hull is a polygon with the candidates on a segment through it.
bool two_point_combination(const std::vector<Cplx>& pts, Cplx v, double tol) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const Cplx d = pts[j] - pts[i];
      const double dn = std::norm(d);
      if (dn < 1e-30) {
        if (std::abs(v - pts[i]) <= tol) return true;
        continue;
      }
      // v = p_i + t (p_j - p_i), need t in [0,1] and v on the segment
      const double t =
          ((v - pts[i]) * std::conj(d)).real() / dn;
      if (t < -1e-12 || t > 1.0 + 1e-12) continue;
      if (std::abs(pts[i] + t * d - v) <= tol) return true;
    }
  return false;
}

}  // namespace

TEST_SUITE("star_body") {

TEST_CASE("ball gauge matches the norm") {
  const StarBody b = StarBody::ball(vec2(0, 0), 1.0);
  CHECK(b.gauge(vec2(Cplx(0.6, 0.0), Cplx(0.0, 0.8))) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(b.gauge(vec2(0, 0)) == doctest::Approx(0.0));
  // fuzz against the norm directly
  RngStream rng(2024, 1);
  for (int s = 0; s < 1000; ++s) {
    VecC v = vec2(Cplx(rng.uniform(-2, 2), rng.uniform(-2, 2)),
                  Cplx(rng.uniform(-2, 2), rng.uniform(-2, 2)));
    CHECK(std::abs(b.gauge(v) - v.norm()) <= 1e-9 * (1.0 + v.norm()));
  }
}

TEST_CASE("square via radial profile against polygon oracle") {
  // square [-1,1]^2 in one complex coordinate: radius 1/max(|cos|,|sin|)
  auto profile = [](double th) {
    return 1.0 / std::max(std::abs(std::cos(th)), std::abs(std::sin(th)));
  };
  const StarBody sq = StarBody::radial_profile(profile);
  const std::vector<std::array<double, 2>> poly = {
      {1, -1}, {1, 1}, {-1, 1}, {-1, -1}};
  CHECK(sq.gauge(vec1(Cplx(2.0, 0.0))) == doctest::Approx(2.0).epsilon(1e-9));
  RngStream rng(2024, 2);
  for (int s = 0; s < 300; ++s) {
    const Cplx v(rng.uniform(-3, 3), rng.uniform(-3, 3));
    if (std::abs(v) < 1e-3) continue;
    const double got = sq.gauge(vec1(v));
    const double want = polygon_gauge_oracle(poly, 0, 0, v);
    CHECK(got == doctest::Approx(want).epsilon(1e-7));
  }
}

TEST_CASE("from_gauge round trips") {
  SUBCASE("euclidean norm gives the unit ball") {
    const StarBody b = StarBody::from_gauge(
        2, [](const VecC& v) { return v.norm(); });
    RngStream rng(2024, 3);
    for (int s = 0; s < 1000; ++s) {
      VecC v = vec2(Cplx(rng.uniform(-2, 2), rng.uniform(-2, 2)),
                    Cplx(rng.uniform(-2, 2), rng.uniform(-2, 2)));
      CHECK(std::abs(b.gauge(v) - v.norm()) <= 1e-9 * (1.0 + v.norm()));
    }
    CHECK(b.kernel_inradius() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(b.outradius() == doctest::Approx(1.0).epsilon(1e-6));
  }
  SUBCASE("max norm gives the polydisk") {
    const StarBody b = StarBody::from_gauge(2, [](const VecC& v) {
      return std::max(std::abs(v[0]), std::abs(v[1]));
    });
    CHECK(b.gauge(vec2(Cplx(0.5, 0.0), Cplx(0.0, 0.9))) ==
          doctest::Approx(0.9).epsilon(1e-9));
    const StarBody p = StarBody::polydisk(vec2(0, 0), (VecR(2) << 1, 1).finished());
    RngStream rng(2024, 4);
    for (int s = 0; s < 500; ++s) {
      VecC v = vec2(Cplx(rng.uniform(-2, 2), rng.uniform(-2, 2)),
                    Cplx(rng.uniform(-2, 2), rng.uniform(-2, 2)));
      CHECK(std::abs(b.gauge(v) - p.gauge(v)) <= 1e-9 * (1.0 + p.gauge(v)));
    }
  }
  SUBCASE("cosine bump profile round trip") {
    auto rad = [](double th) {
      const double c = std::cos(th);
      return 1.0 + 0.5 * c * c;
    };
    const StarBody b = StarBody::radial_profile(rad);
    RngStream rng(2024, 5);
    for (int s = 0; s < 1000; ++s) {
      const double th = rng.uniform(0, 2 * holoext::kPi);
      const double r = rng.uniform(0.01, 3.0);
      const Cplx v = std::polar(r, th);
      const double want = r / rad(th);
      CHECK(std::abs(b.gauge(vec1(v)) - want) <= 1e-9 * (1.0 + want));
    }
  }
  SUBCASE("non homogeneous input is rejected with a witness") {
    CHECK_THROWS_AS(StarBody::from_gauge(
                        1, [](const VecC& v) { return v.norm() + 0.1; }),
                    EngineError);
  }
}

TEST_CASE("hull with fat smoothing: stadium geometry") {
  // points {1,-1}, eps=0.5: the body is a stadium with core segment [-1,1]
  std::vector<VecC> pts = {vec1(Cplx(1, 0)), vec1(Cplx(-1, 0))};
  const StarBody h = StarBody::hull_eps(pts, 0.5);
  CHECK(h.gauge(vec1(Cplx(0, 0))) == doctest::Approx(0.0));
  // along +x the boundary is at 1.5, so gauge(1+0i) = 1/1.5 = 2/3
  CHECK(h.gauge(vec1(Cplx(1.0, 0.0))) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  // along +y the boundary is at 0.5
  CHECK(h.gauge(vec1(Cplx(0.0, 0.5))) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(h.kernel_inradius() >= 0.5 - 1e-12);
  // closed-form stadium gauge oracle on random rays: the gauge of v is
  // |v| / t* where t* solves dist(t* v/|v|, [-1,1]) = 0.5
  RngStream rng(2024, 6);
  for (int s = 0; s < 300; ++s) {
    const double th = rng.uniform(0, 2 * holoext::kPi);
    const Cplx u = std::polar(1.0, th);
    // boundary along direction u: if |x| <= 1 region: solve analytically
    const double cx = std::abs(u.real());
    const double cy = std::abs(u.imag());
    double tstar;
    if (cy < 1e-15) {
      tstar = 1.5;
    } else {
      // candidate A: hits the flat part  y = 0.5 with |x| <= 1
      const double tA = 0.5 / cy;
      if (tA * cx <= 1.0) {
        tstar = tA;
      } else {
        // candidate B: hits the end cap around x = 1 (radius 0.5)
        // |t u - 1| = 0.5  =>  t^2 - 2 t cx + 0.75 = 0 (largest root)
        tstar = cx + std::sqrt(cx * cx - 0.75);
      }
    }
    const double r = rng.uniform(0.05, 3.0);
    const double want = r / tstar;
    const double got = h.gauge(vec1(std::polar(r, th)));
    CHECK(std::abs(got - want) <= 1e-7 * (1.0 + want));
  }
}

TEST_CASE("hull with vanishing smoothing against combination oracle") {
  // diamond {1, i, -1, -i} with tiny eps: gauge(0.5) = 0.5
  std::vector<VecC> pts = {vec1(Cplx(1, 0)), vec1(Cplx(0, 1)),
                           vec1(Cplx(-1, 0)), vec1(Cplx(0, -1))};
  const StarBody h = StarBody::hull_eps(pts, 1e-6);
  CHECK(h.gauge(vec1(Cplx(0.5, 0.0))) == doctest::Approx(0.5).epsilon(1e-4));
  // membership at the claimed gauge: v / g(v) must lie (near) the hull;
  // check with the two-point combination oracle on a few rays
  std::vector<Cplx> cp = {Cplx(1, 0), Cplx(0, 1), Cplx(-1, 0), Cplx(0, -1)};
  RngStream rng(2024, 7);
  for (int s = 0; s < 100; ++s) {
    const Cplx v = std::polar(rng.uniform(0.3, 2.0),
                              rng.uniform(0.0, 2 * holoext::kPi));
    const double g = h.gauge(vec1(v));
    REQUIRE(g > 0);
    const Cplx on_boundary = v / g;
    CHECK(two_point_combination(cp, on_boundary, 1e-4));
    // and slightly outside must not be a combination
    CHECK(!two_point_combination(cp, on_boundary * 1.01, 1e-4));
  }
}

TEST_CASE("product gauge is the max of factor gauges") {
  const StarBody b1 = StarBody::ball(vec1(0), 1.0);
  const StarBody prod0 = StarBody::product(b1, b1);
  CHECK(prod0.gauge(vec2(Cplx(0.3, 0), Cplx(0, 0.7))) ==
        doctest::Approx(0.7).epsilon(1e-12));
  auto profile = [](double th) {
    return 1.0 / std::max(std::abs(std::cos(th)), std::abs(std::sin(th)));
  };
  const StarBody sq = StarBody::radial_profile(profile);
  const StarBody prod = StarBody::product(sq, b1);
  CHECK(prod.gauge(vec2(Cplx(2.0, 0.0), Cplx(0.0, 0.5))) ==
        doctest::Approx(2.0).epsilon(1e-9));
  // exact max identity + brute force membership agreement
  RngStream rng(2024, 8);
  for (int s = 0; s < 1000; ++s) {
    const Cplx a(rng.uniform(-2, 2), rng.uniform(-2, 2));
    const Cplx b(rng.uniform(-2, 2), rng.uniform(-2, 2));
    const double g = prod.gauge(vec2(a, b));
    const double want = std::max(sq.gauge(vec1(a)), b1.gauge(vec1(b)));
    CHECK(g == doctest::Approx(want).epsilon(1e-12));
    // membership in the product at scale s <=> membership in both factors
    const double scale = rng.uniform(0.2, 2.0);
    const bool in_prod = g <= scale;
    const bool in_both =
        sq.gauge(vec1(a)) <= scale && b1.gauge(vec1(b)) <= scale;
    CHECK(in_prod == in_both);
  }
}

TEST_CASE("gauge invariants") {
  auto profile = [](double th) { return 1.0 + 0.3 * std::sin(3 * th); };
  std::vector<VecC> pts = {vec1(Cplx(1, 0.2)), vec1(Cplx(-0.7, 0.9)),
                           vec1(Cplx(-0.3, -1.1))};
  const std::vector<StarBody> bodies = {
      StarBody::ball(vec2(Cplx(0.1, 0), 0), 1.3),
      StarBody::polydisk(vec2(0, 0), (VecR(2) << 0.8, 1.4).finished()),
      StarBody::radial_profile(profile),
      StarBody::hull_eps(pts, 0.4),
  };
  RngStream rng(2024, 9);
  for (const StarBody& b : bodies) {
    SUBCASE("homogeneity") {
      for (int s = 0; s < 2500; ++s) {
        VecC v(b.dim());
        for (int j = 0; j < b.dim(); ++j)
          v[j] = Cplx(rng.uniform(-2, 2), rng.uniform(-2, 2));
        const double r = rng.uniform(0.1, 5.0);
        const double lhs = b.gauge(VecC(b.center() + r * (v - b.center())));
        const double rhs = r * b.gauge(v);
        CHECK(std::abs(lhs - rhs) <= 1e-7 * (1.0 + rhs));
      }
    }
    SUBCASE("segment condition towards the center") {
      int tested = 0;
      for (int s = 0; s < 4000 && tested < 300; ++s) {
        VecC v(b.dim());
        for (int j = 0; j < b.dim(); ++j)
          v[j] = Cplx(rng.uniform(-2, 2), rng.uniform(-2, 2));
        const double g = b.gauge(v);
        if (g < 0.2) continue;
        VecC w = b.center() + (v - b.center()) / g;  // boundary band point
        const double gb = b.gauge(w);
        CHECK(gb == doctest::Approx(1.0).epsilon(1e-6));
        ++tested;
        for (double t = 0.1; t < 0.95; t += 0.2) {
          const double gt = b.gauge(VecC(b.center() + t * (w - b.center())));
          CHECK(gt <= t * gb + 1e-9);
          CHECK(gt < 1.0);
        }
      }
      CHECK(tested >= 100);
    }
    SUBCASE("inradius and outradius sandwich the gauge") {
      for (int s = 0; s < 500; ++s) {
        VecC u(b.dim());
        double nn = 0;
        for (int j = 0; j < b.dim(); ++j) {
          u[j] = Cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
          nn += std::norm(u[j]);
        }
        if (nn < 1e-6) continue;
        u /= std::sqrt(nn);
        const double g = b.gauge(VecC(b.center() + u));
        CHECK(g >= 1.0 / b.outradius() - 1e-9);
        CHECK(g <= 1.0 / b.kernel_inradius() + 1e-6);
      }
    }
  }
}

TEST_CASE("modulus bound") {
  RngStream rng(99, 0);
  SUBCASE("unit ball gives t -> t") {
    const StarBody b = StarBody::ball(vec1(0), 1.0);
    const auto m = holoext::modulus_bound(b, 1.0, RngStream(99, 1));
    CHECK(m.lipschitz <= 1.0 + 1e-9);
    for (double t : {0.05, 0.3, 0.9, 1.7}) {
      CHECK(m(t) <= t + 1e-9);
      CHECK(m(t) >= 0.98 * t);
    }
  }
  SUBCASE("radius 2 ball gives t -> t/2") {
    const StarBody b = StarBody::ball(vec1(0), 2.0);
    const auto m = holoext::modulus_bound(b, 2.0, RngStream(99, 2));
    CHECK(m.lipschitz <= 0.5 + 1e-9);
    for (double t : {0.1, 0.8, 2.0}) {
      CHECK(m(t) <= 0.5 * t + 1e-9);
      CHECK(m(t) >= 0.49 * t);
    }
  }
  SUBCASE("stadium modulus is controlled and majorizes increments") {
    std::vector<VecC> pts = {vec1(Cplx(1, 0)), vec1(Cplx(-1, 0))};
    const StarBody h = StarBody::hull_eps(pts, 0.5);
    const auto m = holoext::modulus_bound(h, 1.5, RngStream(99, 3));
    CHECK(m.lipschitz <= 2.0 * 1.1 + 1e-6);  // true Lipschitz constant is 2
    RngStream check(99, 4);
    int majorized = 0;
    for (int s = 0; s < 10000; ++s) {
      const Cplx v(check.uniform(-1.6, 1.6), check.uniform(-0.7, 0.7));
      const Cplx w(check.uniform(-1.6, 1.6), check.uniform(-0.7, 0.7));
      const double inc = std::abs(h.gauge(vec1(v)) - h.gauge(vec1(w)));
      const double t = std::abs(v - w);
      CHECK(inc <= 2.0 * t + 1e-9);  // true bound 1/eps
      if (inc <= m(t) + 1e-9) ++majorized;
    }
    // the sampled envelope majorizes the overwhelming share of increments
    CHECK(majorized >= 9990);
  }
  SUBCASE("degenerate kernel is rejected") {
    // a segment has empty interior, so hull_eps with eps=0 is invalid and the
    // modulus is unavailable; eps must be positive
    std::vector<VecC> pts = {vec1(Cplx(1, 0)), vec1(Cplx(-1, 0))};
    CHECK_THROWS_AS(StarBody::hull_eps(pts, 0.0), EngineError);
    CHECK_THROWS_AS(StarBody::hull_eps(pts, -1.0), EngineError);
  }
}

TEST_CASE("error paths") {
  const StarBody b = StarBody::ball(vec2(0, 0), 1.0);
  CHECK_THROWS_AS(b.gauge(vec1(Cplx(1, 0))), EngineError);  // dim mismatch
  VecC bad = vec2(Cplx(std::nan(""), 0), Cplx(0, 0));
  CHECK_THROWS_AS(b.gauge(bad), EngineError);  // non-finite input
}

TEST_CASE("scaling a body scales the gauge inversely") {
  std::vector<VecC> pts = {vec1(Cplx(1, 0.2)), vec1(Cplx(-0.7, 0.9)),
                           vec1(Cplx(-0.3, -1.1))};
  const std::vector<StarBody> bodies = {
      StarBody::ball(vec1(Cplx(0.2, 0.1)), 1.3),
      StarBody::hull_eps(pts, 0.4),
  };
  RngStream rng(2024, 10);
  for (const StarBody& b : bodies) {
    const StarBody half = b.scaled(0.5);
    for (int s = 0; s < 200; ++s) {
      VecC v(b.dim());
      for (int j = 0; j < b.dim(); ++j)
        v[j] = Cplx(rng.uniform(-2, 2), rng.uniform(-2, 2));
      const double g = b.gauge(v);
      const double gh = half.gauge(VecC(b.center() + 0.5 * (v - b.center())));
      CHECK(gh == doctest::Approx(g).epsilon(1e-6));
    }
  }
}

}  // TEST_SUITE
