// Tests for the disk-algebra DAG module: evaluation, peak functions, Mobius
// transforms, interpolating extensions, and the Cauchy-Riemann audit.
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "holoext/holo_fn.hpp"

using holoext::Cplx;
using holoext::EngineError;
using holoext::HoloPtr;
using holoext::NodeSet;
using holoext::RngStream;
using holoext::VecC;

TEST_SUITE("holo_fn") {

TEST_CASE("basic evaluation") {
  VecC zsq(3);
  zsq << 0, 0, 1;
  const HoloPtr f = holoext::poly(zsq);
  CHECK((*f)(Cplx(0, 1)).real() == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK((*f)(Cplx(0, 1)).imag() == doctest::Approx(0.0));

  const HoloPtr id = holoext::mobius(0.0, Cplx(1, 0));
  CHECK(std::abs((*id)(Cplx(0.3, 0.4)) - Cplx(0.3, 0.4)) <= 1e-15);

  // exp(-(1-z)) at 0 is e^{-1}
  VecC lin(2);
  lin << Cplx(-1, 0), Cplx(1, 0);
  const HoloPtr g = holoext::exp_of(holoext::poly(lin));
  CHECK(std::abs((*g)(0.0)) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));

  CHECK_THROWS_AS((*f)(Cplx(1.5, 0)), EngineError);
}

TEST_CASE("node sets validate separation") {
  CHECK_THROWS_AS(NodeSet({0.0, 0.0}), EngineError);
  CHECK_THROWS_AS(NodeSet({0.0, 1e-9}, 1e-6), EngineError);
  const NodeSet ok({0.0, holoext::kPi});
  CHECK(ok.min_separation() == doctest::Approx(holoext::kPi));
  // angles normalize into [0, 2pi)
  const NodeSet wrapped({-holoext::kPi / 2});
  CHECK(wrapped.angle(0) == doctest::Approx(1.5 * holoext::kPi));
}

TEST_CASE("peak function peaks exactly and is a strict contraction off S") {
  SUBCASE("single node") {
    const NodeSet S({0.0});
    const HoloPtr chi = holoext::peak_function(S);
    const Cplx at_node = (*chi)(Cplx(1, 0));
    CHECK(at_node.real() == 1.0);  // exact by the vanishing-factor snap
    CHECK(at_node.imag() == 0.0);
    CHECK(std::abs((*chi)(0.0)) ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  }
  SUBCASE("two nodes, grid margin") {
    const NodeSet S({0.0, holoext::kPi});
    const HoloPtr chi = holoext::peak_function(S);
    CHECK((*chi)(Cplx(1, 0)) == Cplx(1, 0));
    CHECK((*chi)(Cplx(-1, 0)) == Cplx(1, 0));
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const double r = (i + 1) / 200.0;
      for (int k = 0; k < 200; ++k) {
        const double th = 2 * holoext::kPi * k / 200;
        const Cplx z = std::polar(r, th);
        if (std::abs(z - Cplx(1, 0)) < 0.01) continue;
        if (std::abs(z - Cplx(-1, 0)) < 0.01) continue;
        worst = std::max(worst, std::abs((*chi)(z)));
      }
    }
    CHECK(worst < 1.0);
    CHECK(1.0 - worst > 1e-8);  // strictly positive margin
  }
  SUBCASE("modulus never exceeds 1 anywhere on the closed disk") {
    const NodeSet S({0.3, 2.0, 4.4});
    const HoloPtr chi = holoext::peak_function(S);
    RngStream rng(7, 1);
    for (int s = 0; s < 10000; ++s) {
      const Cplx z = std::polar(std::sqrt(rng.uniform01()),
                                rng.uniform(0, 2 * holoext::kPi));
      CHECK(std::abs((*chi)(z)) <= 1.0 + 1e-15);
    }
    // boundary points included
    for (int k = 0; k < 1000; ++k) {
      const Cplx z = std::polar(1.0, 2 * holoext::kPi * k / 1000);
      CHECK(std::abs((*chi)(z)) <= 1.0 + 1e-15);
    }
  }
  SUBCASE("principal branch bases stay in the right half plane") {
    const NodeSet S({0.0, holoext::kPi / 2});
    RngStream rng(7, 2);
    for (int s = 0; s < 10000; ++s) {
      const Cplx z = std::polar(std::sqrt(rng.uniform01()),
                                rng.uniform(0, 2 * holoext::kPi));
      for (int j = 0; j < S.size(); ++j) {
        const Cplx base = 1.0 - std::conj(S.point(j)) * z;
        CHECK(base.real() >= -1e-15);
      }
    }
  }
}

TEST_CASE("mobius transforms") {
  SUBCASE("fixes z0") {
    for (double a : {-0.5, -0.9, 0.3, 0.85}) {
      const Cplx z0 = std::polar(1.0, 0.7);
      CHECK(std::abs(holoext::mobius_apply(a, z0, z0) - z0) <= 1e-12);
    }
    CHECK(std::abs(holoext::mobius_apply(-0.5, Cplx(1, 0), Cplx(1, 0)) -
                   Cplx(1, 0)) <= 1e-15);
  }
  SUBCASE("inverse and boundary preservation") {
    const double a = 0.63;
    const Cplx z0 = std::polar(1.0, 2.1);
    RngStream rng(7, 3);
    for (int s = 0; s < 1000; ++s) {
      const Cplx z = std::polar(std::sqrt(rng.uniform01()),
                                rng.uniform(0, 2 * holoext::kPi));
      const Cplx back = holoext::mobius_apply(-a, z0, holoext::mobius_apply(a, z0, z));
      CHECK(std::abs(back - z) <= 1e-12);
    }
    for (int k = 0; k < 1000; ++k) {
      const Cplx z = std::polar(1.0, 2 * holoext::kPi * k / 1000);
      CHECK(std::abs(std::abs(holoext::mobius_apply(a, z0, z)) - 1.0) <= 1e-12);
    }
  }
  SUBCASE("a -> -1 concentrates images near z0") {
    const Cplx z0(1, 0);
    double prev = 1e9;
    for (double a : {-0.5, -0.9, -0.99}) {
      double worst = 0.0;
      for (int i = 0; i <= 40; ++i)
        for (int k = 0; k < 80; ++k) {
          const Cplx z = std::polar(0.5 * i / 40.0, 2 * holoext::kPi * k / 80);
          worst = std::max(worst, std::abs(holoext::mobius_apply(a, z0, z) - z0));
        }
      CHECK(worst < prev);
      prev = worst;
    }
    CHECK(prev < 0.05);  // at a = -0.99 the image hugs z0
  }
  SUBCASE("parameter validation") {
    CHECK_THROWS_AS(holoext::mobius(1.0, Cplx(1, 0)), EngineError);
    CHECK_THROWS_AS(holoext::mobius(0.5, Cplx(0.5, 0)), EngineError);
  }
}

TEST_CASE("lagrange extension") {
  SUBCASE("constant") {
    const NodeSet S({0.0});
    VecC v(1);
    v << Cplx(5, 0);
    const HoloPtr p = holoext::lagrange_extension(S, v);
    CHECK(std::abs((*p)(Cplx(0.3, -0.2)) - Cplx(5, 0)) <= 1e-14);
  }
  SUBCASE("identity through two nodes") {
    const NodeSet S({0.0, holoext::kPi});
    VecC v(2);
    v << Cplx(1, 0), Cplx(-1, 0);
    const HoloPtr p = holoext::lagrange_extension(S, v);
    RngStream rng(7, 4);
    for (int s = 0; s < 200; ++s) {
      const Cplx z = std::polar(std::sqrt(rng.uniform01()),
                                rng.uniform(0, 2 * holoext::kPi));
      CHECK(std::abs((*p)(z) - z) <= 1e-13);
    }
  }
  SUBCASE("three nodes, node residual") {
    const NodeSet S({0.0, holoext::kPi / 2, holoext::kPi});
    VecC v(3);
    v << Cplx(1, 0), Cplx(0, 0), Cplx(1, 0);
    const HoloPtr p = holoext::lagrange_extension(S, v);
    for (int j = 0; j < 3; ++j)
      CHECK(std::abs((*p)(S.point(j)) - v[j]) <= 1e-14);
  }
  SUBCASE("random data node residual stays tiny") {
    std::vector<double> ang;
    for (int j = 0; j < 9; ++j) ang.push_back(0.1 + 2 * holoext::kPi * j / 9);
    const NodeSet S(ang);
    RngStream rng(7, 5);
    VecC v(9);
    double scale = 0;
    for (int j = 0; j < 9; ++j) {
      v[j] = Cplx(rng.uniform(-3, 3), rng.uniform(-3, 3));
      scale = std::max(scale, std::abs(v[j]));
    }
    const HoloPtr p = holoext::lagrange_extension(S, v);
    for (int j = 0; j < 9; ++j)
      CHECK(std::abs((*p)(S.point(j)) - v[j]) <= 1e-12 * (1.0 + scale));
  }
  SUBCASE("size mismatch and node cap") {
    const NodeSet S({0.0, holoext::kPi});
    VecC v(1);
    v << Cplx(1, 0);
    CHECK_THROWS_AS(holoext::lagrange_extension(S, v), EngineError);
    std::vector<double> many;
    for (int j = 0; j < 13; ++j) many.push_back(2 * holoext::kPi * j / 13);
    VecC vm = VecC::Ones(13);
    CHECK_THROWS_AS(holoext::lagrange_extension(NodeSet(many), vm), EngineError);
  }
}

TEST_CASE("min supnorm extension") {
  SUBCASE("single node gives the constant") {
    const NodeSet S({0.0});
    VecC v(1);
    v << Cplx(1, 0);
    for (int deg : {0, 3, 8}) {
      auto [p, bound] = holoext::min_supnorm_extension(S, v, deg);
      CHECK(bound == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(std::abs((*p)(Cplx(0.2, 0.5)) - Cplx(1, 0)) <= 1e-9);
    }
  }
  SUBCASE("compatible values admit degree below node count") {
    const NodeSet S({0.0, holoext::kPi});
    VecC v(2);
    v << Cplx(1, 0), Cplx(1, 0);
    auto [p, bound] = holoext::min_supnorm_extension(S, v, 0);
    CHECK(bound == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs((*p)(Cplx(0.4, 0.1)) - Cplx(1, 0)) <= 1e-9);
  }
  SUBCASE("antipodal data recovers z") {
    const NodeSet S({0.0, holoext::kPi});
    VecC v(2);
    v << Cplx(1, 0), Cplx(-1, 0);
    auto [p, bound] = holoext::min_supnorm_extension(S, v, 1);
    CHECK(bound == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs((*p)(Cplx(0.3, 0.3)) - Cplx(0.3, 0.3)) <= 1e-9);
  }
  SUBCASE("bound is monotone in degree and at least max values") {
    const NodeSet S({0.2, 1.9, 3.4, 5.1});
    VecC v(4);
    v << Cplx(1, 0.3), Cplx(-0.5, 0.8), Cplx(0.1, -1.2), Cplx(0.7, 0.7);
    double vmax = 0;
    for (int j = 0; j < 4; ++j) vmax = std::max(vmax, std::abs(v[j]));
    double prev = 1e18;
    for (int deg = 3; deg <= 15; deg += 2) {
      auto [p, bound] = holoext::min_supnorm_extension(S, v, deg);
      CHECK(bound <= prev + 1e-12);
      CHECK(bound >= vmax - 1e-12);
      for (int j = 0; j < 4; ++j)
        CHECK(std::abs((*p)(S.point(j)) - v[j]) <= 1e-7 * (1 + vmax));
      prev = bound;
    }
    // with room to spare the bound approaches the interpolation constant 1
    // times max |values|
    CHECK(prev <= 1.6 * vmax);
  }
  SUBCASE("truly infeasible data is rejected") {
    const NodeSet S({0.0, holoext::kPi});
    VecC v(2);
    v << Cplx(1, 0), Cplx(-1, 0);  // cannot be matched by a constant
    CHECK_THROWS_AS(holoext::min_supnorm_extension(S, v, 0), EngineError);
  }
}

TEST_CASE("cauchy riemann residual") {
  SUBCASE("polynomial") {
    VecC c(4);
    c << 0, 0, 0, 1;
    CHECK(holoext::cr_residual(*holoext::poly(c), 40) <= 1e-8);
  }
  SUBCASE("anti-holomorphic witness") {
    const HoloPtr bad = holoext::callable(
        [](Cplx z) { return std::conj(z); }, false, "conjugate");
    CHECK(!bad->certified());
    const double r = holoext::cr_residual(*bad, 20);
    CHECK(r == doctest::Approx(2.0).epsilon(1e-6));
  }
  SUBCASE("peak function") {
    const NodeSet S({0.0});
    CHECK(holoext::cr_residual(*holoext::peak_function(S), 64) <= 1e-6);
  }
  SUBCASE("composite certified DAG") {
    const NodeSet S({0.0, 2.1});
    const HoloPtr chi = holoext::peak_function(S);
    const HoloPtr g = holoext::mobius(0.4, Cplx(1, 0));
    const HoloPtr f = holoext::product_of(
        {holoext::pow_int(chi, 3), holoext::compose(chi, g)});
    CHECK(f->certified());
    CHECK(holoext::cr_residual(*f, 40) <= 1e-6);
  }
}

TEST_CASE("composition guards the inner range") {
  VecC big(1);
  big << Cplx(3, 0);
  HoloPtr c3 = holoext::constant(Cplx(3, 0));
  CHECK_THROWS_AS(holoext::compose(holoext::identity_fn(), c3), EngineError);
}

}  // TEST_SUITE
