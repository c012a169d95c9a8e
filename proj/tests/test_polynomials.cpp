#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rsequil/detail/linalg.hpp"
#include "rsequil/errors.hpp"
#include "rsequil/polynomials.hpp"
#include "rsequil/roots.hpp"
#include "testutil.hpp"

using rsequil::cdouble;
using rsequil::Configuration;
using rsequil::CouplingParams;
using rsequil::Mode;
using namespace rsequil::polynomials;

namespace {
constexpr double kPi = std::numbers::pi;

CouplingParams trig(double g, double g1, double g2, double g3, double g4) {
  return {Mode::trigonometric, g, g1, g2, g3, g4};
}
CouplingParams rat(double g, double g1, double g2, double g3, double g4) {
  return {Mode::rational, g, g1, g2, g3, g4};
}
}  // namespace

TEST_CASE("coupling parameter validation") {
  CHECK_THROWS_AS(trig(0.0, 1, 1, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(trig(1, -0.5, 1, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(trig(1, 1, 1, 1, std::nan("")), std::invalid_argument);
  const auto c = trig(0.5, 0.25, 0.5, 0.75, 1.0);
  CHECK(c.ghat() == doctest::Approx(0.25 + 0.5 + 0.75 + 1.0 - 0.5));
}

TEST_CASE("aw parameter map") {
  const double h = std::log(2.0) / 2.0;
  const auto p = aw_params_from_couplings(trig(h, h, h, h, h));
  CHECK(p.q() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(p.a() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(p.b() == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(p.c() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(p.d() == doctest::Approx(-0.5).epsilon(1e-15));

  rsequil::detail::SplitMix64 rng(7);
  for (int i = 0; i < 20; ++i) {
    const auto c = testutil::draw_couplings(rng, Mode::trigonometric, 0.05, 5.0);
    const auto pp = aw_params_from_couplings(c);
    CHECK(pp.q() > 0.0);
    CHECK(pp.q() < 1.0);
    for (double v : {pp.a(), pp.b(), pp.c(), pp.d()}) {
      CHECK(std::abs(v) > 0.0);
      CHECK(std::abs(v) < 1.0);
    }
    CHECK(pp.a() > 0.0);
    CHECK(pp.b() < 0.0);
    CHECK(pp.c() > 0.0);
    CHECK(pp.d() < 0.0);
  }

  CHECK_THROWS_AS(aw_params_from_couplings(rat(1, 1, 1, 1, 1)),
                  rsequil::mode_mismatch);
}

TEST_CASE("aw param tuple validation") {
  CHECK_THROWS_AS(AWParams(1.5, 0.5, -0.5, 0.5, -0.5), std::invalid_argument);
  CHECK_THROWS_AS(AWParams(0.5, 1.5, -0.5, 0.5, -0.5), std::invalid_argument);
  CHECK_THROWS_AS(AWParams(0.5, 0.0, -0.5, 0.5, -0.5), std::invalid_argument);
  CHECK_THROWS_AS(WilsonParams(1, 2, 3, 0), std::invalid_argument);
  CHECK_THROWS_AS(WilsonParams(1, 2, -3, 4), std::invalid_argument);
}

TEST_CASE("aw_eval degree zero is monic 1") {
  const auto p = aw_params_from_couplings(trig(0.5, 0.3, 0.7, 0.4, 0.6));
  CHECK(aw_eval(p, 0, 0.3) == cdouble(1.0));
  CHECK(aw_eval(p, 0, cdouble(0.2, 1.5)) == cdouble(1.0));
}

TEST_CASE("aw_eval agrees with the factored form") {
  rsequil::detail::SplitMix64 rng(13);
  const auto c = trig(0.5, 0.3, 0.7, 0.4, 0.6);
  const auto p = aw_params_from_couplings(c);

  // real sample points, n = 1..4
  for (int n = 1; n <= 4; ++n) {
    const auto zeros = rsequil::roots::find_zeros_trig(c, n);
    for (int i = 0; i < 50; ++i) {
      const double x = rng.uniform(0.01, kPi / 2 - 0.01);
      const cdouble a = aw_eval(p, n, x);
      const cdouble b = aw_eval_factored(zeros, x);
      CHECK(std::abs(a - b) <= 1e-10 * (1.0 + std::abs(a)));
    }
  }

  // complex sample points with |Im x| <= 2g, n = 3
  const auto zeros3 = rsequil::roots::find_zeros_trig(c, 3);
  for (int i = 0; i < 20; ++i) {
    const cdouble x(rng.uniform(0.0, kPi / 2), rng.uniform(-1.0, 1.0));
    const cdouble a = aw_eval(p, 3, x);
    const cdouble b = aw_eval_factored(zeros3, x);
    CHECK(std::abs(a - b) <= 1e-10 * (1.0 + std::abs(a)));
  }

  // at a zero the factored form vanishes identically
  const cdouble at_zero = aw_eval_factored(zeros3, zeros3[1]);
  CHECK(std::abs(at_zero) <= 1e-12);
}

TEST_CASE("aw_eval_factored n=1 hand value") {
  const std::vector<double> z{0.6};
  const Configuration zeros(Mode::trigonometric, z);
  const cdouble v = aw_eval_factored(zeros, 0.0);
  CHECK(v.real() == doctest::Approx(2.0 * std::sin(0.6) * std::sin(0.6)).epsilon(1e-14));
  CHECK(v.real() == doctest::Approx(1.0 - std::cos(1.2)).epsilon(1e-14));
}

TEST_CASE("weight positivity and symmetry") {
  rsequil::detail::SplitMix64 rng(17);
  for (int draw = 0; draw < 20; ++draw) {
    const auto c = testutil::draw_couplings(rng, Mode::trigonometric, 0.05, 5.0);
    const auto p = aw_params_from_couplings(c);
    for (int i = 0; i < 100; ++i) {
      const double x = (i + 0.5) * (kPi / 2) / 100.0;
      CHECK(aw_weight(p, x) > 0.0);
    }
  }

  const AWParams p(0.4, 0.3, -0.6, 0.5, -0.2);
  const AWParams swapped(0.4, 0.5, -0.2, 0.3, -0.6);  // (a,b,c,d) -> (c,d,a,b)
  for (double x : {0.2, 0.7, 1.3}) {
    CHECK(aw_weight(p, x) == doctest::Approx(aw_weight(swapped, x)).epsilon(1e-13));
  }

  CHECK_THROWS_AS(aw_weight(p, 0.0), rsequil::chamber_violation);
  CHECK_THROWS_AS(aw_weight(p, kPi / 2), rsequil::chamber_violation);
  CHECK_THROWS_AS(aw_weight(p, -0.1), rsequil::chamber_violation);
}

TEST_CASE("quadrature orthogonality of the series polynomials") {
  const auto p = aw_params_from_couplings(trig(0.5, 0.3, 0.7, 0.4, 0.6));
  const int m = 512;
  const double h = kPi / 2 / m;
  double dot12 = 0.0, n1 = 0.0, n2 = 0.0;
  for (int i = 0; i < m; ++i) {
    const double x = (i + 0.5) * h;
    const double w = aw_weight(p, x);
    const double p1 = aw_eval(p, 1, x).real();
    const double p2 = aw_eval(p, 2, x).real();
    dot12 += p1 * p2 * w * h;
    n1 += p1 * p1 * w * h;
    n2 += p2 * p2 * w * h;
  }
  CHECK(std::abs(dot12) / std::sqrt(n1 * n2) < 1e-8);
}

TEST_CASE("gram-schmidt oracle") {
  const auto p = aw_params_from_couplings(trig(0.5, 0.3, 0.7, 0.4, 0.6));
  const auto coeffs = gram_schmidt_oracle(p, 3);

  REQUIRE(coeffs.size() == 4);
  CHECK(coeffs[0] == std::vector<double>{1.0});
  for (size_t k = 0; k < coeffs.size(); ++k) CHECK(coeffs[k].back() == 1.0);

  // p1 orthogonality against 1, re-derived by quadrature
  {
    const int m = 512;
    const double h = kPi / 2 / m;
    double dot = 0.0;
    for (int i = 0; i < m; ++i) {
      const double x = (i + 0.5) * h;
      dot += cosine_series_eval(coeffs[1], x) * aw_weight(p, x) * h;
    }
    CHECK(std::abs(dot) < 1e-10);
  }

  // oracle polynomials match the series evaluation pointwise
  rsequil::detail::SplitMix64 rng(19);
  for (int n = 1; n <= 3; ++n) {
    for (int i = 0; i < 50; ++i) {
      const double x = rng.uniform(0.01, kPi / 2 - 0.01);
      const double oracle = cosine_series_eval(coeffs[static_cast<size_t>(n)], x);
      const double series = aw_eval(p, n, x).real();
      CHECK(std::abs(oracle - series) <= 1e-8 * (1.0 + std::abs(series)));
    }
  }

  CHECK_THROWS_AS(gram_schmidt_oracle(p, 5), std::invalid_argument);
  CHECK_THROWS_AS(gram_schmidt_oracle(p, 2, 100), std::invalid_argument);
}

TEST_CASE("condition estimator flags singular gram matrices") {
  // the quadrature-failure guard rests on this estimator
  const std::vector<double> good{2.0, 0.5, 0.5, 1.0};
  CHECK(rsequil::detail::sym_condition(good, 2) < 10.0);
  const std::vector<double> bad{1.0, 1.0, 1.0, 1.0 + 1e-14};
  CHECK(rsequil::detail::sym_condition(bad, 2) > 1e12);
  const std::vector<double> indef{1.0, 0.0, 0.0, -1.0};
  CHECK(std::isinf(rsequil::detail::sym_condition(indef, 2)));
}

TEST_CASE("aw eigenvalue") {
  const auto c = trig(1, 1, 1, 1, 1);
  CHECK(aw_eigenvalue(c, 0) == 0.0);
  CHECK(aw_eigenvalue(c, 1) ==
        doctest::Approx((std::cosh(5.0) - std::cosh(3.0)) / 2.0).epsilon(1e-15));
  CHECK_THROWS_AS(aw_eigenvalue(rat(1, 1, 1, 1, 1), 1), rsequil::mode_mismatch);

  // strictly increasing in n for ghat >= 0
  for (int n = 0; n < 20; ++n)
    CHECK(aw_eigenvalue(c, n + 1) > aw_eigenvalue(c, n));
  // ghat < 0: increasing once 2ng + ghat > |ghat|
  const auto cneg = trig(3.0, 0.2, 0.2, 0.2, 0.2);  // ghat = -2.2
  REQUIRE(cneg.ghat() < 0.0);
  for (int n = 1; n < 20; ++n) {
    if (2.0 * n * cneg.g() + cneg.ghat() > std::abs(cneg.ghat()))
      CHECK(aw_eigenvalue(cneg, n + 1) > aw_eigenvalue(cneg, n));
  }
}

TEST_CASE("trigonometric difference operator") {
  const auto c = trig(0.4, 0.3, 0.7, 0.5, 0.6);
  const auto p = aw_params_from_couplings(c);

  // constants are annihilated
  auto one = [](cdouble) { return cdouble(1.0); };
  for (double x : {0.3, 0.8, 1.2})
    CHECK(std::abs(aw_difference_apply(c, one, x)) < 1e-13);

  // eigen-equation residual through the double-precision operator
  rsequil::detail::SplitMix64 rng(23);
  for (int n = 1; n <= 8; ++n) {
    auto f = [&](cdouble z) { return aw_eval(p, n, z); };
    const double en = aw_eigenvalue(c, n);
    for (int i = 0; i < 20; ++i) {
      const double x = rng.uniform(0.1, kPi / 2 - 0.1);
      const cdouble lhs = aw_difference_apply(c, f, x);
      const cdouble rhs = en * f(x);
      CHECK(std::abs(lhs - rhs) <= 1e-9 * (1.0 + std::abs(f(x))));
    }
  }

  CHECK_THROWS_AS(aw_difference_apply(c, one, 0.0), rsequil::singularity_error);
  // sin(2x +- ig) never vanishes for real x and positive g
  CHECK_NOTHROW(aw_difference_apply(c, one, kPi / 4));
}

TEST_CASE("wide-precision difference-equation residual, strong couplings") {
  rsequil::detail::SplitMix64 rng(29);
  for (int draw = 0; draw < 3; ++draw) {
    const auto c = testutil::draw_couplings(rng, Mode::trigonometric, 0.05, 5.0);
    for (int n : {1, 4, 8}) {
      for (int i = 0; i < 5; ++i) {
        const double x = rng.uniform(0.1, kPi / 2 - 0.1);
        CHECK(aw_diffeq_residual(c, n, x) < 1e-9);
      }
    }
    CHECK(aw_diffeq_residual(c, 0, 0.7) == 0.0);
  }
  for (int draw = 0; draw < 3; ++draw) {
    const auto c = testutil::draw_couplings(rng, Mode::rational, 0.05, 5.0);
    for (int n : {1, 4, 8}) {
      for (int i = 0; i < 5; ++i) {
        const double x = rng.uniform(0.1, 10.0);
        CHECK(wilson_diffeq_residual(c, n, x) < 1e-9);
      }
    }
  }
}

TEST_CASE("wilson evaluation") {
  CHECK(wilson_eval(WilsonParams(1, 2, 3, 4), 0, 1.7) == cdouble(1.0));

  // n = 1 closed form x^2 - e3/e1
  rsequil::detail::SplitMix64 rng(31);
  for (int draw = 0; draw < 20; ++draw) {
    const double a = testutil::logu(rng, 0.1, 5), b = testutil::logu(rng, 0.1, 5);
    const double c = testutil::logu(rng, 0.1, 5), d = testutil::logu(rng, 0.1, 5);
    const WilsonParams p(a, b, c, d);
    const double e1 = a + b + c + d;
    const double e3 = a * b * c + a * b * d + a * c * d + b * c * d;
    const double x = rng.uniform(0.1, 4.0);
    const cdouble got = wilson_eval(p, 1, x);
    const double expect = x * x - e3 / e1;
    CHECK(std::abs(got - expect) <= 1e-12 * (1.0 + std::abs(expect)));
    // equivalent form via the prefactor display
    const double alt = x * x + a * a - (a + b) * (a + c) * (a + d) / e1;
    CHECK(alt == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("wilson eigenvalue") {
  const auto c = rat(1, 1, 1, 1, 1);
  CHECK(wilson_eigenvalue(c, 0) == 0.0);
  CHECK(wilson_eigenvalue(c, 1) == doctest::Approx(-4.0).epsilon(1e-15));
  CHECK_THROWS_AS(wilson_eigenvalue(trig(1, 1, 1, 1, 1), 1), rsequil::mode_mismatch);

  // rescaling covariance: E_n(g, g_r) = g^2 E_n(1, g_r/g)
  rsequil::detail::SplitMix64 rng(37);
  for (int draw = 0; draw < 10; ++draw) {
    const auto cc = testutil::draw_couplings(rng, Mode::rational, 0.1, 4.0);
    const auto unit = rat(1.0, cc.g1() / cc.g(), cc.g2() / cc.g(),
                          cc.g3() / cc.g(), cc.g4() / cc.g());
    for (int n : {1, 3, 7}) {
      CHECK(wilson_eigenvalue(cc, n) ==
            doctest::Approx(cc.g() * cc.g() * wilson_eigenvalue(unit, n))
                .epsilon(1e-12));
    }
  }
}

TEST_CASE("rational difference operator") {
  const auto c = rat(1.0, 1.0, 2.0, 3.0, 4.0);

  auto one = [](cdouble) { return cdouble(1.0); };
  for (double x : {0.4, 1.7, 6.0})
    CHECK(std::abs(wilson_difference_apply(c, one, x)) < 1e-13);
  CHECK_THROWS_AS(wilson_difference_apply(c, one, 0.0), rsequil::singularity_error);

  // n = 1: both sides are explicit low-degree expressions
  rsequil::detail::SplitMix64 rng(41);
  const double e1 = 10.0, e3 = 50.0;
  auto p1 = [&](cdouble z) { return z * z - e3 / e1; };
  const double en = wilson_eigenvalue(c, 1);
  for (int i = 0; i < 20; ++i) {
    const double x = rng.uniform(0.5, 8.0);
    const cdouble lhs = wilson_difference_apply(c, p1, x);
    const cdouble rhs = en * p1(x);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
  }

  // series route, n <= 8, moderate couplings
  rsequil::detail::SplitMix64 rng2(43);
  const auto c2 = rat(0.4, 0.3, 0.6, 0.5, 0.7);
  const WilsonParams ps(c2.g1() / c2.g(), c2.g2() / c2.g(), c2.g3() / c2.g(),
                        c2.g4() / c2.g());
  for (int n = 1; n <= 8; ++n) {
    auto f = [&](cdouble z) { return wilson_eval(ps, n, z / c2.g()); };
    const double e = wilson_eigenvalue(c2, n);
    for (int i = 0; i < 20; ++i) {
      const double x = rng2.uniform(0.1, 10.0);
      const cdouble lhs = wilson_difference_apply(c2, f, x);
      CHECK(std::abs(lhs - e * f(x)) <= 1e-9 * (1.0 + std::abs(f(x))));
    }
  }
}

TEST_CASE("monic normalization consistency across modes") {
  // E_0 = 0 exactly in both modes
  CHECK(aw_eigenvalue(trig(0.7, 0.2, 0.9, 0.4, 1.1), 0) == 0.0);
  CHECK(wilson_eigenvalue(rat(0.7, 0.2, 0.9, 0.4, 1.1), 0) == 0.0);
  CHECK(wilson_eval(WilsonParams(0.2, 0.9, 0.4, 1.1), 0, 2.2) == cdouble(1.0));
}
