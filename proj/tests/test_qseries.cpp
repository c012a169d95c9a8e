#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "rsequil/detail/rng.hpp"
#include "rsequil/errors.hpp"
#include "rsequil/qseries.hpp"

using rsequil::cdouble;
using namespace rsequil::qseries;

namespace {

TerminatingSeriesSpec qspec(int n, std::vector<cdouble> up, std::vector<cdouble> lo,
                            double q, cdouble z) {
  TerminatingSeriesSpec s;
  s.n = n;
  s.upper = std::move(up);
  s.lower = std::move(lo);
  s.basis = TerminatingSeriesSpec::Basis::q_series;
  s.q = q;
  s.z = z;
  return s;
}

TerminatingSeriesSpec fspec(int n, std::vector<cdouble> up, std::vector<cdouble> lo,
                            cdouble z) {
  TerminatingSeriesSpec s;
  s.n = n;
  s.upper = std::move(up);
  s.lower = std::move(lo);
  s.basis = TerminatingSeriesSpec::Basis::ordinary;
  s.z = z;
  return s;
}

}  // namespace

TEST_CASE("qpochhammer basics") {
  CHECK(qpochhammer(cdouble(3.7, -1.2), 0.3, 0) == cdouble(1.0));
  CHECK(qpochhammer(0.5, 0.25, 2).real() == doctest::Approx(0.4375).epsilon(1e-15));
  // a = q^{-2} with q = 0.5: the factor (1 - a q^2) vanishes identically
  CHECK(std::abs(qpochhammer(4.0, 0.5, 3)) == 0.0);
}

TEST_CASE("qpochhammer recurrence") {
  rsequil::detail::SplitMix64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const cdouble a(rng.uniform(-2, 2), rng.uniform(-2, 2));
    const double q = rng.uniform(0.05, 0.95);
    for (int k = 0; k <= 10; ++k) {
      const cdouble lhs = qpochhammer(a, q, k + 1);
      const cdouble rhs = qpochhammer(a, q, k) * (1.0 - a * std::pow(q, k));
      CHECK(std::abs(lhs - rhs) <= 1e-14 * (1.0 + std::abs(lhs)));
    }
  }
}

TEST_CASE("qpochhammer q^{-n} truncation") {
  // q = 1/2: powers are exact in binary, so the terminating factor vanishes
  // exactly once k exceeds n
  for (int n = 0; n <= 10; ++n) {
    const double q = 0.5;
    const cdouble a = std::pow(q, -n);
    for (int k = 0; k <= 10; ++k) {
      const double mag = std::abs(qpochhammer(a, q, k));
      if (k > n) {
        CHECK(mag == 0.0);
      } else {
        CHECK(mag > 0.0);
      }
    }
  }
  // generic q: the same factor vanishes to rounding
  for (int n = 1; n <= 10; ++n) {
    const double q = 0.6;
    const double ref = std::abs(qpochhammer(std::pow(q, -n), q, n));
    const double mag = std::abs(qpochhammer(std::pow(q, -n), q, n + 1));
    CHECK(mag <= 1e-11 * ref);
  }
}

TEST_CASE("qpochhammer_inf") {
  CHECK(qpochhammer_inf(0.0, 0.5).real() == 1.0);
  CHECK(std::abs(qpochhammer_inf(1.0, 0.5)) == 0.0);
  // Euler product (1/2;1/2)_inf
  CHECK(qpochhammer_inf(0.5, 0.5).real() ==
        doctest::Approx(0.2887880950866024).epsilon(1e-14));
  CHECK_THROWS_AS(qpochhammer_inf(0.5, 1.0), rsequil::error);
  CHECK_THROWS_AS(qpochhammer_inf(0.5, 0.0), rsequil::error);
  CHECK_THROWS_AS(qpochhammer_inf(0.5, 1.2), rsequil::error);
  CHECK_THROWS_AS(qpochhammer_inf(0.5, -0.3), rsequil::error);
}

TEST_CASE("pochhammer") {
  CHECK(pochhammer(cdouble(2.5, 0.7), 0) == cdouble(1.0));
  CHECK(pochhammer(3.0, 3).real() == doctest::Approx(60.0));
  CHECK(std::abs(pochhammer(-2.0, 3)) == 0.0);
}

TEST_CASE("terminating series: n=0 is exactly 1") {
  rsequil::detail::SplitMix64 rng(22);
  for (int trial = 0; trial < 10; ++trial) {
    auto rnd = [&] { return cdouble(rng.uniform(-3, 3), rng.uniform(-3, 3)); };
    auto s = qspec(0, {rnd(), rnd(), rnd()}, {rnd(), rnd(), rnd()},
                   rng.uniform(0.1, 0.9), rnd());
    CHECK(terminating_series(s) == cdouble(1.0));
    auto f = fspec(0, {rnd(), rnd(), rnd()}, {rnd(), rnd(), rnd()}, rnd());
    CHECK(terminating_series(f) == cdouble(1.0));
  }
}

TEST_CASE("terminating series: n=1 q-basis hand expansion") {
  rsequil::detail::SplitMix64 rng(33);
  for (int trial = 0; trial < 10; ++trial) {
    auto rnd = [&] { return cdouble(rng.uniform(-2, 2), rng.uniform(-2, 2)); };
    const double q = rng.uniform(0.15, 0.85);
    const cdouble a1 = rnd(), a2 = rnd(), a3 = rnd();
    const cdouble b1 = rnd(), b2 = rnd(), b3 = rnd();
    const auto got = terminating_series(qspec(1, {a1, a2, a3}, {b1, b2, b3}, q, q));
    const cdouble expect =
        1.0 + (1.0 - 1.0 / q) * (1.0 - a1) * (1.0 - a2) * (1.0 - a3) /
                  ((1.0 - q) * (1.0 - b1) * (1.0 - b2) * (1.0 - b3)) * q;
    CHECK(std::abs(got - expect) <= 1e-13 * (1.0 + std::abs(expect)));
  }
}

TEST_CASE("terminating series: ratio accumulation matches direct products") {
  // independent route: term k assembled from scratch q-shifted factorials
  rsequil::detail::SplitMix64 rng(44);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + static_cast<int>(rng.next() % 6);
    const double q = rng.uniform(0.2, 0.8);
    auto rnd = [&] { return cdouble(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)); };
    const std::vector<cdouble> up{rnd(), rnd(), rnd()};
    const std::vector<cdouble> lo{rnd(), rnd(), rnd()};
    const cdouble z = rnd();

    cdouble direct = 0.0;
    for (int k = 0; k <= n; ++k) {
      cdouble t = qpochhammer(std::pow(q, -n), q, k);
      for (const auto& a : up) t *= qpochhammer(a, q, k);
      t /= qpochhammer(q, q, k);
      for (const auto& b : lo) t /= qpochhammer(b, q, k);
      t *= std::pow(z, k);
      direct += t;
    }
    const auto got = terminating_series(qspec(n, up, lo, q, z));
    CHECK(std::abs(got - direct) <= 1e-11 * (1.0 + std::abs(direct)));
  }
}

TEST_CASE("terminating series: denominator vanishing is reported") {
  // lower parameter 1: (1;q)_1 factor is zero at the k=1 term
  auto s = qspec(2, {cdouble(0.3), cdouble(0.4), cdouble(0.5)},
                 {cdouble(1.0), cdouble(0.7), cdouble(0.8)}, 0.5, 0.5);
  CHECK_THROWS_AS(terminating_series(s), rsequil::denominator_vanishing);
  // lower parameter q^{-1}: factor 1 - q^{-1} q vanishes at the k=2 term
  auto s2 = qspec(3, {cdouble(0.3), cdouble(0.4), cdouble(0.5)},
                  {cdouble(2.0), cdouble(0.7), cdouble(0.8)}, 0.5, 0.5);
  CHECK_THROWS_AS(terminating_series(s2), rsequil::denominator_vanishing);
  try {
    terminating_series(s2);
  } catch (const rsequil::denominator_vanishing& e) {
    CHECK(std::string(e.what()).find("lower[0]") != std::string::npos);
    CHECK(std::string(e.what()).find("k=2") != std::string::npos);
  }
  // ordinary basis: lower parameter 0 dies immediately, -1 at the second term
  auto f0 = fspec(2, {cdouble(1.0), cdouble(2.0), cdouble(3.0)},
                  {cdouble(0.0), cdouble(1.0), cdouble(1.0)}, 1.0);
  CHECK_THROWS_AS(terminating_series(f0), rsequil::denominator_vanishing);
  auto f1 = fspec(3, {cdouble(1.0), cdouble(2.0), cdouble(3.0)},
                  {cdouble(-1.0), cdouble(1.0), cdouble(1.0)}, 1.0);
  CHECK_THROWS_AS(terminating_series(f1), rsequil::denominator_vanishing);
}

TEST_CASE("q->1 degeneration: 4Phi3 approaches 4F3 at first order") {
  const int n = 3;
  const std::vector<double> alpha{0.3, 1.2, 0.7};
  const std::vector<double> beta{1.5, 2.3, 0.9};

  const auto f = terminating_series(
      fspec(n, {alpha[0], alpha[1], alpha[2]}, {beta[0], beta[1], beta[2]}, 1.0));

  auto phi_at = [&](double eps) {
    const double q = std::exp(-eps);
    std::vector<cdouble> up, lo;
    for (double a : alpha) up.push_back(std::pow(q, a));
    for (double b : beta) lo.push_back(std::pow(q, b));
    return terminating_series(qspec(n, up, lo, q, q));
  };

  const double d3 = std::abs(phi_at(1e-3) - f) / std::abs(f);
  const double d4 = std::abs(phi_at(1e-4) - f) / std::abs(f);
  CHECK(d3 < 1e-2);
  CHECK(d4 < 1e-3);
  const double shrink = d3 / d4;
  CHECK(shrink > 3.0);   // first-order decay: expect about 10x
  CHECK(shrink < 30.0);
}
