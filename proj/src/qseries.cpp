#include "rsequil/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

#include "rsequil/detail/mpseries.hpp"
#include "rsequil/errors.hpp"

namespace rsequil::qseries {

namespace {

constexpr double kVanishThreshold = 1e-300;

[[noreturn]] void throw_vanishing(const std::string& factor, int k) {
  throw denominator_vanishing("denominator factor " + factor +
                              " vanished at term k=" + std::to_string(k));
}

}  // namespace

cdouble qpochhammer(cdouble a, double q, int k) {
  if (k < 0) throw std::invalid_argument("qpochhammer: k must be >= 0");
  cdouble prod = 1.0;
  double qj = 1.0;
  for (int j = 0; j < k; ++j) {
    prod *= (1.0 - a * qj);
    qj *= q;
  }
  return prod;
}

cdouble qpochhammer_inf(cdouble a, double q, double tol) {
  if (!(q > 0.0 && q < 1.0))
    throw error("qpochhammer_inf: q must lie in (0,1)");
  if (!(tol > 0.0)) throw std::invalid_argument("qpochhammer_inf: tol must be > 0");
  cdouble prod = 1.0;
  double mag = std::abs(a);
  // include factors up to the first K with |a| q^K < tol; the remaining
  // factors are 1 + O(tol) each, with geometrically shrinking deviations
  while (true) {
    prod *= (1.0 - a);
    if (mag < tol) break;
    a *= q;
    mag *= q;
  }
  return prod;
}

cdouble pochhammer(cdouble a, int k) {
  if (k < 0) throw std::invalid_argument("pochhammer: k must be >= 0");
  cdouble prod = 1.0;
  for (int j = 0; j < k; ++j) prod *= (a + static_cast<double>(j));
  return prod;
}

namespace {

cdouble terminating_series_double(const TerminatingSeriesSpec& spec) {
  const bool qbasis = spec.basis == TerminatingSeriesSpec::Basis::q_series;
  const int n = spec.n;
  cdouble sum = 1.0;
  cdouble term = 1.0;
  double qk = 1.0;  // q^k, q basis only

  for (int k = 0; k < n; ++k) {
    cdouble ratio;
    if (qbasis) {
      // new factors taking term k to term k+1
      ratio = 1.0 - std::pow(spec.q, static_cast<double>(k - n));
      for (const cdouble& a : spec.upper) ratio *= (1.0 - a * qk);
      const double qfac = 1.0 - qk * spec.q;  // from (q;q)_{k+1}
      ratio /= qfac;
      for (size_t i = 0; i < spec.lower.size(); ++i) {
        const cdouble den = 1.0 - spec.lower[i] * qk;
        if (std::abs(den) < kVanishThreshold)
          throw_vanishing("(1 - lower[" + std::to_string(i) + "] q^" +
                              std::to_string(k) + ")",
                          k + 1);
        ratio /= den;
      }
      qk *= spec.q;
    } else {
      ratio = static_cast<double>(k - n);  // (-n + k)
      for (const cdouble& a : spec.upper) ratio *= (a + static_cast<double>(k));
      ratio /= static_cast<double>(k + 1);
      for (size_t i = 0; i < spec.lower.size(); ++i) {
        const cdouble den = spec.lower[i] + static_cast<double>(k);
        if (std::abs(den) < kVanishThreshold)
          throw_vanishing("(lower[" + std::to_string(i) + "] + " +
                              std::to_string(k) + ")",
                          k + 1);
        ratio /= den;
      }
    }
    term *= ratio * spec.z;
    sum += term;
  }
  return sum;
}

}  // namespace

namespace detail {

double log2_max_term(const TerminatingSeriesSpec& spec) {
  const bool qbasis = spec.basis == TerminatingSeriesSpec::Basis::q_series;
  const int n = spec.n;
  const double l2z = std::log2(std::abs(spec.z));
  double lt = 0.0, worst = 0.0;
  double qk = 1.0;
  for (int k = 0; k < n; ++k) {
    double l2r;
    if (qbasis) {
      // q^{k-n} can exceed the double range for large n*log(1/q)
      const double l2qkn = (k - n) * std::log2(spec.q);
      l2r = l2qkn > 1000.0
                ? l2qkn
                : std::log2(std::abs(1.0 - std::exp2(l2qkn)));
      for (const cdouble& a : spec.upper) l2r += std::log2(std::abs(1.0 - a * qk));
      l2r -= std::log2(1.0 - qk * spec.q);
      for (const cdouble& b : spec.lower) l2r -= std::log2(std::abs(1.0 - b * qk));
      qk *= spec.q;
    } else {
      l2r = std::log2(static_cast<double>(n - k));
      for (const cdouble& a : spec.upper)
        l2r += std::log2(std::abs(a + static_cast<double>(k)));
      l2r -= std::log2(static_cast<double>(k + 1));
      for (const cdouble& b : spec.lower)
        l2r -= std::log2(std::abs(b + static_cast<double>(k)));
    }
    lt += l2r + l2z;
    worst = std::max(worst, lt);
  }
  return worst;
}

int required_bits(const TerminatingSeriesSpec& spec, double log2_prefactor,
                  double target_log2) {
  const double ops = std::log2(16.0 * (spec.n + 1));
  const double head = log2_max_term(spec) + log2_prefactor + ops;
  // double accumulation leaves an absolute error ~ 2^{head-53}; accept it
  // when that is 2^{-43} or better, otherwise size mpfr for 2^{-target}
  if (head + 43.0 <= 53.0) return 0;
  return static_cast<int>(std::clamp(head + target_log2 + 16.0, 96.0, 16384.0));
}

MpComplex terminating_series_mp(int n, TerminatingSeriesSpec::Basis basis,
                                const std::vector<MpComplex>& upper,
                                const std::vector<MpComplex>& lower,
                                const MpComplex& z, const MpReal& q,
                                mpfr_prec_t prec) {
  const bool qbasis = basis == TerminatingSeriesSpec::Basis::q_series;
  const MpReal one(1.0, prec);
  MpComplex sum(1.0, 0.0, prec);
  MpComplex term(1.0, 0.0, prec);
  MpReal qk(1.0, prec);
  MpReal qmn = qbasis ? pow_si(q, -n) : MpReal(prec);  // q^{-n} running power

  for (int k = 0; k < n; ++k) {
    MpComplex ratio(1.0, 0.0, prec);
    if (qbasis) {
      ratio *= MpReal(one - qmn * qk);
      for (const MpComplex& a : upper) {
        MpComplex f(one, MpReal(prec));
        f -= a * qk;
        ratio *= f;
      }
      ratio *= MpReal(one / (one - qk * q));
      for (size_t i = 0; i < lower.size(); ++i) {
        MpComplex den(one, MpReal(prec));
        den -= lower[i] * qk;
        if (abs(den).to_double() < kVanishThreshold)
          throw_vanishing("(1 - lower[" + std::to_string(i) + "] q^" +
                              std::to_string(k) + ")",
                          k + 1);
        ratio /= den;
      }
      qk *= q;
    } else {
      const MpReal kk(static_cast<double>(k), prec);
      ratio *= MpReal(static_cast<double>(k - n), prec);
      for (const MpComplex& a : upper) {
        MpComplex f = a;
        f.re += kk;
        ratio *= f;
      }
      ratio /= MpReal(k + 1.0, prec);
      for (size_t i = 0; i < lower.size(); ++i) {
        MpComplex den = lower[i];
        den.re += kk;
        if (abs(den).to_double() < kVanishThreshold)
          throw_vanishing("(lower[" + std::to_string(i) + "] + " +
                              std::to_string(k) + ")",
                          k + 1);
        ratio /= den;
      }
    }
    term *= ratio;
    term *= z;
    sum += term;
  }
  return sum;
}

}  // namespace detail

cdouble terminating_series(const TerminatingSeriesSpec& spec) {
  if (spec.n < 0) throw std::invalid_argument("terminating_series: n must be >= 0");
  const bool qbasis = spec.basis == TerminatingSeriesSpec::Basis::q_series;
  if (qbasis && !(spec.q > 0.0 && spec.q < 1.0))
    throw error("terminating_series: q basis requires q in (0,1)");

  const int bits = detail::required_bits(spec, 0.0);
  if (bits == 0) return terminating_series_double(spec);

  std::vector<detail::MpComplex> up, lo;
  up.reserve(spec.upper.size());
  lo.reserve(spec.lower.size());
  for (const cdouble& a : spec.upper) up.emplace_back(a, bits);
  for (const cdouble& b : spec.lower) lo.emplace_back(b, bits);
  return detail::terminating_series_mp(spec.n, spec.basis, up, lo,
                                       detail::MpComplex(spec.z, bits),
                                       detail::MpReal(spec.q, bits), bits)
      .to_cdouble();
}

}  // namespace rsequil::qseries
