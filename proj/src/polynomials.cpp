#include "rsequil/polynomials.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "rsequil/detail/linalg.hpp"
#include "rsequil/detail/mpcomplex.hpp"
#include "rsequil/detail/mpseries.hpp"
#include "rsequil/errors.hpp"
#include "rsequil/qseries.hpp"

namespace rsequil::polynomials {

namespace {

using qseries::qpochhammer_inf;
using qseries::terminating_series;
using qseries::TerminatingSeriesSpec;
using rsequil::detail::MpComplex;
using rsequil::detail::MpReal;
using rsequil::detail::mp_cos;
using rsequil::detail::mp_exp_i;
using rsequil::detail::mp_sin;

constexpr double kPoleGuard = 1e-10;
constexpr cdouble kI{0.0, 1.0};
constexpr double kLn2 = std::numbers::ln2;

void require_mode(const CouplingParams& c, Mode m, const char* op) {
  if (c.mode() != m)
    throw mode_mismatch(std::string(op) + ": couplings have mode " +
                        to_string(c.mode()) + ", expected " + to_string(m));
}

/// Trigonometric W(x); denominators are guarded by the caller.
cdouble w_trig(const CouplingParams& c, cdouble x) {
  const cdouble num = std::sin(x + kI * c.g1()) * std::cos(x + kI * c.g2()) *
                      std::sin(x + kI * c.g3()) * std::cos(x + kI * c.g4());
  return num / (std::sin(2.0 * x) * std::sin(2.0 * x + kI * c.g()));
}

/// Rational W(x).
cdouble w_rat(const CouplingParams& c, cdouble x) {
  const cdouble num = (x + kI * c.g1()) * (x + kI * c.g2()) *
                      (x + kI * c.g3()) * (x + kI * c.g4());
  return num / (2.0 * x * (2.0 * x + kI * c.g()));
}

// --- Askey-Wilson series pieces -------------------------------------------

/// log|prefactor| (natural log) and its sign; throws if the denominator
/// q-shifted factorial vanishes.
std::pair<double, double> aw_prefactor_log(const AWParams& p, int n) {
  const double q = p.q(), a = p.a();
  const double ab = a * p.b(), ac = a * p.c(), ad = a * p.d();
  const double top = ab * p.c() * p.d() * std::pow(q, n - 1);

  double logmag = -kLn2 - n * std::log(std::abs(a));
  double sign = (a < 0.0 && (n & 1)) ? -1.0 : 1.0;
  for (double u : {ab, ac, ad}) {
    double uq = u;
    for (int j = 0; j < n; ++j) {
      const double f = 1.0 - uq;
      logmag += std::log(std::abs(f));
      if (f < 0.0) sign = -sign;
      uq *= q;
    }
  }
  double uq = top;
  for (int j = 0; j < n; ++j) {
    const double f = 1.0 - uq;
    if (std::abs(f) < 1e-300)
      throw degenerate_parameter(
          "aw_eval: (abcd q^{n-1};q)_n factor vanished at j=" + std::to_string(j));
    logmag -= std::log(std::abs(f));
    if (f < 0.0) sign = -sign;
    uq *= q;
  }
  return {logmag, sign};
}

TerminatingSeriesSpec aw_series_spec(const AWParams& p, int n, cdouble x) {
  const double a = p.a();
  const double ab = a * p.b(), ac = a * p.c(), ad = a * p.d();
  TerminatingSeriesSpec s;
  s.n = n;
  s.basis = TerminatingSeriesSpec::Basis::q_series;
  s.q = p.q();
  s.z = p.q();
  s.upper = {ab * p.c() * p.d() * std::pow(p.q(), n - 1),
             a * std::exp(2.0 * kI * x), a * std::exp(-2.0 * kI * x)};
  s.lower = {ab, ac, ad};
  return s;
}

/// Working precision for prefactor * series at absolute target 2^{-66};
/// 0 when double suffices.
int aw_bits(const AWParams& p, int n, cdouble x) {
  const auto [logmag, sign] = aw_prefactor_log(p, n);
  (void)sign;
  return qseries::detail::required_bits(aw_series_spec(p, n, x), logmag / kLn2);
}

/// Everything in mpfr: prefactor as a plain product (mpfr's exponent range
/// absorbs the growth), series via the shared mp accumulation.
MpComplex aw_eval_mp_core(const MpReal& q, const MpReal& a, const MpReal& b,
                          const MpReal& c, const MpReal& d, int n,
                          const MpComplex& x, mpfr_prec_t prec) {
  const MpReal one(1.0, prec);
  const MpReal ab = a * b, ac = a * c, ad = a * d;
  const MpReal top = ab * c * d * pow_si(q, n - 1);

  MpReal pref = MpReal(0.5, prec) / pow_si(a, n);
  {
    MpReal u1 = ab, u2 = ac, u3 = ad, u4 = top;
    for (int j = 0; j < n; ++j) {
      pref *= (one - u1) * (one - u2) * (one - u3);
      const MpReal den = one - u4;
      if (abs(den).to_double() < 1e-300)
        throw degenerate_parameter(
            "aw_eval: (abcd q^{n-1};q)_n factor vanished at j=" +
            std::to_string(j));
      pref /= den;
      u1 *= q;
      u2 *= q;
      u3 *= q;
      u4 *= q;
    }
  }

  const MpComplex e2 = mp_exp_i(2.0, x);
  const MpComplex em2 = mp_exp_i(-2.0, x);
  std::vector<MpComplex> upper{MpComplex(top, MpReal(prec)), e2 * a, em2 * a};
  std::vector<MpComplex> lower{MpComplex(ab, MpReal(prec)),
                               MpComplex(ac, MpReal(prec)),
                               MpComplex(ad, MpReal(prec))};
  MpComplex ser = qseries::detail::terminating_series_mp(
      n, TerminatingSeriesSpec::Basis::q_series, upper, lower,
      MpComplex(q, MpReal(prec)), q, prec);
  return ser * pref;
}

MpComplex aw_eval_mp(const AWParams& p, int n, const MpComplex& x,
                     mpfr_prec_t prec) {
  return aw_eval_mp_core(MpReal(p.q(), prec), MpReal(p.a(), prec),
                         MpReal(p.b(), prec), MpReal(p.c(), prec),
                         MpReal(p.d(), prec), n, x, prec);
}

// --- Wilson series pieces ---------------------------------------------------

std::pair<double, double> wilson_prefactor_log(const WilsonParams& p, int n) {
  const double s = p.a() + p.b() + p.c() + p.d();
  double logmag = 0.0;
  for (int k = 0; k < n; ++k) {
    logmag += std::log(p.a() + p.b() + k) + std::log(p.a() + p.c() + k) +
              std::log(p.a() + p.d() + k) - std::log(n + s - 1.0 + k);
  }
  return {logmag, (n & 1) ? -1.0 : 1.0};
}

TerminatingSeriesSpec wilson_series_spec(const WilsonParams& p, int n, cdouble x) {
  const double s = p.a() + p.b() + p.c() + p.d();
  TerminatingSeriesSpec spec;
  spec.n = n;
  spec.basis = TerminatingSeriesSpec::Basis::ordinary;
  spec.z = 1.0;
  spec.upper = {n + s - 1.0, p.a() + kI * x, p.a() - kI * x};
  spec.lower = {p.a() + p.b(), p.a() + p.c(), p.a() + p.d()};
  return spec;
}

int wilson_bits(const WilsonParams& p, int n, cdouble x) {
  const auto [logmag, sign] = wilson_prefactor_log(p, n);
  (void)sign;
  return qseries::detail::required_bits(wilson_series_spec(p, n, x),
                                        logmag / kLn2);
}

MpComplex wilson_eval_mp_core(const MpReal& a, const MpReal& b,
                              const MpReal& c, const MpReal& d, int n,
                              const MpComplex& x, mpfr_prec_t prec) {
  const MpReal s = a + b + c + d;
  const MpReal nn(static_cast<double>(n), prec);

  MpReal pref((n & 1) ? -1.0 : 1.0, prec);
  for (int k = 0; k < n; ++k) {
    const MpReal kk(static_cast<double>(k), prec);
    pref *= (a + b + kk) * (a + c + kk) * (a + d + kk);
    pref /= (nn + s - MpReal(1.0, prec) + kk);
  }

  // a + ix = (a - Im x) + i Re x
  std::vector<MpComplex> upper{
      MpComplex(nn + s - MpReal(1.0, prec), MpReal(prec)),
      MpComplex(a - x.im, x.re), MpComplex(a + x.im, -(x.re))};
  std::vector<MpComplex> lower{MpComplex(a + b, MpReal(prec)),
                               MpComplex(a + c, MpReal(prec)),
                               MpComplex(a + d, MpReal(prec))};
  MpComplex ser = qseries::detail::terminating_series_mp(
      n, TerminatingSeriesSpec::Basis::ordinary, upper, lower,
      MpComplex(1.0, 0.0, prec), MpReal(prec), prec);
  return ser * pref;
}

MpComplex wilson_eval_mp(const WilsonParams& p, int n, const MpComplex& x,
                         mpfr_prec_t prec) {
  return wilson_eval_mp_core(MpReal(p.a(), prec), MpReal(p.b(), prec),
                             MpReal(p.c(), prec), MpReal(p.d(), prec), n, x,
                             prec);
}

}  // namespace

AWParams::AWParams(double q, double a, double b, double c, double d)
    : q_(q), a_(a), b_(b), c_(c), d_(d) {
  if (!(q > 0.0 && q < 1.0))
    throw std::invalid_argument("AWParams: q must lie in (0,1)");
  for (double v : {a, b, c, d}) {
    if (!(std::abs(v) > 0.0 && std::abs(v) < 1.0) || !std::isfinite(v))
      throw std::invalid_argument("AWParams: |a|,|b|,|c|,|d| must lie in (0,1)");
  }
}

WilsonParams::WilsonParams(double a, double b, double c, double d)
    : a_(a), b_(b), c_(c), d_(d) {
  for (double v : {a, b, c, d})
    if (!std::isfinite(v) || v <= 0.0)
      throw std::invalid_argument("WilsonParams: all parameters must be > 0");
}

AWParams aw_params_from_couplings(const CouplingParams& c) {
  require_mode(c, Mode::trigonometric, "aw_params_from_couplings");
  return AWParams(std::exp(-2.0 * c.g()), std::exp(-2.0 * c.g1()),
                  -std::exp(-2.0 * c.g2()), std::exp(-2.0 * c.g3()),
                  -std::exp(-2.0 * c.g4()));
}

cdouble aw_eval(const AWParams& p, int n, cdouble x) {
  if (n < 0) throw std::invalid_argument("aw_eval: n must be >= 0");
  if (n == 0) return 1.0;  // monic degree-0 polynomial

  const int bits = aw_bits(p, n, x);
  if (bits > 0)
    return aw_eval_mp(p, n, MpComplex(x, bits), bits).to_cdouble();

  const auto [logmag, sign] = aw_prefactor_log(p, n);
  return sign * std::exp(logmag) * terminating_series(aw_series_spec(p, n, x));
}

cdouble aw_eval_factored(const Configuration& zeros, cdouble x) {
  if (zeros.mode() != Mode::trigonometric)
    throw mode_mismatch("aw_eval_factored: zeros must be trigonometric");
  const int n = zeros.size();
  cdouble prod = std::ldexp(1.0, 2 * n - 1);  // 2^{2n-1}
  for (int k = 0; k < n; ++k)
    prod *= std::sin(zeros[k] + x) * std::sin(zeros[k] - x);
  return prod;
}

double aw_weight(const AWParams& p, double x, double tol) {
  if (!(x > 0.0 && x < std::numbers::pi / 2))
    throw chamber_violation("aw_weight: x must lie strictly inside (0, pi/2)");
  const cdouble e2 = std::exp(2.0 * kI * x);
  const cdouble num = qpochhammer_inf(e2 * e2, p.q(), tol);
  const cdouble den =
      qpochhammer_inf(p.a() * e2, p.q(), tol) * qpochhammer_inf(p.b() * e2, p.q(), tol) *
      qpochhammer_inf(p.c() * e2, p.q(), tol) * qpochhammer_inf(p.d() * e2, p.q(), tol);
  return std::norm(num) / std::norm(den);
}

double cosine_series_eval(const std::vector<double>& coeffs, double x) {
  double s = 0.0;
  for (size_t j = 0; j < coeffs.size(); ++j)
    s += coeffs[j] * std::cos(2.0 * static_cast<double>(j) * x);
  return s;
}

std::vector<std::vector<double>> gram_schmidt_oracle(const AWParams& p, int n,
                                                     int quad_points) {
  if (n < 0 || n > 4)
    throw std::invalid_argument("gram_schmidt_oracle: n must be in 0..4");
  if (quad_points < 256)
    throw std::invalid_argument("gram_schmidt_oracle: quad_points must be >= 256");

  const int m = quad_points;
  const double h = std::numbers::pi / 2 / m;
  std::vector<double> xs(m), wt(m);
  for (int i = 0; i < m; ++i) {
    xs[i] = (i + 0.5) * h;  // midpoint rule: no endpoint evaluation
    wt[i] = aw_weight(p, xs[i]);
  }

  const int d = n + 1;
  std::vector<double> gram(static_cast<size_t>(d) * d);
  for (int j = 0; j < d; ++j) {
    for (int l = j; l < d; ++l) {
      double s = 0.0;
      for (int i = 0; i < m; ++i)
        s += std::cos(2.0 * j * xs[i]) * std::cos(2.0 * l * xs[i]) * wt[i];
      gram[j * d + l] = gram[l * d + j] = s * h;
    }
  }

  const double cond = detail::sym_condition(gram, d);
  if (!(cond <= 1e12))
    throw quadrature_failure("gram_schmidt_oracle: Gram matrix numerically "
                             "singular (condition estimate " +
                             std::to_string(cond) + ")");

  auto inner = [&](const std::vector<double>& u, const std::vector<double>& v) {
    double s = 0.0;
    for (size_t j = 0; j < u.size(); ++j)
      for (size_t l = 0; l < v.size(); ++l) s += u[j] * gram[j * d + l] * v[l];
    return s;
  };

  std::vector<std::vector<double>> coeffs;
  for (int k = 0; k <= n; ++k) {
    std::vector<double> c(k + 1, 0.0);
    c[k] = 1.0;  // monic: top cosine coefficient stays 1
    for (int mm = 0; mm < k; ++mm) {
      const double proj = inner(c, coeffs[mm]) / inner(coeffs[mm], coeffs[mm]);
      for (size_t j = 0; j < coeffs[mm].size(); ++j) c[j] -= proj * coeffs[mm][j];
    }
    coeffs.push_back(std::move(c));
  }
  return coeffs;
}

double aw_eigenvalue(const CouplingParams& c, int n) {
  require_mode(c, Mode::trigonometric, "aw_eigenvalue");
  if (n < 0) throw std::invalid_argument("aw_eigenvalue: n must be >= 0");
  if (n == 0) return 0.0;
  return (std::cosh(c.ghat() + 2.0 * n * c.g()) - std::cosh(c.ghat())) / 2.0;
}

cdouble aw_difference_weight(const CouplingParams& c, cdouble x) {
  require_mode(c, Mode::trigonometric, "aw_difference_weight");
  return w_trig(c, x);
}

cdouble aw_difference_apply(const CouplingParams& c,
                            const std::function<cdouble(cdouble)>& f, cdouble x) {
  require_mode(c, Mode::trigonometric, "aw_difference_apply");
  const cdouble ig = kI * c.g();
  const cdouble s2x = std::sin(2.0 * x);
  if (std::abs(s2x) < kPoleGuard || std::abs(std::sin(2.0 * x + ig)) < kPoleGuard ||
      std::abs(std::sin(2.0 * x - ig)) < kPoleGuard)
    throw singularity_error("aw_difference_apply: x within guard distance of a "
                            "pole of W");
  const cdouble fx = f(x);
  return w_trig(c, x) * (f(x + ig) - fx) + w_trig(c, -x) * (f(x - ig) - fx);
}

double aw_diffeq_residual(const CouplingParams& c, int n, double x) {
  require_mode(c, Mode::trigonometric, "aw_diffeq_residual");
  if (n < 0) throw std::invalid_argument("aw_diffeq_residual: n must be >= 0");
  if (n == 0) return 0.0;  // D annihilates constants and E_0 = 0

  const double g = c.g();
  if (std::abs(std::sin(2.0 * x)) < kPoleGuard ||
      std::abs(std::sin(2.0 * cdouble(x) + kI * g)) < kPoleGuard)
    throw singularity_error("aw_diffeq_residual: x within guard distance of a "
                            "pole of W");

  const AWParams p = aw_params_from_couplings(c);
  const cdouble xp(x, g), xm(x, -g);
  double need = 160.0;
  for (const cdouble& pt : {cdouble(x), xp, xm})
    need = std::max(need, static_cast<double>(aw_bits(p, n, pt)));
  const double l2e = (std::abs(c.ghat()) + 2.0 * n * g) / kLn2 + 4.0;
  const mpfr_prec_t prec =
      static_cast<mpfr_prec_t>(std::min(need + l2e + 96.0, 16384.0));

  // every quantity is derived in wide precision from the double couplings,
  // so the eigen-identity holds to working precision rather than to the
  // rounding of the stored (q,a,b,c,d) tuple
  const MpReal two(2.0, prec);
  const MpReal qm = exp(-(two * MpReal(g, prec)));
  const MpReal am = exp(-(two * MpReal(c.g1(), prec)));
  const MpReal bm = -exp(-(two * MpReal(c.g2(), prec)));
  const MpReal cm = exp(-(two * MpReal(c.g3(), prec)));
  const MpReal dm = -exp(-(two * MpReal(c.g4(), prec)));

  const MpReal one(1.0, prec);
  auto pn = [&](const cdouble& pt) {
    return aw_eval_mp_core(qm, am, bm, cm, dm, n, MpComplex(pt, prec), prec);
  };
  const MpComplex p0 = pn(cdouble(x));
  const MpComplex pp = pn(xp);
  const MpComplex pm_ = pn(xm);

  auto wmp = [&](double sgn) {
    const MpComplex num =
        mp_sin(MpComplex(sgn * x, c.g1(), prec)) *
        mp_cos(MpComplex(sgn * x, c.g2(), prec)) *
        mp_sin(MpComplex(sgn * x, c.g3(), prec)) *
        mp_cos(MpComplex(sgn * x, c.g4(), prec));
    return num / (mp_sin(MpComplex(2.0 * sgn * x, 0.0, prec)) *
                  mp_sin(MpComplex(2.0 * sgn * x, g, prec)));
  };
  const MpReal ghat = MpReal(c.g1(), prec) + MpReal(c.g2(), prec) +
                      MpReal(c.g3(), prec) + MpReal(c.g4(), prec) -
                      MpReal(g, prec);
  const MpReal en =
      (cosh(ghat + MpReal(2.0 * n, prec) * MpReal(g, prec)) - cosh(ghat)) *
      MpReal(0.5, prec);

  MpComplex r = wmp(1.0) * (pp - p0) + wmp(-1.0) * (pm_ - p0);
  r -= p0 * en;
  return (abs(r) / (one + abs(p0))).to_double();
}

cdouble wilson_eval(const WilsonParams& p, int n, cdouble x) {
  if (n < 0) throw std::invalid_argument("wilson_eval: n must be >= 0");
  if (n == 0) return 1.0;

  const int bits = wilson_bits(p, n, x);
  if (bits > 0)
    return wilson_eval_mp(p, n, MpComplex(x, bits), bits).to_cdouble();

  const auto [logmag, sign] = wilson_prefactor_log(p, n);
  return sign * std::exp(logmag) *
         terminating_series(wilson_series_spec(p, n, x));
}

double wilson_eigenvalue(const CouplingParams& c, int n) {
  require_mode(c, Mode::rational, "wilson_eigenvalue");
  if (n < 0) throw std::invalid_argument("wilson_eigenvalue: n must be >= 0");
  if (n == 0) return 0.0;
  return -n * c.g() * (n * c.g() + c.ghat());
}

cdouble wilson_difference_weight(const CouplingParams& c, cdouble x) {
  require_mode(c, Mode::rational, "wilson_difference_weight");
  return w_rat(c, x);
}

cdouble wilson_difference_apply(const CouplingParams& c,
                                const std::function<cdouble(cdouble)>& f,
                                cdouble x) {
  require_mode(c, Mode::rational, "wilson_difference_apply");
  const cdouble ig = kI * c.g();
  if (std::abs(x) < kPoleGuard || std::abs(2.0 * x + ig) < kPoleGuard ||
      std::abs(2.0 * x - ig) < kPoleGuard)
    throw singularity_error("wilson_difference_apply: x within guard distance "
                            "of a pole of W");
  const cdouble fx = f(x);
  return w_rat(c, x) * (f(x + ig) - fx) + w_rat(c, -x) * (f(x - ig) - fx);
}

double wilson_diffeq_residual(const CouplingParams& c, int n, double x) {
  require_mode(c, Mode::rational, "wilson_diffeq_residual");
  if (n < 0) throw std::invalid_argument("wilson_diffeq_residual: n must be >= 0");
  if (n == 0) return 0.0;

  const double g = c.g();
  if (std::abs(x) < kPoleGuard)
    throw singularity_error("wilson_diffeq_residual: x = 0 is a pole of W");

  const WilsonParams p(c.g1() / g, c.g2() / g, c.g3() / g, c.g4() / g);
  double need = 160.0;
  for (const cdouble& pt : {cdouble(x / g), cdouble(x / g, 1.0), cdouble(x / g, -1.0)})
    need = std::max(need, static_cast<double>(wilson_bits(p, n, pt)));
  const mpfr_prec_t prec = static_cast<mpfr_prec_t>(std::min(need + 96.0, 16384.0));

  // parameters and the rescaled argument (x +- ig)/g = x/g +- i are all
  // formed in wide precision from the double couplings
  const MpReal gm(g, prec);
  const MpReal a1 = MpReal(c.g1(), prec) / gm, a2 = MpReal(c.g2(), prec) / gm;
  const MpReal a3 = MpReal(c.g3(), prec) / gm, a4 = MpReal(c.g4(), prec) / gm;
  const MpReal u = MpReal(x, prec) / gm;
  const MpReal one(1.0, prec);
  auto pn = [&](const MpComplex& z) {
    return wilson_eval_mp_core(a1, a2, a3, a4, n, z, prec);
  };
  const MpComplex p0 = pn(MpComplex(u, MpReal(prec)));
  const MpComplex pp = pn(MpComplex(u, one));
  const MpComplex pm = pn(MpComplex(u, -one));

  auto wmp = [&](double sgn) {
    MpComplex num(1.0, 0.0, prec);
    for (double gr : {c.g1(), c.g2(), c.g3(), c.g4()})
      num *= MpComplex(sgn * x, gr, prec);
    return num / (MpComplex(2.0 * sgn * x, 0.0, prec) *
                  MpComplex(2.0 * sgn * x, g, prec));
  };
  const MpReal ghat = MpReal(c.g1(), prec) + MpReal(c.g2(), prec) +
                      MpReal(c.g3(), prec) + MpReal(c.g4(), prec) - gm;
  const MpReal ng = MpReal(static_cast<double>(n), prec) * gm;
  const MpReal en = -(ng * (ng + ghat));

  MpComplex r = wmp(1.0) * (pp - p0) + wmp(-1.0) * (pm - p0);
  r -= p0 * en;
  return (abs(r) / (one + abs(p0))).to_double();
}

}  // namespace rsequil::polynomials
