#pragma once

#include <functional>
#include <vector>

#include "rsequil/types.hpp"

namespace rsequil::polynomials {

/// Askey-Wilson parameter tuple (q,a,b,c,d), independent of the degree.
/// Requires 0 < q < 1 and 0 < |a|,|b|,|c|,|d| < 1.
class AWParams {
 public:
  AWParams(double q, double a, double b, double c, double d);

  double q() const { return q_; }
  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }
  double d() const { return d_; }

 private:
  double q_, a_, b_, c_, d_;
};

/// Wilson parameter tuple; all four strictly positive.
class WilsonParams {
 public:
  WilsonParams(double a, double b, double c, double d);

  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }
  double d() const { return d_; }

 private:
  double a_, b_, c_, d_;
};

/// (q,a,b,c,d) = (e^{-2g}, e^{-2g1}, -e^{-2g2}, e^{-2g3}, -e^{-2g4}).
/// Trigonometric couplings only.
AWParams aw_params_from_couplings(const CouplingParams& c);

/// Monic Askey-Wilson polynomial p_n at (complex) x: the terminating 4Phi3
/// with argument q and upper parameters (q^{-n}, abcd q^{n-1}, a e^{2ix},
/// a e^{-2ix}), times the prefactor (ab,ac,ad;q)_n / (2 a^n (abcd q^{n-1};q)_n).
/// p_0 = 1 by the monic convention.
cdouble aw_eval(const AWParams& p, int n, cdouble x);

/// Factored form 2^{2n-1} prod_k sin(x_k+x) sin(x_k-x) over the given zeros.
cdouble aw_eval_factored(const Configuration& zeros, cdouble x);

/// Orthogonality weight Delta(x) on the open interval (0, pi/2).
double aw_weight(const AWParams& p, double x, double tol = 1e-16);

/// Gram-Schmidt orthogonalization of 1, cos 2x, ..., cos 2nx under the
/// weight, by composite midpoint quadrature. Returns monic cosine-basis
/// coefficient vectors for p_0..p_n (coeffs[k][k] == 1). Validation oracle;
/// n <= 4, quad_points >= 256.
std::vector<std::vector<double>> gram_schmidt_oracle(const AWParams& p, int n,
                                                     int quad_points = 512);

/// sum_j coeffs[j] cos(2 j x).
double cosine_series_eval(const std::vector<double>& coeffs, double x);

/// E_n = (cosh(ghat + 2ng) - cosh ghat) / 2. Trigonometric couplings only.
double aw_eigenvalue(const CouplingParams& c, int n);

/// Trigonometric difference-operator coefficient
/// W(x) = sin(x+ig1)cos(x+ig2)sin(x+ig3)cos(x+ig4) / (sin 2x sin(2x+ig)).
cdouble aw_difference_weight(const CouplingParams& c, cdouble x);

/// Applies D = W(x)(T_{ig} - 1) + W(-x)(T_{-ig} - 1) with the trigonometric W.
/// Throws singularity_error within 1e-10 of a pole of W.
cdouble aw_difference_apply(const CouplingParams& c,
                            const std::function<cdouble(cdouble)>& f, cdouble x);

/// |D p_n - E_n p_n| / (1 + |p_n|) at real x, with the whole combination
/// evaluated in wide-precision arithmetic. The double-precision operator
/// combination carries rounding noise of order eps * E_n * cosh(g)^{2n},
/// which buries the identity for large n*g; this measurement does not.
double aw_diffeq_residual(const CouplingParams& c, int n, double x);

/// Monic Wilson polynomial (in x^2) of degree n via the terminating 4F3 at
/// unit argument. p_0 = 1.
cdouble wilson_eval(const WilsonParams& p, int n, cdouble x);

/// E_n = -ng(ng + ghat). Rational couplings only.
double wilson_eigenvalue(const CouplingParams& c, int n);

/// Rational difference-operator coefficient
/// W(x) = (x+ig1)(x+ig2)(x+ig3)(x+ig4) / (2x (2x+ig)).
cdouble wilson_difference_weight(const CouplingParams& c, cdouble x);

/// Difference operator with the rational W.
cdouble wilson_difference_apply(const CouplingParams& c,
                                const std::function<cdouble(cdouble)>& f,
                                cdouble x);

/// Wide-precision |D p_n - E_n p_n| / (1 + |p_n|) at real x, rational mode,
/// with p_n the rescaled Wilson polynomial p_n(x/g).
double wilson_diffeq_residual(const CouplingParams& c, int n, double x);

}  // namespace rsequil::polynomials
