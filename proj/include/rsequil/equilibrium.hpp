#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rsequil/roots.hpp"
#include "rsequil/types.hpp"

namespace rsequil::equilibrium {

/// V_j(sign * x) = w(sign x_j) prod_{k != j} v(sign x_j + sign x_k)
/// v(sign x_j - sign x_k). j is zero-based; sign is +1 or -1.
/// For real interior x, V_j(-x) equals conj V_j(x).
cdouble potential(const CouplingParams& c, const Configuration& x, int j, int sign);

/// V_j(x) for j = 0..n-1.
std::vector<cdouble> potential_values(const CouplingParams& c, const Configuration& x);

/// H(p,x) = sum_j [ cosh(p_j) |V_j(x)| - Re V_j(x) ], real and >= 0.
double hamiltonian(const CouplingParams& c, const PhasePoint& pt);

/// H(0,x), with the potentials and the cancellation |V_j| - Re V_j evaluated
/// in wide-precision arithmetic. At an equilibrium the double-precision sum
/// carries noise of order eps * |V_j|, which for strong couplings dwarfs the
/// true minimum value; this measurement reports the actual H(0,x).
double hamiltonian_at_rest(const CouplingParams& c, const Configuration& x);

/// Bethe residuals R_j = Im V_j(x); zero exactly at a solution of the
/// equilibrium system.
std::vector<double> bethe_residual(const CouplingParams& c, const Configuration& x);

/// max_j |Im V_j| / (1 + |V_j|).
double bethe_residual_max(const CouplingParams& c, const Configuration& x);

/// Damped Newton on the normalized residuals Im V_j / (1+|V_j|) with a
/// numeric Jacobian; iterates are backtracked until they stay interior,
/// ordered, and strictly decrease the residual norm. Default start is
/// equally spaced: j pi/(2(n+1)) (trig), j (1 + max_r g_r/g)/n (rational).
Configuration solve_bethe_newton(const CouplingParams& c, int n,
                                 std::optional<Configuration> x0 = std::nullopt,
                                 double tol = 1e-12);

struct MinimizeSettings {
  int starts = 8;
  std::uint64_t seed = 0;
  int max_iters = 2000;      // Nelder-Mead iterations per start (restarts included)
  double diam_tol = 1e-12;   // simplex diameter convergence threshold
  Exec exec = Exec::openmp;
};

struct StartSummary {
  int start = 0;
  double h = 0.0;
  int iters = 0;
};

struct MinimizeResult {
  std::vector<double> momenta;
  std::vector<double> positions;  // sorted ascending
  double h = 0.0;
  std::vector<StartSummary> starts;
};

/// Derivative-free multi-start Nelder-Mead minimization of H over momenta and
/// reparameterized positions (an ordered logistic map onto the open ordered
/// chamber, so the search is unconstrained). Deterministic given the seed;
/// serial and OpenMP execution return identical results. This is the
/// independent oracle against the polynomial-zero route.
MinimizeResult minimize_hamiltonian_oracle(const CouplingParams& c, int n,
                                           const MinimizeSettings& s = {});

struct Tolerances {
  double bethe = 1e-10;          // normalized Bethe residual
  double hamiltonian = 1e-10;    // H(0, zeros)
  double diffeq = 1e-9;          // relative difference-equation residual
  double factorization = 1e-9;   // series vs factored form, relative
  double vanish = 1e-9;          // additive identity at the zeros, relative
  double rescale = 1e-10;        // rational rescaling deviation
};

struct CheckResult {
  double value = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::string error;  // nonempty if the underlying computation failed
};

struct VerificationReport {
  Mode mode = Mode::trigonometric;
  double g = 0, g1 = 0, g2 = 0, g3 = 0, g4 = 0;
  int n = 0;
  std::vector<double> zeros;
  std::vector<double> bethe_residuals;   // Im V_j at the zeros
  std::vector<double> potential_re;      // Re V_j at the zeros
  std::vector<double> potential_im;      // Im V_j (same as bethe_residuals)
  double hamiltonian0 = 0.0;             // H(0, zeros)

  CheckResult bethe;          // max normalized |Im V_j|
  CheckResult positivity;     // min Re V_j (pass iff > 0)
  CheckResult hamiltonian;    // H(0, zeros)
  CheckResult diffeq;         // max relative |D p_n - E_n p_n| over samples
  CheckResult factorization;  // max relative series-vs-factored deviation
  CheckResult vanish;         // max relative additive-identity residual
  std::optional<CheckResult> rescale;  // rational only, on request
  bool overall = false;
};

struct VerifyOptions {
  Tolerances tol;
  bool check_rescale = false;  // rational mode only
  double rescale_g = 2.0;
  /// Verify this configuration instead of the computed zeros (negative controls).
  std::optional<std::vector<double>> positions_override;
};

/// Full pipeline: find zeros, Bethe residuals and positivity, H(0, zeros),
/// difference-equation residual, factored-vs-series consistency, and the
/// additive vanish identity at every zero. Sub-operation failures land in
/// the per-check error fields instead of aborting.
VerificationReport verify_equilibrium(const CouplingParams& c, int n,
                                      const VerifyOptions& opt = {});

/// max_j |x_j(g) - g x_j(1)| between the zeros for (g, g_r) and g times the
/// zeros for (1, g_r/g). Rational couplings only.
double rescale_rational_check(const CouplingParams& c, int n);

}  // namespace rsequil::equilibrium
