#pragma once

#include "rsequil/types.hpp"

namespace rsequil::roots {

struct RootFindSettings {
  int grid_per_root = 64;      // sample points per expected root
  double bisect_tol = 1e-8;    // bracket width
  double newton_tol = 1e-13;   // relative Newton step
  int max_newton_steps = 40;
};

/// Throws std::invalid_argument unless all fields are positive and
/// newton_tol <= bisect_tol.
void validate(const RootFindSettings& s);

/// All n simple zeros of the Askey-Wilson polynomial p_n in (0, pi/2),
/// by uniform sampling, sign-change bracketing, bisection and a
/// bracket-clamped Newton polish. Deterministic for fixed inputs and
/// settings, for either execution policy.
Configuration find_zeros_trig(const CouplingParams& c, int n,
                              const RootFindSettings& s = {},
                              Exec exec = Exec::openmp);

/// All n positive zeros of the rescaled Wilson polynomial p_n(x/g) with
/// parameters (g1/g,..,g4/g), on (0, U) with U doubled adaptively from
/// U0 = sum_r g_r + (2n+2) g until n sign changes appear (cap 2^10 U0).
Configuration find_zeros_rational(const CouplingParams& c, int n,
                                  const RootFindSettings& s = {},
                                  Exec exec = Exec::openmp);

}  // namespace rsequil::roots
