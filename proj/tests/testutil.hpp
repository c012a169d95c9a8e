#pragma once

#include <cmath>
#include <vector>

#include "rsequil/detail/rng.hpp"
#include "rsequil/types.hpp"

namespace testutil {

/// Log-uniform draw: couplings are exponents (q = e^{-2g}), so uniform in
/// the log is the natural sampling across decades.
inline double logu(rsequil::detail::SplitMix64& rng, double lo, double hi) {
  return lo * std::exp(rng.uniform() * std::log(hi / lo));
}

inline rsequil::CouplingParams draw_couplings(rsequil::detail::SplitMix64& rng,
                                              rsequil::Mode mode, double lo,
                                              double hi) {
  const double g = logu(rng, lo, hi);
  const double g1 = logu(rng, lo, hi), g2 = logu(rng, lo, hi);
  const double g3 = logu(rng, lo, hi), g4 = logu(rng, lo, hi);
  return {mode, g, g1, g2, g3, g4};
}

/// Brute-force zero bracketing: dense scan plus bisection only, no Newton.
/// Independent check of the production finder's bracketing + polishing.
template <typename F>
std::vector<double> brute_force_zeros(const F& f, double lo, double hi,
                                      int points, double tol) {
  std::vector<double> zs;
  double prev_x = lo, prev_f = f(lo);
  for (int i = 1; i <= points; ++i) {
    const double x = lo + (hi - lo) * i / points;
    const double fx = f(x);
    if (prev_f == 0.0) zs.push_back(prev_x);
    if (prev_f * fx < 0.0) {
      double a = prev_x, b = x, fa = prev_f;
      while (b - a > tol) {
        const double mid = 0.5 * (a + b);
        const double fm = f(mid);
        if (fm == 0.0) {
          a = b = mid;
          break;
        }
        if ((fa < 0.0) != (fm < 0.0)) {
          b = mid;
        } else {
          a = mid;
          fa = fm;
        }
      }
      zs.push_back(0.5 * (a + b));
    }
    prev_x = x;
    prev_f = fx;
  }
  return zs;
}

}  // namespace testutil
