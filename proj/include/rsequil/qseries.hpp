#pragma once

#include <vector>

#include "rsequil/types.hpp"

namespace rsequil::qseries {

/// q-shifted factorial (a;q)_k = prod_{j=0}^{k-1} (1 - a q^j); 1 for k = 0.
cdouble qpochhammer(cdouble a, double q, int k);

/// Infinite product (a;q)_inf, truncated at the first K with |a| q^K < tol.
/// Requires 0 < q < 1; the dropped tail multiplies the result by 1 + O(tol/(1-q)).
cdouble qpochhammer_inf(cdouble a, double q, double tol = 1e-16);

/// Rising factorial (a)_k = a (a+1) ... (a+k-1); 1 for k = 0.
cdouble pochhammer(cdouble a, int k);

/// A terminating (r+1)Phi_r or (r+1)F_r series. The terminating numerator
/// parameter (q^{-n} resp. -n) is synthesized from `n`; `upper` holds the
/// remaining r numerator parameters and `lower` the r denominator parameters.
struct TerminatingSeriesSpec {
  enum class Basis { q_series, ordinary };

  int n = 0;
  std::vector<cdouble> upper;
  std::vector<cdouble> lower;
  cdouble z = 1.0;
  Basis basis = Basis::q_series;
  double q = 0.0;  // required iff basis == q_series, must lie in (0,1)
};

/// Evaluates the terminating series (n+1 terms, accumulated by term ratios).
/// Throws denominator_vanishing if a denominator factor vanishes for k = 1..n.
cdouble terminating_series(const TerminatingSeriesSpec& spec);

}  // namespace rsequil::qseries
