#pragma once

#include <vector>

#include "rsequil/detail/mpcomplex.hpp"
#include "rsequil/qseries.hpp"

namespace rsequil::qseries::detail {

using rsequil::detail::MpComplex;
using rsequil::detail::MpReal;

/// log2 of the largest term magnitude, from the exact factor magnitudes in
/// double arithmetic. Used to size the working precision: the terminating
/// series can cancel through astronomically large terms (the q^{-n} parameter
/// makes them grow like q^{-nk+k(k+1)/2}).
double log2_max_term(const TerminatingSeriesSpec& spec);

/// Working precision in bits so that prefactor * series carries an absolute
/// error below 2^{-target_log2}; 0 means double precision suffices.
int required_bits(const TerminatingSeriesSpec& spec, double log2_prefactor,
                  double target_log2 = 66.0);

/// The terminating series accumulated in mpfr arithmetic at `prec` bits.
MpComplex terminating_series_mp(int n, TerminatingSeriesSpec::Basis basis,
                                const std::vector<MpComplex>& upper,
                                const std::vector<MpComplex>& lower,
                                const MpComplex& z, const MpReal& q,
                                mpfr_prec_t prec);

}  // namespace rsequil::qseries::detail
