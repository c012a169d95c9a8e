#pragma once

#include "rsequil/equilibrium.hpp"
#include "rsequil/jsonio.hpp"

namespace rsequil::report {

/// {"g":..,"g1":..,"g2":..,"g3":..,"g4":..} in that order.
jsonio::ordered_json couplings_json(const CouplingParams& c);

/// Record envelope with the fixed top-level key order
/// mode, couplings, n, zeros, residuals, checks, version.
jsonio::ordered_json make_record(const CouplingParams& c, int n,
                                 jsonio::ordered_json zeros,
                                 jsonio::ordered_json residuals,
                                 jsonio::ordered_json checks);

/// Full verification report in the record envelope.
jsonio::ordered_json to_json(const equilibrium::VerificationReport& r);

}  // namespace rsequil::report
