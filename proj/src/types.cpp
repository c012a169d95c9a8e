#include "rsequil/types.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "rsequil/errors.hpp"

namespace rsequil {

const char* to_string(Mode m) {
  return m == Mode::trigonometric ? "trig" : "rational";
}

Mode mode_from_string(std::string_view s) {
  if (s == "trig" || s == "trigonometric") return Mode::trigonometric;
  if (s == "rational") return Mode::rational;
  throw std::invalid_argument("unknown mode '" + std::string(s) +
                              "' (expected trig|rational)");
}

double chamber_upper(Mode m) {
  return m == Mode::trigonometric ? std::numbers::pi / 2
                                  : std::numeric_limits<double>::infinity();
}

bool chamber_interior(Mode m, const std::vector<double>& x) {
  if (x.empty()) return false;
  const double hi = chamber_upper(m);
  double prev = 0.0;
  for (double xi : x) {
    if (!std::isfinite(xi) || xi <= prev || xi >= hi) return false;
    prev = xi;
  }
  return true;
}

CouplingParams::CouplingParams(Mode mode, double g, double g1, double g2,
                               double g3, double g4)
    : mode_(mode), g_(g), gr_{g1, g2, g3, g4} {
  for (double v : {g, g1, g2, g3, g4}) {
    if (!std::isfinite(v) || v <= 0.0)
      throw std::invalid_argument(
          "coupling parameters must be finite and strictly positive");
  }
  ghat_ = g1 + g2 + g3 + g4 - g;
}

double CouplingParams::gr(int r) const {
  if (r < 1 || r > 4) throw std::invalid_argument("coupling index must be 1..4");
  return gr_[r - 1];
}

Configuration::Configuration(Mode mode, std::vector<double> positions)
    : mode_(mode), x_(std::move(positions)) {
  if (x_.empty()) throw chamber_violation("configuration must be nonempty");
  if (!chamber_interior(mode_, x_))
    throw chamber_violation(
        "positions must be strictly increasing and strictly inside the open "
        "chamber");
}

PhasePoint::PhasePoint(std::vector<double> p, Configuration x)
    : momenta(std::move(p)), positions(std::move(x)) {
  if (static_cast<int>(momenta.size()) != positions.size())
    throw std::invalid_argument("momenta and positions must have equal length");
  for (double pj : momenta)
    if (!std::isfinite(pj))
      throw std::invalid_argument("momenta must be finite");
}

}  // namespace rsequil
