#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

namespace rsequil {

using cdouble = std::complex<double>;

enum class Mode { trigonometric, rational };

const char* to_string(Mode m);
Mode mode_from_string(std::string_view s);  // accepts "trig"/"trigonometric"/"rational"

/// Execution policy for the data-parallel kernels (multi-start minimization,
/// sweeps, root-finder grids). The serial path is the reference; both paths
/// produce bit-identical results.
enum class Exec { serial, openmp };

/// Positive couplings (g, g1..g4) of the BC-type Ruijsenaars-Schneider model
/// plus the derived combination ghat = g1+g2+g3+g4-g entering both
/// eigenvalue formulas. Construction rejects non-positive or non-finite input.
class CouplingParams {
 public:
  CouplingParams(Mode mode, double g, double g1, double g2, double g3, double g4);

  Mode mode() const { return mode_; }
  double g() const { return g_; }
  double g1() const { return gr_[0]; }
  double g2() const { return gr_[1]; }
  double g3() const { return gr_[2]; }
  double g4() const { return gr_[3]; }
  double gr(int r) const;  // r = 1..4
  double ghat() const { return ghat_; }

 private:
  Mode mode_;
  double g_;
  double gr_[4];
  double ghat_;
};

/// Strictly increasing particle positions inside the open chamber:
/// (0, pi/2) in trigonometric mode, (0, inf) in rational mode.
class Configuration {
 public:
  Configuration(Mode mode, std::vector<double> positions);

  Mode mode() const { return mode_; }
  const std::vector<double>& positions() const { return x_; }
  int size() const { return static_cast<int>(x_.size()); }
  double operator[](int j) const { return x_[static_cast<size_t>(j)]; }

 private:
  Mode mode_;
  std::vector<double> x_;
};

/// Momenta and positions jointly; the argument of the Hamiltonian.
struct PhasePoint {
  std::vector<double> momenta;
  Configuration positions;

  PhasePoint(std::vector<double> p, Configuration x);
};

/// Upper chamber wall: pi/2 for trigonometric mode, +inf for rational.
double chamber_upper(Mode m);

/// True iff x is strictly increasing and strictly inside the open chamber.
bool chamber_interior(Mode m, const std::vector<double>& x);

}  // namespace rsequil
