#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rsequil/types.hpp"

namespace rsequil::sweep {

enum class Axis { g, g1, g2, g3, g4 };

const char* to_string(Axis a);
Axis axis_from_string(std::string_view s);  // throws std::invalid_argument

struct SweepSpec {
  Mode mode = Mode::trigonometric;
  double g = 0, g1 = 0, g2 = 0, g3 = 0, g4 = 0;
  Axis axis = Axis::g;
  double from = 0, to = 0;
  int steps = 0;  // >= 2
  int n = 0;
};

struct SweepRow {
  double value = 0.0;            // swept coupling value
  std::vector<double> zeros;
  double h0 = 0.0;               // H(0, zeros)
  double bethe_max = 0.0;        // max normalized Bethe residual
  std::string error;             // nonempty if this row failed
};

/// One row per sweep value, in ascending order. Rows are independent and run
/// under the chosen execution policy; failures are recorded per row.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, Exec exec = Exec::openmp);

/// Fixed, documented CSV header for n-zero sweep rows.
std::string csv_header(int n);

/// Full CSV document (header + rows, 17-significant-digit floats, LF endings).
std::string to_csv(const std::vector<SweepRow>& rows, int n);

}  // namespace rsequil::sweep
