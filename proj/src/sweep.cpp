#include "rsequil/sweep.hpp"

#include <stdexcept>

#include "rsequil/equilibrium.hpp"
#include "rsequil/jsonio.hpp"
#include "rsequil/roots.hpp"

namespace rsequil::sweep {

const char* to_string(Axis a) {
  switch (a) {
    case Axis::g: return "g";
    case Axis::g1: return "g1";
    case Axis::g2: return "g2";
    case Axis::g3: return "g3";
    case Axis::g4: return "g4";
  }
  return "?";
}

Axis axis_from_string(std::string_view s) {
  if (s == "g") return Axis::g;
  if (s == "g1") return Axis::g1;
  if (s == "g2") return Axis::g2;
  if (s == "g3") return Axis::g3;
  if (s == "g4") return Axis::g4;
  throw std::invalid_argument("unknown sweep axis '" + std::string(s) +
                              "' (expected g|g1|g2|g3|g4)");
}

namespace {

CouplingParams with_axis(const SweepSpec& s, double value) {
  double g = s.g, g1 = s.g1, g2 = s.g2, g3 = s.g3, g4 = s.g4;
  switch (s.axis) {
    case Axis::g: g = value; break;
    case Axis::g1: g1 = value; break;
    case Axis::g2: g2 = value; break;
    case Axis::g3: g3 = value; break;
    case Axis::g4: g4 = value; break;
  }
  return CouplingParams(s.mode, g, g1, g2, g3, g4);
}

SweepRow compute_row(const SweepSpec& s, double value) {
  SweepRow row;
  row.value = value;
  try {
    const CouplingParams c = with_axis(s, value);
    const Configuration zeros = s.mode == Mode::trigonometric
                                    ? roots::find_zeros_trig(c, s.n)
                                    : roots::find_zeros_rational(c, s.n);
    row.zeros = zeros.positions();
    row.h0 = equilibrium::hamiltonian_at_rest(c, zeros);
    row.bethe_max = equilibrium::bethe_residual_max(c, zeros);
  } catch (const std::exception& e) {
    row.error = e.what();
    row.zeros.clear();
  }
  return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec, Exec exec) {
  if (spec.steps < 2)
    throw std::invalid_argument("run_sweep: steps must be >= 2");
  if (spec.n < 1) throw std::invalid_argument("run_sweep: n must be >= 1");

  std::vector<SweepRow> rows(static_cast<size_t>(spec.steps));
  const double h = (spec.to - spec.from) / (spec.steps - 1);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (exec == Exec::openmp)
#endif
  for (int i = 0; i < spec.steps; ++i)
    rows[static_cast<size_t>(i)] = compute_row(spec, spec.from + i * h);
  (void)exec;

  return rows;
}

std::string csv_header(int n) {
  std::string h = "value";
  for (int j = 1; j <= n; ++j) h += ",x_" + std::to_string(j);
  h += ",h0,bethe_max,error";
  return h;
}

std::string to_csv(const std::vector<SweepRow>& rows, int n) {
  std::string out = csv_header(n);
  out += '\n';
  for (const auto& row : rows) {
    out += jsonio::format_double(row.value);
    for (int j = 0; j < n; ++j) {
      out += ',';
      if (j < static_cast<int>(row.zeros.size()))
        out += jsonio::format_double(row.zeros[static_cast<size_t>(j)]);
    }
    out += ',';
    if (row.error.empty()) out += jsonio::format_double(row.h0);
    out += ',';
    if (row.error.empty()) out += jsonio::format_double(row.bethe_max);
    out += ',';
    // error field is RFC-4180 quoted (messages may contain commas)
    if (!row.error.empty()) {
      out += '"';
      for (char ch : row.error) {
        if (ch == '"') out += '"';
        out += ch;
      }
      out += '"';
    }
    out += '\n';
  }
  return out;
}

}  // namespace rsequil::sweep
