// rsequil — equilibrium configurations of BC-type Ruijsenaars-Schneider
// systems and their verification against Askey-Wilson / Wilson zeros.
//
// Subcommands:
//   zeros     compute the equilibrium positions (polynomial zeros)
//   verify    run the full verification report
//   minimize  multi-start derivative-free Hamiltonian minimization
//   sweep     vary one coupling and emit a CSV of zero trajectories
//
// Exit codes: 0 success/pass, 1 computation or check failure, 2 usage error.

#include <algorithm>
#include <cmath>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rsequil/equilibrium.hpp"
#include "rsequil/jsonio.hpp"
#include "rsequil/report.hpp"
#include "rsequil/roots.hpp"
#include "rsequil/sweep.hpp"
#include "rsequil/version.hpp"

namespace {

using rsequil::jsonio::ordered_json;

struct CommonOpts {
  std::string mode;
  int n = 0;
  double g = 0, g1 = 0, g2 = 0, g3 = 0, g4 = 0;
  std::string format;
  std::string output;
};

void add_common(CLI::App* cmd, CommonOpts& o,
                const std::vector<std::string>& formats) {
  cmd->add_option("--mode", o.mode, "problem mode")
      ->required()
      ->check(CLI::IsMember({"trig", "trigonometric", "rational"}));
  cmd->add_option("--n", o.n, "degree / particle number (>= 1)")
      ->required()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--g", o.g, "interaction coupling g")
      ->required()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--g1", o.g1, "external coupling g1")
      ->required()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--g2", o.g2, "external coupling g2")
      ->required()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--g3", o.g3, "external coupling g3")
      ->required()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--g4", o.g4, "external coupling g4")
      ->required()
      ->check(CLI::PositiveNumber);
  o.format = formats.front();
  cmd->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember(formats));
  cmd->add_option("--output", o.output, "write output to PATH (atomic)");
}

rsequil::CouplingParams couplings(const CommonOpts& o) {
  return {rsequil::mode_from_string(o.mode), o.g, o.g1, o.g2, o.g3, o.g4};
}

int emit(std::string text, const std::string& output) {
  if (output.empty()) {
    std::cout << text;
    std::cout.flush();
  } else {
    rsequil::jsonio::write_atomic(output, text);
  }
  return 0;
}

rsequil::Configuration compute_zeros(const rsequil::CouplingParams& c, int n) {
  return c.mode() == rsequil::Mode::trigonometric
             ? rsequil::roots::find_zeros_trig(c, n)
             : rsequil::roots::find_zeros_rational(c, n);
}

int cmd_zeros(const CommonOpts& o) {
  const auto c = couplings(o);
  const auto zeros = compute_zeros(c, o.n);
  const double bmax = rsequil::equilibrium::bethe_residual_max(c, zeros);

  if (o.format == "csv") {
    std::string out = "mode,g,g1,g2,g3,g4,n";
    for (int j = 1; j <= o.n; ++j) out += ",x_" + std::to_string(j);
    out += ",bethe_max\n";
    out += rsequil::to_string(c.mode());
    for (double v : {c.g(), c.g1(), c.g2(), c.g3(), c.g4()})
      out += "," + rsequil::jsonio::format_double(v);
    out += "," + std::to_string(o.n);
    for (double z : zeros.positions())
      out += "," + rsequil::jsonio::format_double(z);
    out += "," + rsequil::jsonio::format_double(bmax) + "\n";
    return emit(std::move(out), o.output);
  }

  ordered_json residuals;
  residuals["bethe_max"] = bmax;
  auto rec = rsequil::report::make_record(c, o.n, ordered_json(zeros.positions()),
                                          std::move(residuals),
                                          ordered_json::object());
  return emit(rsequil::jsonio::to_canonical_string(rec) + "\n", o.output);
}

int cmd_verify(const CommonOpts& o, const rsequil::equilibrium::VerifyOptions& vo) {
  const auto c = couplings(o);
  const auto rep = rsequil::equilibrium::verify_equilibrium(c, o.n, vo);
  const auto rec = rsequil::report::to_json(rep);
  emit(rsequil::jsonio::to_canonical_string(rec) + "\n", o.output);
  return rep.overall ? 0 : 1;
}

int cmd_minimize(const CommonOpts& o, int starts, std::uint64_t seed) {
  const auto c = couplings(o);
  rsequil::equilibrium::MinimizeSettings ms;
  ms.starts = starts;
  ms.seed = seed;
  const auto res = rsequil::equilibrium::minimize_hamiltonian_oracle(c, o.n, ms);
  const auto zeros = compute_zeros(c, o.n);

  double zero_dev = 0.0;
  for (int j = 0; j < o.n; ++j)
    zero_dev = std::max(zero_dev, std::abs(res.positions[static_cast<size_t>(j)] - zeros[j]));
  double pmax = 0.0;
  for (double p : res.momenta) pmax = std::max(pmax, std::abs(p));

  ordered_json residuals;
  residuals["h_best"] = res.h;
  residuals["zero_deviation"] = zero_dev;
  residuals["momentum_max"] = pmax;

  auto rec = rsequil::report::make_record(c, o.n, ordered_json(zeros.positions()),
                                          std::move(residuals),
                                          ordered_json::object());
  ordered_json mj;
  mj["h"] = res.h;
  mj["positions"] = res.positions;
  mj["momenta"] = res.momenta;
  ordered_json sj = ordered_json::array();
  for (const auto& st : res.starts) {
    ordered_json row;
    row["start"] = st.start;
    row["h"] = st.h;
    row["iters"] = st.iters;
    sj.push_back(std::move(row));
  }
  mj["starts"] = std::move(sj);
  rec["minimize"] = std::move(mj);
  return emit(rsequil::jsonio::to_canonical_string(rec) + "\n", o.output);
}

int cmd_sweep(const CommonOpts& o, const std::string& axis, double from, double to,
              int steps) {
  rsequil::sweep::SweepSpec spec;
  spec.mode = rsequil::mode_from_string(o.mode);
  spec.g = o.g;
  spec.g1 = o.g1;
  spec.g2 = o.g2;
  spec.g3 = o.g3;
  spec.g4 = o.g4;
  spec.axis = rsequil::sweep::axis_from_string(axis);
  spec.from = from;
  spec.to = to;
  spec.steps = steps;
  spec.n = o.n;

  const auto rows = rsequil::sweep::run_sweep(spec);
  emit(rsequil::sweep::to_csv(rows, o.n), o.output);
  for (const auto& row : rows)
    if (!row.error.empty()) return 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"BC-type Ruijsenaars-Schneider equilibrium configurations"};
  app.set_version_flag("--version", rsequil::kVersion);
  app.require_subcommand(1);

  CommonOpts zo, vo_opts, mo, so;

  auto* zeros_cmd = app.add_subcommand("zeros", "compute equilibrium positions");
  add_common(zeros_cmd, zo, {"json", "csv"});

  auto* verify_cmd = app.add_subcommand("verify", "full verification report");
  add_common(verify_cmd, vo_opts, {"json"});
  rsequil::equilibrium::VerifyOptions vopt;
  verify_cmd->add_option("--tol-bethe", vopt.tol.bethe, "Bethe residual tolerance");
  verify_cmd->add_option("--tol-diffeq", vopt.tol.diffeq,
                         "difference-equation residual tolerance");
  verify_cmd->add_flag("--check-rescale", vopt.check_rescale,
                       "also verify the rational rescaling identity");
  verify_cmd->add_option("--rescale-g", vopt.rescale_g,
                         "g value for the rescaling identity check")
      ->check(CLI::PositiveNumber);

  auto* minimize_cmd =
      app.add_subcommand("minimize", "multi-start Hamiltonian minimization");
  add_common(minimize_cmd, mo, {"json"});
  int starts = 8;
  std::uint64_t seed = 0;
  minimize_cmd->add_option("--starts", starts, "number of random starts")
      ->check(CLI::PositiveNumber);
  minimize_cmd->add_option("--seed", seed, "seed for start sampling");

  auto* sweep_cmd = app.add_subcommand("sweep", "sweep one coupling, emit CSV");
  add_common(sweep_cmd, so, {"csv"});
  std::string axis;
  double from = 0, to = 0;
  int steps = 0;
  sweep_cmd->add_option("--sweep-axis", axis, "coupling to sweep")
      ->required()
      ->check(CLI::IsMember({"g", "g1", "g2", "g3", "g4"}));
  sweep_cmd->add_option("--sweep-from", from, "first sweep value")->required();
  sweep_cmd->add_option("--sweep-to", to, "last sweep value")->required();
  sweep_cmd->add_option("--sweep-steps", steps, "number of sweep values (>= 2)")
      ->required()
      ->check(CLI::Range(2, 1000000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*verify_cmd && vopt.check_rescale &&
        rsequil::mode_from_string(vo_opts.mode) != rsequil::Mode::rational) {
      std::cerr << "usage error: --check-rescale requires --mode rational\n";
      return 2;
    }
    if (*zeros_cmd) return cmd_zeros(zo);
    if (*verify_cmd) return cmd_verify(vo_opts, vopt);
    if (*minimize_cmd) return cmd_minimize(mo, starts, seed);
    if (*sweep_cmd) return cmd_sweep(so, axis, from, to, steps);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
