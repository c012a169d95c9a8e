#include "rsequil/report.hpp"

#include "rsequil/version.hpp"

namespace rsequil::report {

using jsonio::ordered_json;

ordered_json couplings_json(const CouplingParams& c) {
  ordered_json j;
  j["g"] = c.g();
  j["g1"] = c.g1();
  j["g2"] = c.g2();
  j["g3"] = c.g3();
  j["g4"] = c.g4();
  return j;
}

ordered_json make_record(const CouplingParams& c, int n, ordered_json zeros,
                         ordered_json residuals, ordered_json checks) {
  ordered_json j;
  j["mode"] = to_string(c.mode());
  j["couplings"] = couplings_json(c);
  j["n"] = n;
  j["zeros"] = std::move(zeros);
  j["residuals"] = std::move(residuals);
  j["checks"] = std::move(checks);
  j["version"] = kVersion;
  return j;
}

namespace {

ordered_json check_json(const equilibrium::CheckResult& cr) {
  ordered_json j;
  j["value"] = cr.value;
  j["tol"] = cr.tol;
  j["pass"] = cr.pass;
  if (!cr.error.empty()) j["error"] = cr.error;
  return j;
}

}  // namespace

ordered_json to_json(const equilibrium::VerificationReport& r) {
  const CouplingParams c(r.mode, r.g, r.g1, r.g2, r.g3, r.g4);

  ordered_json residuals;
  residuals["bethe"] = r.bethe_residuals;
  residuals["bethe_max"] = r.bethe.value;
  residuals["v_re"] = r.potential_re;
  residuals["v_im"] = r.potential_im;
  residuals["hamiltonian0"] = r.hamiltonian0;
  residuals["diffeq_max"] = r.diffeq.value;
  residuals["factorization_max"] = r.factorization.value;
  residuals["vanish_max"] = r.vanish.value;
  if (r.rescale) residuals["rescale_deviation"] = r.rescale->value;

  ordered_json checks;
  checks["bethe"] = check_json(r.bethe);
  checks["positivity"] = check_json(r.positivity);
  checks["hamiltonian"] = check_json(r.hamiltonian);
  checks["diffeq"] = check_json(r.diffeq);
  checks["factorization"] = check_json(r.factorization);
  checks["vanish"] = check_json(r.vanish);
  if (r.rescale) checks["rescale"] = check_json(*r.rescale);
  checks["overall"] = r.overall;

  return make_record(c, r.n, ordered_json(r.zeros), std::move(residuals),
                     std::move(checks));
}

}  // namespace rsequil::report
