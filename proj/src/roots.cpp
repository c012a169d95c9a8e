#include "rsequil/roots.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "rsequil/errors.hpp"
#include "rsequil/polynomials.hpp"

namespace rsequil::roots {

namespace {

struct Bracket {
  double lo, hi, flo, fhi;
};

struct ScanResult {
  std::vector<Bracket> brackets;
  std::vector<double> exact;  // grid points where f is exactly zero
  std::vector<double> pts, vals;

  int count() const {
    return static_cast<int>(brackets.size() + exact.size());
  }

};

using RealFn = std::function<double(double)>;

/// Uniform grid of npts points spanning [lo, hi] inclusive.
ScanResult scan(const RealFn& f, double lo, double hi, int npts, Exec exec) {
  std::vector<double> pts(npts), vals(npts);
  const double h = (hi - lo) / (npts - 1);
  for (int i = 0; i < npts; ++i) pts[i] = lo + i * h;
  pts[npts - 1] = hi;

#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (exec == Exec::openmp)
#endif
  for (int i = 0; i < npts; ++i) vals[i] = f(pts[i]);
  (void)exec;

  ScanResult r;
  for (int i = 0; i < npts; ++i) {
    if (vals[i] == 0.0) r.exact.push_back(pts[i]);
  }
  for (int i = 0; i + 1 < npts; ++i) {
    if (vals[i] * vals[i + 1] < 0.0)
      r.brackets.push_back({pts[i], pts[i + 1], vals[i], vals[i + 1]});
  }
  r.pts = std::move(pts);
  r.vals = std::move(vals);
  return r;
}

/// Bisection to bisect_tol, then Newton with a central-difference derivative,
/// clamped to the bracket; a Newton escape falls back to bisection alone.
double polish(const RealFn& f, Bracket br, const RootFindSettings& s, double span) {
  double a = br.lo, b = br.hi, fa = br.flo;
  while (b - a > s.bisect_tol) {
    const double mid = 0.5 * (a + b);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fa < 0.0) != (fm < 0.0)) {
      b = mid;
    } else {
      a = mid;
      fa = fm;
    }
  }

  const double hstep = 1e-7 * span;
  double x = 0.5 * (a + b);
  bool escaped = false;
  for (int it = 0; it < s.max_newton_steps; ++it) {
    const double fx = f(x);
    const double dfx = (f(x + hstep) - f(x - hstep)) / (2.0 * hstep);
    if (dfx == 0.0) break;
    const double dx = -fx / dfx;
    const double xn = x + dx;
    if (xn < a || xn > b) {
      escaped = true;
      break;
    }
    x = xn;
    if (std::abs(dx) <= s.newton_tol * std::max(1.0, std::abs(x))) return x;
  }
  if (escaped) {
    // guaranteed-convergence fallback
    while (b - a > 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, b)) {
      const double mid = 0.5 * (a + b);
      const double fm = f(mid);
      if (fm == 0.0) return mid;
      if ((fa < 0.0) != (fm < 0.0)) {
        b = mid;
      } else {
        a = mid;
        fa = fm;
      }
    }
    return 0.5 * (a + b);
  }
  return x;
}

std::vector<double> polish_all(const RealFn& f, const ScanResult& sc,
                               const RootFindSettings& s, double span, Exec exec) {
  const int nb = static_cast<int>(sc.brackets.size());
  std::vector<double> out(nb);

#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (exec == Exec::openmp)
#endif
  for (int i = 0; i < nb; ++i) out[i] = polish(f, sc.brackets[i], s, span);
  (void)exec;

  out.insert(out.end(), sc.exact.begin(), sc.exact.end());
  std::sort(out.begin(), out.end());

  // simplicity guard: the derivative at each zero, times the width of the
  // window to the neighboring zeros, must not vanish against the
  // polynomial's size on that window. The window keeps the test meaningful
  // when zeros sit orders of magnitude below the search interval.
  const double hstep = 1e-7 * span;
  const double grid_lo = sc.pts.front();
  for (size_t i = 0; i < out.size(); ++i) {
    const double z = out[i];
    const double lo_b = i == 0 ? grid_lo : out[i - 1];
    const double hi_b =
        i + 1 < out.size() ? out[i + 1] : std::min(sc.pts.back(), 2.0 * z - lo_b);
    double local = 0.0;
    for (size_t k = 0; k < sc.pts.size(); ++k)
      if (sc.pts[k] >= lo_b && sc.pts[k] <= hi_b)
        local = std::max(local, std::abs(sc.vals[k]));
    const double df = (f(z + hstep) - f(z - hstep)) / (2.0 * hstep);
    if (!(std::abs(df) * (hi_b - lo_b) > 1e-8 * local))
      throw simplicity_error("zero at x=" + std::to_string(z) +
                             " failed the simple-root derivative test");
  }
  return out;
}

/// Scan at base density, refine (doubling twice) on a count mismatch.
ScanResult scan_with_refinement(const RealFn& f, double lo, double hi, int n,
                                const RootFindSettings& s, Exec exec, int* found) {
  const int m = s.grid_per_root * n;
  ScanResult sc = scan(f, lo, hi, m + 2, exec);
  *found = sc.count();
  for (int mult : {2, 4}) {
    if (*found == n) break;
    sc = scan(f, lo, hi, mult * m + 2, exec);
    *found = sc.count();
  }
  return sc;
}

}  // namespace

void validate(const RootFindSettings& s) {
  if (s.grid_per_root <= 0 || s.bisect_tol <= 0.0 || s.newton_tol <= 0.0 ||
      s.max_newton_steps <= 0)
    throw std::invalid_argument("RootFindSettings: all fields must be positive");
  if (s.newton_tol > s.bisect_tol)
    throw std::invalid_argument(
        "RootFindSettings: newton_tol must not exceed bisect_tol");
}

Configuration find_zeros_trig(const CouplingParams& c, int n,
                              const RootFindSettings& s, Exec exec) {
  if (c.mode() != Mode::trigonometric)
    throw mode_mismatch("find_zeros_trig: rational couplings");
  if (n < 1) throw std::invalid_argument("find_zeros_trig: n must be >= 1");
  validate(s);

  const auto p = polynomials::aw_params_from_couplings(c);
  const RealFn f = [&](double t) {
    return polynomials::aw_eval(p, n, t).real();
  };
  const double hi = std::numbers::pi / 2;

  int found = 0;
  ScanResult sc = scan_with_refinement(f, 0.0, hi, n, s, exec, &found);
  if (found != n)
    throw root_count_error("find_zeros_trig: expected " + std::to_string(n) +
                           " sign changes, found " + std::to_string(found) +
                           " after grid refinement");
  return Configuration(Mode::trigonometric, polish_all(f, sc, s, hi, exec));
}

Configuration find_zeros_rational(const CouplingParams& c, int n,
                                  const RootFindSettings& s, Exec exec) {
  if (c.mode() != Mode::rational)
    throw mode_mismatch("find_zeros_rational: trigonometric couplings");
  if (n < 1) throw std::invalid_argument("find_zeros_rational: n must be >= 1");
  validate(s);

  const double g = c.g();
  const polynomials::WilsonParams p(c.g1() / g, c.g2() / g, c.g3() / g, c.g4() / g);
  const RealFn f = [&](double t) {
    return polynomials::wilson_eval(p, n, t / g).real();
  };

  // upper bound scaled like the zeros themselves: x_j = g y_j with the
  // largest Wilson zero y_n = O(sum of parameters + n), parameters g_r/g
  const double u0 = c.g1() + c.g2() + c.g3() + c.g4() + (2.0 * n + 2.0) * g;
  double u = u0;
  int found = 0;
  for (int doublings = 0; doublings <= 10; ++doublings, u *= 2.0) {
    ScanResult sc = scan_with_refinement(f, 0.0, u, n, s, exec, &found);
    if (found == n)
      return Configuration(Mode::rational, polish_all(f, sc, s, u, exec));
    if (found > n)
      throw root_count_error("find_zeros_rational: expected " + std::to_string(n) +
                             " sign changes, found " + std::to_string(found) +
                             " after grid refinement");
  }
  throw unbounded_search_error(
      "find_zeros_rational: fewer than " + std::to_string(n) +
      " sign changes up to the search cap U = 2^10 U0 (last count " +
      std::to_string(found) + ")");
}

}  // namespace rsequil::roots
