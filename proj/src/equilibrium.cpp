#include "rsequil/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "rsequil/detail/linalg.hpp"
#include "rsequil/detail/mpcomplex.hpp"
#include "rsequil/detail/rng.hpp"
#include "rsequil/errors.hpp"
#include "rsequil/polynomials.hpp"

namespace rsequil::equilibrium {

namespace {

using rsequil::detail::MpComplex;
using rsequil::detail::MpReal;
using rsequil::detail::mp_cos;
using rsequil::detail::mp_sin;

constexpr cdouble kI{0.0, 1.0};
constexpr double kBig = 1e300;

cdouble v_pair(Mode m, double g, double t) {
  if (m == Mode::trigonometric) return std::sin(t + kI * g) / std::sin(cdouble(t));
  return (t + kI * g) / t;
}

cdouble w_external(const CouplingParams& c, double t) {
  if (c.mode() == Mode::trigonometric) {
    const cdouble num = std::sin(t + kI * c.g1()) * std::cos(t + kI * c.g2()) *
                        std::sin(t + kI * c.g3()) * std::cos(t + kI * c.g4());
    const double st = std::sin(t), ct = std::cos(t);
    return num / (st * st * ct * ct);
  }
  // the overall sign makes V_j real and positive at the ground-state
  // equilibrium, so that H(0,x) = sum_j (|V_j| - Re V_j) can reach zero
  const cdouble num = (t + kI * c.g1()) * (t + kI * c.g2()) * (t + kI * c.g3()) *
                      (t + kI * c.g4());
  return -num / (t * t);
}

/// No validation: callers guarantee distinct interior components.
cdouble potential_raw(const CouplingParams& c, const std::vector<double>& x,
                      int j, int sign) {
  const double xj = sign * x[static_cast<size_t>(j)];
  cdouble val = w_external(c, xj);
  for (size_t k = 0; k < x.size(); ++k) {
    if (static_cast<int>(k) == j) continue;
    const double xk = sign * x[k];
    val *= v_pair(c.mode(), c.g(), xj + xk) * v_pair(c.mode(), c.g(), xj - xk);
  }
  return val;
}

double hamiltonian_raw(const CouplingParams& c, const std::vector<double>& p,
                       const std::vector<double>& x) {
  double h = 0.0;
  for (size_t j = 0; j < x.size(); ++j) {
    const cdouble vj = potential_raw(c, x, static_cast<int>(j), +1);
    h += std::cosh(p[j]) * std::abs(vj) - vj.real();
  }
  return h;
}

/// Raw residuals Im V_j. The additive form has no spurious zeros: it grows
/// toward the chamber walls and (rational mode) toward infinity, unlike any
/// |V|-normalized variant. vscale receives 1 + max_j |V_j| for tolerance
/// scaling.
std::vector<double> residual_raw(const CouplingParams& c,
                                 const std::vector<double>& x,
                                 double* vscale = nullptr) {
  std::vector<double> r(x.size());
  double vmax = 0.0;
  for (size_t j = 0; j < x.size(); ++j) {
    const cdouble vj = potential_raw(c, x, static_cast<int>(j), +1);
    r[j] = vj.imag();
    vmax = std::max(vmax, std::abs(vj));
  }
  if (vscale) *vscale = 1.0 + vmax;
  return r;
}

double linf(const std::vector<double>& v) {
  double m = 0.0;
  for (double t : v) m = std::max(m, std::abs(t));
  return m;
}

bool admissible(Mode mode, const std::vector<double>& x) {
  return chamber_interior(mode, x);
}

std::vector<double> default_start(const CouplingParams& c, int n) {
  std::vector<double> x(n);
  if (c.mode() == Mode::trigonometric) {
    for (int j = 1; j <= n; ++j)
      x[j - 1] = j * std::numbers::pi / (2.0 * (n + 1));
  } else {
    const double maxr = std::max({c.g1(), c.g2(), c.g3(), c.g4()});
    const double span = 1.0 + maxr / c.g();
    for (int j = 1; j <= n; ++j) x[j - 1] = j * span / n;
  }
  return x;
}

double width_scale(const CouplingParams& c, const std::vector<double>& x) {
  if (c.mode() == Mode::trigonometric) return std::numbers::pi / 2;
  return std::max(1.0, x.back());
}

// ---------------------------------------------------------------------------
// position reparameterizations for the unconstrained minimizer

void map_positions(Mode mode, const double* u, int n, std::vector<double>& x) {
  x.resize(n);
  if (mode == Mode::trigonometric) {
    // ordered logistic map of R^n onto 0 < x_1 < ... < x_n < pi/2
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      s += std::exp(std::clamp(u[i], -40.0, 40.0));
      x[i] = s;
    }
    const double total = s + 1.0;
    for (int i = 0; i < n; ++i) x[i] *= std::numbers::pi / 2 / total;
  } else {
    // ordered exponential-increment map onto 0 < x_1 < ... < x_n
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      s += std::exp(std::clamp(u[i], -40.0, 40.0));
      x[i] = s;
    }
  }
}

struct NelderMead {
  int dim;
  std::vector<std::vector<double>> verts;
  std::vector<double> fvals;

  template <typename F>
  void init(const std::vector<double>& center, double radius, const F& f) {
    verts.assign(dim + 1, center);
    for (int i = 1; i <= dim; ++i) verts[i][i - 1] += radius;
    fvals.resize(dim + 1);
    for (int i = 0; i <= dim; ++i) fvals[i] = f(verts[i]);
  }

  void order() {
    std::vector<int> idx(dim + 1);
    for (int i = 0; i <= dim; ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return fvals[a] < fvals[b]; });
    std::vector<std::vector<double>> v2(dim + 1);
    std::vector<double> f2(dim + 1);
    for (int i = 0; i <= dim; ++i) {
      v2[i] = verts[idx[i]];
      f2[i] = fvals[idx[i]];
    }
    verts.swap(v2);
    fvals.swap(f2);
  }

  double diameter() const {
    double d = 0.0;
    for (int i = 1; i <= dim; ++i)
      for (int k = 0; k < dim; ++k)
        d = std::max(d, std::abs(verts[i][k] - verts[0][k]));
    return d;
  }

  template <typename F>
  void step(const F& f) {
    order();
    std::vector<double> centroid(dim, 0.0);
    for (int i = 0; i < dim; ++i)
      for (int k = 0; k < dim; ++k) centroid[k] += verts[i][k];
    for (int k = 0; k < dim; ++k) centroid[k] /= dim;

    auto blend = [&](double t) {
      std::vector<double> p(dim);
      for (int k = 0; k < dim; ++k)
        p[k] = centroid[k] + t * (centroid[k] - verts[dim][k]);
      return p;
    };

    const auto xr = blend(1.0);
    const double fr = f(xr);
    if (fr < fvals[0]) {
      const auto xe = blend(2.0);
      const double fe = f(xe);
      if (fe < fr) {
        verts[dim] = xe;
        fvals[dim] = fe;
      } else {
        verts[dim] = xr;
        fvals[dim] = fr;
      }
      return;
    }
    if (fr < fvals[dim - 1]) {
      verts[dim] = xr;
      fvals[dim] = fr;
      return;
    }
    if (fr < fvals[dim]) {
      const auto xc = blend(0.5);  // outside contraction
      const double fc = f(xc);
      if (fc <= fr) {
        verts[dim] = xc;
        fvals[dim] = fc;
        return;
      }
    } else {
      const auto xc = blend(-0.5);  // inside contraction
      const double fc = f(xc);
      if (fc < fvals[dim]) {
        verts[dim] = xc;
        fvals[dim] = fc;
        return;
      }
    }
    for (int i = 1; i <= dim; ++i) {  // shrink toward the best vertex
      for (int k = 0; k < dim; ++k)
        verts[i][k] = verts[0][k] + 0.5 * (verts[i][k] - verts[0][k]);
      fvals[i] = f(verts[i]);
    }
  }
};

struct StartOutcome {
  std::vector<double> z;  // (p_1..p_n, u_1..u_n)
  double h = kBig;
  int iters = 0;
};

StartOutcome run_start(const CouplingParams& c, int n, std::uint64_t start_seed,
                       const MinimizeSettings& s) {
  detail::SplitMix64 rng(start_seed);
  const int dim = 2 * n;

  std::vector<double> z0(dim);
  for (int i = 0; i < n; ++i) z0[i] = rng.uniform(-1.0, 1.0);            // momenta
  for (int i = 0; i < n; ++i) z0[n + i] = rng.uniform(-2.0, 2.0);        // positions

  std::vector<double> xbuf;
  auto objective = [&](const std::vector<double>& z) {
    map_positions(c.mode(), z.data() + n, n, xbuf);
    if (!chamber_interior(c.mode(), xbuf)) return kBig;
    std::vector<double> p(z.begin(), z.begin() + n);
    const double h = hamiltonian_raw(c, p, xbuf);
    return std::isfinite(h) ? h : kBig;
  };

  NelderMead nm;
  nm.dim = dim;
  nm.init(z0, 0.5, objective);

  StartOutcome out;
  int iters = 0;
  int restarts = 0;
  while (iters < s.max_iters) {
    nm.step(objective);
    ++iters;
    nm.order();
    const double scale = std::max(1.0, linf(nm.verts[0]));
    if (nm.diameter() < s.diam_tol * scale) {
      if (nm.fvals[0] < 1e-15 || restarts >= 12) break;
      // re-seed a fresh simplex around the current best and keep polishing
      const double radius = std::max(1e-8, 0.5 * std::pow(0.2, restarts));
      nm.init(nm.verts[0], radius, objective);
      ++restarts;
    }
  }
  nm.order();
  out.z = nm.verts[0];
  out.h = nm.fvals[0];
  out.iters = iters;
  return out;
}

}  // namespace

cdouble potential(const CouplingParams& c, const Configuration& x, int j, int sign) {
  if (x.mode() != c.mode())
    throw mode_mismatch("potential: configuration mode differs from couplings");
  if (j < 0 || j >= x.size())
    throw std::invalid_argument("potential: index out of range");
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("potential: sign must be +1 or -1");
  return potential_raw(c, x.positions(), j, sign);
}

std::vector<cdouble> potential_values(const CouplingParams& c, const Configuration& x) {
  if (x.mode() != c.mode())
    throw mode_mismatch("potential_values: configuration mode differs from couplings");
  std::vector<cdouble> v(static_cast<size_t>(x.size()));
  for (int j = 0; j < x.size(); ++j) v[static_cast<size_t>(j)] = potential_raw(c, x.positions(), j, +1);
  return v;
}

double hamiltonian(const CouplingParams& c, const PhasePoint& pt) {
  if (pt.positions.mode() != c.mode())
    throw mode_mismatch("hamiltonian: phase point mode differs from couplings");
  return hamiltonian_raw(c, pt.momenta, pt.positions.positions());
}

double hamiltonian_at_rest(const CouplingParams& c, const Configuration& x) {
  if (x.mode() != c.mode())
    throw mode_mismatch("hamiltonian_at_rest: configuration mode differs from "
                        "couplings");
  const auto& xs = x.positions();
  const int n = x.size();

  // size the precision from the double-precision potential magnitudes
  double l2vmax = 0.0;
  for (int j = 0; j < n; ++j) {
    const cdouble vj = potential_raw(c, xs, j, +1);
    l2vmax = std::max(l2vmax, std::log2(std::max(1.0, std::abs(vj))));
  }
  const mpfr_prec_t prec =
      static_cast<mpfr_prec_t>(std::min(128.0 + l2vmax + 32.0 * n / 8.0, 16384.0));

  const bool trig = c.mode() == Mode::trigonometric;
  MpReal h(prec);
  for (int j = 0; j < n; ++j) {
    MpComplex v(1.0, 0.0, prec);
    if (trig) {
      v *= mp_sin(MpComplex(xs[j], c.g1(), prec)) *
           mp_cos(MpComplex(xs[j], c.g2(), prec)) *
           mp_sin(MpComplex(xs[j], c.g3(), prec)) *
           mp_cos(MpComplex(xs[j], c.g4(), prec));
      MpReal den = sin(MpReal(xs[j], prec)) * cos(MpReal(xs[j], prec));
      v /= MpComplex(den * den, MpReal(prec));
      for (int k = 0; k < n; ++k) {
        if (k == j) continue;
        for (double t : {xs[j] + xs[k], xs[j] - xs[k]}) {
          v *= mp_sin(MpComplex(t, c.g(), prec));
          v /= MpComplex(sin(MpReal(t, prec)), MpReal(prec));
        }
      }
    } else {
      for (double gr : {c.g1(), c.g2(), c.g3(), c.g4()})
        v *= MpComplex(xs[j], gr, prec);
      MpReal den = MpReal(xs[j], prec) * MpReal(xs[j], prec);
      v /= MpComplex(-den, MpReal(prec));  // w sign fixes V > 0 at equilibrium
      for (int k = 0; k < n; ++k) {
        if (k == j) continue;
        for (double t : {xs[j] + xs[k], xs[j] - xs[k]}) {
          v *= MpComplex(t, c.g(), prec);
          v /= MpComplex(t, 0.0, prec);
        }
      }
    }
    h += abs(v) - v.re;
  }
  return h.to_double();
}

std::vector<double> bethe_residual(const CouplingParams& c, const Configuration& x) {
  const auto v = potential_values(c, x);
  std::vector<double> r(v.size());
  for (size_t j = 0; j < v.size(); ++j) r[j] = v[j].imag();
  return r;
}

double bethe_residual_max(const CouplingParams& c, const Configuration& x) {
  const auto v = potential_values(c, x);
  double m = 0.0;
  for (const cdouble& vj : v)
    m = std::max(m, std::abs(vj.imag()) / (1.0 + std::abs(vj)));
  return m;
}

Configuration solve_bethe_newton(const CouplingParams& c, int n,
                                 std::optional<Configuration> x0, double tol) {
  if (n < 1) throw std::invalid_argument("solve_bethe_newton: n must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("solve_bethe_newton: tol must be > 0");

  std::vector<double> start;
  if (x0) {
    if (x0->mode() != c.mode())
      throw mode_mismatch("solve_bethe_newton: start mode differs from couplings");
    if (x0->size() != n)
      throw std::invalid_argument("solve_bethe_newton: start size differs from n");
    start = x0->positions();
  } else {
    start = default_start(c, n);
  }

  std::string last_failure;
  auto attempt = [&](std::vector<double> x) -> std::optional<Configuration> {

  // Per-component scales s_j = 1 + |V_j| are frozen during each line search:
  // the merit ||R/s||_2 is then honest (Im V_j grows toward the walls and, in
  // the rational mode, toward infinity, so no spurious attractors), while the
  // scaling keeps strongly coupled components from dominating the search.
  // Rational steps are taken in log-positions: the zeros can span decades.
  const bool logspace = c.mode() == Mode::rational;
  std::vector<double> scales(static_cast<size_t>(n));
  auto scaled = [&](const std::vector<double>& raw) {
    std::vector<double> out(raw.size());
    for (size_t j = 0; j < raw.size(); ++j) out[j] = raw[j] / scales[j];
    return out;
  };
  auto merit = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double t : v) s += t * t;
    return 0.5 * s;
  };
  auto refresh_scales = [&](const std::vector<double>& pos) {
    for (int j = 0; j < n; ++j)
      scales[static_cast<size_t>(j)] =
          1.0 + std::abs(potential_raw(c, pos, j, +1));
  };
  auto converged = [&](const std::vector<double>& raw) {
    for (int j = 0; j < n; ++j)
      if (!(std::abs(raw[static_cast<size_t>(j)]) <
            tol * scales[static_cast<size_t>(j)]))
        return false;
    return true;
  };

  refresh_scales(x);
  std::vector<double> r = residual_raw(c, x);

  for (int iter = 0; iter < 200; ++iter) {
    // convergence per component, relative to that component's potential
    // scale: Im V_j carries the size of V_j
    if (converged(r)) return Configuration(c.mode(), x);

    // numeric Jacobian, central differences; step kept below the smallest
    // gap so perturbed points stay distinct and interior
    double h = 1e-6 * width_scale(c, x);
    double gap = x[0];
    for (int k = 1; k < n; ++k) gap = std::min(gap, x[k] - x[k - 1]);
    if (c.mode() == Mode::trigonometric)
      gap = std::min(gap, std::numbers::pi / 2 - x[n - 1]);
    h = std::min(h, 0.25 * gap);

    std::vector<double> jac(static_cast<size_t>(n) * n);
    std::vector<double> xp = x;
    for (int k = 0; k < n; ++k) {
      xp[k] = x[k] + h;
      const auto rp = residual_raw(c, xp);
      xp[k] = x[k] - h;
      const auto rm = residual_raw(c, xp);
      xp[k] = x[k];
      // column scaling dx_k = x_k du_k in log-space
      const double colscale = logspace ? x[k] : 1.0;
      for (int j = 0; j < n; ++j)
        jac[j * n + k] = (rp[j] - rm[j]) * colscale /
                         (2.0 * h * scales[static_cast<size_t>(j)]);
    }

    const std::vector<double> rs = scaled(r);
    const double m0 = merit(rs);

    bool any_admissible = false;
    bool accepted = false;
    auto try_direction = [&](const std::vector<double>& dir) {
      for (double lambda = 1.0; lambda >= 0x1p-30; lambda *= 0.5) {
        std::vector<double> xt(n);
        for (int k = 0; k < n; ++k) {
          if (logspace) {
            const double du = std::clamp(lambda * dir[k], -30.0, 30.0);
            xt[k] = x[k] * std::exp(du);
          } else {
            xt[k] = x[k] + lambda * dir[k];
          }
        }
        if (!admissible(c.mode(), xt)) continue;
        any_admissible = true;
        const auto rt = residual_raw(c, xt);
        if (merit(scaled(rt)) < m0) {
          x = std::move(xt);
          r = rt;
          return true;
        }
      }
      return false;
    };

    {
      std::vector<double> step(rs);
      for (double& t : step) t = -t;
      std::vector<double> jcopy = jac;
      try {
        detail::solve_linear(std::move(jcopy), step, n);
        accepted = try_direction(step);
      } catch (const non_convergence&) {
        // singular Jacobian: handled by the regularized fallback below
      }
    }

    if (!accepted) {
      // Levenberg-Marquardt fallback: (J^T J + mu diag(J^T J)) d = -J^T r
      std::vector<double> jtj(static_cast<size_t>(n) * n, 0.0);
      std::vector<double> jtr(static_cast<size_t>(n), 0.0);
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
          for (int j = 0; j < n; ++j)
            jtj[i * n + k] += jac[j * n + i] * jac[j * n + k];
      for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) jtr[k] += jac[j * n + k] * rs[j];
      double diag_scale = 0.0;
      for (int k = 0; k < n; ++k) diag_scale = std::max(diag_scale, jtj[k * n + k]);
      if (diag_scale <= 0.0) diag_scale = 1.0;
      for (double mu = 1e-6; mu <= 1e8 && !accepted; mu *= 10.0) {
        std::vector<double> lhs = jtj;
        for (int k = 0; k < n; ++k) lhs[k * n + k] += mu * diag_scale;
        std::vector<double> step(jtr);
        for (double& t : step) t = -t;
        try {
          detail::solve_linear(std::move(lhs), step, n);
        } catch (const non_convergence&) {
          continue;
        }
        accepted = try_direction(step);
      }
    }

    if (!accepted) {
      // escape hatch: one round on the phase residuals arg V_j, which are
      // bounded and close to linear in the positions; any accepted phase
      // step re-enters the primary iteration
      auto phases = [&](const std::vector<double>& pos) {
        std::vector<double> ph(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) {
          const cdouble vj = potential_raw(c, pos, j, +1);
          ph[static_cast<size_t>(j)] = std::atan2(vj.imag(), vj.real());
        }
        return ph;
      };
      const std::vector<double> ph0 = phases(x);
      std::vector<double> pjac(static_cast<size_t>(n) * n);
      for (int k = 0; k < n; ++k) {
        xp[k] = x[k] + h;
        const auto pp = phases(xp);
        xp[k] = x[k] - h;
        const auto pm = phases(xp);
        xp[k] = x[k];
        const double colscale = logspace ? x[k] : 1.0;
        for (int j = 0; j < n; ++j) {
          double dphi = pp[j] - pm[j];
          if (dphi > std::numbers::pi) dphi -= 2.0 * std::numbers::pi;
          if (dphi < -std::numbers::pi) dphi += 2.0 * std::numbers::pi;
          pjac[j * n + k] = dphi * colscale / (2.0 * h);
        }
      }
      const double pm0 = merit(ph0);
      auto try_phase = [&](const std::vector<double>& dir) {
        for (double lambda = 1.0; lambda >= 0x1p-30; lambda *= 0.5) {
          std::vector<double> xt(n);
          for (int k = 0; k < n; ++k) {
            if (logspace) {
              const double du = std::clamp(lambda * dir[k], -30.0, 30.0);
              xt[k] = x[k] * std::exp(du);
            } else {
              xt[k] = x[k] + lambda * dir[k];
            }
          }
          if (!admissible(c.mode(), xt)) continue;
          if (merit(phases(xt)) < pm0) {
            x = std::move(xt);
            r = residual_raw(c, x);
            return true;
          }
        }
        return false;
      };
      {
        std::vector<double> step(ph0);
        for (double& t : step) t = -t;
        std::vector<double> jcopy = pjac;
        try {
          detail::solve_linear(std::move(jcopy), step, n);
          accepted = try_phase(step);
        } catch (const non_convergence&) {
        }
      }
      for (double mu = 1e-6; mu <= 1e8 && !accepted; mu *= 100.0) {
        std::vector<double> jtj(static_cast<size_t>(n) * n, 0.0);
        std::vector<double> jtr(static_cast<size_t>(n), 0.0);
        for (int i = 0; i < n; ++i)
          for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j)
              jtj[i * n + k] += pjac[j * n + i] * pjac[j * n + k];
        for (int k = 0; k < n; ++k)
          for (int j = 0; j < n; ++j) jtr[k] += pjac[j * n + k] * ph0[j];
        double ds = 0.0;
        for (int k = 0; k < n; ++k) ds = std::max(ds, jtj[k * n + k]);
        if (ds <= 0.0) ds = 1.0;
        for (int k = 0; k < n; ++k) jtj[k * n + k] += mu * ds;
        std::vector<double> step(jtr);
        for (double& t : step) t = -t;
        try {
          detail::solve_linear(std::move(jtj), step, n);
        } catch (const non_convergence&) {
          continue;
        }
        accepted = try_phase(step);
      }
    }

    if (!accepted) {
      last_failure = any_admissible
                         ? "solve_bethe_newton: stalled; no damped or "
                           "regularized step decreases the residual"
                         : "solve_bethe_newton: no backtracking step stays "
                           "inside the chamber";
      return std::nullopt;
    }
    refresh_scales(x);
  }
  last_failure = "solve_bethe_newton: not converged after 200 iterations";
  return std::nullopt;
  };

  if (x0) {
    if (auto sol = attempt(start)) return *sol;
    throw non_convergence(last_failure);
  }
  // The default guess can be badly mis-scaled against the true zero spread
  // (rational zeros reach ~ max g_r + n g); the solution is unique, so retry
  // from geometrically rescaled spans until the iteration lands in its basin.
  for (int m : {0, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 6, -6}) {
    std::vector<double> x = start;
    const double f = std::pow(2.0, m);
    bool ok = true;
    for (double& t : x) {
      t *= f;
      if (c.mode() == Mode::trigonometric && t >= std::numbers::pi / 2)
        ok = false;
    }
    if (!ok) continue;
    if (auto sol = attempt(std::move(x))) return *sol;
  }

  // degree continuation: warm-start from the (n-1)-particle solution with
  // one particle appended past the previous configuration
  if (n > 1) {
    const Configuration prev = solve_bethe_newton(c, n - 1, std::nullopt, tol);
    std::vector<double> x = prev.positions();
    const double back = x.back();
    if (c.mode() == Mode::trigonometric) {
      x.push_back((back + std::numbers::pi / 2) / 2.0);
    } else {
      const double gap = n >= 3 ? back - x[x.size() - 2] : back;
      x.push_back(back + std::max(gap, 2.0 * c.g()));
    }
    if (auto sol = attempt(std::move(x))) return *sol;
  }
  throw non_convergence(last_failure);
}

MinimizeResult minimize_hamiltonian_oracle(const CouplingParams& c, int n,
                                           const MinimizeSettings& s) {
  if (n < 1)
    throw std::invalid_argument("minimize_hamiltonian_oracle: n must be >= 1");
  if (s.starts < 1)
    throw std::invalid_argument("minimize_hamiltonian_oracle: starts must be >= 1");

  // per-start seeds drawn up front so results cannot depend on scheduling
  std::vector<std::uint64_t> seeds(static_cast<size_t>(s.starts));
  detail::SplitMix64 boot(s.seed);
  for (auto& sd : seeds) sd = boot.next();

  std::vector<StartOutcome> outcomes(static_cast<size_t>(s.starts));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (s.exec == Exec::openmp)
#endif
  for (int i = 0; i < s.starts; ++i) outcomes[static_cast<size_t>(i)] = run_start(c, n, seeds[static_cast<size_t>(i)], s);

  int best = 0;
  for (int i = 1; i < s.starts; ++i)
    if (outcomes[static_cast<size_t>(i)].h < outcomes[static_cast<size_t>(best)].h) best = i;

  const auto& win = outcomes[static_cast<size_t>(best)];
  MinimizeResult res;
  res.momenta.assign(win.z.begin(), win.z.begin() + n);
  map_positions(c.mode(), win.z.data() + n, n, res.positions);
  res.h = win.h;
  res.starts.reserve(static_cast<size_t>(s.starts));
  for (int i = 0; i < s.starts; ++i)
    res.starts.push_back({i, outcomes[static_cast<size_t>(i)].h, outcomes[static_cast<size_t>(i)].iters});
  return res;
}

namespace {

std::vector<double> diffeq_sample_points(Mode mode) {
  std::vector<double> pts(20);
  const double lo = 0.1;
  const double hi = mode == Mode::trigonometric ? std::numbers::pi / 2 - 0.1 : 10.0;
  for (int i = 0; i < 20; ++i) pts[static_cast<size_t>(i)] = lo + (hi - lo) * i / 19.0;
  return pts;
}

double diffeq_residual_max(const CouplingParams& c, int n) {
  double worst = 0.0;
  for (double t : diffeq_sample_points(c.mode())) {
    const double r = c.mode() == Mode::trigonometric
                         ? polynomials::aw_diffeq_residual(c, n, t)
                         : polynomials::wilson_diffeq_residual(c, n, t);
    worst = std::max(worst, r);
  }
  return worst;
}

double factorization_residual_max(const CouplingParams& c, int n,
                                  const Configuration& zeros) {
  double worst = 0.0;
  if (c.mode() == Mode::trigonometric) {
    const auto p = polynomials::aw_params_from_couplings(c);
    for (int i = 0; i < 50; ++i) {
      const double t = 0.02 + (std::numbers::pi / 2 - 0.04) * i / 49.0;
      const cdouble a = polynomials::aw_eval(p, n, t);
      const cdouble b = polynomials::aw_eval_factored(zeros, t);
      worst = std::max(worst, std::abs(a - b) / (1.0 + std::abs(a)));
    }
  } else {
    const double g = c.g();
    const polynomials::WilsonParams p(c.g1() / g, c.g2() / g, c.g3() / g,
                                      c.g4() / g);
    std::vector<double> yk;
    for (double x : zeros.positions()) yk.push_back(x / g);
    const double ymax = 1.25 * yk.back() + 1.0;
    for (int i = 0; i < 50; ++i) {
      const double y = (i + 0.5) * ymax / 50.0;
      const cdouble a = polynomials::wilson_eval(p, n, y);
      cdouble b = 1.0;
      for (double z : yk) b *= (y * y - z * z);
      worst = std::max(worst, std::abs(a - b) / (1.0 + std::abs(a)));
    }
  }
  return worst;
}

double vanish_residual_max(const CouplingParams& c, const Configuration& zeros) {
  const cdouble ig = kI * c.g();
  const int n = zeros.size();
  double worst = 0.0;
  for (int j = 0; j < n; ++j) {
    const double xj = zeros[j];
    cdouble t1, t2;
    if (c.mode() == Mode::trigonometric) {
      t1 = polynomials::aw_difference_weight(c, xj) *
           polynomials::aw_eval_factored(zeros, xj + ig);
      t2 = polynomials::aw_difference_weight(c, -xj) *
           polynomials::aw_eval_factored(zeros, xj - ig);
    } else {
      auto factored = [&](cdouble z) {
        cdouble prod = 1.0;
        for (int k = 0; k < n; ++k) prod *= (z + zeros[k]) * (z - zeros[k]);
        return prod;
      };
      t1 = polynomials::wilson_difference_weight(c, xj) * factored(xj + ig);
      t2 = polynomials::wilson_difference_weight(c, -xj) * factored(xj - ig);
    }
    worst = std::max(worst,
                     std::abs(t1 + t2) / std::max(std::abs(t1), std::abs(t2)));
  }
  return worst;
}

}  // namespace

VerificationReport verify_equilibrium(const CouplingParams& c, int n,
                                      const VerifyOptions& opt) {
  if (n < 1) throw std::invalid_argument("verify_equilibrium: n must be >= 1");
  if (opt.check_rescale && c.mode() != Mode::rational)
    throw mode_mismatch("verify_equilibrium: rescale check requires rational mode");

  VerificationReport r;
  r.mode = c.mode();
  r.g = c.g();
  r.g1 = c.g1();
  r.g2 = c.g2();
  r.g3 = c.g3();
  r.g4 = c.g4();
  r.n = n;
  r.bethe.tol = opt.tol.bethe;
  r.positivity.tol = 0.0;
  r.hamiltonian.tol = opt.tol.hamiltonian;
  r.diffeq.tol = opt.tol.diffeq;
  r.factorization.tol = opt.tol.factorization;
  r.vanish.tol = opt.tol.vanish;

  std::optional<Configuration> zeros;
  std::string zero_error;
  try {
    if (opt.positions_override) {
      zeros.emplace(c.mode(), *opt.positions_override);
    } else if (c.mode() == Mode::trigonometric) {
      zeros = roots::find_zeros_trig(c, n);
    } else {
      zeros = roots::find_zeros_rational(c, n);
    }
    r.zeros = zeros->positions();
  } catch (const std::exception& e) {
    zero_error = e.what();
  }

  if (zeros) {
    try {
      const auto v = potential_values(c, *zeros);
      double bmax = 0.0, remin = std::numeric_limits<double>::infinity();
      for (const cdouble& vj : v) {
        r.bethe_residuals.push_back(vj.imag());
        r.potential_re.push_back(vj.real());
        r.potential_im.push_back(vj.imag());
        bmax = std::max(bmax, std::abs(vj.imag()) / (1.0 + std::abs(vj)));
        remin = std::min(remin, vj.real());
      }
      r.bethe.value = bmax;
      r.bethe.pass = bmax < r.bethe.tol;
      r.positivity.value = remin;
      r.positivity.pass = remin > 0.0;
      r.hamiltonian0 = hamiltonian_at_rest(c, *zeros);
      r.hamiltonian.value = r.hamiltonian0;
      r.hamiltonian.pass = r.hamiltonian0 < r.hamiltonian.tol;
    } catch (const std::exception& e) {
      r.bethe.error = r.positivity.error = r.hamiltonian.error = e.what();
    }
    try {
      r.factorization.value = factorization_residual_max(c, n, *zeros);
      r.factorization.pass = r.factorization.value < r.factorization.tol;
    } catch (const std::exception& e) {
      r.factorization.error = e.what();
    }
    try {
      r.vanish.value = vanish_residual_max(c, *zeros);
      r.vanish.pass = r.vanish.value < r.vanish.tol;
    } catch (const std::exception& e) {
      r.vanish.error = e.what();
    }
  } else {
    r.bethe.error = r.positivity.error = r.hamiltonian.error =
        r.factorization.error = r.vanish.error = zero_error;
  }

  try {
    r.diffeq.value = diffeq_residual_max(c, n);
    r.diffeq.pass = r.diffeq.value < r.diffeq.tol;
  } catch (const std::exception& e) {
    r.diffeq.error = e.what();
  }

  if (opt.check_rescale) {
    CheckResult rc;
    rc.tol = opt.tol.rescale;
    try {
      const CouplingParams scaled(Mode::rational, opt.rescale_g, c.g1(), c.g2(),
                                  c.g3(), c.g4());
      rc.value = rescale_rational_check(scaled, n);
      rc.pass = rc.value < rc.tol;
    } catch (const std::exception& e) {
      rc.error = e.what();
    }
    r.rescale = rc;
  }

  r.overall = r.bethe.pass && r.positivity.pass && r.hamiltonian.pass &&
              r.diffeq.pass && r.factorization.pass && r.vanish.pass &&
              (!r.rescale || r.rescale->pass);
  return r;
}

double rescale_rational_check(const CouplingParams& c, int n) {
  if (c.mode() != Mode::rational)
    throw mode_mismatch("rescale_rational_check: rational couplings required");
  const double g = c.g();
  const Configuration zg = roots::find_zeros_rational(c, n);
  const CouplingParams unit(Mode::rational, 1.0, c.g1() / g, c.g2() / g,
                            c.g3() / g, c.g4() / g);
  const Configuration z1 = roots::find_zeros_rational(unit, n);
  double dev = 0.0;
  for (int j = 0; j < n; ++j) dev = std::max(dev, std::abs(zg[j] - g * z1[j]));
  return dev;
}

}  // namespace rsequil::equilibrium
