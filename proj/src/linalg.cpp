#include "rsequil/detail/linalg.hpp"

#include <cmath>
#include <limits>

#include "rsequil/errors.hpp"

namespace rsequil::detail {

void solve_linear(std::vector<double> a, std::vector<double>& b, int n) {
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
    if (std::abs(a[piv * n + col]) < 1e-300)
      throw non_convergence("linear solve: singular Jacobian");
    if (piv != col) {
      for (int k = col; k < n; ++k) std::swap(a[col * n + k], a[piv * n + k]);
      std::swap(b[col], b[piv]);
    }
    const double inv = 1.0 / a[col * n + col];
    for (int r = col + 1; r < n; ++r) {
      const double m = a[r * n + col] * inv;
      if (m == 0.0) continue;
      for (int k = col; k < n; ++k) a[r * n + k] -= m * a[col * n + k];
      b[r] -= m * b[col];
    }
  }
  for (int r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (int k = r + 1; k < n; ++k) s -= a[r * n + k] * b[k];
    b[r] = s / a[r * n + r];
  }
}

std::pair<double, double> sym_eigen_range(std::vector<double> a, int n) {
  // cyclic Jacobi; plenty for the tiny matrices used here
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += a[i * n + j] * a[i * n + j];
    if (off < 1e-300) break;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const double apq = a[i * n + j];
        if (apq == 0.0) continue;
        const double app = a[i * n + i], aqq = a[j * n + j];
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (int k = 0; k < n; ++k) {
          const double aik = a[i * n + k], ajk = a[j * n + k];
          a[i * n + k] = c * aik - s * ajk;
          a[j * n + k] = s * aik + c * ajk;
        }
        for (int k = 0; k < n; ++k) {
          const double aki = a[k * n + i], akj = a[k * n + j];
          a[k * n + i] = c * aki - s * akj;
          a[k * n + j] = s * aki + c * akj;
        }
      }
    }
  }
  double lo = a[0], hi = a[0];
  for (int i = 1; i < n; ++i) {
    lo = std::min(lo, a[i * n + i]);
    hi = std::max(hi, a[i * n + i]);
  }
  return {lo, hi};
}

double sym_condition(const std::vector<double>& a, int n) {
  const auto [lo, hi] = sym_eigen_range(a, n);
  if (lo <= 0.0) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

}  // namespace rsequil::detail
