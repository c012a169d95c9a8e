#pragma once

#include <utility>
#include <vector>

namespace rsequil::detail {

/// Solves A x = b (row-major n x n) by Gaussian elimination with partial
/// pivoting, overwriting b with x. Throws rsequil::non_convergence on a
/// numerically singular pivot.
void solve_linear(std::vector<double> a, std::vector<double>& b, int n);

/// Eigenvalue range (min, max) of a symmetric row-major n x n matrix by
/// cyclic Jacobi rotations.
std::pair<double, double> sym_eigen_range(std::vector<double> a, int n);

/// lambda_max / lambda_min; +inf when lambda_min <= 0.
double sym_condition(const std::vector<double>& a, int n);

}  // namespace rsequil::detail
