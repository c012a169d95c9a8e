#pragma once

#include <stdexcept>

namespace rsequil {

/// Base class of every error thrown by this library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operation called with couplings of the wrong mode (trig vs rational).
class mode_mismatch : public error {
 public:
  using error::error;
};

/// A position left the open chamber, hit a wall, or collided with another.
class chamber_violation : public error {
 public:
  using error::error;
};

/// A series denominator factor vanished; message names the parameter and term.
class denominator_vanishing : public error {
 public:
  using error::error;
};

/// Polynomial prefactor denominator vanished for the given parameter tuple.
class degenerate_parameter : public error {
 public:
  using error::error;
};

/// Difference-operator evaluation point too close to a pole of W(x).
class singularity_error : public error {
 public:
  using error::error;
};

/// Sampling found a number of sign changes different from the requested degree.
class root_count_error : public error {
 public:
  using error::error;
};

/// A located zero failed the simple-zero derivative test.
class simplicity_error : public error {
 public:
  using error::error;
};

/// Rational-mode search interval grew past its hard cap without finding n roots.
class unbounded_search_error : public error {
 public:
  using error::error;
};

/// Iterative solver exhausted its budget or could not take an admissible step.
class non_convergence : public error {
 public:
  using error::error;
};

/// Gram matrix of the orthogonalization oracle is numerically singular.
class quadrature_failure : public error {
 public:
  using error::error;
};

}  // namespace rsequil
