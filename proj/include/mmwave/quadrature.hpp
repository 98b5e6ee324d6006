#pragma once

#include <functional>

namespace mmwave {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;  // accumulated Richardson error bound
  long evaluations = 0;
};

// Adaptive Simpson integration of f over [a, b] to an absolute tolerance.
// Throws Error(QuadratureFailure) when the tolerance cannot be met within
// the subdivision depth limit (typically a non-integrable singularity).
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double abs_tol = 1e-9);

}  // namespace mmwave
