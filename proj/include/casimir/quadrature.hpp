#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace casimir::quad {

struct Result {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;
};

struct Tolerance {
  double abs = 1e-13;
  double rel = 1e-11;
  unsigned max_depth = 18;
};

// Adaptive Gauss-Kronrod (7/15 and 15/31 pairs) on [a, b]; b may be +inf.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 Tolerance tol = {});

// Sums adaptive integrals over consecutive panels [p0,p1], [p1,p2], ...
// Panels are summed left to right. Duplicate or out-of-order points are
// dropped; the last point may be +inf.
Result integrate_panels(const std::function<double(double)>& f,
                        std::span<const double> points, Tolerance tol = {});

} // namespace casimir::quad
