#pragma once

#include <complex>

namespace casimir {

// Principal branch of the trilogarithm Li_3(z), cut along (1, inf).
// Accurate to a few ulp times |Li_3(z)| away from the cut.
std::complex<double> polylog3(std::complex<double> z);

inline double polylog3(double x) { return polylog3(std::complex<double>(x, 0.0)).real(); }

} // namespace casimir
