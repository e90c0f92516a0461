#include <casimir/polylog.hpp>

#include <boost/math/special_functions/zeta.hpp>

#include <array>
#include <cmath>
#include <numbers>

namespace casimir {

namespace {

using cplx = std::complex<double>;

constexpr double zeta3 = 1.2020569031595942854;
constexpr double pi = std::numbers::pi;

// Coefficients of mu^(2m+2) in the expansion about z = 1 (mu = ln z):
// zeta(1-2m)/(2m+2)! = (-1)^m 2 zeta(2m) / ((2 pi)^(2m) 2m (2m+1)(2m+2)).
constexpr int kLogTerms = 40;

std::array<double, kLogTerms> log_series_coefficients() {
  std::array<double, kLogTerms> c{};
  for (int m = 1; m <= kLogTerms; ++m) {
    const double zeta_2m = boost::math::zeta(2.0 * m);
    const double two_m = 2.0 * m;
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    c[static_cast<std::size_t>(m - 1)] =
        sign * 2.0 * zeta_2m / (std::pow(2.0 * pi, two_m) * two_m * (two_m + 1.0) * (two_m + 2.0));
  }
  return c;
}

cplx direct_series(cplx z) {
  cplx sum{0.0}, p = z;
  for (int k = 1; k < 200; ++k) {
    const cplx term = p / (static_cast<double>(k) * k * k);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    p *= z;
  }
  return sum;
}

// Valid for |ln z| < 2 pi.
cplx log_series(cplx z) {
  static const auto coef = log_series_coefficients();
  const cplx mu = std::log(z);
  const cplx mu2 = mu * mu;
  cplx sum = zeta3 + (pi * pi / 6.0) * mu + 0.5 * mu2 * (1.5 - std::log(-mu)) - mu2 * mu / 12.0;
  cplx p = mu2 * mu2;
  for (double c : coef) {
    const cplx term = c * p;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    p *= mu2;
  }
  return sum;
}

cplx unit_disk(cplx z) {
  if (std::abs(z) <= 0.5) return direct_series(z);
  return log_series(z);
}

} // namespace

cplx polylog3(cplx z) {
  if (z == cplx{0.0}) return 0.0;
  if (z == cplx{1.0}) return zeta3;
  if (std::abs(z) <= 1.0) return unit_disk(z);
  // Li3(z) = Li3(1/z) - ln^3(-z)/6 - (pi^2/6) ln(-z)
  const cplx l = std::log(-z);
  return unit_disk(1.0 / z) - l * l * l / 6.0 - (pi * pi / 6.0) * l;
}

} // namespace casimir
