#include <casimir/spectral.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace casimir::spectral {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

std::vector<double> panel_points(std::span<const double> features, double lo, double hi) {
  std::vector<double> pts{lo};
  for (double f : features)
    if (f > lo && f < hi && std::isfinite(f)) pts.push_back(f);
  pts.push_back(hi);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

void accumulate(quad::Result& total, const quad::Result& r) {
  total.value += r.value;
  total.error += r.error;
  total.evaluations += r.evaluations;
  total.converged = total.converged && r.converged;
}

} // namespace

quad::Result imag_axis_transform(const ImFunction& im, double zeta, std::span<const double> features,
                                 quad::Tolerance tol) {
  const double z2 = zeta * zeta;
  auto f = [&](double x) { return x * im(x) / (x * x + z2); };
  std::vector<double> extra(features.begin(), features.end());
  if (zeta > 0.0) extra.push_back(zeta);
  auto pts = panel_points(extra, 0.0, inf);
  auto r = quad::integrate_panels(f, pts, tol);
  r.value *= 2.0 / std::numbers::pi;
  r.error *= 2.0 / std::numbers::pi;
  return r;
}

quad::Result kramers_kronig(const ImFunction& im, double omega, std::span<const double> features,
                            Band band, quad::Tolerance tol) {
  // g(x) / (x - omega) with g(x) = 2 x Im(x) / (pi (x + omega))
  auto g = [&](double x) { return 2.0 * x * im(x) / (std::numbers::pi * (x + omega)); };
  auto regular = [&](double x) { return g(x) / (x - omega); };

  quad::Result total;
  if (!(omega > band.lo && omega < band.hi)) {
    auto pts = panel_points(features, band.lo, band.hi);
    return quad::integrate_panels(regular, pts, tol);
  }

  // Singular panel [a, b] around omega, kept clear of nearby features.
  double eta = 0.5;
  for (double f : features) {
    const double d = std::abs(f - omega) / omega;
    if (d > 1e-3) eta = std::min(eta, 0.5 * d);
  }
  const double a = std::max(band.lo, omega * (1.0 - eta));
  const double b = std::min(band.hi, omega * (1.0 + eta));

  std::vector<double> kept;
  for (double f : features)
    if (std::abs(f - omega) / omega > 1e-3) kept.push_back(f);

  auto left = panel_points(kept, band.lo, a);
  accumulate(total, quad::integrate_panels(regular, left, tol));

  const double g0 = g(omega);
  const double h = 1e-6 * omega;
  const double slope = (g(omega + h) - g(omega - h)) / (2.0 * h);
  auto subtracted = [&](double x) {
    const double dx = x - omega;
    if (std::abs(dx) < 1e-9 * omega) return slope;
    return (g(x) - g0) / dx;
  };
  accumulate(total, quad::integrate(subtracted, a, b, tol));
  total.value += g0 * std::log((b - omega) / (omega - a));

  auto right = panel_points(kept, b, band.hi);
  accumulate(total, quad::integrate_panels(regular, right, tol));
  return total;
}

quad::Result first_moment(const ImFunction& im, std::span<const double> features, quad::Tolerance tol) {
  auto f = [&](double x) { return x * im(x); };
  auto pts = panel_points(features, 0.0, inf);
  return quad::integrate_panels(f, pts, tol);
}

} // namespace casimir::spectral
