#pragma once
// Integral transforms of Im epsilon on the positive real axis, using
// Im eps(-x) = -Im eps(x).

#include <casimir/quadrature.hpp>

#include <functional>
#include <limits>
#include <span>

namespace casimir::spectral {

using ImFunction = std::function<double(double)>;

struct Band {
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
};

// (2/pi) int_0^inf x Im(x) / (x^2 + zeta^2) dx  ( = eps(i zeta) - eps_inf )
quad::Result imag_axis_transform(const ImFunction& im, double zeta, std::span<const double> features,
                                 quad::Tolerance tol = {});

// (2/pi) PV int x Im(x) / (x^2 - omega^2) dx over the band ( = Re eps(omega) - eps_inf ).
// The singular panel is handled by subtracting g(omega) and adding back
// g(omega) ln|(b - omega)/(a - omega)|.
quad::Result kramers_kronig(const ImFunction& im, double omega, std::span<const double> features,
                            Band band = {}, quad::Tolerance tol = {});

// int_0^inf x Im(x) dx
quad::Result first_moment(const ImFunction& im, std::span<const double> features,
                          quad::Tolerance tol = {});

} // namespace casimir::spectral
