#pragma once
// Surface-mode route: eigenfrequencies of r^2(w) = exp(-2 q l) for two
// identical half-spaces and the zero-temperature mode-sum energy.

#include <casimir/lifshitz.hpp>
#include <casimir/models.hpp>

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace casimir {

struct ModeFrequencies {
  double minus; // root of r = +exp(-ql)
  double plus;  // root of r = -exp(-ql)
};

struct ModeSpectrum {
  std::string model;
  double omega_inf = 0.0; // single-surface plasmon, r(omega_inf) = 0
  std::vector<double> ql;
  std::vector<double> omega_minus;
  std::vector<double> omega_plus;
};

// Accepts models whose permittivity is real on the real axis at T = 0:
// Plasma, and Drude with gamma(0) = 0 over a constant lattice.
ModeFrequencies surface_mode_frequencies(const DielectricModel& model, double ql);
double asymptotic_mode_frequency(const DielectricModel& model);

ModeSpectrum mode_spectrum(const DielectricModel& model, std::span<const double> ql);
void write_csv(std::ostream& out, const ModeSpectrum& spectrum);

struct Rectangle {
  double re_lo, re_hi, im_lo, im_hi;
};

struct ContourSum {
  cplx eigen_sum;  // sum of enclosed roots of r^2 = exp(-2ql)
  cplx zero_part;  // (1/2 pi i) oint w g'/g: zeros minus poles of g
  cplx pole_part;  // enclosed l-independent poles of g, restored
  std::size_t nodes = 0;
  double change = 0.0; // last change between refinements
};

struct ContourOptions {
  std::size_t initial_nodes = 4000;
  double tolerance = 1e-8;
  unsigned max_doublings = 12;
};

// g(w) = 1 - exp(-2ql) / r^2(w) continued through the model's rational form.
ContourSum argument_principle_sum(const DielectricModel& model, double ql, const Rectangle& contour,
                                  ContourOptions opts = {});

// Psi_modes = (1/4 pi) int_0^inf t [w+(t) + w-(t) - 2 w_inf] dt  (negative)
FreeEnergyResult zero_T_free_energy_modes(const DielectricModel& model, double rtol = 1e-10);

// |Phi_modes| = 2 |Psi_modes|, reported positive.
PressureResult pressure_from_modes(const DielectricModel& model, double rtol = 1e-10);

} // namespace casimir
