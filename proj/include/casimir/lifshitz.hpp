#pragma once
// Non-retarded Casimir-Lifshitz pressure between two identical half-spaces.
//
// All results are reduced: Phi = f l^3 / (hbar Omega_ref), Psi = F l^2 /
// (hbar Omega_ref), temperatures in units of hbar Omega_ref / k_B. Positive Phi
// means attraction.

#include <casimir/models.hpp>

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace casimir {

enum class Route { matsubara, classical, zeroT, realaxis, modes };
std::string to_string(Route r);
Route parse_route(const std::string& name);

// I(A) = int_0^inf x^2 / (A e^x - 1) dx, A >= 1; A = +inf gives 0.
double kernel_I(double A);

struct MatsubaraSpectrum {
  double temperature = 0.0;
  std::vector<double> frequencies;   // zeta_n, n = 0..N
  std::vector<double> kernel_values; // I_n (the n = 0 entry without the half weight)
  std::size_t n_max = 0;
  double partial_sum = 0.0; // 1/2 I_0 + sum_{n=1}^{N} I_n
  double tail_estimate = 0.0;
};

struct PressureResult {
  double phi = 0.0;
  Route route = Route::matsubara;
  double err_estimate = 0.0;
  bool converged = true;
  std::size_t terms = 0;       // highest Matsubara index N
  std::size_t evaluations = 0; // integrand evaluations of the outer quadrature
  std::vector<std::string> warnings;
  std::optional<MatsubaraSpectrum> spectrum;
};

struct FreeEnergyResult {
  double psi = 0.0;
  double temperature = 0.0;
  Route route = Route::matsubara;
  double err_estimate = 0.0;
  bool converged = true;
};

struct MatsubaraOptions {
  double rtol = 1e-8;
  std::size_t max_terms = 1'000'000;
  bool keep_spectrum = false;
};

// Kernel argument A = r^2(i zeta) of a model at temperature T; zeta = 0 is
// resolved from the static limit (A = 1 for a pole at zero frequency).
double kernel_argument(const DielectricModel& model, double zeta, double temperature);

// (T/8 pi) [1/2 I(A_0) + sum_{n>=1} I(A(zeta_n))] for an arbitrary kernel argument.
PressureResult matsubara_pressure(const std::function<double(double)>& kernel_argument_at, double a0,
                                  double temperature, MatsubaraOptions opts = {});

PressureResult matsubara_pressure(const DielectricModel& model, double temperature, MatsubaraOptions opts = {});

// phi holds the coefficient Phi / T = I(r^2(0)) / (16 pi).
PressureResult classical_limit(const DielectricModel& model, double temperature = 0.0);

// (1/16 pi^2) int_0^inf I(r^2(i zeta)) d zeta with the model at T = 0.
PressureResult zero_T_pressure(const DielectricModel& model, double rtol = 1e-8);

// (1/16 pi^2) int_0^inf coth(w / 2T) Im[2 Li3(1/r^2(w))] dw. Requires Im eps > 0;
// delta only shifts strictly real models (see eval_real_axis).
double real_axis_integrand(const DielectricModel& model, double omega, double temperature, double delta = 0.0);
PressureResult real_axis_pressure(const DielectricModel& model, double temperature, double rtol = 1e-8,
                                  double delta = 0.0);

// Psi = Phi / 2 from the same Matsubara sum.
FreeEnergyResult free_energy(const DielectricModel& model, double temperature, MatsubaraOptions opts = {});

struct EntropyOptions {
  double psi_rtol = 1e-11;
  double agreement_rtol = 0.05; // allowed |s_h - s_{h/2}| relative to |s|
  double agreement_atol = 1e-5;
};

struct EntropyResult {
  double entropy = 0.0;     // Richardson combination (4 s_{h/2} - s_h) / 3
  double stencil_h = 0.0;   // -[Psi(T+h) - Psi(T-h)] / 2h
  double stencil_h2 = 0.0;  // same with h/2
  double step = 0.0;
  double temperature = 0.0;
};

EntropyResult entropy(const DielectricModel& model, double temperature, double step, EntropyOptions opts = {});

} // namespace casimir
