#include <casimir/lifshitz.hpp>
#include <casimir/polylog.hpp>
#include <casimir/quadrature.hpp>

#include "visit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace casimir {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double inf = std::numeric_limits<double>::infinity();

bool is_plasma(const DielectricModel& m) { return std::holds_alternative<Plasma>(m); }

void reject_nonlocal(const DielectricModel& m) {
  if (std::holds_alternative<Hydrodynamic>(m))
    throw UnsupportedVariantError("force routes need a local model; hydrodynamic is out of scope");
}

void reject_constant_background(const DielectricModel& m) {
  // eps(i inf) != 1 leaves I(r^2) finite at every zeta_n and the sum diverges
  if (high_frequency_limit(m) != 1.0)
    throw DivergenceError("eps(i inf) != 1: the non-retarded Matsubara sum diverges");
}

// Local power-law tail: sum_{m>n} I_n (n/m)^p ~ I_n n^p (n+1/2)^(1-p) / (p-1).
double tail_estimate(double i_prev, double i_last, std::size_t n) {
  if (i_last <= 0.0) return 0.0;
  const double nn = static_cast<double>(n);
  const double p = std::log(i_prev / i_last) / std::log(nn / (nn - 1.0));
  if (!(p > 1.0)) return inf;
  return i_last * std::pow(nn, p) * std::pow(nn + 0.5, 1.0 - p) / (p - 1.0);
}

double static_kernel_argument(const DielectricModel& model, double temperature) {
  const auto lim = static_limit(model, temperature);
  if (lim.order != PoleOrder::regular) return 1.0;
  if (lim.value == 1.0) return inf;
  const double r = reflection_factor(lim.value);
  return r * r;
}

} // namespace

std::string to_string(Route r) {
  switch (r) {
  case Route::matsubara: return "matsubara";
  case Route::classical: return "classical";
  case Route::zeroT: return "zeroT";
  case Route::realaxis: return "realaxis";
  case Route::modes: return "modes";
  }
  return "unknown";
}

Route parse_route(const std::string& name) {
  for (Route r : {Route::matsubara, Route::classical, Route::zeroT, Route::realaxis, Route::modes})
    if (name == to_string(r)) return r;
  throw DomainError("unknown route '" + name + "' (matsubara, classical, zeroT, realaxis, modes)");
}

double kernel_I(double A) {
  if (std::isnan(A) || A < 1.0) throw DomainError("kernel argument must be >= 1");
  if (std::isinf(A)) return 0.0;
  const double a1 = A - 1.0;
  // x^2 e^-x / (A - e^-x), with A - e^-x = (A - 1) - expm1(-x)
  auto f = [a1](double x) { return x * x * std::exp(-x) / (a1 - std::expm1(-x)); };
  quad::Tolerance tol;
  tol.abs = 1e-15;
  tol.rel = 1e-13;
  return quad::integrate(f, 0.0, inf, tol).value;
}

double kernel_argument(const DielectricModel& model, double zeta, double temperature) {
  if (zeta == 0.0) return static_kernel_argument(model, temperature);
  return kernel_argument_from_susceptibility(imag_axis_susceptibility(model, zeta, temperature));
}

PressureResult matsubara_pressure(const std::function<double(double)>& kernel_argument_at, double a0,
                                  double temperature, MatsubaraOptions opts) {
  if (!(temperature > 0.0)) throw DomainError("Matsubara route needs T > 0");
  if (!(opts.rtol > 0.0)) throw DomainError("rtol must be > 0");
  // A kernel that stays O(1) far out never lets the sum converge.
  if (kernel_I(kernel_argument_at(1e12 * (1.0 + temperature))) > 1e-12)
    throw DivergenceError("kernel does not decay at large zeta: the Matsubara sum diverges");

  const double step = 2.0 * pi * temperature;
  MatsubaraSpectrum sp;
  sp.temperature = temperature;
  const double i0 = kernel_I(a0);
  if (opts.keep_spectrum) {
    sp.frequencies.push_back(0.0);
    sp.kernel_values.push_back(i0);
  }
  double sum = 0.5 * i0;
  double prev = i0;
  double tail = inf;
  std::size_t n = 0;
  bool done = false;
  while (!done) {
    if (n >= opts.max_terms) break;
    ++n;
    const double zeta = step * static_cast<double>(n);
    const double in = kernel_I(kernel_argument_at(zeta));
    if (opts.keep_spectrum) {
      sp.frequencies.push_back(zeta);
      sp.kernel_values.push_back(in);
    }
    sum += in;
    if (in == 0.0) {
      tail = 0.0;
      done = true;
    } else if (n >= 3) {
      tail = tail_estimate(prev, in, n);
      done = tail < opts.rtol * sum;
    }
    prev = in;
  }

  PressureResult res;
  res.route = Route::matsubara;
  res.terms = n;
  const double scale = temperature / (8.0 * pi);
  sp.n_max = n;
  sp.partial_sum = sum;
  sp.tail_estimate = std::isfinite(tail) ? tail : 0.0;
  res.phi = scale * (sum + sp.tail_estimate);
  res.err_estimate = scale * (std::isfinite(tail) ? std::max(0.5 * tail, 4.0 * std::numeric_limits<double>::epsilon() * sum) : sum);
  if (!done)
    throw NonConvergenceError("Matsubara sum not converged after " + std::to_string(n) + " terms", res.phi,
                              res.err_estimate);
  if (opts.keep_spectrum) res.spectrum = std::move(sp);
  return res;
}

PressureResult matsubara_pressure(const DielectricModel& model, double temperature, MatsubaraOptions opts) {
  reject_nonlocal(model);
  reject_constant_background(model);
  auto a = [&](double zeta) { return kernel_argument(model, zeta, temperature); };
  auto res = matsubara_pressure(a, static_kernel_argument(model, temperature), temperature, opts);
  if (is_plasma(model)) res.warnings.push_back("plasma model is not an admissible dielectric response");
  return res;
}

PressureResult classical_limit(const DielectricModel& model, double temperature) {
  reject_nonlocal(model);
  PressureResult res;
  res.route = Route::classical;
  res.phi = kernel_I(static_kernel_argument(model, temperature)) / (16.0 * pi);
  res.err_estimate = 1e-12 * res.phi;
  res.terms = 1;
  if (is_plasma(model)) res.warnings.push_back("plasma model is not an admissible dielectric response");
  return res;
}

PressureResult zero_T_pressure(const DielectricModel& model, double rtol) {
  reject_nonlocal(model);
  reject_constant_background(model);
  if (!(rtol > 0.0)) throw DomainError("rtol must be > 0");
  const double ws = characteristic_frequency(model, 0.0);
  auto f = [&](double u) {
    if (u >= 1.0) return 0.0;
    const double v = 1.0 - u;
    const double zeta = ws * u / v;
    if (zeta == 0.0) return kernel_I(kernel_argument(model, 0.0, 0.0)) * ws;
    return kernel_I(kernel_argument(model, zeta, 0.0)) * ws / (v * v);
  };
  quad::Tolerance tol;
  tol.rel = rtol;
  tol.abs = 1e-15;
  const auto r = quad::integrate(f, 0.0, 1.0, tol);
  PressureResult res;
  res.route = Route::zeroT;
  const double scale = 1.0 / (16.0 * pi * pi);
  res.phi = scale * r.value;
  res.err_estimate = scale * r.error;
  res.evaluations = r.evaluations;
  res.converged = r.converged;
  if (is_plasma(model)) res.warnings.push_back("plasma model is not an admissible dielectric response");
  if (!r.converged) throw NonConvergenceError("zero-temperature integral not converged", res.phi, res.err_estimate);
  return res;
}

double real_axis_integrand(const DielectricModel& model, double omega, double temperature, double delta) {
  const cplx eps = eval_real_axis(model, omega, temperature, delta);
  const cplx r = reflection_factor(eps);
  const double im = 2.0 * polylog3(1.0 / (r * r)).imag();
  double coth;
  if (temperature == 0.0) {
    coth = 1.0;
  } else {
    const double x = omega / (2.0 * temperature);
    if (omega < 1e-3 * temperature) {
      coth = 1.0 / x + x / 3.0 - x * x * x / 45.0;
    } else {
      coth = 1.0 / std::tanh(x);
    }
  }
  return coth * im;
}

PressureResult real_axis_pressure(const DielectricModel& model, double temperature, double rtol, double delta) {
  reject_nonlocal(model);
  if (temperature < 0.0) throw DomainError("temperature must be >= 0");
  if (!(rtol > 0.0)) throw DomainError("rtol must be > 0");

  auto features = spectral_features(model, temperature);
  const double ws = characteristic_frequency(model, temperature);
  // Without dissipation the integrand is a sum of delta functions.
  const double lo = 1e-3 * ws, hi = 1e3 * ws;
  for (int i = 0; i <= 120; ++i) {
    const double w = lo * std::pow(hi / lo, i / 120.0);
    if (!(im_eps(model, w, temperature) > 0.0))
      throw SingularityError("real-axis route needs Im eps > 0; the model is dissipation-free at omega = " +
                             std::to_string(w));
  }

  std::vector<double> points{0.0};
  for (double f : features)
    if (f > 0.0 && std::isfinite(f)) points.push_back(f);
  points.push_back(10.0 * ws);
  points.push_back(inf);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  auto f = [&](double w) { return w > 0.0 ? real_axis_integrand(model, w, temperature, delta) : 0.0; };
  quad::Tolerance tol;
  tol.rel = rtol;
  tol.abs = 1e-15;
  const auto r = quad::integrate_panels(f, points, tol);

  PressureResult res;
  res.route = Route::realaxis;
  const double scale = 1.0 / (16.0 * pi * pi);
  res.phi = scale * r.value;
  res.err_estimate = scale * r.error;
  res.evaluations = r.evaluations;
  res.converged = r.converged;
  if (!r.converged) throw NonConvergenceError("real-axis integral not converged", res.phi, res.err_estimate);
  return res;
}

FreeEnergyResult free_energy(const DielectricModel& model, double temperature, MatsubaraOptions opts) {
  const auto p = matsubara_pressure(model, temperature, opts);
  FreeEnergyResult res;
  res.psi = 0.5 * p.phi;
  res.temperature = temperature;
  res.route = Route::matsubara;
  res.err_estimate = 0.5 * p.err_estimate;
  res.converged = p.converged;
  return res;
}

EntropyResult entropy(const DielectricModel& model, double temperature, double step, EntropyOptions opts) {
  if (!(step > 0.0) || !(temperature > step)) throw DomainError("entropy needs T > h > 0");
  MatsubaraOptions mo;
  mo.rtol = opts.psi_rtol;
  auto psi = [&](double t) { return free_energy(model, t, mo).psi; };
  auto stencil = [&](double h) { return -(psi(temperature + h) - psi(temperature - h)) / (2.0 * h); };

  EntropyResult res;
  res.temperature = temperature;
  res.step = step;
  res.stencil_h = stencil(step);
  res.stencil_h2 = stencil(0.5 * step);
  res.entropy = (4.0 * res.stencil_h2 - res.stencil_h) / 3.0;
  const double gap = std::abs(res.stencil_h - res.stencil_h2);
  if (gap > std::max(opts.agreement_atol, opts.agreement_rtol * std::abs(res.entropy)))
    throw StepTooLargeError("finite-difference stencils disagree (" + std::to_string(res.stencil_h) + " vs " +
                            std::to_string(res.stencil_h2) + "); reduce the step");
  return res;
}

} // namespace casimir
