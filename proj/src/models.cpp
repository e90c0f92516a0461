#include <casimir/models.hpp>

#include "visit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace casimir {

namespace {

constexpr double pi = std::numbers::pi;
constexpr cplx I{0.0, 1.0};

using detail::overloaded;

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

void validate_oscillators(const std::vector<LorentzOscillator>& osc) {
  for (const auto& o : osc) {
    require(o.strength > 0.0, "oscillator strength must be > 0");
    require(o.resonance > 0.0, "oscillator resonance must be > 0");
    require(o.width > 0.0, "oscillator width must be > 0");
  }
}

double lorentz_sum_imag(const std::vector<LorentzOscillator>& osc, double zeta) {
  double s = 0.0;
  for (const auto& o : osc) s += o.strength / (o.resonance * o.resonance + zeta * zeta + o.width * zeta);
  return s;
}

cplx lorentz_sum_real(const std::vector<LorentzOscillator>& osc, cplx w) {
  cplx s{0.0};
  for (const auto& o : osc) s += o.strength / (o.resonance * o.resonance - w * w - I * o.width * w);
  return s;
}

Rational lorentz_rational(const std::vector<LorentzOscillator>& osc) {
  Rational r{Polynomial::constant(1.0), Polynomial::constant(1.0)};
  for (const auto& o : osc) {
    Polynomial den({o.resonance * o.resonance, -I * o.width, -1.0});
    r = r + Rational{Polynomial::constant(o.strength), den};
  }
  return r;
}

void lattice_features(const LatticeTerm& lat, std::vector<double>& out) {
  if (lat.is_constant()) return;
  for (const auto& o : lat.oscillators()) {
    out.push_back(o.resonance);
    out.push_back(std::max(o.resonance - 5.0 * o.width, 0.5 * o.resonance));
    out.push_back(o.resonance + 5.0 * o.width);
    // surface phonon, Re eps = -1 inside the reststrahlen band
    out.push_back(std::sqrt(o.resonance * o.resonance + 0.5 * o.strength));
  }
}

std::optional<double> lowest_resonance(const LatticeTerm& lat) {
  if (lat.is_constant() || lat.oscillators().empty()) return std::nullopt;
  double w = lat.oscillators().front().resonance;
  for (const auto& o : lat.oscillators()) w = std::min(w, o.resonance);
  return w;
}

} // namespace

FrequencyUnit::FrequencyUnit(double omega_ref) : omega_ref_(omega_ref) {
  require(omega_ref > 0.0, "reference frequency must be > 0");
}

// ---------------------------------------------------------------------------
// TemperatureLaw

TemperatureLaw::TemperatureLaw(Form form) : form_(form) {
  std::visit(overloaded{
                 [](const Constant& c) { require(c.value >= 0.0, "constant law must be >= 0"); },
                 [](const PowerLawPlusResidual& p) {
                   require(p.residual >= 0.0 && p.amplitude >= 0.0, "power law parameters must be >= 0");
                   require(p.exponent > 0.0, "power law exponent must be > 0");
                 },
                 [](const ActivatedConductivity& a) {
                   require(a.prefactor >= 0.0 && a.gap >= 0.0, "activated law parameters must be >= 0");
                 },
             },
             form_);
}

double TemperatureLaw::operator()(double temperature) const {
  const double t = std::max(temperature, 0.0);
  return std::visit(overloaded{
                        [](const Constant& c) { return c.value; },
                        [t](const PowerLawPlusResidual& p) {
                          return p.residual + p.amplitude * std::pow(t, p.exponent);
                        },
                        [t](const ActivatedConductivity& a) {
                          if (t == 0.0) return 0.0;
                          return a.prefactor * std::exp(-a.gap / t);
                        },
                    },
                    form_);
}

// ---------------------------------------------------------------------------
// LatticeTerm

LatticeTerm::LatticeTerm(double constant) : form_(constant) {
  require(constant >= 1.0, "constant lattice permittivity must be >= 1");
}

LatticeTerm::LatticeTerm(std::vector<LorentzOscillator> oscillators) : form_(std::move(oscillators)) {
  validate_oscillators(std::get<std::vector<LorentzOscillator>>(form_));
}

const std::vector<LorentzOscillator>& LatticeTerm::oscillators() const {
  static const std::vector<LorentzOscillator> none;
  if (is_constant()) return none;
  return std::get<std::vector<LorentzOscillator>>(form_);
}

cplx LatticeTerm::at_real(cplx omega) const {
  if (is_constant()) return std::get<double>(form_);
  return 1.0 + lorentz_sum_real(oscillators(), omega);
}

double LatticeTerm::susceptibility_imag(double zeta) const {
  if (is_constant()) return std::get<double>(form_) - 1.0;
  return lorentz_sum_imag(oscillators(), zeta);
}

double LatticeTerm::high_frequency_value() const {
  return is_constant() ? std::get<double>(form_) : 1.0;
}

Rational LatticeTerm::rational() const {
  if (is_constant()) return {Polynomial::constant(std::get<double>(form_)), Polynomial::constant(1.0)};
  return lorentz_rational(oscillators());
}

// ---------------------------------------------------------------------------
// Variants

Plasma::Plasma(double wp) : plasma_frequency(wp) { require(wp > 0.0, "plasma frequency must be > 0"); }

Drude::Drude(double wp, TemperatureLaw gamma, LatticeTerm lat)
    : plasma_frequency(wp), damping(gamma), lattice(std::move(lat)) {
  require(wp > 0.0, "plasma frequency must be > 0");
}

Conductivity::Conductivity(LatticeTerm lat, TemperatureLaw sigma) : lattice(std::move(lat)), conductivity(sigma) {}

LorentzLattice::LorentzLattice(std::vector<LorentzOscillator> osc) : oscillators(std::move(osc)) {
  validate_oscillators(oscillators);
}

Hydrodynamic::Hydrodynamic(double wp, TemperatureLaw gamma, double rd, LatticeTerm lat)
    : plasma_frequency(wp), damping(gamma), debye_radius(rd), lattice(std::move(lat)) {
  require(wp > 0.0, "plasma frequency must be > 0");
  require(rd > 0.0, "Debye radius must be > 0");
}

std::string to_string(PoleOrder p) {
  switch (p) {
  case PoleOrder::regular: return "regular";
  case PoleOrder::first: return "first";
  case PoleOrder::second: return "second";
  }
  return "unknown";
}

std::string variant_name(const DielectricModel& model) {
  return std::visit(overloaded{
                        [](const Plasma&) { return std::string("plasma"); },
                        [](const Drude&) { return std::string("drude"); },
                        [](const Conductivity&) { return std::string("conductivity"); },
                        [](const LorentzLattice&) { return std::string("lorentz"); },
                        [](const Tabulated&) { return std::string("table"); },
                        [](const Hydrodynamic&) { return std::string("hydrodynamic"); },
                    },
                    model);
}

// ---------------------------------------------------------------------------
// Evaluation

cplx eval_real_axis(const DielectricModel& model, double omega, double temperature, double delta) {
  if (!(omega > 0.0)) throw DomainError("real-axis frequency must be > 0");
  if (delta < 0.0) throw DomainError("regularizing shift must be >= 0");
  return std::visit(
      overloaded{
          [&](const Plasma& m) {
            const cplx w{omega, delta};
            const double wp2 = m.plasma_frequency * m.plasma_frequency;
            return cplx{1.0} - wp2 / (w * w);
          },
          [&](const Drude& m) {
            const double wp2 = m.plasma_frequency * m.plasma_frequency;
            const cplx w{omega, 0.0};
            return m.lattice.at_real(w) - wp2 / (w * (w + I * m.damping(temperature)));
          },
          [&](const Conductivity& m) {
            return m.lattice.at_real(cplx{omega}) + I * (4.0 * pi * m.conductivity(temperature) / omega);
          },
          [&](const LorentzLattice& m) { return 1.0 + lorentz_sum_real(m.oscillators, cplx{omega}); },
          [&](const Tabulated& m) { return cplx{1.0 + table_real_susceptibility(m, omega), m.im_eps(omega)}; },
          [&](const Hydrodynamic&) -> cplx {
            throw UnsupportedVariantError("hydrodynamic model needs a wave number; use eval_nonlocal");
          },
      },
      model);
}

double imag_axis_susceptibility(const DielectricModel& model, double zeta, double temperature) {
  if (zeta < 0.0) throw DomainError("imaginary-axis frequency must be >= 0");
  if (zeta == 0.0) {
    const auto lim = static_limit(model, temperature);
    if (lim.order != PoleOrder::regular) throw PoleAtZeroError(lim.order);
    return lim.value - 1.0;
  }
  return std::visit(overloaded{
                        [&](const Plasma& m) {
                          const double x = m.plasma_frequency / zeta;
                          return x * x;
                        },
                        [&](const Drude& m) {
                          const double wp2 = m.plasma_frequency * m.plasma_frequency;
                          return m.lattice.susceptibility_imag(zeta) +
                                 wp2 / (zeta * (zeta + m.damping(temperature)));
                        },
                        [&](const Conductivity& m) {
                          return m.lattice.susceptibility_imag(zeta) +
                                 4.0 * pi * m.conductivity(temperature) / zeta;
                        },
                        [&](const LorentzLattice& m) { return lorentz_sum_imag(m.oscillators, zeta); },
                        [&](const Tabulated& m) { return epsilon_ik_from_table(m, zeta) - 1.0; },
                        [&](const Hydrodynamic&) -> double {
                          throw UnsupportedVariantError(
                              "hydrodynamic model needs a wave number; use eval_nonlocal");
                        },
                    },
                    model);
}

double eval_imag_axis(const DielectricModel& model, double zeta, double temperature) {
  return 1.0 + imag_axis_susceptibility(model, zeta, temperature);
}

double im_eps(const DielectricModel& model, double omega, double temperature) {
  if (!(omega > 0.0)) throw DomainError("real-axis frequency must be > 0");
  return std::visit(overloaded{
                        [&](const Plasma&) { return 0.0; },
                        [&](const Tabulated& m) { return m.im_eps(omega); },
                        [&](const Hydrodynamic&) -> double {
                          throw UnsupportedVariantError(
                              "hydrodynamic model needs a wave number; use eval_nonlocal");
                        },
                        [&](const auto&) { return eval_real_axis(model, omega, temperature, 0.0).imag(); },
                    },
                    model);
}

StaticLimit static_limit(const DielectricModel& model, double temperature) {
  return std::visit(
      overloaded{
          [&](const Plasma&) { return StaticLimit{PoleOrder::second, 0.0}; },
          [&](const Drude& m) {
            return StaticLimit{m.damping(temperature) > 0.0 ? PoleOrder::first : PoleOrder::second, 0.0};
          },
          [&](const Conductivity& m) {
            if (m.conductivity(temperature) > 0.0) return StaticLimit{PoleOrder::first, 0.0};
            return StaticLimit{PoleOrder::regular, m.lattice.static_value()};
          },
          [&](const LorentzLattice& m) {
            return StaticLimit{PoleOrder::regular, 1.0 + lorentz_sum_imag(m.oscillators, 0.0)};
          },
          [&](const Tabulated& m) {
            const auto& low = m.low_tail();
            // Im ~ w^p with p <= 0 makes int Im/x diverge at the origin
            if (low.kind == TailLaw::Kind::power && low.exponent <= 0.0) return StaticLimit{PoleOrder::first, 0.0};
            return StaticLimit{PoleOrder::regular, epsilon_ik_from_table(m, 0.0)};
          },
          [&](const Hydrodynamic&) -> StaticLimit {
            throw UnsupportedVariantError("hydrodynamic static limit depends on the wave number");
          },
      },
      model);
}

double high_frequency_limit(const DielectricModel& model) {
  return std::visit(overloaded{
                        [](const Drude& m) { return m.lattice.high_frequency_value(); },
                        [](const Conductivity& m) { return m.lattice.high_frequency_value(); },
                        [](const Hydrodynamic& m) { return m.lattice.high_frequency_value(); },
                        [](const auto&) { return 1.0; },
                    },
                    model);
}

double characteristic_frequency(const DielectricModel& model, double temperature) {
  return std::visit(overloaded{
                        [](const Plasma& m) { return m.plasma_frequency; },
                        [](const Drude& m) { return m.plasma_frequency; },
                        [](const Hydrodynamic& m) { return m.plasma_frequency; },
                        [&](const Conductivity& m) {
                          if (auto w = lowest_resonance(m.lattice)) return *w;
                          const double s = 4.0 * pi * m.conductivity(temperature);
                          return s > 0.0 ? s / m.lattice.static_value() : 1.0;
                        },
                        [](const LorentzLattice& m) {
                          double w = std::numeric_limits<double>::infinity();
                          for (const auto& o : m.oscillators) w = std::min(w, o.resonance);
                          return std::isfinite(w) ? w : 1.0;
                        },
                        [](const Tabulated& m) {
                          double best = m.samples().front().omega, peak = -1.0;
                          for (const auto& s : m.samples()) {
                            if (s.omega * s.im_eps > peak) {
                              peak = s.omega * s.im_eps;
                              best = s.omega;
                            }
                          }
                          return best;
                        },
                    },
                    model);
}

std::vector<double> spectral_features(const DielectricModel& model, double temperature) {
  std::vector<double> out;
  std::visit(overloaded{
                 [&](const Plasma& m) {
                   out.push_back(m.plasma_frequency / std::sqrt(2.0));
                   out.push_back(m.plasma_frequency);
                 },
                 [&](const Drude& m) {
                   const double g = m.damping(temperature);
                   const double wsp = m.plasma_frequency / std::sqrt(1.0 + m.lattice.static_value());
                   if (g > 0.0) {
                     out.push_back(g);
                     out.push_back(std::max(wsp - 5.0 * g, 0.5 * wsp));
                     out.push_back(wsp + 5.0 * g);
                   }
                   out.push_back(wsp);
                   out.push_back(m.plasma_frequency);
                   out.push_back(10.0 * m.plasma_frequency);
                   lattice_features(m.lattice, out);
                 },
                 [&](const Conductivity& m) {
                   const double s = 4.0 * pi * m.conductivity(temperature);
                   if (s > 0.0) out.push_back(s / m.lattice.static_value());
                   lattice_features(m.lattice, out);
                 },
                 [&](const LorentzLattice& m) { lattice_features(LatticeTerm(m.oscillators), out); },
                 [&](const Tabulated& m) { out = m.grid(); },
                 [&](const Hydrodynamic& m) {
                   const double g = m.damping(temperature);
                   if (g > 0.0) out.push_back(g);
                   out.push_back(m.plasma_frequency / std::sqrt(2.0));
                   out.push_back(m.plasma_frequency);
                   lattice_features(m.lattice, out);
                 },
             },
             model);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<Rational> rational_form(const DielectricModel& model, double temperature, double wave_number) {
  return std::visit(
      overloaded{
          [&](const Plasma& m) -> std::optional<Rational> {
            const double wp2 = m.plasma_frequency * m.plasma_frequency;
            return Rational{Polynomial({-wp2, 0.0, 1.0}), Polynomial({0.0, 0.0, 1.0})};
          },
          [&](const Drude& m) -> std::optional<Rational> {
            const double wp2 = m.plasma_frequency * m.plasma_frequency;
            const Rational carriers{Polynomial::constant(-wp2),
                                    Polynomial({0.0, I * m.damping(temperature), 1.0})};
            return m.lattice.rational() + carriers;
          },
          [&](const Conductivity& m) -> std::optional<Rational> {
            const Rational cond{Polynomial::constant(I * 4.0 * pi * m.conductivity(temperature)),
                                Polynomial({0.0, 1.0})};
            return m.lattice.rational() + cond;
          },
          [&](const LorentzLattice& m) -> std::optional<Rational> { return lorentz_rational(m.oscillators); },
          [&](const Tabulated&) -> std::optional<Rational> { return std::nullopt; },
          [&](const Hydrodynamic& m) -> std::optional<Rational> {
            const double wp2 = m.plasma_frequency * m.plasma_frequency;
            const double kr = wave_number * m.debye_radius;
            const Rational carriers{Polynomial::constant(-wp2),
                                    Polynomial({-kr * kr * wp2, I * m.damping(temperature), 1.0})};
            return m.lattice.rational() + carriers;
          },
      },
      model);
}

// ---------------------------------------------------------------------------
// Reflection factor

double reflection_factor(double eps) {
  if (std::isinf(eps)) return 1.0;
  if (eps == 1.0) throw VacuumDegeneracyError("epsilon == 1: no material contrast");
  return (eps + 1.0) / (eps - 1.0);
}

cplx reflection_factor(cplx eps) {
  if (std::isinf(eps.real()) || std::isinf(eps.imag())) return 1.0;
  if (eps == cplx{1.0}) throw VacuumDegeneracyError("epsilon == 1: no material contrast");
  return (eps + 1.0) / (eps - 1.0);
}

double kernel_argument_from_susceptibility(double chi) {
  if (chi == 0.0) return std::numeric_limits<double>::infinity();
  if (std::isinf(chi)) return 1.0;
  const double r = 1.0 + 2.0 / chi;
  return r * r;
}

// ---------------------------------------------------------------------------
// Spatial dispersion

cplx eval_nonlocal(const Hydrodynamic& m, double omega, double k, double temperature) {
  if (k < 0.0) throw DomainError("wave number must be >= 0");
  const double wp2 = m.plasma_frequency * m.plasma_frequency;
  const double kr = k * m.debye_radius;
  const cplx w{omega, 0.0};
  const cplx den = w * (w + I * m.damping(temperature)) - kr * kr * wp2;
  if (den == cplx{0.0}) throw DomainError("omega = 0 and k = 0: free-carrier pole");
  return m.lattice.at_real(w) - wp2 / den;
}

cplx lowfreq_nonlocal_permittivity(double eps_static, double four_pi_sigma, double k, double rd, double omega) {
  const cplx den{omega, four_pi_sigma * k * k * rd * rd};
  if (four_pi_sigma == 0.0) return eps_static;
  if (den == cplx{0.0}) throw DomainError("omega = 0 and k = 0: conduction pole");
  return eps_static + I * four_pi_sigma / den;
}

cplx eval_nonlocal_lowfreq(const Hydrodynamic& m, double omega, double k, double temperature) {
  if (k < 0.0) throw DomainError("wave number must be >= 0");
  const double g = m.damping(temperature);
  if (!(g > 0.0)) throw DomainError("low-frequency form needs a positive damping rate");
  // 4 pi sigma = wp^2 / gamma
  const double four_pi_sigma = m.plasma_frequency * m.plasma_frequency / g;
  return lowfreq_nonlocal_permittivity(m.lattice.static_value(), four_pi_sigma, k, m.debye_radius, omega);
}

cplx longitudinal_projection(const Tensor3& eps, const std::array<double, 3>& k) {
  const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
  if (!(k2 > 0.0)) throw DomainError("longitudinal projection needs a nonzero wave vector");
  cplx s{0.0};
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) s += k[a] * k[b] * eps[a][b];
  return s / k2;
}

} // namespace casimir
