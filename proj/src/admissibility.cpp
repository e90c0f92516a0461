#include <casimir/admissibility.hpp>
#include <casimir/quadrature.hpp>

#include "visit.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

namespace casimir {

namespace {

constexpr double pi = std::numbers::pi;
using detail::overloaded;

const char* const kReasonImZero = "Im eps identically zero";
const char* const kReasonImNotPositive = "Im eps not positive";
const char* const kReasonSecondOrderPole = "second-order pole at omega = 0";
const char* const kReasonSumRule = "sum rule violated";
const char* const kReasonKK = "Kramers-Kronig relation violated";
const char* const kReasonUhpZeros = "zeros of eps in the upper half-plane";

// Real-axis response of a model; hydrodynamic models are frozen at a wave number.
struct Response {
  std::function<cplx(double)> eps;
  std::function<double(double)> im;
  std::vector<double> features;
  double eps_inf = 1.0;
  double scale = 1.0;
};

Response response(const DielectricModel& model, double temperature, double wave_number) {
  Response r;
  r.features = spectral_features(model, temperature);
  r.eps_inf = high_frequency_limit(model);
  if (const auto* h = std::get_if<Hydrodynamic>(&model)) {
    r.eps = [h, temperature, wave_number](double w) { return eval_nonlocal(*h, w, wave_number, temperature); };
    r.im = [h, temperature, wave_number](double w) { return eval_nonlocal(*h, w, wave_number, temperature).imag(); };
    r.scale = h->plasma_frequency;
    const double wk = wave_number * h->debye_radius * h->plasma_frequency;
    if (wk > 0.0) r.features.push_back(wk);
    return r;
  }
  r.eps = [&model, temperature](double w) { return eval_real_axis(model, w, temperature, 0.0); };
  r.im = [&model, temperature](double w) { return im_eps(model, w, temperature); };
  r.scale = characteristic_frequency(model, temperature);
  return r;
}

std::optional<double> declared_plasma_frequency(const DielectricModel& model) {
  return std::visit(overloaded{
                        [](const Plasma& m) -> std::optional<double> { return m.plasma_frequency; },
                        [](const Drude& m) -> std::optional<double> { return m.plasma_frequency; },
                        [](const Hydrodynamic& m) -> std::optional<double> { return m.plasma_frequency; },
                        [](const auto&) -> std::optional<double> { return std::nullopt; },
                    },
                    model);
}

double oscillator_strength(const DielectricModel& model) {
  auto sum = [](const std::vector<LorentzOscillator>& osc) {
    double s = 0.0;
    for (const auto& o : osc) s += o.strength;
    return s;
  };
  return std::visit(overloaded{
                        [&](const Drude& m) { return sum(m.lattice.oscillators()); },
                        [&](const Conductivity& m) { return sum(m.lattice.oscillators()); },
                        [&](const Hydrodynamic& m) { return sum(m.lattice.oscillators()); },
                        [&](const LorentzLattice& m) { return sum(m.oscillators); },
                        [](const auto&) { return 0.0; },
                    },
                    model);
}

double kk_from_response(const Response& r, double omega, spectral::Band band) {
  return r.eps_inf + spectral::kramers_kronig(r.im, omega, r.features, band).value;
}

SumRule sum_rule_from_response(const DielectricModel& model, const Response& r, double temperature) {
  SumRule s;
  if (const auto* c = std::get_if<Conductivity>(&model); c && c->conductivity(temperature) > 0.0) {
    s.applicable = false;
    s.note = "sum rule inapplicable without UV completion (Im eps ~ 1/omega)";
    return s;
  }
  if (const auto* t = std::get_if<Tabulated>(&model)) {
    const auto& hi = t->high_tail();
    if (hi.kind == TailLaw::Kind::power && hi.exponent >= -2.0) {
      s.applicable = false;
      s.note = "sum rule inapplicable: high-frequency tail decays slower than 1/omega^2";
      return s;
    }
    const auto& samples = t->samples();
    double total = 0.0;
    const auto& lo = t->low_tail();
    if (lo.kind == TailLaw::Kind::power) {
      const double a = samples.front().omega;
      total += samples.front().im_eps * a * a / (lo.exponent + 2.0);
    }
    auto f = [&](double x) { return x * t->im_eps(x); };
    for (std::size_t i = 0; i + 1 < samples.size(); ++i)
      total += quad::integrate(f, samples[i].omega, samples[i + 1].omega).value;
    if (hi.kind == TailLaw::Kind::power) {
      const double b = samples.back().omega;
      total += -samples.back().im_eps * b * b / (hi.exponent + 2.0);
    }
    s.integral = total;
    return s;
  }
  if (!std::holds_alternative<Plasma>(model)) s.integral = spectral::first_moment(r.im, r.features).value;
  const double f = oscillator_strength(model);
  if (auto wp = declared_plasma_frequency(model)) {
    s.reference = 0.5 * pi * (*wp * *wp + f);
  } else if (f > 0.0) {
    s.reference = 0.5 * pi * f;
  }
  return s;
}

} // namespace

std::vector<double> log_grid(double lo, double hi, std::size_t points) {
  if (!(lo > 0.0) || !(hi > lo) || points < 2) throw DomainError("log grid needs 0 < lo < hi and >= 2 points");
  std::vector<double> g(points);
  const double step = std::log(hi / lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) g[i] = lo * std::exp(step * static_cast<double>(i));
  g.back() = hi;
  return g;
}

PositivityCheck check_im_positivity(const DielectricModel& model, std::span<const double> grid, double temperature) {
  PositivityCheck c;
  bool first = true;
  bool all_zero = true;
  for (double w : grid) {
    const double im = im_eps(model, w, temperature);
    if (im != 0.0) all_zero = false;
    if (first || im < c.worst_im_eps) {
      c.worst_im_eps = im;
      c.worst_omega = w;
      first = false;
    }
    if (!(im > 0.0)) c.pass = false;
  }
  c.identically_zero = !grid.empty() && all_zero;
  return c;
}

double kk_reconstruct_re(const DielectricModel& model, double omega, spectral::Band band, double temperature) {
  if (!(omega > 0.0)) throw DomainError("real-axis frequency must be > 0");
  if (std::holds_alternative<Hydrodynamic>(model))
    throw UnsupportedVariantError("hydrodynamic model needs a wave number");
  if (const auto* t = std::get_if<Tabulated>(&model); t && band.lo == 0.0 && std::isinf(band.hi))
    return 1.0 + table_real_susceptibility(*t, omega);
  return kk_from_response(response(model, temperature, 0.0), omega, band);
}

SumRule f_sum_rule(const DielectricModel& model, double temperature) {
  if (std::holds_alternative<Hydrodynamic>(model))
    throw UnsupportedVariantError("hydrodynamic model needs a wave number");
  return sum_rule_from_response(model, response(model, temperature, 0.0), temperature);
}

PoleOrder pole_order_at_zero(const DielectricModel& model, double temperature, double wave_number) {
  if (const auto* h = std::get_if<Hydrodynamic>(&model)) {
    // Screening turns the carrier term into a finite 1/(k R_D)^2 at omega = 0.
    if (wave_number > 0.0) return PoleOrder::regular;
    return h->damping(temperature) > 0.0 ? PoleOrder::first : PoleOrder::second;
  }
  return static_limit(model, temperature).order;
}

double limit_omega2_epsilon(const DielectricModel& model, double temperature) {
  if (pole_order_at_zero(model, temperature) != PoleOrder::second) return 0.0;
  const double wp = *declared_plasma_frequency(model);
  return -wp * wp;
}

AdmissibilityReport audit(const DielectricModel& model, AuditOptions opts) {
  AdmissibilityReport rep;
  rep.model = variant_name(model);
  rep.temperature = opts.temperature;
  const double T = opts.temperature;
  const bool hydro = std::holds_alternative<Hydrodynamic>(model);
  const Response r = response(model, T, opts.wave_number);
  if (hydro) rep.notes.push_back("hydrodynamic model audited at k = " + std::to_string(opts.wave_number));

  // Im eps > 0
  std::vector<double> grid;
  if (const auto* t = std::get_if<Tabulated>(&model))
    grid = log_grid(0.1 * t->samples().front().omega, 10.0 * t->samples().back().omega, 241);
  else
    grid = log_grid(1e-3 * r.scale, 1e3 * r.scale, 241);
  if (hydro) {
    PositivityCheck c;
    bool first = true, all_zero = true;
    for (double w : grid) {
      const double im = r.im(w);
      if (im != 0.0) all_zero = false;
      if (first || im < c.worst_im_eps) {
        c.worst_im_eps = im;
        c.worst_omega = w;
        first = false;
      }
      if (!(im > 0.0)) c.pass = false;
    }
    c.identically_zero = all_zero;
    rep.im_positivity = c;
  } else {
    rep.im_positivity = check_im_positivity(model, grid, T);
  }
  if (!rep.im_positivity.pass)
    rep.reasons.push_back(rep.im_positivity.identically_zero ? kReasonImZero : kReasonImNotPositive);

  // pole structure
  rep.pole_order = pole_order_at_zero(model, T, opts.wave_number);
  if (rep.pole_order == PoleOrder::second) rep.reasons.push_back(kReasonSecondOrderPole);

  // f-sum rule
  try {
    const SumRule s = sum_rule_from_response(model, r, T);
    if (!s.applicable) {
      rep.notes.push_back(s.note);
    } else if (s.reference) {
      const double ratio = s.integral / *s.reference;
      rep.sum_rule_ratio = declared_plasma_frequency(model) ? ratio : s.integral;
      if (std::abs(ratio - 1.0) > opts.sum_rule_tolerance) rep.reasons.push_back(kReasonSumRule);
    } else {
      rep.sum_rule_ratio = s.integral;
      rep.notes.push_back("no plasma frequency declared: sum_rule_ratio holds the absolute integral");
    }
  } catch (const Error& e) {
    rep.notes.push_back(std::string("sum rule inapplicable: ") + e.what());
  }

  // Kramers-Kronig consistency
  if (std::holds_alternative<Tabulated>(model)) {
    rep.notes.push_back("Kramers-Kronig residual unchecked: Re eps of tabulated data is itself a KK transform");
  } else {
    try {
      double worst = 0.0;
      for (double w : log_grid(opts.kk_band_lo * r.scale, opts.kk_band_hi * r.scale, opts.kk_points)) {
        const cplx eps = r.eps(w);
        const double kk = kk_from_response(r, w, {});
        const double err = std::abs(kk - eps.real()) / std::max(std::abs(eps), std::abs(kk));
        worst = std::max(worst, err);
      }
      rep.kk_residual = worst;
      // a dissipation-free model fails the KK check trivially; the positivity
      // reason already covers it
      if (rep.im_positivity.pass && worst > opts.kk_tolerance) rep.reasons.push_back(kReasonKK);
    } catch (const Error& e) {
      rep.notes.push_back(std::string("Kramers-Kronig check inapplicable: ") + e.what());
    }
  }

  // zeros in the upper half-plane
  const auto rat = rational_form(model, T, opts.wave_number);
  if (!rat) {
    rep.uhp_zeros = "unchecked";
    rep.notes.push_back("upper half-plane zeros unchecked for tabulated data");
  } else {
    bool found = false;
    for (const cplx z : rat->num.roots())
      if (z.imag() > 1e-9 * std::max(1.0, std::abs(z))) found = true;
    rep.uhp_zeros = found ? "found" : "none";
    if (found) rep.reasons.push_back(kReasonUhpZeros);
  }

  rep.admissible = rep.reasons.empty();
  return rep;
}

nlohmann::ordered_json to_json(const AdmissibilityReport& rep) {
  nlohmann::ordered_json j;
  j["model"] = rep.model;
  j["temperature"] = rep.temperature;
  j["im_positivity"] = {{"pass", rep.im_positivity.pass},
                        {"worst_omega", rep.im_positivity.worst_omega},
                        {"worst_im_eps", rep.im_positivity.worst_im_eps}};
  j["kk_residual"] = rep.kk_residual ? nlohmann::ordered_json(*rep.kk_residual) : nlohmann::ordered_json(nullptr);
  j["sum_rule_ratio"] =
      rep.sum_rule_ratio ? nlohmann::ordered_json(*rep.sum_rule_ratio) : nlohmann::ordered_json(nullptr);
  j["pole_order"] = to_string(rep.pole_order);
  j["uhp_zeros"] = rep.uhp_zeros;
  j["verdict"] = rep.admissible ? "admissible" : "inadmissible";
  j["reasons"] = rep.reasons;
  j["notes"] = rep.notes;
  return j;
}

} // namespace casimir
