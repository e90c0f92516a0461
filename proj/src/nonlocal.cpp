#include <casimir/nonlocal.hpp>

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

namespace casimir {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();
constexpr double kDivergence = 1e12;
constexpr double kAgreement = 1e-6;
// Smallest conductivity whose omega -> 0 behavior the frequency grid still resolves.
constexpr double kSigmaFloor = 1e-200;

// Limit of a sequence sampled on a geometric grid: converged, divergent
// (+inf), or Aitken-extrapolated from the last three terms.
double sequence_limit(const std::vector<cplx>& v) {
  const std::size_t n = v.size();
  if (n == 0) return std::numeric_limits<double>::quiet_NaN();
  const cplx last = v.back();
  if (!std::isfinite(std::abs(last)) || std::abs(last) > kDivergence) return inf;
  if (n < 3) return std::abs(last);
  const cplx d1 = v[n - 1] - v[n - 2];
  const cplx d0 = v[n - 2] - v[n - 3];
  if (std::abs(d1) <= 1e-13 * std::abs(last)) return std::abs(last);
  if (std::abs(d1) > std::abs(d0)) return inf;
  return std::abs(last - d1 * d1 / (d1 - d0));
}

std::vector<double> decades(double step, double floor) {
  std::vector<double> g;
  for (int j = 1;; ++j) {
    const double x = std::pow(10.0, -step * j);
    if (x < floor) break;
    g.push_back(x);
  }
  return g;
}

using Family = std::function<cplx(double omega, double temperature)>;

CommutationReport check(const std::string& name, double k, const Family& eps, const TemperatureLaw& sigma) {
  const auto omegas = decades(1.0, 1e-300);
  const auto temps = decades(0.25, 1e-300);

  // T -> 0 first, then omega -> 0
  std::vector<cplx> outer;
  std::vector<double> inner_lim;
  for (double w : omegas) {
    std::vector<cplx> inner;
    for (double t : temps) inner.push_back(eps(w, t));
    inner_lim.push_back(sequence_limit(inner));
  }
  for (double x : inner_lim) outer.push_back(x);
  const double a = sequence_limit(outer);

  // omega -> 0 first, then T -> 0, over temperatures where sigma(T) is resolvable
  outer.clear();
  for (double t : temps) {
    if (sigma(t) < kSigmaFloor && !outer.empty()) break;
    std::vector<cplx> inner;
    for (double w : omegas) inner.push_back(eps(w, t));
    outer.push_back(sequence_limit(inner));
  }
  const double b = sequence_limit(outer);

  CommutationReport r;
  r.family = name;
  r.k = k;
  r.t_then_omega = a;
  r.omega_then_t = b;
  r.commute = std::isfinite(a) && std::isfinite(b) && std::abs(a - b) <= kAgreement * std::max(1.0, std::abs(a));
  return r;
}

nlohmann::ordered_json number_or_sentinel(double x) {
  if (std::isinf(x)) return "inf";
  return x;
}

} // namespace

CorrelationScales CorrelationScales::make(double v, double gamma, double omega) {
  if (!(v > 0.0)) throw DomainError("mean carrier velocity must be > 0");
  if (gamma < 0.0 || omega < 0.0) throw DomainError("damping and frequency must be >= 0");
  CorrelationScales s;
  s.mean_velocity = v;
  s.damping = gamma;
  s.omega = omega;
  s.mean_free_path = gamma > 0.0 ? v / gamma : inf;
  s.omega_length = omega > 0.0 ? v / omega : inf;
  s.correlation_radius = std::min(s.mean_free_path, s.omega_length);
  return s;
}

LocalityResult locality_check(const CorrelationScales& scales, double k) {
  if (!(k > 0.0)) throw DomainError("wave number must be > 0");
  LocalityResult r;
  r.margin = k * scales.correlation_radius;
  r.local = r.margin < 1.0;
  return r;
}

double debye_radius(double temperature, double mass, double wp) {
  if (temperature < 0.0 || !(mass > 0.0) || !(wp > 0.0))
    throw DomainError("Debye radius needs T >= 0, m > 0 and wp > 0");
  return std::sqrt(temperature / (mass * wp * wp));
}

Hydrodynamic make_hydrodynamic(double wp, TemperatureLaw gamma, double temperature, double mass, LatticeTerm lattice) {
  return Hydrodynamic(wp, gamma, debye_radius(temperature, mass, wp), std::move(lattice));
}

CommutationReport limit_commutation_check(double eps_static, const TemperatureLaw& sigma) {
  if (!(eps_static >= 1.0)) throw DomainError("static lattice permittivity must be >= 1");
  const double four_pi = 4.0 * std::numbers::pi;
  auto eps = [&](double w, double t) { return cplx{eps_static, four_pi * sigma(t) / w}; };
  return check("local", 0.0, eps, sigma);
}

CommutationReport limit_commutation_check(double eps_static, const TemperatureLaw& sigma, double k, double rd_unit) {
  if (!(eps_static >= 1.0)) throw DomainError("static lattice permittivity must be >= 1");
  if (!(k > 0.0) || !(rd_unit > 0.0)) throw DomainError("wave number and Debye radius must be > 0");
  const double four_pi = 4.0 * std::numbers::pi;
  auto eps = [&](double w, double t) {
    const double rd = rd_unit / std::sqrt(t);
    return lowfreq_nonlocal_permittivity(eps_static, four_pi * sigma(t), k, rd, w);
  };
  return check("nonlocal", k, eps, sigma);
}

nlohmann::ordered_json to_json(const CorrelationScales& s, const LocalityResult& r, double k) {
  nlohmann::ordered_json j;
  j["mean_velocity"] = s.mean_velocity;
  j["damping"] = s.damping;
  j["omega"] = s.omega;
  j["mean_free_path"] = number_or_sentinel(s.mean_free_path);
  j["omega_length"] = number_or_sentinel(s.omega_length);
  j["correlation_radius"] = number_or_sentinel(s.correlation_radius);
  j["k"] = k;
  j["margin"] = number_or_sentinel(r.margin);
  j["regime"] = r.local ? "local" : "nonlocal";
  return j;
}

nlohmann::ordered_json to_json(const CommutationReport& r) {
  nlohmann::ordered_json j;
  j["family"] = r.family;
  j["k"] = r.k;
  j["t_then_omega"] = number_or_sentinel(r.t_then_omega);
  j["omega_then_t"] = number_or_sentinel(r.omega_then_t);
  j["commute"] = r.commute;
  return j;
}

} // namespace casimir
