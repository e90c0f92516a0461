#include <casimir/models.hpp>
#include <casimir/quadrature.hpp>
#include <casimir/spectral.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numbers>
#include <sstream>

namespace casimir {

namespace {

constexpr double two_over_pi = 2.0 / std::numbers::pi;

bool is_power(const TailLaw& t) { return t.kind == TailLaw::Kind::power; }

// Low tail Im(x) = A (x/a)^p on (0, a]; with x = a s^(1/(p+2)),
//   int_0^a x Im(x) / (x^2 + c) dx = A a^2/(p+2) int_0^1 ds / (a^2 s^(2/(p+2)) + c).
double low_tail_integral(double amp, double a, double p, double c) {
  const double q = 2.0 / (p + 2.0);
  auto f = [&](double s) { return 1.0 / (a * a * std::pow(s, q) + c); };
  return amp * a * a / (p + 2.0) * quad::integrate(f, 0.0, 1.0).value;
}

// High tail Im(x) = A (x/b)^p on [b, inf), p < 0; with s = (x/b)^p,
//   int_b^inf x Im(x) / (x^2 + c) dx = A b^2/|p| int_0^1 ds / (b^2 + c s^(-2/p)).
double high_tail_integral(double amp, double b, double p, double c) {
  const double q = -2.0 / p;
  auto f = [&](double s) { return 1.0 / (b * b + c * std::pow(s, q)); };
  return amp * b * b / (-p) * quad::integrate(f, 0.0, 1.0).value;
}

void check_tails(const Tabulated& t) {
  const auto& hi = t.high_tail();
  if (is_power(hi) && hi.exponent > -1.0)
    throw NonConvergenceError("high-frequency tail decays slower than 1/omega",
                              std::numeric_limits<double>::quiet_NaN(),
                              std::numeric_limits<double>::infinity());
  const auto& lo = t.low_tail();
  if (is_power(lo) && lo.exponent <= -2.0)
    throw NonConvergenceError("low-frequency tail is not integrable at the origin",
                              std::numeric_limits<double>::quiet_NaN(),
                              std::numeric_limits<double>::infinity());
}

double parse_number(std::string_view text, std::size_t line, const char* what) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) text.remove_suffix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v))
    throw ParseError(line, std::string("invalid ") + what + " value '" + std::string(text) + "'");
  return v;
}

} // namespace

// ---------------------------------------------------------------------------
// TailLaw

TailLaw TailLaw::parse(const std::string& name) {
  if (name == "zero") return zero();
  if (name == "drude") return drude();
  if (name == "conductivity") return conductivity();
  if (name == "dielectric") return dielectric();
  if (name.rfind("power:", 0) == 0) {
    const std::string rest = name.substr(6);
    double e = 0.0;
    const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), e);
    if (ec == std::errc{} && ptr == rest.data() + rest.size() && std::isfinite(e)) return power(e);
  }
  throw DomainError("unknown tail law '" + name + "' (zero, drude, conductivity, dielectric, power:<p>)");
}

std::string TailLaw::name() const {
  if (kind == Kind::zero) return "zero";
  if (exponent == -3.0) return "drude";
  if (exponent == -1.0) return "conductivity";
  if (exponent == 1.0) return "dielectric";
  std::ostringstream os;
  os.precision(17);
  os << "power:" << exponent;
  return os.str();
}

// ---------------------------------------------------------------------------
// Tabulated

Tabulated::Tabulated(std::vector<Sample> samples, TailLaw low, TailLaw high)
    : samples_(std::move(samples)), low_(low), high_(high) {
  if (samples_.size() < 2) throw DomainError("table needs at least two samples");
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const auto& s = samples_[i];
    if (!(s.omega > 0.0) || !std::isfinite(s.omega)) throw DomainError("table frequencies must be positive");
    if (!(s.im_eps >= 0.0) || !std::isfinite(s.im_eps)) throw DomainError("table Im eps must be >= 0");
    if (i > 0 && !(s.omega > samples_[i - 1].omega))
      throw DomainError("table frequencies must be strictly increasing");
  }
}

double Tabulated::im_eps(double omega) const {
  if (!(omega > 0.0)) throw DomainError("real-axis frequency must be > 0");
  const auto& first = samples_.front();
  const auto& last = samples_.back();
  if (omega < first.omega) {
    if (!is_power(low_)) return 0.0;
    return first.im_eps * std::pow(omega / first.omega, low_.exponent);
  }
  if (omega > last.omega) {
    if (!is_power(high_)) return 0.0;
    return last.im_eps * std::pow(omega / last.omega, high_.exponent);
  }
  auto it = std::upper_bound(samples_.begin(), samples_.end(), omega,
                             [](double w, const Sample& s) { return w < s.omega; });
  if (it == samples_.end()) return last.im_eps;
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  if (lo.im_eps > 0.0 && hi.im_eps > 0.0) {
    const double t = std::log(omega / lo.omega) / std::log(hi.omega / lo.omega);
    return std::exp(std::log(lo.im_eps) + t * std::log(hi.im_eps / lo.im_eps));
  }
  const double t = (omega - lo.omega) / (hi.omega - lo.omega);
  return lo.im_eps + t * (hi.im_eps - lo.im_eps);
}

std::vector<double> Tabulated::grid() const {
  std::vector<double> g;
  g.reserve(samples_.size());
  for (const auto& s : samples_) g.push_back(s.omega);
  return g;
}

double epsilon_ik_from_table(const Tabulated& table, double zeta) {
  if (zeta < 0.0) throw DomainError("imaginary-axis frequency must be >= 0");
  check_tails(table);
  const auto& samples = table.samples();
  const double a = samples.front().omega;
  const double b = samples.back().omega;
  const double c = zeta * zeta;

  double sum = 0.0;
  const auto& lo = table.low_tail();
  if (is_power(lo) && samples.front().im_eps > 0.0) {
    if (zeta == 0.0) {
      if (lo.exponent <= 0.0) throw PoleAtZeroError(PoleOrder::first);
      sum += samples.front().im_eps / lo.exponent;
    } else {
      sum += low_tail_integral(samples.front().im_eps, a, lo.exponent, c);
    }
  }

  auto f = [&](double x) { return x * table.im_eps(x) / (x * x + c); };
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    if (samples[i].im_eps == 0.0 && samples[i + 1].im_eps == 0.0) continue;
    const double x0 = samples[i].omega, x1 = samples[i + 1].omega;
    if (zeta > x0 && zeta < x1) {
      sum += quad::integrate(f, x0, zeta).value;
      sum += quad::integrate(f, zeta, x1).value;
    } else {
      sum += quad::integrate(f, x0, x1).value;
    }
  }

  const auto& hi = table.high_tail();
  if (is_power(hi) && samples.back().im_eps > 0.0) {
    if (zeta == 0.0)
      sum += samples.back().im_eps / (-hi.exponent);
    else
      sum += high_tail_integral(samples.back().im_eps, b, hi.exponent, c);
  }
  return 1.0 + two_over_pi * sum;
}

double table_real_susceptibility(const Tabulated& table, double omega) {
  if (!(omega > 0.0)) throw DomainError("real-axis frequency must be > 0");
  check_tails(table);
  const auto& samples = table.samples();
  const double a = samples.front().omega;
  const double b = samples.back().omega;
  const auto grid = table.grid();
  auto im = [&](double x) { return table.im_eps(x); };

  if (!(omega > a && omega < b)) return spectral::kramers_kronig(im, omega, grid).value;

  double sum = spectral::kramers_kronig(im, omega, grid, spectral::Band{a, b}).value;
  const double c = -omega * omega;
  const auto& lo = table.low_tail();
  if (is_power(lo) && samples.front().im_eps > 0.0)
    sum += two_over_pi * low_tail_integral(samples.front().im_eps, a, lo.exponent, c);
  const auto& hi = table.high_tail();
  if (is_power(hi) && samples.back().im_eps > 0.0)
    sum += two_over_pi * high_tail_integral(samples.back().im_eps, b, hi.exponent, c);
  return sum;
}

// ---------------------------------------------------------------------------
// CSV ingestion

Tabulated read_table_csv(std::istream& in, TailLaw low, TailLaw high) {
  std::string line;
  std::size_t n = 0;
  bool header = false;
  std::vector<Tabulated::Sample> samples;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (!header) {
      std::string h;
      for (char ch : line)
        if (ch != ' ' && ch != '\t') h.push_back(ch);
      if (h != "omega,im_eps") throw ParseError(n, "expected header 'omega,im_eps'");
      header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
      throw ParseError(n, "expected two comma-separated columns");
    const std::string_view view(line);
    const double w = parse_number(view.substr(0, comma), n, "omega");
    const double im = parse_number(view.substr(comma + 1), n, "im_eps");
    if (!(w > 0.0)) throw ParseError(n, "omega must be > 0");
    if (im < 0.0) throw ParseError(n, "im_eps must be >= 0");
    if (!samples.empty() && !(w > samples.back().omega))
      throw ParseError(n, "omega must be strictly increasing");
    samples.push_back({w, im});
  }
  if (!header) throw ParseError(n == 0 ? 1 : n, "empty table");
  if (samples.size() < 2) throw ParseError(n, "table needs at least two samples");
  return Tabulated(std::move(samples), low, high);
}

Tabulated read_table_csv(const std::string& path, TailLaw low, TailLaw high) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open table '" + path + "'");
  return read_table_csv(in, low, high);
}

} // namespace casimir
