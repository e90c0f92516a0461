#include <casimir/modesum.hpp>
#include <casimir/quadrature.hpp>

#include "visit.hpp"

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>

namespace casimir {

namespace {

constexpr double pi = std::numbers::pi;
using detail::overloaded;

// eps(w) = eps_l - wp^2 / w^2
struct RealResponse {
  double wp;
  double eps_l;
};

std::optional<RealResponse> real_response(const DielectricModel& model) {
  return std::visit(
      overloaded{
          [](const Plasma& m) -> std::optional<RealResponse> { return RealResponse{m.plasma_frequency, 1.0}; },
          [](const Drude& m) -> std::optional<RealResponse> {
            if (m.damping(0.0) != 0.0)
              throw UnsupportedVariantError("mode sum needs a dissipation-free model (gamma(0) = 0)");
            if (!m.lattice.is_constant())
              throw UnsupportedVariantError("lattice resonances on the real axis are not supported by the mode sum");
            return RealResponse{m.plasma_frequency, m.lattice.static_value()};
          },
          [](const LorentzLattice& m) -> std::optional<RealResponse> {
            if (m.oscillators.empty()) return std::nullopt;
            throw UnsupportedVariantError("lattice resonances on the real axis are not supported by the mode sum");
          },
          [&](const auto&) -> std::optional<RealResponse> {
            throw UnsupportedVariantError("mode sum is not defined for the " + variant_name(model) + " model");
          },
      },
      model);
}

double reflection(const RealResponse& m, double w) {
  const double eps = m.eps_l - (m.wp / w) * (m.wp / w);
  if (std::isinf(eps)) return 1.0;
  return (eps + 1.0) / (eps - 1.0);
}

double omega_inf(const RealResponse& m) { return m.wp / std::sqrt(m.eps_l + 1.0); }

// Root of r(w) = target on (0, 2 wp): locate a sign change on a 512-point
// grid (w = 0 taken as the limit r = 1), then bisect.
double bracket_root(const RealResponse& m, double target) {
  constexpr int kGrid = 512;
  const double hi = 2.0 * m.wp;
  auto f = [&](double w) { return w == 0.0 ? 1.0 - target : reflection(m, w) - target; };
  double a = 0.0, fa = f(0.0);
  for (int i = 1; i <= kGrid; ++i) {
    const double b = hi * i / kGrid;
    const double fb = f(b);
    if (fb == 0.0) return b;
    if ((fa > 0.0) != (fb > 0.0)) {
      boost::math::tools::eps_tolerance<double> tol(std::numeric_limits<double>::digits);
      const auto [lo, up] = boost::math::tools::bisect(f, a, b, tol);
      return 0.5 * (lo + up);
    }
    a = b;
    fa = fb;
  }
  throw BracketingError("no sign change of the dispersion function in (0, 2 wp)");
}

ModeFrequencies roots(const RealResponse& m, double ql) {
  const double e = std::exp(-ql);
  return {bracket_root(m, e), bracket_root(m, -e)};
}

} // namespace

ModeFrequencies surface_mode_frequencies(const DielectricModel& model, double ql) {
  if (!(ql > 0.0)) throw DomainError("ql must be > 0");
  const auto m = real_response(model);
  if (!m) throw DomainError("vacuum has no surface modes");
  return roots(*m, ql);
}

double asymptotic_mode_frequency(const DielectricModel& model) {
  const auto m = real_response(model);
  if (!m) throw DomainError("vacuum has no surface modes");
  return omega_inf(*m);
}

ModeSpectrum mode_spectrum(const DielectricModel& model, std::span<const double> ql) {
  ModeSpectrum s;
  s.model = variant_name(model);
  s.omega_inf = asymptotic_mode_frequency(model);
  for (double t : ql) {
    const auto w = surface_mode_frequencies(model, t);
    s.ql.push_back(t);
    s.omega_minus.push_back(w.minus);
    s.omega_plus.push_back(w.plus);
  }
  return s;
}

void write_csv(std::ostream& out, const ModeSpectrum& spectrum) {
  out << "ql,omega_minus,omega_plus\n";
  char buf[128];
  for (std::size_t i = 0; i < spectrum.ql.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", spectrum.ql[i], spectrum.omega_minus[i],
                  spectrum.omega_plus[i]);
    out << buf;
  }
}

ContourSum argument_principle_sum(const DielectricModel& model, double ql, const Rectangle& c, ContourOptions opts) {
  if (!(ql > 0.0)) throw DomainError("ql must be > 0");
  if (!(c.re_hi > c.re_lo) || !(c.im_hi > c.im_lo)) throw DomainError("contour rectangle is degenerate");
  const auto rat = rational_form(model, 0.0, 0.0);
  if (!rat) throw UnsupportedVariantError("argument principle needs a closed-form model");

  // r = P/Q with P = N + D, Q = N - D
  const Polynomial P = rat->num + rat->den;
  const Polynomial Q = rat->num - rat->den;
  const Polynomial dP = P.derivative(), dQ = Q.derivative();
  const double e2 = std::exp(-2.0 * ql);

  const std::array<cplx, 5> corners{cplx{c.re_lo, c.im_lo}, cplx{c.re_hi, c.im_lo}, cplx{c.re_hi, c.im_hi},
                                    cplx{c.re_lo, c.im_hi}, cplx{c.re_lo, c.im_lo}};
  const double perimeter = 2.0 * ((c.re_hi - c.re_lo) + (c.im_hi - c.im_lo));

  struct Pair {
    cplx zero, pole;
  };
  // Trapezoid on every edge with n_e = share of `nodes` proportional to its length.
  auto trapezoid = [&](std::size_t nodes) {
    Pair sum{};
    for (int k = 0; k < 4; ++k) {
      const cplx a = corners[k], b = corners[k + 1];
      const std::size_t n = std::max<std::size_t>(
          8, static_cast<std::size_t>(std::llround(static_cast<double>(nodes) * std::abs(b - a) / perimeter)));
      const cplx h = (b - a) / static_cast<double>(n);
      for (std::size_t j = 0; j <= n; ++j) {
        const cplx w = a + static_cast<double>(j) * h;
        const cplx p = P(w), q = Q(w);
        if (std::abs(p) < 1e-300 || std::abs(q) < 1e-300)
          throw SingularityError("contour passes through a pole of the dispersion function");
        const cplx r = p / q;
        const cplx r2 = r * r;
        const cplx g = 1.0 - e2 / r2;
        if (std::abs(g) < 1e-12) throw SingularityError("|g| < 1e-12 on the contour: a mode lies on it");
        if (std::abs(r2) < 1e-12) throw SingularityError("|r^2| < 1e-12 on the contour: a pole lies on it");
        const cplx L = 2.0 * (dP(w) / p - dQ(w) / q); // (r^2)'/r^2
        const cplx dg_over_g = L * e2 / (r2 - e2);
        const double weight = (j == 0 || j == n) ? 0.5 : 1.0;
        sum.zero += weight * w * dg_over_g * h;
        sum.pole += weight * w * L * h;
      }
    }
    const cplx two_pi_i{0.0, 2.0 * pi};
    return Pair{sum.zero / two_pi_i, sum.pole / two_pi_i};
  };

  // Romberg on the trapezoid sequence; the corners leave an h^2, h^4, ... expansion.
  std::vector<std::vector<Pair>> table;
  std::size_t nodes = opts.initial_nodes;
  ContourSum out{};
  for (unsigned level = 0; level <= opts.max_doublings; ++level, nodes *= 2) {
    std::vector<Pair> row{trapezoid(nodes)};
    double factor = 4.0;
    for (std::size_t j = 1; j <= level; ++j, factor *= 4.0) {
      const Pair& fine = row[j - 1];
      const Pair& coarse = table[level - 1][j - 1];
      row.push_back({(factor * fine.zero - coarse.zero) / (factor - 1.0),
                     (factor * fine.pole - coarse.pole) / (factor - 1.0)});
    }
    const Pair best = row.back();
    out.zero_part = best.zero;
    out.pole_part = best.pole;
    out.eigen_sum = best.zero + best.pole;
    out.nodes = nodes;
    if (level > 0) {
      const Pair prev = table[level - 1].back();
      out.change = std::abs((best.zero + best.pole) - (prev.zero + prev.pole));
      if (out.change < opts.tolerance) return out;
    }
    table.push_back(std::move(row));
  }
  throw NonConvergenceError("contour integral not converged", out.eigen_sum.real(), out.change);
}

FreeEnergyResult zero_T_free_energy_modes(const DielectricModel& model, double rtol) {
  if (!(rtol > 0.0)) throw DomainError("rtol must be > 0");
  FreeEnergyResult res;
  res.route = Route::modes;
  const auto m = real_response(model);
  if (!m) return res;

  const double winf = omega_inf(*m);
  auto f = [&](double t) {
    if (t <= 0.0) return 0.0;
    const auto w = roots(*m, t);
    return t * (w.plus + w.minus - 2.0 * winf);
  };
  // The integrand falls off like t exp(-2t); past t = 25 it is below the
  // rounding noise of the roots.
  const std::array<double, 6> pts{0.0, 0.5, 2.0, 5.0, 10.0, 25.0};
  quad::Tolerance tol;
  tol.rel = rtol;
  tol.abs = 1e-14 * m->wp;
  const auto r = quad::integrate_panels(f, pts, tol);
  res.psi = r.value / (4.0 * pi);
  res.err_estimate = r.error / (4.0 * pi);
  res.converged = r.converged;
  if (!r.converged) throw NonConvergenceError("mode-sum integral not converged", res.psi, res.err_estimate);
  return res;
}

PressureResult pressure_from_modes(const DielectricModel& model, double rtol) {
  const auto psi = zero_T_free_energy_modes(model, rtol);
  PressureResult res;
  res.route = Route::modes;
  res.phi = 2.0 * std::abs(psi.psi);
  res.err_estimate = 2.0 * psi.err_estimate;
  res.converged = psi.converged;
  if (std::holds_alternative<Plasma>(model))
    res.warnings.push_back("plasma model is not an admissible dielectric response");
  return res;
}

} // namespace casimir
