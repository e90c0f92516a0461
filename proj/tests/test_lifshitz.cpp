#include "oracles.hpp"

#include <casimir/lifshitz.hpp>

#include <doctest.h>

#include <cmath>

using namespace casimir;

namespace {

Drude drude(double wp, double g, LatticeTerm lat = {}) { return Drude(wp, TemperatureLaw::constant(g), lat); }

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

} // namespace

TEST_CASE("kernel quadrature against the trilogarithm series") {
  const std::pair<double, double> cases[] = {
      {1.0, oracle::kernel_A1},   {1.01, oracle::kernel_A1_01}, {2.0, oracle::kernel_A2},
      {10.0, oracle::kernel_A10}, {1e3, oracle::kernel_A1e3},   {1e6, oracle::kernel_A1e6},
  };
  for (const auto& [A, frozen] : cases) {
    CHECK(std::abs(kernel_I(A) - frozen) <= 1e-10);
    CHECK(std::abs(kernel_I(A) - oracle::kernel_series(A)) <= 1e-10);
  }
  CHECK(std::abs(kernel_I(1.0) - 2.0 * oracle::zeta3) < 1e-12);
  CHECK(kernel_I(std::numeric_limits<double>::infinity()) == 0.0);
  CHECK_THROWS_AS(kernel_I(0.999), DomainError);
  CHECK_THROWS_AS(kernel_I(std::nan("")), DomainError);
}

TEST_CASE("kernel equals twice the logarithmic form") {
  for (double A : {1.0, 1.3, 4.0, 50.0}) CHECK(rel(kernel_I(A), 2.0 * oracle::log_form(A)) < 1e-8);
}

TEST_CASE("kernel is positive and decreasing") {
  oracle::Generator gen;
  for (int i = 0; i < 200; ++i) {
    const double a = 1.0 + gen.log_uniform(1e-8, 1e8);
    const double b = a * (1.0 + gen.log_uniform(1e-6, 1.0));
    CHECK(kernel_I(a) > 0.0);
    CHECK(kernel_I(b) < kernel_I(a));
  }
}

TEST_CASE("route names") {
  for (Route r : {Route::matsubara, Route::classical, Route::zeroT, Route::realaxis, Route::modes})
    CHECK(parse_route(to_string(r)) == r);
  CHECK_THROWS_AS(parse_route("contour"), DomainError);
}

TEST_CASE("classical limit") {
  // eps(0) = 3 from a single oscillator
  const DielectricModel d3 = LorentzLattice({{2.0, 1.0, 0.1}});
  CHECK(rel(classical_limit(d3).phi, oracle::classical_eps3) < 1e-10);
  CHECK(rel(classical_limit(d3).phi, oracle::li3_quarter / (8.0 * oracle::pi)) < 1e-10);
  // a conductor reflects perfectly at zero frequency
  CHECK(rel(classical_limit(drude(1.0, 0.1)).phi, oracle::zeta3 / (8.0 * oracle::pi)) < 1e-12);
  CHECK(classical_limit(Plasma(1.0)).route == Route::classical);
}

TEST_CASE("Matsubara sum for the plasma model") {
  const auto r = matsubara_pressure(Plasma(1.0), 2.0);
  CHECK(r.converged);
  CHECK(rel(r.phi, oracle::plasma_T2) < 1e-8);
  CHECK_FALSE(r.warnings.empty());
}

TEST_CASE("Matsubara sum for Drude at T = 0.1") {
  const double g[3] = {0.1, 0.2, 0.4};
  for (int i = 0; i < 3; ++i) CHECK(rel(matsubara_pressure(drude(1.0, g[i]), 0.1).phi, oracle::drude_T01[i]) < 1e-9);
}

TEST_CASE("spectrum bookkeeping") {
  MatsubaraOptions o;
  o.keep_spectrum = true;
  const double T = 0.3;
  const auto r = matsubara_pressure(drude(1.0, 0.1), T, o);
  REQUIRE(r.spectrum);
  const auto& s = *r.spectrum;
  CHECK(s.frequencies.size() == s.kernel_values.size());
  CHECK(s.frequencies.size() == r.terms + 1);
  for (std::size_t n = 0; n < s.frequencies.size(); ++n)
    CHECK(std::abs(s.frequencies[n] - 2.0 * oracle::pi * T * n) <= 1e-12 * (1.0 + s.frequencies[n]));
  CHECK(s.kernel_values[0] == doctest::Approx(2.0 * oracle::zeta3).epsilon(1e-12));
  CHECK(std::abs(T / (8.0 * oracle::pi) * (s.partial_sum + s.tail_estimate) - r.phi) < 1e-15);
  CHECK(s.tail_estimate < 1e-8 * s.partial_sum);
  CHECK_FALSE(matsubara_pressure(drude(1.0, 0.1), T).spectrum);
}

TEST_CASE("Matsubara sum with an explicit kernel argument") {
  // eps(i zeta) = 3 for every zeta would diverge
  CHECK_THROWS_AS(matsubara_pressure([](double) { return 4.0; }, 4.0, 1.0), DivergenceError);
  const auto r = matsubara_pressure([](double z) { return kernel_argument(Plasma(1.0), z, 2.0); }, 1.0, 2.0);
  CHECK(rel(r.phi, oracle::plasma_T2) < 1e-8);
  CHECK_THROWS_AS(matsubara_pressure(Plasma(1.0), 0.0), DomainError);
}

TEST_CASE("non-decaying permittivity diverges") {
  CHECK_THROWS_AS(matsubara_pressure(drude(1.0, 0.1, LatticeTerm(5.0)), 0.5), DivergenceError);
  CHECK_THROWS_AS(zero_T_pressure(Conductivity(LatticeTerm(12.0), TemperatureLaw::constant(0.5))), DivergenceError);
  CHECK_THROWS_AS(matsubara_pressure(Hydrodynamic(1.0, TemperatureLaw::constant(0.1), 1.0), 0.5),
                  UnsupportedVariantError);
}

TEST_CASE("zero-temperature pressure") {
  CHECK(rel(zero_T_pressure(Plasma(1.0)).phi, oracle::plasma_zero_T) < 1e-9);
  CHECK(rel(zero_T_pressure(Plasma(1.0)).phi, oracle::plasma_kappa / (16.0 * oracle::pi * oracle::pi)) < 1e-9);
  const double g[3] = {0.1, 0.01, 0.001};
  for (int i = 0; i < 3; ++i) CHECK(rel(zero_T_pressure(drude(1.0, g[i])).phi, oracle::drude_zero_T[i]) < 1e-8);
  // pressure scales with the plasma frequency
  for (double wp : {0.3, 2.0, 17.0}) CHECK(rel(zero_T_pressure(Plasma(wp)).phi, wp * oracle::plasma_zero_T) < 1e-8);
}

TEST_CASE("damping lowers the pressure") {
  double prev = zero_T_pressure(Plasma(1.0)).phi;
  for (double g : {0.001, 0.01, 0.1, 0.3, 1.0}) {
    const double p = zero_T_pressure(drude(1.0, g)).phi;
    CHECK(p < prev);
    prev = p;
  }
  CHECK(oracle::drude_T01[0] > oracle::drude_T01[1]);
}

TEST_CASE("Matsubara sum scales with frequency") {
  oracle::Generator gen;
  for (int i = 0; i < 8; ++i) {
    const double wp = gen.log_uniform(0.5, 2.0), g = gen.log_uniform(0.01, 1.0), T = gen.log_uniform(0.05, 2.0);
    const double a = gen.log_uniform(0.1, 10.0);
    const double p1 = matsubara_pressure(drude(wp, g), T).phi;
    const double pa = matsubara_pressure(drude(a * wp, a * g), a * T).phi;
    CHECK(rel(pa, a * p1) < 1e-7);
  }
}

TEST_CASE("real-axis and Matsubara routes agree") {
  oracle::Generator gen;
  for (int i = 0; i < 6; ++i) {
    const double g = gen.log_uniform(0.05, 1.0), T = gen.log_uniform(0.05, 1.0);
    const DielectricModel d = drude(1.0, g);
    CHECK(rel(real_axis_pressure(d, T).phi, matsubara_pressure(d, T).phi) < 1e-6);
  }
  const DielectricModel lor = drude(1.0, 0.2, LatticeTerm(std::vector<LorentzOscillator>{{2.0, 1.5, 0.3}}));
  CHECK(rel(real_axis_pressure(lor, 0.2).phi, matsubara_pressure(lor, 0.2).phi) < 1e-6);
  CHECK(rel(real_axis_pressure(drude(1.0, 0.1), 0.0).phi, oracle::drude_zero_T[0]) < 1e-7);
  CHECK_THROWS_AS(real_axis_pressure(Plasma(1.0), 0.1), SingularityError);
}

TEST_CASE("temperature limits") {
  const DielectricModel d = drude(1.0, 0.1);
  CHECK(rel(matsubara_pressure(d, 10.0).phi, 10.0 * classical_limit(d).phi) < 1e-2);
  CHECK(rel(matsubara_pressure(d, 0.02).phi, zero_T_pressure(d).phi) < 2e-2);
}

TEST_CASE("free energy") {
  const auto f = free_energy(drude(1.0, 0.1), 0.5);
  CHECK(rel(f.psi, oracle::drude_psi_T05) < 1e-8);
  CHECK(f.psi == doctest::Approx(matsubara_pressure(drude(1.0, 0.1), 0.5).phi / 2.0).epsilon(1e-14));
  CHECK(f.temperature == 0.5);
}

TEST_CASE("entropy") {
  const DielectricModel d = drude(1.0, 0.1);
  const auto s = entropy(d, 0.5, 0.01);
  CHECK(s.temperature == 0.5);
  CHECK(s.step == 0.01);
  CHECK(std::abs(s.stencil_h - s.stencil_h2) < 1e-5);
  // -dPsi/dT against a wide independent difference
  const double wide = -(free_energy(d, 0.52).psi - free_energy(d, 0.48).psi) / 0.04;
  CHECK(std::abs(s.entropy - wide) < 1e-5);
  CHECK_THROWS_AS(entropy(d, 0.01, 0.02), DomainError);
}

TEST_CASE("zero-frequency entropy jump of an activated conductor") {
  const double rl = 13.0 / 11.0;
  CHECK(std::abs(-(kernel_I(1.0) - kernel_I(rl * rl)) / (32.0 * oracle::pi) - oracle::activated_entropy_jump) < 1e-13);
  const DielectricModel c =
      Conductivity(LatticeTerm(std::vector<LorentzOscillator>{{11.0, 1.0, 0.1}}), TemperatureLaw::activated(1.0, 0.5));
  const auto s = entropy(c, 0.01, 0.0025);
  CHECK(std::abs(s.entropy / oracle::activated_entropy_jump - 1.0) < 5e-3);
}
