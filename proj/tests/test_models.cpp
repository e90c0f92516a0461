#include "oracles.hpp"

#include <casimir/models.hpp>

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace casimir;

namespace {

Drude drude(double wp, double g, LatticeTerm lat = {}) { return Drude(wp, TemperatureLaw::constant(g), lat); }

std::vector<DielectricModel> admissible_models() {
  return {
      drude(1.0, 0.1),
      drude(2.0, 0.5, LatticeTerm(std::vector<LorentzOscillator>{{3.0, 0.4, 0.05}})),
      Conductivity(LatticeTerm(12.0), TemperatureLaw::constant(0.5)),
      Conductivity(LatticeTerm(std::vector<LorentzOscillator>{{11.0, 1.0, 0.1}}), TemperatureLaw::constant(0.01)),
      LorentzLattice({{1.0, 1.0, 0.1}}),
      LorentzLattice({{1.0, 0.5, 0.2}, {4.0, 3.0, 0.7}}),
  };
}

} // namespace

TEST_CASE("real-axis evaluation of the closed forms") {
  const cplx d = eval_real_axis(drude(1.0, 0.1), 1.0);
  CHECK(std::abs(d - cplx{1.0 - 1.0 / 1.01, 0.1 / 1.01}) < 1e-15);
  CHECK(std::abs(d.real() - 0.009901) < 1e-6);
  CHECK(std::abs(d.imag() - 0.099010) < 1e-6);

  CHECK(eval_real_axis(Plasma(1.0), 1.0, 0.0, 0.0) == cplx{0.0, 0.0});
  CHECK(eval_real_axis(Plasma(1.0), 1.0, 0.0, 1e-3).imag() > 0.0);

  const cplx c = eval_real_axis(Conductivity(LatticeTerm(12.0), TemperatureLaw::constant(0.5)), 0.01);
  CHECK(c.real() == 12.0);
  CHECK(std::abs(c.imag() - 4.0 * oracle::pi * 0.5 / 0.01) < 1e-12);
  CHECK(std::abs(c.imag() - 628.32) < 1e-2);

  CHECK_THROWS_AS(eval_real_axis(Plasma(1.0), 0.0), DomainError);
  CHECK_THROWS_AS(eval_real_axis(Plasma(1.0), -1.0), DomainError);
  CHECK_THROWS_AS(eval_real_axis(Hydrodynamic(1.0, TemperatureLaw::constant(0.1), 1.0), 1.0),
                  UnsupportedVariantError);
}

TEST_CASE("imaginary-axis evaluation") {
  CHECK(std::abs(eval_imag_axis(drude(1.0, 0.1), 1.0) - (1.0 + 1.0 / 1.1)) < 1e-15);
  CHECK(std::abs(eval_imag_axis(drude(1.0, 0.1), 1.0) - 1.909091) < 1e-6);
  CHECK(eval_imag_axis(Plasma(1.0), 1.0) == 2.0);
  CHECK(eval_imag_axis(LorentzLattice({{1.0, 1.0, 0.1}}), 0.0) == 2.0);

  // poles at zero are reported as a classification, not a number
  try {
    eval_imag_axis(drude(1.0, 0.1), 0.0);
    FAIL("expected a pole");
  } catch (const PoleAtZeroError& e) {
    CHECK(e.order() == PoleOrder::first);
  }
  try {
    eval_imag_axis(Plasma(1.0), 0.0);
    FAIL("expected a pole");
  } catch (const PoleAtZeroError& e) {
    CHECK(e.order() == PoleOrder::second);
  }
  CHECK(eval_imag_axis(Conductivity(LatticeTerm(12.0), TemperatureLaw::activated(1.0, 0.5)), 0.0, 0.0) == 12.0);
}

TEST_CASE("temperature laws") {
  CHECK(TemperatureLaw::constant(0.3)(5.0) == 0.3);
  const auto g = TemperatureLaw::power_law(0.05, 2.0, 2.0);
  CHECK(g(0.0) == 0.05);
  CHECK(std::abs(g(0.1) - 0.07) < 1e-15);
  const auto s = TemperatureLaw::activated(2.0, 0.5);
  CHECK(s(0.0) == 0.0);
  CHECK(std::abs(s(0.25) - 2.0 * std::exp(-2.0)) < 1e-15);
  CHECK_THROWS_AS(TemperatureLaw::power_law(0.0, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(TemperatureLaw::constant(-1.0), DomainError);
  CHECK_THROWS_AS(TemperatureLaw::activated(-1.0, 1.0), DomainError);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(Plasma(0.0), DomainError);
  CHECK_THROWS_AS(drude(-1.0, 0.1), DomainError);
  CHECK_THROWS_AS(LorentzLattice({{1.0, 0.0, 0.1}}), DomainError);
  CHECK_THROWS_AS(LorentzLattice({{1.0, 1.0, 0.0}}), DomainError);
  CHECK_THROWS_AS(LorentzLattice({{-1.0, 1.0, 0.1}}), DomainError);
  CHECK_THROWS_AS(LatticeTerm(0.5), DomainError);
  CHECK_THROWS_AS(Hydrodynamic(1.0, TemperatureLaw::constant(0.1), 0.0), DomainError);
  CHECK_THROWS_AS(FrequencyUnit(0.0), DomainError);
  CHECK_THROWS_AS(Tabulated({{1.0, 0.1}, {1.0, 0.2}}, TailLaw::zero(), TailLaw::zero()), DomainError);
  CHECK_THROWS_AS(Tabulated({{1.0, 0.1}, {2.0, -0.2}}, TailLaw::zero(), TailLaw::zero()), DomainError);
  const FrequencyUnit u(2.0e15);
  CHECK(u.to_reduced(1.0e15) == 0.5);
  CHECK(u.to_physical(0.5) == 1.0e15);
}

TEST_CASE("table continuation to the imaginary axis") {
  const auto t = oracle::drude_table(1.0, 0.1, 1e-4, 1e4, 5000);
  for (double z : {0.1, 1.0, 10.0}) {
    const double exact = 1.0 + 1.0 / (z * (z + 0.1));
    CHECK(std::abs(epsilon_ik_from_table(t, z) - exact) / exact < 1e-5);
  }
  CHECK(std::abs(epsilon_ik_from_table(t, 1.0) - 1.909091) < 1e-6);

  const Tabulated zero({{0.5, 0.0}, {1.0, 0.0}, {2.0, 0.0}}, TailLaw::zero(), TailLaw::zero());
  CHECK(epsilon_ik_from_table(zero, 1.0) == 1.0);

  // single oscillator: eps(i zeta) - 1 -> f / zeta^2
  std::vector<Tabulated::Sample> s;
  for (int i = 0; i < 4000; ++i) {
    const double w = 1e-3 * std::pow(1e6, i / 3999.0);
    s.push_back({w, 0.5 * w / ((1.0 - w * w) * (1.0 - w * w) + 0.25 * w * w)});
  }
  const Tabulated lor(s, TailLaw::dielectric(), TailLaw::drude());
  for (double z : {0.3, 3.0, 30.0, 100.0}) {
    const double chi = oracle::lorentz_imag_axis(1.0, 1.0, 0.5, z) - 1.0;
    CHECK(std::abs(epsilon_ik_from_table(lor, z) - 1.0 - chi) < 1e-4 * chi);
  }

  const Tabulated slow({{1.0, 1.0}, {2.0, 0.5}}, TailLaw::zero(), TailLaw::power(-0.5));
  CHECK_THROWS_AS(epsilon_ik_from_table(slow, 1.0), NonConvergenceError);
}

TEST_CASE("closed forms and tables agree on the imaginary axis") {
  const double g = 0.1;
  const auto t = oracle::drude_table(1.0, g, 1e-4, 1e4, 5000);
  const DielectricModel d = drude(1.0, g);
  for (double z = 0.05; z < 50.0; z *= 1.7) {
    const double exact = eval_imag_axis(d, z);
    CHECK(std::abs(epsilon_ik_from_table(t, z) - exact) / exact < 1e-5);
  }
}

TEST_CASE("table interpolation and tails") {
  const Tabulated t({{1.0, 1.0}, {4.0, 16.0}}, TailLaw::power(-1.0), TailLaw::drude());
  CHECK(std::abs(t.im_eps(2.0) - 4.0) < 1e-14); // log-log: Im ~ w^2 between the samples
  CHECK(std::abs(t.im_eps(0.5) - 2.0) < 1e-14);
  CHECK(std::abs(t.im_eps(8.0) - 2.0) < 1e-14);
  const Tabulated lin({{1.0, 0.0}, {3.0, 1.0}}, TailLaw::zero(), TailLaw::zero());
  CHECK(std::abs(lin.im_eps(2.0) - 0.5) < 1e-15);
  CHECK(lin.im_eps(0.5) == 0.0);
  CHECK(lin.im_eps(5.0) == 0.0);

  CHECK(TailLaw::parse("drude").exponent == -3.0);
  CHECK(TailLaw::parse("zero").kind == TailLaw::Kind::zero);
  CHECK(TailLaw::parse("power:-2.5").exponent == -2.5);
  CHECK(TailLaw::parse("power:-2.5").name() == "power:-2.5");
  CHECK(TailLaw::conductivity().name() == "conductivity");
  CHECK_THROWS_AS(TailLaw::parse("cubic"), DomainError);
}

TEST_CASE("table real part by Kramers-Kronig") {
  const auto t = oracle::drude_table(1.0, 0.1, 1e-4, 1e4, 5000);
  for (double w : {0.3, 1.0, 3.0}) {
    const double exact = oracle::drude_eps(1.0, 0.1, w).real();
    CHECK(std::abs(eval_real_axis(t, w).real() - exact) < 1e-4 * std::max(1.0, std::abs(exact)));
  }
}

TEST_CASE("CSV ingestion reports line numbers") {
  std::istringstream good("omega,im_eps\n0.5,1.0\n1.0,0.5\n\n2.0,0.25\n");
  const auto t = read_table_csv(good, TailLaw::zero(), TailLaw::drude());
  CHECK(t.samples().size() == 3);

  std::string rows = "omega,im_eps\n";
  for (int i = 2; i <= 16; ++i) rows += std::to_string(i) + ",1.0\n";
  rows += "17,-0.1\n";
  std::istringstream negative(rows);
  try {
    read_table_csv(negative, TailLaw::zero(), TailLaw::zero());
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 17);
    CHECK(std::string(e.what()).find("line 17") != std::string::npos);
  }

  std::istringstream empty("");
  CHECK_THROWS_AS(read_table_csv(empty, TailLaw::zero(), TailLaw::zero()), ParseError);
  std::istringstream order("omega,im_eps\n1.0,1.0\n0.5,1.0\n");
  try {
    read_table_csv(order, TailLaw::zero(), TailLaw::zero());
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  std::istringstream header("w,im\n1.0,1.0\n");
  CHECK_THROWS_AS(read_table_csv(header, TailLaw::zero(), TailLaw::zero()), ParseError);
  std::istringstream junk("omega,im_eps\n1.0,abc\n");
  CHECK_THROWS_AS(read_table_csv(junk, TailLaw::zero(), TailLaw::zero()), ParseError);
}

TEST_CASE("reflection factor") {
  CHECK(reflection_factor(3.0) == 2.0);
  CHECK(reflection_factor(std::numeric_limits<double>::infinity()) == 1.0);
  CHECK(std::abs(reflection_factor(1e15) - 1.0) < 1e-14);
  CHECK(reflection_factor(0.0) == -1.0);
  CHECK_THROWS_AS(reflection_factor(1.0), VacuumDegeneracyError);
  CHECK(std::abs(reflection_factor(cplx{0.0, 0.0}) + 1.0) < 1e-15);
  for (double eps : {1.001, 1.5, 3.0, 80.0}) CHECK(reflection_factor(eps) > 1.0);
  CHECK(kernel_argument_from_susceptibility(2.0) == 4.0);
  CHECK(std::isinf(kernel_argument_from_susceptibility(0.0)));
}

TEST_CASE("spatially dispersive permittivity") {
  const Hydrodynamic h(1.0, TemperatureLaw::constant(0.1), 0.7);
  const cplx local = eval_real_axis(drude(1.0, 0.1), 1.0);
  const cplx k0 = eval_nonlocal(h, 1.0, 0.0);
  CHECK(std::abs(k0 - local) <= 1e-14 * std::abs(local));
  CHECK(std::abs(k0 - cplx{0.009901, 0.099010}) < 1e-6);

  const Hydrodynamic screened(1.0, TemperatureLaw::constant(0.1), 1.0, LatticeTerm(12.0));
  CHECK(std::abs(eval_nonlocal(screened, 0.0, 1.0) - 13.0) < 1e-14);
  CHECK(std::abs(eval_nonlocal(h, 1.0, 1e8) - 1.0) < 1e-14);

  // low-frequency form
  const double four_pi_sigma = 1.0 / 0.1;
  CHECK(std::abs(eval_nonlocal_lowfreq(screened, 0.01, 0.0) - cplx{12.0, four_pi_sigma / 0.01}) < 1e-10);
  CHECK(std::abs(eval_nonlocal_lowfreq(screened, 0.0, 2.0) - (12.0 + 1.0 / 4.0)) < 1e-14);
  CHECK(lowfreq_nonlocal_permittivity(12.0, 0.0, 1.0, 1.0, 0.3) == cplx{12.0});

  // k -> 0 approaches Drude with an O(k^2) error
  const double e1 = std::abs(eval_nonlocal(h, 0.8, 1e-2) - eval_nonlocal(h, 0.8, 0.0));
  const double e2 = std::abs(eval_nonlocal(h, 0.8, 5e-3) - eval_nonlocal(h, 0.8, 0.0));
  CHECK(std::abs(std::log2(e1 / e2) - 2.0) < 0.01);
  CHECK_THROWS_AS(eval_nonlocal(h, 1.0, -1.0), DomainError);
}

TEST_CASE("longitudinal projection") {
  Tensor3 iso{};
  for (int i = 0; i < 3; ++i) iso[i][i] = cplx{2.5, 0.3};
  CHECK(std::abs(longitudinal_projection(iso, {0.3, -1.0, 2.0}) - cplx{2.5, 0.3}) < 1e-15);
  Tensor3 d{};
  d[0][0] = 2.0;
  d[1][1] = 4.0;
  d[2][2] = 4.0;
  CHECK(longitudinal_projection(d, {1.0, 0.0, 0.0}) == cplx{2.0});
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(longitudinal_projection(d, {s, s, 0.0}) - 3.0) < 1e-15);
  CHECK_THROWS_AS(longitudinal_projection(d, {0.0, 0.0, 0.0}), DomainError);
}

TEST_CASE("admissible models: Im eps > 0 on the real axis") {
  for (const auto& m : admissible_models())
    for (double w = 1e-3; w < 1e3; w *= 1.15) CHECK(im_eps(m, w) > 0.0);
  const Hydrodynamic h(1.0, TemperatureLaw::constant(0.1), 0.5);
  for (double w = 1e-3; w < 1e3; w *= 1.15) CHECK(eval_nonlocal(h, w, 0.7).imag() > 0.0);
}

TEST_CASE("admissible models: eps(i zeta) real, >= 1 and decreasing") {
  for (const auto& m : admissible_models()) {
    double prev = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 120; ++i) {
      const double z = 1e-3 * std::pow(1e6, i / 119.0);
      const double e = eval_imag_axis(m, z);
      CHECK(e >= 1.0);
      CHECK(e < prev);
      prev = e;
    }
  }
}

TEST_CASE("eps(i zeta) - 1 falls off like 1/zeta^2") {
  std::vector<DielectricModel> models = admissible_models();
  models.push_back(Plasma(1.0));
  for (const auto& m : models) {
    if (std::holds_alternative<Conductivity>(m)) continue; // 4 pi sigma / zeta
    const double a = 1e4 * 1e4 * imag_axis_susceptibility(m, 1e4);
    const double b = 1e5 * 1e5 * imag_axis_susceptibility(m, 1e5);
    CHECK(std::abs(a - b) / b < 1e-3);
  }
}

TEST_CASE("static limits and rational forms") {
  CHECK(static_limit(Plasma(1.0)).order == PoleOrder::second);
  CHECK(static_limit(drude(1.0, 0.1)).order == PoleOrder::first);
  CHECK(static_limit(drude(1.0, 0.0)).order == PoleOrder::second);
  CHECK(static_limit(LorentzLattice({{1.0, 1.0, 0.1}})).value == 2.0);
  const auto r = rational_form(drude(1.0, 0.1, LatticeTerm(std::vector<LorentzOscillator>{{2.0, 3.0, 0.2}})));
  REQUIRE(r);
  const DielectricModel d = drude(1.0, 0.1, LatticeTerm(std::vector<LorentzOscillator>{{2.0, 3.0, 0.2}}));
  for (double w : {0.2, 1.0, 2.9, 7.0}) CHECK(std::abs((*r)(w) - eval_real_axis(d, w)) < 1e-13);
  CHECK_FALSE(rational_form(oracle::drude_table(1.0, 0.1, 0.01, 100.0, 50)).has_value());
}
