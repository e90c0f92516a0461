#include "oracles.hpp"

#include <casimir/admissibility.hpp>

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace casimir;

namespace {

Drude drude(double wp, double g) { return Drude(wp, TemperatureLaw::constant(g)); }

bool has_reason(const AdmissibilityReport& r, const std::string& s) {
  return std::find(r.reasons.begin(), r.reasons.end(), s) != r.reasons.end();
}

} // namespace

TEST_CASE("log grid") {
  const auto g = log_grid(0.1, 10.0, 41);
  REQUIRE(g.size() == 41);
  CHECK(g.front() == 0.1);
  CHECK(g.back() == 10.0);
  CHECK(std::abs(g[20] - 1.0) < 1e-14);
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
}

TEST_CASE("plasma model is rejected for exactly three reasons") {
  const auto r = audit(Plasma(1.0));
  CHECK_FALSE(r.admissible);
  CHECK(r.reasons.size() == 3);
  CHECK(has_reason(r, "Im eps identically zero"));
  CHECK(has_reason(r, "second-order pole at omega = 0"));
  CHECK(has_reason(r, "sum rule violated"));
  CHECK(r.pole_order == PoleOrder::second);
  CHECK(r.im_positivity.identically_zero);
  CHECK(limit_omega2_epsilon(Plasma(1.0)) == -1.0);
  CHECK(limit_omega2_epsilon(Plasma(2.0)) == -4.0);
  CHECK(limit_omega2_epsilon(drude(1.0, 0.1)) == 0.0);
}

TEST_CASE("Drude with damping is admissible") {
  for (double g : {0.01, 0.1, 1.0}) {
    const auto r = audit(drude(1.0, g));
    CHECK(r.admissible);
    CHECK(r.reasons.empty());
    CHECK(r.pole_order == PoleOrder::first);
    CHECK(r.uhp_zeros == "none");
    REQUIRE(r.kk_residual);
    CHECK(*r.kk_residual < 1e-4);
  }
}

TEST_CASE("f-sum rule for Drude does not depend on the damping") {
  for (double g : {0.01, 0.03, 0.1, 0.3, 1.0}) {
    const auto s = f_sum_rule(drude(1.0, g));
    REQUIRE(s.reference);
    CHECK(*s.reference == doctest::Approx(oracle::pi / 2.0).epsilon(1e-15));
    CHECK(std::abs(s.integral - oracle::pi / 2.0) / (oracle::pi / 2.0) < 1e-6);
  }
  const auto w2 = f_sum_rule(drude(2.0, 0.3));
  CHECK(std::abs(w2.integral - 2.0 * oracle::pi) / (2.0 * oracle::pi) < 1e-6);

  const auto lor = f_sum_rule(LorentzLattice({{1.5, 1.0, 0.1}, {0.5, 3.0, 0.3}}));
  REQUIRE(lor.reference);
  CHECK(std::abs(lor.integral - oracle::pi) / oracle::pi < 1e-6);
}

TEST_CASE("Kramers-Kronig reconstruction of Drude") {
  const DielectricModel d = drude(1.0, 0.1);
  for (double w : log_grid(0.1, 10.0, 41)) {
    const auto exact = oracle::drude_eps(1.0, 0.1, w);
    CHECK(std::abs(kk_reconstruct_re(d, w) - exact.real()) <= 1e-4 * std::abs(exact));
  }
}

TEST_CASE("Kramers-Kronig reconstruction of a lattice with a constant background") {
  const DielectricModel m = Drude(1.0, TemperatureLaw::constant(0.2), LatticeTerm(5.0));
  for (double w : {0.2, 1.0, 4.0}) {
    const double exact = eval_real_axis(m, w).real();
    CHECK(std::abs(kk_reconstruct_re(m, w) - exact) < 1e-6 * std::max(1.0, std::abs(exact)));
  }
}

TEST_CASE("positivity detects a vanishing imaginary part") {
  const Tabulated gain({{0.5, 0.1}, {1.0, 0.0}, {1.5, 0.1}}, TailLaw::zero(), TailLaw::zero());
  const auto g = log_grid(0.4, 2.0, 50);
  const auto p = check_im_positivity(gain, g);
  CHECK_FALSE(p.pass);
  CHECK_FALSE(p.identically_zero);
  CHECK(p.worst_im_eps <= 0.0);
  const auto ok = check_im_positivity(drude(1.0, 0.1), g);
  CHECK(ok.pass);
}

TEST_CASE("conductivity model: sum rule not applicable") {
  const DielectricModel c = Conductivity(LatticeTerm(12.0), TemperatureLaw::constant(0.5));
  const auto s = f_sum_rule(c);
  CHECK_FALSE(s.applicable);
  CHECK_FALSE(s.note.empty());
  const auto r = audit(c);
  CHECK(r.admissible);
  CHECK(r.pole_order == PoleOrder::first);
  CHECK_FALSE(r.notes.empty());
}

TEST_CASE("pole classification") {
  CHECK(pole_order_at_zero(Plasma(1.0)) == PoleOrder::second);
  CHECK(pole_order_at_zero(drude(1.0, 0.1)) == PoleOrder::first);
  CHECK(pole_order_at_zero(LorentzLattice({{1.0, 1.0, 0.1}})) == PoleOrder::regular);
  const Hydrodynamic h(1.0, TemperatureLaw::constant(0.1), 0.5);
  CHECK(pole_order_at_zero(h, 0.0, 0.5) == PoleOrder::regular);
  CHECK(pole_order_at_zero(h, 0.0, 0.0) == PoleOrder::first);
  // activated conductivity freezes out at T = 0
  const DielectricModel c = Conductivity(LatticeTerm(12.0), TemperatureLaw::activated(1.0, 0.5));
  CHECK(pole_order_at_zero(c, 0.0) == PoleOrder::regular);
  CHECK(pole_order_at_zero(c, 0.1) == PoleOrder::first);
}

TEST_CASE("audit report serializes with stable keys") {
  const auto j = to_json(audit(Plasma(1.0)));
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  const std::vector<std::string> expected{"model",     "temperature", "im_positivity", "kk_residual",
                                          "sum_rule_ratio", "pole_order", "uhp_zeros", "verdict",
                                          "reasons",   "notes"};
  CHECK(keys == expected);
  CHECK(j["verdict"] == "inadmissible");
  CHECK(j["reasons"].size() == 3);
  CHECK(to_json(audit(drude(1.0, 0.1)))["verdict"] == "admissible");
}

TEST_CASE("random Lorentz lattices pass the audit") {
  oracle::Generator gen;
  for (int i = 0; i < 10; ++i) {
    std::vector<LorentzOscillator> osc;
    const int n = 1 + i % 3;
    for (int j = 0; j < n; ++j)
      osc.push_back({gen.log_uniform(0.1, 5.0), gen.log_uniform(0.2, 5.0), gen.log_uniform(0.02, 1.0)});
    const auto r = audit(LorentzLattice(osc));
    CHECK(r.admissible);
    CHECK(r.pole_order == PoleOrder::regular);
  }
}
