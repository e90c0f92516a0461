#pragma once
// Physical admissibility audit of a dielectric model: positivity of Im eps,
// Kramers-Kronig consistency, the f-sum rule, pole structure at omega = 0
// and zeros of eps in the upper half-plane.

#include <casimir/models.hpp>
#include <casimir/spectral.hpp>

#include <json.hpp>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace casimir {

std::vector<double> log_grid(double lo, double hi, std::size_t points);

struct PositivityCheck {
  bool pass = true;
  double worst_omega = 0.0;
  double worst_im_eps = 0.0;
  bool identically_zero = false;
};

PositivityCheck check_im_positivity(const DielectricModel& model, std::span<const double> grid,
                                    double temperature = 0.0);

// eps_inf + (2/pi) PV int_band x Im eps(x) / (x^2 - w^2) dx
double kk_reconstruct_re(const DielectricModel& model, double omega, spectral::Band band = {},
                         double temperature = 0.0);

struct SumRule {
  bool applicable = true;
  double integral = 0.0;           // int_0^inf w Im eps dw
  std::optional<double> reference; // (pi/2)(wp^2 + sum f_j) when the model declares wp
  std::string note;
};

SumRule f_sum_rule(const DielectricModel& model, double temperature = 0.0);

// Hydrodynamic models are classified at the given wave number.
PoleOrder pole_order_at_zero(const DielectricModel& model, double temperature = 0.0, double wave_number = 0.0);

// lim_{w->0} w^2 eps(w): -wp^2 for a second-order pole, 0 otherwise.
double limit_omega2_epsilon(const DielectricModel& model, double temperature = 0.0);

struct AuditOptions {
  double temperature = 1.0;
  double wave_number = 0.5; // hydrodynamic models only
  double kk_band_lo = 0.1;  // in units of the characteristic frequency
  double kk_band_hi = 10.0;
  std::size_t kk_points = 41;
  double kk_tolerance = 1e-4;
  double sum_rule_tolerance = 1e-3;
};

struct AdmissibilityReport {
  std::string model;
  double temperature = 0.0;
  PositivityCheck im_positivity;
  std::optional<double> kk_residual; // max |Re_KK - Re eps| / |eps| over the band
  std::optional<double> sum_rule_ratio;
  PoleOrder pole_order = PoleOrder::regular;
  std::string uhp_zeros; // "none", "found" or "unchecked"
  bool admissible = true;
  std::vector<std::string> reasons;
  std::vector<std::string> notes;
};

AdmissibilityReport audit(const DielectricModel& model, AuditOptions opts = {});

nlohmann::ordered_json to_json(const AdmissibilityReport& report);

} // namespace casimir
