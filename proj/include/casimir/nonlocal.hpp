#pragma once
// Spatial dispersion: locality criterion, Debye screening and the order of
// the T -> 0 and omega -> 0 limits with and without dispersion.

#include <casimir/models.hpp>

#include <json.hpp>

#include <string>

namespace casimir {

struct CorrelationScales {
  double mean_velocity = 0.0;
  double damping = 0.0;
  double omega = 0.0;
  double mean_free_path = 0.0;     // v / gamma (inf when gamma = 0)
  double omega_length = 0.0;       // v / omega (inf when omega = 0)
  double correlation_radius = 0.0; // min of the two

  static CorrelationScales make(double mean_velocity, double damping, double omega);
};

struct LocalityResult {
  bool local = true;
  double margin = 0.0; // k r_cor; local iff < 1
};

LocalityResult locality_check(const CorrelationScales& scales, double k);

// (T / (m wp^2))^(1/2); zero at T = 0.
double debye_radius(double temperature, double mass, double wp);

// Hydrodynamic model with R_D from the carrier temperature and mass.
Hydrodynamic make_hydrodynamic(double wp, TemperatureLaw gamma, double temperature, double mass,
                               LatticeTerm lattice = {});

struct CommutationReport {
  std::string family;
  double k = 0.0;
  double t_then_omega = 0.0; // lim_{w->0} lim_{T->0} |eps|; +inf when divergent
  double omega_then_t = 0.0; // lim_{T->0} lim_{w->0} |eps|; +inf when divergent
  bool commute = false;
};

// eps_L(0) + i 4 pi sigma(T) / omega
CommutationReport limit_commutation_check(double eps_static, const TemperatureLaw& sigma);

// eps_L(0) + i 4 pi sigma(T) / (omega + i 4 pi sigma(T) k^2 R_D(T)^2), R_D(T) = rd_unit T^(-1/2)
CommutationReport limit_commutation_check(double eps_static, const TemperatureLaw& sigma, double k, double rd_unit);

nlohmann::ordered_json to_json(const CorrelationScales& scales, const LocalityResult& result, double k);
nlohmann::ordered_json to_json(const CommutationReport& report);

} // namespace casimir
