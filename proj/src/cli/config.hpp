#pragma once

#include <casimir/lifshitz.hpp>
#include <casimir/models.hpp>

#include <json.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace casimir::cli {

using json = nlohmann::ordered_json;

// CODATA values; the only place physical constants appear.
inline constexpr double kHbar = 1.0545718e-34;        // J s
inline constexpr double kBoltzmann = 1.380649e-23;    // J / K
inline constexpr double kElectronVolt = 1.602176634e-19; // J

struct Grid {
  double from = 0.0;
  double to = 0.0;
  int points = 0;
  bool log = false;
  std::vector<double> values() const;
};

struct Sweep {
  std::string param;
  Grid grid;
};

struct Units {
  double omega_ref = 0.0; // rad/s
  double gap_m = 0.0;
  double temperature_k = 0.0;
  double ttilde() const { return kBoltzmann * temperature_k / (kHbar * omega_ref); }
  // f = (hbar Omega_ref / l^3) Phi
  double pressure_pa(double phi, double gap) const { return kHbar * omega_ref / (gap * gap * gap) * phi; }
};

struct RunConfig {
  std::string command;
  json model;
  Route route = Route::matsubara;
  std::optional<double> ttilde;
  double rtol = 1e-8;
  double delta = kDefaultDelta;
  std::optional<Sweep> sweep;
  std::optional<Units> units;
  std::optional<double> step;
  std::pair<Route, Route> compare{Route::matsubara, Route::realaxis};
  Grid ql{0.01, 20.0, 100, true};
  double wave_number = 0.5;
  std::string output = "-";
  std::string format = "csv";
  unsigned jobs = 1;
};

// Validates the merged configuration document.
RunConfig parse_config(const json& doc);

DielectricModel build_model(const json& model);

// Model keys that a sweep may vary.
bool is_model_parameter(const std::string& name);

} // namespace casimir::cli
