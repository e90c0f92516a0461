#pragma once
// Dielectric response models in reduced units (hbar = k_B = 1, every
// frequency and temperature a multiple of a reference frequency).

#include <casimir/errors.hpp>
#include <casimir/polynomial.hpp>

#include <array>
#include <complex>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace casimir {

using cplx = std::complex<double>;

// Shift used for strictly real models on the real axis (omega -> omega + i delta).
inline constexpr double kDefaultDelta = 1e-9;

class FrequencyUnit {
public:
  explicit FrequencyUnit(double omega_ref);

  double omega_ref() const noexcept { return omega_ref_; }
  double to_reduced(double omega) const noexcept { return omega / omega_ref_; }
  double to_physical(double reduced) const noexcept { return reduced * omega_ref_; }

private:
  double omega_ref_;
};

// gamma(T), sigma(T) and friends. Evaluation at T = 0 is always defined.
class TemperatureLaw {
public:
  struct Constant {
    double value;
  };
  // residual + amplitude * T^exponent
  struct PowerLawPlusResidual {
    double residual;
    double amplitude;
    double exponent;
  };
  // prefactor * exp(-gap / T)
  struct ActivatedConductivity {
    double prefactor;
    double gap;
  };
  using Form = std::variant<Constant, PowerLawPlusResidual, ActivatedConductivity>;

  TemperatureLaw() : TemperatureLaw(Constant{0.0}) {}
  TemperatureLaw(Form form);

  static TemperatureLaw constant(double c) { return TemperatureLaw(Constant{c}); }
  static TemperatureLaw power_law(double residual, double amplitude, double exponent) {
    return TemperatureLaw(PowerLawPlusResidual{residual, amplitude, exponent});
  }
  static TemperatureLaw activated(double prefactor, double gap) {
    return TemperatureLaw(ActivatedConductivity{prefactor, gap});
  }

  double operator()(double temperature) const;
  const Form& form() const noexcept { return form_; }

private:
  Form form_;
};

struct LorentzOscillator {
  double strength;  // f_j
  double resonance; // omega_j
  double width;     // gamma_j
};

// Background (lattice) polarization: a constant, or 1 + sum of Lorentz terms.
class LatticeTerm {
public:
  LatticeTerm() : LatticeTerm(1.0) {}
  LatticeTerm(double constant);
  LatticeTerm(std::vector<LorentzOscillator> oscillators);

  bool is_constant() const noexcept { return std::holds_alternative<double>(form_); }
  const std::vector<LorentzOscillator>& oscillators() const;

  cplx at_real(cplx omega) const;
  // epsilon_L(i zeta) - 1, computed without cancellation.
  double susceptibility_imag(double zeta) const;
  double at_imag(double zeta) const { return 1.0 + susceptibility_imag(zeta); }
  double static_value() const { return at_imag(0.0); }
  double high_frequency_value() const;
  Rational rational() const;

private:
  std::variant<double, std::vector<LorentzOscillator>> form_;
};

struct Plasma {
  double plasma_frequency;
  explicit Plasma(double wp);
};

struct Drude {
  double plasma_frequency;
  TemperatureLaw damping;
  LatticeTerm lattice;
  Drude(double wp, TemperatureLaw gamma, LatticeTerm lattice = {});
};

// epsilon_L(omega) + i 4 pi sigma(T) / omega
struct Conductivity {
  LatticeTerm lattice;
  TemperatureLaw conductivity;
  Conductivity(LatticeTerm lattice, TemperatureLaw sigma);
};

struct LorentzLattice {
  std::vector<LorentzOscillator> oscillators;
  explicit LorentzLattice(std::vector<LorentzOscillator> osc = {});
};

// Im epsilon beyond the sampled range: zero, or a power law continuing the
// edge sample, Im(w) = Im(w_edge) * (w / w_edge)^exponent.
struct TailLaw {
  enum class Kind { zero, power };
  Kind kind = Kind::zero;
  double exponent = 0.0;

  static TailLaw zero() { return {}; }
  static TailLaw power(double exponent) { return {Kind::power, exponent}; }
  static TailLaw drude() { return power(-3.0); }        // high-frequency free carriers
  static TailLaw conductivity() { return power(-1.0); } // dc conduction
  static TailLaw dielectric() { return power(1.0); }    // insulator below the gap

  // "zero", "drude", "conductivity", "dielectric" or "power:<exponent>".
  static TailLaw parse(const std::string& name);
  std::string name() const;
};

class Tabulated {
public:
  struct Sample {
    double omega;
    double im_eps;
  };

  Tabulated(std::vector<Sample> samples, TailLaw low, TailLaw high);

  const std::vector<Sample>& samples() const noexcept { return samples_; }
  const TailLaw& low_tail() const noexcept { return low_; }
  const TailLaw& high_tail() const noexcept { return high_; }

  double im_eps(double omega) const;
  std::vector<double> grid() const;

private:
  std::vector<Sample> samples_;
  TailLaw low_;
  TailLaw high_;
};

// epsilon_L(omega) - wp^2 / (omega (omega + i gamma) - k^2 R_D^2 wp^2)
struct Hydrodynamic {
  double plasma_frequency;
  TemperatureLaw damping;
  double debye_radius;
  LatticeTerm lattice;
  Hydrodynamic(double wp, TemperatureLaw gamma, double rd, LatticeTerm lattice = {});
};

using DielectricModel = std::variant<Plasma, Drude, Conductivity, LorentzLattice, Tabulated, Hydrodynamic>;

enum class PoleOrder { regular, first, second };
std::string to_string(PoleOrder p);

class PoleAtZeroError : public SingularityError {
public:
  explicit PoleAtZeroError(PoleOrder order)
      : SingularityError("epsilon has a pole at zero frequency"), order_(order) {}
  PoleOrder order() const noexcept { return order_; }

private:
  PoleOrder order_;
};

// omega -> 0 structure of epsilon at a given temperature. For regular
// models `value` holds epsilon(0).
struct StaticLimit {
  PoleOrder order = PoleOrder::regular;
  double value = 1.0;
};

std::string variant_name(const DielectricModel& model);

cplx eval_real_axis(const DielectricModel& model, double omega, double temperature = 0.0,
                    double delta = kDefaultDelta);

double eval_imag_axis(const DielectricModel& model, double zeta, double temperature = 0.0);

// epsilon(i zeta) - 1 without the cancellation of eval_imag_axis(..) - 1.
double imag_axis_susceptibility(const DielectricModel& model, double zeta, double temperature = 0.0);

double epsilon_ik_from_table(const Tabulated& table, double zeta);

// Re eps(omega) - 1 of a table, by Kramers-Kronig over the table and its tails.
double table_real_susceptibility(const Tabulated& table, double omega);

// Im epsilon on the real axis, never regularized (Plasma gives 0).
double im_eps(const DielectricModel& model, double omega, double temperature = 0.0);

StaticLimit static_limit(const DielectricModel& model, double temperature = 0.0);

// epsilon(i infinity); 1 unless the lattice is a bare constant.
double high_frequency_limit(const DielectricModel& model);

// The scale beyond which epsilon approaches its high-frequency value.
double characteristic_frequency(const DielectricModel& model, double temperature = 0.0);

// Frequencies where Im epsilon changes character (widths, resonances, table
// edges); used as quadrature breakpoints.
std::vector<double> spectral_features(const DielectricModel& model, double temperature = 0.0);

// Closed form as a rational function of complex omega; empty for tables.
// Hydrodynamic models need the wave number.
std::optional<Rational> rational_form(const DielectricModel& model, double temperature = 0.0,
                                      double wave_number = 0.0);

// (eps + 1)/(eps - 1)
double reflection_factor(double eps);
cplx reflection_factor(cplx eps);

// r^2 expressed through chi = eps - 1; +inf when chi == 0.
double kernel_argument_from_susceptibility(double chi);

cplx eval_nonlocal(const Hydrodynamic& model, double omega, double k, double temperature = 0.0);
cplx eval_nonlocal_lowfreq(const Hydrodynamic& model, double omega, double k, double temperature = 0.0);

// eps_static + i 4 pi sigma / (omega + i 4 pi sigma k^2 R_D^2)
cplx lowfreq_nonlocal_permittivity(double eps_static, double four_pi_sigma, double k, double rd,
                                   double omega);

using Tensor3 = std::array<std::array<cplx, 3>, 3>;
cplx longitudinal_projection(const Tensor3& eps, const std::array<double, 3>& k);

// CSV with header `omega,im_eps`; errors carry the 1-based line number.
Tabulated read_table_csv(std::istream& in, TailLaw low, TailLaw high);
Tabulated read_table_csv(const std::string& path, TailLaw low, TailLaw high);

} // namespace casimir
