#pragma once

// Isotropic elastic laws: stored-energy models in the three invariant
// coordinate systems, the stresses they induce, direct stress laws in
// coefficient form, and energy transformations.

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "richter/kinematics.hpp"

namespace richter {

struct Parameter {
  std::string name;
  double value = 0.0;
};

/// Stored energy per unit reference volume as a function of three invariant
/// coordinates and a scalar state (temperature, or entropy for the adiabatic
/// law). Immutable once built; copies share the underlying callables.
class EnergyModel {
 public:
  using EnergyFn = std::function<double(const Coords&, double theta)>;
  using GradientFn = std::function<Coords(const Coords&, double theta)>;
  using ExpansionFn = std::function<double(double theta)>;

  /// Default central-difference step factor: h = kDefaultFdStep * (1 + |x|).
  static constexpr double kDefaultFdStep = 1e-6;

  EnergyModel(std::string name, Coordinates coordinates, EnergyFn energy, GradientFn gradient = nullptr);

  const std::string& name() const { return name_; }
  Coordinates coordinates() const { return coordinates_; }
  bool has_analytic_gradient() const { return static_cast<bool>(gradient_); }

  const std::vector<Parameter>& parameters() const { return parameters_; }
  EnergyModel with_parameters(std::vector<Parameter> params) const;

  const std::string& description() const { return description_; }
  EnergyModel with_description(std::string text) const;

  /// True when the energy is declared as W_vol(j) + W_iso(y, z).
  bool declared_decomposable() const { return decomposable_; }
  EnergyModel with_decomposable(bool flag) const;

  double fd_step() const { return fd_step_; }
  EnergyModel with_fd_step(double step) const;

  /// Logarithmic thermal expansion j1 = phi(theta) of the stress-free state.
  const ExpansionFn& thermal_expansion() const { return expansion_; }
  EnergyModel with_thermal_expansion(ExpansionFn phi) const;

  /// Energy at native coordinates.
  double energy(const Coords& x, double theta) const;
  double evaluate(const InvariantSet& inv, double theta) const;
  double energy_at_stretches(const Vec3& stretches, double theta) const;

  /// Partials with respect to the native coordinates; analytic when supplied,
  /// otherwise central differences.
  Coords gradient(const Coords& x, double theta) const;
  Coords gradient(const InvariantSet& inv, double theta) const;

  /// dW / d lambda_i.
  Vec3 stretch_gradient(const Vec3& stretches, double theta) const;

 private:
  std::string name_;
  Coordinates coordinates_;
  EnergyFn energy_;
  GradientFn gradient_;
  std::vector<Parameter> parameters_;
  std::string description_;
  ExpansionFn expansion_;
  double fd_step_ = kDefaultFdStep;
  bool decomposable_ = false;
};

/// Central-difference gradient of fn at x with h_a = step * (1 + |x_a|).
/// Falls back to a one-sided second-order stencil when one side is not finite.
Coords central_gradient(const EnergyModel::EnergyFn& fn, const Coords& x, double theta, double step);

/// The same physical energy written in another coordinate system.
/// Gradients are carried over by the chain rule through the principal
/// stretches when the source model has analytic partials.
EnergyModel convert_model(const EnergyModel& m, Coordinates target);

/// Cauchy stress with its Kirchhoff, mean and deviatoric parts.
struct StressResult {
  SymTensor sigma;
  SymTensor kirchhoff;  // sigma * exp(j)
  double mean_stress = 0.0;
  SymTensor deviatoric;

  static StressResult from_cauchy(const SymTensor& sigma, double j);
};

/// sigma e^j = W_j id + 2 W_k L + 3 W_l L^2.
StressResult stress_from_energy_jkl(const EnergyModel& m, const StretchState& s, double theta);
/// e^j tr(sigma) / 3 = W_j and e^j dev sigma = -y W_z id + 2 W_y dev L + 3 W_z (dev L)^2.
StressResult stress_from_energy_jyz(const EnergyModel& m, const StretchState& s, double theta);
/// sigma = W_I3 id + (W_I1 / I3) V + (W_I2 / I3) V^2.
StressResult stress_from_energy_I(const EnergyModel& m, const StretchState& s, double theta);
/// Dispatches on m.coordinates().
StressResult stress_from_energy(const EnergyModel& m, const StretchState& s, double theta);

/// sigma = lambda tr(V - id) id + 2 mu (V - id).
StressResult stress_hooke(double lambda, double mu, const StretchState& s);
/// sigma e^j = lambda j id + 2 mu L.
StressResult stress_hencky(double lambda, double mu, const StretchState& s);

// ---------------------------------------------------------- stress laws

/// Tensor basis of a coefficient-form law.
///   Log     : sigma = c1(j,k,l) id + c2 L + c3 L^2
///   Stretch : sigma = c1(I1,I2,I3) id + c2 V + c3 V^2
enum class Basis { Log, Stretch };

using CoefficientFn = std::function<double(const Coords&, double theta)>;

struct CoefficientForm {
  Basis basis = Basis::Log;
  CoefficientFn c1;
  CoefficientFn c2;
  CoefficientFn c3;
  std::string name = "CoefficientForm";
};

struct FromEnergy {
  EnergyModel model;
};

struct HookeLinear {
  double lambda = 0.0;
  double mu = 0.0;
};

struct HenckyLog {
  double lambda = 0.0;
  double mu = 0.0;
};

using StressLaw = std::variant<FromEnergy, CoefficientForm, HookeLinear, HenckyLog>;

StressResult evaluate(const StressLaw& law, const StretchState& s, double theta);
std::string law_name(const StressLaw& law);

// ------------------------------------------------------- representation

/// sigma = f1 id + f2 L + f3 L^2 with the minimal number of terms:
/// order 1, 2 or 3 = number of distinct eigenvalues of L.
struct Representation {
  double f1 = 0.0;
  double f2 = 0.0;
  double f3 = 0.0;
  int order = 1;
};

/// Commutator tolerance, relative to |sigma| |L|.
inline constexpr double kCoaxialTolerance = 1e-8;

/// Throws NotCoaxial if sigma and L do not commute, or if sigma is not a
/// scalar on a repeated eigenspace of L.
Representation representation_solve(const SymTensor& sigma, const SymTensor& l);

// ------------------------------------------------------ transformations

/// W(V) = det V * m(V^-1), in the coordinates of m.
EnergyModel shield_transform(const EnergyModel& m);

/// W'(j', y, z) = exp(-j1) W(j' + j1, y, z). Requires JYZ coordinates.
EnergyModel rebase_energy(const EnergyModel& m, double j1);

/// Logarithmic volume strain j1 = phi(theta1) of the stress-free state at a
/// new reference temperature. Throws std::invalid_argument if m has no
/// thermal expansion law.
double reference_shift(const EnergyModel& m, double theta1);

}  // namespace richter
