#pragma once

// Numerical checks of constitutive laws: work along strain paths, closed-loop
// hyperelasticity, integrability of coefficient laws, volume/shape
// decomposability, the empirical/BE/TE inequalities, and the (y, z) domain.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "richter/constitutive.hpp"

namespace richter::verification {

enum class Status { Pass, Fail, Boundary };

std::string_view to_string(Status s);

/// passed == (residual <= tolerance). Boundary marks strict inequalities that
/// hold only with equality; those are not passes.
struct CheckReport {
  std::string name;
  Status status = Status::Fail;
  bool passed = false;
  double residual = 0.0;
  double tolerance = 0.0;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> witness;  // JSON text of the worst case
};

struct CheckConfig {
  int trials = 20;
  std::uint64_t seed = 20240601;
  int segments = 400;           // Simpson segments per path
  double fd_step = 1e-6;        // first derivatives, scaled by (1 + |x|)
  double mixed_step = 1e-4;     // mixed second derivatives of energies
  double mean_stress_step = 1e-3;
  std::optional<double> tolerance;  // replaces the check's default threshold
};

/// Straight path L(t) = (1 - t) L0 + t L1 in logarithmic-stretch space,
/// integrated with an even number of Simpson segments.
class StrainPath {
 public:
  /// Throws std::invalid_argument unless segments >= 2 and even.
  StrainPath(const SymTensor& start, const SymTensor& end, int segments);

  SymTensor at(double t) const;
  const SymTensor& start() const { return start_; }
  const SymTensor& end() const { return end_; }
  SymTensor increment() const { return end_ - start_; }
  int segments() const { return segments_; }

 private:
  SymTensor start_;
  SymTensor end_;
  int segments_;
};

/// Energy change W(end) - W(start) = integral of e^j tr(sigma dL) along the
/// path, which is minus the work done by the material.
double work_integral(const StressLaw& law, const StrainPath& path, double theta = 0.0);

/// Random triangular loops in L-space with vertices in the ball |L| <= 0.8.
/// Residual: max over loops of |loop work| / max |segment work|.
/// Default tolerance 1e-4.
CheckReport hyperelasticity_check(const StressLaw& law, const CheckConfig& config, double theta = 0.0);

/// Mixed-partial symmetry of the would-be energy gradient
/// (W_I1, W_I2, W_I3) = (I3 c2, I3 c3, c1) of a stretch-basis coefficient law,
/// sampled on I3 in [0.5, 2], I1 in [2.5, 5]. Default tolerance 1e-5.
CheckReport integrability_check(const CoefficientForm& law, const CheckConfig& config);

/// Stretch-basis coefficients c1 = W_I3, c2 = W_I1 / I3, c3 = W_I2 / I3 of an energy.
CoefficientForm stretch_coefficients(const EnergyModel& m);

/// max |W_jy|, |W_jz| / (1 + |W|) over random admissible (j, y, z).
/// Default tolerance 1e-6.
CheckReport decomposability_check(const EnergyModel& m, const CheckConfig& config);

/// The same question asked of the stress: does e^j tr(sigma) / 3 change
/// with y or z at fixed j? Default tolerance 1e-6.
CheckReport mean_stress_check(const EnergyModel& m, const CheckConfig& config);

/// Reports, in order: "empirical_I1", "empirical_I2" (dW/dI > 0 in the
/// invariants of B = F F^T), "baker_ericksen", "tension_extension".
/// Stretches are distinct and drawn from [0.3, 3].
std::vector<CheckReport> inequality_suite(const EnergyModel& m, const CheckConfig& config, double theta = 0.0);

/// 0 <= z^2 / y^3 <= 1/6 on every state (z ~ 0 required when y ~ 0).
CheckReport domain_check(std::span<const StretchState> states);

}  // namespace richter::verification
