#pragma once

// Strain measures built on the left polar decomposition F = V R: the
// logarithmic stretch L = log V, the invariant sets of V, L and dev L, the
// multiplicative volume/shape split, and reference-state rebasing.

#include <optional>
#include <string_view>

#include "richter/tensor3.hpp"

namespace richter {

/// Invariant coordinate systems an energy can be written in.
///   JKL  : j = tr L, k = tr L^2, l = tr L^3
///   JYZ  : j, y = tr (dev L)^2, z = tr (dev L)^3
///   I123 : I1 = tr V, I2 = tr(V^2) / 2, I3 = det V
enum class Coordinates { JKL, JYZ, I123 };

using Coords = std::array<double, 3>;

std::string_view to_string(Coordinates c);
std::optional<Coordinates> parse_coordinates(std::string_view name);

/// Deformation gradient with positive determinant.
class DeformationGradient {
 public:
  /// Throws SingularInput if det m <= 0, |det m| < kSingularDet, or entries are not finite.
  explicit DeformationGradient(const Mat3& m);

  const Mat3& matrix() const { return m_; }
  double determinant() const { return det(m_); }

 private:
  Mat3 m_;
};

/// Stretch V, logarithmic stretch L = log V and rotation R of one material point.
/// Principal stretches are kept with their frame so invariants and matrix
/// functions are evaluated on eigenvalues.
class StretchState {
 public:
  /// V = frame diag(stretches) frame^T. Throws DomainError for non-positive stretches.
  static StretchState from_principal(const Vec3& stretches, const Rotation& frame = {},
                                     const Rotation& rotation = {});
  /// Throws DomainError unless v is positive definite.
  static StretchState from_stretch(const SymTensor& v, const Rotation& rotation = {});
  static StretchState from_log(const SymTensor& l, const Rotation& rotation = {});

  const SymTensor& V() const { return v_; }
  const SymTensor& L() const { return l_; }
  const Rotation& R() const { return r_; }
  /// Eigenvectors of V (columns), matching stretches().
  const Rotation& frame() const { return frame_; }
  const Vec3& stretches() const { return lambda_; }
  const Vec3& log_stretches() const { return log_lambda_; }

  /// V R.
  Mat3 deformation() const { return v_ * r_.matrix(); }

 private:
  StretchState(const Vec3& stretches, const Rotation& frame, const Rotation& rotation);

  Vec3 lambda_{1.0, 1.0, 1.0};
  Vec3 log_lambda_{};
  Rotation frame_;
  Rotation r_;
  SymTensor v_ = SymTensor::identity();
  SymTensor l_;
};

/// V = sqrt(F F^T), R = V^-1 F, L = log V.
StretchState decompose(const DeformationGradient& f);

/// Invariants of V, L and dev L.
struct InvariantSet {
  double I1 = 3.0;
  double I2 = 1.5;
  double I3 = 1.0;
  double j = 0.0;
  double k = 0.0;
  double l = 0.0;
  double y = 0.0;
  double z = 0.0;
};

InvariantSet invariants(const StretchState& s);
InvariantSet invariants_from_stretches(const Vec3& stretches);
InvariantSet invariants_from_log_stretches(const Vec3& log_stretches);

/// Below this y the shape change is treated as zero and z^2/y^3 is undefined.
inline constexpr double kShapeFloor = 1e-12;

/// z^2 / y^3, or nullopt when y < kShapeFloor.
std::optional<double> deviatoric_ratio(const InvariantSet& inv);

Coords coordinates_of(const InvariantSet& inv, Coordinates system);

/// Principal stretches (descending) that realise the given coordinates.
/// Throws DomainError if no real positive stretches exist.
Vec3 principal_stretches(Coordinates system, const Coords& x);

InvariantSet invariants_from_coordinates(Coordinates system, const Coords& x);

/// Jacobian d(coordinates)/d(stretches): row a is the gradient of coordinate a
/// with respect to the three principal stretches.
Mat3 coordinate_jacobian(Coordinates system, const Vec3& stretches);

/// Invariants of B = F F^T, plus tr Cof V, which is what pairs with tr B in
/// (tr V)^2 = tr B + 2 tr Cof V.
struct CauchyGreenInvariants {
  double iB1 = 3.0;  // tr B
  double iB2 = 3.0;  // tr Cof B
  double iB3 = 1.0;  // det B
  double cof_v_trace = 3.0;
};

CauchyGreenInvariants cauchy_green_invariants(const DeformationGradient& f);

/// V = Vg (beta id) with det Vg = 1, and L = Lg + (j / 3) id with Lg = dev L.
struct SplitState {
  SymTensor Vg;
  double beta = 1.0;
  SymTensor Lg;
  double Lv_scalar = 0.0;
};

SplitState split(const StretchState& s);

/// State measured from a reference with volumetric log-strain j1:
/// V' = exp(-j1 / 3) V, L' = L - (j1 / 3) id.
StretchState rebase(const StretchState& s, double j1);

}  // namespace richter
