#include "richter/kinematics.hpp"

#include <algorithm>

namespace richter {

std::string_view to_string(Coordinates c) {
  switch (c) {
    case Coordinates::JKL:
      return "JKL";
    case Coordinates::JYZ:
      return "JYZ";
    case Coordinates::I123:
      return "I123";
  }
  return "?";
}

std::optional<Coordinates> parse_coordinates(std::string_view name) {
  if (name == "JKL") return Coordinates::JKL;
  if (name == "JYZ") return Coordinates::JYZ;
  if (name == "I123") return Coordinates::I123;
  return std::nullopt;
}

DeformationGradient::DeformationGradient(const Mat3& m) : m_(m) {
  if (!m.all_finite()) throw SingularInput("deformation gradient has non-finite entries");
  const double d = det(m);
  if (!(d > 0.0) || d < kSingularDet) {
    throw SingularInput("deformation gradient determinant " + std::to_string(d) + " is not positive");
  }
}

// -------------------------------------------------------- StretchState

StretchState::StretchState(const Vec3& stretches, const Rotation& frame, const Rotation& rotation)
    : lambda_(stretches), frame_(frame), r_(rotation) {
  for (int i = 0; i < 3; ++i) {
    if (!(lambda_[i] > 0.0) || !std::isfinite(lambda_[i])) {
      throw DomainError("stretch state: principal stretch " + std::to_string(lambda_[i]) +
                        " is not positive");
    }
    log_lambda_[i] = std::log(lambda_[i]);
  }
  const EigenSys eig{lambda_, frame_};
  v_ = eig.compose();
  l_ = eig.compose(log_lambda_);
}

StretchState StretchState::from_principal(const Vec3& stretches, const Rotation& frame,
                                          const Rotation& rotation) {
  return StretchState(stretches, frame, rotation);
}

StretchState StretchState::from_stretch(const SymTensor& v, const Rotation& rotation) {
  const EigenSys eig = sym_eigen(v);
  return StretchState(eig.values, eig.vectors, rotation);
}

StretchState StretchState::from_log(const SymTensor& l, const Rotation& rotation) {
  const EigenSys eig = sym_eigen(l);
  const Vec3 stretches{std::exp(eig.values[0]), std::exp(eig.values[1]), std::exp(eig.values[2])};
  return StretchState(stretches, eig.vectors, rotation);
}

StretchState decompose(const DeformationGradient& f) {
  const LeftPolar polar = polar_left(f.matrix());
  const EigenSys eig = sym_eigen(polar.stretch);
  return StretchState::from_principal(eig.values, eig.vectors, polar.rotation);
}

// ----------------------------------------------------------- invariants

InvariantSet invariants_from_log_stretches(const Vec3& ell) {
  InvariantSet inv;
  inv.I1 = inv.I2 = inv.j = inv.k = inv.l = 0.0;
  inv.I3 = 1.0;
  for (double e : ell) {
    const double lam = std::exp(e);
    inv.I1 += lam;
    inv.I2 += 0.5 * lam * lam;
    inv.I3 *= lam;
    inv.j += e;
    inv.k += e * e;
    inv.l += e * e * e;
  }
  inv.y = inv.z = 0.0;
  const double mean = inv.j / 3.0;
  for (double e : ell) {
    const double d = e - mean;
    inv.y += d * d;
    inv.z += d * d * d;
  }
  return inv;
}

InvariantSet invariants_from_stretches(const Vec3& stretches) {
  InvariantSet inv = invariants_from_log_stretches(
      {std::log(stretches[0]), std::log(stretches[1]), std::log(stretches[2])});
  // Stretch invariants directly from the stretches, not through exp(log).
  inv.I1 = stretches[0] + stretches[1] + stretches[2];
  inv.I2 = 0.5 * (stretches[0] * stretches[0] + stretches[1] * stretches[1] + stretches[2] * stretches[2]);
  inv.I3 = stretches[0] * stretches[1] * stretches[2];
  return inv;
}

InvariantSet invariants(const StretchState& s) { return invariants_from_stretches(s.stretches()); }

std::optional<double> deviatoric_ratio(const InvariantSet& inv) {
  if (inv.y < kShapeFloor) return std::nullopt;
  return inv.z * inv.z / (inv.y * inv.y * inv.y);
}

Coords coordinates_of(const InvariantSet& inv, Coordinates system) {
  switch (system) {
    case Coordinates::JKL:
      return {inv.j, inv.k, inv.l};
    case Coordinates::JYZ:
      return {inv.j, inv.y, inv.z};
    case Coordinates::I123:
      return {inv.I1, inv.I2, inv.I3};
  }
  return {};
}

Vec3 principal_stretches(Coordinates system, const Coords& x) {
  for (double v : x)
    if (!std::isfinite(v)) throw DomainError("principal_stretches: non-finite coordinates");

  if (system == Coordinates::I123) {
    const auto [i1, i2, i3] = x;
    if (!(i3 > 0.0)) throw DomainError("principal_stretches: I3 must be positive");
    const Vec3 roots = real_cubic_roots(i1, 0.5 * (i1 * i1 - 2.0 * i2), i3);
    if (!(roots[2] > 0.0)) throw DomainError("principal_stretches: invariants admit a non-positive stretch");
    return roots;
  }

  double j = x[0];
  double y = x[1];
  double z = x[2];
  if (system == Coordinates::JKL) {
    y = x[1] - j * j / 3.0;
    z = x[2] - j * x[1] + 2.0 * j * j * j / 9.0;
  }
  if (y < 0.0) {
    if (y > -1e-14) {
      y = 0.0;
    } else {
      throw DomainError("principal_stretches: negative shape invariant y");
    }
  }
  Vec3 dev{0.0, 0.0, 0.0};
  if (y > 0.0) {
    dev = real_cubic_roots(0.0, -0.5 * y, z / 3.0);
  } else if (std::abs(z) > 1e-14) {
    throw DomainError("principal_stretches: z must vanish when y does");
  }
  return {std::exp(dev[0] + j / 3.0), std::exp(dev[1] + j / 3.0), std::exp(dev[2] + j / 3.0)};
}

InvariantSet invariants_from_coordinates(Coordinates system, const Coords& x) {
  return invariants_from_stretches(principal_stretches(system, x));
}

Mat3 coordinate_jacobian(Coordinates system, const Vec3& lam) {
  Mat3 jac;
  switch (system) {
    case Coordinates::I123: {
      const double i3 = lam[0] * lam[1] * lam[2];
      for (int i = 0; i < 3; ++i) {
        jac(0, i) = 1.0;
        jac(1, i) = lam[i];
        jac(2, i) = i3 / lam[i];
      }
      break;
    }
    case Coordinates::JKL: {
      for (int i = 0; i < 3; ++i) {
        const double e = std::log(lam[i]);
        jac(0, i) = 1.0 / lam[i];
        jac(1, i) = 2.0 * e / lam[i];
        jac(2, i) = 3.0 * e * e / lam[i];
      }
      break;
    }
    case Coordinates::JYZ: {
      const Vec3 ell{std::log(lam[0]), std::log(lam[1]), std::log(lam[2])};
      const double mean = (ell[0] + ell[1] + ell[2]) / 3.0;
      double y = 0.0;
      for (double e : ell) y += (e - mean) * (e - mean);
      for (int i = 0; i < 3; ++i) {
        const double d = ell[i] - mean;
        jac(0, i) = 1.0 / lam[i];
        jac(1, i) = 2.0 * d / lam[i];
        jac(2, i) = (3.0 * d * d - y) / lam[i];
      }
      break;
    }
  }
  return jac;
}

CauchyGreenInvariants cauchy_green_invariants(const DeformationGradient& f) {
  const Mat3 b = f.matrix() * transpose(f.matrix());
  const SymTensor v = polar_left(f.matrix()).stretch;
  const double tr_v = trace(v);
  return {trace(b), trace(cofactor(b)), det(b), 0.5 * (tr_v * tr_v - contract(v, v))};
}

// ---------------------------------------------------------------- split

SplitState split(const StretchState& s) {
  const InvariantSet inv = invariants(s);
  const double beta = std::exp(inv.j / 3.0);
  return {s.V() * (1.0 / beta), beta, deviator(s.L()), inv.j / 3.0};
}

StretchState rebase(const StretchState& s, double j1) {
  const double factor = std::exp(-j1 / 3.0);
  const Vec3& lam = s.stretches();
  return StretchState::from_principal({lam[0] * factor, lam[1] * factor, lam[2] * factor}, s.frame(), s.R());
}

}  // namespace richter
