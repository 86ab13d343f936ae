#include "richter/constitutive.hpp"

#include <algorithm>
#include <sstream>

namespace richter {

// ---------------------------------------------------------- EnergyModel

EnergyModel::EnergyModel(std::string name, Coordinates coordinates, EnergyFn energy, GradientFn gradient)
    : name_(std::move(name)), coordinates_(coordinates), energy_(std::move(energy)), gradient_(std::move(gradient)) {
  if (!energy_) throw std::invalid_argument("EnergyModel '" + name_ + "' needs an energy function");
}

EnergyModel EnergyModel::with_parameters(std::vector<Parameter> params) const {
  EnergyModel m = *this;
  m.parameters_ = std::move(params);
  return m;
}

EnergyModel EnergyModel::with_description(std::string text) const {
  EnergyModel m = *this;
  m.description_ = std::move(text);
  return m;
}

EnergyModel EnergyModel::with_decomposable(bool flag) const {
  EnergyModel m = *this;
  m.decomposable_ = flag;
  return m;
}

EnergyModel EnergyModel::with_fd_step(double step) const {
  if (!(step > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
  EnergyModel m = *this;
  m.fd_step_ = step;
  return m;
}

EnergyModel EnergyModel::with_thermal_expansion(ExpansionFn phi) const {
  EnergyModel m = *this;
  m.expansion_ = std::move(phi);
  return m;
}

double EnergyModel::energy(const Coords& x, double theta) const { return energy_(x, theta); }

double EnergyModel::evaluate(const InvariantSet& inv, double theta) const {
  return energy_(coordinates_of(inv, coordinates_), theta);
}

double EnergyModel::energy_at_stretches(const Vec3& stretches, double theta) const {
  return evaluate(invariants_from_stretches(stretches), theta);
}

Coords EnergyModel::gradient(const Coords& x, double theta) const {
  if (gradient_) return gradient_(x, theta);
  return central_gradient(energy_, x, theta, fd_step_);
}

Coords EnergyModel::gradient(const InvariantSet& inv, double theta) const {
  return gradient(coordinates_of(inv, coordinates_), theta);
}

Vec3 EnergyModel::stretch_gradient(const Vec3& stretches, double theta) const {
  const Coords g = gradient(coordinates_of(invariants_from_stretches(stretches), coordinates_), theta);
  return transpose(coordinate_jacobian(coordinates_, stretches)) * g;
}

namespace {

double safe_eval(const EnergyModel::EnergyFn& fn, const Coords& x, double theta) {
  try {
    return fn(x, theta);
  } catch (const DomainError&) {
    return std::nan("");
  }
}

}  // namespace

Coords central_gradient(const EnergyModel::EnergyFn& fn, const Coords& x, double theta, double step) {
  Coords g{};
  for (int a = 0; a < 3; ++a) {
    const double h = step * (1.0 + std::abs(x[a]));
    auto at = [&](double offset) {
      Coords p = x;
      p[a] += offset;
      return safe_eval(fn, p, theta);
    };
    const double fp = at(h);
    const double fm = at(-h);
    if (std::isfinite(fp) && std::isfinite(fm)) {
      g[a] = (fp - fm) / (2.0 * h);
    } else if (std::isfinite(fm)) {
      g[a] = (3.0 * at(0.0) - 4.0 * fm + at(-2.0 * h)) / (2.0 * h);
    } else {
      g[a] = (-3.0 * at(0.0) + 4.0 * fp - at(2.0 * h)) / (2.0 * h);
    }
  }
  return g;
}

EnergyModel convert_model(const EnergyModel& m, Coordinates target) {
  if (m.coordinates() == target) return m;

  EnergyModel::EnergyFn energy = [m, target](const Coords& x, double theta) {
    return m.energy_at_stretches(principal_stretches(target, x), theta);
  };
  EnergyModel::GradientFn gradient;
  if (m.has_analytic_gradient()) {
    const double step = m.fd_step();
    gradient = [m, target, energy, step](const Coords& x, double theta) -> Coords {
      const Vec3 lam = principal_stretches(target, x);
      const Mat3 jac = coordinate_jacobian(target, lam);
      double row_scale = 1.0;
      for (int a = 0; a < 3; ++a) {
        row_scale *= std::sqrt(jac(a, 0) * jac(a, 0) + jac(a, 1) * jac(a, 1) + jac(a, 2) * jac(a, 2));
      }
      // Coinciding stretches make the stretch-to-coordinate map singular.
      if (std::abs(det(jac)) <= 1e-8 * row_scale) return central_gradient(energy, x, theta, step);
      return inverse(transpose(jac)) * m.stretch_gradient(lam, theta);
    };
  }
  return EnergyModel(m.name(), target, std::move(energy), std::move(gradient))
      .with_parameters(m.parameters())
      .with_description(m.description())
      .with_decomposable(m.declared_decomposable())
      .with_fd_step(m.fd_step())
      .with_thermal_expansion(m.thermal_expansion());
}

// ------------------------------------------------------------- stresses

StressResult StressResult::from_cauchy(const SymTensor& sigma, double j) {
  return {sigma, sigma * std::exp(j), trace(sigma) / 3.0, deviator(sigma)};
}

namespace {

void require_coordinates(const EnergyModel& m, Coordinates expected, const char* where) {
  if (m.coordinates() != expected) {
    throw std::invalid_argument(std::string(where) + ": model '" + m.name() + "' is declared in " +
                                std::string(to_string(m.coordinates())) + " coordinates, expected " +
                                std::string(to_string(expected)));
  }
}

Coords checked_gradient(const EnergyModel& m, const InvariantSet& inv, double theta) {
  const Coords x = coordinates_of(inv, m.coordinates());
  const double w = m.energy(x, theta);
  const Coords g = m.gradient(x, theta);
  if (!std::isfinite(w) || !std::isfinite(g[0]) || !std::isfinite(g[1]) || !std::isfinite(g[2])) {
    throw DomainError("energy '" + m.name() + "' is not defined at this state");
  }
  return g;
}

SymTensor compose_principal(const StretchState& s, const Vec3& principal) {
  return EigenSys{s.stretches(), s.frame()}.compose(principal);
}

}  // namespace

StressResult stress_from_energy_jkl(const EnergyModel& m, const StretchState& s, double theta) {
  require_coordinates(m, Coordinates::JKL, "stress_from_energy_jkl");
  const InvariantSet inv = invariants(s);
  const auto [wj, wk, wl] = checked_gradient(m, inv, theta);
  const double scale = std::exp(-inv.j);
  Vec3 principal{};
  for (int i = 0; i < 3; ++i) {
    const double e = s.log_stretches()[i];
    principal[i] = scale * (wj + 2.0 * wk * e + 3.0 * wl * e * e);
  }
  return StressResult::from_cauchy(compose_principal(s, principal), inv.j);
}

StressResult stress_from_energy_jyz(const EnergyModel& m, const StretchState& s, double theta) {
  require_coordinates(m, Coordinates::JYZ, "stress_from_energy_jyz");
  const InvariantSet inv = invariants(s);
  const auto [wj, wy, wz] = checked_gradient(m, inv, theta);
  const double scale = std::exp(-inv.j);
  const double mean = scale * wj;
  Vec3 principal{};
  for (int i = 0; i < 3; ++i) {
    const double d = s.log_stretches()[i] - inv.j / 3.0;
    principal[i] = mean + scale * (-inv.y * wz + 2.0 * wy * d + 3.0 * wz * d * d);
  }
  return StressResult::from_cauchy(compose_principal(s, principal), inv.j);
}

StressResult stress_from_energy_I(const EnergyModel& m, const StretchState& s, double theta) {
  require_coordinates(m, Coordinates::I123, "stress_from_energy_I");
  const InvariantSet inv = invariants(s);
  const auto [w1, w2, w3] = checked_gradient(m, inv, theta);
  Vec3 principal{};
  for (int i = 0; i < 3; ++i) {
    const double lam = s.stretches()[i];
    principal[i] = w3 + (w1 / inv.I3) * lam + (w2 / inv.I3) * lam * lam;
  }
  return StressResult::from_cauchy(compose_principal(s, principal), inv.j);
}

StressResult stress_from_energy(const EnergyModel& m, const StretchState& s, double theta) {
  switch (m.coordinates()) {
    case Coordinates::JKL:
      return stress_from_energy_jkl(m, s, theta);
    case Coordinates::JYZ:
      return stress_from_energy_jyz(m, s, theta);
    case Coordinates::I123:
      return stress_from_energy_I(m, s, theta);
  }
  throw std::logic_error("unknown coordinate system");
}

StressResult stress_hooke(double lambda, double mu, const StretchState& s) {
  if (!(mu > 0.0)) throw std::invalid_argument("stress_hooke: shear modulus must be positive");
  const Vec3& lam = s.stretches();
  const double volumetric = lambda * (lam[0] + lam[1] + lam[2] - 3.0);
  Vec3 principal{};
  for (int i = 0; i < 3; ++i) principal[i] = volumetric + 2.0 * mu * (lam[i] - 1.0);
  return StressResult::from_cauchy(compose_principal(s, principal), invariants(s).j);
}

StressResult stress_hencky(double lambda, double mu, const StretchState& s) {
  if (!(mu > 0.0)) throw std::invalid_argument("stress_hencky: shear modulus must be positive");
  const Vec3& ell = s.log_stretches();
  const double j = ell[0] + ell[1] + ell[2];
  const double scale = std::exp(-j);
  Vec3 principal{};
  for (int i = 0; i < 3; ++i) principal[i] = scale * (lambda * j + 2.0 * mu * ell[i]);
  return StressResult::from_cauchy(compose_principal(s, principal), j);
}

StressResult evaluate(const StressLaw& law, const StretchState& s, double theta) {
  struct Visitor {
    const StretchState& s;
    double theta;

    StressResult operator()(const FromEnergy& e) const { return stress_from_energy(e.model, s, theta); }
    StressResult operator()(const HookeLinear& h) const { return stress_hooke(h.lambda, h.mu, s); }
    StressResult operator()(const HenckyLog& h) const { return stress_hencky(h.lambda, h.mu, s); }
    StressResult operator()(const CoefficientForm& c) const {
      const InvariantSet inv = invariants(s);
      const bool log_basis = c.basis == Basis::Log;
      const Coords x = coordinates_of(inv, log_basis ? Coordinates::JKL : Coordinates::I123);
      const double a1 = c.c1(x, theta);
      const double a2 = c.c2(x, theta);
      const double a3 = c.c3(x, theta);
      if (!std::isfinite(a1) || !std::isfinite(a2) || !std::isfinite(a3)) {
        throw DomainError("coefficient law '" + c.name + "' is not defined at this state");
      }
      const Vec3& base = log_basis ? s.log_stretches() : s.stretches();
      Vec3 principal{};
      for (int i = 0; i < 3; ++i) principal[i] = a1 + a2 * base[i] + a3 * base[i] * base[i];
      return StressResult::from_cauchy(compose_principal(s, principal), inv.j);
    }
  };
  return std::visit(Visitor{s, theta}, law);
}

std::string law_name(const StressLaw& law) {
  struct Visitor {
    std::string operator()(const FromEnergy& e) const { return e.model.name(); }
    std::string operator()(const CoefficientForm& c) const { return c.name; }
    std::string operator()(const HookeLinear&) const { return "Hooke"; }
    std::string operator()(const HenckyLog&) const { return "HenckyLog"; }
  };
  return std::visit(Visitor{}, law);
}

// ------------------------------------------------------- representation

Representation representation_solve(const SymTensor& sigma, const SymTensor& l) {
  const double sigma_norm = frobenius_norm(sigma);
  const double l_norm = frobenius_norm(l);
  if (commutator_norm(sigma, l) > kCoaxialTolerance * sigma_norm * l_norm) {
    throw NotCoaxial("representation_solve: stress and logarithmic stretch do not commute");
  }

  const EigenSys eig = sym_eigen(l);
  const Mat3& q = eig.vectors.matrix();
  const Mat3 projected = transpose(q) * sigma.to_mat() * q;

  int count = 0;
  const std::array<int, 3> cluster = eigen_clusters(eig.values, count);
  Vec3 x{};
  Vec3 s{};
  std::array<int, 3> members{};
  for (int i = 0; i < 3; ++i) {
    x[cluster[i]] += eig.values[i];
    s[cluster[i]] += projected(i, i);
    ++members[cluster[i]];
  }
  for (int c = 0; c < count; ++c) {
    x[c] /= members[c];
    s[c] /= members[c];
  }

  // On a repeated eigenspace of L an isotropic stress must be a multiple of id.
  const double tolerance = kCoaxialTolerance * std::max(sigma_norm, kAbsFloor);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (cluster[i] != cluster[j]) continue;
      const double expected = (i == j) ? s[cluster[i]] : 0.0;
      if (std::abs(projected(i, j) - expected) > tolerance) {
        throw NotCoaxial("representation_solve: stress is not isotropic on a repeated eigenspace of L");
      }
    }
  }

  Representation rep;
  rep.order = count;
  if (count == 1) {
    rep.f1 = s[0];
  } else if (count == 2) {
    rep.f2 = (s[0] - s[1]) / (x[0] - x[1]);
    rep.f1 = s[0] - rep.f2 * x[0];
  } else {
    const double d01 = (s[0] - s[1]) / (x[0] - x[1]);
    const double d12 = (s[1] - s[2]) / (x[1] - x[2]);
    const double d012 = (d01 - d12) / (x[0] - x[2]);
    rep.f3 = d012;
    rep.f2 = d01 - d012 * (x[0] + x[1]);
    rep.f1 = s[0] - x[0] * d01 + x[0] * x[1] * d012;
  }
  return rep;
}

// ------------------------------------------------------ transformations

EnergyModel shield_transform(const EnergyModel& m) {
  EnergyModel::EnergyFn energy;
  EnergyModel::GradientFn gradient;

  if (m.coordinates() == Coordinates::I123) {
    // Invariants of V^-1 in terms of those of V.
    struct Inverted {
      Coords x;
      double e2;
    };
    auto invert = [](const Coords& x) {
      const auto [i1, i2, i3] = x;
      const double e2 = 0.5 * (i1 * i1 - 2.0 * i2);
      return Inverted{{e2 / i3, 0.5 * (e2 * e2 - 2.0 * i1 * i3) / (i3 * i3), 1.0 / i3}, e2};
    };
    energy = [m, invert](const Coords& x, double theta) {
      if (!(x[2] > 0.0)) return std::nan("");
      return x[2] * m.energy(invert(x).x, theta);
    };
    if (m.has_analytic_gradient()) {
      gradient = [m, invert](const Coords& x, double theta) -> Coords {
        const auto [i1, i2, i3] = x;
        const Inverted inv = invert(x);
        const double e2 = inv.e2;
        const Coords g = m.gradient(inv.x, theta);
        // d(inverted invariant b) / d(I_a), rows b, columns a.
        const Mat3 jac(i1 / i3, -1.0 / i3, -e2 / (i3 * i3),                                         //
                       (e2 * i1 - i3) / (i3 * i3), -e2 / (i3 * i3), -(e2 * e2 - i1 * i3) / (i3 * i3 * i3),  //
                       0.0, 0.0, -1.0 / (i3 * i3));
        Coords out = transpose(jac) * g;
        for (double& v : out) v *= i3;
        out[2] += m.energy(inv.x, theta);
        return out;
      };
    }
  } else {
    // In log coordinates V^-1 flips the sign of the odd invariants.
    energy = [m](const Coords& x, double theta) {
      return std::exp(x[0]) * m.energy({-x[0], x[1], -x[2]}, theta);
    };
    if (m.has_analytic_gradient()) {
      gradient = [m](const Coords& x, double theta) -> Coords {
        const Coords flipped{-x[0], x[1], -x[2]};
        const double scale = std::exp(x[0]);
        const double w = m.energy(flipped, theta);
        const Coords g = m.gradient(flipped, theta);
        return {scale * (w - g[0]), scale * g[1], -scale * g[2]};
      };
    }
  }
  return EnergyModel("Shield(" + m.name() + ")", m.coordinates(), std::move(energy), std::move(gradient))
      .with_parameters(m.parameters())
      .with_description("det V * W(V^-1) for W = " + m.name())
      .with_fd_step(m.fd_step());
}

EnergyModel rebase_energy(const EnergyModel& m, double j1) {
  require_coordinates(m, Coordinates::JYZ, "rebase_energy");
  if (!std::isfinite(j1)) throw std::invalid_argument("rebase_energy: j1 must be finite");
  const double scale = std::exp(-j1);
  EnergyModel::EnergyFn energy = [m, j1, scale](const Coords& x, double theta) {
    return scale * m.energy({x[0] + j1, x[1], x[2]}, theta);
  };
  EnergyModel::GradientFn gradient;
  if (m.has_analytic_gradient()) {
    gradient = [m, j1, scale](const Coords& x, double theta) -> Coords {
      const Coords g = m.gradient(Coords{x[0] + j1, x[1], x[2]}, theta);
      return {scale * g[0], scale * g[1], scale * g[2]};
    };
  }
  EnergyModel::ExpansionFn expansion;
  if (m.thermal_expansion()) {
    expansion = [phi = m.thermal_expansion(), j1](double theta) { return phi(theta) - j1; };
  }
  std::ostringstream name;
  name << m.name() << " [j1=" << j1 << "]";
  return EnergyModel(name.str(), Coordinates::JYZ, std::move(energy), std::move(gradient))
      .with_parameters(m.parameters())
      .with_description(m.description())
      .with_decomposable(m.declared_decomposable())
      .with_fd_step(m.fd_step())
      .with_thermal_expansion(std::move(expansion));
}

double reference_shift(const EnergyModel& m, double theta1) {
  if (!m.thermal_expansion()) {
    throw std::invalid_argument("model '" + m.name() + "' has no thermal expansion law");
  }
  return m.thermal_expansion()(theta1);
}

}  // namespace richter
