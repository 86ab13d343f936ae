#include "richter/models.hpp"

#include <algorithm>

namespace richter::models {

EnergyModel hencky_quadratic(double lambda, double mu) {
  return EnergyModel(
             "HenckyQuadratic", Coordinates::JKL,
             [lambda, mu](const Coords& x, double) { return 0.5 * lambda * x[0] * x[0] + mu * x[1]; },
             [lambda, mu](const Coords& x, double) { return Coords{lambda * x[0], mu, 0.0}; })
      .with_parameters({{"lambda", lambda}, {"mu", mu}})
      .with_description("quadratic Hencky energy in log-stretch invariants")
      .with_decomposable(true);
}

EnergyModel hencky_quadratic_deviatoric(double lambda, double mu) {
  const double bulk = 0.5 * lambda + mu / 3.0;
  return EnergyModel(
             "HenckyQuadraticDeviatoric", Coordinates::JYZ,
             [bulk, mu](const Coords& x, double) { return bulk * x[0] * x[0] + mu * x[1]; },
             [bulk, mu](const Coords& x, double) { return Coords{2.0 * bulk * x[0], mu, 0.0}; })
      .with_parameters({{"lambda", lambda}, {"mu", mu}})
      .with_description("quadratic Hencky energy split into volume and shape parts")
      .with_decomposable(true);
}

EnergyModel richter_intro(double mu) {
  return EnergyModel(
             "RichterIntro", Coordinates::I123,
             [mu](const Coords& x, double) { return 2.0 * mu * x[2] * (x[0] - 4.0); },
             [mu](const Coords& x, double) { return Coords{2.0 * mu * x[2], 0.0, 2.0 * mu * (x[0] - 4.0)}; })
      .with_parameters({{"mu", mu}})
      .with_description("energy whose Cauchy stress is Hooke's law with lambda = 2 mu");
}

EnergyModel shield_dual(double mu) {
  return EnergyModel(
             "ShieldDual", Coordinates::I123,
             [mu](const Coords& x, double) {
               const double tr_inv = 0.5 * (x[0] * x[0] - 2.0 * x[1]) / x[2];
               return 2.0 * mu * (tr_inv - 4.0);
             },
             [mu](const Coords& x, double) {
               const double e2 = 0.5 * (x[0] * x[0] - 2.0 * x[1]);
               return Coords{2.0 * mu * x[0] / x[2], -2.0 * mu / x[2], -2.0 * mu * e2 / (x[2] * x[2])};
             })
      .with_parameters({{"mu", mu}})
      .with_description("Valanis-Landel energy 2 mu (sum 1/lambda_i - 4)");
}

EnergyModel pressure_only(double kappa) {
  return EnergyModel(
             "PressureOnly", Coordinates::I123,
             [kappa](const Coords& x, double) { return 0.5 * kappa * (x[2] - 1.0) * (x[2] - 1.0); },
             [kappa](const Coords& x, double) { return Coords{0.0, 0.0, kappa * (x[2] - 1.0)}; })
      .with_parameters({{"kappa", kappa}})
      .with_description("volume-only energy producing a pure pressure")
      .with_decomposable(true);
}

EnergyModel coupled_volume_shape(double c) {
  return EnergyModel(
             "CoupledVolumeShape", Coordinates::JYZ, [c](const Coords& x, double) { return c * x[0] * x[1]; },
             [c](const Coords& x, double) { return Coords{c * x[1], c * x[0], 0.0}; })
      .with_parameters({{"c", c}})
      .with_description("deliberately coupled energy c j y");
}

CoefficientForm non_integrable_hooke(double lambda, double mu) {
  return CoefficientForm{
      Basis::Stretch,
      [lambda, mu](const Coords& x, double) { return lambda * x[0] - 3.0 * lambda - 2.0 * mu; },
      [mu](const Coords&, double) { return 2.0 * mu; },
      [](const Coords&, double) { return 0.0; },
      "NonIntegrableHooke",
  };
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries{
      {"HenckyQuadratic", "energy", "JKL", {{"lambda", 1.0}, {"mu", 1.0}},
       "W = lambda/2 j^2 + mu k", "quadratic Hencky energy; induces sigma e^j = lambda j id + 2 mu L"},
      {"HenckyQuadraticDeviatoric", "energy", "JYZ", {{"lambda", 1.0}, {"mu", 1.0}},
       "W = (lambda/2 + mu/3) j^2 + mu y", "quadratic Hencky energy in volume/shape invariants"},
      {"RichterIntro", "energy", "I123", {{"mu", 1.0}},
       "W = 2 mu det V (tr V - 4)", "sigma = 2 mu (V - id) + 2 mu tr(V - id) id"},
      {"ShieldDual", "energy", "I123", {{"mu", 1.0}},
       "W* = 2 mu (tr V^-1 - 4)", "Valanis-Landel energy; its Shield transform is RichterIntro"},
      {"PressureOnly", "energy", "I123", {{"kappa", 1.0}},
       "W = kappa/2 (det V - 1)^2", "pure pressure test energy"},
      {"CoupledVolumeShape", "energy", "JYZ", {{"c", 1.0}},
       "W = c j y", "non-decomposable witness"},
      {"Hooke", "law", "V", {{"lambda", 1.0}, {"mu", 1.0}},
       "sigma = lambda tr(V - id) id + 2 mu (V - id)", "Hooke's law in the stretch V"},
      {"HenckyLog", "law", "L", {{"lambda", 1.0}, {"mu", 1.0}},
       "sigma e^j = lambda j id + 2 mu L", "logarithmic law"},
      {"NonIntegrableHooke", "law", "V", {{"lambda", 1.0}, {"mu", 1.0}},
       "sigma = (lambda I1 - 3 lambda - 2 mu) id + 2 mu V",
       "Hooke's law as a coefficient form in the stretch basis"},
  };
  return entries;
}

namespace {

const CatalogEntry& find_entry(const std::string& name) {
  const auto& entries = catalog();
  const auto it = std::find_if(entries.begin(), entries.end(), [&](const CatalogEntry& e) { return e.name == name; });
  if (it == entries.end()) throw std::invalid_argument("unknown model '" + name + "'");
  return *it;
}

std::map<std::string, double> resolve(const CatalogEntry& entry, const std::map<std::string, double>& params) {
  std::map<std::string, double> values;
  for (const Parameter& p : entry.defaults) values[p.name] = p.value;
  for (const auto& [key, value] : params) {
    if (!values.contains(key)) {
      throw std::invalid_argument("model '" + entry.name + "' has no parameter '" + key + "'");
    }
    values[key] = value;
  }
  return values;
}

}  // namespace

StressLaw make_law(const std::string& name, const std::map<std::string, double>& params) {
  const CatalogEntry& entry = find_entry(name);
  const auto p = resolve(entry, params);
  if (entry.kind == "energy") return FromEnergy{make_energy(name, params)};
  if (name == "Hooke") return HookeLinear{p.at("lambda"), p.at("mu")};
  if (name == "HenckyLog") return HenckyLog{p.at("lambda"), p.at("mu")};
  return non_integrable_hooke(p.at("lambda"), p.at("mu"));
}

EnergyModel make_energy(const std::string& name, const std::map<std::string, double>& params) {
  const CatalogEntry& entry = find_entry(name);
  if (entry.kind != "energy") throw std::invalid_argument("'" + name + "' is a stress law, not an energy");
  const auto p = resolve(entry, params);
  EnergyModel m = [&] {
    if (name == "HenckyQuadratic") return hencky_quadratic(p.at("lambda"), p.at("mu"));
    if (name == "HenckyQuadraticDeviatoric") return hencky_quadratic_deviatoric(p.at("lambda"), p.at("mu"));
    if (name == "RichterIntro") return richter_intro(p.at("mu"));
    if (name == "ShieldDual") return shield_dual(p.at("mu"));
    if (name == "PressureOnly") return pressure_only(p.at("kappa"));
    return coupled_volume_shape(p.at("c"));
  }();
  return m;
}

std::vector<EnergyModel> builtin_energies() {
  std::vector<EnergyModel> out;
  for (const CatalogEntry& e : catalog())
    if (e.kind == "energy") out.push_back(make_energy(e.name));
  return out;
}

}  // namespace richter::models
