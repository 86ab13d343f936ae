#pragma once

// Built-in energies and stress laws, and a name-based catalog over them.

#include <map>
#include <string>
#include <vector>

#include "richter/constitutive.hpp"

namespace richter::models {

/// W = (lambda / 2) j^2 + mu k. Decomposable.
EnergyModel hencky_quadratic(double lambda, double mu);
/// The same energy as (lambda / 2 + mu / 3) j^2 + mu y.
EnergyModel hencky_quadratic_deviatoric(double lambda, double mu);
/// W = 2 mu I3 (I1 - 4); its stress is Hooke's law with lambda = 2 mu.
EnergyModel richter_intro(double mu);
/// W* = 2 mu (tr V^-1 - 4); Shield-dual of richter_intro.
EnergyModel shield_dual(double mu);
/// W = (kappa / 2) (I3 - 1)^2. Decomposable, pure pressure.
EnergyModel pressure_only(double kappa);
/// W = c j y. Couples volume and shape; fails the decomposability test.
EnergyModel coupled_volume_shape(double c);

/// Hooke's law written as sigma = (lambda I1 - 3 lambda - 2 mu) id + 2 mu V.
CoefficientForm non_integrable_hooke(double lambda, double mu);

struct CatalogEntry {
  std::string name;
  std::string kind;         // "energy" or "law"
  std::string coordinates;  // JKL, JYZ, I123, or the stress basis of a law
  std::vector<Parameter> defaults;
  std::string anchor;  // defining formula
  std::string description;
};

const std::vector<CatalogEntry>& catalog();

/// Resolves a catalog name; missing parameters take catalog defaults.
/// Throws std::invalid_argument for unknown names or parameters.
StressLaw make_law(const std::string& name, const std::map<std::string, double>& params = {});

/// Like make_law, restricted to energy entries.
EnergyModel make_energy(const std::string& name, const std::map<std::string, double>& params = {});

/// Energy entries of the catalog at their default parameters.
std::vector<EnergyModel> builtin_energies();

}  // namespace richter::models
