#pragma once

// Seeded random generation of rotations, stretches and strain states.
// Every trial draws from its own generator derived from (seed, stream),
// so trials can be evaluated in any order with identical results.

#include <cstdint>
#include <random>

#include "richter/kinematics.hpp"

namespace richter::sampling {

using Rng = std::mt19937_64;

Rng trial_rng(std::uint64_t seed, std::uint64_t stream);

/// Haar-distributed rotation.
Rotation random_rotation(Rng& rng);

/// Symmetric tensor with independent N(0, scale^2) upper-triangle entries.
SymTensor random_symmetric(Rng& rng, double scale = 1.0);

/// Uniform in the Frobenius-norm ball of the given radius in Sym(3).
SymTensor random_in_ball(Rng& rng, double radius);

/// Three stretches uniform in [lo, hi] with pairwise gaps of at least min_gap.
Vec3 random_stretches(Rng& rng, double lo, double hi, double min_gap = 0.0);

/// Random principal stretches in [lo, hi] in a random frame, with R = id.
StretchState random_state(Rng& rng, double lo, double hi, double min_gap = 0.0);

/// F = V R with eigenvalues of V log-uniform so that their ratio is at most max_condition.
Mat3 random_deformation(Rng& rng, double max_condition);

}  // namespace richter::sampling
