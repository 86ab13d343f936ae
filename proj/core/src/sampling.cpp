#include "richter/sampling.hpp"

#include <algorithm>

namespace richter::sampling {

Rng trial_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

Rotation random_rotation(Rng& rng) {
  std::normal_distribution<double> normal;
  double w = 0, x = 0, y = 0, z = 0, n = 0;
  do {
    w = normal(rng);
    x = normal(rng);
    y = normal(rng);
    z = normal(rng);
    n = std::sqrt(w * w + x * x + y * y + z * z);
  } while (n < 1e-8);
  w /= n;
  x /= n;
  y /= n;
  z /= n;
  return Rotation(Mat3(1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),  //
                       2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),  //
                       2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)));
}

SymTensor random_symmetric(Rng& rng, double scale) {
  std::normal_distribution<double> normal(0.0, scale);
  const double xx = normal(rng), yy = normal(rng), zz = normal(rng);
  const double xy = normal(rng), xz = normal(rng), yz = normal(rng);
  return {xx, yy, zz, xy, xz, yz};
}

SymTensor random_in_ball(Rng& rng, double radius) {
  // Orthonormal coordinates of Sym(3): diagonal entries and sqrt(2) * off-diagonals.
  std::normal_distribution<double> normal;
  std::array<double, 6> c{};
  double n2 = 0.0;
  do {
    n2 = 0.0;
    for (double& v : c) {
      v = normal(rng);
      n2 += v * v;
    }
  } while (n2 < 1e-16);
  std::uniform_real_distribution<double> unit;
  const double r = radius * std::pow(unit(rng), 1.0 / 6.0) / std::sqrt(n2);
  const double off = r / std::sqrt(2.0);
  return {r * c[0], r * c[1], r * c[2], off * c[3], off * c[4], off * c[5]};
}

Vec3 random_stretches(Rng& rng, double lo, double hi, double min_gap) {
  std::uniform_real_distribution<double> dist(lo, hi);
  for (;;) {
    Vec3 s{dist(rng), dist(rng), dist(rng)};
    if (std::abs(s[0] - s[1]) >= min_gap && std::abs(s[0] - s[2]) >= min_gap && std::abs(s[1] - s[2]) >= min_gap) {
      return s;
    }
  }
}

StretchState random_state(Rng& rng, double lo, double hi, double min_gap) {
  const Vec3 s = random_stretches(rng, lo, hi, min_gap);
  return StretchState::from_principal(s, random_rotation(rng));
}

Mat3 random_deformation(Rng& rng, double max_condition) {
  std::uniform_real_distribution<double> unit;
  const double span = std::log(max_condition);
  const double base = -0.5 * span;
  const Vec3 s{std::exp(base + span * unit(rng)), std::exp(base + span * unit(rng)),
               std::exp(base + span * unit(rng))};
  const Rotation frame = random_rotation(rng);
  const SymTensor v = EigenSys{s, frame}.compose();
  return v * random_rotation(rng).matrix();
}

}  // namespace richter::sampling
