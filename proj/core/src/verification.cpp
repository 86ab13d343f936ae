#include "richter/verification.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "richter/sampling.hpp"

namespace richter::verification {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::Boundary:
      return "boundary";
  }
  return "?";
}

namespace {

CheckReport make_report(std::string name, double residual, double tolerance, std::optional<std::uint64_t> seed,
                        std::optional<std::string> witness) {
  CheckReport r;
  r.name = std::move(name);
  r.residual = residual;
  r.tolerance = tolerance;
  r.passed = residual <= tolerance;
  r.status = r.passed ? Status::Pass : Status::Fail;
  r.seed = seed;
  r.witness = std::move(witness);
  return r;
}

class JsonWriter {
 public:
  JsonWriter() { out_ << std::setprecision(17) << '{'; }

  JsonWriter& field(std::string_view key, double v) {
    key_(key);
    out_ << v;
    return *this;
  }
  JsonWriter& field(std::string_view key, const SymTensor& s) {
    key_(key);
    const auto& c = s.components();
    out_ << '[' << c[0] << ',' << c[1] << ',' << c[2] << ',' << c[3] << ',' << c[4] << ',' << c[5] << ']';
    return *this;
  }
  JsonWriter& field(std::string_view key, const Vec3& v) {
    key_(key);
    out_ << '[' << v[0] << ',' << v[1] << ',' << v[2] << ']';
    return *this;
  }
  JsonWriter& field(std::string_view key, std::string_view text) {
    key_(key);
    out_ << '"' << text << '"';
    return *this;
  }
  std::string str() { return out_.str() + '}'; }

 private:
  void key_(std::string_view key) {
    if (!first_) out_ << ',';
    first_ = false;
    out_ << '"' << key << "\":";
  }

  std::ostringstream out_;
  bool first_ = true;
};

// Admissible (j, y, z) away from the z^2 / y^3 = 1/6 boundary.
Coords random_jyz(sampling::Rng& rng) {
  std::uniform_real_distribution<double> j_dist(-0.5, 0.5);
  std::uniform_real_distribution<double> y_dist(0.1, 0.6);
  std::uniform_real_distribution<double> r_dist(-0.8, 0.8);
  const double y = y_dist(rng);
  return {j_dist(rng), y, r_dist(rng) * std::sqrt(y * y * y / 6.0)};
}

}  // namespace

// ---------------------------------------------------------- work paths

StrainPath::StrainPath(const SymTensor& start, const SymTensor& end, int segments)
    : start_(start), end_(end), segments_(segments) {
  if (segments < 2 || segments % 2 != 0) {
    throw std::invalid_argument("StrainPath: Simpson integration needs an even number of segments >= 2");
  }
}

SymTensor StrainPath::at(double t) const {
  if (t == 0.0) return start_;
  if (t == 1.0) return end_;
  return start_ * (1.0 - t) + end_ * t;
}

double work_integral(const StressLaw& law, const StrainPath& path, double theta) {
  const SymTensor dl = path.increment();
  if (frobenius_norm(dl) == 0.0) return 0.0;
  const int n = path.segments();
  auto integrand = [&](int i) {
    const StretchState s = StretchState::from_log(path.at(static_cast<double>(i) / n));
    return contract(evaluate(law, s, theta).kirchhoff, dl);
  };
  double sum = integrand(0) + integrand(n);
  for (int i = 1; i < n; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * integrand(i);
  return sum / (3.0 * n);
}

// ---------------------------------------------------- hyperelasticity

CheckReport hyperelasticity_check(const StressLaw& law, const CheckConfig& config, double theta) {
  constexpr double kRadius = 0.8;
  double worst = 0.0;
  std::optional<std::string> witness;
  for (int t = 0; t < config.trials; ++t) {
    auto rng = sampling::trial_rng(config.seed, static_cast<std::uint64_t>(t));
    const SymTensor a = sampling::random_in_ball(rng, kRadius);
    const SymTensor b = sampling::random_in_ball(rng, kRadius);
    const SymTensor c = sampling::random_in_ball(rng, kRadius);
    const double w_ab = work_integral(law, StrainPath(a, b, config.segments), theta);
    const double w_bc = work_integral(law, StrainPath(b, c, config.segments), theta);
    const double w_ca = work_integral(law, StrainPath(c, a, config.segments), theta);
    const double loop = w_ab + w_bc + w_ca;
    const double scale = std::max({std::abs(w_ab), std::abs(w_bc), std::abs(w_ca)});
    const double normalized = scale > 0.0 ? std::abs(loop) / scale : std::abs(loop);
    if (normalized > worst || !witness) {
      worst = std::max(worst, normalized);
      witness = JsonWriter().field("trial", t).field("L0", a).field("L1", b).field("L2", c).field("loop_work", loop).str();
    }
  }
  return make_report("hyperelasticity", worst, config.tolerance.value_or(1e-4), config.seed, witness);
}

// ------------------------------------------------------- integrability

CoefficientForm stretch_coefficients(const EnergyModel& m) {
  const EnergyModel mi = convert_model(m, Coordinates::I123);
  return CoefficientForm{
      Basis::Stretch,
      [mi](const Coords& x, double theta) { return mi.gradient(x, theta)[2]; },
      [mi](const Coords& x, double theta) { return mi.gradient(x, theta)[0] / x[2]; },
      [mi](const Coords& x, double theta) { return mi.gradient(x, theta)[1] / x[2]; },
      m.name() + " coefficients",
  };
}

CheckReport integrability_check(const CoefficientForm& law, const CheckConfig& config) {
  if (law.basis != Basis::Stretch) {
    throw std::invalid_argument("integrability_check: coefficients must be in the stretch basis");
  }
  constexpr double kTheta = 0.0;
  auto candidate = [&](const Coords& x) {
    return Coords{x[2] * law.c2(x, kTheta), x[2] * law.c3(x, kTheta), law.c1(x, kTheta)};
  };
  constexpr std::pair<int, int> kPairs[3] = {{0, 1}, {0, 2}, {1, 2}};
  constexpr const char* kPairNames[3] = {"I1-I2", "I1-I3", "I2-I3"};

  double worst = 0.0;
  std::optional<std::string> witness;
  const int points = std::max(config.trials, 1);
  for (int t = 0; t < points; ++t) {
    auto rng = sampling::trial_rng(config.seed, static_cast<std::uint64_t>(t));
    Coords x{};
    for (;;) {
      const Vec3 s = sampling::random_stretches(rng, 0.5, 2.0, 0.05);
      const InvariantSet inv = invariants_from_stretches(s);
      if (inv.I3 >= 0.5 && inv.I3 <= 2.0 && inv.I1 >= 2.5 && inv.I1 <= 5.0) {
        x = {inv.I1, inv.I2, inv.I3};
        break;
      }
    }
    // jac(a, b) = d G_a / d I_b
    Mat3 jac;
    for (int b = 0; b < 3; ++b) {
      const double h = config.fd_step * (1.0 + std::abs(x[b]));
      Coords xp = x;
      Coords xm = x;
      xp[b] += h;
      xm[b] -= h;
      const Coords gp = candidate(xp);
      const Coords gm = candidate(xm);
      for (int a = 0; a < 3; ++a) jac(a, b) = (gp[a] - gm[a]) / (2.0 * h);
    }
    for (int p = 0; p < 3; ++p) {
      const auto [a, b] = kPairs[p];
      double r = std::abs(jac(a, b) - jac(b, a));
      if (!std::isfinite(r)) r = std::numeric_limits<double>::infinity();
      if (r > worst || !witness) {
        worst = std::max(worst, r);
        witness = JsonWriter()
                      .field("pair", kPairNames[p])
                      .field("I", Vec3{x[0], x[1], x[2]})
                      .field("mixed_a", jac(a, b))
                      .field("mixed_b", jac(b, a))
                      .str();
      }
    }
  }
  return make_report("integrability", worst, config.tolerance.value_or(1e-5), config.seed, witness);
}

// ----------------------------------------------------- decomposability

CheckReport decomposability_check(const EnergyModel& m, const CheckConfig& config) {
  const EnergyModel mj = convert_model(m, Coordinates::JYZ);
  double worst = 0.0;
  std::optional<std::string> witness;
  for (int t = 0; t < std::max(config.trials, 1); ++t) {
    auto rng = sampling::trial_rng(config.seed, static_cast<std::uint64_t>(t));
    const Coords x = random_jyz(rng);
    const double w = mj.energy(x, 0.0);
    auto mixed = [&](int b) {
      const double hj = config.mixed_step * (1.0 + std::abs(x[0]));
      const double hb = config.mixed_step * (1.0 + std::abs(x[b]));
      auto at = [&](double sj, double sb) {
        Coords p = x;
        p[0] += sj * hj;
        p[b] += sb * hb;
        return mj.energy(p, 0.0);
      };
      return (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4.0 * hj * hb);
    };
    const double w_jy = mixed(1);
    const double w_jz = mixed(2);
    double r = std::max(std::abs(w_jy), std::abs(w_jz)) / (1.0 + std::abs(w));
    if (!std::isfinite(r)) r = std::numeric_limits<double>::infinity();
    if (r > worst || !witness) {
      worst = std::max(worst, r);
      witness = JsonWriter().field("jyz", Vec3{x[0], x[1], x[2]}).field("W_jy", w_jy).field("W_jz", w_jz).str();
    }
  }
  return make_report("decomposability", worst, config.tolerance.value_or(1e-6), config.seed, witness);
}

CheckReport mean_stress_check(const EnergyModel& m, const CheckConfig& config) {
  auto scaled_mean = [&](const Coords& x) {
    const StretchState s = StretchState::from_principal(principal_stretches(Coordinates::JYZ, x));
    const StressResult r = stress_from_energy(m, s, 0.0);
    return std::exp(invariants(s).j) * r.mean_stress;
  };
  double worst = 0.0;
  std::optional<std::string> witness;
  for (int t = 0; t < std::max(config.trials, 1); ++t) {
    auto rng = sampling::trial_rng(config.seed, static_cast<std::uint64_t>(t));
    const Coords x = random_jyz(rng);
    const double w = m.energy_at_stretches(principal_stretches(Coordinates::JYZ, x), 0.0);
    Vec3 slope{};
    for (int b = 1; b < 3; ++b) {
      const double h = config.mean_stress_step * (1.0 + std::abs(x[b]));
      Coords xp = x;
      Coords xm = x;
      xp[b] += h;
      xm[b] -= h;
      slope[b] = (scaled_mean(xp) - scaled_mean(xm)) / (2.0 * h);
    }
    double r = std::max(std::abs(slope[1]), std::abs(slope[2])) / (1.0 + std::abs(w));
    if (!std::isfinite(r)) r = std::numeric_limits<double>::infinity();
    if (r > worst || !witness) {
      worst = std::max(worst, r);
      witness = JsonWriter().field("jyz", Vec3{x[0], x[1], x[2]}).field("dmean_dy", slope[1]).field("dmean_dz", slope[2]).str();
    }
  }
  return make_report("mean_stress", worst, config.tolerance.value_or(1e-6), config.seed, witness);
}

// ---------------------------------------------------------- inequalities

namespace {

// Strict inequality q > 0 over samples, judged on the smallest normalised margin.
struct MarginTracker {
  std::string name;
  double boundary;
  double worst = std::numeric_limits<double>::infinity();
  std::optional<std::string> witness;

  void add(double margin, const Vec3& stretches) {
    if (!std::isfinite(margin)) margin = -std::numeric_limits<double>::infinity();
    if (margin < worst || !witness) {
      worst = std::min(worst, margin);
      witness = JsonWriter().field("stretches", stretches).field("margin", margin).str();
    }
  }

  CheckReport report(std::uint64_t seed) const {
    // residual = -(smallest margin), tolerance = -boundary: passed <=> margin >= boundary.
    CheckReport r = make_report(name, -worst, -boundary, seed, witness);
    if (!r.passed && worst >= -boundary) r.status = Status::Boundary;
    return r;
  }
};

Vec3 principal_stress(const EnergyModel& m, const Vec3& stretches, double theta) {
  const SymTensor sigma = stress_from_energy(m, StretchState::from_principal(stretches), theta).sigma;
  return {sigma(0, 0), sigma(1, 1), sigma(2, 2)};
}

}  // namespace

std::vector<CheckReport> inequality_suite(const EnergyModel& m, const CheckConfig& config, double theta) {
  constexpr double kExactBoundary = 1e-10;
  constexpr double kFdBoundary = 1e-6;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  MarginTracker empirical1{"empirical_I1", kExactBoundary, kInf, std::nullopt};
  MarginTracker empirical2{"empirical_I2", kExactBoundary, kInf, std::nullopt};
  MarginTracker be{"baker_ericksen", kExactBoundary, kInf, std::nullopt};
  MarginTracker te{"tension_extension", kFdBoundary, kInf, std::nullopt};

  for (int t = 0; t < std::max(config.trials, 1); ++t) {
    auto rng = sampling::trial_rng(config.seed, static_cast<std::uint64_t>(t));
    const Vec3 lam = sampling::random_stretches(rng, 0.3, 3.0, 0.05);
    const Vec3 sigma = principal_stress(m, lam, theta);
    const double sigma_max = std::max({std::abs(sigma[0]), std::abs(sigma[1]), std::abs(sigma[2])});
    const double lam_max = std::max({lam[0], lam[1], lam[2]});

    double be_margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        be_margin = std::min(be_margin, (sigma[i] - sigma[j]) * (lam[i] - lam[j]));
    be.add(be_margin / (1.0 + sigma_max * lam_max), lam);

    double te_margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 3; ++i) {
      const double h = config.fd_step * (1.0 + lam[i]);
      Vec3 up = lam;
      Vec3 down = lam;
      up[i] += h;
      down[i] -= h;
      te_margin = std::min(te_margin, (principal_stress(m, up, theta)[i] - principal_stress(m, down, theta)[i]) / (2.0 * h));
    }
    te.add(te_margin / (1.0 + sigma_max), lam);

    // dW/d(iB1, iB2, iB3) from dW/d lambda through the Cauchy-Green invariants.
    const double sum_sq = lam[0] * lam[0] + lam[1] * lam[1] + lam[2] * lam[2];
    const double ib3 = lam[0] * lam[0] * lam[1] * lam[1] * lam[2] * lam[2];
    Mat3 jac;
    for (int i = 0; i < 3; ++i) {
      jac(0, i) = 2.0 * lam[i];
      jac(1, i) = 2.0 * lam[i] * (sum_sq - lam[i] * lam[i]);
      jac(2, i) = 2.0 * ib3 / lam[i];
    }
    const Coords g_b = inverse(transpose(jac)) * m.stretch_gradient(lam, theta);
    const double w_scale = 1.0 + std::abs(m.energy_at_stretches(lam, theta));
    empirical1.add(g_b[0] / w_scale, lam);
    empirical2.add(g_b[1] / w_scale, lam);
  }
  return {empirical1.report(config.seed), empirical2.report(config.seed), be.report(config.seed),
          te.report(config.seed)};
}

// ---------------------------------------------------------------- domain

CheckReport domain_check(std::span<const StretchState> states) {
  constexpr double kUpper = 1.0 / 6.0 + 1e-10;
  double worst = 0.0;
  std::optional<std::string> witness;
  bool degenerate_violation = false;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const InvariantSet inv = invariants(states[i]);
    const auto ratio = deviatoric_ratio(inv);
    if (!ratio) {
      if (std::abs(inv.z) >= 1e-10) degenerate_violation = true;
      continue;
    }
    if (*ratio > worst || !witness) {
      worst = std::max(worst, *ratio);
      witness = JsonWriter()
                    .field("index", static_cast<double>(i))
                    .field("ratio", *ratio)
                    .field("log_stretches", states[i].log_stretches())
                    .str();
    }
  }
  CheckReport r = make_report("domain", worst, kUpper, std::nullopt, witness);
  if (degenerate_violation) {
    r.passed = false;
    r.status = Status::Fail;
    r.residual = std::numeric_limits<double>::infinity();
  }
  return r;
}

}  // namespace richter::verification
