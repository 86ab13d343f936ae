#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include "richter/cli/job.hpp"

using namespace richter;
using namespace richter::cli;
using json = nlohmann::ordered_json;

namespace {

const char* kJob = R"({
  "model": {"name": "HenckyQuadratic", "parameters": {"lambda": 0.5, "mu": 2}},
  "inputs": [[1.2, 0.1, 0, 0, 0.9, 0.05, 0, 0, 1.1], [1, 0, 0, 0, 1, 0, 0, 0, 1]],
  "seed": 5,
  "checks": [{"name": "hyperelasticity", "trials": 3, "N": 50}, "decomposability"]
})";

std::vector<json> lines(const std::string& text) {
  std::vector<json> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(json::parse(line));
  return out;
}

std::string error_of(const std::string& text) {
  try {
    parse_job(text);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(ParseJob, Fields) {
  const JobSpec job = parse_job(kJob);
  EXPECT_EQ(job.model.label, "HenckyQuadratic");
  ASSERT_EQ(job.inputs.size(), 2u);
  EXPECT_EQ(job.inputs[0](1, 2), 0.05);
  ASSERT_EQ(job.checks.size(), 2u);
  EXPECT_EQ(job.checks[0].config.trials, 3);
  EXPECT_EQ(job.checks[0].config.segments, 50);
  EXPECT_EQ(job.checks[0].config.seed, 5u);
  EXPECT_EQ(job.checks[1].config.seed, 5u);
  EXPECT_EQ(job.format, Format::Json);
}

TEST(ParseJob, SyntaxErrorsCarryLineAndColumn) {
  const std::string msg = error_of("{\n  \"model\": {\"name\": \"Hooke\"},\n  \"inputs\": [1, ]\n}");
  EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
}

TEST(ParseJob, FieldErrorsCarryThePath) {
  EXPECT_NE(error_of(R"({"model": {"name": "Nope"}})").find("/model"), std::string::npos);
  EXPECT_NE(error_of(R"({"model": {"name": "Hooke"}, "inputs": [[1, 2]]})").find("/inputs/0"), std::string::npos);
  EXPECT_NE(error_of(R"({"model": {"name": "Hooke"}, "checks": ["bogus"]})").find("/checks/0"), std::string::npos);
  EXPECT_NE(error_of(R"({"model": {"name": "Hooke"}, "colour": 1})").find("colour"), std::string::npos);
  EXPECT_NE(error_of(R"({"model": {"name": "Hooke"}, "output": "xml"})").find("/output"), std::string::npos);
  EXPECT_NE(error_of(R"({"model": {"name": "Hooke"}, "checks": [{"name": "hyperelasticity", "N": 7}]})").find("even"),
            std::string::npos);
}

TEST(ParseJob, NonPositiveDeterminantNamesTheRecord) {
  const std::string msg =
      error_of(R"({"model": {"name": "Hooke"}, "inputs": [[1,0,0,0,1,0,0,0,1], [1,0,0,0,1,0,0,0,-2]]})");
  EXPECT_NE(msg.find("/inputs/1"), std::string::npos) << msg;
  EXPECT_NE(msg.find("record 1"), std::string::npos) << msg;
}

TEST(ParseJob, ChecksMustSuitTheModel) {
  EXPECT_NE(error_of(R"({"model": {"name": "Hooke"}, "checks": ["decomposability"]})").find("needs an energy"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"model": {"name": "x", "basis": "log", "c1": 0, "c2": 1, "c3": 0}, "checks": ["integrability"]})")
                .find("stretch-basis"),
            std::string::npos);
  EXPECT_EQ(error_of(R"({"model": {"name": "HenckyLog"}, "checks": ["decomposability", "integrability"]})"), "");
}

TEST(ParseJob, ModelTransforms) {
  const JobSpec job = parse_job(R"({"model": {"name": "ShieldDual", "shield": true}})");
  const JobSpec intro = parse_job(R"({"model": {"name": "RichterIntro"}})");
  const InvariantSet inv = invariants_from_stretches({1.3, 0.8, 1.1});
  EXPECT_NEAR(job.model.energy->evaluate(inv, 0), intro.model.energy->evaluate(inv, 0), 1e-12);

  const JobSpec rebased = parse_job(R"({"model": {"name": "HenckyQuadratic", "rebase_j1": 0.3}})");
  EXPECT_EQ(rebased.model.energy->coordinates(), Coordinates::JYZ);
  EXPECT_NE(error_of(R"({"model": {"name": "Hooke", "shield": true}})").find("only energies"), std::string::npos);
}

TEST(Run, IdentityUnderHenckyIsStressFree) {
  const JobSpec job = parse_job(R"({"model": {"name": "HenckyLog"}, "inputs": [[1,0,0,0,1,0,0,0,1]]})");
  std::ostringstream out;
  EXPECT_EQ(run(job, Mode::Eval, out), 0);
  const auto recs = lines(out.str());
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0]["record"], "state");
  for (const auto& v : recs[0]["sigma"]) EXPECT_EQ(v.get<double>(), 0.0);
  EXPECT_EQ(recs[0]["representation"]["order"], 1);
}

TEST(Run, RecordsThenChecksInInputOrder) {
  const JobSpec job = parse_job(kJob);
  std::ostringstream out;
  EXPECT_EQ(run(job, Mode::Eval, out), 0);
  const auto recs = lines(out.str());
  ASSERT_EQ(recs.size(), 4u);
  EXPECT_EQ(recs[0]["index"], 0);
  EXPECT_EQ(recs[1]["index"], 1);
  EXPECT_EQ(recs[2]["name"], "hyperelasticity");
  EXPECT_EQ(recs[3]["name"], "decomposability");
  for (const char* key : {"F", "V", "R", "L", "invariants", "sigma", "tau", "mean_stress", "deviatoric", "representation"}) {
    EXPECT_TRUE(recs[0].contains(key)) << key;
  }

  std::ostringstream checks_only;
  run(job, Mode::Check, checks_only);
  EXPECT_EQ(lines(checks_only.str()).size(), 2u);
}

TEST(Run, RecordValuesMatchTheLibrary) {
  const JobSpec job = parse_job(kJob);
  const json rec = state_record(0, job.inputs[0], job.model.law, 0.0);
  const StretchState s = decompose(DeformationGradient(job.inputs[0]));
  const StressResult r = evaluate(job.model.law, s, 0.0);
  const auto sigma = rec["sigma"].get<std::vector<double>>();
  const Mat3 expected = r.sigma.to_mat();
  for (int i = 0; i < 9; ++i) EXPECT_EQ(sigma[i], expected.entries()[i]);
}

TEST(Run, HookeFailsHyperelasticity) {
  const JobSpec job = parse_job(
      R"({"model": {"name": "Hooke"}, "checks": [{"name": "hyperelasticity", "trials": 4, "N": 100}]})");
  std::ostringstream out;
  EXPECT_EQ(run(job, Mode::Check, out), 1);
  const auto recs = lines(out.str());
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_FALSE(recs[0]["passed"].get<bool>());
  EXPECT_EQ(recs[0]["status"], "fail");
  EXPECT_TRUE(recs[0]["witness"].is_object());
}

TEST(Run, NumbersRoundTripBitForBit) {
  const JobSpec job = parse_job(kJob);
  std::ostringstream out;
  run(job, Mode::Eval, out);
  const json rec = lines(out.str())[0];
  const StretchState s = decompose(DeformationGradient(job.inputs[0]));
  const InvariantSet inv = invariants(s);
  EXPECT_EQ(rec["invariants"]["z"].get<double>(), inv.z);
  EXPECT_EQ(rec["invariants"]["I2"].get<double>(), inv.I2);
  const auto l = rec["L"].get<std::vector<double>>();
  for (int i = 0; i < 9; ++i) EXPECT_EQ(l[i], s.L().to_mat().entries()[i]);
}

TEST(Run, DeterministicStreams) {
  const JobSpec job = parse_job(kJob);
  std::ostringstream a, b;
  run(job, Mode::Eval, a);
  run(job, Mode::Eval, b);
  EXPECT_EQ(a.str(), b.str());
}

TEST(Run, SeedOverrideChangesCheckSeeds) {
  JobSpec job = parse_job(kJob);
  override_seeds(job, 99);
  std::ostringstream out;
  run(job, Mode::Check, out);
  for (const json& r : lines(out.str())) EXPECT_EQ(r["seed"], 99);
}

TEST(Run, CsvHeaderAndPrecision) {
  JobSpec job = parse_job(kJob);
  job.format = Format::Csv;
  std::ostringstream out;
  run(job, Mode::Eval, out);
  const std::string text = out.str();
  EXPECT_NE(text.find("sigma_11"), std::string::npos);
  EXPECT_NE(text.find("sigma_33"), std::string::npos);
  EXPECT_NE(text.find("check,status,passed"), std::string::npos);
  EXPECT_NE(text.find("0.10000000000000001"), std::string::npos);
}

TEST(Run, EvaluationErrorsAreReportedPerRecord) {
  JobSpec job = parse_job(R"({"model": {"name": "HenckyLog"}, "inputs": [[1.1,0,0,0,1,0,0,0,1], [1,0,0,0,1,0,0,0,1]]})");
  // log(y - 1) is undefined for every admissible shape.
  job.model.law = FromEnergy{EnergyModel("Broken", Coordinates::JYZ, [](const Coords& x, double) { return std::log(x[1] - 1); })};
  std::ostringstream out;
  EXPECT_EQ(run(job, Mode::Eval, out), 1);
  const auto recs = lines(out.str());
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[0]["record"], "error");
  EXPECT_EQ(recs[1]["record"], "error");
  EXPECT_EQ(recs[1]["index"], 1);
}

TEST(Catalog, ListingNeedsNoConfig) {
  std::ostringstream text, ndjson;
  write_catalog(text, std::nullopt);
  write_catalog(ndjson, Format::Json);
  for (const char* name : {"HenckyQuadratic", "RichterIntro", "ShieldDual"}) {
    EXPECT_NE(text.str().find(name), std::string::npos);
  }
  for (const json& e : lines(ndjson.str())) {
    EXPECT_FALSE(e["anchor"].get<std::string>().empty());
    EXPECT_TRUE(e["parameters"].is_object());
  }
}

TEST(Env, SeedParsing) {
  ::setenv("RICHTER_SEED", "42", 1);
  EXPECT_EQ(seed_from_env(), 42u);
  ::setenv("RICHTER_SEED", "forty", 1);
  EXPECT_THROW(seed_from_env(), InputError);
  ::unsetenv("RICHTER_SEED");
  EXPECT_FALSE(seed_from_env().has_value());
}
