#pragma once

// Batch jobs for the richter command line: a JSON job names a model, a list
// of deformation gradients and the checks to run; results are written as
// newline-delimited JSON or CSV.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "richter/models.hpp"
#include "richter/verification.hpp"

namespace richter::cli {

/// Malformed or invalid job input. what() carries the line or field.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { Json, Csv };

std::optional<Format> parse_format(std::string_view text);

enum class Mode { Eval, Check };

struct ModelSpec {
  std::string label;
  StressLaw law = HookeLinear{};
  std::optional<EnergyModel> energy;                 // for energy-based checks
  std::optional<CoefficientForm> stretch_coefficients;  // for integrability
};

struct CheckRequest {
  std::string name;
  verification::CheckConfig config;
};

struct JobSpec {
  ModelSpec model;
  std::vector<Mat3> inputs;
  double theta = 0.0;
  std::vector<CheckRequest> checks;
  Format format = Format::Json;
};

/// Check names understood in the "checks" list.
const std::vector<std::string>& check_names();

/// Throws InputError with line/column for syntax errors and the JSON path
/// for invalid fields, including any input with det F <= 0.
JobSpec parse_job(const std::string& text);
JobSpec load_job(const std::filesystem::path& path);

/// RICHTER_SEED, if set. Throws InputError if it is not an unsigned integer.
std::optional<std::uint64_t> seed_from_env();

/// Replaces every check seed.
void override_seeds(JobSpec& job, std::uint64_t seed);

nlohmann::ordered_json state_record(std::size_t index, const Mat3& f, const StressLaw& law, double theta);
nlohmann::ordered_json error_record(std::size_t index, const std::string& message);
nlohmann::ordered_json check_record(const verification::CheckReport& report);

std::vector<verification::CheckReport> run_checks(const JobSpec& job);

/// Writes the report stream and returns the exit status: 0 when every
/// record evaluated and every check passed, 1 otherwise.
int run(const JobSpec& job, Mode mode, std::ostream& out);

/// One line per catalog entry: NDJSON, CSV, or an aligned text table when format is empty.
void write_catalog(std::ostream& out, std::optional<Format> format);

}  // namespace richter::cli
