#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "richter/cli/job.hpp"

namespace {

constexpr int kInputError = 2;

struct JobOptions {
  std::string job_path;
  std::string out_path;
  std::string format;
  std::optional<std::uint64_t> seed;
};

void add_job_options(CLI::App* cmd, JobOptions& o, bool with_output) {
  cmd->add_option("--job", o.job_path, "JSON job file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--seed", o.seed, "seed for every check (overrides RICHTER_SEED and the job file)");
  if (with_output) {
    cmd->add_option("--out", o.out_path, "write records here instead of stdout");
    cmd->add_option("--format", o.format, "json or csv (overrides the job file)")->check(CLI::IsMember({"json", "csv"}));
  }
}

int execute(const JobOptions& o, richter::cli::Mode mode) {
  using namespace richter::cli;
  JobSpec job;
  try {
    job = load_job(o.job_path);
    if (!o.format.empty()) job.format = *parse_format(o.format);
    if (const auto seed = o.seed ? o.seed : seed_from_env()) override_seeds(job, *seed);
  } catch (const InputError& e) {
    std::cerr << "richter: " << e.what() << '\n';
    return kInputError;
  }
  if (o.out_path.empty()) return run(job, mode, std::cout);
  std::ofstream out(o.out_path);
  if (!out) {
    std::cerr << "richter: cannot write " << o.out_path << '\n';
    return kInputError;
  }
  return run(job, mode, out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Isotropic finite-strain elasticity: stress evaluation and constitutive checks"};
  app.require_subcommand(1);

  JobOptions eval_opts;
  auto* eval = app.add_subcommand("eval", "evaluate stresses for every input F, then run the job's checks");
  add_job_options(eval, eval_opts, true);

  JobOptions check_opts;
  auto* check = app.add_subcommand("check", "run the job's checks only");
  add_job_options(check, check_opts, true);

  std::string catalog_format;
  auto* catalog = app.add_subcommand("catalog", "list built-in energies and stress laws");
  catalog->add_option("--format", catalog_format, "json or csv; aligned text when omitted")
      ->check(CLI::IsMember({"json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*eval) return execute(eval_opts, richter::cli::Mode::Eval);
    if (*check) return execute(check_opts, richter::cli::Mode::Check);
    richter::cli::write_catalog(std::cout, richter::cli::parse_format(catalog_format));
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "richter: " << e.what() << '\n';
    return kInputError;
  }
}
