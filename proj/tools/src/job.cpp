#include "richter/cli/job.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace richter::cli {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw InputError(path + ": " + message);
}

void require_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
  if (!obj.is_object()) fail(path, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) fail(path, "unknown field '" + key + "'");
  }
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

std::uint64_t unsigned_number(const json& v, const std::string& path) {
  if (!v.is_number_unsigned()) fail(path, "expected a non-negative integer");
  return v.get<std::uint64_t>();
}

int positive_int(const json& v, const std::string& path) {
  const std::uint64_t n = unsigned_number(v, path);
  if (n == 0 || n > 100000000) fail(path, "expected a positive integer");
  return static_cast<int>(n);
}

Mat3 matrix(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 9) fail(path, "expected an array of 9 numbers (row-major 3x3)");
  std::array<double, 9> a{};
  for (std::size_t i = 0; i < 9; ++i) a[i] = number(v[i], path + "/" + std::to_string(i));
  return Mat3(a);
}

// c = sum coef * x0^p0 * x1^p1 * x2^p2 over [coef, p0, p1, p2] terms, or a constant.
CoefficientFn polynomial(const json& v, const std::string& path) {
  if (v.is_number()) {
    const double c = v.get<double>();
    return [c](const Coords&, double) { return c; };
  }
  if (!v.is_array()) fail(path, "expected a number or a list of [coef, p1, p2, p3] terms");
  std::vector<std::array<double, 4>> terms;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string tp = path + "/" + std::to_string(i);
    if (!v[i].is_array() || v[i].size() != 4) fail(tp, "expected [coef, p1, p2, p3]");
    std::array<double, 4> t{};
    t[0] = number(v[i][0], tp + "/0");
    for (int k = 1; k < 4; ++k) {
      if (!v[i][k].is_number_integer()) fail(tp + "/" + std::to_string(k), "powers must be integers");
      t[k] = v[i][k].get<double>();
    }
    terms.push_back(t);
  }
  return [terms](const Coords& x, double) {
    double sum = 0.0;
    for (const auto& t : terms) sum += t[0] * std::pow(x[0], t[1]) * std::pow(x[1], t[2]) * std::pow(x[2], t[3]);
    return sum;
  };
}

ModelSpec coefficient_model(const json& m) {
  require_keys(m, "/model", {"name", "basis", "c1", "c2", "c3"});
  CoefficientForm form;
  form.name = m.contains("name") ? m["name"].get<std::string>() : "CoefficientForm";
  const std::string basis = m["basis"].is_string() ? m["basis"].get<std::string>() : "";
  if (basis == "stretch") {
    form.basis = Basis::Stretch;
  } else if (basis == "log") {
    form.basis = Basis::Log;
  } else {
    fail("/model/basis", "expected \"stretch\" or \"log\"");
  }
  for (const char* c : {"c1", "c2", "c3"}) {
    if (!m.contains(c)) fail("/model", std::string("missing '") + c + "'");
  }
  form.c1 = polynomial(m["c1"], "/model/c1");
  form.c2 = polynomial(m["c2"], "/model/c2");
  form.c3 = polynomial(m["c3"], "/model/c3");
  ModelSpec spec{form.name, form, std::nullopt, std::nullopt};
  if (form.basis == Basis::Stretch) spec.stretch_coefficients = form;
  return spec;
}

ModelSpec catalog_model(const json& m) {
  require_keys(m, "/model", {"name", "parameters", "coordinates", "shield", "rebase_j1"});
  if (!m.contains("name") || !m["name"].is_string()) fail("/model/name", "expected a model name");
  const std::string name = m["name"].get<std::string>();
  std::map<std::string, double> params;
  if (m.contains("parameters")) {
    if (!m["parameters"].is_object()) fail("/model/parameters", "expected an object");
    for (const auto& [key, value] : m["parameters"].items()) params[key] = number(value, "/model/parameters/" + key);
  }
  StressLaw law = HookeLinear{};
  try {
    law = models::make_law(name, params);
  } catch (const std::invalid_argument& e) {
    fail("/model", e.what());
  }

  ModelSpec spec{name, law, std::nullopt, std::nullopt};
  if (const auto* e = std::get_if<FromEnergy>(&law)) {
    spec.energy = e->model;
  } else if (const auto* h = std::get_if<HenckyLog>(&law)) {
    spec.energy = models::hencky_quadratic(h->lambda, h->mu);
  } else if (const auto* k = std::get_if<HookeLinear>(&law)) {
    spec.stretch_coefficients = models::non_integrable_hooke(k->lambda, k->mu);
  } else if (const auto* c = std::get_if<CoefficientForm>(&law)) {
    if (c->basis == Basis::Stretch) spec.stretch_coefficients = *c;
  }

  const bool transforms = m.contains("coordinates") || m.contains("shield") || m.contains("rebase_j1");
  if (transforms && !spec.energy) fail("/model", "'" + name + "' is a stress law; only energies can be transformed");
  if (m.contains("coordinates")) {
    const auto c = m["coordinates"].is_string() ? parse_coordinates(m["coordinates"].get<std::string>()) : std::nullopt;
    if (!c) fail("/model/coordinates", "expected JKL, JYZ or I123");
    spec.energy = convert_model(*spec.energy, *c);
  }
  if (m.contains("shield")) {
    if (!m["shield"].is_boolean()) fail("/model/shield", "expected true or false");
    if (m["shield"].get<bool>()) {
      spec.energy = shield_transform(*spec.energy);
      spec.label = "Shield(" + spec.label + ")";
    }
  }
  if (m.contains("rebase_j1")) {
    const double j1 = number(m["rebase_j1"], "/model/rebase_j1");
    EnergyModel base = *spec.energy;
    if (base.coordinates() != Coordinates::JYZ) base = convert_model(base, Coordinates::JYZ);
    spec.energy = rebase_energy(base, j1);
    spec.label = spec.energy->name();
  }
  if (transforms) spec.law = FromEnergy{*spec.energy};
  if (spec.energy) spec.stretch_coefficients = verification::stretch_coefficients(*spec.energy);
  return spec;
}

CheckRequest check_request(const json& v, const std::string& path, std::optional<std::uint64_t> job_seed) {
  CheckRequest req;
  if (job_seed) req.config.seed = *job_seed;
  if (v.is_string()) {
    req.name = v.get<std::string>();
  } else {
    require_keys(v, path, {"name", "trials", "seed", "segments", "N", "fd_step", "mixed_step", "mean_stress_step",
                           "tolerance"});
    if (!v.contains("name") || !v["name"].is_string()) fail(path + "/name", "expected a check name");
    req.name = v["name"].get<std::string>();
    if (v.contains("trials")) req.config.trials = positive_int(v["trials"], path + "/trials");
    if (v.contains("seed")) req.config.seed = unsigned_number(v["seed"], path + "/seed");
    for (const char* key : {"segments", "N"}) {
      if (!v.contains(key)) continue;
      req.config.segments = positive_int(v[key], path + "/" + key);
      if (req.config.segments % 2 != 0) fail(path + "/" + key, "segment count must be even");
    }
    if (v.contains("fd_step")) req.config.fd_step = number(v["fd_step"], path + "/fd_step");
    if (v.contains("mixed_step")) req.config.mixed_step = number(v["mixed_step"], path + "/mixed_step");
    if (v.contains("mean_stress_step")) {
      req.config.mean_stress_step = number(v["mean_stress_step"], path + "/mean_stress_step");
    }
    if (v.contains("tolerance")) req.config.tolerance = number(v["tolerance"], path + "/tolerance");
  }
  const auto& names = check_names();
  if (std::find(names.begin(), names.end(), req.name) == names.end()) fail(path, "unknown check '" + req.name + "'");
  return req;
}

void require_applicable(const CheckRequest& req, const ModelSpec& model, const std::string& path) {
  const bool needs_energy = req.name == "decomposability" || req.name == "mean_stress" || req.name == "inequalities";
  if (needs_energy && !model.energy) fail(path, "check '" + req.name + "' needs an energy; '" + model.label + "' has none");
  if (req.name == "integrability" && !model.stretch_coefficients) {
    fail(path, "check 'integrability' needs a stretch-basis law; '" + model.label + "' has none");
  }
}

std::pair<std::size_t, std::size_t> line_and_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

json flat(const Mat3& m) { return json(m.entries()); }
json flat(const SymTensor& s) { return json(s.to_mat().entries()); }

}  // namespace

std::optional<Format> parse_format(std::string_view text) {
  if (text == "json") return Format::Json;
  if (text == "csv") return Format::Csv;
  return std::nullopt;
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names{"hyperelasticity", "integrability", "decomposability",
                                              "mean_stress",     "inequalities",  "domain"};
  return names;
}

JobSpec parse_job(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_and_column(text, e.byte);
    throw InputError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
  }
  require_keys(doc, "/", {"model", "inputs", "theta", "seed", "checks", "output"});

  JobSpec job;
  if (!doc.contains("model")) fail("/", "missing 'model'");
  job.model = doc["model"].is_object() && doc["model"].contains("basis") ? coefficient_model(doc["model"])
                                                                          : catalog_model(doc["model"]);

  if (doc.contains("inputs")) {
    if (!doc["inputs"].is_array()) fail("/inputs", "expected a list of matrices");
    for (std::size_t i = 0; i < doc["inputs"].size(); ++i) {
      const std::string path = "/inputs/" + std::to_string(i);
      const Mat3 f = matrix(doc["inputs"][i], path);
      try {
        DeformationGradient{f};
      } catch (const SingularInput& e) {
        fail(path, std::string("record ") + std::to_string(i) + ": " + e.what());
      }
      job.inputs.push_back(f);
    }
  }
  if (doc.contains("theta")) job.theta = number(doc["theta"], "/theta");

  std::optional<std::uint64_t> seed;
  if (doc.contains("seed")) seed = unsigned_number(doc["seed"], "/seed");
  if (doc.contains("checks")) {
    if (!doc["checks"].is_array()) fail("/checks", "expected a list");
    for (std::size_t i = 0; i < doc["checks"].size(); ++i) {
      const std::string path = "/checks/" + std::to_string(i);
      CheckRequest req = check_request(doc["checks"][i], path, seed);
      require_applicable(req, job.model, path);
      job.checks.push_back(std::move(req));
    }
  }
  if (doc.contains("output")) {
    const auto f = doc["output"].is_string() ? parse_format(doc["output"].get<std::string>()) : std::nullopt;
    if (!f) fail("/output", "expected \"json\" or \"csv\"");
    job.format = *f;
  }
  return job;
}

JobSpec load_job(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path.string() + ": cannot open job file");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_job(buf.str());
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::optional<std::uint64_t> seed_from_env() {
  const char* v = std::getenv("RICHTER_SEED");
  if (v == nullptr || *v == '\0') return std::nullopt;
  char* end = nullptr;
  errno = 0;
  const unsigned long long s = std::strtoull(v, &end, 10);
  if (errno != 0 || *end != '\0' || *v == '-') throw InputError(std::string("RICHTER_SEED: not an unsigned integer: ") + v);
  return s;
}

void override_seeds(JobSpec& job, std::uint64_t seed) {
  for (CheckRequest& c : job.checks) c.config.seed = seed;
}

json state_record(std::size_t index, const Mat3& f, const StressLaw& law, double theta) {
  const StretchState s = decompose(DeformationGradient(f));
  const InvariantSet inv = invariants(s);
  const StressResult r = evaluate(law, s, theta);
  json rec{{"record", "state"},
           {"index", index},
           {"F", flat(f)},
           {"V", flat(s.V())},
           {"R", flat(s.R().matrix())},
           {"L", flat(s.L())},
           {"invariants",
            {{"I1", inv.I1}, {"I2", inv.I2}, {"I3", inv.I3}, {"j", inv.j}, {"k", inv.k}, {"l", inv.l}, {"y", inv.y}, {"z", inv.z}}},
           {"sigma", flat(r.sigma)},
           {"tau", flat(r.kirchhoff)},
           {"mean_stress", r.mean_stress},
           {"deviatoric", flat(r.deviatoric)}};
  try {
    const Representation rep = representation_solve(r.sigma, s.L());
    rec["representation"] = {{"f1", rep.f1}, {"f2", rep.f2}, {"f3", rep.f3}, {"order", rep.order}};
  } catch (const NotCoaxial& e) {
    rec["representation"] = nullptr;
    rec["representation_error"] = e.what();
  }
  return rec;
}

json error_record(std::size_t index, const std::string& message) {
  return {{"record", "error"}, {"index", index}, {"error", message}};
}

json check_record(const verification::CheckReport& report) {
  json rec{{"record", "check"},
           {"name", report.name},
           {"status", verification::to_string(report.status)},
           {"passed", report.passed},
           {"residual", report.residual},
           {"tolerance", report.tolerance}};
  rec["seed"] = report.seed ? json(*report.seed) : json(nullptr);
  rec["witness"] = report.witness ? json::parse(*report.witness) : json(nullptr);
  return rec;
}

std::vector<verification::CheckReport> run_checks(const JobSpec& job) {
  namespace v = verification;
  std::vector<v::CheckReport> out;
  for (const CheckRequest& req : job.checks) {
    const v::CheckConfig& c = req.config;
    if (req.name == "hyperelasticity") {
      out.push_back(v::hyperelasticity_check(job.model.law, c, job.theta));
    } else if (req.name == "integrability") {
      out.push_back(v::integrability_check(*job.model.stretch_coefficients, c));
    } else if (req.name == "decomposability") {
      out.push_back(v::decomposability_check(*job.model.energy, c));
    } else if (req.name == "mean_stress") {
      out.push_back(v::mean_stress_check(*job.model.energy, c));
    } else if (req.name == "inequalities") {
      for (auto& r : v::inequality_suite(*job.model.energy, c, job.theta)) out.push_back(std::move(r));
    } else if (req.name == "domain") {
      std::vector<StretchState> states;
      for (const Mat3& f : job.inputs) states.push_back(decompose(DeformationGradient(f)));
      out.push_back(v::domain_check(states));
    }
  }
  return out;
}

namespace {

const char* kComponents[9] = {"11", "12", "13", "21", "22", "23", "31", "32", "33"};

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void csv_header(std::ostream& out) {
  out << "index";
  for (const char* t : {"F", "V", "R", "L"})
    for (const char* c : kComponents) out << ',' << t << '_' << c;
  for (const char* n : {"I1", "I2", "I3", "j", "k", "l", "y", "z"}) out << ',' << n;
  for (const char* t : {"sigma", "tau"})
    for (const char* c : kComponents) out << ',' << t << '_' << c;
  out << ",mean_stress";
  for (const char* c : kComponents) out << ",deviatoric_" << c;
  out << ",f1,f2,f3,order,error\n";
}

void csv_row(std::ostream& out, const json& rec) {
  out << rec["index"].get<std::size_t>();
  if (rec["record"] == "error") {
    for (int i = 0; i < 4 * 9 + 8 + 2 * 9 + 1 + 9 + 4; ++i) out << ',';
    std::string msg = rec["error"].get<std::string>();
    std::replace(msg.begin(), msg.end(), '"', '\'');
    out << ",\"" << msg << "\"\n";
    return;
  }
  auto cells = [&](const json& arr) {
    for (const auto& v : arr) out << ',' << (v.is_number() ? g17(v.get<double>()) : "");
  };
  for (const char* t : {"F", "V", "R", "L"}) cells(rec[t]);
  for (const char* n : {"I1", "I2", "I3", "j", "k", "l", "y", "z"}) out << ',' << g17(rec["invariants"][n].get<double>());
  cells(rec["sigma"]);
  cells(rec["tau"]);
  out << ',' << g17(rec["mean_stress"].get<double>());
  cells(rec["deviatoric"]);
  const json& rep = rec["representation"];
  if (rep.is_null()) {
    out << ",,,,";
  } else {
    out << ',' << g17(rep["f1"].get<double>()) << ',' << g17(rep["f2"].get<double>()) << ','
        << g17(rep["f3"].get<double>()) << ',' << rep["order"].get<int>();
  }
  out << ",\n";
}

void csv_checks(std::ostream& out, const std::vector<verification::CheckReport>& reports) {
  out << "check,status,passed,residual,tolerance,seed\n";
  for (const auto& r : reports) {
    out << r.name << ',' << verification::to_string(r.status) << ',' << (r.passed ? "true" : "false") << ','
        << g17(r.residual) << ',' << g17(r.tolerance) << ',';
    if (r.seed) out << *r.seed;
    out << '\n';
  }
}

}  // namespace

int run(const JobSpec& job, Mode mode, std::ostream& out) {
  bool ok = true;
  std::vector<json> records;
  if (mode == Mode::Eval) {
    for (std::size_t i = 0; i < job.inputs.size(); ++i) {
      try {
        records.push_back(state_record(i, job.inputs[i], job.model.law, job.theta));
      } catch (const std::exception& e) {
        records.push_back(error_record(i, e.what()));
        ok = false;
      }
    }
  }
  const auto reports = run_checks(job);
  for (const auto& r : reports) ok = ok && r.passed;

  if (job.format == Format::Csv) {
    if (mode == Mode::Eval) {
      csv_header(out);
      for (const json& rec : records) csv_row(out, rec);
    }
    if (!reports.empty()) {
      if (mode == Mode::Eval) out << '\n';
      csv_checks(out, reports);
    }
  } else {
    for (const json& rec : records) out << rec.dump() << '\n';
    for (const auto& r : reports) out << check_record(r).dump() << '\n';
  }
  out.flush();
  return ok ? 0 : 1;
}

void write_catalog(std::ostream& out, std::optional<Format> format) {
  if (format == Format::Csv) out << "name,kind,coordinates,parameters,anchor\n";
  for (const auto& e : models::catalog()) {
    json params = json::object();
    std::string defaults;
    for (const Parameter& p : e.defaults) {
      params[p.name] = p.value;
      defaults += (defaults.empty() ? "" : " ") + p.name + "=" + g17(p.value);
    }
    if (format == Format::Json) {
      out << json{{"name", e.name},        {"kind", e.kind},     {"coordinates", e.coordinates},
                  {"parameters", params}, {"anchor", e.anchor}, {"description", e.description}}
                 .dump()
          << '\n';
    } else if (format == Format::Csv) {
      out << e.name << ',' << e.kind << ',' << e.coordinates << ',' << defaults << ",\"" << e.anchor << "\"\n";
    } else {
      char line[160];
      std::snprintf(line, sizeof line, "%-26s %-6s %-4s %-20s ", e.name.c_str(), e.kind.c_str(), e.coordinates.c_str(),
                    defaults.c_str());
      out << line << e.anchor << '\n';
    }
  }
}

}  // namespace richter::cli
