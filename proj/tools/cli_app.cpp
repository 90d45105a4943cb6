#include "cli_app.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "confounder_lab/effects.hpp"
#include "confounder_lab/errors.hpp"
#include "confounder_lab/estimate.hpp"
#include "confounder_lab/io.hpp"
#include "confounder_lab/mc.hpp"
#include "confounder_lab/model.hpp"
#include "confounder_lab/monotonicity.hpp"
#include "confounder_lab/suites.hpp"

namespace confounder_lab::cli {

using nlohmann::json;

namespace {

json envelope() { return {{"schema", kSchemaVersion}}; }

void print_json(std::ostream& out, json doc) {
  out << doc.dump(2) << '\n';
}

int report_error(std::ostream& err, ErrorKind kind, const std::string& message) {
  json doc = envelope();
  doc["error"] = to_string(kind);
  doc["message"] = message;
  err << doc.dump() << '\n';
  return kind == ErrorKind::Io ? kExitIo : kExitInput;
}

std::vector<Observation> load_observations(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path);
  return read_observations_csv(in);
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot open " + path + " for writing");
  out << contents;
  out.flush();
  if (!out) throw Error(ErrorKind::Io, "failed writing " + path);
}

SamplingScheme parse_scheme(const std::string& name) {
  return name == "uniform" ? SamplingScheme::IidUniform : SamplingScheme::NormalizedWeights;
}

struct AnalyzeOptions {
  std::string params_path;
  double tol = kConstantTol;
};

int cmd_analyze(const AnalyzeOptions& o, std::ostream& out) {
  const GraphParams params = params_from_json(read_json_file(o.params_path));
  validate(params);
  const ProxyParams proxy = as_proxy(params);
  const EffectSummary summary = summarize(proxy);

  json doc = envelope();
  doc["graph"] = std::holds_alternative<ProxyParams>(params) ? "proxy" : "driver";
  doc["params"] = to_json(params);
  if (std::holds_alternative<DriverParams>(params)) doc["proxy_params"] = to_json(proxy);
  doc["effects"] = to_json(summary);
  doc["monotonicity"] = to_json(report(proxy, o.tol));
  doc["in_between"] = in_between(summary, o.tol);
  doc["bounds"] = to_json(bounds_verdict(proxy));
  doc["tol"] = o.tol;
  print_json(out, doc);
  return kExitOk;
}

struct SimulateOptions {
  std::uint64_t n = 10000;
  std::uint64_t seed = kDefaultSeed;
  std::string out_csv;
  std::string summary_json;
  SamplingScheme scheme = SamplingScheme::NormalizedWeights;
};

int cmd_simulate(const SimulateOptions& o, std::ostream& out) {
  ExperimentOptions eo;
  eo.scheme = o.scheme;
  const ExperimentResult result = run_experiment(o.n, o.seed, eo);

  json doc = envelope();
  doc["summary"] = to_json(result.summary);
  try {
    doc["figure_stats"] = to_json(figure_stats(result.records));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::EmptyInput) throw;
    doc["figure_stats"] = nullptr;
  }

  if (!o.out_csv.empty()) {
    std::ostringstream csv;
    write_runs_csv(csv, result.records);
    write_file(o.out_csv, csv.str());
  }
  if (!o.summary_json.empty()) {
    write_file(o.summary_json, doc.dump(2) + "\n");
  } else {
    print_json(out, doc);
  }
  return kExitOk;
}

struct VerifyOptions {
  std::string suite;
  std::uint64_t n = 10000;
  std::uint64_t seed = kDefaultSeed;
  SamplingScheme scheme = SamplingScheme::NormalizedWeights;
  bool invert_checks = false;
};

int cmd_verify(const VerifyOptions& o, std::ostream& out) {
  const auto suite = parse_suite(o.suite);
  if (!suite) throw Error(ErrorKind::InvalidInput, "unknown suite '" + o.suite + "'");
  SuiteOptions so;
  so.scheme = o.scheme;
  so.invert_checks = o.invert_checks;
  const SuiteResult r = run_suite(*suite, o.n, o.seed, so);

  json doc = envelope();
  doc["suite"] = to_string(r.suite);
  doc["seed"] = o.seed;
  doc["n_draws"] = r.n_draws;
  doc["n_applicable"] = r.n_applicable;
  doc["n_violations"] = r.n_violations;
  doc["passed"] = r.passed();
  if (r.crude_ge_obs_fraction) doc["crude_ge_obs_fraction"] = *r.crude_ge_obs_fraction;
  if (r.first_counterexample) {
    doc["first_counterexample"] = to_json(*r.first_counterexample);
    doc["first_failure"] = r.first_failure;
  }
  print_json(out, doc);
  return r.passed() ? kExitOk : kExitCheckFailed;
}

int cmd_estimate(const std::string& data_path, std::ostream& out) {
  const auto rows = load_observations(data_path);
  const PopulationEstimates est = estimate_population(ingest(rows));
  const EmpiricalRds rds = empirical_rds(est);

  json doc = envelope();
  doc["estimates"] = to_json(est);
  doc["rds"] = to_json(rds);
  doc["y_in_d"] = to_string(y_direction(est));
  doc["a_in_d"] = to_string(a_direction(est));
  doc["verdict"] = to_string(sign_inference(est, rds));
  print_json(out, doc);
  return kExitOk;
}

int cmd_transport(const std::string& pop1_path, const std::string& pop2_path, std::ostream& out) {
  const PopulationEstimates pop1 = estimate_population(ingest(load_observations(pop1_path)));
  const PopulationEstimates pop2 = estimate_population(ingest(load_observations(pop2_path)));

  json doc = envelope();
  doc["pop1"] = to_json(pop1);
  doc["pop2"] = to_json(pop2);
  doc["target"] = to_json(transport(pop1, pop2));
  doc["verdict"] = doc["target"]["verdict"];
  print_json(out, doc);
  return kExitOk;
}

struct GenerateOptions {
  std::string params_path;
  std::uint64_t n = 1000;
  std::uint64_t seed = kDefaultSeed;
  std::string out_csv;
};

int cmd_generate(const GenerateOptions& o, std::ostream& out) {
  const GraphParams params = params_from_json(read_json_file(o.params_path));
  const auto rows = generate(params, o.n, o.seed);
  if (o.out_csv.empty()) {
    write_observations_csv(out, rows);
  } else {
    std::ostringstream csv;
    write_observations_csv(csv, rows);
    write_file(o.out_csv, csv.str());
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Effect measures under a mismeasured or driven binary confounder"};
  app.require_subcommand(1);

  const std::vector<std::string> scheme_names{"normalized", "uniform"};
  std::string simulate_scheme = "normalized", verify_scheme = "normalized";

  AnalyzeOptions analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Effect summary for one parameter file");
  analyze_cmd->add_option("--params", analyze.params_path, "Parameter JSON")->required();
  analyze_cmd->add_option("--tol", analyze.tol, "Tolerance for directions and in-between");

  SimulateOptions simulate;
  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo study over random proxy graphs");
  simulate_cmd->add_option("--n", simulate.n, "Number of runs")->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--seed", simulate.seed, "Master seed");
  simulate_cmd->add_option("--out", simulate.out_csv, "Per-run CSV output");
  simulate_cmd->add_option("--summary", simulate.summary_json, "Summary JSON (default stdout)");
  simulate_cmd->add_option("--scheme", simulate_scheme, "Parameter sampling scheme")
      ->check(CLI::IsMember(scheme_names));

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run a randomized property suite");
  verify_cmd->add_option("--suite", verify.suite,
                         "thm1|cor1|thm2|thm3|thm4|thm5|driver|bounds")
      ->required();
  verify_cmd->add_option("--n", verify.n, "Number of draws")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", verify.seed, "Master seed");
  verify_cmd->add_option("--scheme", verify_scheme, "Parameter sampling scheme")
      ->check(CLI::IsMember(scheme_names));
  verify_cmd->add_flag("--invert-checks", verify.invert_checks)->group("");

  std::string data_path;
  auto* estimate_cmd = app.add_subcommand("estimate", "Plug-in estimates from an a,d,y CSV");
  estimate_cmd->add_option("--data", data_path, "Data CSV")->required();

  std::string pop1_path, pop2_path;
  auto* transport_cmd =
      app.add_subcommand("transport", "Combine two source populations for a third");
  transport_cmd->add_option("--pop1", pop1_path, "Population sharing p(Y|A,C)")->required();
  transport_cmd->add_option("--pop2", pop2_path, "Population sharing p(A|C)")->required();

  GenerateOptions gen;
  auto* generate_cmd = app.add_subcommand("generate", "Synthetic a,d,y rows from parameters");
  generate_cmd->add_option("--params", gen.params_path, "Parameter JSON")->required();
  generate_cmd->add_option("--n", gen.n, "Number of rows")->check(CLI::PositiveNumber);
  generate_cmd->add_option("--seed", gen.seed, "Seed");
  generate_cmd->add_option("--out", gen.out_csv, "Output CSV (default stdout)");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (app.exit(e, out, err) == 0) return kExitOk;  // --help
    return report_error(err, ErrorKind::InvalidInput, e.what());
  }

  simulate.scheme = parse_scheme(simulate_scheme);
  verify.scheme = parse_scheme(verify_scheme);

  try {
    if (*analyze_cmd) return cmd_analyze(analyze, out);
    if (*simulate_cmd) return cmd_simulate(simulate, out);
    if (*verify_cmd) return cmd_verify(verify, out);
    if (*estimate_cmd) return cmd_estimate(data_path, out);
    if (*transport_cmd) return cmd_transport(pop1_path, pop2_path, out);
    if (*generate_cmd) return cmd_generate(gen, out);
  } catch (const Error& e) {
    return report_error(err, e.kind(), e.what());
  } catch (const nlohmann::json::exception& e) {
    return report_error(err, ErrorKind::InvalidInput, e.what());
  }
  return kExitInput;
}

}  // namespace confounder_lab::cli
