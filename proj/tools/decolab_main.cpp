#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "decolab/experiments.hpp"
#include "decolab/io.hpp"
#include "decolab/selftest.hpp"
#include "decolab/version.hpp"

namespace {

using decolab::Complex;
using decolab::experiments::ScenarioConfig;

struct CliOptions {
  ScenarioConfig config;
  std::string format = "json";
  std::string out_path;  // empty = standard output
  std::string c_plus = "0.7071067811865476,0";
  std::string c_minus = "0.7071067811865476,0";
  std::size_t n_min = 1;
  std::size_t n_max = 20;
  std::optional<double> cos_theta;
};

Complex parse_complex(const std::string& text) {
  std::istringstream stream(text);
  double re = 0.0, im = 0.0;
  char comma = 0;
  if (!(stream >> re)) {
    throw std::invalid_argument("expected an amplitude of the form re[,im]: " + text);
  }
  if (stream >> comma) {
    if (comma != ',' || !(stream >> im)) {
      throw std::invalid_argument("expected an amplitude of the form re[,im]: " + text);
    }
  }
  std::string leftover;
  if (stream >> leftover) {
    throw std::invalid_argument("trailing characters in amplitude: " + text);
  }
  return Complex{re, im};
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("DECOLAB_SEED")) {
    char* end = nullptr;
    const unsigned long long parsed = std::strtoull(env, &end, 10);
    if (end && *end == '\0') return parsed;
    std::cerr << "warning: ignoring non-numeric DECOLAB_SEED\n";
  }
  return 42;
}

void add_common_options(CLI::App* cmd, CliOptions& opts) {
  cmd->add_option("--n", opts.config.n_particles,
                  "Number of environment/apparatus particles N");
  auto* theta = cmd->add_option("--theta", opts.config.theta,
                                "Conditional rotation angle in radians, in [0, pi]");
  cmd->add_option("--cos-theta", opts.cos_theta,
                  "Per-particle overlap cos(theta); alternative to --theta")
      ->excludes(theta);
  cmd->add_option("--c-plus", opts.c_plus, "Branch amplitude c+ as re[,im]");
  cmd->add_option("--c-minus", opts.c_minus, "Branch amplitude c- as re[,im]");
  cmd->add_option("--seed", opts.config.seed,
                  "RNG seed (default 42, or DECOLAB_SEED when set)");
  cmd->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", opts.out_path, "Output path (default: standard output)");
}

void finalize_config(CliOptions& opts) {
  opts.config.c_plus = parse_complex(opts.c_plus);
  opts.config.c_minus = parse_complex(opts.c_minus);
  opts.config.cos_theta = opts.cos_theta;
  opts.config.validate();
}

void emit(const CliOptions& opts, const std::string& csv_text, const std::string& json_text) {
  const std::string& payload = opts.format == "csv" ? csv_text : json_text;
  if (opts.out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream file(opts.out_path, std::ios::binary);
  if (!file) {
    throw std::runtime_error("cannot open output file: " + opts.out_path);
  }
  file << payload;
  if (!file.good()) {
    throw std::runtime_error("write failed: " + opts.out_path);
  }
}

int run_scenario_command(CliOptions& opts, bool macroscopic) {
  finalize_config(opts);
  const auto report = macroscopic
                          ? decolab::experiments::run_macroscopic_superposition(opts.config)
                          : decolab::experiments::run_qubit_measurement(opts.config);
  std::ostringstream csv;
  decolab::io::write_report_csv(csv, report);
  const auto envelope =
      decolab::io::envelope(opts.config, "report", decolab::io::report_to_json(report));
  emit(opts, csv.str(), envelope.dump(2) + "\n");
  return 0;
}

int run_curve_command(CliOptions& opts) {
  opts.config.n_sweep = {{opts.n_min, opts.n_max}};
  finalize_config(opts);
  const auto points = decolab::experiments::decoherence_curve(opts.config);
  std::ostringstream csv;
  decolab::io::write_curve_csv(csv, points);
  const auto envelope =
      decolab::io::envelope(opts.config, "rows", decolab::io::curve_to_json(points));
  emit(opts, csv.str(), envelope.dump(2) + "\n");
  return 0;
}

int run_sample_command(CliOptions& opts) {
  finalize_config(opts);
  const auto stats = decolab::experiments::born_sample(opts.config);
  std::ostringstream csv;
  decolab::io::write_sample_csv(csv, stats);
  const auto envelope =
      decolab::io::envelope(opts.config, "sample", decolab::io::sample_to_json(stats));
  emit(opts, csv.str(), envelope.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decolab: pointer-state decoherence laboratory"};
  app.set_version_flag("--version", decolab::kToolVersion);
  app.require_subcommand(1);

  CliOptions opts;
  opts.config.seed = default_seed();

  auto* qubit = app.add_subcommand("qubit", "Idealized qubit measurement report");
  add_common_options(qubit, opts);

  auto* macro =
      app.add_subcommand("macro", "Macroscopic superposition decoherence report");
  add_common_options(macro, opts);

  auto* curve = app.add_subcommand("curve", "Overlap/purity curve over a range of N");
  add_common_options(curve, opts);
  curve->add_option("--n-min", opts.n_min, "Smallest environment size");
  curve->add_option("--n-max", opts.n_max, "Largest environment size");

  auto* sample = app.add_subcommand("sample", "Seeded single-shot outcome sampling");
  add_common_options(sample, opts);
  sample->add_option("--trials", opts.config.trials, "Number of independent outcomes");

  auto* selftest = app.add_subcommand("selftest", "Run the built-in invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the message and usage hint
    return 2;
  }

  try {
    if (selftest->parsed()) {
      return decolab::run_selftest(std::cout) ? 0 : 1;
    }
    if (qubit->parsed()) return run_scenario_command(opts, false);
    if (macro->parsed()) return run_scenario_command(opts, true);
    if (curve->parsed()) return run_curve_command(opts);
    if (sample->parsed()) return run_sample_command(opts);
  } catch (const std::invalid_argument& e) {
    std::cerr << "argument error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
