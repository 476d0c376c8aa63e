#include "decolab/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "decolab/version.hpp"

namespace decolab::io {

using nlohmann::json;
using experiments::CurvePoint;
using experiments::SampleStats;
using experiments::ScenarioConfig;
using experiments::ScenarioReport;

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value < 0 ? "-inf" : "inf";
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

namespace {

// Numbers stay JSON numbers; non-finite values need a string spelling since
// JSON has none.
json json_double(double value) {
  if (std::isfinite(value)) return value;
  return format_double(value);
}

json complex_to_json(Complex c) { return json::array({c.real(), c.imag()}); }

Complex complex_from_json(const json& j) {
  return Complex{j.at(0).get<double>(), j.at(1).get<double>()};
}

}  // namespace

void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& points) {
  if (points.empty()) {
    throw std::invalid_argument("curve must contain at least one point");
  }
  out << "n,overlap_magnitude,offdiag_magnitude,purity,log_overlap\n";
  for (const CurvePoint& p : points) {
    out << p.n << ',' << format_double(p.overlap_magnitude) << ','
        << format_double(p.offdiag_magnitude) << ',' << format_double(p.purity) << ','
        << format_double(p.log_overlap) << '\n';
  }
}

void write_report_csv(std::ostream& out, const ScenarioReport& report) {
  out << "scenario,n,rho_00,rho_01_re,rho_01_im,rho_11,purity,"
         "overlap_re,overlap_im,overlap_magnitude,log_overlap,"
         "dense_max_deviation,mixed_state_limit\n";
  out << experiments::scenario_name(report.scenario) << ','
      << report.overlap.per_particle_factors.size() << ','
      << format_double(report.reduced.at(0, 0).real()) << ','
      << format_double(report.reduced.at(0, 1).real()) << ','
      << format_double(report.reduced.at(0, 1).imag()) << ','
      << format_double(report.reduced.at(1, 1).real()) << ','
      << format_double(report.purity) << ','
      << format_double(report.overlap.overlap.real()) << ','
      << format_double(report.overlap.overlap.imag()) << ','
      << format_double(report.overlap.magnitude()) << ','
      << format_double(report.overlap.log_magnitude) << ',';
  if (report.dense_max_deviation) out << format_double(*report.dense_max_deviation);
  out << ',' << (report.mixed_state_limit ? 1 : 0) << '\n';
}

void write_sample_csv(std::ostream& out, const SampleStats& stats) {
  out << "trials,count_plus,frequency_plus,expected,z_score\n";
  out << stats.trials << ',' << stats.count_plus << ','
      << format_double(stats.frequency_plus) << ',' << format_double(stats.expected)
      << ',' << format_double(stats.z_score) << '\n';
}

json config_to_json(const ScenarioConfig& config) {
  json j{
      {"scenario", experiments::scenario_name(config.scenario)},
      {"n", config.n_particles},
      {"theta", config.theta},
      {"cos_theta", config.cos_theta ? json(*config.cos_theta) : json(nullptr)},
      {"c_plus", complex_to_json(config.c_plus)},
      {"c_minus", complex_to_json(config.c_minus)},
      {"trials", config.trials},
      {"seed", config.seed},
  };
  if (config.n_sweep) {
    j["n_min"] = config.n_sweep->first;
    j["n_max"] = config.n_sweep->second;
  } else {
    j["n_min"] = nullptr;
    j["n_max"] = nullptr;
  }
  return j;
}

ScenarioConfig config_from_json(const json& j) {
  ScenarioConfig config;
  config.scenario = experiments::scenario_from_name(j.at("scenario").get<std::string>());
  config.n_particles = j.at("n").get<std::size_t>();
  config.theta = j.at("theta").get<double>();
  if (!j.at("cos_theta").is_null()) config.cos_theta = j.at("cos_theta").get<double>();
  config.c_plus = complex_from_json(j.at("c_plus"));
  config.c_minus = complex_from_json(j.at("c_minus"));
  if (!j.at("n_min").is_null() && !j.at("n_max").is_null()) {
    config.n_sweep = {j.at("n_min").get<std::size_t>(), j.at("n_max").get<std::size_t>()};
  }
  config.trials = j.at("trials").get<std::size_t>();
  config.seed = j.at("seed").get<std::uint64_t>();
  return config;
}

json curve_to_json(const std::vector<CurvePoint>& points) {
  json rows = json::array();
  for (const CurvePoint& p : points) {
    rows.push_back(json{
        {"n", p.n},
        {"overlap_magnitude", json_double(p.overlap_magnitude)},
        {"offdiag_magnitude", json_double(p.offdiag_magnitude)},
        {"purity", json_double(p.purity)},
        {"log_overlap", json_double(p.log_overlap)},
    });
  }
  return rows;
}

json report_to_json(const ScenarioReport& report) {
  json reduced = json::array();
  for (std::size_t i = 0; i < 2; ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < 2; ++k) row.push_back(complex_to_json(report.reduced.at(i, k)));
    reduced.push_back(std::move(row));
  }
  return json{
      {"scenario", experiments::scenario_name(report.scenario)},
      {"outcome_labels", report.outcome_labels},
      {"environment_label", report.environment_label},
      {"n", report.overlap.per_particle_factors.size()},
      {"reduced_density", std::move(reduced)},
      {"purity", json_double(report.purity)},
      {"overlap", complex_to_json(report.overlap.overlap)},
      {"overlap_magnitude", json_double(report.overlap.magnitude())},
      {"log_overlap", json_double(report.overlap.log_magnitude)},
      {"dense_max_deviation",
       report.dense_max_deviation ? json_double(*report.dense_max_deviation) : json(nullptr)},
      {"dense_analytic_agreement", report.dense_analytic_agreement},
      {"mixed_state_limit", report.mixed_state_limit},
  };
}

json sample_to_json(const SampleStats& stats) {
  return json{
      {"trials", stats.trials},
      {"count_plus", stats.count_plus},
      {"frequency_plus", json_double(stats.frequency_plus)},
      {"expected", json_double(stats.expected)},
      {"z_score", json_double(stats.z_score)},
      {"note",
       "outcome probabilities |c+|^2 and |c-|^2 are applied as a postulate "
       "(Born rule), not derived from the unitary dynamics"},
  };
}

json envelope(const ScenarioConfig& config, const std::string& payload_key,
              json payload) {
  return json{
      {"tool_version", kToolVersion},
      {"generated_at", utc_timestamp()},
      {"seed", config.seed},
      {"config", config_to_json(config)},
      {payload_key, std::move(payload)},
  };
}

std::string utc_timestamp() {
  std::time_t now = std::time(nullptr);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    char* end = nullptr;
    const long long parsed = std::strtoll(epoch, &end, 10);
    if (end && *end == '\0') now = static_cast<std::time_t>(parsed);
  }
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

}  // namespace decolab::io
