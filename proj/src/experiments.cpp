#include "decolab/experiments.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "decolab/hilbert.hpp"
#include "decolab/rng.hpp"

namespace decolab::experiments {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::pair<Complex, Complex> unit_amplitudes(const ScenarioConfig& config) {
  const double total = std::norm(config.c_plus) + std::norm(config.c_minus);
  const double scale = 1.0 / std::sqrt(total);
  return {config.c_plus * scale, config.c_minus * scale};
}

ScenarioReport run_scenario(const ScenarioConfig& config, Scenario scenario) {
  ScenarioConfig local = config;
  local.scenario = scenario;
  local.validate();

  const PointerModel model = local.make_model(local.n_particles);
  const auto [cp, cm] = unit_amplitudes(local);

  OverlapReport overlap = decoherence::pointer_overlap(model);
  DensityMatrix reduced = decoherence::reduced_system_density(cp, cm, model);
  const double purity = reduced.purity();

  std::optional<double> deviation;
  if (model.dense_dim()) {
    const StateVector psi = decoherence::premeasure(cp, cm, model);
    const DensityMatrix rho = hilbert::outer_product(psi);
    const std::size_t keep[] = {0};
    const DensityMatrix traced = hilbert::partial_trace(rho, keep);
    deviation = max_entry_distance(reduced, traced);
  }

  const bool mixed_limit = overlap.magnitude() < kMixedStateOverlap;
  if (mixed_limit) {
    // In this regime the reduced state must be diagonal up to the same scale.
    const double offdiag = std::abs(reduced.at(0, 1));
    if (offdiag > std::abs(cp) * std::abs(cm) * kMixedStateOverlap) {
      throw std::runtime_error("reduced state inconsistent with the mixed-state limit");
    }
  }

  const bool qubit = scenario == Scenario::qubit_measurement;
  return ScenarioReport{
      .scenario = scenario,
      .outcome_labels = qubit ? std::array<std::string, 2>{"+", "-"}
                              : std::array<std::string, 2>{"x1", "x2"},
      .environment_label = qubit ? "M" : "E",
      .reduced = std::move(reduced),
      .overlap = std::move(overlap),
      .purity = purity,
      .dense_max_deviation = deviation,
      .dense_analytic_agreement = !deviation || *deviation <= kStructuralTol,
      .mixed_state_limit = mixed_limit,
  };
}

}  // namespace

std::string scenario_name(Scenario s) {
  return s == Scenario::qubit_measurement ? "qubit_measurement"
                                          : "macroscopic_superposition";
}

Scenario scenario_from_name(const std::string& name) {
  if (name == "qubit_measurement") return Scenario::qubit_measurement;
  if (name == "macroscopic_superposition") return Scenario::macroscopic_superposition;
  throw std::invalid_argument("unknown scenario: " + name);
}

void ScenarioConfig::validate() const {
  if (n_particles < 1) {
    throw std::invalid_argument("n must be a positive integer");
  }
  if (!(theta >= 0.0 && theta <= kPi)) {
    throw std::invalid_argument("theta must lie in [0, pi] radians");
  }
  if (cos_theta && !(*cos_theta >= -1.0 && *cos_theta <= 1.0)) {
    throw std::invalid_argument("cos(theta) must lie in [-1, 1]");
  }
  const double total = std::norm(c_plus) + std::norm(c_minus);
  if (std::abs(total - 1.0) > kSpectralTol) {
    throw std::invalid_argument(
        "branch amplitudes must satisfy |c+|^2 + |c-|^2 = 1 within 1e-8");
  }
  if (n_sweep) {
    if (n_sweep->first < 1 || n_sweep->second < n_sweep->first) {
      throw std::invalid_argument("n sweep must be an ascending range starting at 1 or above");
    }
  }
  if (trials < 1) {
    throw std::invalid_argument("trials must be a positive integer");
  }
}

PointerModel ScenarioConfig::make_model(std::size_t n) const {
  if (cos_theta) return PointerModel::from_cos_theta(n, *cos_theta);
  return PointerModel::symmetric(n, theta);
}

double reduced_purity(Complex c_plus, Complex c_minus, double overlap_magnitude) {
  const double total = std::norm(c_plus) + std::norm(c_minus);
  const double p = std::norm(c_plus) / total;
  const double q = std::norm(c_minus) / total;
  return p * p + q * q + 2.0 * p * q * overlap_magnitude * overlap_magnitude;
}

ScenarioReport run_qubit_measurement(const ScenarioConfig& config) {
  return run_scenario(config, Scenario::qubit_measurement);
}

ScenarioReport run_macroscopic_superposition(const ScenarioConfig& config) {
  return run_scenario(config, Scenario::macroscopic_superposition);
}

std::vector<CurvePoint> decoherence_curve(const ScenarioConfig& config) {
  ScenarioConfig local = config;
  if (!local.n_sweep) {
    throw std::invalid_argument("decoherence_curve requires an n sweep range");
  }
  local.validate();

  // |c+||c-| from the probability ratios, consistent with the reduced-state
  // off-diagonal.
  const double total = std::norm(local.c_plus) + std::norm(local.c_minus);
  const double weight =
      std::sqrt((std::norm(local.c_plus) / total) * (std::norm(local.c_minus) / total));
  const auto first = static_cast<std::int64_t>(local.n_sweep->first);
  const auto last = static_cast<std::int64_t>(local.n_sweep->second);
  std::vector<CurvePoint> points(static_cast<std::size_t>(last - first + 1));

  // Points are independent; slot-indexed writes keep the output order fixed
  // by the config.
#pragma omp parallel for schedule(static) if (points.size() >= 32)
  for (std::int64_t n = first; n <= last; ++n) {
    const PointerModel model = local.make_model(static_cast<std::size_t>(n));
    const OverlapReport overlap = decoherence::pointer_overlap(model);
    const double magnitude = overlap.magnitude();
    points[static_cast<std::size_t>(n - first)] = CurvePoint{
        .n = static_cast<std::size_t>(n),
        .overlap_magnitude = magnitude,
        .offdiag_magnitude = weight * magnitude,
        .purity = reduced_purity(local.c_plus, local.c_minus, magnitude),
        .log_overlap = overlap.log_magnitude,
    };
  }
  return points;
}

SampleStats born_sample(const ScenarioConfig& config) {
  config.validate();
  const double total = std::norm(config.c_plus) + std::norm(config.c_minus);
  const double expected = std::norm(config.c_plus) / total;
  const CounterRng rng{config.seed};

  const auto trials = static_cast<std::int64_t>(config.trials);
  std::int64_t count = 0;
#pragma omp parallel for schedule(static) reduction(+ : count) if (trials >= 4096)
  for (std::int64_t i = 0; i < trials; ++i) {
    if (rng.uniform(static_cast<std::uint64_t>(i)) < expected) ++count;
  }

  const double frequency = static_cast<double>(count) / static_cast<double>(config.trials);
  double z = 0.0;
  if (expected > 0.0 && expected < 1.0) {
    z = (frequency - expected) /
        std::sqrt(expected * (1.0 - expected) / static_cast<double>(config.trials));
  }
  return SampleStats{
      .trials = config.trials,
      .count_plus = static_cast<std::size_t>(count),
      .frequency_plus = frequency,
      .expected = expected,
      .z_score = z,
  };
}

}  // namespace decolab::experiments
