#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "decolab/decoherence.hpp"
#include "decolab/types.hpp"

namespace decolab::experiments {

enum class Scenario { qubit_measurement, macroscopic_superposition };

std::string scenario_name(Scenario s);
Scenario scenario_from_name(const std::string& name);

/// Inputs for one experiment run. theta parameterizes the symmetric pointer
/// model; when cos_theta is set it is used verbatim as the decay base instead
/// (the CLI's --cos-theta convenience).
struct ScenarioConfig {
  Scenario scenario = Scenario::qubit_measurement;
  std::size_t n_particles = 10;
  double theta = 1.0471975511965976;  // pi/3
  std::optional<double> cos_theta;
  Complex c_plus{0.7071067811865476, 0.0};
  Complex c_minus{0.7071067811865476, 0.0};
  std::optional<std::pair<std::size_t, std::size_t>> n_sweep;  // inclusive, ascending
  std::size_t trials = 10000;
  std::uint64_t seed = 42;

  // Throws std::invalid_argument naming the violated constraint.
  void validate() const;

  PointerModel make_model(std::size_t n) const;
};

/// One row of a decoherence curve.
struct CurvePoint {
  std::size_t n;
  double overlap_magnitude;
  double offdiag_magnitude;
  double purity;
  double log_overlap;
};

/// Outcome frequencies from repeated single-shot sampling.
struct SampleStats {
  std::size_t trials;
  std::size_t count_plus;
  double frequency_plus;
  double expected;  // |c+|^2
  double z_score;   // 0 when the expected frequency is degenerate (0 or 1)
};

/// Result of one measurement/superposition scenario.
struct ScenarioReport {
  Scenario scenario;
  std::array<std::string, 2> outcome_labels;  // {"+","-"} or {"x1","x2"}
  std::string environment_label;              // "M" or "E"
  DensityMatrix reduced;                      // 2x2
  OverlapReport overlap;
  double purity;
  // Dense-path cross-check, present when the premeasured space fits the dense
  // cap: max entrywise |analytic - partial_trace(outer(premeasure))|.
  std::optional<double> dense_max_deviation;
  bool dense_analytic_agreement;  // deviation <= kStructuralTol (true when no check ran)
  bool mixed_state_limit;         // overlap magnitude < kMixedStateOverlap
};

// Off-diagonals below this overlap magnitude count as the fully mixed limit.
inline constexpr double kMixedStateOverlap = 1e-6;

// Closed-form purity of the reduced qubit state:
//   |c+|^4 + |c-|^4 + 2 |c+|^2 |c-|^2 r^2   with r the overlap magnitude.
double reduced_purity(Complex c_plus, Complex c_minus, double overlap_magnitude);

// Idealized qubit measurement: reduced system state, branch overlap, purity,
// and the dense cross-check when it fits.
ScenarioReport run_qubit_measurement(const ScenarioConfig& config);

// Macroscopic superposition decohered by an environment: the same map with
// position labels x1/x2 and environment branches E1/E2.
ScenarioReport run_macroscopic_superposition(const ScenarioConfig& config);

// One CurvePoint per environment size in config.n_sweep, ascending.
std::vector<CurvePoint> decoherence_curve(const ScenarioConfig& config);

// `trials` independent single-shot outcomes, '+' with probability |c+|^2.
// Outcome i is drawn from the counter-derived substream i of config.seed, so
// the result is reproducible and independent of evaluation order. The
// probability assignment itself is postulated (Born rule), not derived.
SampleStats born_sample(const ScenarioConfig& config);

}  // namespace decolab::experiments
