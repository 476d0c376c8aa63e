#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "decolab/experiments.hpp"

namespace decolab::io {

// %.17g rendering; non-finite values become the literals -inf / inf / nan.
std::string format_double(double value);

// Header `n,overlap_magnitude,offdiag_magnitude,purity,log_overlap`, one row
// per point, floats at 17 significant digits, LF line endings. Throws on an
// empty sequence.
void write_curve_csv(std::ostream& out, const std::vector<experiments::CurvePoint>& points);

void write_report_csv(std::ostream& out, const experiments::ScenarioReport& report);

void write_sample_csv(std::ostream& out, const experiments::SampleStats& stats);

nlohmann::json config_to_json(const experiments::ScenarioConfig& config);
experiments::ScenarioConfig config_from_json(const nlohmann::json& j);

nlohmann::json curve_to_json(const std::vector<experiments::CurvePoint>& points);
nlohmann::json report_to_json(const experiments::ScenarioReport& report);
nlohmann::json sample_to_json(const experiments::SampleStats& stats);

// Wraps a payload with tool version, seed, config echo, and a UTC timestamp.
// The timestamp honors SOURCE_DATE_EPOCH so output can be byte-reproducible.
nlohmann::json envelope(const experiments::ScenarioConfig& config,
                        const std::string& payload_key, nlohmann::json payload);

std::string utc_timestamp();

}  // namespace decolab::io
