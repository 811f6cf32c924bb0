#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gravdec/coherence.hpp"
#include "gravdec/metric.hpp"
#include "gravdec/spectrum.hpp"
#include "gravdec/thermal.hpp"

namespace gravdec {

inline constexpr std::string_view artifact_name = "gravdec";
inline constexpr std::string_view artifact_version = "0.1.0";

/// Configuration could not be parsed or validated. Carries the offending
/// field (or parse location) in the message.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A validated scenario configuration. `raw` is the canonical JSON the run
/// manifest echoes and the scenario hash is computed from.
struct ScenarioConfig {
    nlohmann::json raw;
};

/// Validate a JSON object as a scenario configuration.
ScenarioConfig config_from_json(nlohmann::json j);

/// Load a configuration file. A run manifest is accepted too: its embedded
/// "config" object is extracted, so a manifest re-ingests to the exact run
/// that produced it.
ScenarioConfig load_config(const std::filesystem::path& path);

/// FNV-1a hash of the canonical serialized configuration, as 16 hex digits.
std::string scenario_hash(const ScenarioConfig& config);

EnergySpectrum build_spectrum(const ScenarioConfig& config);
MetricProfile build_profile(const ScenarioConfig& config);
PairState build_state(const ScenarioConfig& config, const EnergySpectrum& spectrum,
                      const MetricProfile& profile);
std::vector<double> time_grid(const ScenarioConfig& config);

struct RunOutputs {
    std::filesystem::path trace_csv; // empty when the trace analysis is off
    std::filesystem::path summary;
    std::filesystem::path manifest;
};

/// Execute the configured analyses and write trace.csv / summary.txt /
/// manifest.json under out_dir. Identical configurations produce
/// byte-identical trace files.
RunOutputs run_scenario(const ScenarioConfig& config,
                        const std::filesystem::path& out_dir, bool quiet = false);

struct SweepRow {
    double value;
    std::optional<double> tau2;            // s
    std::optional<double> t0;              // s
    std::optional<double> validity_radius; // s
};

/// Re-run the scenario for each value of one swept parameter
/// (delta_x | T_global | g | epsilon) and tabulate the summary scales.
/// Writes sweep.csv and manifest.json under out_dir.
std::vector<SweepRow> sweep_scenario(const ScenarioConfig& config,
                                     const std::string& parameter,
                                     const std::vector<double>& values,
                                     const std::filesystem::path& out_dir,
                                     bool quiet = false);

} // namespace gravdec
