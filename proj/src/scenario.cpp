#include "gravdec/scenario.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "gravdec/constants.hpp"
#include "gravdec/errors.hpp"
#include "gravdec/timescales.hpp"

namespace gravdec {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

[[noreturn]] void fail(const std::string& field, const std::string& what) {
    throw ConfigError("config field '" + field + "': " + what);
}

const json& require(const json& j, const char* key, const std::string& ctx) {
    auto it = j.find(key);
    if (it == j.end()) fail(ctx.empty() ? key : ctx + "." + key, "missing");
    return *it;
}

double number(const json& j, const char* key, const std::string& ctx) {
    const json& v = require(j, key, ctx);
    if (!v.is_number()) fail(ctx + "." + key, "must be a number");
    return v.get<double>();
}

double number_or(const json& j, const char* key, const std::string& ctx, double fallback) {
    auto it = j.find(key);
    if (it == j.end()) return fallback;
    if (!it->is_number()) fail(ctx + "." + key, "must be a number");
    return it->get<double>();
}

std::string text(const json& j, const char* key, const std::string& ctx) {
    const json& v = require(j, key, ctx);
    if (!v.is_string()) fail(ctx + "." + key, "must be a string");
    return v.get<std::string>();
}

std::complex<double> parse_complex(const json& v, const std::string& field) {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        return {v[0].get<double>(), v[1].get<double>()};
    }
    fail(field, "must be a number or [re, im]");
}

EnergyUnit parse_unit(const json& spec, const std::string& ctx) {
    auto it = spec.find("unit");
    const std::string unit = it == spec.end() ? "J" : it->get<std::string>();
    if (unit == "J") return EnergyUnit::joule;
    if (unit == "eV") return EnergyUnit::electron_volt;
    if (unit == "kB_T") return EnergyUnit::thermal;
    fail(ctx + ".unit", "must be one of J, eV, kB_T");
}

const std::set<std::string>& known_analyses() {
    static const std::set<std::string> names{"trace", "expansion", "timescales",
                                             "thermal", "period"};
    return names;
}

std::vector<std::string> analyses_of(const json& j) {
    auto it = j.find("analyses");
    if (it == j.end()) return {"trace"};
    if (!it->is_array()) fail("analyses", "must be an array of analysis names");
    std::vector<std::string> out;
    for (const auto& a : *it) {
        if (!a.is_string() || !known_analyses().count(a.get<std::string>())) {
            fail("analyses", "unknown analysis '" + a.dump() + "'");
        }
        out.push_back(a.get<std::string>());
    }
    return out;
}

bool wants(const std::vector<std::string>& analyses, const std::string& name) {
    for (const auto& a : analyses) {
        if (a == name) return true;
    }
    return false;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << content;
}

json constants_block() {
    return json{{"c", constants::c},
                {"h", constants::h},
                {"hbar", constants::hbar},
                {"k_B", constants::k_B},
                {"G", constants::G},
                {"g_earth", constants::g_earth},
                {"electron_volt", constants::electron_volt}};
}

ThermalScenario thermal_scenario_from(const ScenarioConfig& config,
                                      const EnergySpectrum& spectrum,
                                      const MetricProfile& profile) {
    const json& state = config.raw.at("state");
    ThermalScenario scenario{number(state, "T_global", "state"), profile, spectrum,
                             config.raw.at("x").get<double>(),
                             config.raw.at("x_prime").get<double>(),
                             {1.0, 0.0}};
    if (state.contains("A0")) scenario.A0 = parse_complex(state["A0"], "state.A0");
    try {
        validate(scenario);
    } catch (const std::invalid_argument& e) {
        fail("state", e.what());
    }
    return scenario;
}

void emit_advisories(const ScenarioConfig& config, const EnergySpectrum& spectrum,
                     const MetricProfile& profile, bool quiet) {
    if (quiet) return;
    const json& j = config.raw;
    if (auto it = j.find("scales"); it != j.end()) {
        const double ell = number_or(*it, "system_size", "scales", 0.0);
        const double big_l = number_or(*it, "curvature_length", "scales", 0.0);
        const double extent = number_or(*it, "delocalization_extent", "scales", 0.0);
        if (ell > 0.0 && big_l > 0.0 && ell > 1e-2 * big_l) {
            std::cerr << "warning: system size " << fmt(ell)
                      << " m is not small against the curvature length " << fmt(big_l)
                      << " m; the point-system treatment is questionable\n";
        }
        if (ell > 0.0 && extent > 0.0 && ell > 1e-2 * extent) {
            std::cerr << "warning: system size " << fmt(ell)
                      << " m is not small against the delocalization extent "
                      << fmt(extent) << " m\n";
        }
    }
    if (j.at("state").at("kind") == "thermal") {
        const double T_global = j.at("state").at("T_global").get<double>();
        const double f1 = profile.redshift(j.at("x").get<double>());
        const double f2 = profile.redshift(j.at("x_prime").get<double>());
        const double hot = T_global / std::min(f1, f2);
        if (!truncation_adequate(spectrum, hot)) {
            std::cerr << "warning: spectrum truncation tail exp(-(E_max-E_min)/(k_B T)) "
                         ">= 1e-15 at T = "
                      << fmt(hot) << " K; add levels or lower the temperature\n";
        }
    }
}

struct SummaryWriter {
    std::string body;

    void kv(const std::string& key, double value) {
        body += key + " = " + fmt(value) + "\n";
    }
    void kv(const std::string& key, const std::string& value) {
        body += key + " = " + value + "\n";
    }
    void kv(const std::string& key, const std::optional<double>& value) {
        body += key + " = " + (value ? fmt(*value) : std::string("absent")) + "\n";
    }
};

} // namespace

ScenarioConfig config_from_json(json j) {
    if (!j.is_object()) throw ConfigError("configuration must be a JSON object");

    const json& spectrum = require(j, "spectrum", "");
    const std::string spectrum_kind = text(spectrum, "kind", "spectrum");
    if (spectrum_kind == "harmonic") {
        if (!(number(spectrum, "quantum", "spectrum") > 0.0)) {
            fail("spectrum.quantum", "must be positive");
        }
        const json& n = require(spectrum, "n_levels", "spectrum");
        if (!n.is_number_unsigned() || n.get<std::uint64_t>() == 0) {
            fail("spectrum.n_levels", "must be a positive integer");
        }
    } else if (spectrum_kind == "custom") {
        const json& levels = require(spectrum, "levels", "spectrum");
        if (!levels.is_array() || levels.empty()) {
            fail("spectrum.levels", "must be a non-empty array");
        }
        for (const auto& e : levels) {
            if (!e.is_number()) fail("spectrum.levels", "entries must be numbers");
        }
    } else {
        fail("spectrum.kind", "must be harmonic or custom");
    }
    parse_unit(spectrum, "spectrum");
    if (parse_unit(spectrum, "spectrum") == EnergyUnit::thermal &&
        !(number_or(spectrum, "reference_temperature", "spectrum", 0.0) > 0.0)) {
        fail("spectrum.reference_temperature", "required (positive) for unit kB_T");
    }

    const json& profile = require(j, "profile", "");
    const std::string profile_kind = text(profile, "kind", "profile");
    if (profile_kind == "weak_field") {
        number(profile, "g", "profile");
    } else if (profile_kind == "schwarzschild") {
        if (!(number(profile, "mass", "profile") > 0.0)) {
            fail("profile.mass", "must be positive");
        }
    } else if (profile_kind == "custom") {
        const json& samples = require(profile, "samples", "profile");
        if (!samples.is_array() || samples.size() < 2) {
            fail("profile.samples", "must be an array of at least two [x, f, V] rows");
        }
        for (const auto& row : samples) {
            if (!row.is_array() || row.size() != 3 || !row[0].is_number() ||
                !row[1].is_number() || !row[2].is_number()) {
                fail("profile.samples", "rows must be [x, f, V] numbers");
            }
        }
    } else {
        fail("profile.kind", "must be weak_field, schwarzschild or custom");
    }

    const json& state = require(j, "state", "");
    const std::string state_kind = text(state, "kind", "state");
    if (state_kind == "thermal") {
        if (!(number(state, "T_global", "state") > 0.0)) {
            fail("state.T_global", "must be positive");
        }
    } else if (state_kind == "pure_superposition") {
        require(state, "alpha", "state");
        require(state, "beta", "state");
        const json& amps = require(state, "amplitudes", "state");
        if (!amps.is_array() || amps.empty()) {
            fail("state.amplitudes", "must be a non-empty array");
        }
    } else if (state_kind == "explicit") {
        const json& w = require(state, "weights", "state");
        if (!w.is_array() || w.empty()) fail("state.weights", "must be a non-empty array");
    } else {
        fail("state.kind", "must be thermal, pure_superposition or explicit");
    }

    number(j, "x", "");
    number(j, "x_prime", "");

    const json& grid = require(j, "time_grid", "");
    if (!(number(grid, "t_max", "time_grid") > 0.0)) {
        fail("time_grid.t_max", "must be positive");
    }
    const json& n_points = require(grid, "n_points", "time_grid");
    if (!n_points.is_number_unsigned() || n_points.get<std::uint64_t>() < 2) {
        fail("time_grid.n_points", "must be an integer >= 2");
    }
    if (auto it = grid.find("spacing"); it != grid.end()) {
        if (!it->is_string() || (*it != "linear" && *it != "log")) {
            fail("time_grid.spacing", "must be linear or log");
        }
        if (*it == "log") {
            const double t_min =
                number_or(grid, "t_min", "time_grid", grid.at("t_max").get<double>() * 1e-6);
            if (!(t_min > 0.0) || !(t_min < grid.at("t_max").get<double>())) {
                fail("time_grid.t_min", "must satisfy 0 < t_min < t_max");
            }
        }
    }

    const auto analyses = analyses_of(j);
    if (wants(analyses, "thermal") && state_kind != "thermal") {
        fail("analyses", "thermal analysis requires a thermal state");
    }

    return ScenarioConfig{std::move(j)};
}

ScenarioConfig load_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("parse error in " + path.string() + ": " + e.what());
    }
    // A manifest embeds the configuration it was produced from.
    if (j.is_object() && j.contains("config") && j.contains("artifact")) {
        return config_from_json(j["config"]);
    }
    return config_from_json(std::move(j));
}

std::string scenario_hash(const ScenarioConfig& config) {
    const std::string s = config.raw.dump();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

EnergySpectrum build_spectrum(const ScenarioConfig& config) {
    const json& spec = config.raw.at("spectrum");
    const EnergyUnit unit = parse_unit(spec, "spectrum");
    const double ref_t = number_or(spec, "reference_temperature", "spectrum", 0.0);
    try {
        if (spec.at("kind") == "harmonic") {
            const double quantum =
                to_joules(spec.at("quantum").get<double>(), unit, ref_t);
            return make_harmonic(quantum, spec.at("n_levels").get<std::size_t>());
        }
        std::vector<double> levels;
        for (const auto& e : spec.at("levels")) levels.push_back(e.get<double>());
        return EnergySpectrum(std::move(levels), unit, ref_t);
    } catch (const std::invalid_argument& e) {
        fail("spectrum", e.what());
    }
}

MetricProfile build_profile(const ScenarioConfig& config) {
    const json& spec = config.raw.at("profile");
    try {
        const std::string kind = spec.at("kind").get<std::string>();
        if (kind == "weak_field") {
            return weak_field_profile(spec.at("g").get<double>(),
                                      number_or(spec, "x_ref", "profile", 0.0));
        }
        if (kind == "schwarzschild") {
            return schwarzschild_profile(spec.at("mass").get<double>());
        }
        std::vector<std::array<double, 3>> samples;
        for (const auto& row : spec.at("samples")) {
            samples.push_back({row[0].get<double>(), row[1].get<double>(),
                               row[2].get<double>()});
        }
        return custom_profile(std::move(samples));
    } catch (const std::invalid_argument& e) {
        fail("profile", e.what());
    }
}

PairState build_state(const ScenarioConfig& config, const EnergySpectrum& spectrum,
                      const MetricProfile& profile) {
    const json& state = config.raw.at("state");
    const std::string kind = state.at("kind").get<std::string>();
    const double x = config.raw.at("x").get<double>();
    const double xp = config.raw.at("x_prime").get<double>();
    try {
        if (kind == "thermal") {
            return thermal_pair_state(thermal_scenario_from(config, spectrum, profile));
        }
        if (kind == "pure_superposition") {
            std::vector<std::complex<double>> amps;
            std::size_t i = 0;
            for (const auto& a : state.at("amplitudes")) {
                amps.push_back(
                    parse_complex(a, "state.amplitudes[" + std::to_string(i++) + "]"));
            }
            return pure_superposition_state(
                spectrum, x, xp, parse_complex(state.at("alpha"), "state.alpha"),
                parse_complex(state.at("beta"), "state.beta"), amps);
        }
        std::vector<std::complex<double>> weights;
        std::size_t i = 0;
        for (const auto& w : state.at("weights")) {
            weights.push_back(
                parse_complex(w, "state.weights[" + std::to_string(i++) + "]"));
        }
        return PairState(spectrum, x, xp, std::move(weights));
    } catch (const std::invalid_argument& e) {
        fail("state", e.what());
    }
}

std::vector<double> time_grid(const ScenarioConfig& config) {
    const json& grid = config.raw.at("time_grid");
    const double t_max = grid.at("t_max").get<double>();
    const std::size_t n = grid.at("n_points").get<std::size_t>();
    const bool log_spacing = grid.contains("spacing") && grid.at("spacing") == "log";
    std::vector<double> times(n);
    if (log_spacing) {
        const double t_min = number_or(grid, "t_min", "time_grid", t_max * 1e-6);
        const double ratio = t_max / t_min;
        for (std::size_t k = 0; k < n; ++k) {
            times[k] = t_min * std::pow(ratio, static_cast<double>(k) /
                                                   static_cast<double>(n - 1));
        }
    } else {
        for (std::size_t k = 0; k < n; ++k) {
            times[k] = t_max * static_cast<double>(k) / static_cast<double>(n - 1);
        }
    }
    return times;
}

RunOutputs run_scenario(const ScenarioConfig& config, const fs::path& out_dir,
                        bool quiet) {
    const std::string hash = scenario_hash(config);
    const EnergySpectrum spectrum = build_spectrum(config);
    const MetricProfile profile = build_profile(config);
    const double x = config.raw.at("x").get<double>();
    const double xp = config.raw.at("x_prime").get<double>();
    const std::string state_kind = config.raw.at("state").at("kind").get<std::string>();
    const PairState state = build_state(config, spectrum, profile);
    const auto analyses = analyses_of(config.raw);

    emit_advisories(config, spectrum, profile, quiet);
    fs::create_directories(out_dir);

    SummaryWriter summary;
    summary.kv("scenario_hash", hash);
    summary.kv("state_kind", state_kind);
    summary.kv("n_levels", static_cast<double>(spectrum.size()));
    summary.kv("x", x);
    summary.kv("x_prime", xp);
    summary.kv("f_x", profile.redshift(x));
    summary.kv("f_x_prime", profile.redshift(xp));
    summary.kv("delta_f", profile.redshift_difference(x, xp));

    RunOutputs outputs;
    outputs.summary = out_dir / "summary.txt";
    outputs.manifest = out_dir / "manifest.json";
    json manifest_outputs = json::object();

    if (wants(analyses, "trace")) {
        const auto times = time_grid(config);
        const auto trace = visibility_trace(state, profile, times);
        outputs.trace_csv = out_dir / "trace.csv";
        write_file(outputs.trace_csv, trace_to_csv(trace, hash));
        manifest_outputs["trace_csv"] = "trace.csv";
        double min_abs = trace.magnitude.front();
        for (double m : trace.magnitude) min_abs = std::min(min_abs, m);
        summary.kv("trace_points", static_cast<double>(times.size()));
        summary.kv("trace_abs_gamma_first", trace.magnitude.front());
        summary.kv("trace_abs_gamma_last", trace.magnitude.back());
        summary.kv("trace_abs_gamma_min", min_abs);
    }

    if (wants(analyses, "period")) {
        const auto t0 = revival_period(state, profile, 1e-9);
        summary.kv("period_gcd_energy", commensurate_gcd(spectrum, 1e-9));
        summary.kv("period_t0", t0);
        if (t0) {
            summary.kv("period_abs_gamma_at_t0", std::abs(visibility(state, profile, *t0)));
        }
    }

    if (wants(analyses, "expansion")) {
        const auto coeff = expansion_coefficients(state, profile);
        summary.kv("expansion_slope", coeff.slope);
        summary.kv("expansion_curvature", coeff.curvature);
        summary.kv("expansion_validity_radius",
                   expansion_validity_radius(state, profile));
    }

    if (wants(analyses, "timescales")) {
        double e_dchi = 0.0;
        double delta_e = 0.0;
        if (state_kind == "thermal") {
            const auto scenario = thermal_scenario_from(config, spectrum, profile);
            StateFamily family = [&scenario](double a, double b) {
                ThermalScenario moved = scenario;
                moved.x = a;
                moved.x_prime = b;
                return thermal_pair_state(moved);
            };
            const auto moments = moments_at_coincidence(family, x);
            e_dchi = moments.E_Dchi;
            delta_e = moments.delta_E;
        } else {
            // No coincidence family for a hand-crafted state: estimate the
            // energy spread from the normalized pair weights and leave the
            // phase-gradient moment to API users.
            const Decomposition dec = decompose(state);
            double norm = 0.0, mean = 0.0, mean_sq = 0.0;
            for (double a : dec.magnitudes) norm += a;
            for (std::size_t n = 0; n < spectrum.size(); ++n) {
                mean += spectrum.levels()[n] * dec.magnitudes[n] / norm;
                mean_sq += spectrum.levels()[n] * spectrum.levels()[n] *
                           dec.magnitudes[n] / norm;
            }
            delta_e = std::sqrt(std::max(0.0, mean_sq - mean * mean));
        }
        const auto report = decoherence_timescales(profile, x, xp, e_dchi, delta_e);
        summary.kv("timescales_E_Dchi", report.E_Dchi);
        summary.kv("timescales_delta_E", report.delta_E);
        summary.kv("timescales_slope_linear", report.slope_linear);
        summary.kv("timescales_curvature", report.curvature);
        summary.kv("timescales_t1", report.t1);
        summary.kv("timescales_t2", report.t2);
        summary.kv("timescales_tau1", report.tau1);
        summary.kv("timescales_tau2", report.tau2);
        summary.kv("timescales_validity_radius",
                   expansion_validity_radius(state, profile));
    }

    if (wants(analyses, "thermal")) {
        const auto scenario = thermal_scenario_from(config, spectrum, profile);
        const double t_local_x = local_temperature(profile, scenario.T_global, x);
        const double capacity = local_heat_capacity(scenario, x);
        summary.kv("thermal_T_local_x", t_local_x);
        summary.kv("thermal_T_local_x_prime",
                   local_temperature(profile, scenario.T_global, xp));
        summary.kv("thermal_C_x", capacity);
        summary.kv("thermal_delta_E_x",
                   thermal_moments(spectrum, t_local_x).energy_std);
        summary.kv("thermal_tau2_exact", thermal_tau2(scenario));
        if (capacity > 0.0) {
            const double g_eff =
                std::fabs(profile.redshift_slope(x)) * constants::c_squared;
            summary.kv("thermal_tau2_weakfield",
                       tau2_weak_field_estimate(scenario.T_global, capacity, g_eff,
                                                std::fabs(xp - x)));
        } else {
            summary.kv("thermal_tau2_weakfield", std::optional<double>{});
        }
    }

    write_file(outputs.summary, summary.body);
    manifest_outputs["summary"] = "summary.txt";

    json manifest{{"artifact",
                   {{"name", std::string(artifact_name)},
                    {"version", std::string(artifact_version)}}},
                  {"constants", constants_block()},
                  {"scenario_hash", hash},
                  {"config", config.raw},
                  {"outputs", manifest_outputs}};
    write_file(outputs.manifest, manifest.dump(2) + "\n");

    if (!quiet) {
        std::cout << "scenario " << hash << ": wrote "
                  << (outputs.trace_csv.empty() ? "" : "trace.csv ")
                  << "summary.txt manifest.json in " << out_dir.string() << "\n";
    }
    return outputs;
}

std::vector<SweepRow> sweep_scenario(const ScenarioConfig& config,
                                     const std::string& parameter,
                                     const std::vector<double>& values,
                                     const fs::path& out_dir, bool quiet) {
    static const std::set<std::string> known{"delta_x", "T_global", "g", "epsilon"};
    if (!known.count(parameter)) {
        throw ConfigError("unknown sweep parameter '" + parameter +
                          "' (expected delta_x, T_global, g or epsilon)");
    }
    if (values.empty()) throw ConfigError("sweep requires at least one value");
    for (double v : values) {
        if (!std::isfinite(v) || !(v > 0.0)) {
            throw ConfigError("sweep values must be finite and positive");
        }
    }
    const std::string base_kind = config.raw.at("state").at("kind").get<std::string>();
    if (parameter == "T_global" && base_kind != "thermal") {
        throw ConfigError("sweep parameter T_global requires a thermal state");
    }
    if (parameter == "g" && config.raw.at("profile").at("kind") != "weak_field") {
        throw ConfigError("sweep parameter g requires a weak_field profile");
    }
    if (parameter == "epsilon" && config.raw.at("spectrum").at("kind") != "harmonic") {
        throw ConfigError("sweep parameter epsilon requires a harmonic spectrum");
    }

    std::vector<SweepRow> rows;
    rows.reserve(values.size());
    for (double v : values) {
        json j = config.raw;
        if (parameter == "delta_x") {
            j["x_prime"] = j.at("x").get<double>() + v;
        } else if (parameter == "T_global") {
            j["state"]["T_global"] = v;
        } else if (parameter == "g") {
            j["profile"]["g"] = v;
        } else {
            j["spectrum"]["quantum"] = v;
        }
        const ScenarioConfig swept = config_from_json(std::move(j));
        const EnergySpectrum spectrum = build_spectrum(swept);
        const MetricProfile profile = build_profile(swept);
        const PairState state = build_state(swept, spectrum, profile);

        SweepRow row;
        row.value = v;
        if (base_kind == "thermal") {
            row.tau2 = thermal_tau2(thermal_scenario_from(swept, spectrum, profile));
        }
        row.t0 = revival_period(state, profile, 1e-9);
        row.validity_radius = expansion_validity_radius(state, profile);
        rows.push_back(row);
    }

    fs::create_directories(out_dir);
    std::string csv = "# scenario " + scenario_hash(config) + " sweep " + parameter +
                      "\nvalue,tau2,t0,validity_radius\n";
    for (const auto& row : rows) {
        csv += fmt(row.value);
        csv += ',';
        if (row.tau2) csv += fmt(*row.tau2);
        csv += ',';
        if (row.t0) csv += fmt(*row.t0);
        csv += ',';
        if (row.validity_radius) csv += fmt(*row.validity_radius);
        csv += '\n';
    }
    write_file(out_dir / "sweep.csv", csv);

    json manifest{{"artifact",
                   {{"name", std::string(artifact_name)},
                    {"version", std::string(artifact_version)}}},
                  {"constants", constants_block()},
                  {"scenario_hash", scenario_hash(config)},
                  {"config", config.raw},
                  {"sweep", {{"parameter", parameter}, {"values", values}}},
                  {"outputs", {{"sweep_csv", "sweep.csv"}}}};
    write_file(out_dir / "manifest.json", manifest.dump(2) + "\n");

    if (!quiet) {
        std::cout << "sweep " << parameter << ": " << rows.size()
                  << " rows in " << (out_dir / "sweep.csv").string() << "\n";
    }
    return rows;
}

} // namespace gravdec
