// Run configuration: a single JSON document mirroring RunConfig field names.
// Parsing is strict; unknown keys are errors, and every rejection names the
// offending field.

#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>

#include <json.hpp>

#include "antibunch/errors.hpp"
#include "antibunch/source_config.hpp"

namespace antibunch {

using nlohmann::json;

enum class Scenario { fock_sweep, simulate, analyze, fig2, fig3, fig4, scaling, path_ent };

inline std::string to_string(Scenario s) {
    switch (s) {
        case Scenario::fock_sweep: return "fock_sweep";
        case Scenario::simulate: return "simulate";
        case Scenario::analyze: return "analyze";
        case Scenario::fig2: return "fig2";
        case Scenario::fig3: return "fig3";
        case Scenario::fig4: return "fig4";
        case Scenario::scaling: return "scaling";
        case Scenario::path_ent: return "path_ent";
    }
    return "?";
}

inline Scenario scenario_from_string(const std::string& s) {
    if (s == "fock_sweep") return Scenario::fock_sweep;
    if (s == "simulate") return Scenario::simulate;
    if (s == "analyze") return Scenario::analyze;
    if (s == "fig2") return Scenario::fig2;
    if (s == "fig3") return Scenario::fig3;
    if (s == "fig4") return Scenario::fig4;
    if (s == "scaling") return Scenario::scaling;
    if (s == "path_ent") return Scenario::path_ent;
    throw config_error("unknown scenario '" + s + "'", "scenario");
}

struct AnalysisConfig {
    int64_t bin_width_ps = 0;  // 0 = scenario default
    int64_t max_lag_ps = 0;
    int64_t bg_exclusion_ps = 0;
    int64_t peak_halfwidth_ps = 0;
};

inline constexpr int kRunConfigFormatVersion = 1;

struct RunConfig {
    Scenario scenario = Scenario::simulate;
    SourceConfig source;
    AnalysisConfig analysis;
    std::string output_dir = "out";
    int format_version = kRunConfigFormatVersion;
};

namespace detail {

inline void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                                const std::string& prefix) {
    for (const auto& [key, value] : obj.items()) {
        if (!known.count(key))
            throw config_error("unknown key", prefix + key);
    }
}

template <typename T>
T get_field(const json& obj, const std::string& key, const std::string& prefix,
            std::optional<T> fallback = std::nullopt) {
    if (!obj.contains(key)) {
        if (fallback) return *fallback;
        throw config_error("missing required field", prefix + key);
    }
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw config_error("wrong type", prefix + key);
    }
}

inline SourceKind source_kind_from_string(const std::string& s) {
    if (s == "pairs") return SourceKind::pairs;
    if (s == "coherent") return SourceKind::coherent;
    if (s == "antibunched") return SourceKind::antibunched;
    if (s == "path_entangled") return SourceKind::path_entangled;
    throw config_error("unknown source_kind '" + s + "'", "source.source_kind");
}

inline DetectorModel parse_detector(const json& obj) {
    reject_unknown_keys(obj, {"efficiency", "jitter_sigma", "dark_rate", "dead_time"},
                        "source.detector.");
    DetectorModel det;
    if (obj.contains("efficiency")) {
        const json& eff = obj.at("efficiency");
        if (!eff.is_array() || eff.size() != 2)
            throw config_error("efficiency must be an array of 2 numbers",
                               "source.detector.efficiency");
        try {
            det.efficiency[0] = eff.at(0).get<double>();
            det.efficiency[1] = eff.at(1).get<double>();
        } catch (const json::exception&) {
            throw config_error("wrong type", "source.detector.efficiency");
        }
    }
    det.jitter_sigma = get_field<double>(obj, "jitter_sigma", "source.detector.",
                                         det.jitter_sigma);
    det.dark_rate = get_field<double>(obj, "dark_rate", "source.detector.", det.dark_rate);
    det.dead_time = get_field<double>(obj, "dead_time", "source.detector.", det.dead_time);
    return det;
}

inline SourceConfig parse_source(const json& obj) {
    reject_unknown_keys(obj,
                        {"source_kind", "pair_rate", "coherent_rate", "coherence_time",
                         "phase_diffusion", "phase_offset", "duration", "seed", "detector",
                         "matched"},
                        "source.");
    SourceConfig src;
    src.source_kind =
        source_kind_from_string(get_field<std::string>(obj, "source_kind", "source."));
    src.pair_rate = get_field<double>(obj, "pair_rate", "source.", src.pair_rate);
    src.coherent_rate =
        get_field<double>(obj, "coherent_rate", "source.", src.coherent_rate);
    src.coherence_time =
        get_field<double>(obj, "coherence_time", "source.", src.coherence_time);
    src.phase_diffusion =
        get_field<double>(obj, "phase_diffusion", "source.", src.phase_diffusion);
    src.phase_offset = get_field<double>(obj, "phase_offset", "source.", src.phase_offset);
    src.duration = get_field<double>(obj, "duration", "source.", src.duration);
    src.seed = get_field<uint64_t>(obj, "seed", "source.", src.seed);
    if (obj.contains("detector")) src.detector = parse_detector(obj.at("detector"));
    src.matched = get_field<bool>(obj, "matched", "source.", src.matched);
    return src;
}

inline AnalysisConfig parse_analysis(const json& obj) {
    reject_unknown_keys(
        obj, {"bin_width_ps", "max_lag_ps", "bg_exclusion_ps", "peak_halfwidth_ps"},
        "analysis.");
    AnalysisConfig a;
    a.bin_width_ps = get_field<int64_t>(obj, "bin_width_ps", "analysis.", a.bin_width_ps);
    a.max_lag_ps = get_field<int64_t>(obj, "max_lag_ps", "analysis.", a.max_lag_ps);
    a.bg_exclusion_ps =
        get_field<int64_t>(obj, "bg_exclusion_ps", "analysis.", a.bg_exclusion_ps);
    a.peak_halfwidth_ps =
        get_field<int64_t>(obj, "peak_halfwidth_ps", "analysis.", a.peak_halfwidth_ps);
    return a;
}

}  // namespace detail

inline RunConfig parse_run_config(const json& doc) {
    if (!doc.is_object()) throw config_error("config root must be an object", "(root)");
    detail::reject_unknown_keys(
        doc, {"scenario", "source", "analysis", "output_dir", "format_version"}, "");
    RunConfig config;
    config.scenario =
        scenario_from_string(detail::get_field<std::string>(doc, "scenario", ""));
    config.format_version = detail::get_field<int>(doc, "format_version", "");
    if (config.format_version != kRunConfigFormatVersion)
        throw config_error("unsupported format_version " +
                               std::to_string(config.format_version),
                           "format_version");
    if (doc.contains("source")) config.source = detail::parse_source(doc.at("source"));
    if (doc.contains("analysis"))
        config.analysis = detail::parse_analysis(doc.at("analysis"));
    config.output_dir =
        detail::get_field<std::string>(doc, "output_dir", "", config.output_dir);
    return config;
}

inline RunConfig parse_run_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw config_error(std::string("invalid JSON: ") + e.what(), "(document)");
    }
    return parse_run_config(doc);
}

inline json to_json(const RunConfig& config) {
    json det{{"efficiency", {config.source.detector.efficiency[0],
                             config.source.detector.efficiency[1]}},
             {"jitter_sigma", config.source.detector.jitter_sigma},
             {"dark_rate", config.source.detector.dark_rate},
             {"dead_time", config.source.detector.dead_time}};
    json src{{"source_kind", to_string(config.source.source_kind)},
             {"pair_rate", config.source.pair_rate},
             {"coherent_rate", config.source.coherent_rate},
             {"coherence_time", config.source.coherence_time},
             {"phase_diffusion", config.source.phase_diffusion},
             {"phase_offset", config.source.phase_offset},
             {"duration", config.source.duration},
             {"seed", config.source.seed},
             {"detector", det},
             {"matched", config.source.matched}};
    json analysis{{"bin_width_ps", config.analysis.bin_width_ps},
                  {"max_lag_ps", config.analysis.max_lag_ps},
                  {"bg_exclusion_ps", config.analysis.bg_exclusion_ps},
                  {"peak_halfwidth_ps", config.analysis.peak_halfwidth_ps}};
    return json{{"scenario", to_string(config.scenario)},
                {"source", src},
                {"analysis", analysis},
                {"output_dir", config.output_dir},
                {"format_version", config.format_version}};
}

}  // namespace antibunch
