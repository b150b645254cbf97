#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "wedge/front_tracking.hpp"
#include "wedge/types.hpp"

// Experiment configuration: flat `key = value` text grouped by [section]
// headers. Sections: [experiment], [model], [domain], [scheme],
// [initial_data], [sweep]. Unknown keys are errors and messages cite the
// offending [section].key path.

namespace wedge {

inline constexpr const char* kLibraryVersion = "0.1.0";

enum class ExperimentKind {
    optimal_rate,
    global_rate,
    riemann_single,
    front_tracking_run,
    asymptotic_checks,
    semigroup_check,
};

std::string to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from(const std::string& name);

struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::front_tracking_run;
    ModelParams model;
    DomainBounds bounds;
    SchemeParams scheme;

    std::string data_name = "riemann";
    std::map<std::string, double> data_params;

    std::vector<double> eps_sweep, tau2_sweep, mu_sweep, x_sweep;
    std::vector<int> nu_sweep;

    double delta = 1e-3;       // optimal_rate / asymptotic_checks datum slope
    int samples = 8;           // error-functional panels
    double h = 0.0;            // error-functional width; <= 0 selects default
    int nu_ref_offset = 4;     // reference resolution = nu + offset
    std::uint64_t seed = 1;
    std::string output_dir = "out";
    int jobs = 0;              // 0 = hardware concurrency
};

// Throws config_error with a "[section].key" path on malformed input.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

// Applies "section.key=value" to an existing config.
void apply_override(ExperimentConfig& cfg, const std::string& assignment);

// Built-in configurations, one per experiment kind (name = the kind).
ExperimentConfig preset_config(const std::string& name);
std::vector<std::string> preset_names();

// Resolved config echo in the same format parse_config_text accepts.
std::string render_config(const ExperimentConfig& cfg);

}  // namespace wedge
