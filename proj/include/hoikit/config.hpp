#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "hoikit/error.hpp"

namespace hoikit {

/// Configuration or usage problem; the CLI maps this to exit code 2.
struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

struct TrajectorySettings {
    int n_views = 120;
    int n_bands = 5;
    int width = 512;
    int height = 512;
    double fov_deg = 40.0;
    double radius_scale = 1.8;  // camera distance as a multiple of the bbox diagonal
};

/// One place for every knob and path the CLI consumes. JSON keys mirror the
/// field names; unknown keys are rejected.
struct PipelineConfig {
    // paths
    std::string mesh;
    std::string masks_dir;
    std::string trajectory;
    std::string body_template;
    std::string rules;
    std::string output_dir;
    std::string human_mesh;
    std::string object_mesh;
    std::string alignment;
    std::string poses;
    std::string contact_spec;
    std::string manifest;
    std::string front_mask;

    // knobs
    std::optional<double> delta;  // absolute depth tolerance (m); default 0.5% of bbox diagonal
    double tau = 0.5;
    double contact_threshold = 0.04;
    double penetration_threshold = 0.30;
    double float_human_distance = 0.30;
    double float_ground_height = 0.15;
    TrajectorySettings trajectory_settings;
    int refine_rounds = 30;
    int n_per_subset = 50;
    std::optional<uint64_t> seed;
    std::optional<double> front_azimuth_deg;
    unsigned threads = 0;
};

/// Strict parse: unknown keys or out-of-range values raise ConfigError.
PipelineConfig load_config(const std::string& path);
PipelineConfig config_from_json(const std::string& text);

void validate_config(const PipelineConfig& config);

}  // namespace hoikit
