#include "hoikit/config.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

namespace hoikit {

namespace {

const std::set<std::string> kKnownKeys = {
    "mesh",        "masks_dir",        "trajectory",       "body_template",
    "rules",       "output_dir",       "human_mesh",       "object_mesh",
    "alignment",   "poses",            "contact_spec",     "manifest",
    "front_mask",  "delta",            "tau",              "contact_threshold",
    "penetration_threshold",           "float_human_distance",
    "float_ground_height",             "trajectory_settings",
    "refine_rounds", "n_per_subset",   "seed",             "front_azimuth_deg",
    "threads",
};

const std::set<std::string> kKnownTrajectoryKeys = {
    "n_views", "n_bands", "width", "height", "fov_deg", "radius_scale",
};

void reject_unknown_keys(const nlohmann::json& j, const std::set<std::string>& known,
                         const std::string& where) {
    for (const auto& [key, value] : j.items())
        if (!known.count(key)) throw ConfigError("unknown config key '" + key + "'" + where);
}

PipelineConfig config_fields_from_json(const nlohmann::json& j) {
    PipelineConfig config;
    auto str = [&](const char* key, std::string& out) {
        if (j.contains(key)) out = j.at(key).get<std::string>();
    };
    str("mesh", config.mesh);
    str("masks_dir", config.masks_dir);
    str("trajectory", config.trajectory);
    str("body_template", config.body_template);
    str("rules", config.rules);
    str("output_dir", config.output_dir);
    str("human_mesh", config.human_mesh);
    str("object_mesh", config.object_mesh);
    str("alignment", config.alignment);
    str("poses", config.poses);
    str("contact_spec", config.contact_spec);
    str("manifest", config.manifest);
    str("front_mask", config.front_mask);

    if (j.contains("delta")) config.delta = j.at("delta").get<double>();
    if (j.contains("tau")) config.tau = j.at("tau").get<double>();
    if (j.contains("contact_threshold"))
        config.contact_threshold = j.at("contact_threshold").get<double>();
    if (j.contains("penetration_threshold"))
        config.penetration_threshold = j.at("penetration_threshold").get<double>();
    if (j.contains("float_human_distance"))
        config.float_human_distance = j.at("float_human_distance").get<double>();
    if (j.contains("float_ground_height"))
        config.float_ground_height = j.at("float_ground_height").get<double>();
    if (j.contains("refine_rounds")) config.refine_rounds = j.at("refine_rounds").get<int>();
    if (j.contains("n_per_subset")) config.n_per_subset = j.at("n_per_subset").get<int>();
    if (j.contains("seed")) {
        if (j.at("seed").is_number_integer() && j.at("seed").get<int64_t>() < 0)
            throw ConfigError("seed must be non-negative");
        config.seed = j.at("seed").get<uint64_t>();
    }
    if (j.contains("front_azimuth_deg"))
        config.front_azimuth_deg = j.at("front_azimuth_deg").get<double>();
    if (j.contains("threads")) config.threads = j.at("threads").get<unsigned>();

    if (j.contains("trajectory_settings")) {
        const auto& t = j.at("trajectory_settings");
        if (!t.is_object()) throw ConfigError("trajectory_settings must be an object");
        reject_unknown_keys(t, kKnownTrajectoryKeys, " in trajectory_settings");
        auto& settings = config.trajectory_settings;
        if (t.contains("n_views")) settings.n_views = t.at("n_views").get<int>();
        if (t.contains("n_bands")) settings.n_bands = t.at("n_bands").get<int>();
        if (t.contains("width")) settings.width = t.at("width").get<int>();
        if (t.contains("height")) settings.height = t.at("height").get<int>();
        if (t.contains("fov_deg")) settings.fov_deg = t.at("fov_deg").get<double>();
        if (t.contains("radius_scale")) settings.radius_scale = t.at("radius_scale").get<double>();
    }

    validate_config(config);
    return config;
}

}  // namespace

PipelineConfig config_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    reject_unknown_keys(j, kKnownKeys, "");
    try {
        return config_fields_from_json(j);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config JSON: ") + e.what());
    }
}

PipelineConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return config_from_json(text);
}

void validate_config(const PipelineConfig& config) {
    if (!(config.tau > 0.0 && config.tau < 1.0)) throw ConfigError("tau must be in (0, 1)");
    if (config.delta && !(*config.delta > 0.0)) throw ConfigError("delta must be positive");
    if (!(config.contact_threshold > 0.0))
        throw ConfigError("contact_threshold must be positive");
    if (!(config.penetration_threshold >= 0.0 && config.penetration_threshold <= 1.0))
        throw ConfigError("penetration_threshold must be in [0, 1]");
    if (!(config.float_human_distance > 0.0) || !(config.float_ground_height > 0.0))
        throw ConfigError("floating-object distances must be positive");
    if (config.refine_rounds < 1) throw ConfigError("refine_rounds must be >= 1");
    if (config.n_per_subset < 0) throw ConfigError("n_per_subset must be >= 0");
    const auto& t = config.trajectory_settings;
    if (t.n_bands < 1 || t.n_views < t.n_bands)
        throw ConfigError("trajectory needs n_views >= n_bands >= 1");
    if (t.width < 1 || t.height < 1) throw ConfigError("trajectory resolution must be >= 1x1");
    if (!(t.fov_deg > 0.0 && t.fov_deg < 180.0)) throw ConfigError("fov_deg must be in (0, 180)");
    if (!(t.radius_scale > 0.0)) throw ConfigError("radius_scale must be positive");
}

}  // namespace hoikit
