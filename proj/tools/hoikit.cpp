// hoikit - batch CLI over the interaction-geometry toolkit.
// Subcommands: trajectory | segment | register | contact | animate |
// curate | select. Exit codes: 0 ok, 2 config/usage, 3 data, 4 internal.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hoikit/animation.hpp"
#include "hoikit/body.hpp"
#include "hoikit/config.hpp"
#include "hoikit/contact.hpp"
#include "hoikit/curation.hpp"
#include "hoikit/log.hpp"
#include "hoikit/mesh_io.hpp"
#include "hoikit/parallel.hpp"
#include "hoikit/rasterizer.hpp"
#include "hoikit/registration.hpp"
#include "hoikit/segmentation.hpp"
#include "hoikit/trajectory.hpp"

namespace fs = std::filesystem;
using namespace hoikit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitInternal = 4;

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << text;
    if (!out) throw IoError("write failure on " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

double resolved_delta(const PipelineConfig& config, const TriMesh& mesh) {
    return config.delta ? *config.delta : default_depth_tolerance(mesh);
}

// Shared per-subcommand state: a config file plus flag overrides.
struct CommonArgs {
    std::string config_path;
    PipelineConfig config;

    void load() {
        if (!config_path.empty()) config = load_config(config_path);
    }
};

std::vector<PartName> body_labels_for_mesh(const TriMesh& mesh, const SkinnedBody& body) {
    if (mesh.vertices.size() == body.rest_vertices.size()) return body.part_labels;
    // Vertex counts differ, so labels transfer by nearest neighbor after
    // bringing the template into the mesh's coordinate frame.
    log_info("body mesh vertex count differs from the template; transferring labels by "
             "nearest neighbor");
    const Similarity7DoF align = init_alignment(body_mesh(body), mesh);
    SkinnedBody aligned = body;
    for (Vec3& v : aligned.rest_vertices) v = align.apply(v);
    return transfer_weights(mesh, aligned).part_labels;
}

// ------------------------------------------------------------ trajectory ---

int run_trajectory(const CommonArgs& args, const std::string& mesh_path,
                   const std::vector<double>& center_flag, std::optional<double> radius_flag,
                   const std::string& out_path) {
    const PipelineConfig& config = args.config;
    Vec3 center;
    double radius = 0.0;
    if (!mesh_path.empty()) {
        const TriMesh mesh = load_mesh(mesh_path);
        const Aabb box = bounding_box(mesh);
        center = box.center();
        radius = config.trajectory_settings.radius_scale * box.diagonal();
    }
    if (!center_flag.empty()) {
        if (center_flag.size() != 3) throw ConfigError("--center needs exactly 3 values");
        center = {center_flag[0], center_flag[1], center_flag[2]};
    }
    if (radius_flag) radius = *radius_flag;
    if (mesh_path.empty() && (center_flag.empty() || !radius_flag))
        throw ConfigError("trajectory needs --mesh, or --center plus --radius");

    const auto& s = config.trajectory_settings;
    const Trajectory trajectory =
        make_trajectory(center, radius, s.n_views, s.n_bands, s.width, s.height, s.fov_deg);
    save_trajectory(trajectory, out_path);
    log_info("wrote " + out_path + " with " + std::to_string(trajectory.cameras.size()) +
             " cameras");
    return kExitOk;
}

// --------------------------------------------------------------- segment ---

int run_segment(const CommonArgs& args) {
    const PipelineConfig& config = args.config;
    if (config.mesh.empty() || config.trajectory.empty() || config.masks_dir.empty() ||
        config.output_dir.empty())
        throw ConfigError("segment needs --mesh, --trajectory, --masks-dir and --out-dir");

    const TriMesh mesh = load_mesh(config.mesh);
    const Trajectory trajectory = load_trajectory(config.trajectory);
    if (trajectory.cameras.empty()) throw ParseError("trajectory has no cameras", -1);

    std::vector<DepthMap> depths(trajectory.cameras.size());
    std::vector<MaskFrame> masks(trajectory.cameras.size());
    for (size_t i = 0; i < trajectory.cameras.size(); ++i) {
        depths[i] = rasterize_depth(mesh, trajectory.cameras[i]);
        masks[i] = load_mask_frame(config.masks_dir, static_cast<int>(i));
    }

    const double delta = resolved_delta(config, mesh);
    const VisibilityTable visibility =
        vertex_visibility(mesh, trajectory.cameras, depths, delta);
    const std::vector<int> labels =
        vote_object_labels(mesh, visibility, masks, trajectory.cameras, config.tau);
    const SplitResult split = split_mesh(mesh, labels);

    ensure_dir(config.output_dir);
    save_mesh(split.human, config.output_dir + "/human.ply");
    save_mesh(split.object, config.output_dir + "/object.ply");
    std::string label_lines;
    label_lines.reserve(labels.size() * 2);
    for (int label : labels) {
        label_lines += std::to_string(label);
        label_lines += '\n';
    }
    write_text_file(config.output_dir + "/labels.txt", label_lines);
    log_info("segmented " + std::to_string(mesh.vertices.size()) + " vertices: " +
             std::to_string(split.human.faces.size()) + " human faces, " +
             std::to_string(split.object.faces.size()) + " object faces");
    return kExitOk;
}

// -------------------------------------------------------------- register ---

int run_register(const CommonArgs& args) {
    const PipelineConfig& config = args.config;
    if (config.body_template.empty() || config.human_mesh.empty() || config.output_dir.empty())
        throw ConfigError("register needs --body, --human and --out-dir");

    SkinnedBody body = load_body(config.body_template);
    TriMesh body_surface = body_mesh(body);
    if (!config.poses.empty()) {
        const auto poses = load_pose_sequence(config.poses);
        if (poses.empty()) throw ParseError("pose file has no frames", -1);
        body_surface = pose_body(body, poses.front());
    }
    const TriMesh human = load_mesh(config.human_mesh);

    const Similarity7DoF init = init_alignment(body_surface, human);

    TriMesh source = body_surface;
    if (!config.front_mask.empty()) {
        // Front camera: the supplied azimuth (default 0) at zero elevation,
        // framed like the rendering trajectory.
        const Aabb box = bounding_box(human);
        const double azimuth = deg_to_rad(config.front_azimuth_deg.value_or(0.0));
        const double radius = config.trajectory_settings.radius_scale * box.diagonal();
        Camera camera;
        camera.position =
            box.center() + radius * Vec3{std::cos(azimuth), 0.0, std::sin(azimuth)};
        camera.look_at = box.center();
        camera.width = config.trajectory_settings.width;
        camera.height = config.trajectory_settings.height;
        camera.fov_deg = config.trajectory_settings.fov_deg;

        const GrayImage mask_image = read_png_gray8(config.front_mask);
        MaskFrame frame;
        frame.width = mask_image.width;
        frame.height = mask_image.height;
        frame.human = binarize(mask_image);
        frame.object.assign(frame.human.size(), 0);
        if (frame.width != camera.width || frame.height != camera.height)
            throw ParseError("front mask size does not match the trajectory resolution", -1);

        const TriMesh aligned = apply_similarity(init, body_surface);
        const std::vector<int> subset = mask_subset_vertices(aligned, camera, frame);
        if (!subset.empty()) {
            TriMesh partial;
            for (int v : subset) partial.vertices.push_back(body_surface.vertices[static_cast<size_t>(v)]);
            source = partial;
        }
    } else if (human.vertices.size() < 0.6 * body_surface.vertices.size()) {
        log_warn("human mesh looks partial (" + std::to_string(human.vertices.size()) + " of " +
                 std::to_string(body_surface.vertices.size()) +
                 " template vertices); consider passing --front-mask");
    }

    RefineOptions options;
    options.max_rounds = config.refine_rounds;
    const RefineResult result = refine_chamfer_7dof(source, human, init, options);

    ensure_dir(config.output_dir);
    save_similarity(result.transform, config.output_dir + "/alignment.json");
    save_similarity(result.transform.inverse(), config.output_dir + "/alignment_inverse.json");
    save_mesh(apply_similarity(result.transform, body_surface),
              config.output_dir + "/registered_body.ply");

    nlohmann::json ledger{{"objective_ledger", result.objective_ledger},
                          {"rounds_run", result.rounds_run}};
    write_text_file(config.output_dir + "/refine_log.json", ledger.dump(2) + "\n");
    log_info("registered body: objective " +
             std::to_string(result.objective_ledger.back()) + " m after " +
             std::to_string(result.rounds_run) + " rounds");
    return kExitOk;
}

// --------------------------------------------------------------- contact ---

std::string csv_cell(double value) {
    if (std::isinf(value)) return "inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", value);
    return buf;
}

int run_contact(const CommonArgs& args, const std::string& body_mesh_path,
                const std::string& batch_path, const std::string& out_path,
                const std::string& out_csv_path) {
    const PipelineConfig& config = args.config;
    if (config.body_template.empty()) throw ConfigError("contact needs --body");
    const SkinnedBody body = load_body(config.body_template);

    if (!batch_path.empty()) {
        if (out_csv_path.empty()) throw ConfigError("batch contact needs --out-csv");
        std::ifstream in(batch_path, std::ios::binary);
        if (!in) throw IoError("cannot open " + batch_path);
        struct Row {
            std::string scene_id;
            ContactReport report;
            bool satisfied;
        };
        std::vector<Row> rows;
        std::string line;
        long line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) continue;
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(line);
            } catch (const nlohmann::json::parse_error& e) {
                throw ParseError("batch line " + std::to_string(line_no) + ": " + e.what(),
                                 line_no);
            }
            const std::string scene_id = j.at("scene_id").get<std::string>();
            const TriMesh scene_body = load_mesh(j.at("body_mesh").get<std::string>());
            const TriMesh object = load_mesh(j.at("object_mesh").get<std::string>());
            const ContactSpec spec = contact_spec_from_json(j.at("spec").dump());
            const auto labels = body_labels_for_mesh(scene_body, body);
            const ContactReport report =
                make_contact_report(scene_body, labels, object, config.contact_threshold);
            rows.push_back({scene_id, report, report_satisfies(report, spec)});
        }
        if (rows.empty()) throw ConfigError("batch manifest has no evaluation rows");

        std::string csv = "scene_id";
        for (int p = 0; p < kPartCount; ++p)
            csv += std::string(",") + to_string(static_cast<PartName>(p));
        csv += ",configuration,satisfied\n";
        for (const Row& row : rows) {
            csv += row.scene_id;
            for (int p = 0; p < kPartCount; ++p)
                csv += "," + csv_cell(row.report.part_distance[static_cast<size_t>(p)]);
            csv += std::string(",") + to_string(row.report.configuration);
            csv += row.satisfied ? ",1\n" : ",0\n";
        }
        write_text_file(out_csv_path, csv);
        log_info("wrote " + std::to_string(rows.size()) + " rows to " + out_csv_path);
        return kExitOk;
    }

    if (body_mesh_path.empty() || config.object_mesh.empty() || out_path.empty())
        throw ConfigError("contact needs --body-mesh, --object and --out (or --batch)");
    const TriMesh scene_body = load_mesh(body_mesh_path);
    const TriMesh object = load_mesh(config.object_mesh);
    const auto labels = body_labels_for_mesh(scene_body, body);
    ContactReport report =
        make_contact_report(scene_body, labels, object, config.contact_threshold);
    std::string payload = contact_report_to_json(report);
    if (!config.contact_spec.empty()) {
        const ContactSpec spec = contact_spec_from_json(read_text_file(config.contact_spec));
        nlohmann::json j = nlohmann::json::parse(payload);
        j["satisfied"] = report_satisfies(report, spec);
        payload = j.dump(2) + "\n";
    }
    write_text_file(out_path, payload);
    log_info("wrote " + out_path);
    return kExitOk;
}

// --------------------------------------------------------------- animate ---

int run_animate(const CommonArgs& args) {
    const PipelineConfig& config = args.config;
    if (config.human_mesh.empty() || config.object_mesh.empty() ||
        config.body_template.empty() || config.alignment.empty() || config.poses.empty() ||
        config.output_dir.empty())
        throw ConfigError(
            "animate needs --human, --object, --body, --alignment, --poses and --out-dir");

    const TriMesh human = load_mesh(config.human_mesh);
    const TriMesh object = load_mesh(config.object_mesh);
    const SkinnedBody body = load_body(config.body_template);
    const Similarity7DoF align = load_similarity(config.alignment);
    const std::vector<Pose> poses = load_pose_sequence(config.poses);

    const SkinBinding binding = transfer_weights(apply_similarity(align.inverse(), human), body);
    const std::vector<AnimatedFrame> frames =
        animate_scene(human, binding, object, body, poses, align);

    ensure_dir(config.output_dir);
    char name[64];
    for (size_t f = 0; f < frames.size(); ++f) {
        std::snprintf(name, sizeof name, "/frame_%04zu_human.ply", f);
        save_mesh(frames[f].human, config.output_dir + name);
        std::snprintf(name, sizeof name, "/frame_%04zu_object.ply", f);
        save_mesh(frames[f].object, config.output_dir + name);
    }
    log_info("wrote " + std::to_string(frames.size()) + " frames to " + config.output_dir);
    return kExitOk;
}

// ---------------------------------------------------------------- curate ---

int run_curate(const CommonArgs& args) {
    const PipelineConfig& config = args.config;
    if (config.manifest.empty() || config.output_dir.empty())
        throw ConfigError("curate needs --manifest and --out-dir");
    if (!config.seed) throw ConfigError("curate needs an explicit --seed for reproducibility");

    const std::vector<DatasetSample> samples = read_manifest(config.manifest);
    const fs::path manifest_dir = fs::path(config.manifest).parent_path();
    ActionRules rules;
    const bool have_rules = !config.rules.empty();
    if (have_rules) rules = load_action_rules(config.rules);

    auto resolve = [&](const std::string& path) {
        const fs::path p(path);
        return p.is_absolute() ? p.string() : (manifest_dir / p).string();
    };

    std::vector<DatasetSample> kept;
    std::string rejections = "id,reason\n";
    FloatingCheckOptions float_options;
    float_options.max_human_distance = config.float_human_distance;
    float_options.max_ground_height = config.float_ground_height;

    for (const DatasetSample& sample : samples) {
        std::string reason;
        if (!sample.human_mesh_path.empty() && !sample.object_mesh_path.empty()) {
            const TriMesh human = load_mesh(resolve(sample.human_mesh_path));
            const TriMesh object = load_mesh(resolve(sample.object_mesh_path));
            if (penetration_fraction(human, object) > config.penetration_threshold)
                reason = "PENETRATION";
            else if (!floating_object_check(object, human, float_options))
                reason = "FLOATING";
        }
        if (reason.empty() && have_rules) {
            const auto it = rules.allowed.find(sample.action);
            if (it == rules.allowed.end())
                log_warn("action '" + sample.action + "' of sample " + sample.id +
                         " has no rule; kept");
            else if (!it->second.count(sample.report.configuration))
                reason = "ACTION_MISMATCH";
        }
        if (reason.empty())
            kept.push_back(sample);
        else
            rejections += sample.id + "," + reason + "\n";
    }

    const SubsetPartition partition = partition_by_config(kept);
    const std::vector<std::string> selected =
        select_subset(partition, config.n_per_subset, *config.seed);

    ensure_dir(config.output_dir);
    std::string kept_ids;
    std::vector<std::string> kept_sorted;
    for (const DatasetSample& sample : kept) kept_sorted.push_back(sample.id);
    std::sort(kept_sorted.begin(), kept_sorted.end());
    for (const std::string& id : kept_sorted) kept_ids += id + "\n";
    write_text_file(config.output_dir + "/kept_ids.txt", kept_ids);
    write_text_file(config.output_dir + "/rejections.csv", rejections);

    std::set<std::string> selected_set(selected.begin(), selected.end());
    for (int k = 0; k < kConfigurationCount; ++k) {
        const auto configuration = static_cast<Configuration>(k);
        std::string lines;
        for (const DatasetSample& sample : kept) {
            if (sample.report.configuration != configuration) continue;
            if (!selected_set.count(sample.id)) continue;
            lines += sample_to_json_line(sample) + "\n";
        }
        write_text_file(config.output_dir + "/subset_" + to_string(configuration) + ".jsonl",
                        lines);
    }
    log_info("kept " + std::to_string(kept.size()) + " of " + std::to_string(samples.size()) +
             " samples; selected " + std::to_string(selected.size()));
    return kExitOk;
}

// ---------------------------------------------------------------- select ---

int run_select(const CommonArgs& args, const std::string& candidates_path,
               const std::string& out_path) {
    const PipelineConfig& config = args.config;
    if (candidates_path.empty() || config.body_template.empty() ||
        config.contact_spec.empty() || out_path.empty())
        throw ConfigError("select needs --candidates, --body, --spec and --out");

    const SkinnedBody body = load_body(config.body_template);
    const ContactSpec spec = contact_spec_from_json(read_text_file(config.contact_spec));

    nlohmann::json manifest;
    try {
        manifest = nlohmann::json::parse(read_text_file(candidates_path));
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("candidates JSON: ") + e.what(), -1,
                         static_cast<long>(e.byte));
    }
    std::vector<ContactReport> reports;
    for (const auto& c : manifest.at("candidates")) {
        const TriMesh scene_body = load_mesh(c.at("body_mesh").get<std::string>());
        const TriMesh object = load_mesh(c.at("object_mesh").get<std::string>());
        const auto labels = body_labels_for_mesh(scene_body, body);
        reports.push_back(
            make_contact_report(scene_body, labels, object, config.contact_threshold));
    }
    if (reports.empty()) throw ConfigError("candidates list is empty");

    const int index = select_best_candidate(reports, spec);
    nlohmann::json rationale = nlohmann::json::array();
    for (size_t i = 0; i < reports.size(); ++i) {
        nlohmann::json parts = nlohmann::json::array();
        for (PartName part : reports[i].contacting) parts.push_back(to_string(part));
        int hits = 0;
        const PartMask have = parts_to_mask(reports[i].contacting);
        for (PartName part : spec.parts)
            if (have & part_bit(part)) ++hits;
        rationale.push_back({{"index", i},
                             {"configuration", to_string(reports[i].configuration)},
                             {"contacting_parts", parts},
                             {"satisfied", report_satisfies(reports[i], spec)},
                             {"required_hits", hits}});
    }
    nlohmann::json out{{"selected_index", index}, {"candidates", rationale}};
    write_text_file(out_path, out.dump(2) + "\n");
    log_info("selected candidate " + std::to_string(index));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hoikit: segmentation, registration, contact and curation tools for "
                 "human-object interaction meshes"};
    app.require_subcommand(1);

    CommonArgs args;
    std::string mesh_path, out_path, body_mesh_path, batch_path, out_csv_path, candidates_path;
    std::vector<double> center_flag;
    std::optional<double> radius_flag;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", args.config_path, "JSON config file (flags override it)");
        cmd->add_option("--threads", args.config.threads, "cap worker threads (0 = auto)");
    };

    CLI::App* trajectory_cmd =
        app.add_subcommand("trajectory", "generate the multi-band camera sweep");
    add_common(trajectory_cmd);
    trajectory_cmd->add_option("--mesh", mesh_path, "mesh whose bounds frame the sweep");
    trajectory_cmd->add_option("--center", center_flag, "sweep center (x y z)")->expected(3);
    // CLI11 stores into the optional through a lambda option.
    double radius_value = 0.0;
    auto* radius_opt = trajectory_cmd->add_option("--radius", radius_value, "sweep radius (m)");
    trajectory_cmd->add_option("--out", out_path, "output trajectory JSON")->required();
    trajectory_cmd->add_option("--n-views", args.config.trajectory_settings.n_views);
    trajectory_cmd->add_option("--n-bands", args.config.trajectory_settings.n_bands);
    trajectory_cmd->add_option("--width", args.config.trajectory_settings.width);
    trajectory_cmd->add_option("--height", args.config.trajectory_settings.height);
    trajectory_cmd->add_option("--fov", args.config.trajectory_settings.fov_deg);
    trajectory_cmd->add_option("--radius-scale", args.config.trajectory_settings.radius_scale);

    CLI::App* segment_cmd =
        app.add_subcommand("segment", "split a combined mesh into human and object");
    add_common(segment_cmd);
    segment_cmd->add_option("--mesh", args.config.mesh, "combined mesh (OBJ/PLY)");
    segment_cmd->add_option("--trajectory", args.config.trajectory, "trajectory JSON");
    segment_cmd->add_option("--masks-dir", args.config.masks_dir,
                            "directory with view_XXXX_{human,object}.png");
    segment_cmd->add_option("--out-dir", args.config.output_dir, "output directory");
    double delta_value = 0.0;
    auto* delta_opt = segment_cmd->add_option("--delta", delta_value, "depth tolerance (m)");
    segment_cmd->add_option("--tau", args.config.tau, "object vote threshold");

    CLI::App* register_cmd =
        app.add_subcommand("register", "align the body template to a segmented human mesh");
    add_common(register_cmd);
    register_cmd->add_option("--body", args.config.body_template, "body template JSON");
    register_cmd->add_option("--human", args.config.human_mesh, "segmented human mesh");
    register_cmd->add_option("--out-dir", args.config.output_dir, "output directory");
    register_cmd->add_option("--rounds", args.config.refine_rounds, "refinement rounds");
    register_cmd->add_option("--pose", args.config.poses,
                             "pose sequence JSON; frame 0 poses the template before alignment");
    register_cmd->add_option("--front-mask", args.config.front_mask,
                             "front-view human mask PNG for partial alignment");
    double front_azimuth_value = 0.0;
    auto* front_azimuth_opt = register_cmd->add_option(
        "--front-azimuth", front_azimuth_value, "front view azimuth in degrees (default 0)");

    CLI::App* contact_cmd =
        app.add_subcommand("contact", "contact distances, configuration and accuracy");
    add_common(contact_cmd);
    contact_cmd->add_option("--body", args.config.body_template, "body template JSON");
    contact_cmd->add_option("--body-mesh", body_mesh_path, "registered body mesh");
    contact_cmd->add_option("--object", args.config.object_mesh, "object mesh");
    contact_cmd->add_option("--spec", args.config.contact_spec, "contact spec JSON");
    contact_cmd->add_option("--threshold", args.config.contact_threshold,
                            "contact distance threshold (m)");
    contact_cmd->add_option("--batch", batch_path, "JSONL manifest of scenes and specs");
    contact_cmd->add_option("--out", out_path, "report JSON (single scene)");
    contact_cmd->add_option("--out-csv", out_csv_path, "report CSV (batch)");

    CLI::App* animate_cmd = app.add_subcommand("animate", "reanimate a registered scene");
    add_common(animate_cmd);
    animate_cmd->add_option("--human", args.config.human_mesh, "segmented human mesh");
    animate_cmd->add_option("--object", args.config.object_mesh, "segmented object mesh");
    animate_cmd->add_option("--body", args.config.body_template, "body template JSON");
    animate_cmd->add_option("--alignment", args.config.alignment,
                            "body-to-scan alignment JSON (from register)");
    animate_cmd->add_option("--poses", args.config.poses, "pose sequence JSON");
    animate_cmd->add_option("--out-dir", args.config.output_dir, "output directory");

    CLI::App* curate_cmd = app.add_subcommand("curate", "filter and subset a dataset manifest");
    add_common(curate_cmd);
    curate_cmd->add_option("--manifest", args.config.manifest, "dataset manifest JSONL");
    curate_cmd->add_option("--rules", args.config.rules, "action-to-configurations JSON");
    curate_cmd->add_option("--out-dir", args.config.output_dir, "output directory");
    uint64_t seed_value = 0;
    auto* seed_opt = curate_cmd->add_option("--seed", seed_value, "selection seed (required)");
    curate_cmd->add_option("--n-per-subset", args.config.n_per_subset,
                           "samples to keep per configuration subset");
    curate_cmd->add_option("--penetration-threshold", args.config.penetration_threshold);
    curate_cmd->add_option("--float-human-distance", args.config.float_human_distance);
    curate_cmd->add_option("--float-ground-height", args.config.float_ground_height);

    CLI::App* select_cmd =
        app.add_subcommand("select", "pick the candidate that best satisfies a contact spec");
    add_common(select_cmd);
    select_cmd->add_option("--candidates", candidates_path, "candidates JSON");
    select_cmd->add_option("--body", args.config.body_template, "body template JSON");
    select_cmd->add_option("--spec", args.config.contact_spec, "contact spec JSON");
    select_cmd->add_option("--threshold", args.config.contact_threshold);
    select_cmd->add_option("--out", out_path, "selection JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        // Config file first, then flag overrides that were actually given.
        PipelineConfig flag_values = args.config;
        args.load();
        PipelineConfig merged = args.config_path.empty() ? PipelineConfig{} : args.config;
        auto override_str = [](std::string& target, const std::string& flag) {
            if (!flag.empty()) target = flag;
        };
        override_str(merged.mesh, flag_values.mesh);
        override_str(merged.masks_dir, flag_values.masks_dir);
        override_str(merged.trajectory, flag_values.trajectory);
        override_str(merged.body_template, flag_values.body_template);
        override_str(merged.rules, flag_values.rules);
        override_str(merged.output_dir, flag_values.output_dir);
        override_str(merged.human_mesh, flag_values.human_mesh);
        override_str(merged.object_mesh, flag_values.object_mesh);
        override_str(merged.alignment, flag_values.alignment);
        override_str(merged.poses, flag_values.poses);
        override_str(merged.contact_spec, flag_values.contact_spec);
        override_str(merged.manifest, flag_values.manifest);
        override_str(merged.front_mask, flag_values.front_mask);

        CLI::App* active = app.get_subcommands().front();
        auto flag_given = [&](const char* name) {
            const CLI::Option* option = active->get_option_no_throw(name);
            return option != nullptr && option->count() > 0;
        };
        if (flag_given("--tau")) merged.tau = flag_values.tau;
        if (flag_given("--threshold")) merged.contact_threshold = flag_values.contact_threshold;
        if (flag_given("--rounds")) merged.refine_rounds = flag_values.refine_rounds;
        if (flag_given("--n-per-subset")) merged.n_per_subset = flag_values.n_per_subset;
        if (flag_given("--penetration-threshold"))
            merged.penetration_threshold = flag_values.penetration_threshold;
        if (flag_given("--float-human-distance"))
            merged.float_human_distance = flag_values.float_human_distance;
        if (flag_given("--float-ground-height"))
            merged.float_ground_height = flag_values.float_ground_height;
        if (flag_given("--threads")) merged.threads = flag_values.threads;
        if (active == trajectory_cmd || active == segment_cmd || active == register_cmd) {
            if (flag_given("--n-views"))
                merged.trajectory_settings.n_views = flag_values.trajectory_settings.n_views;
            if (flag_given("--n-bands"))
                merged.trajectory_settings.n_bands = flag_values.trajectory_settings.n_bands;
            if (flag_given("--width"))
                merged.trajectory_settings.width = flag_values.trajectory_settings.width;
            if (flag_given("--height"))
                merged.trajectory_settings.height = flag_values.trajectory_settings.height;
            if (flag_given("--fov"))
                merged.trajectory_settings.fov_deg = flag_values.trajectory_settings.fov_deg;
            if (flag_given("--radius-scale"))
                merged.trajectory_settings.radius_scale =
                    flag_values.trajectory_settings.radius_scale;
        }
        if (delta_opt->count()) merged.delta = delta_value;
        if (seed_opt->count()) merged.seed = seed_value;
        if (front_azimuth_opt->count()) merged.front_azimuth_deg = front_azimuth_value;
        validate_config(merged);
        args.config = merged;
        set_max_threads(merged.threads);

        if (trajectory_cmd->parsed())
            return run_trajectory(args, mesh_path, center_flag,
                                  radius_opt->count() ? std::optional<double>(radius_value)
                                                      : std::nullopt,
                                  out_path);
        if (segment_cmd->parsed()) return run_segment(args);
        if (register_cmd->parsed()) return run_register(args);
        if (contact_cmd->parsed())
            return run_contact(args, body_mesh_path, batch_path, out_path, out_csv_path);
        if (animate_cmd->parsed()) return run_animate(args);
        if (curate_cmd->parsed()) return run_curate(args);
        if (select_cmd->parsed()) return run_select(args, candidates_path, out_path);
        throw ConfigError("no subcommand given");
    } catch (const ConfigError& e) {
        log_error(e.what());
        return kExitConfig;
    } catch (const Error& e) {
        log_error(e.what());
        return kExitData;
    } catch (const nlohmann::json::exception& e) {
        log_error(std::string("malformed JSON input: ") + e.what());
        return kExitData;
    } catch (const std::exception& e) {
        log_error(std::string("internal error: ") + e.what());
        return kExitInternal;
    }
}
