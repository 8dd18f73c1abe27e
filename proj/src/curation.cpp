#include "hoikit/curation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include <json.hpp>

#include "hoikit/log.hpp"
#include "hoikit/parallel.hpp"
#include "hoikit/spatial_index.hpp"

namespace hoikit {

double generalized_winding_number(const TriMesh& mesh, const Vec3& point) {
    // Van Oosterom & Strackee solid angle per triangle.
    double total = 0.0;
    for (const auto& f : mesh.faces) {
        const Vec3 a = mesh.vertices[static_cast<size_t>(f[0])] - point;
        const Vec3 b = mesh.vertices[static_cast<size_t>(f[1])] - point;
        const Vec3 c = mesh.vertices[static_cast<size_t>(f[2])] - point;
        const double la = a.norm(), lb = b.norm(), lc = c.norm();
        const double numerator = a.dot(b.cross(c));
        const double denominator =
            la * lb * lc + a.dot(b) * lc + b.dot(c) * la + c.dot(a) * lb;
        total += 2.0 * std::atan2(numerator, denominator);
    }
    return total / (4.0 * kPi);
}

double penetration_fraction(const TriMesh& human, const TriMesh& object) {
    if (human.empty() || object.empty())
        throw InvalidArgument("penetration_fraction: empty mesh");
    const size_t n = object.vertices.size();
    std::vector<char> inside(n, 0);
    parallel_for(n, [&](size_t i) {
        inside[i] = generalized_winding_number(human, object.vertices[i]) > 0.5 ? 1 : 0;
    });
    size_t count = 0;
    for (char c : inside) count += static_cast<size_t>(c);
    return static_cast<double>(count) / static_cast<double>(n);
}

bool floating_object_check(const TriMesh& object, const TriMesh& human,
                           const FloatingCheckOptions& options) {
    if (object.empty() || human.empty())
        throw InvalidArgument("floating_object_check: empty mesh");
    if (options.up_axis < 0 || options.up_axis > 2)
        throw InvalidArgument("floating_object_check: up_axis must be 0, 1 or 2");

    const int axis = options.up_axis;
    const double ground =
        options.ground_y.value_or(bounding_box(human).min[axis]);

    const SpatialIndex human_index(human.vertices);
    double human_distance = std::numeric_limits<double>::infinity();
    double object_min_height = std::numeric_limits<double>::infinity();
    for (const Vec3& v : object.vertices) {
        human_distance = std::min(human_distance, human_index.nearest(v).distance);
        object_min_height = std::min(object_min_height, v[axis]);
    }
    const bool far_from_human = human_distance > options.max_human_distance;
    const bool far_from_ground = object_min_height - ground > options.max_ground_height;
    return !(far_from_human && far_from_ground);
}

SubsetPartition partition_by_config(std::span<const DatasetSample> samples) {
    SubsetPartition partition;
    for (const DatasetSample& sample : samples)
        partition.per_configuration[static_cast<size_t>(sample.report.configuration)].push_back(
            sample.id);
    for (auto& list : partition.per_configuration) std::sort(list.begin(), list.end());
    return partition;
}

std::vector<DatasetSample> action_contact_filter(std::span<const DatasetSample> samples,
                                                 const ActionRules& rules,
                                                 std::vector<std::string>* warnings) {
    std::vector<DatasetSample> kept;
    for (const DatasetSample& sample : samples) {
        const auto it = rules.allowed.find(sample.action);
        if (it == rules.allowed.end()) {
            const std::string msg =
                "action '" + sample.action + "' of sample " + sample.id + " has no rule; kept";
            log_warn(msg);
            if (warnings) warnings->push_back(msg);
            kept.push_back(sample);
            continue;
        }
        if (it->second.count(sample.report.configuration)) kept.push_back(sample);
    }
    return kept;
}

namespace {

// Platform-stable bounded draw (std::uniform_int_distribution is not
// specified bit-exactly across standard libraries).
uint64_t bounded_draw(std::mt19937_64& rng, uint64_t range) {
    const uint64_t limit = (std::numeric_limits<uint64_t>::max() / range) * range;
    uint64_t x = rng();
    while (x >= limit) x = rng();
    return x % range;
}

}  // namespace

std::vector<std::string> select_subset(const SubsetPartition& partition, int n_per_subset,
                                       uint64_t seed) {
    if (n_per_subset < 0) throw InvalidArgument("select_subset: negative sample count");
    std::mt19937_64 rng(seed);
    std::vector<std::string> selected;
    for (const auto& list : partition.per_configuration) {
        std::vector<std::string> pool = list;
        const size_t take = std::min(pool.size(), static_cast<size_t>(n_per_subset));
        // Partial Fisher-Yates: the first `take` entries are the sample.
        for (size_t i = 0; i < take; ++i) {
            const size_t j = i + static_cast<size_t>(bounded_draw(rng, pool.size() - i));
            std::swap(pool[i], pool[j]);
        }
        std::sort(pool.begin(), pool.begin() + static_cast<long>(take));
        selected.insert(selected.end(), pool.begin(), pool.begin() + static_cast<long>(take));
    }
    return selected;
}

DatasetSample sample_from_json_line(const std::string& line, long line_no) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("manifest line " + std::to_string(line_no) + ": " + e.what(), line_no);
    }
    try {
        DatasetSample sample;
        sample.id = j.at("id").get<std::string>();
        if (sample.id.empty()) throw ParseError("sample id must be nonempty", line_no);
        sample.caption = j.value("caption", std::string{});
        sample.action = j.value("action", std::string{});
        if (j.contains("renderings"))
            for (const auto& r : j.at("renderings"))
                sample.renderings.push_back(r.get<std::string>());
        sample.human_mesh_path = j.value("human_mesh", std::string{});
        sample.object_mesh_path = j.value("object_mesh", std::string{});
        if (j.contains("contact_report"))
            sample.report = contact_report_from_json(j.at("contact_report").dump());
        return sample;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("manifest line " + std::to_string(line_no) + ": " + e.what(), line_no);
    }
}

std::string sample_to_json_line(const DatasetSample& sample) {
    nlohmann::json j{{"id", sample.id},
                     {"caption", sample.caption},
                     {"action", sample.action},
                     {"renderings", sample.renderings},
                     {"human_mesh", sample.human_mesh_path},
                     {"object_mesh", sample.object_mesh_path},
                     {"contact_report", nlohmann::json::parse(contact_report_to_json(sample.report))}};
    return j.dump();
}

std::vector<DatasetSample> read_manifest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::vector<DatasetSample> samples;
    std::set<std::string> seen;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        samples.push_back(sample_from_json_line(line, line_no));
        if (!seen.insert(samples.back().id).second)
            throw ParseError("duplicate sample id '" + samples.back().id + "'", line_no);
    }
    return samples;
}

void write_manifest(std::span<const DatasetSample> samples, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    for (const DatasetSample& sample : samples) out << sample_to_json_line(sample) << "\n";
    if (!out) throw IoError("write failure on " + path);
}

ActionRules load_action_rules(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("rules JSON: ") + e.what(), -1, static_cast<long>(e.byte));
    }
    if (!j.is_object()) throw ParseError("rules file must map actions to configuration lists", -1);
    try {
        ActionRules rules;
        for (const auto& [action, configs] : j.items()) {
            if (!configs.is_array())
                throw ParseError("rules entry '" + action + "' must be an array", -1);
            std::set<Configuration> allowed;
            for (const auto& name : configs) {
                const auto configuration = configuration_from_string(name.get<std::string>());
                if (!configuration)
                    throw ParseError("unknown configuration '" + name.get<std::string>() +
                                         "' in rules entry '" + action + "'",
                                     -1);
                allowed.insert(*configuration);
            }
            rules.allowed[action] = std::move(allowed);
        }
        return rules;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("rules JSON: ") + e.what(), -1);
    }
}

}  // namespace hoikit
