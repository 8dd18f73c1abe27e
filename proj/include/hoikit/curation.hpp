#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "hoikit/contact.hpp"
#include "hoikit/mesh.hpp"

namespace hoikit {

/// Sum of signed solid angles over all faces, divided by 4*pi. About 1 for
/// points inside a closed mesh, about 0 outside; robust to small holes.
double generalized_winding_number(const TriMesh& mesh, const Vec3& point);

/// Fraction of object vertices strictly inside the human surface
/// (winding number > 0.5).
double penetration_fraction(const TriMesh& human, const TriMesh& object);

struct FloatingCheckOptions {
    double max_human_distance = 0.30;  // d_h, meters
    double max_ground_height = 0.15;   // d_g, meters
    std::optional<double> ground_y;    // default: lowest human vertex
    int up_axis = 1;                   // 0 = x, 1 = y, 2 = z
};

/// False (reject) only when the object is both far from the human and
/// floating above the ground.
bool floating_object_check(const TriMesh& object, const TriMesh& human,
                           const FloatingCheckOptions& options = {});

struct DatasetSample {
    std::string id;
    std::string caption;
    std::string action;
    std::vector<std::string> renderings;
    std::string human_mesh_path;
    std::string object_mesh_path;
    ContactReport report;
};

/// Disjoint id lists, one per configuration, each sorted by id.
struct SubsetPartition {
    std::array<std::vector<std::string>, kConfigurationCount> per_configuration;
};

SubsetPartition partition_by_config(std::span<const DatasetSample> samples);

/// action -> allowed configurations. Unknown actions pass with a warning.
struct ActionRules {
    std::map<std::string, std::set<Configuration>> allowed;
};

ActionRules load_action_rules(const std::string& path);

std::vector<DatasetSample> action_contact_filter(std::span<const DatasetSample> samples,
                                                 const ActionRules& rules,
                                                 std::vector<std::string>* warnings = nullptr);

/// Seeded uniform sample without replacement from each configuration list
/// (whole list when shorter). Stable across platforms for a fixed seed;
/// each subset's picks are returned sorted, subsets in configuration order.
std::vector<std::string> select_subset(const SubsetPartition& partition, int n_per_subset,
                                       uint64_t seed);

// JSONL manifest, one DatasetSample per line. Duplicate ids are rejected.
std::vector<DatasetSample> read_manifest(const std::string& path);
void write_manifest(std::span<const DatasetSample> samples, const std::string& path);
DatasetSample sample_from_json_line(const std::string& line, long line_no);
std::string sample_to_json_line(const DatasetSample& sample);

}  // namespace hoikit
