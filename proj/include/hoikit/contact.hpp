#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hoikit/body.hpp"
#include "hoikit/mesh.hpp"

namespace hoikit {

/// The eight contact configurations.
enum class Configuration {
    on_back,
    right_hand,
    left_hand,
    right_leg,
    left_leg,
    both_hands,
    no_contact,
    other,
};

inline constexpr int kConfigurationCount = 8;

const char* to_string(Configuration configuration);
std::optional<Configuration> configuration_from_string(const std::string& name);

/// Part subsets as bitmasks over PartName (bit i = part i present).
using PartMask = uint32_t;

constexpr PartMask part_bit(PartName part) { return 1u << static_cast<int>(part); }

PartMask parts_to_mask(std::span<const PartName> parts);
std::vector<PartName> mask_to_parts(PartMask mask);

inline constexpr double kContactThreshold = 0.04;  // meters

/// Per-part minimum vertex distance from the labeled body mesh to the
/// object; +infinity for parts with no vertices.
std::array<double, kPartCount> part_min_distances(const TriMesh& body_mesh,
                                                  std::span<const PartName> labels,
                                                  const TriMesh& object);

/// Parts whose distance is strictly below the threshold.
std::vector<PartName> contacting_parts(const std::array<double, kPartCount>& distances,
                                       double threshold = kContactThreshold);

/// Maps any part subset to exactly one configuration label.
Configuration classify_configuration(PartMask parts);
Configuration classify_configuration(std::span<const PartName> parts);

struct ContactReport {
    std::array<double, kPartCount> part_distance;
    std::vector<PartName> contacting;
    Configuration configuration = Configuration::no_contact;
};

ContactReport make_contact_report(const TriMesh& body_mesh, std::span<const PartName> labels,
                                  const TriMesh& object, double threshold = kContactThreshold);

/// Required contact parts for one evaluation prompt.
struct ContactSpec {
    std::string category;
    std::vector<PartName> parts;
};

/// All required parts in contact; extra contacts are allowed.
bool report_satisfies(const ContactReport& report, const ContactSpec& spec);

/// Fraction of aligned (report, spec) pairs whose required parts are all in
/// contact. Throws on mismatched or empty lists.
double contact_accuracy(std::span<const ContactReport> reports,
                        std::span<const ContactSpec> specs);

struct Candidate {
    TriMesh object;
    TriMesh body_mesh;                  // registered body in scan space
    std::vector<PartName> body_labels;  // one per body_mesh vertex
};

/// Lowest index satisfying the spec; otherwise the index with the most
/// required parts in contact (ties to the lowest index).
int select_best_candidate(std::span<const Candidate> candidates, const ContactSpec& spec,
                          double threshold = kContactThreshold);
int select_best_candidate(std::span<const ContactReport> reports, const ContactSpec& spec);

/// Deterministic caption record: the LLM fusion step happens elsewhere, this
/// only assembles the fields (parts sorted, keys canonical).
std::string compose_caption_fields(const std::string& human_desc, const std::string& object_desc,
                                   const std::string& category, const std::string& action,
                                   std::span<const PartName> parts);

// JSON (one report) and spec serialization used by the CLI.
std::string contact_report_to_json(const ContactReport& report);
ContactReport contact_report_from_json(const std::string& text);
ContactSpec contact_spec_from_json(const std::string& text);
std::string contact_spec_to_json(const ContactSpec& spec);

}  // namespace hoikit
