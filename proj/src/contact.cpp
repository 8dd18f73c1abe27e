#include "hoikit/contact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "hoikit/spatial_index.hpp"

namespace hoikit {

namespace {

constexpr const char* kConfigurationNames[kConfigurationCount] = {
    "on_back", "right_hand", "left_hand", "right_leg",
    "left_leg", "both_hands", "no_contact", "other",
};

constexpr PartMask kRightHandSet =
    part_bit(PartName::right_hand) | part_bit(PartName::right_forearm);
constexpr PartMask kLeftHandSet =
    part_bit(PartName::left_hand) | part_bit(PartName::left_forearm);
constexpr PartMask kRightLegSet = part_bit(PartName::right_upper_leg) |
                                  part_bit(PartName::right_lower_leg) |
                                  part_bit(PartName::right_foot);
constexpr PartMask kLeftLegSet = part_bit(PartName::left_upper_leg) |
                                 part_bit(PartName::left_lower_leg) |
                                 part_bit(PartName::left_foot);
constexpr PartMask kBackSet = part_bit(PartName::back);

}  // namespace

const char* to_string(Configuration configuration) {
    return kConfigurationNames[static_cast<int>(configuration)];
}

std::optional<Configuration> configuration_from_string(const std::string& name) {
    for (int i = 0; i < kConfigurationCount; ++i)
        if (name == kConfigurationNames[i]) return static_cast<Configuration>(i);
    return std::nullopt;
}

PartMask parts_to_mask(std::span<const PartName> parts) {
    PartMask mask = 0;
    for (PartName part : parts) mask |= part_bit(part);
    return mask;
}

std::vector<PartName> mask_to_parts(PartMask mask) {
    std::vector<PartName> parts;
    for (int i = 0; i < kPartCount; ++i)
        if (mask & (1u << i)) parts.push_back(static_cast<PartName>(i));
    return parts;
}

std::array<double, kPartCount> part_min_distances(const TriMesh& body_mesh,
                                                  std::span<const PartName> labels,
                                                  const TriMesh& object) {
    if (labels.size() != body_mesh.vertices.size())
        throw InvalidArgument("part_min_distances: every body vertex needs a part label");
    if (object.empty()) throw InvalidArgument("part_min_distances: empty object");

    std::array<double, kPartCount> distances;
    distances.fill(std::numeric_limits<double>::infinity());
    const SpatialIndex index(object.vertices);
    for (size_t v = 0; v < body_mesh.vertices.size(); ++v) {
        const double d = index.nearest(body_mesh.vertices[v]).distance;
        double& slot = distances[static_cast<size_t>(labels[v])];
        if (d < slot) slot = d;
    }
    return distances;
}

std::vector<PartName> contacting_parts(const std::array<double, kPartCount>& distances,
                                       double threshold) {
    if (!(threshold > 0.0)) throw InvalidArgument("contact threshold must be positive");
    std::vector<PartName> parts;
    for (int i = 0; i < kPartCount; ++i)
        if (distances[static_cast<size_t>(i)] < threshold)  // strictly smaller
            parts.push_back(static_cast<PartName>(i));
    return parts;
}

Configuration classify_configuration(PartMask parts) {
    if (parts == 0) return Configuration::no_contact;
    if ((parts & ~kRightHandSet) == 0) return Configuration::right_hand;
    if ((parts & ~kLeftHandSet) == 0) return Configuration::left_hand;
    if ((parts & ~(kRightHandSet | kLeftHandSet)) == 0)  // both sides present here
        return Configuration::both_hands;
    if ((parts & ~kRightLegSet) == 0) return Configuration::right_leg;
    if ((parts & ~kLeftLegSet) == 0) return Configuration::left_leg;
    if (parts == kBackSet) return Configuration::on_back;
    return Configuration::other;
}

Configuration classify_configuration(std::span<const PartName> parts) {
    return classify_configuration(parts_to_mask(parts));
}

ContactReport make_contact_report(const TriMesh& body_mesh, std::span<const PartName> labels,
                                  const TriMesh& object, double threshold) {
    ContactReport report;
    report.part_distance = part_min_distances(body_mesh, labels, object);
    report.contacting = contacting_parts(report.part_distance, threshold);
    report.configuration = classify_configuration(report.contacting);
    return report;
}

bool report_satisfies(const ContactReport& report, const ContactSpec& spec) {
    const PartMask have = parts_to_mask(report.contacting);
    if (report.configuration != classify_configuration(have)) return false;
    const PartMask need = parts_to_mask(spec.parts);
    return (need & ~have) == 0;
}

double contact_accuracy(std::span<const ContactReport> reports,
                        std::span<const ContactSpec> specs) {
    if (reports.size() != specs.size())
        throw InvalidArgument("contact_accuracy: report/spec count mismatch");
    if (reports.empty()) throw InvalidArgument("contact_accuracy: empty evaluation set");
    size_t correct = 0;
    for (size_t i = 0; i < reports.size(); ++i)
        if (report_satisfies(reports[i], specs[i])) ++correct;
    return static_cast<double>(correct) / static_cast<double>(reports.size());
}

int select_best_candidate(std::span<const ContactReport> reports, const ContactSpec& spec) {
    if (reports.empty()) throw InvalidArgument("select_best_candidate: no candidates");
    for (size_t i = 0; i < reports.size(); ++i)
        if (report_satisfies(reports[i], spec)) return static_cast<int>(i);

    int best = 0;
    int best_hits = -1;
    for (size_t i = 0; i < reports.size(); ++i) {
        const PartMask have = parts_to_mask(reports[i].contacting);
        int hits = 0;
        for (PartName part : spec.parts)
            if (have & part_bit(part)) ++hits;
        if (hits > best_hits) {
            best_hits = hits;
            best = static_cast<int>(i);
        }
    }
    return best;
}

int select_best_candidate(std::span<const Candidate> candidates, const ContactSpec& spec,
                          double threshold) {
    std::vector<ContactReport> reports;
    reports.reserve(candidates.size());
    for (const Candidate& candidate : candidates)
        reports.push_back(make_contact_report(candidate.body_mesh, candidate.body_labels,
                                              candidate.object, threshold));
    return select_best_candidate(reports, spec);
}

std::string compose_caption_fields(const std::string& human_desc, const std::string& object_desc,
                                   const std::string& category, const std::string& action,
                                   std::span<const PartName> parts) {
    if (category.empty()) throw InvalidArgument("compose_caption_fields: empty category");
    if (action.empty()) throw InvalidArgument("compose_caption_fields: empty action");
    std::vector<std::string> names;
    for (PartName part : parts) names.push_back(to_string(part));
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());

    // nlohmann orders object keys lexicographically, so dump() is canonical.
    nlohmann::json record{{"human", human_desc},   {"object", object_desc},
                          {"category", category},  {"action", action},
                          {"parts", names}};
    return record.dump();
}

std::string contact_report_to_json(const ContactReport& report) {
    nlohmann::json distances = nlohmann::json::object();
    for (int i = 0; i < kPartCount; ++i) {
        const double d = report.part_distance[static_cast<size_t>(i)];
        if (std::isfinite(d)) distances[to_string(static_cast<PartName>(i))] = d;
    }
    nlohmann::json parts = nlohmann::json::array();
    for (PartName part : report.contacting) parts.push_back(to_string(part));
    nlohmann::json j{{"part_distances", distances},
                     {"contacting_parts", parts},
                     {"configuration", to_string(report.configuration)}};
    return j.dump(2) + "\n";
}

ContactReport contact_report_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("contact report JSON: ") + e.what(), -1,
                         static_cast<long>(e.byte));
    }
    try {
        ContactReport report;
        report.part_distance.fill(std::numeric_limits<double>::infinity());
        for (const auto& [key, value] : j.at("part_distances").items()) {
            const auto part = part_from_string(key);
            if (!part) throw ParseError("unknown part '" + key + "' in report", -1);
            report.part_distance[static_cast<size_t>(*part)] = value.get<double>();
        }
        for (const auto& name : j.at("contacting_parts")) {
            const auto part = part_from_string(name.get<std::string>());
            if (!part) throw ParseError("unknown contacting part in report", -1);
            report.contacting.push_back(*part);
        }
        const auto configuration =
            configuration_from_string(j.at("configuration").get<std::string>());
        if (!configuration) throw ParseError("unknown configuration in report", -1);
        report.configuration = *configuration;
        return report;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("contact report JSON: ") + e.what(), -1);
    }
}

ContactSpec contact_spec_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("contact spec JSON: ") + e.what(), -1,
                         static_cast<long>(e.byte));
    }
    try {
        ContactSpec spec;
        spec.category = j.at("category").get<std::string>();
        if (spec.category.empty()) throw ParseError("contact spec category must be nonempty", -1);
        for (const auto& name : j.at("parts")) {
            const auto part = part_from_string(name.get<std::string>());
            if (!part)
                throw ParseError("unknown part '" + name.get<std::string>() + "' in contact spec",
                                 -1);
            spec.parts.push_back(*part);
        }
        return spec;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("contact spec JSON: ") + e.what(), -1);
    }
}

std::string contact_spec_to_json(const ContactSpec& spec) {
    nlohmann::json parts = nlohmann::json::array();
    for (PartName part : spec.parts) parts.push_back(to_string(part));
    return nlohmann::json{{"category", spec.category}, {"parts", parts}}.dump(2) + "\n";
}

}  // namespace hoikit
