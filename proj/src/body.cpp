#include "hoikit/body.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "hoikit/parallel.hpp"
#include "hoikit/spatial_index.hpp"

namespace hoikit {

namespace {

constexpr const char* kPartNames[kPartCount] = {
    "head",          "torso",          "back",           "left_upper_arm", "right_upper_arm",
    "left_forearm",  "right_forearm",  "left_hand",      "right_hand",     "left_upper_leg",
    "right_upper_leg", "left_lower_leg", "right_lower_leg", "left_foot",     "right_foot",
};

nlohmann::json vec_to_json(const Vec3& v) { return nlohmann::json::array({v.x, v.y, v.z}); }

Vec3 vec_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 3) throw ParseError("expected a 3-element array", -1);
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

}  // namespace

const char* to_string(PartName part) { return kPartNames[static_cast<int>(part)]; }

std::optional<PartName> part_from_string(const std::string& name) {
    for (int i = 0; i < kPartCount; ++i)
        if (name == kPartNames[i]) return static_cast<PartName>(i);
    return std::nullopt;
}

void validate_body(SkinnedBody& body) {
    const int joint_count = static_cast<int>(body.joints.size());
    if (joint_count == 0) throw InvalidArgument("body has no joints");
    if (body.parents.size() != body.joints.size())
        throw InvalidArgument("body parents/joints count mismatch");
    if (body.parents[0] != -1) throw InvalidArgument("joint 0 must be the root (parent -1)");
    for (size_t j = 1; j < body.parents.size(); ++j) {
        if (body.parents[j] < 0 || body.parents[j] >= joint_count ||
            body.parents[j] == static_cast<int>(j))
            throw InvalidArgument("joint " + std::to_string(j) + " has an invalid parent");
    }
    for (size_t j = 1; j < body.parents.size(); ++j) {
        // Every joint must reach the root; a bounded walk also catches cycles.
        int k = static_cast<int>(j);
        for (int steps = 0; k != 0; ++steps) {
            if (steps > joint_count)
                throw InvalidArgument("joint parents do not form a tree rooted at joint 0");
            k = body.parents[static_cast<size_t>(k)];
        }
    }
    if (body.weights.size() != body.rest_vertices.size())
        throw InvalidArgument("body weights/vertex count mismatch");
    if (body.part_labels.size() != body.rest_vertices.size())
        throw InvalidArgument("every body vertex needs a part label");

    for (size_t v = 0; v < body.weights.size(); ++v) {
        auto& row = body.weights[v];
        if (row.empty()) throw InvalidArgument("vertex " + std::to_string(v) + " has no weights");
        double sum = 0.0;
        for (const JointWeight& jw : row) {
            if (jw.joint < 0 || jw.joint >= joint_count)
                throw InvalidArgument("vertex " + std::to_string(v) +
                                      " references missing joint " + std::to_string(jw.joint));
            if (jw.weight < 0.0)
                throw InvalidArgument("vertex " + std::to_string(v) + " has a negative weight");
            sum += jw.weight;
        }
        if (std::abs(sum - 1.0) > 1e-4)
            throw InvalidArgument("weight row of vertex " + std::to_string(v) + " sums to " +
                                  std::to_string(sum) + ", outside the 1e-4 tolerance");
        for (JointWeight& jw : row) jw.weight /= sum;
    }

    TriMesh surface;
    surface.vertices = body.rest_vertices;
    surface.faces = body.faces;
    validate_mesh(surface);
}

SkinnedBody load_body(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("body JSON: ") + e.what(), -1, static_cast<long>(e.byte));
    }

    SkinnedBody body;
    try {
        for (const auto& v : j.at("vertices")) body.rest_vertices.push_back(vec_from_json(v));
        for (const auto& f : j.at("faces")) {
            if (!f.is_array() || f.size() != 3)
                throw ParseError("faces must be index triples", -1);
            body.faces.push_back({f[0].get<int>(), f[1].get<int>(), f[2].get<int>()});
        }
        for (const auto& p : j.at("joints")) body.joints.push_back(vec_from_json(p));
        for (const auto& p : j.at("parents")) body.parents.push_back(p.get<int>());
        for (const auto& row : j.at("weights")) {
            std::vector<JointWeight> weights;
            for (const auto& jw : row) {
                if (!jw.is_array() || jw.size() != 2)
                    throw ParseError("weight entries must be [joint, weight] pairs", -1);
                weights.push_back({jw[0].get<int>(), jw[1].get<double>()});
            }
            body.weights.push_back(std::move(weights));
        }
        for (const auto& label : j.at("part_labels")) {
            const auto part = part_from_string(label.get<std::string>());
            if (!part)
                throw ParseError("unknown part label '" + label.get<std::string>() + "'", -1);
            body.part_labels.push_back(*part);
        }
        if (j.contains("shape_beta"))
            for (const auto& b : j.at("shape_beta")) body.shape_beta.push_back(b.get<double>());
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("body JSON: ") + e.what(), -1);
    }

    validate_body(body);
    return body;
}

void save_body(const SkinnedBody& body, const std::string& path) {
    nlohmann::json j;
    auto& vertices = j["vertices"] = nlohmann::json::array();
    for (const Vec3& v : body.rest_vertices) vertices.push_back(vec_to_json(v));
    auto& faces = j["faces"] = nlohmann::json::array();
    for (const auto& f : body.faces) faces.push_back({f[0], f[1], f[2]});
    auto& joints = j["joints"] = nlohmann::json::array();
    for (const Vec3& p : body.joints) joints.push_back(vec_to_json(p));
    j["parents"] = body.parents;
    auto& weights = j["weights"] = nlohmann::json::array();
    for (const auto& row : body.weights) {
        nlohmann::json jrow = nlohmann::json::array();
        for (const JointWeight& jw : row) jrow.push_back({jw.joint, jw.weight});
        weights.push_back(std::move(jrow));
    }
    auto& labels = j["part_labels"] = nlohmann::json::array();
    for (PartName part : body.part_labels) labels.push_back(to_string(part));
    if (!body.shape_beta.empty()) j["shape_beta"] = body.shape_beta;

    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << j.dump(1) << "\n";
    if (!out) throw IoError("write failure on " + path);
}

TriMesh body_mesh(const SkinnedBody& body) {
    TriMesh mesh;
    mesh.vertices = body.rest_vertices;
    mesh.faces = body.faces;
    return mesh;
}

std::vector<RigidTransform> skinning_transforms(const SkinnedBody& body, const Pose& pose) {
    const size_t joint_count = body.joints.size();
    if (pose.rotations.size() != joint_count)
        throw InvalidArgument("pose has " + std::to_string(pose.rotations.size()) +
                              " rotations for " + std::to_string(joint_count) + " joints");

    // World transform of each joint frame. Parents may appear anywhere in
    // the array, so resolve each ancestor chain on demand.
    std::vector<RigidTransform> world(joint_count);
    std::vector<char> done(joint_count, 0);
    std::vector<int> chain;
    for (size_t j = 0; j < joint_count; ++j) {
        chain.clear();
        int k = static_cast<int>(j);
        while (!done[static_cast<size_t>(k)] && body.parents[static_cast<size_t>(k)] >= 0) {
            chain.push_back(k);
            k = body.parents[static_cast<size_t>(k)];
        }
        if (!done[static_cast<size_t>(k)]) {  // the root itself
            world[static_cast<size_t>(k)] = {
                rotation_from_axis_angle(pose.rotations[static_cast<size_t>(k)]),
                body.joints[static_cast<size_t>(k)] + pose.root_translation};
            done[static_cast<size_t>(k)] = 1;
        }
        for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
            const size_t child = static_cast<size_t>(*it);
            const size_t parent = static_cast<size_t>(body.parents[child]);
            const Vec3 offset = body.joints[child] - body.joints[parent];
            const RigidTransform& up = world[parent];
            world[child] = {up.rotation * rotation_from_axis_angle(pose.rotations[child]),
                            up.apply(offset)};
            done[child] = 1;
        }
    }

    // Fold in the inverse bind translation so rest pose maps to itself.
    std::vector<RigidTransform> skin(joint_count);
    for (size_t j = 0; j < joint_count; ++j) {
        skin[j].rotation = world[j].rotation;
        skin[j].translation = world[j].translation - world[j].rotation * body.joints[j];
    }
    return skin;
}

TriMesh pose_body(const SkinnedBody& body, const Pose& pose) {
    const std::vector<RigidTransform> skin = skinning_transforms(body, pose);
    TriMesh mesh = body_mesh(body);
    parallel_for(mesh.vertices.size(), [&](size_t v) {
        Vec3 blended;
        for (const JointWeight& jw : body.weights[v])
            blended += skin[static_cast<size_t>(jw.joint)].apply(body.rest_vertices[v]) * jw.weight;
        mesh.vertices[v] = blended;
    });
    return mesh;
}

SkinBinding transfer_weights(const TriMesh& scan, const SkinnedBody& body) {
    if (scan.empty() || body.rest_vertices.empty())
        throw InvalidArgument("transfer_weights: empty input");
    const SpatialIndex index(body.rest_vertices);
    SkinBinding binding;
    binding.weights.resize(scan.vertices.size());
    binding.part_labels.resize(scan.vertices.size());
    parallel_for(scan.vertices.size(), [&](size_t v) {
        const int nearest = index.nearest(scan.vertices[v]).index;
        binding.weights[v] = body.weights[static_cast<size_t>(nearest)];
        binding.part_labels[v] = body.part_labels[static_cast<size_t>(nearest)];
    });
    return binding;
}

int attach_object_joint(const TriMesh& object, const SkinnedBody& body) {
    if (object.empty()) throw InvalidArgument("attach_object_joint: empty object");
    const SpatialIndex index(object.vertices);
    std::vector<double> joint_distance(body.joints.size());
    for (size_t j = 0; j < body.joints.size(); ++j)
        joint_distance[j] = index.nearest(body.joints[j]).distance;

    double best = std::numeric_limits<double>::infinity();
    for (double d : joint_distance) best = std::min(best, d);
    // Near-tied joints are an arbitrary choice; lowest index keeps it
    // reproducible.
    for (size_t j = 0; j < joint_distance.size(); ++j)
        if (joint_distance[j] <= best + 1e-6) return static_cast<int>(j);
    return 0;
}

std::vector<Pose> load_pose_sequence(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("pose JSON: ") + e.what(), -1, static_cast<long>(e.byte));
    }
    try {
        std::vector<Pose> frames;
        for (const auto& f : j.at("frames")) {
            Pose pose;
            pose.root_translation = vec_from_json(f.at("root_translation"));
            for (const auto& r : f.at("rotations")) pose.rotations.push_back(vec_from_json(r));
            frames.push_back(std::move(pose));
        }
        return frames;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("pose JSON: ") + e.what(), -1);
    }
}

void save_pose_sequence(const std::vector<Pose>& frames, const std::string& path) {
    nlohmann::json j;
    auto& out_frames = j["frames"] = nlohmann::json::array();
    for (const Pose& pose : frames) {
        nlohmann::json f;
        f["root_translation"] = vec_to_json(pose.root_translation);
        auto& rotations = f["rotations"] = nlohmann::json::array();
        for (const Vec3& r : pose.rotations) rotations.push_back(vec_to_json(r));
        out_frames.push_back(std::move(f));
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << j.dump(1) << "\n";
    if (!out) throw IoError("write failure on " + path);
}

}  // namespace hoikit
