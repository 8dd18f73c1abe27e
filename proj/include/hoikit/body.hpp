#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hoikit/mesh.hpp"
#include "hoikit/vec3.hpp"

namespace hoikit {

/// Closed body-part set; serialized as lowercase snake_case strings.
enum class PartName {
    head,
    torso,
    back,
    left_upper_arm,
    right_upper_arm,
    left_forearm,
    right_forearm,
    left_hand,
    right_hand,
    left_upper_leg,
    right_upper_leg,
    left_lower_leg,
    right_lower_leg,
    left_foot,
    right_foot,
};

inline constexpr int kPartCount = 15;

const char* to_string(PartName part);
std::optional<PartName> part_from_string(const std::string& name);

struct JointWeight {
    int joint = 0;
    double weight = 0.0;
};

/// Articulated skinned template: rest surface, kinematic tree, sparse LBS
/// weights, per-vertex part labels, opaque shape coefficients.
struct SkinnedBody {
    std::vector<Vec3> rest_vertices;
    std::vector<std::array<int, 3>> faces;
    std::vector<Vec3> joints;
    std::vector<int> parents;  // -1 for the root
    std::vector<std::vector<JointWeight>> weights;
    std::vector<PartName> part_labels;
    std::vector<double> shape_beta;  // pass-through, never edited
};

/// Axis-angle rotation per joint plus a root translation.
struct Pose {
    Vec3 root_translation;
    std::vector<Vec3> rotations;

    static Pose identity(size_t joint_count) {
        Pose p;
        p.rotations.assign(joint_count, Vec3{});
        return p;
    }
};

/// Checks the tree/weight/label invariants; weight rows off unity by more
/// than 1e-4 are rejected, smaller drift is renormalized.
void validate_body(SkinnedBody& body);

SkinnedBody load_body(const std::string& path);
void save_body(const SkinnedBody& body, const std::string& path);

/// Rest surface as a plain mesh (no labels).
TriMesh body_mesh(const SkinnedBody& body);

struct RigidTransform {
    Mat3 rotation;
    Vec3 translation;

    Vec3 apply(const Vec3& v) const { return rotation * v + translation; }
};

/// World transform per joint that maps rest space to posed space
/// (identity pose gives the identity transform everywhere).
std::vector<RigidTransform> skinning_transforms(const SkinnedBody& body, const Pose& pose);

/// Linear blend skinning of the rest surface under `pose`.
TriMesh pose_body(const SkinnedBody& body, const Pose& pose);

struct SkinBinding {
    std::vector<std::vector<JointWeight>> weights;
    std::vector<PartName> part_labels;
};

/// Copies weights and part label from the nearest body vertex (lowest index
/// on ties). The body must already be aligned to the scan coordinates.
SkinBinding transfer_weights(const TriMesh& scan, const SkinnedBody& body);

/// Joint whose distance to the object surface is minimal; joints within
/// 1e-6 m of the minimum resolve to the lowest index.
int attach_object_joint(const TriMesh& object, const SkinnedBody& body);

std::vector<Pose> load_pose_sequence(const std::string& path);
void save_pose_sequence(const std::vector<Pose>& frames, const std::string& path);

}  // namespace hoikit
