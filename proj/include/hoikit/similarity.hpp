#pragma once

#include <string>

#include "hoikit/mesh.hpp"
#include "hoikit/vec3.hpp"

namespace hoikit {

/// Unit quaternion, scalar part first.
struct Quat {
    double w = 1.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    static Quat from_axis_angle(const Vec3& axis_angle);

    double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }
    Quat normalized() const;
    Quat conjugate() const { return {w, -x, -y, -z}; }
    Quat operator*(const Quat& o) const;
    Vec3 rotate(const Vec3& v) const;
    Mat3 to_matrix() const;
};

/// scale * R * v + t with scale > 0. Inverts and composes exactly.
struct Similarity7DoF {
    double scale = 1.0;
    Quat rotation;
    Vec3 translation;

    Vec3 apply(const Vec3& v) const { return rotation.rotate(v) * scale + translation; }
    Similarity7DoF inverse() const;
};

/// outer after inner: apply(compose(outer, inner), v) == outer(inner(v)).
Similarity7DoF compose(const Similarity7DoF& outer, const Similarity7DoF& inner);

/// Vertex-wise transform; topology and labels pass through unchanged.
TriMesh apply_similarity(const Similarity7DoF& transform, const TriMesh& mesh);

std::string similarity_to_json(const Similarity7DoF& transform);
Similarity7DoF similarity_from_json(const std::string& text);
void save_similarity(const Similarity7DoF& transform, const std::string& path);
Similarity7DoF load_similarity(const std::string& path);

}  // namespace hoikit
