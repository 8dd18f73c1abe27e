#pragma once

#include <optional>

#include "hoikit/vec3.hpp"

namespace hoikit {

/// Pinhole camera. fov_deg is the vertical field of view; pixels are square.
struct Camera {
    Vec3 position;
    Vec3 look_at;
    Vec3 up{0.0, 1.0, 0.0};
    double fov_deg = 40.0;
    int width = 512;
    int height = 512;
};

/// Throws InvalidArgument when position == look_at, fov outside (0, 180),
/// width/height < 1, or up parallel to the view direction.
void validate_camera(const Camera& camera);

/// Orthonormal view basis: right/up in image terms, forward toward look_at.
struct CameraBasis {
    Vec3 right;
    Vec3 up;
    Vec3 forward;
};
CameraBasis camera_basis(const Camera& camera);

/// Point in camera coordinates: x right, y up, z forward (positive in front).
Vec3 view_space_point(const Camera& camera, const CameraBasis& basis, const Vec3& v);

struct Projection {
    double px = 0.0;  // pixel coordinates, origin at the top-left image corner
    double py = 0.0;
    double depth = 0.0;  // distance along the view axis (view-space z)
};

/// Pinhole projection. Empty when the point lands outside
/// [0,width) x [0,height) or has non-positive view depth.
std::optional<Projection> project_vertex(const Camera& camera, const Vec3& v);

}  // namespace hoikit
