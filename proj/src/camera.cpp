#include "hoikit/camera.hpp"

#include "hoikit/error.hpp"

namespace hoikit {

void validate_camera(const Camera& camera) {
    if ((camera.look_at - camera.position).squared_norm() == 0.0)
        throw InvalidArgument("camera position equals look_at");
    if (!(camera.fov_deg > 0.0 && camera.fov_deg < 180.0))
        throw InvalidArgument("camera fov must be in (0, 180) degrees");
    if (camera.width < 1 || camera.height < 1)
        throw InvalidArgument("camera resolution must be at least 1x1");
    const Vec3 forward = (camera.look_at - camera.position).normalized();
    if (forward.cross(camera.up).squared_norm() < 1e-24)
        throw InvalidArgument("camera up vector is parallel to the view direction");
}

CameraBasis camera_basis(const Camera& camera) {
    const Vec3 forward = (camera.look_at - camera.position).normalized();
    const Vec3 right = forward.cross(camera.up).normalized();
    const Vec3 up = right.cross(forward);
    return {right, up, forward};
}

Vec3 view_space_point(const Camera& camera, const CameraBasis& basis, const Vec3& v) {
    const Vec3 d = v - camera.position;
    return {d.dot(basis.right), d.dot(basis.up), d.dot(basis.forward)};
}

std::optional<Projection> project_vertex(const Camera& camera, const Vec3& v) {
    const CameraBasis basis = camera_basis(camera);
    const Vec3 p = view_space_point(camera, basis, v);
    if (p.z <= 0.0) return std::nullopt;
    const double focal = (camera.height * 0.5) / std::tan(deg_to_rad(camera.fov_deg) * 0.5);
    const double px = camera.width * 0.5 + focal * p.x / p.z;
    const double py = camera.height * 0.5 - focal * p.y / p.z;
    if (px < 0.0 || px >= camera.width || py < 0.0 || py >= camera.height) return std::nullopt;
    return Projection{px, py, p.z};
}

}  // namespace hoikit
