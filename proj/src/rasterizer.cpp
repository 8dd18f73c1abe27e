#include "hoikit/rasterizer.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace hoikit {

namespace {

constexpr double kNearPlane = 1e-9;

struct ScreenVertex {
    double x = 0.0;
    double y = 0.0;
    double inv_z = 0.0;
};

ScreenVertex to_screen(const Camera& camera, double focal, const Vec3& view_point) {
    ScreenVertex s;
    s.x = camera.width * 0.5 + focal * view_point.x / view_point.z;
    s.y = camera.height * 0.5 - focal * view_point.y / view_point.z;
    s.inv_z = 1.0 / view_point.z;
    return s;
}

// Sutherland-Hodgman against the near plane z = kNearPlane, in view space.
// A triangle yields at most 4 vertices.
int clip_near(const Vec3 in[3], Vec3 out[4]) {
    int n = 0;
    for (int i = 0; i < 3; ++i) {
        const Vec3& a = in[i];
        const Vec3& b = in[(i + 1) % 3];
        const bool a_in = a.z > kNearPlane;
        const bool b_in = b.z > kNearPlane;
        if (a_in) out[n++] = a;
        if (a_in != b_in) {
            const double t = (kNearPlane - a.z) / (b.z - a.z);
            out[n++] = a + (b - a) * t;
        }
    }
    return n;
}

double edge(double ax, double ay, double bx, double by, double px, double py) {
    return (bx - ax) * (py - ay) - (by - ay) * (px - ax);
}

// Top-left rule for pixel coordinates (y grows downward) and triangles
// oriented so the edge function is >= 0 inside.
bool edge_is_top_left(const ScreenVertex& a, const ScreenVertex& b) {
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    return (dy == 0.0 && dx > 0.0) || dy < 0.0;
}

void fill_triangle(const ScreenVertex& v0, const ScreenVertex& v1, const ScreenVertex& v2,
                   DepthMap& map) {
    ScreenVertex a = v0, b = v1, c = v2;
    double area = edge(a.x, a.y, b.x, b.y, c.x, c.y);
    if (area == 0.0) return;
    if (area < 0.0) {
        std::swap(b, c);
        area = -area;
    }

    const int x0 = std::max(0, static_cast<int>(std::floor(std::min({a.x, b.x, c.x}) - 0.5)));
    const int x1 = std::min(map.width - 1, static_cast<int>(std::ceil(std::max({a.x, b.x, c.x}))));
    const int y0 = std::max(0, static_cast<int>(std::floor(std::min({a.y, b.y, c.y}) - 0.5)));
    const int y1 = std::min(map.height - 1, static_cast<int>(std::ceil(std::max({a.y, b.y, c.y}))));

    const bool tl_bc = edge_is_top_left(b, c);
    const bool tl_ca = edge_is_top_left(c, a);
    const bool tl_ab = edge_is_top_left(a, b);

    for (int y = y0; y <= y1; ++y) {
        const double py = y + 0.5;
        for (int x = x0; x <= x1; ++x) {
            const double px = x + 0.5;
            const double w0 = edge(b.x, b.y, c.x, c.y, px, py);
            const double w1 = edge(c.x, c.y, a.x, a.y, px, py);
            const double w2 = edge(a.x, a.y, b.x, b.y, px, py);
            const bool in0 = w0 > 0.0 || (w0 == 0.0 && tl_bc);
            const bool in1 = w1 > 0.0 || (w1 == 0.0 && tl_ca);
            const bool in2 = w2 > 0.0 || (w2 == 0.0 && tl_ab);
            if (!(in0 && in1 && in2)) continue;
            const double inv_z = (w0 * a.inv_z + w1 * b.inv_z + w2 * c.inv_z) / area;
            if (inv_z <= 0.0) continue;
            const float depth = static_cast<float>(1.0 / inv_z);
            float& slot = map.at(x, y);
            if (depth < slot) slot = depth;
        }
    }
}

}  // namespace

DepthMap rasterize_depth(const TriMesh& mesh, const Camera& camera) {
    validate_camera(camera);
    validate_mesh(mesh);
    DepthMap map = make_depth_map(camera.width, camera.height);

    const CameraBasis basis = camera_basis(camera);
    const double focal = (camera.height * 0.5) / std::tan(deg_to_rad(camera.fov_deg) * 0.5);

    std::vector<Vec3> view(mesh.vertices.size());
    for (size_t i = 0; i < mesh.vertices.size(); ++i)
        view[i] = view_space_point(camera, basis, mesh.vertices[i]);

    for (const auto& f : mesh.faces) {
        const Vec3 tri[3] = {view[static_cast<size_t>(f[0])], view[static_cast<size_t>(f[1])],
                             view[static_cast<size_t>(f[2])]};
        Vec3 clipped[4];
        const int n = clip_near(tri, clipped);
        if (n < 3) continue;
        ScreenVertex s[4];
        for (int i = 0; i < n; ++i) s[i] = to_screen(camera, focal, clipped[i]);
        for (int i = 1; i + 1 < n; ++i) fill_triangle(s[0], s[i], s[i + 1], map);
    }
    return map;
}

}  // namespace hoikit
