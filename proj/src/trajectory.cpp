#include "hoikit/trajectory.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "hoikit/error.hpp"

namespace hoikit {

namespace {

constexpr double kMinElevation = -60.0;
constexpr double kMaxElevation = 60.0;
constexpr double kStartElevation = 45.0;  // "diagonally elevated" starting band

Vec3 sphere_point(const Vec3& center, double radius, double elevation_deg, double azimuth_deg) {
    const double el = deg_to_rad(elevation_deg);
    const double az = deg_to_rad(azimuth_deg);
    return center + radius * Vec3{std::cos(el) * std::cos(az), std::sin(el),
                                  std::cos(el) * std::sin(az)};
}

nlohmann::json vec_to_json(const Vec3& v) { return nlohmann::json::array({v.x, v.y, v.z}); }

Vec3 vec_from_json(const nlohmann::json& j, const char* what) {
    if (!j.is_array() || j.size() != 3)
        throw ParseError(std::string(what) + " must be a 3-element array", -1);
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

}  // namespace

Trajectory make_trajectory(const Vec3& center, double radius, int n_views, int n_bands,
                           int width, int height, double fov_deg) {
    if (radius <= 0.0) throw InvalidArgument("trajectory radius must be positive");
    if (n_bands < 1) throw InvalidArgument("trajectory needs at least one band");
    if (n_views < n_bands)
        throw InvalidArgument("n_views (" + std::to_string(n_views) +
                              ") must be at least n_bands (" + std::to_string(n_bands) + ")");

    std::vector<double> elevations(static_cast<size_t>(n_bands));
    if (n_bands == 1) {
        elevations[0] = 0.0;
    } else {
        for (int b = 0; b < n_bands; ++b)
            elevations[static_cast<size_t>(b)] =
                kMinElevation + (kMaxElevation - kMinElevation) * b / (n_bands - 1);
    }

    std::vector<int> counts(static_cast<size_t>(n_bands), n_views / n_bands);
    for (int b = 0; b < n_views % n_bands; ++b) ++counts[static_cast<size_t>(b)];

    // Start the sweep in the band closest to the diagonal elevation; the
    // remaining bands follow in cyclic order.
    int start = 0;
    for (int b = 1; b < n_bands; ++b)
        if (std::abs(elevations[static_cast<size_t>(b)] - kStartElevation) <
            std::abs(elevations[static_cast<size_t>(start)] - kStartElevation))
            start = b;

    Trajectory trajectory;
    trajectory.center = center;
    trajectory.radius = radius;
    trajectory.cameras.reserve(static_cast<size_t>(n_views));
    for (int k = 0; k < n_bands; ++k) {
        const size_t b = static_cast<size_t>((start + k) % n_bands);
        const int m = counts[b];
        const double direction = (k % 2 == 0) ? 1.0 : -1.0;
        const double step = 360.0 / m;
        for (int j = 0; j < m; ++j) {
            Camera camera;
            camera.position = sphere_point(center, radius, elevations[b], direction * step * j);
            camera.look_at = center;
            camera.up = {0.0, 1.0, 0.0};
            camera.fov_deg = fov_deg;
            camera.width = width;
            camera.height = height;
            validate_camera(camera);
            trajectory.cameras.push_back(camera);
        }
        trajectory.bands.push_back({elevations[b], m});
    }
    return trajectory;
}

std::string trajectory_to_json(const Trajectory& trajectory) {
    nlohmann::json j;
    j["center"] = vec_to_json(trajectory.center);
    j["radius"] = trajectory.radius;
    nlohmann::json cams = nlohmann::json::array();
    for (const Camera& c : trajectory.cameras) {
        cams.push_back({{"position", vec_to_json(c.position)},
                        {"look_at", vec_to_json(c.look_at)},
                        {"up", vec_to_json(c.up)},
                        {"fov_deg", c.fov_deg},
                        {"width", c.width},
                        {"height", c.height}});
    }
    j["cameras"] = std::move(cams);
    return j.dump(2) + "\n";
}

Trajectory trajectory_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("trajectory JSON: ") + e.what(), -1,
                         static_cast<long>(e.byte));
    }
    try {
        Trajectory trajectory;
        trajectory.center = vec_from_json(j.at("center"), "center");
        trajectory.radius = j.at("radius").get<double>();
        for (const auto& c : j.at("cameras")) {
            Camera camera;
            camera.position = vec_from_json(c.at("position"), "camera position");
            camera.look_at = vec_from_json(c.at("look_at"), "camera look_at");
            camera.up = vec_from_json(c.at("up"), "camera up");
            camera.fov_deg = c.at("fov_deg").get<double>();
            camera.width = c.at("width").get<int>();
            camera.height = c.at("height").get<int>();
            validate_camera(camera);
            trajectory.cameras.push_back(camera);
        }
        return trajectory;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("trajectory JSON: ") + e.what(), -1);
    }
}

void save_trajectory(const Trajectory& trajectory, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << trajectory_to_json(trajectory);
    if (!out) throw IoError("write failure on " + path);
}

Trajectory load_trajectory(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return trajectory_from_json(text);
}

double camera_azimuth_deg(const Camera& camera, const Vec3& center) {
    const Vec3 d = camera.position - center;
    return rad_to_deg(std::atan2(d.z, d.x));
}

double camera_elevation_deg(const Camera& camera, const Vec3& center) {
    const Vec3 d = camera.position - center;
    const double horizontal = std::sqrt(d.x * d.x + d.z * d.z);
    return rad_to_deg(std::atan2(d.y, horizontal));
}

}  // namespace hoikit
