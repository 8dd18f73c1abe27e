#pragma once

#include <string>
#include <vector>

#include "hoikit/camera.hpp"

namespace hoikit {

struct ElevationBand {
    double elevation_deg = 0.0;
    int view_count = 0;
};

/// Ordered multi-band spherical camera sweep around a common center. Bands
/// are listed in camera order; the azimuth sweep direction alternates from
/// one band to the next.
struct Trajectory {
    Vec3 center;
    double radius = 0.0;
    std::vector<Camera> cameras;
    std::vector<ElevationBand> bands;
};

/// Builds the sweep: n_views cameras split as evenly as possible over n_bands
/// elevation bands spanning [-60, +60] degrees, each band a uniform 360
/// degree azimuth sweep, direction alternating per band. The sequence starts
/// at the band whose elevation is nearest +45 degrees.
Trajectory make_trajectory(const Vec3& center, double radius, int n_views, int n_bands,
                           int width, int height, double fov_deg);

std::string trajectory_to_json(const Trajectory& trajectory);
Trajectory trajectory_from_json(const std::string& text);
void save_trajectory(const Trajectory& trajectory, const std::string& path);
Trajectory load_trajectory(const std::string& path);

/// Azimuth of a camera position around the +y axis through `center`,
/// measured in degrees from +x toward +z.
double camera_azimuth_deg(const Camera& camera, const Vec3& center);
double camera_elevation_deg(const Camera& camera, const Vec3& center);

}  // namespace hoikit
