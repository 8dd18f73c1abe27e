#pragma once

#include <string>
#include <vector>

namespace hoikit {

/// Per-pixel distance along the camera view axis, +infinity for background.
/// Row-major, top row first.
struct DepthMap {
    int width = 0;
    int height = 0;
    std::vector<float> depth;

    float at(int x, int y) const { return depth[static_cast<size_t>(y) * width + x]; }
    float& at(int x, int y) { return depth[static_cast<size_t>(y) * width + x]; }
};

DepthMap make_depth_map(int width, int height);

// PFM (grayscale "Pf", little-endian), bottom row first per the format.
void save_pfm(const DepthMap& map, const std::string& path);
DepthMap load_pfm(const std::string& path);

}  // namespace hoikit
