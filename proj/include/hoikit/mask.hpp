#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hoikit/image_io.hpp"

namespace hoikit {

/// Binary human/object masks for one rendered view. Masks may overlap;
/// values are strictly 0 or 1.
struct MaskFrame {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> human;
    std::vector<uint8_t> object;

    uint8_t human_at(int x, int y) const { return human[static_cast<size_t>(y) * width + x]; }
    uint8_t object_at(int x, int y) const { return object[static_cast<size_t>(y) * width + x]; }
};

MaskFrame make_mask_frame(int width, int height);

/// view_{i:04}_human.png / view_{i:04}_object.png inside `dir`.
std::string mask_path(const std::string& dir, int view_index, const char* kind);

/// Thresholds the 8-bit PNGs at 128 (>= 128 reads as 1).
MaskFrame load_mask_frame(const std::string& dir, int view_index);
void save_mask_frame(const MaskFrame& frame, const std::string& dir, int view_index);

/// Grayscale -> binary at the standard threshold.
std::vector<uint8_t> binarize(const GrayImage& image);

}  // namespace hoikit
