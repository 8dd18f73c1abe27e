#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hoikit {

/// 8-bit grayscale image, row-major, top row first.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> pixels;

    uint8_t at(int x, int y) const { return pixels[static_cast<size_t>(y) * width + x]; }
    uint8_t& at(int x, int y) { return pixels[static_cast<size_t>(y) * width + x]; }
};

GrayImage make_gray_image(int width, int height, uint8_t fill = 0);

/// Reads a non-interlaced 8-bit grayscale PNG (color type 0, optionally with
/// an alpha channel that is dropped). Anything else is a ParseError.
GrayImage read_png_gray8(const std::string& path);

void write_png_gray8(const GrayImage& image, const std::string& path);

}  // namespace hoikit
