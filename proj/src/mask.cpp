#include "hoikit/mask.hpp"

#include <cstdio>

#include "hoikit/error.hpp"

namespace hoikit {

MaskFrame make_mask_frame(int width, int height) {
    if (width < 1 || height < 1) throw InvalidArgument("mask must be at least 1x1");
    MaskFrame frame;
    frame.width = width;
    frame.height = height;
    frame.human.assign(static_cast<size_t>(width) * height, 0);
    frame.object.assign(static_cast<size_t>(width) * height, 0);
    return frame;
}

std::string mask_path(const std::string& dir, int view_index, const char* kind) {
    char name[64];
    std::snprintf(name, sizeof name, "view_%04d_%s.png", view_index, kind);
    return dir + "/" + name;
}

std::vector<uint8_t> binarize(const GrayImage& image) {
    std::vector<uint8_t> out(image.pixels.size());
    for (size_t i = 0; i < image.pixels.size(); ++i) out[i] = image.pixels[i] >= 128 ? 1 : 0;
    return out;
}

MaskFrame load_mask_frame(const std::string& dir, int view_index) {
    const GrayImage human = read_png_gray8(mask_path(dir, view_index, "human"));
    const GrayImage object = read_png_gray8(mask_path(dir, view_index, "object"));
    if (human.width != object.width || human.height != object.height)
        throw ParseError("human/object masks of view " + std::to_string(view_index) +
                             " have different sizes",
                         -1);
    MaskFrame frame;
    frame.width = human.width;
    frame.height = human.height;
    frame.human = binarize(human);
    frame.object = binarize(object);
    return frame;
}

void save_mask_frame(const MaskFrame& frame, const std::string& dir, int view_index) {
    GrayImage img = make_gray_image(frame.width, frame.height);
    for (size_t i = 0; i < frame.human.size(); ++i) img.pixels[i] = frame.human[i] ? 255 : 0;
    write_png_gray8(img, mask_path(dir, view_index, "human"));
    for (size_t i = 0; i < frame.object.size(); ++i) img.pixels[i] = frame.object[i] ? 255 : 0;
    write_png_gray8(img, mask_path(dir, view_index, "object"));
}

}  // namespace hoikit
