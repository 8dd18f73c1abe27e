#include "hoikit/depth_map.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "hoikit/error.hpp"

namespace hoikit {

DepthMap make_depth_map(int width, int height) {
    if (width < 1 || height < 1) throw InvalidArgument("depth map must be at least 1x1");
    DepthMap map;
    map.width = width;
    map.height = height;
    map.depth.assign(static_cast<size_t>(width) * height,
                     std::numeric_limits<float>::infinity());
    return map;
}

void save_pfm(const DepthMap& map, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << "Pf\n" << map.width << " " << map.height << "\n-1.0\n";
    for (int y = map.height - 1; y >= 0; --y)
        out.write(reinterpret_cast<const char*>(&map.depth[static_cast<size_t>(y) * map.width]),
                  static_cast<std::streamsize>(map.width) * 4);
    if (!out) throw IoError("write failure on " + path);
}

DepthMap load_pfm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::string magic;
    int width = 0, height = 0;
    double scale = 0.0;
    in >> magic >> width >> height >> scale;
    if (magic != "Pf") throw ParseError("not a grayscale PFM file", 1);
    if (width < 1 || height < 1) throw ParseError("bad PFM dimensions", 2);
    if (scale >= 0.0) throw ParseError("big-endian PFM is not supported", 3);
    in.get();  // single whitespace after the scale line
    DepthMap map = make_depth_map(width, height);
    for (int y = height - 1; y >= 0; --y) {
        in.read(reinterpret_cast<char*>(&map.depth[static_cast<size_t>(y) * width]),
                static_cast<std::streamsize>(width) * 4);
        if (!in) throw ParseError("truncated PFM payload", -1, static_cast<long>(in.gcount()));
    }
    return map;
}

}  // namespace hoikit
