#include "hoikit/image_io.hpp"

#include <cstring>
#include <fstream>

#include <zlib.h>

#include "hoikit/error.hpp"

namespace hoikit {

namespace {

const uint8_t kPngSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};

uint32_t read_be32(const uint8_t* p) {
    return (uint32_t(p[0]) << 24) | (uint32_t(p[1]) << 16) | (uint32_t(p[2]) << 8) | uint32_t(p[3]);
}

void write_be32(std::vector<uint8_t>& out, uint32_t v) {
    out.push_back(static_cast<uint8_t>(v >> 24));
    out.push_back(static_cast<uint8_t>(v >> 16));
    out.push_back(static_cast<uint8_t>(v >> 8));
    out.push_back(static_cast<uint8_t>(v));
}

std::vector<uint8_t> zlib_inflate(const std::vector<uint8_t>& in, size_t expected) {
    std::vector<uint8_t> out(expected);
    z_stream stream{};
    if (inflateInit(&stream) != Z_OK) throw Error("zlib inflateInit failed");
    stream.next_in = const_cast<Bytef*>(in.data());
    stream.avail_in = static_cast<uInt>(in.size());
    stream.next_out = out.data();
    stream.avail_out = static_cast<uInt>(out.size());
    const int rc = inflate(&stream, Z_FINISH);
    inflateEnd(&stream);
    if (rc != Z_STREAM_END || stream.total_out != expected)
        throw ParseError("PNG pixel stream did not decompress to the expected size", -1);
    return out;
}

std::vector<uint8_t> zlib_deflate(const std::vector<uint8_t>& in) {
    uLongf bound = compressBound(static_cast<uLong>(in.size()));
    std::vector<uint8_t> out(bound);
    if (compress2(out.data(), &bound, in.data(), static_cast<uLong>(in.size()), 6) != Z_OK)
        throw Error("zlib compress failed");
    out.resize(bound);
    return out;
}

int paeth(int a, int b, int c) {
    const int p = a + b - c;
    const int pa = std::abs(p - a), pb = std::abs(p - b), pc = std::abs(p - c);
    if (pa <= pb && pa <= pc) return a;
    if (pb <= pc) return b;
    return c;
}

// In-place defilter of one scanline given the previous one.
void defilter_row(uint8_t filter, uint8_t* row, const uint8_t* prev, size_t n, size_t bpp,
                  long offset) {
    switch (filter) {
        case 0: break;
        case 1:
            for (size_t i = bpp; i < n; ++i) row[i] = static_cast<uint8_t>(row[i] + row[i - bpp]);
            break;
        case 2:
            if (prev)
                for (size_t i = 0; i < n; ++i) row[i] = static_cast<uint8_t>(row[i] + prev[i]);
            break;
        case 3:
            for (size_t i = 0; i < n; ++i) {
                const int left = i >= bpp ? row[i - bpp] : 0;
                const int up = prev ? prev[i] : 0;
                row[i] = static_cast<uint8_t>(row[i] + (left + up) / 2);
            }
            break;
        case 4:
            for (size_t i = 0; i < n; ++i) {
                const int left = i >= bpp ? row[i - bpp] : 0;
                const int up = prev ? prev[i] : 0;
                const int ul = (prev && i >= bpp) ? prev[i - bpp] : 0;
                row[i] = static_cast<uint8_t>(row[i] + paeth(left, up, ul));
            }
            break;
        default:
            throw ParseError("unknown PNG filter type " + std::to_string(filter), -1, offset);
    }
}

}  // namespace

GrayImage make_gray_image(int width, int height, uint8_t fill) {
    if (width < 1 || height < 1) throw InvalidArgument("image must be at least 1x1");
    GrayImage img;
    img.width = width;
    img.height = height;
    img.pixels.assign(static_cast<size_t>(width) * height, fill);
    return img;
}

GrayImage read_png_gray8(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::vector<uint8_t> file((std::istreambuf_iterator<char>(in)),
                              std::istreambuf_iterator<char>());
    if (file.size() < 8 || std::memcmp(file.data(), kPngSignature, 8) != 0)
        throw ParseError("not a PNG file: " + path, -1, 0);

    size_t pos = 8;
    int width = 0, height = 0, bit_depth = 0, color_type = 0, interlace = 0;
    std::vector<uint8_t> idat;
    bool saw_ihdr = false;
    while (pos + 8 <= file.size()) {
        const uint32_t length = read_be32(&file[pos]);
        if (pos + 12 + length > file.size())
            throw ParseError("truncated PNG chunk", -1, static_cast<long>(pos));
        const char* type = reinterpret_cast<const char*>(&file[pos + 4]);
        const uint8_t* data = &file[pos + 8];
        if (std::memcmp(type, "IHDR", 4) == 0) {
            if (length != 13) throw ParseError("bad IHDR length", -1, static_cast<long>(pos));
            width = static_cast<int>(read_be32(data));
            height = static_cast<int>(read_be32(data + 4));
            bit_depth = data[8];
            color_type = data[9];
            interlace = data[12];
            saw_ihdr = true;
        } else if (std::memcmp(type, "IDAT", 4) == 0) {
            idat.insert(idat.end(), data, data + length);
        } else if (std::memcmp(type, "IEND", 4) == 0) {
            break;
        }
        // ancillary chunks are skipped; CRCs are not verified
        pos += 12 + length;
    }
    if (!saw_ihdr) throw ParseError("PNG has no IHDR chunk", -1, 8);
    if (width < 1 || height < 1) throw ParseError("bad PNG dimensions", -1, 8);
    if (bit_depth != 8 || (color_type != 0 && color_type != 4) || interlace != 0)
        throw ParseError("unsupported PNG variant (need non-interlaced 8-bit grayscale), got "
                         "depth " + std::to_string(bit_depth) + " color type " +
                         std::to_string(color_type),
                         -1, 8);

    const size_t channels = color_type == 4 ? 2 : 1;
    const size_t stride = static_cast<size_t>(width) * channels;
    const size_t raw_size = (stride + 1) * static_cast<size_t>(height);
    std::vector<uint8_t> raw = zlib_inflate(idat, raw_size);

    GrayImage img = make_gray_image(width, height);
    const uint8_t* prev = nullptr;
    for (int y = 0; y < height; ++y) {
        uint8_t* row = &raw[static_cast<size_t>(y) * (stride + 1)];
        defilter_row(row[0], row + 1, prev, stride, channels,
                     static_cast<long>(y) * static_cast<long>(stride + 1));
        for (int x = 0; x < width; ++x)
            img.at(x, y) = row[1 + static_cast<size_t>(x) * channels];
        prev = row + 1;
    }
    return img;
}

void write_png_gray8(const GrayImage& image, const std::string& path) {
    if (image.width < 1 || image.height < 1 ||
        image.pixels.size() != static_cast<size_t>(image.width) * image.height)
        throw InvalidArgument("malformed image buffer");

    // Filter 0 on every row; masks are near-constant so compression is fine.
    std::vector<uint8_t> raw;
    raw.reserve((static_cast<size_t>(image.width) + 1) * image.height);
    for (int y = 0; y < image.height; ++y) {
        raw.push_back(0);
        const uint8_t* row = &image.pixels[static_cast<size_t>(y) * image.width];
        raw.insert(raw.end(), row, row + image.width);
    }
    const std::vector<uint8_t> compressed = zlib_deflate(raw);

    std::vector<uint8_t> out(kPngSignature, kPngSignature + 8);
    auto chunk = [&out](const char* type, const std::vector<uint8_t>& data) {
        write_be32(out, static_cast<uint32_t>(data.size()));
        const size_t type_pos = out.size();
        out.insert(out.end(), type, type + 4);
        out.insert(out.end(), data.begin(), data.end());
        const uLong crc =
            crc32(0, &out[type_pos], static_cast<uInt>(4 + data.size()));
        write_be32(out, static_cast<uint32_t>(crc));
    };

    std::vector<uint8_t> ihdr;
    write_be32(ihdr, static_cast<uint32_t>(image.width));
    write_be32(ihdr, static_cast<uint32_t>(image.height));
    ihdr.push_back(8);  // bit depth
    ihdr.push_back(0);  // grayscale
    ihdr.push_back(0);  // compression
    ihdr.push_back(0);  // filter
    ihdr.push_back(0);  // no interlace
    chunk("IHDR", ihdr);
    chunk("IDAT", compressed);
    chunk("IEND", {});

    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path + " for writing");
    f.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
    if (!f) throw IoError("write failure on " + path);
}

}  // namespace hoikit
