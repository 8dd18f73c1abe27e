#include "hoikit/mesh_io.hpp"

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include "hoikit/log.hpp"

namespace hoikit {

namespace {

// ---------------------------------------------------------------- OBJ ------

long resolve_obj_index(long idx, size_t vertex_count, long line) {
    // OBJ is 1-based; negative indices count back from the current vertex.
    long resolved = idx > 0 ? idx - 1 : static_cast<long>(vertex_count) + idx;
    if (idx == 0 || resolved < 0 || resolved >= static_cast<long>(vertex_count))
        throw IndexRangeError("face index " + std::to_string(idx) + " out of range over " +
                                  std::to_string(vertex_count) + " vertices",
                              line);
    return resolved;
}

TriMesh load_obj(std::istream& in) {
    TriMesh mesh;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "v") {
            Vec3 v;
            if (!(ls >> v.x >> v.y >> v.z))
                throw ParseError("malformed vertex line", line_no);
            mesh.vertices.push_back(v);
        } else if (tag == "f") {
            std::vector<int> poly;
            std::string corner;
            while (ls >> corner) {
                // Forms: i, i/t, i//n, i/t/n. Only the position index matters.
                const size_t slash = corner.find('/');
                const std::string head = slash == std::string::npos ? corner : corner.substr(0, slash);
                long idx = 0;
                try {
                    idx = std::stol(head);
                } catch (const std::exception&) {
                    throw ParseError("malformed face corner '" + corner + "'", line_no);
                }
                poly.push_back(static_cast<int>(resolve_obj_index(idx, mesh.vertices.size(), line_no)));
            }
            if (poly.size() < 3) throw ParseError("face with fewer than 3 corners", line_no);
            // Fan split for quads and larger polygons.
            for (size_t k = 1; k + 1 < poly.size(); ++k)
                mesh.faces.push_back({poly[0], poly[k], poly[k + 1]});
        }
        // vt / vn / usemtl / comments are pass-through.
    }
    return mesh;
}

void save_obj(const TriMesh& mesh, const std::string& path) {
    if (mesh.has_labels())
        log_warn("OBJ cannot carry vertex labels; dropping them for " + path);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    char buf[128];
    for (const Vec3& v : mesh.vertices) {
        std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", v.x, v.y, v.z);
        out << buf;
    }
    for (const auto& f : mesh.faces)
        out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
    if (!out) throw IoError("write failure on " + path);
}

// ---------------------------------------------------------------- PLY ------

enum class PlyType { i8, u8, i16, u16, i32, u32, f32, f64 };

size_t ply_type_size(PlyType t) {
    switch (t) {
        case PlyType::i8:
        case PlyType::u8: return 1;
        case PlyType::i16:
        case PlyType::u16: return 2;
        case PlyType::i32:
        case PlyType::u32:
        case PlyType::f32: return 4;
        case PlyType::f64: return 8;
    }
    return 0;
}

PlyType parse_ply_type(const std::string& s, long line) {
    if (s == "char" || s == "int8") return PlyType::i8;
    if (s == "uchar" || s == "uint8") return PlyType::u8;
    if (s == "short" || s == "int16") return PlyType::i16;
    if (s == "ushort" || s == "uint16") return PlyType::u16;
    if (s == "int" || s == "int32") return PlyType::i32;
    if (s == "uint" || s == "uint32") return PlyType::u32;
    if (s == "float" || s == "float32") return PlyType::f32;
    if (s == "double" || s == "float64") return PlyType::f64;
    throw ParseError("unknown PLY type '" + s + "'", line);
}

struct PlyProperty {
    std::string name;
    PlyType type = PlyType::f32;
    bool is_list = false;
    PlyType count_type = PlyType::u8;
};

struct PlyElement {
    std::string name;
    size_t count = 0;
    std::vector<PlyProperty> properties;
};

struct BinaryCursor {
    std::istream& in;
    long offset;  // bytes consumed after the header

    double read_scalar(PlyType t) {
        unsigned char raw[8];
        const size_t n = ply_type_size(t);
        if (!in.read(reinterpret_cast<char*>(raw), static_cast<std::streamsize>(n)))
            throw ParseError("unexpected end of binary payload", -1, offset);
        offset += static_cast<long>(n);
        switch (t) {
            case PlyType::i8: return static_cast<int8_t>(raw[0]);
            case PlyType::u8: return raw[0];
            case PlyType::i16: { int16_t v; std::memcpy(&v, raw, 2); return v; }
            case PlyType::u16: { uint16_t v; std::memcpy(&v, raw, 2); return v; }
            case PlyType::i32: { int32_t v; std::memcpy(&v, raw, 4); return v; }
            case PlyType::u32: { uint32_t v; std::memcpy(&v, raw, 4); return v; }
            case PlyType::f32: { float v; std::memcpy(&v, raw, 4); return v; }
            case PlyType::f64: { double v; std::memcpy(&v, raw, 8); return v; }
        }
        return 0.0;
    }
};

// One whitespace-separated token stream over the ascii body, tracking lines.
struct AsciiCursor {
    std::istream& in;
    long line;

    double next() {
        double v;
        if (!(in >> v)) throw ParseError("unexpected end of ascii payload", line);
        return v;
    }
    void end_row() { ++line; }
};

TriMesh load_ply(std::istream& in) {
    std::string line;
    long line_no = 1;  // "ply" magic already consumed as line 1
    bool binary = false;
    bool format_seen = false;
    std::vector<PlyElement> elements;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "comment" || tag == "obj_info" || tag.empty()) continue;
        if (tag == "format") {
            std::string fmt;
            ls >> fmt;
            if (fmt == "ascii") binary = false;
            else if (fmt == "binary_little_endian") binary = true;
            else throw ParseError("unsupported PLY format '" + fmt + "'", line_no);
            format_seen = true;
        } else if (tag == "element") {
            PlyElement el;
            if (!(ls >> el.name >> el.count)) throw ParseError("malformed element line", line_no);
            elements.push_back(el);
        } else if (tag == "property") {
            if (elements.empty()) throw ParseError("property before any element", line_no);
            PlyProperty prop;
            std::string first;
            ls >> first;
            if (first == "list") {
                std::string count_s, value_s;
                if (!(ls >> count_s >> value_s >> prop.name))
                    throw ParseError("malformed list property", line_no);
                prop.is_list = true;
                prop.count_type = parse_ply_type(count_s, line_no);
                prop.type = parse_ply_type(value_s, line_no);
            } else {
                prop.type = parse_ply_type(first, line_no);
                if (!(ls >> prop.name)) throw ParseError("property without a name", line_no);
            }
            elements.back().properties.push_back(prop);
        } else if (tag == "end_header") {
            break;
        } else {
            throw ParseError("unexpected header line '" + tag + "'", line_no);
        }
    }
    if (!format_seen) throw ParseError("PLY header has no format line", line_no);

    TriMesh mesh;
    BinaryCursor bin{in, 0};
    AsciiCursor asc{in, line_no + 1};

    auto read_value = [&](PlyType t) { return binary ? bin.read_scalar(t) : asc.next(); };
    auto fail_location = [&]() { return binary ? std::string("byte ") + std::to_string(bin.offset)
                                               : std::string("line ") + std::to_string(asc.line); };

    for (const PlyElement& el : elements) {
        if (el.name == "vertex") {
            int ix = -1, iy = -1, iz = -1, ilabel = -1;
            for (size_t p = 0; p < el.properties.size(); ++p) {
                const auto& prop = el.properties[p];
                if (prop.is_list)
                    throw ParseError("list property '" + prop.name + "' in vertex element", -1);
                if (prop.name == "x") ix = static_cast<int>(p);
                else if (prop.name == "y") iy = static_cast<int>(p);
                else if (prop.name == "z") iz = static_cast<int>(p);
                else if (prop.name == "label") ilabel = static_cast<int>(p);
            }
            if (ix < 0 || iy < 0 || iz < 0)
                throw ParseError("vertex element lacks x/y/z properties", -1);
            mesh.vertices.reserve(el.count);
            if (ilabel >= 0) mesh.vertex_labels.reserve(el.count);
            std::vector<double> row(el.properties.size());
            for (size_t i = 0; i < el.count; ++i) {
                for (size_t p = 0; p < el.properties.size(); ++p)
                    row[p] = read_value(el.properties[p].type);
                mesh.vertices.push_back({row[static_cast<size_t>(ix)],
                                         row[static_cast<size_t>(iy)],
                                         row[static_cast<size_t>(iz)]});
                if (ilabel >= 0)
                    mesh.vertex_labels.push_back(static_cast<int>(row[static_cast<size_t>(ilabel)]));
                if (!binary) asc.end_row();
            }
        } else if (el.name == "face") {
            mesh.faces.reserve(el.count);
            for (size_t i = 0; i < el.count; ++i) {
                for (const PlyProperty& prop : el.properties) {
                    if (prop.is_list && (prop.name == "vertex_indices" || prop.name == "vertex_index")) {
                        const long n = static_cast<long>(read_value(prop.count_type));
                        if (n < 3)
                            throw ParseError("face with " + std::to_string(n) + " indices at " +
                                                 fail_location(),
                                             binary ? -1 : asc.line, binary ? bin.offset : -1);
                        std::vector<int> poly(static_cast<size_t>(n));
                        for (long k = 0; k < n; ++k) {
                            const long idx = static_cast<long>(read_value(prop.type));
                            if (idx < 0 || idx >= static_cast<long>(mesh.vertices.size()))
                                throw IndexRangeError(
                                    "face index " + std::to_string(idx) + " out of range over " +
                                        std::to_string(mesh.vertices.size()) + " vertices",
                                    binary ? -1 : asc.line, binary ? bin.offset : -1);
                            poly[static_cast<size_t>(k)] = static_cast<int>(idx);
                        }
                        for (size_t k = 1; k + 1 < poly.size(); ++k)
                            mesh.faces.push_back({poly[0], poly[k], poly[k + 1]});
                    } else if (prop.is_list) {
                        const long n = static_cast<long>(read_value(prop.count_type));
                        for (long k = 0; k < n; ++k) read_value(prop.type);
                    } else {
                        read_value(prop.type);
                    }
                }
                if (!binary) asc.end_row();
            }
        } else {
            // Unknown element: consume and discard its rows.
            for (size_t i = 0; i < el.count; ++i) {
                for (const PlyProperty& prop : el.properties) {
                    if (prop.is_list) {
                        const long n = static_cast<long>(read_value(prop.count_type));
                        for (long k = 0; k < n; ++k) read_value(prop.type);
                    } else {
                        read_value(prop.type);
                    }
                }
                if (!binary) asc.end_row();
            }
        }
    }
    return mesh;
}

void save_ply(const TriMesh& mesh, const std::string& path, PlyEncoding encoding) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    const bool binary = encoding == PlyEncoding::binary_little_endian;
    const bool labels = mesh.has_labels();

    out << "ply\n";
    out << (binary ? "format binary_little_endian 1.0\n" : "format ascii 1.0\n");
    out << "element vertex " << mesh.vertices.size() << "\n";
    out << "property double x\nproperty double y\nproperty double z\n";
    if (labels) out << "property int label\n";
    out << "element face " << mesh.faces.size() << "\n";
    out << "property list uchar int vertex_indices\n";
    out << "end_header\n";

    if (binary) {
        for (size_t i = 0; i < mesh.vertices.size(); ++i) {
            const Vec3& v = mesh.vertices[i];
            out.write(reinterpret_cast<const char*>(&v.x), 8);
            out.write(reinterpret_cast<const char*>(&v.y), 8);
            out.write(reinterpret_cast<const char*>(&v.z), 8);
            if (labels) {
                const int32_t l = mesh.vertex_labels[i];
                out.write(reinterpret_cast<const char*>(&l), 4);
            }
        }
        for (const auto& f : mesh.faces) {
            const uint8_t n = 3;
            out.write(reinterpret_cast<const char*>(&n), 1);
            int32_t idx[3] = {f[0], f[1], f[2]};
            out.write(reinterpret_cast<const char*>(idx), 12);
        }
    } else {
        char buf[160];
        for (size_t i = 0; i < mesh.vertices.size(); ++i) {
            const Vec3& v = mesh.vertices[i];
            std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g", v.x, v.y, v.z);
            out << buf;
            if (labels) out << ' ' << mesh.vertex_labels[i];
            out << '\n';
        }
        for (const auto& f : mesh.faces)
            out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
    }
    if (!out) throw IoError("write failure on " + path);
}

}  // namespace

TriMesh load_mesh(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    char magic[3] = {};
    in.read(magic, 3);
    TriMesh mesh;
    if (in.gcount() == 3 && magic[0] == 'p' && magic[1] == 'l' && magic[2] == 'y') {
        std::string rest_of_line;
        std::getline(in, rest_of_line);  // finish the magic line
        mesh = load_ply(in);
    } else {
        in.clear();
        in.seekg(0);
        mesh = load_obj(in);
    }
    validate_mesh(mesh);
    return mesh;
}

void save_mesh(const TriMesh& mesh, const std::string& path, PlyEncoding encoding) {
    validate_mesh(mesh);
    const size_t dot = path.find_last_of('.');
    const std::string ext = dot == std::string::npos ? "" : path.substr(dot);
    if (ext == ".obj")
        save_obj(mesh, path);
    else
        save_ply(mesh, path, encoding);
}

}  // namespace hoikit
