#include "hoikit/similarity.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "hoikit/error.hpp"

namespace hoikit {

Quat Quat::from_axis_angle(const Vec3& axis_angle) {
    const double angle = axis_angle.norm();
    if (angle < 1e-300) return {};
    const Vec3 axis = axis_angle / angle;
    const double half = angle * 0.5;
    const double s = std::sin(half);
    return {std::cos(half), axis.x * s, axis.y * s, axis.z * s};
}

Quat Quat::normalized() const {
    const double n = norm();
    if (n == 0.0) throw InvalidArgument("cannot normalize a zero quaternion");
    return {w / n, x / n, y / n, z / n};
}

Quat Quat::operator*(const Quat& o) const {
    return {w * o.w - x * o.x - y * o.y - z * o.z,
            w * o.x + x * o.w + y * o.z - z * o.y,
            w * o.y - x * o.z + y * o.w + z * o.x,
            w * o.z + x * o.y - y * o.x + z * o.w};
}

Vec3 Quat::rotate(const Vec3& v) const {
    // q v q* via the expanded two-cross form
    const Vec3 u{x, y, z};
    const Vec3 t = u.cross(v) * 2.0;
    return v + t * w + u.cross(t);
}

Mat3 Quat::to_matrix() const {
    Mat3 m;
    const double xx = x * x, yy = y * y, zz = z * z;
    const double xy = x * y, xz = x * z, yz = y * z;
    const double wx = w * x, wy = w * y, wz = w * z;
    m(0, 0) = 1 - 2 * (yy + zz);
    m(0, 1) = 2 * (xy - wz);
    m(0, 2) = 2 * (xz + wy);
    m(1, 0) = 2 * (xy + wz);
    m(1, 1) = 1 - 2 * (xx + zz);
    m(1, 2) = 2 * (yz - wx);
    m(2, 0) = 2 * (xz - wy);
    m(2, 1) = 2 * (yz + wx);
    m(2, 2) = 1 - 2 * (xx + yy);
    return m;
}

Similarity7DoF Similarity7DoF::inverse() const {
    if (!(scale > 0.0)) throw InvalidArgument("similarity scale must be positive");
    Similarity7DoF inv;
    inv.scale = 1.0 / scale;
    inv.rotation = rotation.conjugate();
    inv.translation = inv.rotation.rotate(-translation) * inv.scale;
    return inv;
}

Similarity7DoF compose(const Similarity7DoF& outer, const Similarity7DoF& inner) {
    Similarity7DoF out;
    out.scale = outer.scale * inner.scale;
    out.rotation = (outer.rotation * inner.rotation).normalized();
    out.translation = outer.apply(inner.translation);
    return out;
}

TriMesh apply_similarity(const Similarity7DoF& transform, const TriMesh& mesh) {
    TriMesh out = mesh;
    for (Vec3& v : out.vertices) v = transform.apply(v);
    return out;
}

std::string similarity_to_json(const Similarity7DoF& t) {
    nlohmann::json j{
        {"scale", t.scale},
        {"rotation_quat", {t.rotation.w, t.rotation.x, t.rotation.y, t.rotation.z}},
        {"translation", {t.translation.x, t.translation.y, t.translation.z}}};
    return j.dump(2) + "\n";
}

Similarity7DoF similarity_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("alignment JSON: ") + e.what(), -1, static_cast<long>(e.byte));
    }
    try {
        Similarity7DoF t;
        t.scale = j.at("scale").get<double>();
        const auto& q = j.at("rotation_quat");
        const auto& tr = j.at("translation");
        if (!q.is_array() || q.size() != 4)
            throw ParseError("rotation_quat must have 4 entries", -1);
        if (!tr.is_array() || tr.size() != 3)
            throw ParseError("translation must have 3 entries", -1);
        t.rotation = Quat{q[0].get<double>(), q[1].get<double>(), q[2].get<double>(),
                          q[3].get<double>()}.normalized();
        t.translation = {tr[0].get<double>(), tr[1].get<double>(), tr[2].get<double>()};
        if (!(t.scale > 0.0)) throw ParseError("alignment scale must be positive", -1);
        return t;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("alignment JSON: ") + e.what(), -1);
    }
}

void save_similarity(const Similarity7DoF& transform, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << similarity_to_json(transform);
    if (!out) throw IoError("write failure on " + path);
}

Similarity7DoF load_similarity(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return similarity_from_json(text);
}

}  // namespace hoikit
