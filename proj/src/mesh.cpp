#include "hoikit/mesh.hpp"

#include <limits>
#include <string>

#include "hoikit/parallel.hpp"
#include "hoikit/spatial_index.hpp"

namespace hoikit {

void validate_mesh(const TriMesh& mesh) {
    const int n = static_cast<int>(mesh.vertices.size());
    for (size_t f = 0; f < mesh.faces.size(); ++f) {
        const auto& face = mesh.faces[f];
        for (int k = 0; k < 3; ++k) {
            if (face[k] < 0 || face[k] >= n)
                throw InvalidArgument("face " + std::to_string(f) + " references vertex " +
                                      std::to_string(face[k]) + " out of range [0, " +
                                      std::to_string(n) + ")");
        }
        if (face[0] == face[1] && face[1] == face[2])
            throw InvalidArgument("face " + std::to_string(f) +
                                  " is degenerate (three identical indices)");
    }
    if (!mesh.vertex_labels.empty() && mesh.vertex_labels.size() != mesh.vertices.size())
        throw InvalidArgument("label count " + std::to_string(mesh.vertex_labels.size()) +
                              " does not match vertex count " +
                              std::to_string(mesh.vertices.size()));
}

Aabb bounding_box(const TriMesh& mesh) {
    if (mesh.vertices.empty()) throw InvalidArgument("bounding_box: empty mesh");
    Aabb box{mesh.vertices[0], mesh.vertices[0]};
    for (const Vec3& v : mesh.vertices) {
        box.min = min(box.min, v);
        box.max = max(box.max, v);
    }
    return box;
}

TriMesh translated(const TriMesh& mesh, const Vec3& t) {
    TriMesh out = mesh;
    for (Vec3& v : out.vertices) v += t;
    return out;
}

double one_directional_chamfer(const TriMesh& source, const TriMesh& target) {
    if (source.empty() || target.empty())
        throw InvalidArgument("one_directional_chamfer: empty mesh");
    SpatialIndex index(target.vertices);
    const size_t n = source.vertices.size();
    std::vector<double> dist(n);
    parallel_for(n, [&](size_t i) { dist[i] = index.nearest(source.vertices[i]).distance; });
    double sum = 0.0;
    for (double d : dist) sum += d;
    return sum / static_cast<double>(n);
}

}  // namespace hoikit
