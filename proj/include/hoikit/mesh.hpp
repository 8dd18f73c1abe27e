#pragma once

#include <array>
#include <vector>

#include "hoikit/error.hpp"
#include "hoikit/vec3.hpp"

namespace hoikit {

/// Indexed triangle mesh with an optional per-vertex integer label
/// (0 = human, 1 = object). The label vector is either empty or has
/// exactly one entry per vertex.
struct TriMesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> faces;
    std::vector<int> vertex_labels;

    bool has_labels() const { return !vertex_labels.empty(); }
    bool empty() const { return vertices.empty(); }
};

struct Aabb {
    Vec3 min;
    Vec3 max;

    Vec3 center() const { return (min + max) * 0.5; }
    double diagonal() const { return (max - min).norm(); }
};

/// Throws InvalidArgument if an invariant is violated: face index out of
/// range, degenerate face (three identical indices), or label count mismatch.
void validate_mesh(const TriMesh& mesh);

/// Axis-aligned bounds. Throws InvalidArgument on an empty mesh.
Aabb bounding_box(const TriMesh& mesh);

TriMesh translated(const TriMesh& mesh, const Vec3& t);

/// Mean over source vertices of the distance to the nearest target vertex.
/// Vertex-to-vertex by design; throws InvalidArgument if either mesh is empty.
double one_directional_chamfer(const TriMesh& source, const TriMesh& target);

}  // namespace hoikit
