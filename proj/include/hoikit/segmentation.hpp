#pragma once

#include <span>
#include <vector>

#include "hoikit/camera.hpp"
#include "hoikit/depth_map.hpp"
#include "hoikit/mask.hpp"
#include "hoikit/mesh.hpp"

namespace hoikit {

/// Per-vertex list of view indices (strictly increasing) where the vertex
/// passed the z-buffer consistency check.
struct VisibilityTable {
    std::vector<std::vector<int>> views;
};

/// A vertex is visible in view i when it projects inside the image and the
/// projected depth matches the rasterized depth within `delta` meters.
VisibilityTable vertex_visibility(const TriMesh& mesh, std::span<const Camera> cameras,
                                  std::span<const DepthMap> depths, double delta);

/// Majority vote over the object masks of the visible views: label 1 when
/// the object-mask fraction strictly exceeds tau. Never-visible vertices
/// inherit the label of the Euclidean-nearest labeled vertex. Throws when no
/// vertex is visible in any view.
std::vector<int> vote_object_labels(const TriMesh& mesh, const VisibilityTable& visibility,
                                    std::span<const MaskFrame> masks,
                                    std::span<const Camera> cameras, double tau);

struct SplitResult {
    TriMesh human;
    TriMesh object;
};

/// A triangle goes to the object mesh when at least two of its three
/// vertices are labeled object. Output meshes are reindexed to the vertices
/// their triangles reference; isolated vertices are dropped.
SplitResult split_mesh(const TriMesh& mesh, std::span<const int> labels);

/// Default depth tolerance: 0.5% of the bounding-box diagonal.
double default_depth_tolerance(const TriMesh& mesh);

}  // namespace hoikit
