#pragma once

#include "hoikit/camera.hpp"
#include "hoikit/depth_map.hpp"
#include "hoikit/mesh.hpp"

namespace hoikit {

/// Z-buffered nearest-surface depth per pixel, +infinity background.
/// Top-left fill convention, pixel centers at (x+0.5, y+0.5), depth
/// interpolated perspective-correct (linear in 1/z). Output does not depend
/// on face order.
DepthMap rasterize_depth(const TriMesh& mesh, const Camera& camera);

}  // namespace hoikit
