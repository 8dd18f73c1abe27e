#pragma once

#include <span>
#include <vector>

#include "hoikit/body.hpp"
#include "hoikit/similarity.hpp"

namespace hoikit {

struct AnimatedFrame {
    TriMesh human;
    TriMesh object;
};

/// Reanimates a segmented scene: meshes are mapped into body space through
/// the inverse of `align` (the body-to-scan transform), the human deforms by
/// LBS with the transferred weights, the object rigidly follows its nearest
/// joint, and the results are mapped back to scan space. Shape is untouched;
/// an identity pose reproduces the inputs.
std::vector<AnimatedFrame> animate_scene(const TriMesh& human, const SkinBinding& binding,
                                         const TriMesh& object, const SkinnedBody& body,
                                         std::span<const Pose> pose_sequence,
                                         const Similarity7DoF& align);

}  // namespace hoikit
