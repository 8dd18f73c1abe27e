#pragma once

#include <span>
#include <vector>

#include "hoikit/camera.hpp"
#include "hoikit/mask.hpp"
#include "hoikit/mesh.hpp"
#include "hoikit/similarity.hpp"

namespace hoikit {

/// Bounding-box initialization: scale from diagonal ratio, translation from
/// box centers, identity rotation. Throws on zero-diagonal input.
Similarity7DoF init_alignment(const TriMesh& body, const TriMesh& target);

/// Vertices of the posed body whose projection lands on a human-mask pixel.
/// An empty result is allowed but logged.
std::vector<int> mask_subset_vertices(const TriMesh& posed_body, const Camera& camera,
                                      const MaskFrame& human_mask);

struct RefineOptions {
    int max_rounds = 30;
    double min_improvement = 1e-7;  // meters of objective gain to keep going
};

struct RefineResult {
    Similarity7DoF transform;
    // Objective (one-directional chamfer, transformed source to target) at
    // init followed by every accepted round; non-increasing by construction.
    std::vector<double> objective_ledger;
    int rounds_run = 0;
};

/// Alternating nearest-neighbor correspondence and closed-form similarity
/// fit. A round is accepted only if it strictly lowers the objective.
RefineResult refine_chamfer_7dof(const TriMesh& source, const TriMesh& target,
                                 const Similarity7DoF& init, const RefineOptions& options = {});

/// Least-squares similarity mapping src points onto dst points
/// (Horn's quaternion absolute orientation plus scale).
Similarity7DoF estimate_similarity(std::span<const Vec3> src, std::span<const Vec3> dst);

}  // namespace hoikit
