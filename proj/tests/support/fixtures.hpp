#pragma once

#include <cstdint>
#include <random>

#include "hoikit/body.hpp"
#include "hoikit/camera.hpp"
#include "hoikit/mask.hpp"
#include "hoikit/mesh.hpp"

namespace hoikit::testing {

struct Rng {
    std::mt19937_64 engine;

    explicit Rng(uint64_t seed) : engine(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(engine);
    }
    int uniform_int(int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(engine);
    }
    Vec3 point_in_box(const Vec3& lo, const Vec3& hi) {
        return {uniform(lo.x, hi.x), uniform(lo.y, hi.y), uniform(lo.z, hi.z)};
    }
    Vec3 unit_vector() {
        while (true) {
            const Vec3 v = point_in_box({-1, -1, -1}, {1, 1, 1});
            const double n2 = v.squared_norm();
            if (n2 > 1e-4 && n2 <= 1.0) return v / std::sqrt(n2);
        }
    }
};

/// Closed UV sphere (rings x segments quads, triangulated, pole fans).
TriMesh make_uv_sphere(const Vec3& center, double radius, int rings = 8, int segments = 12);

/// Axis-aligned box as 12 triangles.
TriMesh make_box(const Vec3& center, const Vec3& size);

/// Vertices only (no faces), uniform in the box.
TriMesh random_point_cloud(Rng& rng, int count, const Vec3& lo, const Vec3& hi);

/// Random closed-ish mesh: a randomly scaled/translated sphere.
TriMesh random_blob(Rng& rng, int rings = 6, int segments = 9);

/// The bundled 16-joint, 400-vertex articulated test template.
SkinnedBody make_test_body();

/// Two-component scene with ground-truth labels (0 = human blob, 1 = object
/// sphere), used by the segmentation oracle suites.
struct LabeledScene {
    TriMesh mesh;            // combined, with ground-truth labels in vertex_labels
    size_t human_vertices;   // vertices [0, human_vertices) belong to the human
};
LabeledScene make_two_component_scene(Rng& rng, int human_rings, int human_segments,
                                      int object_rings, int object_segments);

/// Perfect per-view masks rendered from the ground-truth component split:
/// a pixel is marked for the component whose surface is nearest there.
MaskFrame render_ground_truth_masks(const LabeledScene& scene, const Camera& camera);

}  // namespace hoikit::testing
