#include "fixtures.hpp"

#include <cmath>

#include "hoikit/rasterizer.hpp"

namespace hoikit::testing {

TriMesh make_uv_sphere(const Vec3& center, double radius, int rings, int segments) {
    TriMesh mesh;
    // Interior rings between the poles.
    for (int r = 1; r < rings; ++r) {
        const double phi = kPi * r / rings;  // 0 at the north pole
        for (int s = 0; s < segments; ++s) {
            const double theta = 2.0 * kPi * s / segments;
            mesh.vertices.push_back(center + radius * Vec3{std::sin(phi) * std::cos(theta),
                                                           std::cos(phi),
                                                           std::sin(phi) * std::sin(theta)});
        }
    }
    const int north = static_cast<int>(mesh.vertices.size());
    mesh.vertices.push_back(center + Vec3{0, radius, 0});
    const int south = static_cast<int>(mesh.vertices.size());
    mesh.vertices.push_back(center + Vec3{0, -radius, 0});

    auto ring_vertex = [&](int r, int s) { return (r - 1) * segments + (s % segments); };
    for (int s = 0; s < segments; ++s) {
        mesh.faces.push_back({north, ring_vertex(1, s + 1), ring_vertex(1, s)});
        mesh.faces.push_back({south, ring_vertex(rings - 1, s), ring_vertex(rings - 1, s + 1)});
    }
    for (int r = 1; r + 1 < rings; ++r) {
        for (int s = 0; s < segments; ++s) {
            const int a = ring_vertex(r, s), b = ring_vertex(r, s + 1);
            const int c = ring_vertex(r + 1, s), d = ring_vertex(r + 1, s + 1);
            mesh.faces.push_back({a, b, d});
            mesh.faces.push_back({a, d, c});
        }
    }
    return mesh;
}

TriMesh make_box(const Vec3& center, const Vec3& size) {
    TriMesh mesh;
    const Vec3 h = size * 0.5;
    for (int i = 0; i < 8; ++i)
        mesh.vertices.push_back(center + Vec3{(i & 1) ? h.x : -h.x, (i & 2) ? h.y : -h.y,
                                              (i & 4) ? h.z : -h.z});
    // Outward-facing winding per face pair.
    const int quads[6][4] = {
        {0, 2, 3, 1},  // -z
        {4, 5, 7, 6},  // +z
        {0, 1, 5, 4},  // -y
        {2, 6, 7, 3},  // +y
        {0, 4, 6, 2},  // -x
        {1, 3, 7, 5},  // +x
    };
    for (const auto& q : quads) {
        mesh.faces.push_back({q[0], q[1], q[2]});
        mesh.faces.push_back({q[0], q[2], q[3]});
    }
    return mesh;
}

TriMesh random_point_cloud(Rng& rng, int count, const Vec3& lo, const Vec3& hi) {
    TriMesh mesh;
    for (int i = 0; i < count; ++i) mesh.vertices.push_back(rng.point_in_box(lo, hi));
    return mesh;
}

TriMesh random_blob(Rng& rng, int rings, int segments) {
    const Vec3 center = rng.point_in_box({-1, -1, -1}, {1, 1, 1});
    const double radius = rng.uniform(0.3, 1.2);
    return make_uv_sphere(center, radius, rings, segments);
}

namespace {

struct TubeSpec {
    Vec3 base;
    Vec3 tip;
    double radius;
    int rings;
    int segments;
    // Weight assignment: single driving joint, or trunk blending when < 0.
    int joint;
    PartName label;
};

void append_tube(SkinnedBody& body, const TubeSpec& spec) {
    const Vec3 axis = spec.tip - spec.base;
    // Build an orthonormal frame around the tube axis.
    const Vec3 axis_dir = axis.normalized();
    Vec3 seed{0, 0, 1};
    if (std::abs(axis_dir.dot(seed)) > 0.9) seed = {1, 0, 0};
    const Vec3 u = axis_dir.cross(seed).normalized();
    const Vec3 w = axis_dir.cross(u);

    const int base_index = static_cast<int>(body.rest_vertices.size());
    for (int r = 0; r < spec.rings; ++r) {
        const double t = spec.rings == 1 ? 0.0 : static_cast<double>(r) / (spec.rings - 1);
        const Vec3 ring_center = spec.base + axis * t;
        for (int s = 0; s < spec.segments; ++s) {
            const double theta = 2.0 * kPi * s / spec.segments;
            const Vec3 v = ring_center + (u * std::cos(theta) + w * std::sin(theta)) * spec.radius;
            body.rest_vertices.push_back(v);
            body.part_labels.push_back(spec.label);

            if (spec.joint >= 0) {
                body.weights.push_back({{spec.joint, 1.0}});
            } else {
                // Trunk: blend the two vertically nearest of pelvis/spine/chest.
                const double y = v.y;
                const double pelvis_y = body.joints[0].y;
                const double spine_y = body.joints[1].y;
                const double chest_y = body.joints[2].y;
                if (y <= pelvis_y) {
                    body.weights.push_back({{0, 1.0}});
                } else if (y <= spine_y) {
                    const double a = (y - pelvis_y) / (spine_y - pelvis_y);
                    body.weights.push_back({{0, 1.0 - a}, {1, a}});
                } else if (y <= chest_y) {
                    const double a = (y - spine_y) / (chest_y - spine_y);
                    body.weights.push_back({{1, 1.0 - a}, {2, a}});
                } else {
                    body.weights.push_back({{2, 1.0}});
                }
            }
        }
    }
    for (int r = 0; r + 1 < spec.rings; ++r) {
        for (int s = 0; s < spec.segments; ++s) {
            const int a = base_index + r * spec.segments + s;
            const int b = base_index + r * spec.segments + (s + 1) % spec.segments;
            const int c = a + spec.segments;
            const int d = b + spec.segments;
            body.faces.push_back({a, b, d});
            body.faces.push_back({a, d, c});
        }
    }
}

}  // namespace

SkinnedBody make_test_body() {
    SkinnedBody body;
    body.joints = {
        {0.00, 0.95, 0.0},   // 0 pelvis
        {0.00, 1.10, 0.0},   // 1 spine
        {0.00, 1.30, 0.0},   // 2 chest
        {0.00, 1.55, 0.0},   // 3 neck
        {0.18, 1.45, 0.0},   // 4 left shoulder
        {0.45, 1.45, 0.0},   // 5 left elbow
        {0.70, 1.45, 0.0},   // 6 left wrist
        {-0.18, 1.45, 0.0},  // 7 right shoulder
        {-0.45, 1.45, 0.0},  // 8 right elbow
        {-0.70, 1.45, 0.0},  // 9 right wrist
        {0.10, 0.90, 0.0},   // 10 left hip
        {0.10, 0.50, 0.0},   // 11 left knee
        {0.10, 0.10, 0.0},   // 12 left ankle
        {-0.10, 0.90, 0.0},  // 13 right hip
        {-0.10, 0.50, 0.0},  // 14 right knee
        {-0.10, 0.10, 0.0},  // 15 right ankle
    };
    body.parents = {-1, 0, 1, 2, 2, 4, 5, 2, 7, 8, 0, 10, 11, 0, 13, 14};
    body.shape_beta = {0.0, 0.0};

    // Trunk first: its vertices split into torso (front, +z) and back.
    // The two-label split happens after generation below.
    append_tube(body, {{0, 0.85, 0}, {0, 1.50, 0}, 0.16, 4, 7, -1, PartName::torso});
    const size_t trunk_end = body.rest_vertices.size();
    for (size_t v = 0; v < trunk_end; ++v)
        if (body.rest_vertices[v].z < 0.0) body.part_labels[v] = PartName::back;

    append_tube(body, {{0, 1.55, 0}, {0, 1.78, 0}, 0.10, 4, 9, 3, PartName::head});

    append_tube(body, {{0.18, 1.45, 0}, {0.45, 1.45, 0}, 0.050, 4, 7, 4, PartName::left_upper_arm});
    append_tube(body, {{0.45, 1.45, 0}, {0.70, 1.45, 0}, 0.045, 4, 7, 5, PartName::left_forearm});
    append_tube(body, {{0.70, 1.45, 0}, {0.82, 1.45, 0}, 0.040, 4, 7, 6, PartName::left_hand});
    append_tube(body,
                {{-0.18, 1.45, 0}, {-0.45, 1.45, 0}, 0.050, 4, 7, 7, PartName::right_upper_arm});
    append_tube(body,
                {{-0.45, 1.45, 0}, {-0.70, 1.45, 0}, 0.045, 4, 7, 8, PartName::right_forearm});
    append_tube(body, {{-0.70, 1.45, 0}, {-0.82, 1.45, 0}, 0.040, 4, 7, 9, PartName::right_hand});

    append_tube(body, {{0.10, 0.90, 0}, {0.10, 0.50, 0}, 0.070, 4, 7, 10, PartName::left_upper_leg});
    append_tube(body, {{0.10, 0.50, 0}, {0.10, 0.10, 0}, 0.055, 4, 7, 11, PartName::left_lower_leg});
    append_tube(body, {{0.10, 0.10, 0}, {0.10, 0.02, 0.15}, 0.045, 4, 7, 12, PartName::left_foot});
    append_tube(body,
                {{-0.10, 0.90, 0}, {-0.10, 0.50, 0}, 0.070, 4, 7, 13, PartName::right_upper_leg});
    append_tube(body,
                {{-0.10, 0.50, 0}, {-0.10, 0.10, 0}, 0.055, 4, 7, 14, PartName::right_lower_leg});
    append_tube(body,
                {{-0.10, 0.10, 0}, {-0.10, 0.02, 0.15}, 0.045, 4, 7, 15, PartName::right_foot});

    validate_body(body);
    return body;
}

LabeledScene make_two_component_scene(Rng& rng, int human_rings, int human_segments,
                                      int object_rings, int object_segments) {
    const Vec3 human_center{0, 0, 0};
    const double human_radius = rng.uniform(0.4, 0.6);
    const Vec3 offset_dir = rng.unit_vector();
    const double object_radius = rng.uniform(0.15, 0.3);
    const Vec3 object_center =
        human_center + offset_dir * (human_radius + object_radius + rng.uniform(0.05, 0.25));

    LabeledScene scene;
    TriMesh human = make_uv_sphere(human_center, human_radius, human_rings, human_segments);
    TriMesh object = make_uv_sphere(object_center, object_radius, object_rings, object_segments);
    scene.human_vertices = human.vertices.size();
    scene.mesh = human;
    const int base = static_cast<int>(scene.mesh.vertices.size());
    scene.mesh.vertices.insert(scene.mesh.vertices.end(), object.vertices.begin(),
                               object.vertices.end());
    for (const auto& f : object.faces)
        scene.mesh.faces.push_back({f[0] + base, f[1] + base, f[2] + base});
    scene.mesh.vertex_labels.assign(scene.mesh.vertices.size(), 0);
    for (size_t v = scene.human_vertices; v < scene.mesh.vertices.size(); ++v)
        scene.mesh.vertex_labels[v] = 1;
    return scene;
}

MaskFrame render_ground_truth_masks(const LabeledScene& scene, const Camera& camera) {
    TriMesh human, object;
    human.vertices = scene.mesh.vertices;
    object.vertices = scene.mesh.vertices;
    for (const auto& f : scene.mesh.faces) {
        int object_votes = 0;
        for (int k = 0; k < 3; ++k)
            if (scene.mesh.vertex_labels[static_cast<size_t>(f[static_cast<size_t>(k)])] == 1)
                ++object_votes;
        (object_votes >= 2 ? object : human).faces.push_back(f);
    }
    const DepthMap human_depth = rasterize_depth(human, camera);
    const DepthMap object_depth = rasterize_depth(object, camera);

    MaskFrame frame = make_mask_frame(camera.width, camera.height);
    for (int y = 0; y < camera.height; ++y) {
        for (int x = 0; x < camera.width; ++x) {
            const float dh = human_depth.at(x, y);
            const float dobj = object_depth.at(x, y);
            const size_t i = static_cast<size_t>(y) * camera.width + x;
            if (std::isfinite(dh) && dh <= dobj) frame.human[i] = 1;
            if (std::isfinite(dobj) && dobj <= dh) frame.object[i] = 1;
        }
    }
    return frame;
}

}  // namespace hoikit::testing
