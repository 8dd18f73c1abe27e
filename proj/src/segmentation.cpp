#include "hoikit/segmentation.hpp"

#include <cmath>
#include <string>

#include "hoikit/parallel.hpp"
#include "hoikit/spatial_index.hpp"

namespace hoikit {

namespace {

struct PixelHit {
    int x = 0;
    int y = 0;
    double depth = 0.0;
};

// Pixel containing the projected point, or nothing if outside the frustum.
std::optional<PixelHit> project_to_pixel(const Camera& camera, const Vec3& v) {
    const auto proj = project_vertex(camera, v);
    if (!proj) return std::nullopt;
    PixelHit hit;
    hit.x = static_cast<int>(std::floor(proj->px));
    hit.y = static_cast<int>(std::floor(proj->py));
    hit.depth = proj->depth;
    return hit;
}

}  // namespace

double default_depth_tolerance(const TriMesh& mesh) {
    return 0.005 * bounding_box(mesh).diagonal();
}

VisibilityTable vertex_visibility(const TriMesh& mesh, std::span<const Camera> cameras,
                                  std::span<const DepthMap> depths, double delta) {
    if (cameras.size() != depths.size())
        throw InvalidArgument("vertex_visibility: " + std::to_string(cameras.size()) +
                              " cameras vs " + std::to_string(depths.size()) + " depth maps");
    if (!(delta > 0.0)) throw InvalidArgument("vertex_visibility: delta must be positive");
    for (size_t i = 0; i < cameras.size(); ++i)
        if (cameras[i].width != depths[i].width || cameras[i].height != depths[i].height)
            throw InvalidArgument("vertex_visibility: depth map " + std::to_string(i) +
                                  " does not match its camera resolution");

    VisibilityTable table;
    table.views.resize(mesh.vertices.size());
    parallel_for(mesh.vertices.size(), [&](size_t v) {
        for (size_t i = 0; i < cameras.size(); ++i) {
            const auto hit = project_to_pixel(cameras[i], mesh.vertices[v]);
            if (!hit) continue;
            const double surface = depths[i].at(hit->x, hit->y);
            if (std::isfinite(surface) && std::abs(hit->depth - surface) <= delta)
                table.views[v].push_back(static_cast<int>(i));
        }
    });
    return table;
}

std::vector<int> vote_object_labels(const TriMesh& mesh, const VisibilityTable& visibility,
                                    std::span<const MaskFrame> masks,
                                    std::span<const Camera> cameras, double tau) {
    if (!(tau > 0.0 && tau < 1.0)) throw InvalidArgument("vote_object_labels: tau must be in (0,1)");
    if (masks.size() != cameras.size())
        throw InvalidArgument("vote_object_labels: mask/camera count mismatch");
    if (visibility.views.size() != mesh.vertices.size())
        throw InvalidArgument("vote_object_labels: visibility table size mismatch");
    for (size_t i = 0; i < masks.size(); ++i)
        if (masks[i].width != cameras[i].width || masks[i].height != cameras[i].height)
            throw InvalidArgument("vote_object_labels: mask " + std::to_string(i) +
                                  " does not match its camera resolution");

    const size_t n = mesh.vertices.size();
    std::vector<int> labels(n, -1);
    parallel_for(n, [&](size_t v) {
        const auto& views = visibility.views[v];
        if (views.empty()) return;
        int object_votes = 0;
        for (int i : views) {
            const auto hit = project_to_pixel(cameras[static_cast<size_t>(i)], mesh.vertices[v]);
            if (hit && masks[static_cast<size_t>(i)].object_at(hit->x, hit->y)) ++object_votes;
        }
        const double fraction =
            static_cast<double>(object_votes) / static_cast<double>(views.size());
        labels[v] = fraction > tau ? 1 : 0;
    });

    // Vertices never visible in any view copy the nearest labeled vertex.
    std::vector<Vec3> labeled_points;
    std::vector<int> labeled_indices;
    for (size_t v = 0; v < n; ++v) {
        if (labels[v] >= 0) {
            labeled_points.push_back(mesh.vertices[v]);
            labeled_indices.push_back(static_cast<int>(v));
        }
    }
    if (labeled_points.empty())
        throw Error("vote_object_labels: no vertex is visible in any view");
    if (labeled_points.size() < n) {
        SpatialIndex index(labeled_points);
        for (size_t v = 0; v < n; ++v)
            if (labels[v] < 0)
                labels[v] = labels[static_cast<size_t>(
                    labeled_indices[static_cast<size_t>(index.nearest(mesh.vertices[v]).index)])];
    }
    return labels;
}

SplitResult split_mesh(const TriMesh& mesh, std::span<const int> labels) {
    if (labels.size() != mesh.vertices.size())
        throw InvalidArgument("split_mesh: one label per vertex required");

    std::vector<char> face_is_object(mesh.faces.size(), 0);
    for (size_t f = 0; f < mesh.faces.size(); ++f) {
        int object_votes = 0;
        for (int k = 0; k < 3; ++k)
            if (labels[static_cast<size_t>(mesh.faces[f][static_cast<size_t>(k)])] == 1)
                ++object_votes;
        face_is_object[f] = object_votes >= 2 ? 1 : 0;
    }

    // Reindex each side by ascending original vertex index.
    auto build_side = [&](bool object_side) {
        TriMesh out;
        std::vector<int> map(mesh.vertices.size(), -1);
        for (size_t f = 0; f < mesh.faces.size(); ++f) {
            if (static_cast<bool>(face_is_object[f]) != object_side) continue;
            for (int k = 0; k < 3; ++k)
                map[static_cast<size_t>(mesh.faces[f][static_cast<size_t>(k)])] = 0;
        }
        for (size_t v = 0; v < mesh.vertices.size(); ++v) {
            if (map[v] < 0) continue;
            map[v] = static_cast<int>(out.vertices.size());
            out.vertices.push_back(mesh.vertices[v]);
            if (mesh.has_labels()) out.vertex_labels.push_back(mesh.vertex_labels[v]);
        }
        for (size_t f = 0; f < mesh.faces.size(); ++f) {
            if (static_cast<bool>(face_is_object[f]) != object_side) continue;
            const auto& face = mesh.faces[f];
            out.faces.push_back({map[static_cast<size_t>(face[0])],
                                 map[static_cast<size_t>(face[1])],
                                 map[static_cast<size_t>(face[2])]});
        }
        return out;
    };

    SplitResult result;
    result.human = build_side(false);
    result.object = build_side(true);
    return result;
}

}  // namespace hoikit
