#include "hoikit/registration.hpp"

#include <array>
#include <cmath>

#include "hoikit/log.hpp"
#include "hoikit/parallel.hpp"
#include "hoikit/spatial_index.hpp"

namespace hoikit {

namespace {

// Cyclic Jacobi on a symmetric 4x4; returns eigenvalues and matching
// eigenvectors (columns). Deterministic sweep order.
void jacobi_eigen4(std::array<std::array<double, 4>, 4> a, std::array<double, 4>& values,
                   std::array<std::array<double, 4>, 4>& vectors) {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) vectors[i][j] = i == j ? 1.0 : 0.0;

    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < 4; ++p)
            for (int q = p + 1; q < 4; ++q) off += a[p][q] * a[p][q];
        if (off < 1e-30) break;

        for (int p = 0; p < 4; ++p) {
            for (int q = p + 1; q < 4; ++q) {
                if (a[p][q] == 0.0) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < 4; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < 4; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (int k = 0; k < 4; ++k) {
                    const double vkp = vectors[k][p], vkq = vectors[k][q];
                    vectors[k][p] = c * vkp - s * vkq;
                    vectors[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    for (int i = 0; i < 4; ++i) values[i] = a[i][i];
}

double chamfer_to_index(const TriMesh& source, const Similarity7DoF& transform,
                        const SpatialIndex& target_index) {
    const size_t n = source.vertices.size();
    std::vector<double> dist(n);
    parallel_for(n, [&](size_t i) {
        dist[i] = target_index.nearest(transform.apply(source.vertices[i])).distance;
    });
    double sum = 0.0;
    for (double d : dist) sum += d;
    return sum / static_cast<double>(n);
}

}  // namespace

Similarity7DoF estimate_similarity(std::span<const Vec3> src, std::span<const Vec3> dst) {
    if (src.size() != dst.size() || src.size() < 3)
        throw InvalidArgument("estimate_similarity needs >= 3 paired points");
    const double inv_n = 1.0 / static_cast<double>(src.size());

    Vec3 mu_src, mu_dst;
    for (size_t i = 0; i < src.size(); ++i) {
        mu_src += src[i];
        mu_dst += dst[i];
    }
    mu_src *= inv_n;
    mu_dst *= inv_n;

    // Cross-covariance of the centered sets: S[a][b] = sum p_a * q_b.
    double S[3][3] = {};
    double src_spread = 0.0;
    for (size_t i = 0; i < src.size(); ++i) {
        const Vec3 p = src[i] - mu_src;
        const Vec3 q = dst[i] - mu_dst;
        const double ps[3] = {p.x, p.y, p.z};
        const double qs[3] = {q.x, q.y, q.z};
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) S[a][b] += ps[a] * qs[b];
        src_spread += p.squared_norm();
    }
    if (src_spread == 0.0)
        throw InvalidArgument("estimate_similarity: source points are all coincident");

    std::array<std::array<double, 4>, 4> N{};
    N[0] = {S[0][0] + S[1][1] + S[2][2], S[1][2] - S[2][1], S[2][0] - S[0][2], S[0][1] - S[1][0]};
    N[1] = {S[1][2] - S[2][1], S[0][0] - S[1][1] - S[2][2], S[0][1] + S[1][0], S[2][0] + S[0][2]};
    N[2] = {S[2][0] - S[0][2], S[0][1] + S[1][0], -S[0][0] + S[1][1] - S[2][2], S[1][2] + S[2][1]};
    N[3] = {S[0][1] - S[1][0], S[2][0] + S[0][2], S[1][2] + S[2][1], -S[0][0] - S[1][1] + S[2][2]};

    std::array<double, 4> values{};
    std::array<std::array<double, 4>, 4> vectors{};
    jacobi_eigen4(N, values, vectors);
    int best = 0;
    for (int i = 1; i < 4; ++i)
        if (values[i] > values[best]) best = i;

    Quat rotation{vectors[0][best], vectors[1][best], vectors[2][best], vectors[3][best]};
    if (rotation.w < 0.0) rotation = {-rotation.w, -rotation.x, -rotation.y, -rotation.z};
    rotation = rotation.normalized();

    double aligned_dot = 0.0;
    for (size_t i = 0; i < src.size(); ++i)
        aligned_dot += (dst[i] - mu_dst).dot(rotation.rotate(src[i] - mu_src));
    const double scale = aligned_dot / src_spread;

    Similarity7DoF out;
    out.scale = scale > 0.0 ? scale : 1e-12;
    out.rotation = rotation;
    out.translation = mu_dst - out.rotation.rotate(mu_src) * out.scale;
    return out;
}

Similarity7DoF init_alignment(const TriMesh& body, const TriMesh& target) {
    const Aabb body_box = bounding_box(body);
    const Aabb target_box = bounding_box(target);
    if (body_box.diagonal() == 0.0 || target_box.diagonal() == 0.0)
        throw InvalidArgument("init_alignment: zero-diagonal bounding box");
    Similarity7DoF t;
    t.scale = target_box.diagonal() / body_box.diagonal();
    t.rotation = {};
    t.translation = target_box.center() - body_box.center() * t.scale;
    return t;
}

std::vector<int> mask_subset_vertices(const TriMesh& posed_body, const Camera& camera,
                                      const MaskFrame& human_mask) {
    if (human_mask.width != camera.width || human_mask.height != camera.height)
        throw InvalidArgument("mask_subset_vertices: mask does not match camera resolution");
    std::vector<int> subset;
    for (size_t v = 0; v < posed_body.vertices.size(); ++v) {
        const auto proj = project_vertex(camera, posed_body.vertices[v]);
        if (!proj) continue;
        const int px = static_cast<int>(std::floor(proj->px));
        const int py = static_cast<int>(std::floor(proj->py));
        if (human_mask.human_at(px, py)) subset.push_back(static_cast<int>(v));
    }
    if (subset.empty())
        log_warn("mask_subset_vertices: no body vertex projects into the human mask");
    return subset;
}

RefineResult refine_chamfer_7dof(const TriMesh& source, const TriMesh& target,
                                 const Similarity7DoF& init, const RefineOptions& options) {
    if (source.empty()) throw InvalidArgument("refine_chamfer_7dof: empty source");
    if (target.empty()) throw InvalidArgument("refine_chamfer_7dof: degenerate target");
    if (options.max_rounds < 1) throw InvalidArgument("refine_chamfer_7dof: rounds must be >= 1");

    const SpatialIndex target_index(target.vertices);
    const size_t n = source.vertices.size();

    RefineResult result;
    result.transform = init;
    double best = chamfer_to_index(source, init, target_index);
    result.objective_ledger.push_back(best);

    // Accept a step only when it improves the incumbent, so the recorded
    // ledger is non-increasing across the whole search.
    auto accept = [&](const Similarity7DoF& transform, double objective) {
        if (objective < best) {
            best = objective;
            result.transform = transform;
            result.objective_ledger.push_back(objective);
            ++result.rounds_run;
        }
    };

    // Correspondences run in both directions: source vertices to their
    // nearest target points and target vertices back to their nearest moved
    // source points. The reverse pairs pull source regions toward target
    // regions that would otherwise attract no matches, which widens the
    // convergence basin considerably on articulated shapes.
    std::vector<Vec3> moved(n);
    std::vector<Vec3> pair_src(n + target.vertices.size());
    std::vector<Vec3> pair_dst(n + target.vertices.size());
    auto descend = [&](Similarity7DoF current) {
        double objective = chamfer_to_index(source, current, target_index);
        accept(current, objective);
        for (int round = 0; round < options.max_rounds; ++round) {
            parallel_for(n, [&](size_t i) { moved[i] = current.apply(source.vertices[i]); });
            parallel_for(n, [&](size_t i) {
                pair_src[i] = source.vertices[i];
                pair_dst[i] =
                    target.vertices[static_cast<size_t>(target_index.nearest(moved[i]).index)];
            });
            const SpatialIndex moved_index(moved);
            parallel_for(target.vertices.size(), [&](size_t j) {
                pair_src[n + j] = source.vertices[static_cast<size_t>(
                    moved_index.nearest(target.vertices[j]).index)];
                pair_dst[n + j] = target.vertices[j];
            });
            const Similarity7DoF candidate = estimate_similarity(pair_src, pair_dst);
            const double candidate_objective = chamfer_to_index(source, candidate, target_index);
            if (!(candidate_objective < objective)) break;
            const double gain = objective - candidate_objective;
            current = candidate;
            objective = candidate_objective;
            accept(current, objective);
            if (gain < options.min_improvement) break;
        }
    };

    descend(init);

    // Nearest-neighbor descent alone can lock into a wrong basin for larger
    // misalignments. Restart from a fixed fan of body-frame rotations about
    // the source center; defining the spins in the source frame keeps the
    // whole search equivariant under rigid motions of (init, target).
    const double good_enough = 1e-9 * bounding_box(target).diagonal();
    const Vec3 pivot = bounding_box(source).center();
    const double h = std::sqrt(0.5);
    const Vec3 axes[6] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {h, h, 0}, {h, 0, h}, {0, h, h}};
    const double angles[4] = {deg_to_rad(15.0), deg_to_rad(-15.0), deg_to_rad(30.0),
                              deg_to_rad(-30.0)};
    for (const Vec3& axis : axes) {
        for (const double angle : angles) {
            if (best <= good_enough) return result;
            Similarity7DoF spin;
            spin.rotation = Quat::from_axis_angle(axis * angle);
            spin.translation = pivot - spin.rotation.rotate(pivot);
            descend(compose(init, spin));
        }
    }
    return result;
}

}  // namespace hoikit
