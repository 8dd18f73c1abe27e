#include "hoikit/spatial_index.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "hoikit/error.hpp"

namespace hoikit {

namespace {
constexpr int kLeafSize = 8;

double coord(const Vec3& v, int axis) { return axis == 0 ? v.x : (axis == 1 ? v.y : v.z); }
}  // namespace

SpatialIndex::SpatialIndex(std::vector<Vec3> points) : points_(std::move(points)) {
    order_.resize(points_.size());
    std::iota(order_.begin(), order_.end(), 0);
    if (!points_.empty()) root_ = build(0, static_cast<int>(points_.size()));
}

int SpatialIndex::build(int begin, int end) {
    Node node;
    node.begin = begin;
    node.end = end;
    if (end - begin <= kLeafSize) {
        // Leaf entries stay in index order so ties fall to the lowest index
        // even without the explicit comparison below.
        std::sort(order_.begin() + begin, order_.begin() + end);
        nodes_.push_back(node);
        return static_cast<int>(nodes_.size()) - 1;
    }

    Vec3 lo = points_[order_[begin]];
    Vec3 hi = lo;
    for (int i = begin; i < end; ++i) {
        lo = min(lo, points_[order_[i]]);
        hi = max(hi, points_[order_[i]]);
    }
    const Vec3 extent = hi - lo;
    int axis = 0;
    if (extent.y > extent.x) axis = 1;
    if (extent.z > coord(extent, axis)) axis = 2;

    const int mid = begin + (end - begin) / 2;
    std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                     [&](int a, int b) {
                         const double ca = coord(points_[a], axis);
                         const double cb = coord(points_[b], axis);
                         return ca < cb || (ca == cb && a < b);
                     });
    node.axis = axis;
    node.split = coord(points_[order_[mid]], axis);

    const int self = static_cast<int>(nodes_.size());
    nodes_.push_back(node);
    const int left = build(begin, mid);
    const int right = build(mid, end);
    nodes_[self].left = left;
    nodes_[self].right = right;
    return self;
}

void SpatialIndex::search(int node_idx, const Vec3& q, int& best_idx, double& best_d2) const {
    const Node& node = nodes_[node_idx];
    if (node.axis == -1) {
        for (int i = node.begin; i < node.end; ++i) {
            const int p = order_[i];
            const double d2 = squared_distance(points_[p], q);
            if (d2 < best_d2 || (d2 == best_d2 && p < best_idx)) {
                best_d2 = d2;
                best_idx = p;
            }
        }
        return;
    }
    const double delta = coord(q, node.axis) - node.split;
    const int near = delta < 0.0 ? node.left : node.right;
    const int far = delta < 0.0 ? node.right : node.left;
    search(near, q, best_idx, best_d2);
    // Non-strict bound so equidistant points across the plane still get
    // visited; required for the lowest-index tie rule.
    if (delta * delta <= best_d2) search(far, q, best_idx, best_d2);
}

SpatialIndex::Hit SpatialIndex::nearest(const Vec3& query) const {
    if (points_.empty()) throw InvalidArgument("SpatialIndex::nearest: empty index");
    int best_idx = -1;
    double best_d2 = std::numeric_limits<double>::infinity();
    search(root_, query, best_idx, best_d2);
    return Hit{best_idx, std::sqrt(best_d2)};
}

std::pair<int, double> nearest_vertex(const SpatialIndex& index, const Vec3& query) {
    const auto hit = index.nearest(query);
    return {hit.index, hit.distance};
}

}  // namespace hoikit
