#pragma once

#include <utility>
#include <vector>

#include "hoikit/vec3.hpp"

namespace hoikit {

/// KD-tree over a fixed point set. Queries return the exact brute-force
/// argmin; equidistant candidates resolve to the lowest point index.
/// Immutable after construction, safe for concurrent queries.
class SpatialIndex {
public:
    explicit SpatialIndex(std::vector<Vec3> points);

    struct Hit {
        int index = -1;
        double distance = 0.0;
    };

    /// Throws InvalidArgument when the index is empty.
    Hit nearest(const Vec3& query) const;

    size_t size() const { return points_.size(); }
    const std::vector<Vec3>& points() const { return points_; }

private:
    struct Node {
        // Leaf when axis == -1; then [begin, end) indexes into order_.
        int axis = -1;
        double split = 0.0;
        int left = -1;
        int right = -1;
        int begin = 0;
        int end = 0;
    };

    int build(int begin, int end);
    void search(int node, const Vec3& q, int& best_idx, double& best_d2) const;

    std::vector<Vec3> points_;
    std::vector<int> order_;  // permutation of point indices, partitioned by the tree
    std::vector<Node> nodes_;
    int root_ = -1;
};

/// Exact nearest point in the index; ties broken by lowest index.
std::pair<int, double> nearest_vertex(const SpatialIndex& index, const Vec3& query);

}  // namespace hoikit
