#pragma once

#include "polydem/geometry.hpp"

#include <vector>

namespace polydem {

/// Static k-d tree for exact k-nearest-neighbour queries over a fixed point
/// cloud. Built once during preprocessing; queries are read-only.
class KdTree {
 public:
  KdTree() = default;
  KdTree(int dim, std::vector<Vec3> points);

  /// Indices of the k nearest points to `query`, ordered by increasing
  /// distance (ties broken by index).
  std::vector<int> knn(const Vec3& query, int k) const;

  int size() const { return (int)points_.size(); }
  const Vec3& point(int i) const { return points_[i]; }

 private:
  struct Node {
    int point = -1;
    int axis = 0;
    int left = -1, right = -1;
  };
  int build(std::vector<int>& ids, int begin, int end, int depth);

  int dim_ = 3;
  std::vector<Vec3> points_;
  std::vector<Node> nodes_;
  int root_ = -1;
};

}  // namespace polydem
