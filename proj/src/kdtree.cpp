#include "polydem/kdtree.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace polydem {

KdTree::KdTree(int dim, std::vector<Vec3> points) : dim_(dim), points_(std::move(points)) {
  std::vector<int> ids(points_.size());
  std::iota(ids.begin(), ids.end(), 0);
  nodes_.reserve(points_.size());
  root_ = build(ids, 0, (int)ids.size(), 0);
}

int KdTree::build(std::vector<int>& ids, int begin, int end, int depth) {
  if (begin >= end) return -1;
  int axis = depth % dim_;
  int mid = (begin + end) / 2;
  std::nth_element(ids.begin() + begin, ids.begin() + mid, ids.begin() + end,
                   [&](int a, int b) {
                     double pa = points_[a][axis], pb = points_[b][axis];
                     return pa < pb || (pa == pb && a < b);
                   });
  int node = (int)nodes_.size();
  nodes_.push_back({ids[mid], axis, -1, -1});
  int l = build(ids, begin, mid, depth + 1);
  int r = build(ids, mid + 1, end, depth + 1);
  nodes_[node].left = l;
  nodes_[node].right = r;
  return node;
}

std::vector<int> KdTree::knn(const Vec3& query, int k) const {
  k = std::min<int>(k, (int)points_.size());
  if (k <= 0) return {};
  using Entry = std::pair<double, int>;  // (squared distance, point id)
  std::priority_queue<Entry> heap;       // max-heap keeps current k best

  auto visit = [&](auto&& self, int node) -> void {
    if (node < 0) return;
    const Node& n = nodes_[node];
    double d2 = (points_[n.point] - query).squaredNorm();
    if ((int)heap.size() < k) {
      heap.push({d2, n.point});
    } else if (d2 < heap.top().first ||
               (d2 == heap.top().first && n.point < heap.top().second)) {
      heap.pop();
      heap.push({d2, n.point});
    }
    double delta = query[n.axis] - points_[n.point][n.axis];
    int near = delta <= 0 ? n.left : n.right;
    int far = delta <= 0 ? n.right : n.left;
    self(self, near);
    if ((int)heap.size() < k || delta * delta <= heap.top().first) self(self, far);
  };
  visit(visit, root_);

  std::vector<Entry> out;
  out.reserve(heap.size());
  while (!heap.empty()) {
    out.push_back(heap.top());
    heap.pop();
  }
  std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) {
    return a.first < b.first || (a.first == b.first && a.second < b.second);
  });
  std::vector<int> ids(out.size());
  for (size_t i = 0; i < out.size(); ++i) ids[i] = out[i].second;
  return ids;
}

}  // namespace polydem
