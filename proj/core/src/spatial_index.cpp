#include "radpipe/spatial_index.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace radpipe {

KdTree::KdTree(const std::vector<RadarPoint>& points, std::size_t leaf_size)
    : leaf_size_(std::max<std::size_t>(1, leaf_size)) {
  positions_.reserve(points.size());
  for (const RadarPoint& p : points) {
    positions_.push_back(p.position());
  }
  order_.resize(positions_.size());
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  if (!positions_.empty()) {
    nodes_.reserve(2 * positions_.size() / leaf_size_ + 1);
    root_ = build(0, positions_.size());
  }
}

std::size_t KdTree::build(std::size_t begin, std::size_t end) {
  const std::size_t index = nodes_.size();
  nodes_.emplace_back();
  nodes_[index].begin = begin;
  nodes_[index].end = end;
  if (end - begin <= leaf_size_) {
    return index;
  }

  Eigen::Vector3d lo = Eigen::Vector3d::Constant(std::numeric_limits<double>::infinity());
  Eigen::Vector3d hi = -lo;
  for (std::size_t i = begin; i < end; ++i) {
    lo = lo.cwiseMin(positions_[order_[i]]);
    hi = hi.cwiseMax(positions_[order_[i]]);
  }
  int axis = 0;
  (hi - lo).maxCoeff(&axis);
  if (hi[axis] == lo[axis]) {
    return index;  // all points coincide; keep as an oversized leaf
  }

  const std::size_t mid = begin + (end - begin) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                   [&](std::size_t a, std::size_t b) {
                     return positions_[a][axis] < positions_[b][axis];
                   });
  const double threshold = positions_[order_[mid]][axis];

  const std::size_t left = build(begin, mid);
  const std::size_t right = build(mid, end);
  nodes_[index].axis = axis;
  nodes_[index].threshold = threshold;
  nodes_[index].left = left;
  nodes_[index].right = right;
  return index;
}

void KdTree::query(std::size_t node_index, const Eigen::Vector3d& center, double radius,
                   double radius_sq, std::vector<std::size_t>& out) const {
  const Node& node = nodes_[node_index];
  if (node.is_leaf()) {
    for (std::size_t i = node.begin; i < node.end; ++i) {
      const std::size_t point_index = order_[i];
      if ((positions_[point_index] - center).squaredNorm() <= radius_sq) {
        out.push_back(point_index);
      }
    }
    return;
  }
  const double delta = center[node.axis] - node.threshold;
  if (delta <= radius) {
    query(node.left, center, radius, radius_sq, out);
  }
  if (delta >= -radius) {
    query(node.right, center, radius, radius_sq, out);
  }
}

std::vector<std::size_t> KdTree::radius_search(const Eigen::Vector3d& center,
                                               double radius) const {
  std::vector<std::size_t> out;
  if (positions_.empty() || radius < 0.0) {
    return out;
  }
  query(root_, center, radius, radius * radius, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace radpipe
