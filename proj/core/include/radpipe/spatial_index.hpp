#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "radpipe/types.hpp"

namespace radpipe {

// Static KD-tree over the x/y/z coordinates of a point set. Built once, then
// queried; the indexed points are copied at construction so the tree stays
// valid independently of the source container.
class KdTree {
 public:
  explicit KdTree(const std::vector<RadarPoint>& points, std::size_t leaf_size = 16);

  // Indices of all points with |p - center| <= radius, in ascending order.
  std::vector<std::size_t> radius_search(const Eigen::Vector3d& center, double radius) const;

  std::size_t size() const { return positions_.size(); }

 private:
  struct Node {
    // Leaves hold [begin, end) into order_; internal nodes split on `axis`
    // at `threshold` with children at `left`/`right`.
    std::size_t begin = 0;
    std::size_t end = 0;
    int axis = -1;
    double threshold = 0.0;
    std::size_t left = 0;
    std::size_t right = 0;
    bool is_leaf() const { return axis < 0; }
  };

  std::size_t build(std::size_t begin, std::size_t end);
  void query(std::size_t node_index, const Eigen::Vector3d& center, double radius,
             double radius_sq, std::vector<std::size_t>& out) const;

  std::size_t leaf_size_;
  std::vector<Eigen::Vector3d> positions_;
  std::vector<std::size_t> order_;
  std::vector<Node> nodes_;
  std::size_t root_ = 0;
};

}  // namespace radpipe
