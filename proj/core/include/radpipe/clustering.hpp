#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "radpipe/ego_motion.hpp"
#include "radpipe/spatial_index.hpp"
#include "radpipe/types.hpp"

namespace radpipe {

struct ClusteringParams {
  // Two points are connected when their Euclidean distance is strictly
  // below d_th.
  double d_th = 0.6;
  // Connected components smaller than this are discarded.
  std::size_t min_points = 3;
  // Histogram bin width for the modal RCS descriptor.
  double rcs_bin_width = 1.0;
};

struct Cluster {
  // Indices into the frame the clustering ran on, ascending.
  std::vector<std::size_t> indices;
  // The member points themselves, in index order.
  std::vector<RadarPoint> points;
};

struct ClusterDescriptors {
  double mean_doppler = 0.0;
  double comp_mean_doppler = 0.0;
  double modal_rcs = 0.0;
  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
  std::size_t point_count = 0;
};

struct RetentionRules {
  // A cluster passes the Doppler criterion when |comp_mean_doppler|
  // exceeds this speed.
  double v_min_retain = 0.25;
  // A cluster passes the RCS criterion when modal_rcs falls inside this
  // closed interval. Defaults mirror the indoor profile RCS bounds; the
  // pipeline resets them from whichever profile is active.
  double rcs_retain_min = 0.0;
  double rcs_retain_max = 45.0;
};

// Builds an immutable KD-tree over the point positions.
KdTree build_spatial_index(const std::vector<RadarPoint>& points, std::size_t leaf_size = 16);

// Connected components of the strict-radius neighbour graph. Components
// with fewer than params.min_points members are discarded. Output clusters
// are ordered by smallest member index; within a cluster, indices ascend.
std::vector<Cluster> euclidean_cluster(const std::vector<RadarPoint>& points,
                                       const ClusteringParams& params);
std::vector<Cluster> euclidean_cluster(const RadarFrame& frame, const ClusteringParams& params);

// Arithmetic mean of member Doppler values. Throws EmptyCluster.
double mean_doppler(const Cluster& c);

// Mean over members of (doppler - v_ego . r_hat). Members at a degenerate
// (zero) position are skipped; all members degenerate throws EmptyCluster.
double compensated_mean_doppler(const Cluster& c, const EgoState& ego);

// Center of the most populated RCS histogram bin [k*w, (k+1)*w); ties break
// toward the lower bin. Throws EmptyCluster.
double modal_rcs(const Cluster& c, double bin_width);

// Full descriptor set for one cluster.
ClusterDescriptors describe_cluster(const Cluster& c, const EgoState& ego,
                                    const ClusteringParams& params);

// Keeps cluster k iff |descriptors[k].comp_mean_doppler| > v_min_retain OR
// descriptors[k].modal_rcs is inside [rcs_retain_min, rcs_retain_max].
// Relative order is preserved; descriptors must pair with clusters.
std::vector<std::size_t> retain_clusters(const std::vector<ClusterDescriptors>& descriptors,
                                         const RetentionRules& rules);

}  // namespace radpipe
