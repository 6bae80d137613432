#include "radpipe/clustering.hpp"

#include <cmath>
#include <map>
#include <vector>

#include "radpipe/errors.hpp"
#include "radpipe/geometry.hpp"

namespace radpipe {

KdTree build_spatial_index(const std::vector<RadarPoint>& points, std::size_t leaf_size) {
  return KdTree(points, leaf_size);
}

std::vector<Cluster> euclidean_cluster(const std::vector<RadarPoint>& points,
                                       const ClusteringParams& params) {
  std::vector<Cluster> clusters;
  if (points.empty()) {
    return clusters;
  }
  const KdTree index = build_spatial_index(points);
  const double d_th_sq = params.d_th * params.d_th;
  std::vector<bool> visited(points.size(), false);
  std::vector<std::size_t> queue;
  for (std::size_t seed = 0; seed < points.size(); ++seed) {
    if (visited[seed]) {
      continue;
    }
    visited[seed] = true;
    queue.clear();
    queue.push_back(seed);
    std::vector<std::size_t> members;
    while (!queue.empty()) {
      const std::size_t i = queue.back();
      queue.pop_back();
      members.push_back(i);
      const Eigen::Vector3d p = points[i].position();
      for (std::size_t j : index.radius_search(p, params.d_th)) {
        // The index is inclusive at the radius; the graph edge is strict.
        if (!visited[j] && (points[j].position() - p).squaredNorm() < d_th_sq) {
          visited[j] = true;
          queue.push_back(j);
        }
      }
    }
    if (members.size() < params.min_points) {
      continue;
    }
    std::sort(members.begin(), members.end());
    Cluster c;
    c.points.reserve(members.size());
    for (std::size_t m : members) {
      c.points.push_back(points[m]);
    }
    c.indices = std::move(members);
    clusters.push_back(std::move(c));
  }
  return clusters;
}

std::vector<Cluster> euclidean_cluster(const RadarFrame& frame, const ClusteringParams& params) {
  return euclidean_cluster(frame.points, params);
}

double mean_doppler(const Cluster& c) {
  if (c.points.empty()) {
    throw EmptyCluster("mean_doppler on empty cluster");
  }
  double sum = 0.0;
  for (const RadarPoint& p : c.points) {
    sum += p.doppler;
  }
  return sum / static_cast<double>(c.points.size());
}

double compensated_mean_doppler(const Cluster& c, const EgoState& ego) {
  if (c.points.empty()) {
    throw EmptyCluster("compensated_mean_doppler on empty cluster");
  }
  double sum = 0.0;
  std::size_t used = 0;
  for (const RadarPoint& p : c.points) {
    if (p.x == 0.0 && p.y == 0.0 && p.z == 0.0) {
      continue;
    }
    sum += compensate_doppler(p, ego);
    ++used;
  }
  if (used == 0) {
    throw EmptyCluster("all cluster members at degenerate positions");
  }
  return sum / static_cast<double>(used);
}

double modal_rcs(const Cluster& c, double bin_width) {
  if (c.points.empty()) {
    throw EmptyCluster("modal_rcs on empty cluster");
  }
  std::map<long long, std::size_t> bins;
  for (const RadarPoint& p : c.points) {
    const long long k = static_cast<long long>(std::floor(p.rcs / bin_width));
    ++bins[k];
  }
  long long best = bins.begin()->first;
  std::size_t best_count = bins.begin()->second;
  for (const auto& [k, count] : bins) {
    if (count > best_count) {
      best = k;
      best_count = count;
    }
  }
  return (static_cast<double>(best) + 0.5) * bin_width;
}

ClusterDescriptors describe_cluster(const Cluster& c, const EgoState& ego,
                                    const ClusteringParams& params) {
  if (c.points.empty()) {
    throw EmptyCluster("describe_cluster on empty cluster");
  }
  ClusterDescriptors d;
  d.mean_doppler = mean_doppler(c);
  d.comp_mean_doppler = compensated_mean_doppler(c, ego);
  d.modal_rcs = modal_rcs(c, params.rcs_bin_width);
  Eigen::Vector3d sum = Eigen::Vector3d::Zero();
  for (const RadarPoint& p : c.points) {
    sum += p.position();
  }
  d.centroid = sum / static_cast<double>(c.points.size());
  d.point_count = c.points.size();
  return d;
}

std::vector<std::size_t> retain_clusters(const std::vector<ClusterDescriptors>& descriptors,
                                         const RetentionRules& rules) {
  std::vector<std::size_t> kept;
  for (std::size_t k = 0; k < descriptors.size(); ++k) {
    const ClusterDescriptors& d = descriptors[k];
    const bool doppler_criterion = std::abs(d.comp_mean_doppler) > rules.v_min_retain;
    const bool rcs_criterion =
        d.modal_rcs >= rules.rcs_retain_min && d.modal_rcs <= rules.rcs_retain_max;
    if (doppler_criterion || rcs_criterion) {
      kept.push_back(k);
    }
  }
  return kept;
}

}  // namespace radpipe
