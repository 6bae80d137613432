#pragma once

#include <cstddef>
#include <string_view>
#include <utility>

#include "radpipe/types.hpp"

namespace radpipe {

/// Threshold set for one environment. RCS bounds are strict, angular and
/// Doppler bounds inclusive.
struct FilterProfile {
  double rcs_min = 0.0;
  double rcs_max = 45.0;
  double az_min = -5.0;   ///< degrees
  double az_max = 5.0;
  double el_min = -2.0;   ///< degrees
  double el_max = 8.0;
  double v_min = -10.0;   ///< m/s
  double v_max = 10.0;
};

/// Per-criterion rejection counters for one filtered frame. A point is
/// charged to the first failing check, evaluated in the order RCS,
/// degenerate position, angular bounds, Doppler bounds.
struct RejectionStats {
  std::size_t input = 0;
  std::size_t kept = 0;
  std::size_t rejected_rcs = 0;
  std::size_t rejected_degenerate = 0;
  std::size_t rejected_angular = 0;
  std::size_t rejected_doppler = 0;
};

/// Shipped profiles: "indoor" (strict angular and RCS limits) and "outdoor"
/// (wider bounds). Throws UnknownProfile for any other name.
FilterProfile builtin_profile(std::string_view name);

/// True iff the point satisfies every profile bound. A point exactly at the
/// origin fails (no direction), it does not throw.
bool point_passes(const FilterProfile& profile, const RadarPoint& p);

/// Keeps exactly the points for which point_passes holds, in input order.
std::pair<RadarFrame, RejectionStats> filter_frame(const FilterProfile& profile,
                                                   const RadarFrame& frame);

}  // namespace radpipe
