#include "radpipe/filtering.hpp"

#include <string>

#include "radpipe/errors.hpp"
#include "radpipe/geometry.hpp"

namespace radpipe {

namespace {

enum class Verdict { Pass, Rcs, Degenerate, Angular, Doppler };

Verdict check_point(const FilterProfile& profile, const RadarPoint& p) {
  if (!(profile.rcs_min < p.rcs && p.rcs < profile.rcs_max)) {
    return Verdict::Rcs;
  }
  if (p.x == 0.0 && p.y == 0.0 && p.z == 0.0) {
    return Verdict::Degenerate;
  }
  const SphericalAngles angles = spherical_angles(p);
  if (angles.azimuth_deg < profile.az_min || angles.azimuth_deg > profile.az_max ||
      angles.elevation_deg < profile.el_min || angles.elevation_deg > profile.el_max) {
    return Verdict::Angular;
  }
  if (p.doppler < profile.v_min || p.doppler > profile.v_max) {
    return Verdict::Doppler;
  }
  return Verdict::Pass;
}

}  // namespace

FilterProfile builtin_profile(std::string_view name) {
  if (name == "indoor") {
    return {0.0, 45.0, -5.0, 5.0, -2.0, 8.0, -10.0, 10.0};
  }
  if (name == "outdoor") {
    return {-5.0, 55.0, -15.0, 15.0, -6.0, 12.0, -10.0, 10.0};
  }
  throw UnknownProfile("unknown filter profile: " + std::string(name));
}

bool point_passes(const FilterProfile& profile, const RadarPoint& p) {
  return check_point(profile, p) == Verdict::Pass;
}

std::pair<RadarFrame, RejectionStats> filter_frame(const FilterProfile& profile,
                                                   const RadarFrame& frame) {
  RadarFrame out;
  out.timestamp = frame.timestamp;
  out.points.reserve(frame.points.size());
  RejectionStats stats;
  stats.input = frame.points.size();
  for (const RadarPoint& p : frame.points) {
    switch (check_point(profile, p)) {
      case Verdict::Pass:
        out.points.push_back(p);
        ++stats.kept;
        break;
      case Verdict::Rcs:
        ++stats.rejected_rcs;
        break;
      case Verdict::Degenerate:
        ++stats.rejected_degenerate;
        break;
      case Verdict::Angular:
        ++stats.rejected_angular;
        break;
      case Verdict::Doppler:
        ++stats.rejected_doppler;
        break;
    }
  }
  return {std::move(out), stats};
}

}  // namespace radpipe
