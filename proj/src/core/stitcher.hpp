#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pose.hpp"

namespace posekit {

/// Pairs a hand component with the body point its WRIST should sit on.
struct WristAnchor {
  std::string hand_component;
  std::string body_wrist;  // "POINT" or "COMPONENT/POINT"
};

struct StitchConfig {
  double padding_seconds = 0.2;
  /// 0 selects max(2, ceil(25% of the clip length)).
  std::size_t search_window = 0;
  double trim_flow_fraction = 0.2;
  std::size_t savgol_window = 7;
  std::size_t savgol_polyorder = 2;
  /// Applied to every clip before trimming when non-empty.
  std::vector<WristAnchor> wrist_anchors;
};

/// Drops leading/trailing frames whose summed flow is below
/// trim_flow_fraction x peak. Keeps at least one frame.
Pose trim_pose(const Pose& pose, const StitchConfig& config);

struct StitchPoint {
  std::size_t a_frame = 0;
  std::size_t b_frame = 0;
  double distance = 0.0;
};

/// Mean per-point distance between frames i of `a` and j of `b` over points
/// present in both; nullopt when no point is shared.
std::optional<double> frame_distance(const Pose& a, std::size_t i, const Pose& b, std::size_t j);

/// Search over the last window of `a` (not before `a_min`) and the first
/// window of `b`. Ties prefer larger a_frame, then smaller b_frame.
StitchPoint find_stitch_point(const Pose& a, const Pose& b, const StitchConfig& config,
                              std::size_t a_min = 0);

/// Linear interpolation over interior gaps, hold at the ends.
Pose fill_missing(const Pose& pose);

/// Moves each anchored hand so its WRIST coincides with the body wrist, per
/// frame and person, when both are present.
Pose align_wrists(const Pose& pose, const std::vector<WristAnchor>& anchors);

std::size_t padding_frames(double padding_seconds, std::uint16_t fps);

struct StitchResult {
  Pose pose;
  /// [first, last] output frame of each clip's kept content.
  std::vector<std::pair<std::size_t, std::size_t>> spans;
};

StitchResult stitch_detailed(const std::vector<Pose>& clips, const StitchConfig& config);
Pose stitch(const std::vector<Pose>& clips, const StitchConfig& config);

}  // namespace posekit
