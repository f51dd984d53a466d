#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pose.hpp"

namespace posekit {

inline constexpr std::size_t kOpenPoseBodyPoints = 25;
inline constexpr std::size_t kOpenPoseFacePoints = 70;
inline constexpr std::size_t kOpenPoseHandPoints = 21;

// Component names double as the JSON array keys.
inline constexpr std::string_view kOpenPoseBody = "pose_keypoints_2d";
inline constexpr std::string_view kOpenPoseFace = "face_keypoints_2d";
inline constexpr std::string_view kOpenPoseLeftHand = "hand_left_keypoints_2d";
inline constexpr std::string_view kOpenPoseRightHand = "hand_right_keypoints_2d";

struct OpenPoseParts {
  bool body = true;
  bool face = true;
  bool left_hand = true;
  bool right_hand = true;
};

/// XYC component specs with names, limbs and colors, in body, face, left
/// hand, right hand order.
std::vector<ComponentSpec> openpose_components(OpenPoseParts parts = {});

/// Monolithic OpenPose JSON:
///   {"fps": 25, "width": W, "height": H,
///    "frames": {"<index>": {"people": [{"pose_keypoints_2d": [x, y, c, ...], ...}]}}}
/// `people` pads or truncates every frame; default is the maximum seen.
Pose ingest_openpose(std::string_view json, std::optional<std::size_t> people = std::nullopt);

struct JsonNumberFormat {
  /// Fixed decimals for coordinates and confidences; nullopt prints the
  /// shortest text that parses back to the same value.
  std::optional<int> coordinate_decimals;
  std::optional<int> confidence_decimals;
};

/// Inverse of ingest_openpose for poses built from openpose_components.
std::string export_openpose(const Pose& pose, const JsonNumberFormat& format = {});

}  // namespace posekit
