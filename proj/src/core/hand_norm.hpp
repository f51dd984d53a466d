#pragma once

#include <Eigen/Core>
#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "pose.hpp"

namespace posekit {

inline constexpr std::size_t kHandLandmarks = 21;
inline constexpr double kMetacarpalLength = 200.0;

// Canonical 21-point hand order shared by MediaPipe and OpenPose.
enum HandLandmark : std::size_t {
  kWrist = 0,
  kThumbCmc = 1,
  kIndexMcp = 5,
  kMiddleMcp = 9,
  kRingMcp = 13,
  kPinkyMcp = 17,
};

const std::array<std::string, kHandLandmarks>& hand_landmark_names();

enum class Handedness { kLeft, kRight };
enum class HandPlane { kWall, kFloor };
enum class HandView { kFront, kSideways, kBack };

const char* to_string(HandPlane plane) noexcept;
const char* to_string(HandView view) noexcept;

struct HandPose {
  std::array<Eigen::Vector3d, kHandLandmarks> landmarks{};
  std::array<float, kHandLandmarks> confidence{};
  Handedness handedness = Handedness::kRight;

  /// All landmarks present (confidence 1).
  static HandPose from_points(const std::array<Eigen::Vector3d, kHandLandmarks>& points,
                              Handedness handedness = Handedness::kRight);

  bool present(std::size_t i) const { return confidence[i] > 0.0f; }
};

struct HandShapeGroup {
  std::string shape_id;
  std::vector<HandPose> observations;
};

/// Wall iff |dy| * 1.5 > |dz| for the WRIST -> M_MCP vector; ties go to Floor.
HandPlane estimate_plane(const HandPose& hand);

/// Counterclockwise angle of WRIST -> M_MCP from +Y in degrees, [0, 360).
/// Wall hands use the XY plane, Floor hands the XZ plane with z in place of y.
double rotation_angle_deg(const HandPose& hand);
/// Bin k covers [45k - 22.5, 45k + 22.5) degrees, modulo 360.
int rotation_bin_from_angle(double angle_deg);
int estimate_rotation_bin(const HandPose& hand);

/// Palm normal (I_MCP - WRIST) x (P_MCP - WRIST), angle thresholds per plane.
HandView estimate_view(const HandPose& hand);
/// The angle estimate_view thresholds: [0, 360) for Wall, (-180, 180] for Floor.
double view_angle_deg(const HandPose& hand);

/// Rotates the back-of-hand normal to +Z and WRIST -> M_MCP to +Y, scales the
/// metacarpal to 200 and moves WRIST to the origin.
HandPose normalize_hand_3d(const HandPose& hand);

/// Per landmark RMS distance to the landmark's centroid, averaged over the 21
/// landmarks.
double mean_landmark_deviation(const std::vector<HandPose>& hands);

/// Multi-angle consistency error. Observations that fail normalization are
/// dropped; their indices are appended to `dropped` when given.
double mace(const HandShapeGroup& group, std::vector<std::size_t>* dropped = nullptr);

/// Crop consistency error: wrist-shift only, no rotation or scaling.
double cce(const HandShapeGroup& group);

/// Reads a 21-point component of one frame/person. Requires >= 3 axes.
HandPose hand_from_pose(const Pose& pose, std::string_view component, std::size_t frame,
                        std::size_t person, Handedness handedness);

/// Guesses handedness from a component name ("left" anywhere, any case).
Handedness handedness_from_name(std::string_view component);

/// Normalizes the named hand component in every frame and person. Frames
/// where the hand cannot be normalized are left as they are.
Pose normalize_hands_in_pose(const Pose& pose, std::string_view component,
                             Handedness handedness);

}  // namespace posekit
