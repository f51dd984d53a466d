#include "hand_norm.hpp"

#include <Eigen/Geometry>
#include <algorithm>
#include <cctype>
#include <cmath>

#include "error.hpp"

namespace posekit {

const std::array<std::string, kHandLandmarks>& hand_landmark_names() {
  static const std::array<std::string, kHandLandmarks> names = {
      "WRIST",
      "THUMB_CMC",         "THUMB_MCP",         "THUMB_IP",          "THUMB_TIP",
      "INDEX_FINGER_MCP",  "INDEX_FINGER_PIP",  "INDEX_FINGER_DIP",  "INDEX_FINGER_TIP",
      "MIDDLE_FINGER_MCP", "MIDDLE_FINGER_PIP", "MIDDLE_FINGER_DIP", "MIDDLE_FINGER_TIP",
      "RING_FINGER_MCP",   "RING_FINGER_PIP",   "RING_FINGER_DIP",   "RING_FINGER_TIP",
      "PINKY_MCP",         "PINKY_PIP",         "PINKY_DIP",         "PINKY_TIP",
  };
  return names;
}

const char* to_string(HandPlane plane) noexcept {
  return plane == HandPlane::kWall ? "wall" : "floor";
}

const char* to_string(HandView view) noexcept {
  switch (view) {
    case HandView::kFront: return "front";
    case HandView::kSideways: return "sideways";
    case HandView::kBack: return "back";
  }
  return "unknown";
}

HandPose HandPose::from_points(const std::array<Eigen::Vector3d, kHandLandmarks>& points,
                               Handedness handedness) {
  HandPose hand;
  hand.landmarks = points;
  hand.confidence.fill(1.0f);
  hand.handedness = handedness;
  return hand;
}

namespace {

constexpr double kRadToDeg = 180.0 / M_PI;

void require(const HandPose& hand, std::initializer_list<std::size_t> which) {
  for (auto i : which) {
    if (!hand.present(i)) {
      throw Error(Errc::kMissingLandmark, hand_landmark_names()[i] + " is missing");
    }
  }
}

Eigen::Vector3d palm_normal(const HandPose& hand) {
  const auto& w = hand.landmarks[kWrist];
  const Eigen::Vector3d a = hand.landmarks[kIndexMcp] - w;
  const Eigen::Vector3d b = hand.landmarks[kPinkyMcp] - w;
  const Eigen::Vector3d n = a.cross(b);
  if (n.norm() <= 1e-9 * a.norm() * b.norm() || n.norm() == 0.0) {
    throw Error(Errc::kCollinearLandmarks, "WRIST, INDEX_FINGER_MCP and PINKY_MCP are collinear");
  }
  return n;
}

}  // namespace

HandPlane estimate_plane(const HandPose& hand) {
  require(hand, {kWrist, kMiddleMcp});
  const Eigen::Vector3d d = hand.landmarks[kMiddleMcp] - hand.landmarks[kWrist];
  const double y = std::abs(d.y()) * 1.5;
  const double z = std::abs(d.z());
  return y > z ? HandPlane::kWall : HandPlane::kFloor;
}

double rotation_angle_deg(const HandPose& hand) {
  const HandPlane plane = estimate_plane(hand);
  const Eigen::Vector3d d = hand.landmarks[kMiddleMcp] - hand.landmarks[kWrist];
  const double u = d.x();
  const double v = plane == HandPlane::kWall ? d.y() : d.z();
  if (std::hypot(u, v) <= 1e-12) {
    throw Error(Errc::kDegenerateDirection, "WRIST -> MIDDLE_FINGER_MCP has no in-plane extent");
  }
  double angle = std::atan2(-u, v) * kRadToDeg;
  if (angle < 0.0) angle += 360.0;
  if (angle >= 360.0) angle -= 360.0;
  return angle;
}

int rotation_bin_from_angle(double angle_deg) {
  double a = std::fmod(angle_deg + 22.5, 360.0);
  if (a < 0.0) a += 360.0;
  return static_cast<int>(std::floor(a / 45.0)) % 8;
}

int estimate_rotation_bin(const HandPose& hand) {
  return rotation_bin_from_angle(rotation_angle_deg(hand));
}

double view_angle_deg(const HandPose& hand) {
  require(hand, {kWrist, kIndexMcp, kPinkyMcp, kMiddleMcp});
  const Eigen::Vector3d n = palm_normal(hand);
  if (estimate_plane(hand) == HandPlane::kWall) {
    double angle = std::atan2(n.z(), n.x()) * kRadToDeg;
    if (angle < 0.0) angle += 360.0;
    return angle;
  }
  const double angle = std::atan2(n.y(), n.x()) * kRadToDeg;
  return angle == -180.0 ? 180.0 : angle;
}

HandView estimate_view(const HandPose& hand) {
  const double angle = view_angle_deg(hand);
  if (estimate_plane(hand) == HandPlane::kWall) {
    return angle > 210.0 ? HandView::kFront : (angle > 150.0 ? HandView::kSideways : HandView::kBack);
  }
  return angle > 0.0 ? HandView::kFront : (angle > -60.0 ? HandView::kSideways : HandView::kBack);
}

HandPose normalize_hand_3d(const HandPose& hand) {
  require(hand, {kWrist, kIndexMcp, kPinkyMcp, kMiddleMcp});
  const Eigen::Vector3d wrist = hand.landmarks[kWrist];
  const Eigen::Vector3d metacarpal = hand.landmarks[kMiddleMcp] - wrist;
  const double length = metacarpal.norm();
  if (!(length > 1e-9)) {
    throw Error(Errc::kDegenerateMetacarpal, "WRIST and MIDDLE_FINGER_MCP coincide");
  }

  Eigen::Vector3d back = palm_normal(hand).normalized();
  if (hand.handedness == Handedness::kLeft) back = -back;

  const Eigen::Vector3d y_axis = metacarpal / length;
  Eigen::Vector3d z_axis = back - back.dot(y_axis) * y_axis;
  if (z_axis.norm() <= 1e-9) {
    throw Error(Errc::kCollinearLandmarks, "palm normal is parallel to the middle metacarpal");
  }
  z_axis.normalize();
  const Eigen::Vector3d x_axis = y_axis.cross(z_axis);

  Eigen::Matrix3d frame;
  frame.row(0) = x_axis;
  frame.row(1) = y_axis;
  frame.row(2) = z_axis;
  const double scale = kMetacarpalLength / length;

  HandPose out = hand;
  for (std::size_t i = 0; i < kHandLandmarks; ++i) {
    out.landmarks[i] = scale * (frame * (hand.landmarks[i] - wrist));
  }
  // Exact zeros for the constrained coordinates.
  out.landmarks[kWrist].setZero();
  out.landmarks[kMiddleMcp] = Eigen::Vector3d(0.0, kMetacarpalLength, 0.0);
  return out;
}

double mean_landmark_deviation(const std::vector<HandPose>& hands) {
  if (hands.empty()) return 0.0;
  const double n = static_cast<double>(hands.size());
  double total = 0.0;
  for (std::size_t i = 0; i < kHandLandmarks; ++i) {
    Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
    for (const auto& h : hands) centroid += h.landmarks[i];
    centroid /= n;
    double sq = 0.0;
    for (const auto& h : hands) sq += (h.landmarks[i] - centroid).squaredNorm();
    total += std::sqrt(sq / n);
  }
  return total / static_cast<double>(kHandLandmarks);
}

double mace(const HandShapeGroup& group, std::vector<std::size_t>* dropped) {
  if (group.observations.size() < 2) {
    throw Error(Errc::kInsufficientObservations, "MACE needs at least 2 observations");
  }
  std::vector<HandPose> normalized;
  normalized.reserve(group.observations.size());
  for (std::size_t i = 0; i < group.observations.size(); ++i) {
    try {
      normalized.push_back(normalize_hand_3d(group.observations[i]));
    } catch (const Error&) {
      if (dropped) dropped->push_back(i);
    }
  }
  if (normalized.size() < 2) {
    throw Error(Errc::kInsufficientObservations,
                "fewer than 2 observations of '" + group.shape_id + "' could be normalized");
  }
  return mean_landmark_deviation(normalized);
}

double cce(const HandShapeGroup& group) {
  if (group.observations.size() < 2) {
    throw Error(Errc::kInsufficientObservations, "CCE needs at least 2 observations");
  }
  std::vector<HandPose> shifted;
  shifted.reserve(group.observations.size());
  for (const auto& obs : group.observations) {
    require(obs, {kWrist});
    HandPose h = obs;
    const Eigen::Vector3d wrist = obs.landmarks[kWrist];
    for (auto& p : h.landmarks) p -= wrist;
    shifted.push_back(h);
  }
  return mean_landmark_deviation(shifted);
}

namespace {

std::pair<std::size_t, std::size_t> hand_component(const Pose& pose, std::string_view component) {
  const auto c = pose.header.find_component(component);
  if (!c) throw Error(Errc::kUnknownComponent, "no component named '" + std::string(component) + "'");
  const auto& comp = pose.header.components[*c];
  if (comp.point_count() != kHandLandmarks) {
    throw Error(Errc::kInvalidArgument, "component '" + comp.name + "' has " +
                                            std::to_string(comp.point_count()) +
                                            " points, a hand needs 21");
  }
  if (comp.axis_count() < 3) {
    throw Error(Errc::kNotThreeD, "component '" + comp.name + "' is not 3-D");
  }
  return {*c, pose.header.point_offset(*c)};
}

}  // namespace

HandPose hand_from_pose(const Pose& pose, std::string_view component, std::size_t frame,
                        std::size_t person, Handedness handedness) {
  const auto [c, offset] = hand_component(pose, component);
  const auto& b = pose.body;
  if (frame >= b.frames || person >= b.people) {
    throw Error(Errc::kFrameOutOfRange, "frame/person out of range");
  }
  HandPose hand;
  hand.handedness = handedness;
  for (std::size_t i = 0; i < kHandLandmarks; ++i) {
    const auto pt = b.point(frame, person, offset + i);
    hand.landmarks[i] = Eigen::Vector3d(pt[0], pt[1], pt[2]);
    hand.confidence[i] = b.conf(frame, person, offset + i);
  }
  return hand;
}

Handedness handedness_from_name(std::string_view component) {
  std::string lower(component);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return lower.find("left") != std::string::npos ? Handedness::kLeft : Handedness::kRight;
}

Pose normalize_hands_in_pose(const Pose& pose, std::string_view component,
                             Handedness handedness) {
  const auto [c, offset] = hand_component(pose, component);
  Pose out = pose;
  auto& b = out.body;
  for (std::size_t f = 0; f < b.frames; ++f) {
    for (std::size_t p = 0; p < b.people; ++p) {
      HandPose normalized;
      try {
        normalized = normalize_hand_3d(hand_from_pose(pose, component, f, p, handedness));
      } catch (const Error&) {
        continue;
      }
      for (std::size_t i = 0; i < kHandLandmarks; ++i) {
        if (!b.present(f, p, offset + i)) continue;
        auto pt = b.point(f, p, offset + i);
        for (int a = 0; a < 3; ++a) pt[a] = static_cast<float>(normalized.landmarks[i][a]);
      }
    }
  }
  return out;
}

}  // namespace posekit
