#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "pose.hpp"

namespace posekit {

/// Resolves "POINT" (first match in header order) or "COMPONENT/POINT" to a
/// global point index. Throws MissingPoint.
std::size_t resolve_point(const PoseHeader& header, std::string_view name);

/// Number of true coordinate axes for every global point (components with
/// fewer axes than the body zero-fill the rest).
std::vector<std::size_t> point_axes(const PoseHeader& header);

/// Per person: scales and translates so the mean shoulder distance is 1 and
/// the mean shoulder midpoint sits at the origin.
Pose normalize_shoulders(const Pose& pose, std::string_view left, std::string_view right);

/// Per frame: rotates so the plane through a, b, c has a +Z normal.
Pose normalize_plane(const Pose& pose, std::string_view a, std::string_view b,
                     std::string_view c);

struct AffineParams {
  double rotation_deg = 0.0;
  double scale = 1.0;
  double shear_x = 0.0;
  double shear_y = 0.0;
  double translate_x = 0.0;
  double translate_y = 0.0;
  bool reflect_x = false;
};

/// Applies rotate(scale(shear(reflect(translate(p))))) to the first two axes
/// of present points.
Pose affine_augment(const Pose& pose, const AffineParams& params);

Pose interpolate_fps(const Pose& pose, std::uint16_t new_fps);
Pose frame_dropout(const Pose& pose, double probability, std::uint64_t seed);
Pose gaussian_noise(const Pose& pose, double sigma, std::uint64_t seed);

struct FlowSeries {
  std::uint16_t fps = 0;
  std::size_t frames = 0;
  std::size_t people = 0;
  std::size_t points = 0;
  std::vector<float> values;  // [frames][people][points]

  float at(std::size_t f, std::size_t p, std::size_t k) const {
    return values[(f * people + p) * points + k];
  }
};

/// ||P_t - P_{t-1}|| * fps for points present in both frames, 0 otherwise.
FlowSeries optical_flow(const Pose& pose);
std::string flow_to_csv(const FlowSeries& flow);

inline constexpr std::size_t kDefaultSavgolWindow = 7;
inline constexpr std::size_t kDefaultSavgolPolyorder = 2;

Pose savgol_smooth(const Pose& pose, std::size_t window = kDefaultSavgolWindow,
                   std::size_t polyorder = kDefaultSavgolPolyorder);

/// Savitzky-Golay over a single series. `present[t] == false` samples are
/// excluded from every local fit and left untouched in the output.
std::vector<double> savgol_series(std::span<const double> values, std::span<const bool> present,
                                  std::size_t window, std::size_t polyorder);

}  // namespace posekit
