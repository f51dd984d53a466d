#pragma once

#include <Eigen/Geometry>
#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "fsw.hpp"
#include "hand_norm.hpp"
#include "pose.hpp"
#include "segmentation.hpp"

namespace fixture {

inline posekit::ComponentSpec component(const std::string& name, const std::string& format,
                                        std::size_t points,
                                        std::vector<posekit::Limb> limbs = {},
                                        std::vector<posekit::Rgb> colors = {}) {
  posekit::ComponentSpec c;
  c.name = name;
  c.format = format;
  for (std::size_t i = 0; i < points; ++i) c.point_names.push_back(name + "_" + std::to_string(i));
  c.limbs = std::move(limbs);
  c.colors = std::move(colors);
  return c;
}

// Single-component pose with every point present (confidence 1).
inline posekit::Pose pose(std::size_t frames, std::size_t people, std::size_t points,
                          const std::string& format = "XYC", std::uint16_t fps = 25) {
  posekit::PoseHeader h;
  h.components.push_back(component("body", format, points));
  auto p = posekit::Pose::empty_like(h, fps, frames, people);
  std::fill(p.body.confidence.begin(), p.body.confidence.end(), 1.0f);
  return p;
}

inline void set(posekit::Pose& p, std::size_t f, std::size_t person, std::size_t k,
                std::initializer_list<float> xyz, float conf = 1.0f) {
  auto pt = p.body.point(f, person, k);
  std::size_t i = 0;
  for (float v : xyz) pt[i++] = v;
  p.body.conf(f, person, k) = conf;
}

// Right hand with WRIST at the origin, MIDDLE_FINGER_MCP at (0, 200, 0)
// and the back of the hand facing +Z: already canonical.
inline std::array<Eigen::Vector3d, posekit::kHandLandmarks> canonical_hand() {
  return {{
      {0, 0, 0},                                                          // wrist
      {45, 40, -10},  {75, 80, -25},  {95, 120, -30}, {110, 155, -35},    // thumb
      {40, 190, 0},   {45, 260, 5},   {48, 305, 10},  {50, 340, 12},      // index
      {0, 200, 0},    {0, 275, 8},    {0, 325, 14},   {0, 365, 18},       // middle
      {-30, 190, -4}, {-35, 260, 2},  {-38, 300, 8},  {-40, 335, 12},     // ring
      {-60, 170, 0},  {-70, 225, 4},  {-75, 260, 8},  {-80, 290, 10},     // pinky
  }};
}

inline Eigen::Matrix3d random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::Quaterniond q(n(rng), n(rng), n(rng), n(rng));
  q.normalize();
  return q.toRotationMatrix();
}

inline std::array<Eigen::Vector3d, posekit::kHandLandmarks> transform(
    const std::array<Eigen::Vector3d, posekit::kHandLandmarks>& pts, const Eigen::Matrix3d& r,
    double scale, const Eigen::Vector3d& t) {
  auto out = pts;
  for (auto& p : out) p = scale * (r * p) + t;
  return out;
}

// Sorted, non-overlapping segments inside [0, length); adjacency is common.
inline std::vector<posekit::Segment> random_segments(std::mt19937_64& rng, std::size_t length) {
  std::vector<posekit::Segment> out;
  std::uniform_int_distribution<int> gap(0, 3), len(1, 6);
  std::size_t at = static_cast<std::size_t>(gap(rng));
  while (true) {
    const std::size_t l = static_cast<std::size_t>(len(rng));
    if (at + l > length) break;
    out.push_back({at, at + l - 1, posekit::SegmentKind::kSign});
    at += l + static_cast<std::size_t>(gap(rng) == 0 ? 0 : gap(rng));
  }
  return out;
}

inline std::vector<std::pair<long, long>> pairs(const std::vector<posekit::Segment>& segs) {
  std::vector<std::pair<long, long>> out;
  for (const auto& s : segs) out.push_back({long(s.start), long(s.end)});
  return out;
}

inline std::string tag_string(const posekit::TagSequence& tags) {
  std::string s;
  for (auto t : tags) s += static_cast<char>(t);
  return s;
}

// Single-person 2D clip: every point follows its own constant-velocity
// walk starting near `origin`.
inline posekit::Pose moving_clip(std::mt19937_64& rng, std::size_t frames, std::size_t points,
                                 double origin, double speed) {
  auto p = pose(frames, 1, points);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t k = 0; k < points; ++k) {
    const double x0 = origin + 20.0 * u(rng), y0 = origin + 20.0 * u(rng);
    const double vx = speed * u(rng), vy = speed * (0.5 + 0.5 * std::abs(u(rng)));
    for (std::size_t f = 0; f < frames; ++f) {
      set(p, f, 0, k, {float(x0 + vx * double(f)), float(y0 + vy * double(f))});
    }
  }
  return p;
}

// Largest single-point displacement between consecutive frames in
// [from, to] (person 0, points present on both sides).
inline double max_jump(const posekit::Pose& p, std::size_t from, std::size_t to) {
  double worst = 0.0;
  for (std::size_t f = from; f < to; ++f) {
    for (std::size_t k = 0; k < p.body.points; ++k) {
      if (!p.body.present(f, 0, k) || !p.body.present(f + 1, 0, k)) continue;
      double sum = 0.0;
      for (std::size_t x = 0; x < p.body.axes; ++x) {
        const double d = double(p.body.point(f + 1, 0, k)[x]) - double(p.body.point(f, 0, k)[x]);
        sum += d * d;
      }
      worst = std::max(worst, std::sqrt(sum));
    }
  }
  return worst;
}

// Junction jump of plain concatenation: last frame of a straight into b.
inline double naive_jump(const posekit::Pose& a, const posekit::Pose& b) {
  auto both = pose(2, 1, a.body.points);
  both.body.copy_frame_from(a.body, a.body.frames - 1, 0);
  both.body.copy_frame_from(b.body, 0, 1);
  return max_jump(both, 0, 1);
}

inline posekit::fsw::Sign random_sign(std::mt19937_64& rng) {
  namespace fsw = posekit::fsw;
  std::uniform_int_distribution<int> pos(fsw::kMinPosition, fsw::kMaxPosition);
  std::uniform_int_distribution<int> sym(fsw::kMinSymbol, fsw::kMaxSymbol);
  std::uniform_int_distribution<int> fill(0, fsw::kFills - 1), rot(0, fsw::kRotations - 1);
  std::uniform_int_distribution<int> count(0, 6);
  fsw::Sign s;
  s.box = "BLMR"[rng() % 4];
  s.x = pos(rng);
  s.y = pos(rng);
  for (int n = count(rng); n > 0; --n) s.graphemes.push_back({sym(rng), fill(rng), rot(rng), pos(rng), pos(rng)});
  return s;
}

}  // namespace fixture
