#include "stitcher.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"
#include "pose_ops.hpp"

namespace posekit {

namespace {

double point_distance(std::span<const float> a, std::span<const float> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = double(a[i]) - double(b[i]);
    sum += d * d;
  }
  return std::sqrt(sum);
}

void check_schema(const Pose& a, const Pose& b) {
  if (a.header.components != b.header.components || a.body.people != b.body.people) {
    throw Error(Errc::kSchemaMismatch, "clips have different components or people counts");
  }
}

std::size_t search_window(std::size_t frames, const StitchConfig& config) {
  const std::size_t w = config.search_window > 0
                            ? config.search_window
                            : std::max<std::size_t>(2, (frames + 3) / 4);
  return std::min(w, frames);
}

}  // namespace

Pose trim_pose(const Pose& pose, const StitchConfig& config) {
  const std::size_t n = pose.body.frames;
  if (n <= 1) return pose;
  const FlowSeries flow = optical_flow(pose);
  const std::size_t per_frame = flow.people * flow.points;
  std::vector<double> motion(n, 0.0);
  for (std::size_t f = 0; f < n; ++f) {
    for (std::size_t i = 0; i < per_frame; ++i) motion[f] += flow.values[f * per_frame + i];
  }
  // Frame 0 has no predecessor; it shares the motion leading into frame 1.
  motion[0] = motion[1];

  const double peak = *std::max_element(motion.begin(), motion.end());
  if (peak <= 0.0) return pose;
  const double threshold = config.trim_flow_fraction * peak;
  std::size_t first = 0;
  while (first < n && motion[first] < threshold) ++first;
  std::size_t last = n - 1;
  while (last > first && motion[last] < threshold) --last;
  if (first == 0 && last == n - 1) return pose;

  Pose out = Pose::empty_like(pose.header, pose.body.fps, last - first + 1, pose.body.people);
  for (std::size_t f = first; f <= last; ++f) out.body.copy_frame_from(pose.body, f, f - first);
  return out;
}

std::optional<double> frame_distance(const Pose& a, std::size_t i, const Pose& b, std::size_t j) {
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t p = 0; p < a.body.people; ++p) {
    for (std::size_t k = 0; k < a.body.points; ++k) {
      if (!a.body.present(i, p, k) || !b.body.present(j, p, k)) continue;
      sum += point_distance(a.body.point(i, p, k), b.body.point(j, p, k));
      ++count;
    }
  }
  if (count == 0) return std::nullopt;
  return sum / double(count);
}

StitchPoint find_stitch_point(const Pose& a, const Pose& b, const StitchConfig& config,
                              std::size_t a_min) {
  check_schema(a, b);
  const std::size_t na = a.body.frames;
  const std::size_t nb = b.body.frames;
  if (na == 0 || nb == 0) throw Error(Errc::kEmptyInput, "cannot stitch an empty clip");

  const std::size_t wa = search_window(na, config);
  const std::size_t wb = search_window(nb, config);
  const std::size_t i_lo = std::max(na - wa, std::min(a_min, na - 1));

  std::optional<StitchPoint> best;
  for (std::size_t i = na; i-- > i_lo;) {
    for (std::size_t j = 0; j < wb; ++j) {
      const auto d = frame_distance(a, i, b, j);
      if (d && (!best || *d < best->distance)) best = StitchPoint{i, j, *d};
    }
  }
  if (!best) throw Error(Errc::kNoSharedPoints, "no point is present in both search windows");
  return *best;
}

Pose fill_missing(const Pose& pose) {
  Pose out = pose;
  auto& b = out.body;
  const std::size_t n = b.frames;
  std::vector<std::size_t> present;
  for (std::size_t p = 0; p < b.people; ++p) {
    for (std::size_t k = 0; k < b.points; ++k) {
      present.clear();
      for (std::size_t f = 0; f < n; ++f) {
        if (b.present(f, p, k)) present.push_back(f);
      }
      if (present.empty() || present.size() == n) continue;

      const auto copy = [&](std::size_t from, std::size_t to) {
        const auto src = pose.body.point(from, p, k);
        std::copy(src.begin(), src.end(), b.point(to, p, k).begin());
        b.conf(to, p, k) = pose.body.conf(from, p, k);
      };
      for (std::size_t f = 0; f < present.front(); ++f) copy(present.front(), f);
      for (std::size_t f = present.back() + 1; f < n; ++f) copy(present.back(), f);

      for (std::size_t g = 1; g < present.size(); ++g) {
        const std::size_t f0 = present[g - 1];
        const std::size_t f1 = present[g];
        if (f1 - f0 < 2) continue;
        const auto a0 = pose.body.point(f0, p, k);
        const auto a1 = pose.body.point(f1, p, k);
        const float conf = std::min(pose.body.conf(f0, p, k), pose.body.conf(f1, p, k));
        for (std::size_t f = f0 + 1; f < f1; ++f) {
          const double t = double(f - f0) / double(f1 - f0);
          auto dst = b.point(f, p, k);
          for (std::size_t x = 0; x < b.axes; ++x) {
            dst[x] = static_cast<float>(double(a0[x]) + (double(a1[x]) - double(a0[x])) * t);
          }
          b.conf(f, p, k) = conf;
        }
      }
    }
  }
  return out;
}

Pose align_wrists(const Pose& pose, const std::vector<WristAnchor>& anchors) {
  Pose out = pose;
  auto& b = out.body;
  const auto axes = point_axes(pose.header);
  for (const auto& anchor : anchors) {
    const auto c = pose.header.find_component(anchor.hand_component);
    if (!c) {
      throw Error(Errc::kUnknownComponent, "no component named '" + anchor.hand_component + "'");
    }
    const auto& comp = pose.header.components[*c];
    const auto wrist = comp.find_point("WRIST");
    if (!wrist) throw Error(Errc::kMissingPoint, "component '" + comp.name + "' has no WRIST");
    const std::size_t offset = pose.header.point_offset(*c);
    const std::size_t hand_wrist = offset + *wrist;
    const std::size_t body_wrist = resolve_point(pose.header, anchor.body_wrist);
    const std::size_t dims = std::min(axes[hand_wrist], axes[body_wrist]);

    for (std::size_t f = 0; f < b.frames; ++f) {
      for (std::size_t p = 0; p < b.people; ++p) {
        if (!b.present(f, p, hand_wrist) || !b.present(f, p, body_wrist)) continue;
        std::vector<double> shift(dims);
        for (std::size_t x = 0; x < dims; ++x) {
          shift[x] = double(b.point(f, p, body_wrist)[x]) - double(b.point(f, p, hand_wrist)[x]);
        }
        for (std::size_t k = offset; k < offset + comp.point_count(); ++k) {
          if (!b.present(f, p, k)) continue;
          auto pt = b.point(f, p, k);
          for (std::size_t x = 0; x < dims; ++x) pt[x] = static_cast<float>(double(pt[x]) + shift[x]);
        }
      }
    }
  }
  return out;
}

std::size_t padding_frames(double padding_seconds, std::uint16_t fps) {
  if (padding_seconds < 0.0) throw Error(Errc::kInvalidArgument, "padding must be non-negative");
  return static_cast<std::size_t>(std::floor(padding_seconds * fps + 0.5));
}

StitchResult stitch_detailed(const std::vector<Pose>& clips, const StitchConfig& config) {
  if (clips.empty()) throw Error(Errc::kEmptyInput, "no clips to stitch");
  if (config.savgol_window % 2 == 0) throw Error(Errc::kBadWindow, "savgol window must be odd");
  for (const auto& clip : clips) {
    check_schema(clips.front(), clip);
    if (clip.body.fps != clips.front().body.fps) {
      throw Error(Errc::kSchemaMismatch, "clips have different frame rates");
    }
    if (clip.body.frames == 0) throw Error(Errc::kEmptyInput, "cannot stitch an empty clip");
  }

  std::vector<Pose> trimmed;
  trimmed.reserve(clips.size());
  for (const auto& clip : clips) {
    trimmed.push_back(trim_pose(
        config.wrist_anchors.empty() ? clip : align_wrists(clip, config.wrist_anchors), config));
  }

  const std::size_t n = trimmed.size();
  std::vector<std::size_t> first(n, 0), last(n, 0);
  for (std::size_t k = 0; k < n; ++k) last[k] = trimmed[k].body.frames - 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const auto sp = find_stitch_point(trimmed[k], trimmed[k + 1], config, first[k]);
    last[k] = sp.a_frame;
    first[k + 1] = sp.b_frame;
  }

  const std::uint16_t fps = clips.front().body.fps;
  const std::size_t gap = n > 1 ? padding_frames(config.padding_seconds, fps) : 0;
  std::size_t total = (n - 1) * gap;
  for (std::size_t k = 0; k < n; ++k) total += last[k] - first[k] + 1;

  StitchResult result;
  result.pose = Pose::empty_like(trimmed.front().header, fps, total, trimmed.front().body.people);
  auto& out = result.pose.body;
  std::size_t at = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t begin = at;
    for (std::size_t f = first[k]; f <= last[k]; ++f) out.copy_frame_from(trimmed[k].body, f, at++);
    result.spans.emplace_back(begin, at - 1);
    if (k + 1 == n) break;

    // Ease-in/ease-out cubic Hermite between the flanking kept frames.
    const auto& a = trimmed[k].body;
    const auto& b = trimmed[k + 1].body;
    const std::size_t fa = last[k];
    const std::size_t fb = first[k + 1];
    for (std::size_t m = 1; m <= gap; ++m, ++at) {
      const double s = double(m) / double(gap + 1);
      const double h = s * s * (3.0 - 2.0 * s);
      for (std::size_t p = 0; p < out.people; ++p) {
        for (std::size_t q = 0; q < out.points; ++q) {
          if (!a.present(fa, p, q) || !b.present(fb, p, q)) continue;
          const auto p0 = a.point(fa, p, q);
          const auto p1 = b.point(fb, p, q);
          auto dst = out.point(at, p, q);
          for (std::size_t x = 0; x < out.axes; ++x) {
            dst[x] = static_cast<float>(double(p0[x]) + (double(p1[x]) - double(p0[x])) * h);
          }
          out.conf(at, p, q) = std::min(a.conf(fa, p, q), b.conf(fb, p, q));
        }
      }
    }
  }

  result.pose = fill_missing(result.pose);
  std::size_t window = config.savgol_window;
  if (window > total) window = total % 2 == 1 ? total : total - 1;
  if (window > config.savgol_polyorder) {
    result.pose = savgol_smooth(result.pose, window, config.savgol_polyorder);
  }
  return result;
}

Pose stitch(const std::vector<Pose>& clips, const StitchConfig& config) {
  return stitch_detailed(clips, config).pose;
}

}  // namespace posekit
