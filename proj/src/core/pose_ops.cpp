#include "pose_ops.hpp"

#include <Eigen/Dense>
#include <Eigen/Geometry>
#include <charconv>
#include <cmath>
#include <map>
#include <memory>
#include <random>
#include <sstream>

#include "error.hpp"
#include "rng.hpp"

namespace posekit {

std::size_t resolve_point(const PoseHeader& header, std::string_view name) {
  if (const auto slash = name.find('/'); slash != std::string_view::npos) {
    const auto comp_name = name.substr(0, slash);
    const auto point_name = name.substr(slash + 1);
    if (const auto c = header.find_component(comp_name)) {
      if (const auto k = header.components[*c].find_point(point_name)) {
        return header.point_offset(*c) + *k;
      }
    }
  } else {
    std::size_t offset = 0;
    for (const auto& comp : header.components) {
      if (const auto k = comp.find_point(name)) return offset + *k;
      offset += comp.point_count();
    }
  }
  throw Error(Errc::kMissingPoint, "no point named '" + std::string(name) + "'");
}

std::vector<std::size_t> point_axes(const PoseHeader& header) {
  std::vector<std::size_t> axes;
  axes.reserve(header.total_points());
  for (const auto& comp : header.components) axes.insert(axes.end(), comp.point_count(), comp.axis_count());
  return axes;
}

namespace {

double distance(std::span<const float> a, std::span<const float> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
    sum += d * d;
  }
  return std::sqrt(sum);
}

}  // namespace

Pose normalize_shoulders(const Pose& pose, std::string_view left, std::string_view right) {
  const std::size_t l = resolve_point(pose.header, left);
  const std::size_t r = resolve_point(pose.header, right);
  Pose out = pose;
  auto& b = out.body;
  const std::size_t axes = b.axes;
  bool any = false;

  for (std::size_t p = 0; p < b.people; ++p) {
    double dist_sum = 0.0;
    std::vector<double> mid_sum(axes, 0.0);
    std::size_t count = 0;
    for (std::size_t f = 0; f < b.frames; ++f) {
      if (!b.present(f, p, l) || !b.present(f, p, r)) continue;
      const auto pl = b.point(f, p, l);
      const auto pr = b.point(f, p, r);
      dist_sum += distance(pl, pr);
      for (std::size_t a = 0; a < axes; ++a) mid_sum[a] += 0.5 * (double(pl[a]) + double(pr[a]));
      ++count;
    }
    if (count == 0) continue;
    any = true;
    const double mean_dist = dist_sum / static_cast<double>(count);
    if (mean_dist < 1e-9) {
      throw Error(Errc::kDegenerateSkeleton, "mean shoulder distance of person " +
                                                 std::to_string(p) + " is zero");
    }
    for (auto& m : mid_sum) m /= static_cast<double>(count);
    for (std::size_t f = 0; f < b.frames; ++f) {
      for (std::size_t k = 0; k < b.points; ++k) {
        if (!b.present(f, p, k)) continue;
        auto pt = b.point(f, p, k);
        for (std::size_t a = 0; a < axes; ++a) {
          pt[a] = static_cast<float>((double(pt[a]) - mid_sum[a]) / mean_dist);
        }
      }
    }
  }
  if (!any) {
    throw Error(Errc::kDegenerateSkeleton, "no frame has both shoulders present");
  }
  return out;
}

Pose normalize_plane(const Pose& pose, std::string_view a, std::string_view b,
                     std::string_view c) {
  if (pose.header.axis_count() < 3) throw Error(Errc::kNotThreeD, "pose has fewer than 3 axes");
  const std::size_t ia = resolve_point(pose.header, a);
  const std::size_t ib = resolve_point(pose.header, b);
  const std::size_t ic = resolve_point(pose.header, c);
  Pose out = pose;
  auto& body = out.body;
  const auto vec = [&](std::size_t f, std::size_t p, std::size_t k) {
    const auto pt = body.point(f, p, k);
    return Eigen::Vector3d(pt[0], pt[1], pt[2]);
  };

  bool any_plane = false;
  bool any_candidate = false;
  for (std::size_t f = 0; f < body.frames; ++f) {
    for (std::size_t p = 0; p < body.people; ++p) {
      if (!body.present(f, p, ia) || !body.present(f, p, ib) || !body.present(f, p, ic)) continue;
      any_candidate = true;
      const Eigen::Vector3d pa = vec(f, p, ia);
      const Eigen::Vector3d normal = (vec(f, p, ib) - pa).cross(vec(f, p, ic) - pa);
      const double scale = (vec(f, p, ib) - pa).norm() * (vec(f, p, ic) - pa).norm();
      if (normal.norm() <= 1e-12 * std::max(scale, 1e-300)) continue;
      any_plane = true;
      const Eigen::Matrix3d rot =
          Eigen::Quaterniond::FromTwoVectors(normal, Eigen::Vector3d::UnitZ()).toRotationMatrix();
      for (std::size_t k = 0; k < body.points; ++k) {
        if (!body.present(f, p, k)) continue;
        const Eigen::Vector3d v = rot * vec(f, p, k);
        auto pt = body.point(f, p, k);
        for (int i = 0; i < 3; ++i) pt[i] = static_cast<float>(v[i]);
      }
    }
  }
  if (any_candidate && !any_plane) {
    throw Error(Errc::kCollinearPoints, "plane points are collinear in every frame");
  }
  return out;
}

Pose affine_augment(const Pose& pose, const AffineParams& params) {
  if (!(params.scale > 0.0)) throw Error(Errc::kInvalidArgument, "scale must be positive");
  const double theta = params.rotation_deg * M_PI / 180.0;
  const Eigen::Matrix2d rotation{{std::cos(theta), -std::sin(theta)},
                                 {std::sin(theta), std::cos(theta)}};
  const Eigen::Matrix2d shear{{1.0, params.shear_x}, {params.shear_y, 1.0}};
  const Eigen::Matrix2d reflect{{params.reflect_x ? -1.0 : 1.0, 0.0}, {0.0, 1.0}};
  const Eigen::Matrix2d linear = rotation * params.scale * shear * reflect;
  const Eigen::Vector2d translate(params.translate_x, params.translate_y);

  Pose out = pose;
  auto& b = out.body;
  if (b.axes < 2) return out;
  const auto axes = point_axes(out.header);
  for (std::size_t f = 0; f < b.frames; ++f) {
    for (std::size_t p = 0; p < b.people; ++p) {
      for (std::size_t k = 0; k < b.points; ++k) {
        if (!b.present(f, p, k) || axes[k] < 2) continue;
        auto pt = b.point(f, p, k);
        const Eigen::Vector2d v = linear * (Eigen::Vector2d(pt[0], pt[1]) + translate);
        pt[0] = static_cast<float>(v[0]);
        pt[1] = static_cast<float>(v[1]);
      }
    }
  }
  return out;
}

Pose interpolate_fps(const Pose& pose, std::uint16_t new_fps) {
  const auto& src = pose.body;
  if (src.fps == 0 || new_fps == 0) throw Error(Errc::kZeroFps, "fps must be positive");
  if (new_fps == src.fps) return pose;

  const std::size_t n = src.frames;
  const std::size_t out_frames = n == 0 ? 0 : (n - 1) * new_fps / src.fps + 1;
  Pose out = Pose::empty_like(pose.header, new_fps, out_frames, src.people);
  auto& dst = out.body;

  for (std::size_t k = 0; k < out_frames; ++k) {
    // Source position k * fps / new_fps, split exactly into integer + fraction.
    const std::size_t num = k * src.fps;
    const std::size_t i0 = num / new_fps;
    const std::size_t rem = num % new_fps;
    if (rem == 0 || i0 + 1 >= n) {
      dst.copy_frame_from(src, std::min(i0, n - 1), k);
      continue;
    }
    const double t = static_cast<double>(rem) / new_fps;
    for (std::size_t p = 0; p < src.people; ++p) {
      for (std::size_t q = 0; q < src.points; ++q) {
        if (!src.present(i0, p, q) || !src.present(i0 + 1, p, q)) continue;
        const auto a = src.point(i0, p, q);
        const auto b = src.point(i0 + 1, p, q);
        auto d = dst.point(k, p, q);
        for (std::size_t x = 0; x < src.axes; ++x) {
          d[x] = static_cast<float>(double(a[x]) + (double(b[x]) - double(a[x])) * t);
        }
        dst.conf(k, p, q) = static_cast<float>(double(src.conf(i0, p, q)) * (1.0 - t) +
                                               double(src.conf(i0 + 1, p, q)) * t);
      }
    }
  }
  return out;
}

Pose frame_dropout(const Pose& pose, double probability, std::uint64_t seed) {
  if (!(probability >= 0.0 && probability < 1.0)) {
    throw Error(Errc::kInvalidArgument, "dropout probability must be in [0, 1)");
  }
  const auto& src = pose.body;
  Rng rng(seed);
  std::vector<std::size_t> kept;
  kept.reserve(src.frames);
  for (std::size_t f = 0; f < src.frames; ++f) {
    if (uniform01(rng) >= probability) kept.push_back(f);
  }
  if (kept.empty() && src.frames > 0) kept.push_back(0);

  Pose out = Pose::empty_like(pose.header, src.fps, kept.size(), src.people);
  for (std::size_t i = 0; i < kept.size(); ++i) out.body.copy_frame_from(src, kept[i], i);
  return out;
}

Pose gaussian_noise(const Pose& pose, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0)) throw Error(Errc::kInvalidArgument, "sigma must be non-negative");
  Pose out = pose;
  if (sigma == 0.0) return out;
  auto& b = out.body;
  const auto axes = point_axes(out.header);
  Rng rng(seed);
  std::normal_distribution<double> noise(0.0, sigma);
  for (std::size_t f = 0; f < b.frames; ++f) {
    for (std::size_t p = 0; p < b.people; ++p) {
      for (std::size_t k = 0; k < b.points; ++k) {
        if (!b.present(f, p, k)) continue;
        auto pt = b.point(f, p, k);
        for (std::size_t a = 0; a < axes[k]; ++a) {
          pt[a] = static_cast<float>(double(pt[a]) + noise(rng));
        }
      }
    }
  }
  return out;
}

FlowSeries optical_flow(const Pose& pose) {
  const auto& b = pose.body;
  FlowSeries flow;
  flow.fps = b.fps;
  flow.frames = b.frames;
  flow.people = b.people;
  flow.points = b.points;
  flow.values.assign(b.frames * b.people * b.points, 0.0f);
  const double fps = b.fps;
  for (std::size_t f = 1; f < b.frames; ++f) {
    for (std::size_t p = 0; p < b.people; ++p) {
      for (std::size_t k = 0; k < b.points; ++k) {
        if (!b.present(f, p, k) || !b.present(f - 1, p, k)) continue;
        flow.values[b.conf_index(f, p, k)] =
            static_cast<float>(distance(b.point(f, p, k), b.point(f - 1, p, k)) * fps);
      }
    }
  }
  return flow;
}

std::string flow_to_csv(const FlowSeries& flow) {
  std::string out = "frame,person";
  for (std::size_t k = 0; k < flow.points; ++k) out += ",p" + std::to_string(k);
  out += '\n';
  char buf[64];
  for (std::size_t f = 0; f < flow.frames; ++f) {
    for (std::size_t p = 0; p < flow.people; ++p) {
      out += std::to_string(f) + ',' + std::to_string(p);
      for (std::size_t k = 0; k < flow.points; ++k) {
        const auto res = std::to_chars(buf, buf + sizeof buf, flow.at(f, p, k));
        out += ',';
        out.append(buf, res.ptr);
      }
      out += '\n';
    }
  }
  return out;
}

namespace {

// Least-squares weights w such that sum_i w_i * y_i is the value at x = 0 of
// the degree-`degree` polynomial fitted through (xs[i], y_i).
Eigen::VectorXd fit_weights(const std::vector<double>& xs, std::size_t degree) {
  const auto rows = static_cast<Eigen::Index>(xs.size());
  const auto cols = static_cast<Eigen::Index>(degree + 1);
  Eigen::MatrixXd vander(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    double v = 1.0;
    for (Eigen::Index j = 0; j < cols; ++j) {
      vander(i, j) = v;
      v *= xs[static_cast<std::size_t>(i)];
    }
  }
  // First row of the pseudo-inverse.
  const Eigen::MatrixXd pinv = vander.completeOrthogonalDecomposition().pseudoInverse();
  return pinv.row(0).transpose();
}

}  // namespace

std::vector<double> savgol_series(std::span<const double> values, std::span<const bool> present,
                                  std::size_t window, std::size_t polyorder) {
  const std::size_t n = values.size();
  if (window % 2 == 0 || window <= polyorder || window > n) {
    throw Error(Errc::kBadWindow, "window must be odd, > polyorder and <= frame count (window=" +
                                      std::to_string(window) + ", polyorder=" +
                                      std::to_string(polyorder) + ", frames=" + std::to_string(n) +
                                      ")");
  }
  const std::size_t half = window / 2;
  std::vector<double> out(values.begin(), values.end());
  std::map<std::size_t, Eigen::VectorXd> full_cache;  // keyed by offset of t within the window

  std::vector<double> xs;
  std::vector<std::size_t> idx;
  for (std::size_t t = 0; t < n; ++t) {
    if (!present[t]) continue;
    std::size_t lo = t >= half ? t - half : 0;
    if (lo + window > n) lo = n - window;
    xs.clear();
    idx.clear();
    for (std::size_t s = lo; s < lo + window; ++s) {
      if (!present[s]) continue;
      xs.push_back(static_cast<double>(s) - static_cast<double>(t));
      idx.push_back(s);
    }
    const std::size_t degree = std::min(polyorder, xs.size() - 1);
    Eigen::VectorXd weights;
    if (xs.size() == window) {
      auto it = full_cache.find(t - lo);
      if (it == full_cache.end()) it = full_cache.emplace(t - lo, fit_weights(xs, degree)).first;
      weights = it->second;
    } else {
      weights = fit_weights(xs, degree);
    }
    double v = 0.0;
    for (std::size_t i = 0; i < idx.size(); ++i) v += weights[static_cast<Eigen::Index>(i)] * values[idx[i]];
    out[t] = v;
  }
  return out;
}

Pose savgol_smooth(const Pose& pose, std::size_t window, std::size_t polyorder) {
  const auto& src = pose.body;
  if (window % 2 == 0 || window <= polyorder || window > src.frames) {
    throw Error(Errc::kBadWindow, "window must be odd, > polyorder and <= frame count (window=" +
                                      std::to_string(window) + ", polyorder=" +
                                      std::to_string(polyorder) + ", frames=" +
                                      std::to_string(src.frames) + ")");
  }
  Pose out = pose;
  auto& dst = out.body;
  const auto axes = point_axes(pose.header);
  std::vector<double> series(src.frames);
  for (std::size_t p = 0; p < src.people; ++p) {
    for (std::size_t k = 0; k < src.points; ++k) {
      std::unique_ptr<bool[]> present(new bool[src.frames]);
      bool any = false;
      for (std::size_t f = 0; f < src.frames; ++f) {
        present[f] = src.present(f, p, k);
        any = any || present[f];
      }
      if (!any) continue;
      for (std::size_t a = 0; a < axes[k]; ++a) {
        for (std::size_t f = 0; f < src.frames; ++f) series[f] = src.point(f, p, k)[a];
        const auto smoothed = savgol_series(series, {present.get(), src.frames}, window, polyorder);
        for (std::size_t f = 0; f < src.frames; ++f) {
          if (present[f]) dst.point(f, p, k)[a] = static_cast<float>(smoothed[f]);
        }
      }
    }
  }
  return out;
}

}  // namespace posekit
