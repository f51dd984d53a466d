#include "render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "error.hpp"

namespace posekit {

namespace {

struct Mapping {
  double scale = 1.0;
  double offset_x = 0.0;
  double offset_y = 0.0;
};

Mapping fit_mapping(const Pose& pose, std::size_t width, std::size_t height) {
  double min_x = 0.0, min_y = 0.0, extent_x = pose.header.width, extent_y = pose.header.height;
  if (extent_x <= 0.0 || extent_y <= 0.0) {
    const auto& b = pose.body;
    double lo_x = std::numeric_limits<double>::infinity(), lo_y = lo_x;
    double hi_x = -lo_x, hi_y = -lo_x;
    for (std::size_t f = 0; f < b.frames; ++f) {
      for (std::size_t p = 0; p < b.people; ++p) {
        for (std::size_t k = 0; k < b.points; ++k) {
          if (!b.present(f, p, k) || b.axes < 2) continue;
          const auto pt = b.point(f, p, k);
          lo_x = std::min(lo_x, double(pt[0]));
          hi_x = std::max(hi_x, double(pt[0]));
          lo_y = std::min(lo_y, double(pt[1]));
          hi_y = std::max(hi_y, double(pt[1]));
        }
      }
    }
    if (!std::isfinite(lo_x)) return {};
    const double pad = 0.05 * std::max({hi_x - lo_x, hi_y - lo_y, 1e-9});
    min_x = lo_x - pad;
    min_y = lo_y - pad;
    extent_x = hi_x - lo_x + 2 * pad;
    extent_y = hi_y - lo_y + 2 * pad;
  }
  Mapping m;
  m.scale = std::min(double(width) / extent_x, double(height) / extent_y);
  m.offset_x = (double(width) - extent_x * m.scale) / 2.0 - min_x * m.scale;
  m.offset_y = (double(height) - extent_y * m.scale) / 2.0 - min_y * m.scale;
  return m;
}

class Canvas {
 public:
  explicit Canvas(Image& image) : img_(image) {}

  void put(long x, long y, Rgb c) {
    if (x < 0 || y < 0 || x >= long(img_.width) || y >= long(img_.height)) return;
    auto* px = &img_.rgb[(std::size_t(y) * img_.width + std::size_t(x)) * 3];
    px[0] = clamp(c.r);
    px[1] = clamp(c.g);
    px[2] = clamp(c.b);
  }

  void line(long x0, long y0, long x1, long y1, Rgb c) {
    const long dx = std::labs(x1 - x0), sx = x0 < x1 ? 1 : -1;
    const long dy = -std::labs(y1 - y0), sy = y0 < y1 ? 1 : -1;
    long err = dx + dy;
    while (true) {
      put(x0, y0, c);
      if (x0 == x1 && y0 == y1) break;
      const long e2 = 2 * err;
      if (e2 >= dy) {
        err += dy;
        x0 += sx;
      }
      if (e2 <= dx) {
        err += dx;
        y0 += sy;
      }
    }
  }

  void disc(long cx, long cy, int r, Rgb c) {
    for (long y = -r; y <= r; ++y) {
      for (long x = -r; x <= r; ++x) {
        if (x * x + y * y <= long(r) * r) put(cx + x, cy + y, c);
      }
    }
  }

 private:
  static std::uint8_t clamp(std::uint16_t v) { return static_cast<std::uint8_t>(std::min<std::uint16_t>(v, 255)); }
  Image& img_;
};

}  // namespace

Image render_frame(const Pose& pose, std::size_t frame, const RenderConfig& config) {
  const auto& b = pose.body;
  if (frame >= b.frames) {
    throw Error(Errc::kFrameOutOfRange, "frame " + std::to_string(frame) + " of " +
                                            std::to_string(b.frames));
  }
  Image img;
  img.width = config.width ? config.width : (pose.header.width ? pose.header.width : 512);
  img.height = config.height ? config.height : (pose.header.height ? pose.header.height : 512);
  img.rgb.resize(img.width * img.height * 3);
  for (std::size_t i = 0; i < img.width * img.height; ++i) {
    img.rgb[3 * i] = static_cast<std::uint8_t>(std::min<int>(config.background.r, 255));
    img.rgb[3 * i + 1] = static_cast<std::uint8_t>(std::min<int>(config.background.g, 255));
    img.rgb[3 * i + 2] = static_cast<std::uint8_t>(std::min<int>(config.background.b, 255));
  }
  if (b.axes < 2) return img;

  const Mapping m = fit_mapping(pose, img.width, img.height);
  Canvas canvas(img);
  const auto visible = [&](std::size_t p, std::size_t k) {
    return b.conf(frame, p, k) > config.confidence_floor;
  };
  const auto to_px = [&](std::size_t p, std::size_t k) {
    const auto pt = b.point(frame, p, k);
    return std::pair<long, long>{std::lround(pt[0] * m.scale + m.offset_x),
                                 std::lround(pt[1] * m.scale + m.offset_y)};
  };
  const auto color = [](const ComponentSpec& c, std::size_t i) {
    return c.colors.empty() ? Rgb{255, 255, 255} : c.colors[i % c.colors.size()];
  };

  for (std::size_t p = 0; p < b.people; ++p) {
    std::size_t offset = 0;
    for (const auto& comp : pose.header.components) {
      for (std::size_t l = 0; l < comp.limbs.size(); ++l) {
        const std::size_t s = offset + comp.limbs[l].start;
        const std::size_t e = offset + comp.limbs[l].end;
        if (!visible(p, s) || !visible(p, e)) continue;
        const auto [x0, y0] = to_px(p, s);
        const auto [x1, y1] = to_px(p, e);
        canvas.line(x0, y0, x1, y1, color(comp, l));
      }
      for (std::size_t k = 0; k < comp.point_count(); ++k) {
        if (!visible(p, offset + k)) continue;
        const auto [x, y] = to_px(p, offset + k);
        canvas.disc(x, y, config.point_radius, color(comp, k));
      }
      offset += comp.point_count();
    }
  }
  return img;
}

std::vector<std::uint8_t> encode_ppm(const Image& image) {
  const std::string head =
      "P6\n" + std::to_string(image.width) + " " + std::to_string(image.height) + "\n255\n";
  std::vector<std::uint8_t> out(head.begin(), head.end());
  out.insert(out.end(), image.rgb.begin(), image.rgb.end());
  return out;
}

std::vector<std::filesystem::path> render_sequence(const Pose& pose,
                                                   const std::filesystem::path& out_dir,
                                                   const RenderConfig& config) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(Errc::kIo, "cannot create '" + out_dir.string() + "': " + ec.message());
  std::vector<std::filesystem::path> paths;
  for (std::size_t f = 0; f < pose.body.frames; ++f) {
    char name[32];
    std::snprintf(name, sizeof name, "frame_%05zu.ppm", f);
    paths.push_back(out_dir / name);
    write_file(paths.back(), encode_ppm(render_frame(pose, f, config)));
  }
  return paths;
}

}  // namespace posekit
