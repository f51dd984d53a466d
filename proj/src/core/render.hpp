#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "pose.hpp"

namespace posekit {

struct Image {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> rgb;  // row-major, 3 bytes per pixel

  const std::uint8_t* pixel(std::size_t x, std::size_t y) const { return &rgb[(y * width + x) * 3]; }
};

struct RenderConfig {
  /// 0 means: header dimensions, or 512 when the header has none.
  std::size_t width = 0;
  std::size_t height = 0;
  int point_radius = 3;
  Rgb background{0, 0, 0};
  float confidence_floor = 0.0f;  // points with confidence <= floor are skipped
};

Image render_frame(const Pose& pose, std::size_t frame, const RenderConfig& config = {});

std::vector<std::uint8_t> encode_ppm(const Image& image);

/// Writes frame_%05d.ppm for every frame; returns the paths in order.
std::vector<std::filesystem::path> render_sequence(const Pose& pose,
                                                   const std::filesystem::path& out_dir,
                                                   const RenderConfig& config = {});

}  // namespace posekit
