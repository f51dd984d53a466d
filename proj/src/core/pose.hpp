#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace posekit {

inline constexpr float kFormatVersion = 0.1f;

struct Limb {
  std::uint16_t start = 0;
  std::uint16_t end = 0;
  bool operator==(const Limb&) const = default;
};

struct Rgb {
  std::uint16_t r = 0;
  std::uint16_t g = 0;
  std::uint16_t b = 0;
  bool operator==(const Rgb&) const = default;
};

/// A named group of keypoints. `format` lists the channels, e.g. "XYC" or
/// "XYZC"; the trailing channel is always the confidence.
struct ComponentSpec {
  std::string name;
  std::string format;
  std::vector<std::string> point_names;
  std::vector<Limb> limbs;
  std::vector<Rgb> colors;

  std::size_t point_count() const { return point_names.size(); }
  std::size_t axis_count() const { return format.empty() ? 0 : format.size() - 1; }
  std::optional<std::size_t> find_point(std::string_view point) const;

  bool operator==(const ComponentSpec&) const = default;
};

struct PoseHeader {
  float version = kFormatVersion;
  std::uint16_t width = 0;
  std::uint16_t height = 0;
  std::uint16_t depth = 0;
  std::vector<ComponentSpec> components;

  std::size_t total_points() const;
  /// Maximum coordinate axis count over all components.
  std::size_t axis_count() const;
  /// Index of the first point of `component` in the concatenated point axis.
  std::size_t point_offset(std::size_t component) const;
  std::optional<std::size_t> find_component(std::string_view name) const;

  bool operator==(const PoseHeader&) const = default;
};

/// Dense pose tensors. `data` is [frames][people][points][axes] and
/// `confidence` is [frames][people][points], both row-major.
struct PoseBody {
  std::uint16_t fps = 0;
  std::size_t frames = 0;
  std::size_t people = 0;
  std::size_t points = 0;
  std::size_t axes = 0;
  std::vector<float> data;
  std::vector<float> confidence;

  static PoseBody zeros(std::uint16_t fps, std::size_t frames, std::size_t people,
                        std::size_t points, std::size_t axes);

  std::size_t conf_index(std::size_t f, std::size_t p, std::size_t k) const {
    return (f * people + p) * points + k;
  }
  std::size_t data_index(std::size_t f, std::size_t p, std::size_t k) const {
    return conf_index(f, p, k) * axes;
  }

  float& conf(std::size_t f, std::size_t p, std::size_t k) { return confidence[conf_index(f, p, k)]; }
  float conf(std::size_t f, std::size_t p, std::size_t k) const {
    return confidence[conf_index(f, p, k)];
  }
  bool present(std::size_t f, std::size_t p, std::size_t k) const { return conf(f, p, k) > 0.0f; }

  std::span<float> point(std::size_t f, std::size_t p, std::size_t k) {
    return {data.data() + data_index(f, p, k), axes};
  }
  std::span<const float> point(std::size_t f, std::size_t p, std::size_t k) const {
    return {data.data() + data_index(f, p, k), axes};
  }

  /// Copies frame `src_frame` of `src` into frame `dst_frame` of this body.
  void copy_frame_from(const PoseBody& src, std::size_t src_frame, std::size_t dst_frame);

  bool operator==(const PoseBody&) const = default;
};

struct Pose {
  PoseHeader header;
  PoseBody body;

  /// Empty body shaped for `header`.
  static Pose empty_like(const PoseHeader& header, std::uint16_t fps, std::size_t frames,
                         std::size_t people);

  bool operator==(const Pose&) const = default;
};

/// Field-for-field equality comparing float payloads by bit pattern.
bool bit_equal(const Pose& a, const Pose& b);
bool bit_equal(const PoseBody& a, const PoseBody& b);

// ---------------------------------------------------------------------------
// Validation

enum class Violation {
  kBadVersion,
  kBadFormat,
  kDuplicateComponent,
  kBadIndex,
  kCountOverflow,
  kShapeMismatch,
  kNegativeConfidence,
  kNonFiniteConfidence,
  kNonFiniteCoordinate,
  kEmptyStride,
};

const char* violation_name(Violation v) noexcept;

struct ValidationEntry {
  Violation kind;
  std::optional<std::size_t> component;
  std::optional<std::size_t> frame;
  std::optional<std::size_t> person;
  std::optional<std::size_t> point;
  std::string message;
};

using ValidationReport = std::vector<ValidationEntry>;

ValidationReport validate(const Pose& pose);
std::string format_report(const ValidationReport& report);

// ---------------------------------------------------------------------------
// Binary IO

std::vector<std::uint8_t> write_pose(const Pose& pose);
Pose read_pose(std::span<const std::uint8_t> bytes);

/// Reads only the tensors. The header is scanned for lengths and never
/// materialized.
PoseBody read_pose_body(std::span<const std::uint8_t> bytes);

/// Byte size of one body frame for a given shape.
std::size_t frame_stride(std::size_t people, std::size_t points, std::size_t axes);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
void write_text_file(const std::filesystem::path& path, std::string_view text);
std::string read_text_file(const std::filesystem::path& path);

Pose read_pose_file(const std::filesystem::path& path);
void write_pose_file(const std::filesystem::path& path, const Pose& pose);

// ---------------------------------------------------------------------------
// Slicing and fixtures

Pose select_components(const Pose& pose, std::span<const std::string> names);

/// Deterministic random pose. Coordinates are multiples of 1/1000 in
/// [0, 1000); confidences are multiples of 1e-6 in [0, 1].
Pose generate_synthetic(std::size_t frames, std::size_t people,
                        std::span<const ComponentSpec> components, std::uint64_t seed,
                        std::uint16_t fps = 25);

/// A one-line summary per component plus body dimensions.
std::string describe(const Pose& pose);

}  // namespace posekit
