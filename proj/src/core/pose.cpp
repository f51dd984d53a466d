#include "pose.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_set>

#include "error.hpp"
#include "rng.hpp"

namespace posekit {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::kOk: return "Ok";
    case Errc::kInvalidArgument: return "InvalidArgument";
    case Errc::kIo: return "IoError";
    case Errc::kTruncatedFile: return "TruncatedFile";
    case Errc::kBadVersion: return "BadVersion";
    case Errc::kBadIndex: return "BadIndex";
    case Errc::kBadUtf8: return "BadUtf8";
    case Errc::kInvariantViolation: return "InvariantViolation";
    case Errc::kUnknownComponent: return "UnknownComponent";
    case Errc::kMissingPoint: return "MissingPoint";
    case Errc::kDegenerateSkeleton: return "DegenerateSkeleton";
    case Errc::kNotThreeD: return "NotThreeD";
    case Errc::kCollinearPoints: return "CollinearPoints";
    case Errc::kZeroFps: return "ZeroFps";
    case Errc::kBadWindow: return "BadWindow";
    case Errc::kMissingLandmark: return "MissingLandmark";
    case Errc::kDegenerateDirection: return "DegenerateDirection";
    case Errc::kCollinearLandmarks: return "CollinearLandmarks";
    case Errc::kDegenerateMetacarpal: return "DegenerateMetacarpal";
    case Errc::kInsufficientObservations: return "InsufficientObservations";
    case Errc::kOverlappingSegments: return "OverlappingSegments";
    case Errc::kOutOfRange: return "OutOfRange";
    case Errc::kLengthMismatch: return "LengthMismatch";
    case Errc::kEmptyGold: return "EmptyGold";
    case Errc::kSchemaMismatch: return "SchemaMismatch";
    case Errc::kNoSharedPoints: return "NoSharedPoints";
    case Errc::kEmptyInput: return "EmptyInput";
    case Errc::kBadBox: return "BadBox";
    case Errc::kBadSymbolCode: return "BadSymbolCode";
    case Errc::kBadCoordinate: return "BadCoordinate";
    case Errc::kTrailingGarbage: return "TrailingGarbage";
    case Errc::kMalformedStream: return "MalformedStream";
    case Errc::kBadSchema: return "BadSchema";
    case Errc::kRaggedKeypoints: return "RaggedKeypoints";
    case Errc::kFrameOutOfRange: return "FrameOutOfRange";
    case Errc::kInternal: return "Internal";
  }
  return "Unknown";
}

std::optional<std::size_t> ComponentSpec::find_point(std::string_view point) const {
  for (std::size_t i = 0; i < point_names.size(); ++i) {
    if (point_names[i] == point) return i;
  }
  return std::nullopt;
}

std::size_t PoseHeader::total_points() const {
  std::size_t n = 0;
  for (const auto& c : components) n += c.point_count();
  return n;
}

std::size_t PoseHeader::axis_count() const {
  std::size_t n = 0;
  for (const auto& c : components) n = std::max(n, c.axis_count());
  return n;
}

std::size_t PoseHeader::point_offset(std::size_t component) const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < component && i < components.size(); ++i) {
    n += components[i].point_count();
  }
  return n;
}

std::optional<std::size_t> PoseHeader::find_component(std::string_view name) const {
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (components[i].name == name) return i;
  }
  return std::nullopt;
}

PoseBody PoseBody::zeros(std::uint16_t fps, std::size_t frames, std::size_t people,
                         std::size_t points, std::size_t axes) {
  PoseBody body;
  body.fps = fps;
  body.frames = frames;
  body.people = people;
  body.points = points;
  body.axes = axes;
  body.data.assign(frames * people * points * axes, 0.0f);
  body.confidence.assign(frames * people * points, 0.0f);
  return body;
}

void PoseBody::copy_frame_from(const PoseBody& src, std::size_t src_frame, std::size_t dst_frame) {
  const std::size_t nconf = people * points;
  const std::size_t ndata = nconf * axes;
  std::copy_n(src.data.begin() + static_cast<std::ptrdiff_t>(src_frame * ndata), ndata,
              data.begin() + static_cast<std::ptrdiff_t>(dst_frame * ndata));
  std::copy_n(src.confidence.begin() + static_cast<std::ptrdiff_t>(src_frame * nconf), nconf,
              confidence.begin() + static_cast<std::ptrdiff_t>(dst_frame * nconf));
}

Pose Pose::empty_like(const PoseHeader& header, std::uint16_t fps, std::size_t frames,
                      std::size_t people) {
  return Pose{header,
              PoseBody::zeros(fps, frames, people, header.total_points(), header.axis_count())};
}

namespace {

bool same_bits(std::span<const float> a, std::span<const float> b) {
  return a.size() == b.size() &&
         (a.empty() || std::memcmp(a.data(), b.data(), a.size_bytes()) == 0);
}

}  // namespace

bool bit_equal(const PoseBody& a, const PoseBody& b) {
  return a.fps == b.fps && a.frames == b.frames && a.people == b.people &&
         a.points == b.points && a.axes == b.axes && same_bits(a.data, b.data) &&
         same_bits(a.confidence, b.confidence);
}

bool bit_equal(const Pose& a, const Pose& b) {
  return std::bit_cast<std::uint32_t>(a.header.version) ==
             std::bit_cast<std::uint32_t>(b.header.version) &&
         a.header.width == b.header.width && a.header.height == b.header.height &&
         a.header.depth == b.header.depth && a.header.components == b.header.components &&
         bit_equal(a.body, b.body);
}

// ---------------------------------------------------------------------------
// Validation

const char* violation_name(Violation v) noexcept {
  switch (v) {
    case Violation::kBadVersion: return "BadVersion";
    case Violation::kBadFormat: return "BadFormat";
    case Violation::kDuplicateComponent: return "DuplicateComponent";
    case Violation::kBadIndex: return "BadIndex";
    case Violation::kCountOverflow: return "CountOverflow";
    case Violation::kShapeMismatch: return "ShapeMismatch";
    case Violation::kNegativeConfidence: return "NegativeConfidence";
    case Violation::kNonFiniteConfidence: return "NonFiniteConfidence";
    case Violation::kNonFiniteCoordinate: return "NonFiniteCoordinate";
    case Violation::kEmptyStride: return "EmptyStride";
  }
  return "Unknown";
}

ValidationReport validate(const Pose& pose) {
  ValidationReport report;
  const auto& h = pose.header;
  const auto& b = pose.body;
  constexpr std::size_t kU16 = std::numeric_limits<std::uint16_t>::max();

  if (std::bit_cast<std::uint32_t>(h.version) != std::bit_cast<std::uint32_t>(kFormatVersion)) {
    report.push_back({Violation::kBadVersion, {}, {}, {}, {}, "version must be 0.1"});
  }
  if (h.components.size() > kU16) {
    report.push_back({Violation::kCountOverflow, {}, {}, {}, {}, "too many components"});
  }

  std::unordered_set<std::string> names;
  for (std::size_t c = 0; c < h.components.size(); ++c) {
    const auto& comp = h.components[c];
    if (!names.insert(comp.name).second) {
      report.push_back({Violation::kDuplicateComponent, c, {}, {}, {},
                        "duplicate component name '" + comp.name + "'"});
    }
    if (comp.format.size() < 2) {
      report.push_back({Violation::kBadFormat, c, {}, {}, {},
                        "format needs at least one axis plus confidence"});
    }
    if (comp.point_count() > kU16 || comp.limbs.size() > kU16 || comp.colors.size() > kU16) {
      report.push_back({Violation::kCountOverflow, c, {}, {}, {}, "count exceeds uint16"});
    }
    for (std::size_t l = 0; l < comp.limbs.size(); ++l) {
      const auto& limb = comp.limbs[l];
      if (limb.start >= comp.point_count() || limb.end >= comp.point_count()) {
        report.push_back({Violation::kBadIndex, c, {}, {}, {},
                          "limb " + std::to_string(l) + " references point outside [0, " +
                              std::to_string(comp.point_count()) + ")"});
      }
    }
  }

  if (b.people > kU16) {
    report.push_back({Violation::kCountOverflow, {}, {}, {}, {}, "people count exceeds uint16"});
  }
  if (b.points != h.total_points() || b.axes != h.axis_count() ||
      b.data.size() != b.frames * b.people * b.points * b.axes ||
      b.confidence.size() != b.frames * b.people * b.points) {
    report.push_back({Violation::kShapeMismatch, {}, {}, {}, {},
                      "body tensors disagree with header or with each other"});
    return report;
  }
  if (b.frames > 0 && frame_stride(b.people, b.points, b.axes) == 0) {
    report.push_back({Violation::kEmptyStride, {}, {}, {}, {},
                      "frames present but a frame holds no values"});
  }

  for (std::size_t f = 0; f < b.frames; ++f) {
    for (std::size_t p = 0; p < b.people; ++p) {
      for (std::size_t k = 0; k < b.points; ++k) {
        const float c = b.conf(f, p, k);
        if (!std::isfinite(c)) {
          report.push_back({Violation::kNonFiniteConfidence, {}, f, p, k, "confidence not finite"});
        } else if (c < 0.0f) {
          report.push_back({Violation::kNegativeConfidence, {}, f, p, k, "negative confidence"});
        }
        for (float v : b.point(f, p, k)) {
          if (!std::isfinite(v)) {
            report.push_back({Violation::kNonFiniteCoordinate, {}, f, p, k,
                              "coordinate not finite"});
            break;
          }
        }
      }
    }
  }
  return report;
}

std::string format_report(const ValidationReport& report) {
  std::ostringstream out;
  for (const auto& e : report) {
    out << violation_name(e.kind);
    if (e.component) out << " component=" << *e.component;
    if (e.frame) out << " frame=" << *e.frame;
    if (e.person) out << " person=" << *e.person;
    if (e.point) out << " point=" << *e.point;
    out << ": " << e.message << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Binary IO

namespace {

static_assert(sizeof(float) == 4 && std::numeric_limits<float>::is_iec559);

constexpr bool kLittleHost = std::endian::native == std::endian::little;

class ByteWriter {
 public:
  explicit ByteWriter(std::size_t reserve) { out_.reserve(reserve); }

  void u16(std::size_t v) {
    out_.push_back(static_cast<std::uint8_t>(v & 0xff));
    out_.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
  }
  void f32(float v) {
    const auto bits = std::bit_cast<std::uint32_t>(v);
    for (int s = 0; s < 32; s += 8) out_.push_back(static_cast<std::uint8_t>((bits >> s) & 0xff));
  }
  void str(const std::string& s) {
    if (s.size() > std::numeric_limits<std::uint16_t>::max()) {
      throw Error(Errc::kInvariantViolation, "string longer than 65535 bytes");
    }
    u16(s.size());
    out_.insert(out_.end(), s.begin(), s.end());
  }
  void floats(std::span<const float> values) {
    const std::size_t at = out_.size();
    out_.resize(at + values.size_bytes());
    if constexpr (kLittleHost) {
      if (!values.empty()) std::memcpy(out_.data() + at, values.data(), values.size_bytes());
    } else {
      for (std::size_t i = 0; i < values.size(); ++i) {
        const auto bits = __builtin_bswap32(std::bit_cast<std::uint32_t>(values[i]));
        std::memcpy(out_.data() + at + 4 * i, &bits, 4);
      }
    }
  }

  std::vector<std::uint8_t> take() { return std::move(out_); }

 private:
  std::vector<std::uint8_t> out_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint16_t u16() {
    need(2);
    const auto v = static_cast<std::uint16_t>(bytes_[pos_] | (bytes_[pos_ + 1] << 8));
    pos_ += 2;
    return v;
  }
  float f32() {
    need(4);
    std::uint32_t bits = 0;
    for (int i = 0; i < 4; ++i) bits |= static_cast<std::uint32_t>(bytes_[pos_ + i]) << (8 * i);
    pos_ += 4;
    return std::bit_cast<float>(bits);
  }
  std::string str() {
    const std::size_t n = u16();
    need(n);
    std::string s(reinterpret_cast<const char*>(bytes_.data() + pos_), n);
    pos_ += n;
    if (!valid_utf8(s)) throw Error(Errc::kBadUtf8, "string field is not valid UTF-8");
    return s;
  }
  void skip_str() {
    const std::size_t n = u16();
    skip(n);
  }
  void skip(std::size_t n) {
    need(n);
    pos_ += n;
  }
  void floats(float* dst, std::size_t count) {
    const std::size_t n = count * 4;
    need(n);
    if constexpr (kLittleHost) {
      if (n) std::memcpy(dst, bytes_.data() + pos_, n);
    } else {
      for (std::size_t i = 0; i < count; ++i) {
        std::uint32_t bits = 0;
        std::memcpy(&bits, bytes_.data() + pos_ + 4 * i, 4);
        dst[i] = std::bit_cast<float>(__builtin_bswap32(bits));
      }
    }
    pos_ += n;
  }

  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) throw Error(Errc::kTruncatedFile, "unexpected end of data");
  }

  static bool valid_utf8(std::string_view s) {
    std::size_t i = 0;
    while (i < s.size()) {
      const auto c = static_cast<unsigned char>(s[i]);
      std::size_t len = 0;
      std::uint32_t cp = 0;
      if (c < 0x80) {
        ++i;
        continue;
      } else if ((c & 0xe0) == 0xc0) {
        len = 2;
        cp = c & 0x1f;
      } else if ((c & 0xf0) == 0xe0) {
        len = 3;
        cp = c & 0x0f;
      } else if ((c & 0xf8) == 0xf0) {
        len = 4;
        cp = c & 0x07;
      } else {
        return false;
      }
      if (i + len > s.size()) return false;
      for (std::size_t j = 1; j < len; ++j) {
        const auto cc = static_cast<unsigned char>(s[i + j]);
        if ((cc & 0xc0) != 0x80) return false;
        cp = (cp << 6) | (cc & 0x3f);
      }
      // Overlong forms, surrogates, out of range.
      if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000) ||
          cp > 0x10ffff || (cp >= 0xd800 && cp <= 0xdfff)) {
        return false;
      }
      i += len;
    }
    return true;
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

void check_version(float version) {
  if (std::bit_cast<std::uint32_t>(version) != std::bit_cast<std::uint32_t>(kFormatVersion)) {
    throw Error(Errc::kBadVersion, "unsupported format version " + std::to_string(version));
  }
}

PoseHeader read_header(ByteReader& in) {
  PoseHeader h;
  h.version = in.f32();
  check_version(h.version);
  h.width = in.u16();
  h.height = in.u16();
  h.depth = in.u16();
  const std::size_t ncomp = in.u16();
  h.components.reserve(ncomp);
  std::unordered_set<std::string> names;
  for (std::size_t c = 0; c < ncomp; ++c) {
    ComponentSpec comp;
    comp.name = in.str();
    comp.format = in.str();
    const std::size_t npoints = in.u16();
    const std::size_t nlimbs = in.u16();
    const std::size_t ncolors = in.u16();
    comp.point_names.reserve(npoints);
    for (std::size_t i = 0; i < npoints; ++i) comp.point_names.push_back(in.str());
    comp.limbs.reserve(nlimbs);
    for (std::size_t i = 0; i < nlimbs; ++i) {
      Limb limb{in.u16(), in.u16()};
      if (limb.start >= npoints || limb.end >= npoints) {
        throw Error(Errc::kBadIndex, "component '" + comp.name + "' limb " + std::to_string(i) +
                                         " references a point outside [0, " +
                                         std::to_string(npoints) + ")");
      }
      comp.limbs.push_back(limb);
    }
    comp.colors.reserve(ncolors);
    for (std::size_t i = 0; i < ncolors; ++i) comp.colors.push_back(Rgb{in.u16(), in.u16(), in.u16()});
    if (comp.format.size() < 2) {
      throw Error(Errc::kInvariantViolation, "component '" + comp.name + "' has format '" +
                                                 comp.format + "' without coordinate axes");
    }
    if (!names.insert(comp.name).second) {
      throw Error(Errc::kInvariantViolation, "duplicate component name '" + comp.name + "'");
    }
    h.components.push_back(std::move(comp));
  }
  return h;
}

struct BodyShape {
  std::size_t points = 0;
  std::size_t axes = 0;
};

PoseBody read_body(ByteReader& in, BodyShape shape) {
  PoseBody body;
  body.fps = in.u16();
  in.u16();  // deprecated frame count, derived from size below
  body.people = in.u16();
  body.points = shape.points;
  body.axes = shape.axes;

  const std::size_t stride = frame_stride(body.people, body.points, body.axes);
  const std::size_t rest = in.remaining();
  if (stride == 0) {
    if (rest != 0) throw Error(Errc::kTruncatedFile, "trailing bytes after an empty-stride body");
    return body;
  }
  if (rest % stride != 0) {
    throw Error(Errc::kTruncatedFile, std::to_string(rest) + " body bytes is not a multiple of the " +
                                          std::to_string(stride) + "-byte frame stride");
  }
  body.frames = rest / stride;
  const std::size_t nconf = body.people * body.points;
  const std::size_t ndata = nconf * body.axes;
  body.data.resize(body.frames * ndata);
  body.confidence.resize(body.frames * nconf);
  for (std::size_t f = 0; f < body.frames; ++f) {
    in.floats(body.data.data() + f * ndata, ndata);
    in.floats(body.confidence.data() + f * nconf, nconf);
  }
  return body;
}

}  // namespace

std::size_t frame_stride(std::size_t people, std::size_t points, std::size_t axes) {
  return people * points * (axes + 1) * sizeof(float);
}

std::vector<std::uint8_t> write_pose(const Pose& pose) {
  if (auto report = validate(pose); !report.empty()) {
    throw Error(Errc::kInvariantViolation, format_report(report));
  }
  const auto& h = pose.header;
  const auto& b = pose.body;
  ByteWriter out(64 + b.frames * frame_stride(b.people, b.points, b.axes));

  out.f32(h.version);
  out.u16(h.width);
  out.u16(h.height);
  out.u16(h.depth);
  out.u16(h.components.size());
  const std::size_t axes = h.axis_count();
  for (const auto& comp : h.components) {
    out.str(comp.name);
    out.str(comp.format);
    out.u16(comp.point_count());
    out.u16(comp.limbs.size());
    out.u16(comp.colors.size());
    for (const auto& name : comp.point_names) out.str(name);
    for (const auto& limb : comp.limbs) {
      out.u16(limb.start);
      out.u16(limb.end);
    }
    for (const auto& c : comp.colors) {
      out.u16(c.r);
      out.u16(c.g);
      out.u16(c.b);
    }
  }

  out.u16(b.fps);
  out.u16(0);
  out.u16(b.people);
  const std::size_t nconf = b.people * b.points;
  const std::size_t ndata = nconf * axes;
  const std::span<const float> data(b.data);
  const std::span<const float> conf(b.confidence);
  for (std::size_t f = 0; f < b.frames; ++f) {
    out.floats(data.subspan(f * ndata, ndata));
    out.floats(conf.subspan(f * nconf, nconf));
  }
  return out.take();
}

Pose read_pose(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes);
  Pose pose;
  pose.header = read_header(in);
  pose.body = read_body(in, {pose.header.total_points(), pose.header.axis_count()});
  return pose;
}

PoseBody read_pose_body(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes);
  check_version(in.f32());
  in.skip(6);
  const std::size_t ncomp = in.u16();
  BodyShape shape;
  for (std::size_t c = 0; c < ncomp; ++c) {
    in.skip_str();
    const std::size_t format_len = in.u16();
    in.skip(format_len);
    const std::size_t npoints = in.u16();
    const std::size_t nlimbs = in.u16();
    const std::size_t ncolors = in.u16();
    for (std::size_t i = 0; i < npoints; ++i) in.skip_str();
    in.skip(nlimbs * 4 + ncolors * 6);
    shape.points += npoints;
    shape.axes = std::max(shape.axes, format_len == 0 ? 0 : format_len - 1);
  }
  return read_body(in, shape);
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kIo, "cannot open '" + path.string() + "'");
  in.seekg(0, std::ios::end);
  const auto size = static_cast<std::size_t>(in.tellg());
  in.seekg(0);
  std::vector<std::uint8_t> bytes(size);
  if (size && !in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(size))) {
    throw Error(Errc::kIo, "cannot read '" + path.string() + "'");
  }
  return bytes;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::kIo, "cannot open '" + path.string() + "' for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(Errc::kIo, "cannot write '" + path.string() + "'");
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  write_file(path, {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
}

std::string read_text_file(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  return {bytes.begin(), bytes.end()};
}

Pose read_pose_file(const std::filesystem::path& path) { return read_pose(read_file(path)); }

void write_pose_file(const std::filesystem::path& path, const Pose& pose) {
  write_file(path, write_pose(pose));
}

// ---------------------------------------------------------------------------
// Slicing and fixtures

Pose select_components(const Pose& pose, std::span<const std::string> names) {
  const auto& src = pose.header;
  Pose out;
  out.header.version = src.version;
  out.header.width = src.width;
  out.header.height = src.height;
  out.header.depth = src.depth;

  // Source point index for every output point.
  std::vector<std::size_t> source_points;
  for (const auto& name : names) {
    const auto c = src.find_component(name);
    if (!c) throw Error(Errc::kUnknownComponent, "no component named '" + name + "'");
    const auto& comp = src.components[*c];
    const std::size_t offset = src.point_offset(*c);
    for (std::size_t i = 0; i < comp.point_count(); ++i) source_points.push_back(offset + i);
    out.header.components.push_back(comp);
  }

  const auto& b = pose.body;
  const std::size_t axes = out.header.axis_count();
  out.body = PoseBody::zeros(b.fps, b.frames, b.people, source_points.size(), axes);
  const std::size_t copy_axes = std::min(axes, b.axes);
  for (std::size_t f = 0; f < b.frames; ++f) {
    for (std::size_t p = 0; p < b.people; ++p) {
      for (std::size_t k = 0; k < source_points.size(); ++k) {
        out.body.conf(f, p, k) = b.conf(f, p, source_points[k]);
        const auto from = b.point(f, p, source_points[k]);
        std::copy_n(from.begin(), copy_axes, out.body.point(f, p, k).begin());
      }
    }
  }
  return out;
}

Pose generate_synthetic(std::size_t frames, std::size_t people,
                        std::span<const ComponentSpec> components, std::uint64_t seed,
                        std::uint16_t fps) {
  PoseHeader header;
  header.width = 1000;
  header.height = 1000;
  header.components.assign(components.begin(), components.end());
  Pose pose = Pose::empty_like(header, fps, frames, people);
  auto& b = pose.body;

  Rng rng(seed);
  std::size_t k0 = 0;
  for (const auto& comp : header.components) {
    const std::size_t axes = comp.axis_count();
    for (std::size_t f = 0; f < frames; ++f) {
      for (std::size_t p = 0; p < people; ++p) {
        for (std::size_t k = k0; k < k0 + comp.point_count(); ++k) {
          auto pt = b.point(f, p, k);
          for (std::size_t a = 0; a < axes; ++a) {
            pt[a] = static_cast<float>(static_cast<double>(uniform_int(rng, 1'000'000)) / 1000.0);
          }
          b.conf(f, p, k) =
              static_cast<float>(static_cast<double>(uniform_int(rng, 1'000'001)) / 1e6);
        }
      }
    }
    k0 += comp.point_count();
  }
  return pose;
}

std::string describe(const Pose& pose) {
  std::ostringstream out;
  const auto& h = pose.header;
  const auto& b = pose.body;
  out << "version: " << h.version << '\n';
  out << "dimensions: " << h.width << 'x' << h.height << 'x' << h.depth << '\n';
  out << "fps: " << b.fps << '\n';
  out << "frames: " << b.frames << '\n';
  out << "people: " << b.people << '\n';
  out << "points: " << b.points << '\n';
  out << "axes: " << b.axes << '\n';
  out << "components: " << h.components.size() << '\n';
  for (const auto& c : h.components) {
    out << "  " << c.name << " [" << c.format << "] points=" << c.point_count()
        << " limbs=" << c.limbs.size() << " colors=" << c.colors.size() << '\n';
  }
  return out.str();
}

}  // namespace posekit
