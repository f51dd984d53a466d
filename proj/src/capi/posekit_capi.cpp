#include "posekit/posekit.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "bench.hpp"
#include "error.hpp"
#include "fsw.hpp"
#include "hand_norm.hpp"
#include "openpose.hpp"
#include "pose.hpp"
#include "pose_ops.hpp"
#include "render.hpp"
#include "segmentation.hpp"
#include "stitcher.hpp"

struct pk_pose {
  posekit::Pose pose;
};

namespace {

using posekit::Errc;

#define PK_SAME(c, e) static_assert(int(c) == int(posekit::Errc::e), #c)
PK_SAME(PK_OK, kOk);
PK_SAME(PK_INVALID_ARGUMENT, kInvalidArgument);
PK_SAME(PK_IO, kIo);
PK_SAME(PK_TRUNCATED_FILE, kTruncatedFile);
PK_SAME(PK_BAD_VERSION, kBadVersion);
PK_SAME(PK_BAD_INDEX, kBadIndex);
PK_SAME(PK_BAD_UTF8, kBadUtf8);
PK_SAME(PK_INVARIANT_VIOLATION, kInvariantViolation);
PK_SAME(PK_UNKNOWN_COMPONENT, kUnknownComponent);
PK_SAME(PK_MISSING_POINT, kMissingPoint);
PK_SAME(PK_DEGENERATE_SKELETON, kDegenerateSkeleton);
PK_SAME(PK_NOT_THREE_D, kNotThreeD);
PK_SAME(PK_COLLINEAR_POINTS, kCollinearPoints);
PK_SAME(PK_ZERO_FPS, kZeroFps);
PK_SAME(PK_BAD_WINDOW, kBadWindow);
PK_SAME(PK_MISSING_LANDMARK, kMissingLandmark);
PK_SAME(PK_DEGENERATE_DIRECTION, kDegenerateDirection);
PK_SAME(PK_COLLINEAR_LANDMARKS, kCollinearLandmarks);
PK_SAME(PK_DEGENERATE_METACARPAL, kDegenerateMetacarpal);
PK_SAME(PK_INSUFFICIENT_OBSERVATIONS, kInsufficientObservations);
PK_SAME(PK_OVERLAPPING_SEGMENTS, kOverlappingSegments);
PK_SAME(PK_OUT_OF_RANGE, kOutOfRange);
PK_SAME(PK_LENGTH_MISMATCH, kLengthMismatch);
PK_SAME(PK_EMPTY_GOLD, kEmptyGold);
PK_SAME(PK_SCHEMA_MISMATCH, kSchemaMismatch);
PK_SAME(PK_NO_SHARED_POINTS, kNoSharedPoints);
PK_SAME(PK_EMPTY_INPUT, kEmptyInput);
PK_SAME(PK_BAD_BOX, kBadBox);
PK_SAME(PK_BAD_SYMBOL_CODE, kBadSymbolCode);
PK_SAME(PK_BAD_COORDINATE, kBadCoordinate);
PK_SAME(PK_TRAILING_GARBAGE, kTrailingGarbage);
PK_SAME(PK_MALFORMED_STREAM, kMalformedStream);
PK_SAME(PK_BAD_SCHEMA, kBadSchema);
PK_SAME(PK_RAGGED_KEYPOINTS, kRaggedKeypoints);
PK_SAME(PK_FRAME_OUT_OF_RANGE, kFrameOutOfRange);
PK_SAME(PK_INTERNAL, kInternal);
#undef PK_SAME

thread_local std::string t_last_error;

pk_status fail(pk_status status, std::string message) {
  t_last_error = std::move(message);
  return status;
}

template <typename Fn>
pk_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    t_last_error.clear();
    return PK_OK;
  } catch (const posekit::Error& e) {
    return fail(static_cast<pk_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(PK_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PK_INTERNAL, e.what());
  } catch (...) {
    return fail(PK_INTERNAL, "unknown exception");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw posekit::Error(Errc::kInvalidArgument, what);
}

char* dup_string(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size());
  out[s.size()] = '\0';
  return out;
}

uint8_t* dup_bytes(const std::vector<std::uint8_t>& bytes) {
  auto* out = static_cast<uint8_t*>(std::malloc(bytes.empty() ? 1 : bytes.size()));
  if (!out) throw std::bad_alloc();
  if (!bytes.empty()) std::memcpy(out, bytes.data(), bytes.size());
  return out;
}

pk_pose* wrap(posekit::Pose pose) { return new pk_pose{std::move(pose)}; }

template <typename Fn>
pk_status produce(pk_pose** out, Fn&& fn) noexcept {
  if (!out) return fail(PK_INVALID_ARGUMENT, "null output pointer");
  *out = nullptr;
  return guarded([&] { *out = wrap(fn()); });
}

const posekit::Pose& get(const pk_pose* pose) {
  require(pose != nullptr, "null pose handle");
  return pose->pose;
}

std::string str(const char* s, const char* what) {
  require(s != nullptr, what);
  return s;
}

posekit::TagScheme scheme_of(int scheme) {
  require(scheme == PK_SCHEME_BIO || scheme == PK_SCHEME_IO, "unknown tag scheme");
  return scheme == PK_SCHEME_BIO ? posekit::TagScheme::kBio : posekit::TagScheme::kIo;
}

posekit::SegmentKind kind_of(int kind) {
  require(kind == PK_KIND_SIGN || kind == PK_KIND_PHRASE, "unknown segment kind");
  return kind == PK_KIND_SIGN ? posekit::SegmentKind::kSign : posekit::SegmentKind::kPhrase;
}

posekit::Handedness handedness_of(int handedness, const std::string& component) {
  switch (handedness) {
    case PK_HAND_AUTO: return posekit::handedness_from_name(component);
    case PK_HAND_LEFT: return posekit::Handedness::kLeft;
    case PK_HAND_RIGHT: return posekit::Handedness::kRight;
    default: throw posekit::Error(Errc::kInvalidArgument, "unknown handedness");
  }
}

posekit::RenderConfig render_config_of(const pk_render_config* config) {
  posekit::RenderConfig cfg;
  if (config) {
    cfg.width = config->width;
    cfg.height = config->height;
    cfg.point_radius = config->point_radius;
    cfg.background = {config->background[0], config->background[1], config->background[2]};
    cfg.confidence_floor = config->confidence_floor;
  }
  require(cfg.point_radius >= 0, "point radius must be >= 0");
  return cfg;
}

std::vector<posekit::Pose> collect(const pk_pose* const* poses, std::size_t count) {
  require(poses != nullptr || count == 0, "null pose array");
  std::vector<posekit::Pose> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(get(poses[i]));
  return out;
}

}  // namespace

extern "C" {

const char* pk_version(void) { return "0.1.0"; }

const char* pk_status_name(pk_status status) {
  return posekit::errc_name(static_cast<Errc>(status));
}

const char* pk_last_error(void) { return t_last_error.c_str(); }

void pk_free(void* ptr) { std::free(ptr); }

void pk_pose_destroy(pk_pose* pose) { delete pose; }

pk_status pk_pose_clone(const pk_pose* pose, pk_pose** out) {
  return produce(out, [&] { return get(pose); });
}

pk_status pk_pose_read_file(const char* path, pk_pose** out) {
  return produce(out, [&] { return posekit::read_pose_file(str(path, "null path")); });
}

pk_status pk_pose_read_buffer(const uint8_t* data, size_t size, pk_pose** out) {
  return produce(out, [&] {
    require(data != nullptr || size == 0, "null buffer");
    return posekit::read_pose({data, size});
  });
}

pk_status pk_pose_write_file(const pk_pose* pose, const char* path) {
  return guarded([&] { posekit::write_pose_file(str(path, "null path"), get(pose)); });
}

pk_status pk_pose_write_buffer(const pk_pose* pose, uint8_t** data, size_t* size) {
  return guarded([&] {
    require(data && size, "null output pointer");
    const auto bytes = posekit::write_pose(get(pose));
    *data = dup_bytes(bytes);
    *size = bytes.size();
  });
}

pk_status pk_pose_equal(const pk_pose* a, const pk_pose* b, int* equal) {
  return guarded([&] {
    require(equal != nullptr, "null output pointer");
    *equal = posekit::bit_equal(get(a), get(b)) ? 1 : 0;
  });
}

pk_status pk_pose_validate(const pk_pose* pose, char** report) {
  return guarded([&] {
    require(report != nullptr, "null output pointer");
    *report = dup_string(posekit::format_report(posekit::validate(get(pose))));
  });
}

pk_status pk_pose_synthetic(size_t frames, size_t people, unsigned parts, uint64_t seed,
                            uint16_t fps, pk_pose** out) {
  return produce(out, [&] {
    require(parts != 0 && parts <= PK_PART_ALL, "parts must select at least one component");
    const auto components = posekit::openpose_components(
        {(parts & PK_PART_BODY) != 0, (parts & PK_PART_FACE) != 0,
         (parts & PK_PART_LEFT_HAND) != 0, (parts & PK_PART_RIGHT_HAND) != 0});
    return posekit::generate_synthetic(frames, people, components, seed, fps);
  });
}

pk_status pk_pose_get_info(const pk_pose* pose, pk_pose_info* info) {
  return guarded([&] {
    require(info != nullptr, "null output pointer");
    const auto& p = get(pose);
    *info = {p.body.fps,    p.header.width, p.header.height, p.header.depth,
             p.body.frames, p.body.people,  p.body.points,   p.body.axes,
             p.header.components.size()};
  });
}

pk_status pk_pose_describe(const pk_pose* pose, char** text) {
  return guarded([&] {
    require(text != nullptr, "null output pointer");
    *text = dup_string(posekit::describe(get(pose)));
  });
}

pk_status pk_pose_component_name(const pk_pose* pose, size_t index, const char** name) {
  return guarded([&] {
    require(name != nullptr, "null output pointer");
    const auto& comps = get(pose).header.components;
    if (index >= comps.size()) {
      throw posekit::Error(Errc::kOutOfRange, "component index " + std::to_string(index));
    }
    *name = comps[index].name.c_str();
  });
}

pk_status pk_pose_tensors(pk_pose* pose, float** data, float** confidence) {
  return guarded([&] {
    require(pose != nullptr, "null pose handle");
    if (data) *data = pose->pose.body.data.data();
    if (confidence) *confidence = pose->pose.body.confidence.data();
  });
}

pk_status pk_pose_select_components(const pk_pose* pose, const char* const* names, size_t count,
                                    pk_pose** out) {
  return produce(out, [&] {
    require(names != nullptr || count == 0, "null name array");
    std::vector<std::string> list;
    for (size_t i = 0; i < count; ++i) list.push_back(str(names[i], "null component name"));
    return posekit::select_components(get(pose), list);
  });
}

pk_status pk_pose_normalize_shoulders(const pk_pose* pose, const char* left, const char* right,
                                      pk_pose** out) {
  return produce(out, [&] {
    return posekit::normalize_shoulders(get(pose), str(left, "null point name"),
                                        str(right, "null point name"));
  });
}

pk_status pk_pose_normalize_plane(const pk_pose* pose, const char* a, const char* b,
                                  const char* c, pk_pose** out) {
  return produce(out, [&] {
    return posekit::normalize_plane(get(pose), str(a, "null point name"),
                                    str(b, "null point name"), str(c, "null point name"));
  });
}

void pk_affine_default(pk_affine* params) {
  if (params) *params = {0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0};
}

pk_status pk_pose_affine(const pk_pose* pose, const pk_affine* params, pk_pose** out) {
  return produce(out, [&] {
    require(params != nullptr, "null affine parameters");
    posekit::AffineParams p;
    p.rotation_deg = params->rotation_deg;
    p.scale = params->scale;
    p.shear_x = params->shear_x;
    p.shear_y = params->shear_y;
    p.translate_x = params->translate_x;
    p.translate_y = params->translate_y;
    p.reflect_x = params->reflect_x != 0;
    return posekit::affine_augment(get(pose), p);
  });
}

pk_status pk_pose_noise(const pk_pose* pose, double sigma, uint64_t seed, pk_pose** out) {
  return produce(out, [&] { return posekit::gaussian_noise(get(pose), sigma, seed); });
}

pk_status pk_pose_dropout(const pk_pose* pose, double probability, uint64_t seed, pk_pose** out) {
  return produce(out, [&] { return posekit::frame_dropout(get(pose), probability, seed); });
}

pk_status pk_pose_interpolate_fps(const pk_pose* pose, uint16_t fps, pk_pose** out) {
  return produce(out, [&] { return posekit::interpolate_fps(get(pose), fps); });
}

pk_status pk_pose_savgol(const pk_pose* pose, size_t window, size_t polyorder, pk_pose** out) {
  return produce(out, [&] { return posekit::savgol_smooth(get(pose), window, polyorder); });
}

pk_status pk_pose_flow_csv(const pk_pose* pose, char** csv) {
  return guarded([&] {
    require(csv != nullptr, "null output pointer");
    *csv = dup_string(posekit::flow_to_csv(posekit::optical_flow(get(pose))));
  });
}

pk_status pk_openpose_ingest(const char* json, size_t size, long people, pk_pose** out) {
  return produce(out, [&] {
    require(json != nullptr || size == 0, "null JSON buffer");
    std::optional<std::size_t> n;
    if (people >= 0) n = static_cast<std::size_t>(people);
    return posekit::ingest_openpose({json, size}, n);
  });
}

pk_status pk_openpose_export(const pk_pose* pose, int coordinate_decimals, int confidence_decimals,
                             char** json) {
  return guarded([&] {
    require(json != nullptr, "null output pointer");
    posekit::JsonNumberFormat fmt;
    if (coordinate_decimals >= 0) fmt.coordinate_decimals = coordinate_decimals;
    if (confidence_decimals >= 0) fmt.confidence_decimals = confidence_decimals;
    *json = dup_string(posekit::export_openpose(get(pose), fmt));
  });
}

pk_status pk_pose_hand_normalize(const pk_pose* pose, const char* component, int handedness,
                                 pk_pose** out) {
  return produce(out, [&] {
    const auto name = str(component, "null component name");
    return posekit::normalize_hands_in_pose(get(pose), name, handedness_of(handedness, name));
  });
}

pk_status pk_hand_metric(const pk_pose* const* poses, size_t count, const char* component,
                         int handedness, int metric, double* value, size_t* dropped) {
  return guarded([&] {
    require(value != nullptr, "null output pointer");
    require(metric == PK_METRIC_MACE || metric == PK_METRIC_CCE, "unknown metric");
    require(poses != nullptr || count == 0, "null pose array");
    const auto name = str(component, "null component name");
    const auto hand = handedness_of(handedness, name);
    posekit::HandShapeGroup group;
    for (size_t i = 0; i < count; ++i) {
      const auto& p = get(poses[i]);
      for (std::size_t f = 0; f < p.body.frames; ++f) {
        if (p.body.people == 0) break;
        group.observations.push_back(posekit::hand_from_pose(p, name, f, 0, hand));
      }
    }
    if (metric == PK_METRIC_MACE) {
      std::vector<std::size_t> lost;
      *value = posekit::mace(group, &lost);
      if (dropped) *dropped = lost.size();
    } else {
      *value = posekit::cce(group);
      if (dropped) *dropped = 0;
    }
  });
}

pk_status pk_segments_encode(const char* segments, size_t length, int scheme, char** tags) {
  return guarded([&] {
    require(tags != nullptr, "null output pointer");
    const auto list = posekit::parse_segments(str(segments, "null segment text"));
    *tags = dup_string(posekit::format_tags(posekit::segments_to_tags(list, length, scheme_of(scheme))));
  });
}

pk_status pk_tags_decode(const char* tags, int scheme, int kind, char** segments, size_t* lenient) {
  return guarded([&] {
    require(segments != nullptr, "null output pointer");
    std::size_t count = 0;
    const auto list = posekit::tags_to_segments(posekit::parse_tags(str(tags, "null tag text")),
                                                scheme_of(scheme), kind_of(kind), &count);
    *segments = dup_string(posekit::format_segments(list));
    if (lenient) *lenient = count;
  });
}

pk_status pk_probs_decode(const char* probs_csv, double threshold_b, double threshold_o, int mode,
                          int kind, char** segments) {
  return guarded([&] {
    require(segments != nullptr, "null output pointer");
    require(mode == PK_DECODE_THRESHOLD || mode == PK_DECODE_ARGMAX, "unknown decode mode");
    const auto probs = posekit::parse_probs(str(probs_csv, "null probability text"));
    const auto list = posekit::decode_probs(
        probs, threshold_b, threshold_o,
        mode == PK_DECODE_THRESHOLD ? posekit::DecodeMode::kThreshold
                                    : posekit::DecodeMode::kArgmax,
        kind_of(kind));
    *segments = dup_string(posekit::format_segments(list));
  });
}

pk_status pk_segments_evaluate(const char* gold, const char* pred, size_t length,
                               pk_segment_scores* scores) {
  return guarded([&] {
    require(scores != nullptr, "null output pointer");
    const auto g = posekit::parse_segments(str(gold, "null gold text"));
    const auto p = posekit::parse_segments(str(pred, "null prediction text"));
    if (length == 0) {
      for (const auto& s : g) length = std::max(length, s.end + 1);
      for (const auto& s : p) length = std::max(length, s.end + 1);
    }
    const auto gt = posekit::segments_to_tags(g, length, posekit::TagScheme::kBio);
    const auto pt = posekit::segments_to_tags(p, length, posekit::TagScheme::kBio);
    scores->frame_f1 = posekit::frame_f1(gt, pt);
    scores->segment_iou = posekit::segment_iou(g, p);
    scores->segment_percentage = posekit::segment_percentage(g, p);
  });
}

void pk_stitch_config_default(pk_stitch_config* config) {
  if (!config) return;
  const posekit::StitchConfig d;
  *config = {d.padding_seconds, d.search_window, d.trim_flow_fraction, d.savgol_window,
             d.savgol_polyorder, nullptr, nullptr, 0};
}

pk_status pk_stitch(const pk_pose* const* clips, size_t count, const pk_stitch_config* config,
                    pk_pose** out) {
  return produce(out, [&] {
    posekit::StitchConfig cfg;
    if (config) {
      cfg.padding_seconds = config->padding_seconds;
      cfg.search_window = config->search_window;
      cfg.trim_flow_fraction = config->trim_flow_fraction;
      cfg.savgol_window = config->savgol_window;
      cfg.savgol_polyorder = config->savgol_polyorder;
      require(config->anchor_count == 0 || (config->anchor_hands && config->anchor_wrists),
              "null anchor arrays");
      for (size_t i = 0; i < config->anchor_count; ++i) {
        cfg.wrist_anchors.push_back({str(config->anchor_hands[i], "null anchor hand"),
                                     str(config->anchor_wrists[i], "null anchor wrist")});
      }
    }
    return posekit::stitch(collect(clips, count), cfg);
  });
}

pk_status pk_fsw_tokenize(const char* fsw, char** tokens) {
  return guarded([&] {
    require(tokens != nullptr, "null output pointer");
    *tokens = dup_string(posekit::fsw::tokenize_text(str(fsw, "null FSW text")));
  });
}

pk_status pk_fsw_detokenize(const char* tokens, char** fsw) {
  return guarded([&] {
    require(fsw != nullptr, "null output pointer");
    *fsw = dup_string(posekit::fsw::detokenize_text(str(tokens, "null token text")));
  });
}

size_t pk_fsw_vocabulary_size(void) { return posekit::fsw::vocabulary().size(); }

pk_status pk_bench_make_pair(size_t frames, uint64_t seed, const char* dir, char** json_path,
                             char** pose_path) {
  return guarded([&] {
    require(json_path && pose_path, "null output pointer");
    const auto pair = posekit::make_benchmark_pair(frames, seed, str(dir, "null directory"));
    *json_path = dup_string(pair.json_path.string());
    try {
      *pose_path = dup_string(pair.pose_path.string());
    } catch (...) {
      std::free(*json_path);
      *json_path = nullptr;
      throw;
    }
  });
}

pk_status pk_bench_run(const char* json_path, const char* pose_path, size_t iterations,
                       pk_bench_case* result) {
  return guarded([&] {
    require(result != nullptr, "null output pointer");
    const auto c = posekit::bench_read(str(json_path, "null path"), str(pose_path, "null path"),
                                       iterations);
    *result = {c.frames,
               c.json_bytes,
               c.pose_bytes,
               c.json_parse.mean,
               c.json_parse.stddev,
               c.pose_full_read.mean,
               c.pose_full_read.stddev,
               c.pose_body_read.mean,
               c.pose_body_read.stddev,
               c.iterations};
  });
}

pk_status pk_bench_format(const pk_bench_case* cases, size_t count, int csv, char** text) {
  return guarded([&] {
    require(text != nullptr, "null output pointer");
    require(cases != nullptr || count == 0, "null case array");
    posekit::BenchReport report;
    for (size_t i = 0; i < count; ++i) {
      const auto& c = cases[i];
      report.cases.push_back({c.frames,
                              c.json_bytes,
                              c.pose_bytes,
                              {c.json_parse_mean, c.json_parse_std},
                              {c.pose_read_mean, c.pose_read_std},
                              {c.pose_body_read_mean, c.pose_body_read_std},
                              c.iterations});
    }
    *text = dup_string(csv ? posekit::format_report_csv(report) : posekit::format_report_text(report));
  });
}

void pk_render_config_default(pk_render_config* config) {
  if (!config) return;
  const posekit::RenderConfig d;
  *config = {d.width, d.height, d.point_radius, {0, 0, 0}, d.confidence_floor};
}

pk_status pk_render_frame_ppm(const pk_pose* pose, size_t frame, const pk_render_config* config,
                              uint8_t** data, size_t* size) {
  return guarded([&] {
    require(data && size, "null output pointer");
    const auto bytes =
        posekit::encode_ppm(posekit::render_frame(get(pose), frame, render_config_of(config)));
    *data = dup_bytes(bytes);
    *size = bytes.size();
  });
}

pk_status pk_render_sequence(const pk_pose* pose, const char* dir, const pk_render_config* config,
                             size_t* count) {
  return guarded([&] {
    const auto paths =
        posekit::render_sequence(get(pose), str(dir, "null directory"), render_config_of(config));
    if (count) *count = paths.size();
  });
}

}  // extern "C"
