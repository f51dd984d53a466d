#ifndef POSEKIT_POSEKIT_H
#define POSEKIT_POSEKIT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(POSEKIT_BUILDING)
#    define PK_API __declspec(dllexport)
#  else
#    define PK_API __declspec(dllimport)
#  endif
#else
#  define PK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pk_status {
  PK_OK = 0,
  PK_INVALID_ARGUMENT = 1,
  PK_IO = 2,
  PK_TRUNCATED_FILE = 10,
  PK_BAD_VERSION = 11,
  PK_BAD_INDEX = 12,
  PK_BAD_UTF8 = 13,
  PK_INVARIANT_VIOLATION = 14,
  PK_UNKNOWN_COMPONENT = 15,
  PK_MISSING_POINT = 20,
  PK_DEGENERATE_SKELETON = 21,
  PK_NOT_THREE_D = 22,
  PK_COLLINEAR_POINTS = 23,
  PK_ZERO_FPS = 24,
  PK_BAD_WINDOW = 25,
  PK_MISSING_LANDMARK = 30,
  PK_DEGENERATE_DIRECTION = 31,
  PK_COLLINEAR_LANDMARKS = 32,
  PK_DEGENERATE_METACARPAL = 33,
  PK_INSUFFICIENT_OBSERVATIONS = 34,
  PK_OVERLAPPING_SEGMENTS = 40,
  PK_OUT_OF_RANGE = 41,
  PK_LENGTH_MISMATCH = 42,
  PK_EMPTY_GOLD = 43,
  PK_SCHEMA_MISMATCH = 50,
  PK_NO_SHARED_POINTS = 51,
  PK_EMPTY_INPUT = 52,
  PK_BAD_BOX = 60,
  PK_BAD_SYMBOL_CODE = 61,
  PK_BAD_COORDINATE = 62,
  PK_TRAILING_GARBAGE = 63,
  PK_MALFORMED_STREAM = 64,
  PK_BAD_SCHEMA = 70,
  PK_RAGGED_KEYPOINTS = 71,
  PK_FRAME_OUT_OF_RANGE = 80,
  PK_INTERNAL = 99
} pk_status;

/* Opaque pose handle. */
typedef struct pk_pose pk_pose;

PK_API const char* pk_version(void);
PK_API const char* pk_status_name(pk_status status);

/* Message of the last failed call on this thread; "" after a success. */
PK_API const char* pk_last_error(void);

/* Releases strings and buffers returned through out-parameters. */
PK_API void pk_free(void* ptr);

/* ---- Pose lifecycle and IO ------------------------------------------- */

PK_API void pk_pose_destroy(pk_pose* pose);
PK_API pk_status pk_pose_clone(const pk_pose* pose, pk_pose** out);

PK_API pk_status pk_pose_read_file(const char* path, pk_pose** out);
PK_API pk_status pk_pose_read_buffer(const uint8_t* data, size_t size, pk_pose** out);
PK_API pk_status pk_pose_write_file(const pk_pose* pose, const char* path);
PK_API pk_status pk_pose_write_buffer(const pk_pose* pose, uint8_t** data, size_t* size);

/* Bitwise comparison of header and tensors. */
PK_API pk_status pk_pose_equal(const pk_pose* a, const pk_pose* b, int* equal);

/* Human-readable violation list; empty string when the pose is valid. */
PK_API pk_status pk_pose_validate(const pk_pose* pose, char** report);

enum {
  PK_PART_BODY = 1,
  PK_PART_FACE = 2,
  PK_PART_LEFT_HAND = 4,
  PK_PART_RIGHT_HAND = 8,
  PK_PART_ALL = 15
};

/* Deterministic random pose over the OpenPose components in `parts`. */
PK_API pk_status pk_pose_synthetic(size_t frames, size_t people, unsigned parts, uint64_t seed,
                                   uint16_t fps, pk_pose** out);

/* ---- Accessors --------------------------------------------------------- */

typedef struct pk_pose_info {
  uint16_t fps;
  uint16_t width;
  uint16_t height;
  uint16_t depth;
  size_t frames;
  size_t people;
  size_t points;
  size_t axes;
  size_t components;
} pk_pose_info;

PK_API pk_status pk_pose_get_info(const pk_pose* pose, pk_pose_info* info);
PK_API pk_status pk_pose_describe(const pk_pose* pose, char** text);

/* Borrowed; valid until the pose is destroyed. */
PK_API pk_status pk_pose_component_name(const pk_pose* pose, size_t index, const char** name);

/* Row-major [frames][people][points][axes] and [frames][people][points].
 * Borrowed; valid until the pose is destroyed. */
PK_API pk_status pk_pose_tensors(pk_pose* pose, float** data, float** confidence);

/* ---- Operations (each returns a new pose) ------------------------------ */

PK_API pk_status pk_pose_select_components(const pk_pose* pose, const char* const* names,
                                           size_t count, pk_pose** out);

/* Point names are "POINT" or "COMPONENT/POINT". */
PK_API pk_status pk_pose_normalize_shoulders(const pk_pose* pose, const char* left,
                                             const char* right, pk_pose** out);
PK_API pk_status pk_pose_normalize_plane(const pk_pose* pose, const char* a, const char* b,
                                         const char* c, pk_pose** out);

typedef struct pk_affine {
  double rotation_deg;
  double scale;
  double shear_x;
  double shear_y;
  double translate_x;
  double translate_y;
  int reflect_x;
} pk_affine;

PK_API void pk_affine_default(pk_affine* params);
PK_API pk_status pk_pose_affine(const pk_pose* pose, const pk_affine* params, pk_pose** out);
PK_API pk_status pk_pose_noise(const pk_pose* pose, double sigma, uint64_t seed, pk_pose** out);
PK_API pk_status pk_pose_dropout(const pk_pose* pose, double probability, uint64_t seed,
                                 pk_pose** out);
PK_API pk_status pk_pose_interpolate_fps(const pk_pose* pose, uint16_t fps, pk_pose** out);
PK_API pk_status pk_pose_savgol(const pk_pose* pose, size_t window, size_t polyorder,
                                pk_pose** out);

/* CSV with header "frame,person,p0,p1,..." */
PK_API pk_status pk_pose_flow_csv(const pk_pose* pose, char** csv);

/* ---- OpenPose JSON ----------------------------------------------------- */

/* people < 0 keeps the maximum people count seen in any frame. */
PK_API pk_status pk_openpose_ingest(const char* json, size_t size, long people, pk_pose** out);

/* Negative decimals print the shortest exact representation. */
PK_API pk_status pk_openpose_export(const pk_pose* pose, int coordinate_decimals,
                                    int confidence_decimals, char** json);

/* ---- Hands ------------------------------------------------------------- */

enum { PK_HAND_AUTO = -1, PK_HAND_LEFT = 0, PK_HAND_RIGHT = 1 };
enum { PK_METRIC_MACE = 0, PK_METRIC_CCE = 1 };

PK_API pk_status pk_pose_hand_normalize(const pk_pose* pose, const char* component,
                                        int handedness, pk_pose** out);

/* Every frame of person 0 in every pose is one observation of the group.
 * `dropped` (optional) receives the number of observations MACE discarded. */
PK_API pk_status pk_hand_metric(const pk_pose* const* poses, size_t count, const char* component,
                                int handedness, int metric, double* value, size_t* dropped);

/* ---- Segmentation ------------------------------------------------------
 * Tags are one line over {B,I,O}; segments are "start\tend\tkind" lines;
 * probabilities are CSV with header "b,i,o". */

enum { PK_SCHEME_BIO = 0, PK_SCHEME_IO = 1 };
enum { PK_KIND_SIGN = 0, PK_KIND_PHRASE = 1 };
enum { PK_DECODE_THRESHOLD = 0, PK_DECODE_ARGMAX = 1 };

PK_API pk_status pk_segments_encode(const char* segments, size_t length, int scheme, char** tags);
PK_API pk_status pk_tags_decode(const char* tags, int scheme, int kind, char** segments,
                                size_t* lenient);
PK_API pk_status pk_probs_decode(const char* probs_csv, double threshold_b, double threshold_o,
                                 int mode, int kind, char** segments);

typedef struct pk_segment_scores {
  double frame_f1;
  double segment_iou;
  double segment_percentage;
} pk_segment_scores;

/* Frame F1 is computed on BIO tags over `length` frames; 0 uses one past the
 * last segment end in either list. */
PK_API pk_status pk_segments_evaluate(const char* gold, const char* pred, size_t length,
                                      pk_segment_scores* scores);

/* ---- Stitching --------------------------------------------------------- */

typedef struct pk_stitch_config {
  double padding_seconds;
  size_t search_window; /* 0 = automatic */
  double trim_flow_fraction;
  size_t savgol_window;
  size_t savgol_polyorder;
  /* Optional wrist anchors: anchor_hands[i] is moved onto anchor_wrists[i]. */
  const char* const* anchor_hands;
  const char* const* anchor_wrists;
  size_t anchor_count;
} pk_stitch_config;

PK_API void pk_stitch_config_default(pk_stitch_config* config);
PK_API pk_status pk_stitch(const pk_pose* const* clips, size_t count,
                           const pk_stitch_config* config, pk_pose** out);

/* ---- Formal SignWriting ------------------------------------------------ */

/* FSW text to space-separated tokens, and back. */
PK_API pk_status pk_fsw_tokenize(const char* fsw, char** tokens);
PK_API pk_status pk_fsw_detokenize(const char* tokens, char** fsw);
PK_API size_t pk_fsw_vocabulary_size(void);

/* ---- Benchmark --------------------------------------------------------- */

typedef struct pk_bench_case {
  size_t frames;
  uint64_t json_bytes;
  uint64_t pose_bytes;
  double json_parse_mean;
  double json_parse_std;
  double pose_read_mean;
  double pose_read_std;
  double pose_body_read_mean;
  double pose_body_read_std;
  size_t iterations;
} pk_bench_case;

PK_API pk_status pk_bench_make_pair(size_t frames, uint64_t seed, const char* dir,
                                    char** json_path, char** pose_path);
PK_API pk_status pk_bench_run(const char* json_path, const char* pose_path, size_t iterations,
                              pk_bench_case* result);
PK_API pk_status pk_bench_format(const pk_bench_case* cases, size_t count, int csv, char** text);

/* ---- Rendering --------------------------------------------------------- */

typedef struct pk_render_config {
  size_t width;  /* 0 = header width, or 512 */
  size_t height; /* 0 = header height, or 512 */
  int point_radius;
  uint8_t background[3];
  float confidence_floor;
} pk_render_config;

PK_API void pk_render_config_default(pk_render_config* config);
PK_API pk_status pk_render_frame_ppm(const pk_pose* pose, size_t frame,
                                     const pk_render_config* config, uint8_t** data, size_t* size);
/* Writes frame_%05d.ppm files into `dir`. */
PK_API pk_status pk_render_sequence(const pk_pose* pose, const char* dir,
                                    const pk_render_config* config, size_t* count);

#ifdef __cplusplus
}
#endif

#endif
