#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace posekit {

enum class SegmentKind { kSign, kPhrase };

/// Inclusive frame span [start, end].
struct Segment {
  std::size_t start = 0;
  std::size_t end = 0;
  SegmentKind kind = SegmentKind::kSign;

  std::size_t length() const { return end - start + 1; }
  bool operator==(const Segment&) const = default;
};

enum class Tag : char { kB = 'B', kI = 'I', kO = 'O' };
using TagSequence = std::vector<Tag>;

enum class TagScheme { kBio, kIo };

struct FrameProbs {
  double b = 0.0;
  double i = 0.0;
  double o = 0.0;
};
using ProbSeries = std::vector<FrameProbs>;

inline constexpr double kDefaultThresholdB = 50.0;
inline constexpr double kDefaultThresholdO = 50.0;

TagSequence segments_to_tags(const std::vector<Segment>& segments, std::size_t length,
                             TagScheme scheme);

/// Under BIO, an I that follows O (or starts the sequence) opens a segment;
/// each occurrence increments `lenient` when given.
std::vector<Segment> tags_to_segments(const TagSequence& tags, TagScheme scheme,
                                      SegmentKind kind = SegmentKind::kSign,
                                      std::size_t* lenient = nullptr);

enum class DecodeMode {
  kThreshold,  // compare b and o against the thresholds
  kArgmax,     // a frame triggers b (o) iff b (o) is the largest of (b, i, o)
};

/// Greedy thresholded decoder. Only b and o are consulted.
std::vector<Segment> decode_probs(const ProbSeries& probs, double threshold_b = kDefaultThresholdB,
                                  double threshold_o = kDefaultThresholdO,
                                  DecodeMode mode = DecodeMode::kThreshold,
                                  SegmentKind kind = SegmentKind::kSign);

/// Macro-averaged per-class F1 over B, I and O. A class absent from both
/// sequences scores 1.
double frame_f1(const TagSequence& gold, const TagSequence& pred);

double segment_iou(const std::vector<Segment>& gold, const std::vector<Segment>& pred);

double segment_percentage(const std::vector<Segment>& gold, const std::vector<Segment>& pred);

// Text encodings: tags as one line over {B,I,O}; segments as
// "start<TAB>end<TAB>kind" lines; probabilities as CSV with header "b,i,o".
std::string format_tags(const TagSequence& tags);
TagSequence parse_tags(std::string_view text);
std::string format_segments(const std::vector<Segment>& segments);
std::vector<Segment> parse_segments(std::string_view text);
std::string format_probs(const ProbSeries& probs);
ProbSeries parse_probs(std::string_view text);

const char* to_string(SegmentKind kind) noexcept;

}  // namespace posekit
