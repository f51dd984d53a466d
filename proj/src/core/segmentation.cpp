#include "segmentation.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <optional>

#include "error.hpp"

namespace posekit {

const char* to_string(SegmentKind kind) noexcept {
  return kind == SegmentKind::kSign ? "sign" : "phrase";
}

namespace {

void check_segments(const std::vector<Segment>& segments, std::optional<std::size_t> length) {
  for (std::size_t s = 0; s < segments.size(); ++s) {
    const auto& seg = segments[s];
    if (seg.start > seg.end || (length && seg.end >= *length)) {
      throw Error(Errc::kOutOfRange, "segment [" + std::to_string(seg.start) + ", " +
                                         std::to_string(seg.end) + "] is out of range");
    }
    if (s > 0 && seg.start <= segments[s - 1].end) {
      throw Error(Errc::kOverlappingSegments,
                  "segment " + std::to_string(s) + " overlaps or precedes its predecessor");
    }
  }
}

std::vector<Segment> sorted_checked(std::vector<Segment> segments) {
  std::sort(segments.begin(), segments.end(),
            [](const Segment& a, const Segment& b) { return a.start < b.start; });
  check_segments(segments, std::nullopt);
  return segments;
}

}  // namespace

TagSequence segments_to_tags(const std::vector<Segment>& segments, std::size_t length,
                             TagScheme scheme) {
  check_segments(segments, length);
  TagSequence tags(length, Tag::kO);
  for (const auto& seg : segments) {
    for (std::size_t f = seg.start; f <= seg.end; ++f) tags[f] = Tag::kI;
    if (scheme == TagScheme::kBio) tags[seg.start] = Tag::kB;
  }
  return tags;
}

std::vector<Segment> tags_to_segments(const TagSequence& tags, TagScheme scheme, SegmentKind kind,
                                      std::size_t* lenient) {
  std::vector<Segment> segments;
  std::optional<std::size_t> open;
  const auto close = [&](std::size_t end) {
    if (open) segments.push_back({*open, end, kind});
    open.reset();
  };
  for (std::size_t f = 0; f < tags.size(); ++f) {
    switch (tags[f]) {
      case Tag::kO:
        if (f > 0) close(f - 1);
        break;
      case Tag::kB:
        if (scheme == TagScheme::kBio) {
          if (f > 0) close(f - 1);
          open = f;
          break;
        }
        [[fallthrough]];
      case Tag::kI:
        if (!open) {
          if (scheme == TagScheme::kBio && lenient) ++*lenient;
          open = f;
        }
        break;
    }
  }
  if (!tags.empty()) close(tags.size() - 1);
  return segments;
}

std::vector<Segment> decode_probs(const ProbSeries& probs, double threshold_b, double threshold_o,
                                  DecodeMode mode, SegmentKind kind) {
  // Per frame: does b trigger, does o trigger, is b below its threshold.
  const auto classify = [&](const FrameProbs& p) {
    struct { bool b_high, o_high, b_low; } c{};
    if (mode == DecodeMode::kThreshold) {
      c.b_high = p.b > threshold_b;
      c.o_high = p.o > threshold_o;
      c.b_low = p.b < threshold_b;
    } else {
      const bool b_max = p.b >= p.i && p.b >= p.o;
      c.b_high = b_max;
      c.o_high = !b_max && p.o > p.i;
      c.b_low = !b_max;
    }
    return c;
  };

  std::vector<Segment> segments;
  std::optional<std::size_t> start;
  bool did_pass_start = false;
  for (std::size_t f = 0; f < probs.size(); ++f) {
    const auto c = classify(probs[f]);
    if (!start) {
      if (c.b_high) start = f;
    } else if (did_pass_start) {
      if (c.b_high || c.o_high) {
        segments.push_back({*start, f - 1, kind});
        start.reset();
        did_pass_start = false;
      }
    } else if (c.b_low) {
      did_pass_start = true;
    }
  }
  if (start) segments.push_back({*start, probs.size() - 1, kind});
  return segments;
}

double frame_f1(const TagSequence& gold, const TagSequence& pred) {
  if (gold.size() != pred.size()) {
    throw Error(Errc::kLengthMismatch, "gold has " + std::to_string(gold.size()) +
                                           " frames, prediction has " + std::to_string(pred.size()));
  }
  constexpr std::array<Tag, 3> classes = {Tag::kB, Tag::kI, Tag::kO};
  double sum = 0.0;
  for (const Tag cls : classes) {
    std::size_t tp = 0, fp = 0, fn = 0;
    for (std::size_t f = 0; f < gold.size(); ++f) {
      const bool g = gold[f] == cls;
      const bool p = pred[f] == cls;
      tp += g && p;
      fp += !g && p;
      fn += g && !p;
    }
    if (tp + fp + fn == 0) {
      sum += 1.0;
    } else {
      const double precision = tp + fp == 0 ? 0.0 : double(tp) / double(tp + fp);
      const double recall = tp + fn == 0 ? 0.0 : double(tp) / double(tp + fn);
      sum += precision + recall == 0.0 ? 0.0 : 2.0 * precision * recall / (precision + recall);
    }
  }
  return sum / 3.0;
}

double segment_iou(const std::vector<Segment>& gold, const std::vector<Segment>& pred) {
  const auto g = sorted_checked(gold);
  const auto p = sorted_checked(pred);
  std::size_t gold_frames = 0, pred_frames = 0, overlap = 0;
  for (const auto& s : g) gold_frames += s.length();
  for (const auto& s : p) pred_frames += s.length();
  // Two-pointer sweep over the sorted, disjoint spans.
  std::size_t i = 0, j = 0;
  while (i < g.size() && j < p.size()) {
    const std::size_t lo = std::max(g[i].start, p[j].start);
    const std::size_t hi = std::min(g[i].end, p[j].end);
    if (lo <= hi) overlap += hi - lo + 1;
    if (g[i].end < p[j].end) {
      ++i;
    } else {
      ++j;
    }
  }
  const std::size_t uni = gold_frames + pred_frames - overlap;
  return uni == 0 ? 1.0 : double(overlap) / double(uni);
}

double segment_percentage(const std::vector<Segment>& gold, const std::vector<Segment>& pred) {
  if (gold.empty()) throw Error(Errc::kEmptyGold, "no gold segments");
  return double(pred.size()) / double(gold.size());
}

// ---------------------------------------------------------------------------
// Text encodings

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = nl + 1;
  }
  return lines;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::size_t parse_index(std::string_view s) {
  s = trim(s);
  std::size_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw Error(Errc::kInvalidArgument, "not a frame index: '" + std::string(s) + "'");
  }
  return v;
}

double parse_double(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw Error(Errc::kInvalidArgument, "not a number: '" + std::string(s) + "'");
  }
  return v;
}

void append_double(std::string& out, double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

}  // namespace

std::string format_tags(const TagSequence& tags) {
  std::string out;
  out.reserve(tags.size() + 1);
  for (const Tag t : tags) out += static_cast<char>(t);
  out += '\n';
  return out;
}

TagSequence parse_tags(std::string_view text) {
  TagSequence tags;
  for (const char ch : text) {
    switch (ch) {
      case 'B': tags.push_back(Tag::kB); break;
      case 'I': tags.push_back(Tag::kI); break;
      case 'O': tags.push_back(Tag::kO); break;
      case '\n': case '\r': case ' ': case '\t': break;
      default:
        throw Error(Errc::kInvalidArgument, std::string("unexpected tag character '") + ch + "'");
    }
  }
  return tags;
}

std::string format_segments(const std::vector<Segment>& segments) {
  std::string out;
  for (const auto& s : segments) {
    out += std::to_string(s.start) + '\t' + std::to_string(s.end) + '\t' + to_string(s.kind) + '\n';
  }
  return out;
}

std::vector<Segment> parse_segments(std::string_view text) {
  std::vector<Segment> segments;
  for (auto line : split_lines(text)) {
    if (trim(line).empty()) continue;
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (true) {
      const auto tab = line.find('\t', pos);
      fields.push_back(line.substr(pos, tab == std::string_view::npos ? line.npos : tab - pos));
      if (tab == std::string_view::npos) break;
      pos = tab + 1;
    }
    if (fields.size() < 2 || fields.size() > 3) {
      throw Error(Errc::kInvalidArgument, "segment line needs start<TAB>end[<TAB>kind]");
    }
    Segment seg{parse_index(fields[0]), parse_index(fields[1]), SegmentKind::kSign};
    if (fields.size() == 3) {
      const auto kind = trim(fields[2]);
      if (kind == "phrase") {
        seg.kind = SegmentKind::kPhrase;
      } else if (kind != "sign") {
        throw Error(Errc::kInvalidArgument, "unknown segment kind '" + std::string(kind) + "'");
      }
    }
    segments.push_back(seg);
  }
  return segments;
}

std::string format_probs(const ProbSeries& probs) {
  std::string out = "b,i,o\n";
  for (const auto& p : probs) {
    append_double(out, p.b);
    out += ',';
    append_double(out, p.i);
    out += ',';
    append_double(out, p.o);
    out += '\n';
  }
  return out;
}

ProbSeries parse_probs(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty() || trim(lines[0]) != "b,i,o") {
    throw Error(Errc::kInvalidArgument, "probability CSV must start with header 'b,i,o'");
  }
  ProbSeries probs;
  for (std::size_t n = 1; n < lines.size(); ++n) {
    const auto line = trim(lines[n]);
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = c1 == line.npos ? line.npos : line.find(',', c1 + 1);
    if (c2 == line.npos) throw Error(Errc::kInvalidArgument, "line " + std::to_string(n + 1) + " needs 3 values");
    FrameProbs p{parse_double(line.substr(0, c1)), parse_double(line.substr(c1 + 1, c2 - c1 - 1)),
                 parse_double(line.substr(c2 + 1))};
    for (double v : {p.b, p.i, p.o}) {
      if (!(v >= 0.0 && v <= 100.0)) {
        throw Error(Errc::kOutOfRange, "probability on line " + std::to_string(n + 1) +
                                           " is outside [0, 100]");
      }
    }
    probs.push_back(p);
  }
  return probs;
}

}  // namespace posekit
