// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "bench.hpp"
#include "error.hpp"
#include "fixtures.hpp"
#include "fsw.hpp"
#include "hand_norm.hpp"
#include "oracles.hpp"
#include "pose.hpp"
#include "pose_ops.hpp"
#include "segmentation.hpp"
#include "stitcher.hpp"

using namespace posekit;
using Eigen::Vector3d;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

// ---- 1. format roundtrip -------------------------------------------------

ComponentSpec random_component(std::mt19937_64& rng, std::size_t index) {
  static const char* kFormats[] = {"XYC", "XYZC", "XC", "XYZWC"};
  ComponentSpec c;
  c.name = "component_" + std::to_string(index) + (rng() % 2 ? "_\xc3\xa9" : "");
  c.format = kFormats[rng() % 4];
  const std::size_t n = 1 + rng() % 30;
  for (std::size_t i = 0; i < n; ++i) c.point_names.push_back("p" + std::to_string(i));
  for (std::size_t l = rng() % (n + 1); l > 0; --l) {
    c.limbs.push_back({std::uint16_t(rng() % n), std::uint16_t(rng() % n)});
  }
  for (std::size_t k = rng() % 4; k > 0; --k) {
    c.colors.push_back({std::uint16_t(rng() % 256), std::uint16_t(rng() % 256), std::uint16_t(rng() % 256)});
  }
  return c;
}

Pose random_pose(std::mt19937_64& rng) {
  PoseHeader h;
  h.width = std::uint16_t(rng());
  h.height = std::uint16_t(rng());
  h.depth = std::uint16_t(rng() % 3);
  for (std::size_t c = 1 + rng() % 4; c > 0; --c) h.components.push_back(random_component(rng, c));
  const std::size_t frames = rng() % 8 == 0 ? 0 : rng() % 40;
  Pose p = Pose::empty_like(h, std::uint16_t(1 + rng() % 120), frames, 1 + rng() % 3);
  std::uniform_real_distribution<float> coord(-5000.0f, 5000.0f), conf(0.0f, 1.0f);
  for (auto& v : p.body.data) v = coord(rng);
  for (auto& c : p.body.confidence) c = rng() % 5 == 0 ? 0.0f : conf(rng);
  // Axes a component does not use stay zero.
  const auto axes = point_axes(h);
  for (std::size_t f = 0; f < frames; ++f) {
    for (std::size_t q = 0; q < p.body.people; ++q) {
      for (std::size_t k = 0; k < p.body.points; ++k) {
        auto pt = p.body.point(f, q, k);
        for (std::size_t x = axes[k]; x < pt.size(); ++x) pt[x] = 0.0f;
      }
    }
  }
  return p;
}

Outcome format_roundtrip() {
  std::mt19937_64 rng(1);
  std::size_t failures = 0, empty = 0;
  for (int n = 0; n < 1000; ++n) {
    const Pose p = random_pose(rng);
    empty += p.body.frames == 0;
    const Pose back = read_pose(write_pose(p));
    failures += !bit_equal(back, p) || !(back.header == p.header);
  }
  return {failures == 0 && empty > 0, fmt("1000 poses (%zu with 0 frames), %zu mismatches", empty, failures)};
}

// ---- 2. benchmark ordering -----------------------------------------------

Outcome benchmark_ordering() {
  const auto dir = std::filesystem::temp_directory_path() / "posekit_acceptance_bench";
  std::filesystem::remove_all(dir);
  Outcome out;
  for (std::size_t frames : {1000, 10000}) {
    const auto pair = make_benchmark_pair(frames, 0, dir);
    const auto c = bench_read(pair.json_path, pair.pose_path, frames == 1000 ? 30 : 8);
    const double speedup = c.json_parse.mean / c.pose_full_read.mean;
    const double ratio = double(c.pose_bytes) / double(c.json_bytes);
    const bool ok = speedup >= 10.0 && c.pose_body_read.mean <= c.pose_full_read.mean && ratio <= 0.6;
    out.pass = out.pass && ok;
    out.detail += fmt("%s%zu frames: speedup %.1fx, body %.3f ms <= full %.3f ms, size ratio %.3f",
                      out.detail.empty() ? "" : "; ", frames, speedup,
                      c.pose_body_read.mean * 1e3, c.pose_full_read.mean * 1e3, ratio);
  }
  std::filesystem::remove_all(dir);
  return out;
}

// ---- 3. BIO exactness ----------------------------------------------------

std::vector<std::pair<long, long>> merge_adjacent(std::vector<std::pair<long, long>> s) {
  std::vector<std::pair<long, long>> out;
  for (const auto& seg : s) {
    if (!out.empty() && out.back().second + 1 == seg.first) {
      out.back().second = seg.second;
    } else {
      out.push_back(seg);
    }
  }
  return out;
}

Outcome bio_exactness() {
  std::mt19937_64 rng(3);
  std::size_t total = 0, bio_kept = 0, io_kept = 0, adjacent_lists = 0, io_violations = 0;
  for (int n = 0; n < 10000; ++n) {
    const std::size_t len = 1 + rng() % 200;
    const auto segs = fixture::random_segments(rng, len);
    const auto bio = tags_to_segments(segments_to_tags(segs, len, TagScheme::kBio), TagScheme::kBio);
    const auto io = tags_to_segments(segments_to_tags(segs, len, TagScheme::kIo), TagScheme::kIo);
    std::size_t io_here = 0;
    for (const auto& s : segs) {
      bio_kept += std::find(bio.begin(), bio.end(), s) != bio.end();
      io_here += std::find(io.begin(), io.end(), s) != io.end();
    }
    total += segs.size();
    io_kept += io_here;
    const auto merged = merge_adjacent(fixture::pairs(segs));
    const bool adjacent = merged.size() < segs.size();
    adjacent_lists += adjacent;
    // IO must equal the merged runs, and so lose something whenever adjacency exists.
    io_violations += fixture::pairs(io) != merged || (adjacent && io_here == segs.size());
  }
  return {bio_kept == total && io_violations == 0 && adjacent_lists > 0,
          fmt("BIO %.2f%%, IO %.2f%% of %zu segments; %zu lists with adjacency, %zu IO violations",
              100.0 * double(bio_kept) / double(total), 100.0 * double(io_kept) / double(total), total,
              adjacent_lists, io_violations)};
}

// ---- 4. decoder oracle -----------------------------------------------------

Outcome decoder_oracle() {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> pick(0, 100);
  const double thresholds[] = {40, 50, 60, 80, 90};
  std::size_t mismatches = 0, segments = 0;
  for (int n = 0; n < 10000; ++n) {
    ProbSeries p(rng() % 51);
    std::vector<oracle::Probs> o;
    for (auto& f : p) {
      f = {double(pick(rng)), double(pick(rng)), double(pick(rng))};
      o.push_back({f.b, f.i, f.o});
    }
    const double tb = thresholds[rng() % 5], to = thresholds[rng() % 5];
    const auto got = decode_probs(p, tb, to);
    segments += got.size();
    mismatches += fixture::pairs(got) != oracle::decode_literal(o, tb, to);
  }
  return {mismatches == 0, fmt("10000 series, %zu segments, %zu mismatches", segments, mismatches)};
}

// ---- 5. flow -------------------------------------------------------------

std::vector<float> brute_flow(const Pose& p) {
  const auto& b = p.body;
  std::vector<float> out(b.frames * b.people * b.points, 0.0f);
  for (std::size_t t = 1; t < b.frames; ++t) {
    for (std::size_t q = 0; q < b.people; ++q) {
      for (std::size_t k = 0; k < b.points; ++k) {
        if (!b.present(t, q, k) || !b.present(t - 1, q, k)) continue;
        double s = 0;
        for (std::size_t a = 0; a < b.axes; ++a) {
          const double d = double(b.point(t, q, k)[a]) - double(b.point(t - 1, q, k)[a]);
          s += d * d;
        }
        out[(t * b.people + q) * b.points + k] = static_cast<float>(std::sqrt(s) * b.fps);
      }
    }
  }
  return out;
}

Outcome flow_checks() {
  std::mt19937_64 rng(5);
  std::size_t brute_bad = 0;
  for (int n = 0; n < 100; ++n) {
    Pose p = random_pose(rng);
    brute_bad += optical_flow(p).values != brute_flow(p);
  }
  // Constant velocity in units per second; per-frame steps are multiples of
  // 1/64 so both samplings are exact in float.
  double worst = 0.0;
  std::uniform_int_distribution<int> step(-64, 64);
  for (int n = 0; n < 100; ++n) {
    const double vx = 50.0 * step(rng) / 64.0, vy = 50.0 * step(rng) / 64.0;
    const double x0 = step(rng) / 64.0, y0 = step(rng) / 64.0;
    Pose a = fixture::pose(25, 1, 1, "XYC", 25), b = fixture::pose(50, 1, 1, "XYC", 50);
    for (std::size_t f = 0; f < 25; ++f) fixture::set(a, f, 0, 0, {float(x0 + vx * f / 25.0), float(y0 + vy * f / 25.0)});
    for (std::size_t f = 0; f < 50; ++f) fixture::set(b, f, 0, 0, {float(x0 + vx * f / 50.0), float(y0 + vy * f / 50.0)});
    const auto fa = optical_flow(a), fb = optical_flow(b);
    for (std::size_t fa_i = 1; fa_i < 25; ++fa_i) {
      for (std::size_t fb_i = 1; fb_i < 50; ++fb_i) {
        worst = std::max(worst, std::abs(double(fa.at(fa_i, 0, 0)) - double(fb.at(fb_i, 0, 0))));
      }
    }
  }
  return {brute_bad == 0 && worst <= 1e-6,
          fmt("100 random poses, %zu brute-force mismatches; 25 vs 50 fps max difference %.3g", brute_bad, worst)};
}

// ---- 6. hand normalization invariance ------------------------------------

// Canonical hand with jittered fingers; WRIST, M_MCP and the palm plane stay
// canonical so the shape is its own normal form.
std::array<Vector3d, kHandLandmarks> random_canonical_hand(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> j(-8.0, 8.0);
  auto pts = fixture::canonical_hand();
  for (std::size_t i = 0; i < kHandLandmarks; ++i) {
    if (i == kWrist || i == kMiddleMcp) continue;
    pts[i] += Vector3d(j(rng), j(rng), (i == kIndexMcp || i == kPinkyMcp) ? 0.0 : j(rng));
  }
  return pts;
}

Outcome hand_invariance() {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> scale(0.2, 5.0), shift(-500.0, 500.0);
  double worst = 0.0;
  HandShapeGroup group{"shape", {}};
  const auto shape = random_canonical_hand(rng);
  for (int n = 0; n < 200; ++n) {
    const auto canon = random_canonical_hand(rng);
    const Vector3d t(shift(rng), shift(rng), shift(rng));
    const auto r = fixture::random_rotation(rng);
    const double s = scale(rng);
    const auto norm = normalize_hand_3d(HandPose::from_points(fixture::transform(canon, r, s, t)));
    for (std::size_t i = 0; i < kHandLandmarks; ++i) worst = std::max(worst, (norm.landmarks[i] - canon[i]).norm());
    group.observations.push_back(HandPose::from_points(fixture::transform(shape, r, s, t)));
  }
  const double group_mace = mace(group);

  auto moved = fixture::canonical_hand();
  moved[8].x() += 10.0;
  const double two = mace({"pair", {HandPose::from_points(fixture::canonical_hand()), HandPose::from_points(moved)}});
  return {worst <= 1e-4 && group_mace <= 1e-3 && std::abs(two - 5.0 / 21.0) <= 1e-9,
          fmt("max landmark error %.3g; group MACE %.3g; two-observation MACE %.12f", worst, group_mace, two)};
}

// ---- 7. plane, rotation and view estimators ------------------------------

Outcome estimator_truth_tables() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-100.0, 100.0);
  std::uniform_int_distribution<int> grid(-4, 4);
  const auto v3 = [](const Vector3d& v) { return oracle::Vec3{v.x(), v.y(), v.z()}; };
  std::size_t mismatches = 0, degenerate = 0;
  for (int n = 0; n < 10000; ++n) {
    auto pts = fixture::canonical_hand();
    // Half the samples sit on an integer grid so exact ties occur.
    for (auto i : {kWrist, kIndexMcp, kMiddleMcp, kPinkyMcp}) {
      pts[i] = n % 2 ? Vector3d(u(rng), u(rng), u(rng)) : Vector3d(grid(rng), grid(rng), grid(rng));
    }
    const HandPose h = HandPose::from_points(pts);
    const auto w = v3(pts[kWrist]), m = v3(pts[kMiddleMcp]), i = v3(pts[kIndexMcp]), p = v3(pts[kPinkyMcp]);
    mismatches += to_string(estimate_plane(h)) != oracle::plane(w, m);

    const auto d = oracle::sub(m, w);
    const bool no_direction = oracle::plane(w, m) == "wall" ? (d[0] == 0 && d[1] == 0) : (d[0] == 0 && d[2] == 0);
    try {
      mismatches += estimate_rotation_bin(h) != oracle::rotation_bin(w, m);
      mismatches += no_direction;
    } catch (const Error&) {
      mismatches += !no_direction;
      ++degenerate;
    }

    const auto nrm = oracle::cross(oracle::sub(i, w), oracle::sub(p, w));
    const bool collinear = nrm[0] == 0 && nrm[1] == 0 && nrm[2] == 0;
    try {
      mismatches += to_string(estimate_view(h)) != oracle::view(w, i, p, m);
      mismatches += collinear;
    } catch (const Error&) {
      mismatches += !collinear;
      ++degenerate;
    }
  }

  // Boundary cases.
  std::size_t boundary_bad = 0;
  const auto with_mcp = [](const Vector3d& m) {
    auto pts = fixture::canonical_hand();
    pts[kWrist] = Vector3d::Zero();
    pts[kMiddleMcp] = m;
    return HandPose::from_points(pts);
  };
  boundary_bad += estimate_plane(with_mcp({0, 10, 0})) != HandPlane::kWall;
  boundary_bad += estimate_plane(with_mcp({0, 1, 10})) != HandPlane::kFloor;
  boundary_bad += estimate_plane(with_mcp({0, 2, 3})) != HandPlane::kFloor;
  boundary_bad += estimate_rotation_bin(with_mcp({0, 10, 0})) != 0;
  boundary_bad += rotation_bin_from_angle(90.0) != 2;
  boundary_bad += rotation_bin_from_angle(22.5) != 1;
  boundary_bad += rotation_bin_from_angle(337.5) != 0;
  boundary_bad += rotation_bin_from_angle(337.49) != 7;
  const auto wall_view = [&](double deg) {
    const double r = deg * M_PI / 180.0;
    const Vector3d normal(std::cos(r), 0.0, std::sin(r));
    const Vector3d side = Vector3d::UnitY().cross(normal);
    auto pts = fixture::canonical_hand();
    pts[kWrist] = Vector3d::Zero();
    pts[kMiddleMcp] = Vector3d(0, 200, 0);
    pts[kIndexMcp] = 190 * Vector3d::UnitY() + 40 * side;
    pts[kPinkyMcp] = 170 * Vector3d::UnitY() - 60 * side;
    return estimate_view(HandPose::from_points(pts));
  };
  boundary_bad += wall_view(300) != HandView::kFront;
  boundary_bad += wall_view(180) != HandView::kSideways;
  boundary_bad += wall_view(100) != HandView::kBack;
  {
    // Floor hand, palm normal pointing along -Y: angle -90.
    auto pts = fixture::canonical_hand();
    pts[kWrist] = Vector3d::Zero();
    pts[kMiddleMcp] = Vector3d(0, 0, 200);
    pts[kIndexMcp] = Vector3d(40, 0, 190);
    pts[kPinkyMcp] = Vector3d(-60, 0, 170);
    boundary_bad += estimate_view(HandPose::from_points(pts)) != HandView::kBack;
  }
  return {mismatches == 0 && boundary_bad == 0,
          fmt("10000 samples (%zu degenerate, all matched), %zu mismatches; %zu boundary failures",
              degenerate, mismatches, boundary_bad)};
}

// ---- 8. FSW ----------------------------------------------------------------

Outcome fsw_checks() {
  const bool example = fsw::tokenize_text("M518x529S14c20481x471S27106503x489") ==
                       "M p518 p529 S14c c2 r0 p481 p471 S271 c0 r6 p503 p489";
  const std::size_t vocab = fsw::vocabulary().size();
  std::mt19937_64 rng(8);
  std::size_t lost = 0;
  for (int n = 0; n < 10000; ++n) {
    const auto sign = fixture::random_sign(rng);
    const auto back = fsw::parse(fsw::detokenize(fsw::tokenize(sign)));
    lost += back.size() != 1 || back[0] != sign;
  }
  return {example && vocab == 1182 && lost == 0,
          fmt("worked example %s; vocabulary %zu; 10000 signs, %zu lost", example ? "exact" : "WRONG", vocab, lost)};
}

// ---- 9. stitching ----------------------------------------------------------

Outcome stitching() {
  std::mt19937_64 rng(9);
  StitchConfig cfg;
  std::size_t wrong_gap = 0, rougher = 0;
  double worst_ratio = 0.0;
  for (int n = 0; n < 50; ++n) {
    const auto a = fixture::moving_clip(rng, 20 + rng() % 20, 1 + rng() % 8, 100, 1 + double(rng() % 5));
    const auto b = fixture::moving_clip(rng, 20 + rng() % 20, a.body.points, 100 + double(rng() % 200), 1 + double(rng() % 5));
    const auto r = stitch_detailed({a, b}, cfg);
    wrong_gap += r.spans[1].first - r.spans[0].second - 1 != 5;
    const double stitched = fixture::max_jump(r.pose, r.spans[0].second, r.spans[1].first);
    const double naive = fixture::naive_jump(a, b);
    rougher += stitched > naive;
    worst_ratio = std::max(worst_ratio, stitched / naive);
  }

  // Random quadratics (degree 0 to 2) through order-2 filters of several widths.
  double poly_err = 0.0;
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  for (int n = 0; n < 100; ++n) {
    const std::size_t len = 12 + rng() % 40;
    const std::size_t window = 5 + 2 * (rng() % 4);
    const double c0 = 10 * coef(rng), c1 = coef(rng), c2 = n % 3 == 0 ? 0.0 : 0.1 * coef(rng);
    std::vector<double> v(len);
    for (std::size_t t = 0; t < len; ++t) v[t] = c0 + c1 * double(t) + c2 * double(t) * double(t);
    const auto present = std::make_unique<bool[]>(len);
    std::fill_n(present.get(), len, true);
    const auto s = savgol_series(v, {present.get(), len}, window, 2);
    for (std::size_t t = 0; t < len; ++t) poly_err = std::max(poly_err, std::abs(s[t] - v[t]));
  }
  return {wrong_gap == 0 && rougher == 0 && poly_err <= 1e-6,
          fmt("50 pairs: %zu wrong gap counts, %zu rougher than concatenation (worst ratio %.3f); "
              "quadratic max error %.3g",
              wrong_gap, rougher, worst_ratio, poly_err)};
}

// ---- 10. metrics -----------------------------------------------------------

Outcome metrics() {
  std::mt19937_64 rng(10);
  std::size_t f1_bad = 0, iou_bad = 0, pct_bad = 0;
  for (int n = 0; n < 1000; ++n) {
    const std::size_t len = 1 + rng() % 120;
    const auto g = fixture::random_segments(rng, len);
    const auto p = fixture::random_segments(rng, len);
    const auto gt = fixture::tag_string(segments_to_tags(g, len, TagScheme::kBio));
    const auto pt = fixture::tag_string(segments_to_tags(p, len, TagScheme::kBio));
    f1_bad += frame_f1(parse_tags(gt), parse_tags(pt)) != oracle::macro_f1(gt, pt);
    iou_bad += segment_iou(g, p) != oracle::iou(fixture::pairs(g), fixture::pairs(p));
    if (g.empty()) {
      try {
        segment_percentage(g, p);
        ++pct_bad;
      } catch (const Error& e) {
        pct_bad += e.code() != Errc::kEmptyGold;
      }
    } else {
      pct_bad += segment_percentage(g, p) != double(p.size()) / double(g.size());
    }
  }
  const double iou = segment_iou({{0, 9, SegmentKind::kSign}}, {{5, 14, SegmentKind::kSign}});
  const bool third = std::abs(iou - 1.0 / 3.0) <= 1e-12;
  return {f1_bad + iou_bad + pct_bad == 0 && third,
          fmt("1000 pairs: %zu F1, %zu IoU, %zu percentage mismatches; IoU([0,9],[5,14]) = %.15f", f1_bad,
              iou_bad, pct_bad, iou)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
    double limit_seconds = 0.0;  // 0: no runtime bound
  };
  const std::vector<Criterion> criteria = {
      {1, "format roundtrip", format_roundtrip, 30.0},
      {2, "benchmark ordering", benchmark_ordering, 120.0},
      {3, "BIO exactness", bio_exactness},
      {4, "decoder oracle equivalence", decoder_oracle},
      {5, "optical flow", flow_checks},
      {6, "hand normalization invariance", hand_invariance},
      {7, "plane/rotation/view truth tables", estimator_truth_tables},
      {8, "FSW tokenizer", fsw_checks},
      {9, "stitching", stitching},
      {10, "segmentation metrics", metrics},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0.0 && secs >= c.limit_seconds) {
      o.pass = false;
      o.detail += fmt("; runtime over the %.0fs bound", c.limit_seconds);
    }
    failed += !o.pass;
    std::printf("%s criterion %d: %s (%s) [%.2fs]\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
