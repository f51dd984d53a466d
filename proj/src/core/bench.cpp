#include "bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <numeric>

#include "error.hpp"
#include "openpose.hpp"
#include "pose.hpp"

namespace posekit {

namespace {

std::uintmax_t size_of(const std::filesystem::path& path) {
  std::error_code ec;
  const auto size = std::filesystem::file_size(path, ec);
  if (ec) throw Error(Errc::kIo, "cannot stat '" + path.string() + "': " + ec.message());
  return size;
}

template <typename Fn>
double time_once(Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(stop - start).count();
}

// Keeps the timed work observable.
volatile std::size_t g_sink = 0;

std::string human_bytes(std::uintmax_t bytes) {
  char buf[32];
  if (bytes >= 1'000'000) {
    std::snprintf(buf, sizeof buf, "%.1f MB", double(bytes) / 1e6);
  } else if (bytes >= 1'000) {
    std::snprintf(buf, sizeof buf, "%.1f KB", double(bytes) / 1e3);
  } else {
    std::snprintf(buf, sizeof buf, "%ju B", bytes);
  }
  return buf;
}

std::string human_time(const Timing& t) {
  const auto one = [](double s) {
    char buf[32];
    if (s >= 1.0) {
      std::snprintf(buf, sizeof buf, "%.3g s", s);
    } else if (s >= 1e-3) {
      std::snprintf(buf, sizeof buf, "%.3g ms", s * 1e3);
    } else {
      std::snprintf(buf, sizeof buf, "%.3g us", s * 1e6);
    }
    return std::string(buf);
  };
  return one(t.mean) + " +- " + one(t.stddev);
}

}  // namespace

BenchPair make_benchmark_pair(std::size_t frames, std::uint64_t seed,
                              const std::filesystem::path& out_dir) {
  if (frames == 0) throw Error(Errc::kInvalidArgument, "benchmark needs at least one frame");
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(Errc::kIo, "cannot create '" + out_dir.string() + "': " + ec.message());

  const auto components = openpose_components();
  const Pose pose = generate_synthetic(frames, 1, components, seed);
  BenchPair pair{out_dir / ("bench_" + std::to_string(frames) + ".json"),
                 out_dir / ("bench_" + std::to_string(frames) + ".pose")};
  // Generated values are multiples of 1e-3 / 1e-6, so fixed decimals are exact.
  write_text_file(pair.json_path, export_openpose(pose, {3, 6}));
  write_pose_file(pair.pose_path, pose);
  return pair;
}

Timing summarize(const std::vector<double>& samples) {
  Timing t;
  if (samples.empty()) return t;
  t.mean = std::accumulate(samples.begin(), samples.end(), 0.0) / double(samples.size());
  if (samples.size() > 1) {
    double sq = 0.0;
    for (double s : samples) sq += (s - t.mean) * (s - t.mean);
    t.stddev = std::sqrt(sq / double(samples.size() - 1));
  }
  return t;
}

BenchCase bench_read(const std::filesystem::path& json_path,
                     const std::filesystem::path& pose_path, std::size_t iterations) {
  if (iterations < kMinBenchIterations) {
    throw Error(Errc::kInvalidArgument, "benchmark needs at least " +
                                            std::to_string(kMinBenchIterations) + " iterations");
  }
  const Pose from_json = ingest_openpose(read_text_file(json_path));
  const Pose from_pose = read_pose_file(pose_path);
  if (!bit_equal(from_json, from_pose)) {
    throw Error(Errc::kInvalidArgument, "benchmark files do not decode to the same pose");
  }

  const auto json_parse = [&] {
    const auto doc = nlohmann::json::parse(read_text_file(json_path));
    g_sink = g_sink + doc.size();
  };
  const auto full_read = [&] {
    const Pose p = read_pose_file(pose_path);
    g_sink = g_sink + p.body.frames;
  };
  const auto body_read = [&] {
    const PoseBody b = read_pose_body(read_file(pose_path));
    g_sink = g_sink + b.frames;
  };

  for (std::size_t w = 0; w < kBenchWarmups; ++w) {
    json_parse();
    full_read();
    body_read();
  }
  std::vector<double> json_t, full_t, body_t;
  for (std::size_t i = 0; i < iterations; ++i) {
    json_t.push_back(time_once(json_parse));
    full_t.push_back(time_once(full_read));
    body_t.push_back(time_once(body_read));
  }

  BenchCase c;
  c.frames = from_pose.body.frames;
  c.json_bytes = size_of(json_path);
  c.pose_bytes = size_of(pose_path);
  c.json_parse = summarize(json_t);
  c.pose_full_read = summarize(full_t);
  c.pose_body_read = summarize(body_t);
  c.iterations = iterations;
  return c;
}

std::string format_report_text(const BenchReport& report) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%8s  %10s  %22s  %10s  %22s  %22s\n", "frames", "json size",
                "json parse", "pose size", "pose read", "pose read (body)");
  out += line;
  for (const auto& c : report.cases) {
    std::snprintf(line, sizeof line, "%8zu  %10s  %22s  %10s  %22s  %22s\n", c.frames,
                  human_bytes(c.json_bytes).c_str(), human_time(c.json_parse).c_str(),
                  human_bytes(c.pose_bytes).c_str(), human_time(c.pose_full_read).c_str(),
                  human_time(c.pose_body_read).c_str());
    out += line;
  }
  return out;
}

std::string format_report_csv(const BenchReport& report) {
  std::string out =
      "frames,json_bytes,pose_bytes,json_parse_mean_s,json_parse_std_s,pose_read_mean_s,"
      "pose_read_std_s,pose_body_read_mean_s,pose_body_read_std_s,iterations\n";
  char line[512];
  for (const auto& c : report.cases) {
    std::snprintf(line, sizeof line, "%zu,%ju,%ju,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%zu\n", c.frames,
                  c.json_bytes, c.pose_bytes, c.json_parse.mean, c.json_parse.stddev,
                  c.pose_full_read.mean, c.pose_full_read.stddev, c.pose_body_read.mean,
                  c.pose_body_read.stddev, c.iterations);
    out += line;
  }
  return out;
}

}  // namespace posekit
