#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace posekit {

inline constexpr std::size_t kMinBenchIterations = 5;
inline constexpr std::size_t kBenchWarmups = 2;

/// Mean and sample standard deviation, in seconds.
struct Timing {
  double mean = 0.0;
  double stddev = 0.0;
};

struct BenchCase {
  std::size_t frames = 0;
  std::uintmax_t json_bytes = 0;
  std::uintmax_t pose_bytes = 0;
  Timing json_parse;
  Timing pose_full_read;
  Timing pose_body_read;
  std::size_t iterations = 0;
};

struct BenchReport {
  std::vector<BenchCase> cases;
};

struct BenchPair {
  std::filesystem::path json_path;
  std::filesystem::path pose_path;
};

/// Writes bench_<frames>.json and bench_<frames>.pose: the same synthetic
/// single-person 137-point sequence in both formats.
BenchPair make_benchmark_pair(std::size_t frames, std::uint64_t seed,
                              const std::filesystem::path& out_dir);

/// Checks both files decode to the same pose, then times JSON parse,
/// full .pose read and body-only .pose read, interleaved per iteration.
BenchCase bench_read(const std::filesystem::path& json_path,
                     const std::filesystem::path& pose_path, std::size_t iterations);

Timing summarize(const std::vector<double>& samples);

std::string format_report_text(const BenchReport& report);
std::string format_report_csv(const BenchReport& report);

}  // namespace posekit
