#pragma once

#include <stdexcept>
#include <string>

namespace posekit {

// Numeric values are part of the C ABI (see posekit.h, pk_status).
enum class Errc : int {
  kOk = 0,
  kInvalidArgument = 1,
  kIo = 2,
  kTruncatedFile = 10,
  kBadVersion = 11,
  kBadIndex = 12,
  kBadUtf8 = 13,
  kInvariantViolation = 14,
  kUnknownComponent = 15,
  kMissingPoint = 20,
  kDegenerateSkeleton = 21,
  kNotThreeD = 22,
  kCollinearPoints = 23,
  kZeroFps = 24,
  kBadWindow = 25,
  kMissingLandmark = 30,
  kDegenerateDirection = 31,
  kCollinearLandmarks = 32,
  kDegenerateMetacarpal = 33,
  kInsufficientObservations = 34,
  kOverlappingSegments = 40,
  kOutOfRange = 41,
  kLengthMismatch = 42,
  kEmptyGold = 43,
  kSchemaMismatch = 50,
  kNoSharedPoints = 51,
  kEmptyInput = 52,
  kBadBox = 60,
  kBadSymbolCode = 61,
  kBadCoordinate = 62,
  kTrailingGarbage = 63,
  kMalformedStream = 64,
  kBadSchema = 70,
  kRaggedKeypoints = 71,
  kFrameOutOfRange = 80,
  kInternal = 99,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace posekit
