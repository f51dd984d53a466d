#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace posekit::fsw {

inline constexpr int kMinPosition = 250;
inline constexpr int kMaxPosition = 749;
inline constexpr int kMinSymbol = 0x100;
inline constexpr int kMaxSymbol = 0x38f;
inline constexpr int kFills = 6;
inline constexpr int kRotations = 16;
inline constexpr std::size_t kVocabularySize = 4 + 656 + 6 + 16 + 500;

struct Grapheme {
  int symbol = kMinSymbol;  // base code, e.g. 0x14c
  int fill = 0;             // 0..5
  int rotation = 0;         // 0..15
  int x = 500;
  int y = 500;
  bool operator==(const Grapheme&) const = default;
};

struct Sign {
  char box = 'M';  // one of B, L, M, R
  int x = 500;
  int y = 500;
  std::vector<Grapheme> graphemes;
  bool operator==(const Sign&) const = default;
};

/// Parses whitespace-separated FSW signs. A leading temporal "A..." prefix
/// is skipped; `warnings` receives one line per skipped prefix when given.
std::vector<Sign> parse(std::string_view text, std::vector<std::string>* warnings = nullptr);

std::string format(const Sign& sign);
std::string format(const std::vector<Sign>& signs);

std::vector<std::string> tokenize(const Sign& sign);
std::vector<std::string> tokenize(const std::vector<Sign>& signs);
/// parse + tokenize, joined with single spaces.
std::string tokenize_text(std::string_view text);

std::vector<Sign> detokenize_signs(const std::vector<std::string>& tokens);
/// Inverse of tokenize: signs are emitted as FSW separated by one space.
std::string detokenize(const std::vector<std::string>& tokens);
std::string detokenize_text(std::string_view line);

/// Boxes, symbols ascending, fills, rotations, positions ascending.
const std::vector<std::string>& vocabulary();

}  // namespace posekit::fsw
