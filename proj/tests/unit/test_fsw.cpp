#include <doctest.h>

#include <algorithm>
#include <random>

#include "error.hpp"
#include "fixtures.hpp"
#include "fsw.hpp"

using namespace posekit;

namespace {

constexpr const char* kSign = "M518x529S14c20481x471S27106503x489";
constexpr const char* kTokens = "M p518 p529 S14c c2 r0 p481 p471 S271 c0 r6 p503 p489";

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::kOk;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::size_t at = 0;
  while (at < s.size()) {
    const auto end = std::min(s.find(' ', at), s.size());
    out.push_back(s.substr(at, end - at));
    at = end + 1;
  }
  return out;
}

}  // namespace

TEST_CASE("parse") {
  const auto signs = fsw::parse(kSign);
  REQUIRE(signs.size() == 1);
  const auto& s = signs[0];
  CHECK(s.box == 'M');
  CHECK(s.x == 518);
  CHECK(s.y == 529);
  REQUIRE(s.graphemes.size() == 2);
  CHECK(s.graphemes[0] == fsw::Grapheme{0x14c, 2, 0, 481, 471});
  CHECK(s.graphemes[1] == fsw::Grapheme{0x271, 0, 6, 503, 489});

  CHECK(fsw::parse("").empty());
  CHECK(fsw::parse("  \n").empty());
  CHECK(fsw::parse("B500x500 R250x749").size() == 2);
  CHECK(fsw::parse("M500x500M500x500").size() == 2);
}

TEST_CASE("parse errors") {
  CHECK(code_of([] { fsw::parse("M518x529S99920481x471"); }) == Errc::kBadSymbolCode);
  CHECK(code_of([] { fsw::parse("M518x529S0ff20481x471"); }) == Errc::kBadSymbolCode);
  CHECK(code_of([] { fsw::parse("M518x529S14c60481x471"); }) == Errc::kBadSymbolCode);
  CHECK(code_of([] { fsw::parse("M518x529S14cz0481x471"); }) == Errc::kBadSymbolCode);
  CHECK(code_of([] { fsw::parse("X518x529"); }) == Errc::kBadBox);
  CHECK(code_of([] { fsw::parse("M249x529"); }) == Errc::kBadCoordinate);
  CHECK(code_of([] { fsw::parse("M518y529"); }) == Errc::kBadCoordinate);
  CHECK(code_of([] { fsw::parse("M518x52"); }) == Errc::kBadCoordinate);
  CHECK(code_of([] { fsw::parse("M518x529?"); }) == Errc::kTrailingGarbage);
}

TEST_CASE("temporal prefix is skipped with a warning") {
  std::vector<std::string> warnings;
  const auto signs = fsw::parse(std::string("AS14c20S27106") + kSign, &warnings);
  REQUIRE(signs.size() == 1);
  CHECK(signs[0] == fsw::parse(kSign)[0]);
  CHECK(warnings.size() == 1);
}

TEST_CASE("tokenize") {
  CHECK(fsw::tokenize_text(kSign) == kTokens);
  CHECK(fsw::tokenize(fsw::Sign{'B', 300, 700, {}}) == std::vector<std::string>{"B", "p300", "p700"});
  CHECK(fsw::tokenize_text("").empty());
}

TEST_CASE("detokenize") {
  CHECK(fsw::detokenize(split(kTokens)) == kSign);
  CHECK(fsw::detokenize_text(kTokens) == kSign);
  CHECK(fsw::detokenize({}).empty());
  CHECK(fsw::detokenize_text("M p500 p500 B p250 p250") == "M500x500 B250x250");

  auto cut = split(kTokens);
  cut.pop_back();
  CHECK(code_of([&] { fsw::detokenize(cut); }) == Errc::kMalformedStream);
  cut.resize(10);
  CHECK(code_of([&] { fsw::detokenize(cut); }) == Errc::kMalformedStream);
  CHECK(code_of([] { fsw::detokenize_text("p500"); }) == Errc::kMalformedStream);
  CHECK(code_of([] { fsw::detokenize_text("M p500 p800"); }) == Errc::kMalformedStream);
  CHECK(code_of([] { fsw::detokenize_text("M p500 p500 S14c c6 r0 p500 p500"); }) ==
        Errc::kMalformedStream);
}

TEST_CASE("generated signs roundtrip and count tokens") {
  std::mt19937_64 rng(21);
  int failures = 0;
  for (int n = 0; n < 2000; ++n) {
    const auto sign = fixture::random_sign(rng);
    const auto tokens = fsw::tokenize(sign);
    failures += tokens.size() != 3 + 5 * sign.graphemes.size();
    const auto text = fsw::detokenize(tokens);
    failures += text != fsw::format(sign);
    const auto back = fsw::parse(text);
    failures += back.size() != 1 || back[0] != sign;
  }
  CHECK(failures == 0);
}

TEST_CASE("vocabulary") {
  const auto& v = fsw::vocabulary();
  CHECK(v.size() == 1182);
  CHECK(v.size() == fsw::kVocabularySize);
  CHECK(v.front() == "B");
  CHECK(v.back() == "p749");
  CHECK(std::count(v.begin(), v.end(), "p250") == 1);
  CHECK(std::count(v.begin(), v.end(), "p249") == 0);
  CHECK(std::count(v.begin(), v.end(), "S38f") == 1);
  std::vector<std::string> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());

  std::mt19937_64 rng(2);
  for (int n = 0; n < 200; ++n) {
    for (const auto& t : fsw::tokenize(fixture::random_sign(rng))) {
      CHECK(std::binary_search(sorted.begin(), sorted.end(), t));
    }
  }
}
