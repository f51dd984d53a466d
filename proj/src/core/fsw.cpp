#include "fsw.hpp"

#include <cctype>
#include <optional>
#include <tuple>
#include <sstream>

#include "error.hpp"

namespace posekit::fsw {

namespace {

bool is_box(char c) { return c == 'B' || c == 'L' || c == 'M' || c == 'R'; }

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return -1;
}

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }
  std::size_t pos() const { return pos_; }
  void advance(std::size_t n = 1) { pos_ += n; }
  void skip_space() {
    while (!done() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  std::string where() const { return " at offset " + std::to_string(pos_); }

  int number3() {
    if (pos_ + 3 > text_.size()) throw Error(Errc::kBadCoordinate, "truncated coordinate" + where());
    int v = 0;
    for (std::size_t i = 0; i < 3; ++i) {
      const char c = text_[pos_ + i];
      if (c < '0' || c > '9') throw Error(Errc::kBadCoordinate, "malformed coordinate" + where());
      v = v * 10 + (c - '0');
    }
    if (v < kMinPosition || v > kMaxPosition) {
      throw Error(Errc::kBadCoordinate,
                  "coordinate " + std::to_string(v) + " outside [250, 749]" + where());
    }
    pos_ += 3;
    return v;
  }

  std::pair<int, int> coordinate() {
    const int x = number3();
    if (peek() != 'x') throw Error(Errc::kBadCoordinate, "expected 'x'" + where());
    advance();
    const int y = number3();
    return {x, y};
  }

  int hex_digits(std::size_t n) {
    if (pos_ + n > text_.size()) throw Error(Errc::kBadSymbolCode, "truncated symbol" + where());
    int v = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const int h = hex_value(text_[pos_ + i]);
      if (h < 0) throw Error(Errc::kBadSymbolCode, "malformed symbol code" + where());
      v = v * 16 + h;
    }
    pos_ += n;
    return v;
  }

  // "S" + base + fill + rotation, without position.
  Grapheme symbol_key() {
    advance();  // 'S'
    Grapheme g;
    g.symbol = hex_digits(3);
    if (g.symbol < kMinSymbol || g.symbol > kMaxSymbol) {
      std::ostringstream msg;
      msg << "symbol S" << std::hex << g.symbol << " outside [S100, S38f]" << where();
      throw Error(Errc::kBadSymbolCode, msg.str());
    }
    g.fill = hex_digits(1);
    if (g.fill >= kFills) throw Error(Errc::kBadSymbolCode, "fill modifier above 5" + where());
    g.rotation = hex_digits(1);
    return g;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<Sign> parse(std::string_view text, std::vector<std::string>* warnings) {
  std::vector<Sign> signs;
  Cursor in(text);
  while (true) {
    in.skip_space();
    if (in.done()) break;
    if (in.peek() == 'A') {
      const std::size_t at = in.pos();
      in.advance();
      while (in.peek() == 'S') in.symbol_key();
      if (warnings) warnings->push_back("ignored temporal prefix at offset " + std::to_string(at));
    }
    const char c = in.peek();
    if (!is_box(c)) {
      if (std::isupper(static_cast<unsigned char>(c))) {
        throw Error(Errc::kBadBox, std::string("expected box B, L, M or R, got '") + c + "'" + in.where());
      }
      throw Error(Errc::kTrailingGarbage, std::string("unexpected '") + c + "'" + in.where());
    }
    Sign sign;
    sign.box = c;
    in.advance();
    std::tie(sign.x, sign.y) = in.coordinate();
    while (in.peek() == 'S') {
      Grapheme g = in.symbol_key();
      std::tie(g.x, g.y) = in.coordinate();
      sign.graphemes.push_back(g);
    }
    const char next = in.peek();
    if (!in.done() && !std::isspace(static_cast<unsigned char>(next)) && !is_box(next) &&
        next != 'A') {
      throw Error(Errc::kTrailingGarbage, std::string("unexpected '") + next + "'" + in.where());
    }
    signs.push_back(std::move(sign));
  }
  return signs;
}

namespace {

std::string hex3(int v) {
  static constexpr char kDigits[] = "0123456789abcdef";
  return {kDigits[(v >> 8) & 0xf], kDigits[(v >> 4) & 0xf], kDigits[v & 0xf]};
}

char hex1(int v) { return "0123456789abcdef"[v & 0xf]; }

}  // namespace

std::string format(const Sign& sign) {
  std::string out;
  out += sign.box;
  out += std::to_string(sign.x) + 'x' + std::to_string(sign.y);
  for (const auto& g : sign.graphemes) {
    out += 'S';
    out += hex3(g.symbol);
    out += hex1(g.fill);
    out += hex1(g.rotation);
    out += std::to_string(g.x) + 'x' + std::to_string(g.y);
  }
  return out;
}

std::string format(const std::vector<Sign>& signs) {
  std::string out;
  for (std::size_t i = 0; i < signs.size(); ++i) {
    if (i) out += ' ';
    out += format(signs[i]);
  }
  return out;
}

std::vector<std::string> tokenize(const Sign& sign) {
  std::vector<std::string> tokens;
  tokens.reserve(3 + 5 * sign.graphemes.size());
  tokens.emplace_back(1, sign.box);
  tokens.push_back("p" + std::to_string(sign.x));
  tokens.push_back("p" + std::to_string(sign.y));
  for (const auto& g : sign.graphemes) {
    tokens.push_back("S" + hex3(g.symbol));
    tokens.push_back(std::string("c") + hex1(g.fill));
    tokens.push_back(std::string("r") + hex1(g.rotation));
    tokens.push_back("p" + std::to_string(g.x));
    tokens.push_back("p" + std::to_string(g.y));
  }
  return tokens;
}

std::vector<std::string> tokenize(const std::vector<Sign>& signs) {
  std::vector<std::string> tokens;
  for (const auto& s : signs) {
    auto t = tokenize(s);
    tokens.insert(tokens.end(), t.begin(), t.end());
  }
  return tokens;
}

std::string tokenize_text(std::string_view text) {
  std::string out;
  for (const auto& t : tokenize(parse(text))) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

namespace {

[[noreturn]] void malformed(const std::string& msg) { throw Error(Errc::kMalformedStream, msg); }

int position_token(const std::vector<std::string>& tokens, std::size_t i) {
  if (i >= tokens.size()) malformed("stream ends before a position token");
  const auto& t = tokens[i];
  if (t.size() != 4 || t[0] != 'p') malformed("expected position token, got '" + t + "'");
  int v = 0;
  for (std::size_t k = 1; k < 4; ++k) {
    if (t[k] < '0' || t[k] > '9') malformed("bad position token '" + t + "'");
    v = v * 10 + (t[k] - '0');
  }
  if (v < kMinPosition || v > kMaxPosition) malformed("position out of range in '" + t + "'");
  return v;
}

int modifier_token(const std::vector<std::string>& tokens, std::size_t i, char prefix, int limit) {
  if (i >= tokens.size()) malformed("stream ends mid-grapheme");
  const auto& t = tokens[i];
  const int v = t.size() == 2 && t[0] == prefix ? hex_value(t[1]) : -1;
  if (v < 0 || v >= limit) {
    malformed(std::string("expected '") + prefix + "' modifier token, got '" + t + "'");
  }
  return v;
}

}  // namespace

std::vector<Sign> detokenize_signs(const std::vector<std::string>& tokens) {
  std::vector<Sign> signs;
  std::size_t i = 0;
  while (i < tokens.size()) {
    const auto& box = tokens[i];
    if (box.size() != 1 || !is_box(box[0])) malformed("expected box token, got '" + box + "'");
    Sign sign;
    sign.box = box[0];
    sign.x = position_token(tokens, i + 1);
    sign.y = position_token(tokens, i + 2);
    i += 3;
    while (i < tokens.size() && !tokens[i].empty() && tokens[i][0] == 'S') {
      const auto& sym = tokens[i];
      int base = -1;
      if (sym.size() == 4) {
        base = 0;
        for (std::size_t k = 1; k < 4 && base >= 0; ++k) {
          const int h = hex_value(sym[k]);
          base = h < 0 ? -1 : base * 16 + h;
        }
      }
      if (base < kMinSymbol || base > kMaxSymbol) malformed("bad symbol token '" + sym + "'");
      Grapheme g;
      g.symbol = base;
      g.fill = modifier_token(tokens, i + 1, 'c', kFills);
      g.rotation = modifier_token(tokens, i + 2, 'r', kRotations);
      g.x = position_token(tokens, i + 3);
      g.y = position_token(tokens, i + 4);
      sign.graphemes.push_back(g);
      i += 5;
    }
    signs.push_back(std::move(sign));
  }
  return signs;
}

std::string detokenize(const std::vector<std::string>& tokens) {
  return format(detokenize_signs(tokens));
}

std::string detokenize_text(std::string_view line) {
  std::vector<std::string> tokens;
  std::istringstream in{std::string(line)};
  for (std::string t; in >> t;) tokens.push_back(t);
  return detokenize(tokens);
}

const std::vector<std::string>& vocabulary() {
  static const std::vector<std::string> vocab = [] {
    std::vector<std::string> v;
    v.reserve(kVocabularySize);
    for (const char* box : {"B", "L", "M", "R"}) v.emplace_back(box);
    for (int s = kMinSymbol; s <= kMaxSymbol; ++s) v.push_back("S" + hex3(s));
    for (int f = 0; f < kFills; ++f) v.push_back(std::string("c") + hex1(f));
    for (int r = 0; r < kRotations; ++r) v.push_back(std::string("r") + hex1(r));
    for (int p = kMinPosition; p <= kMaxPosition; ++p) v.push_back("p" + std::to_string(p));
    return v;
  }();
  return vocab;
}

}  // namespace posekit::fsw
