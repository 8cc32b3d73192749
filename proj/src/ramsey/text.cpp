#include "ramsey/text.hpp"

#include <charconv>

namespace ramsey {

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<TextLine> LineReader::scan(std::size_t& pos, int& number) const {
  while (pos < text_.size()) {
    std::size_t end = text_.find('\n', pos);
    if (end == std::string_view::npos) end = text_.size();
    std::string_view raw = text_.substr(pos, end - pos);
    pos = end + 1;
    ++number;
    std::string_view body = raw;
    if (auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    auto tokens = split_words(body);
    if (tokens.empty()) continue;
    int indent = 0;
    while (indent < static_cast<int>(raw.size()) && raw[static_cast<std::size_t>(indent)] == ' ') ++indent;
    return TextLine{number, indent, raw, std::move(tokens)};
  }
  return std::nullopt;
}

std::optional<TextLine> LineReader::next() {
  auto line = scan(pos_, line_);
  if (line) current_ = line->number;
  return line;
}

std::optional<TextLine> LineReader::peek() {
  std::size_t pos = pos_;
  int number = line_;
  return scan(pos, number);
}

Error LineReader::error(const std::string& message, int column) const {
  return Error(ErrorCode::Parse,
               "line " + std::to_string(current_) + ", column " + std::to_string(column) + ": " + message);
}

int parse_int(const std::string& token, const LineReader& reader) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) throw reader.error("expected an integer, got `" + token + "`");
  return value;
}

}  // namespace ramsey
