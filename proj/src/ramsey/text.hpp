#pragma once

// Line-oriented tokenizer shared by the text formats (boards, transcripts,
// strategy files, the catalog). `#` starts a comment; blank lines are skipped.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ramsey/graph.hpp"

namespace ramsey {

struct TextLine {
  int number = 0;  // 1-based
  int indent = 0;  // leading spaces
  std::string_view raw;
  std::vector<std::string> tokens;
};

class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  std::optional<TextLine> next();
  // Returns the next line without consuming it.
  std::optional<TextLine> peek();

  Error error(const std::string& message, int column = 1) const;
  int line_number() const noexcept { return current_; }

 private:
  std::optional<TextLine> scan(std::size_t& pos, int& number) const;

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 0;
  int current_ = 0;
};

int parse_int(const std::string& token, const LineReader& reader);
std::vector<std::string> split_words(std::string_view s);

}  // namespace ramsey
