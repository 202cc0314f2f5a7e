#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bordcalc::text {

// One meaningful line of a document: comment stripped, trimmed, never empty.
struct Line {
  int number = 0;
  std::string text;
};

std::vector<Line> read_lines(const std::string& document);

std::string trim(const std::string& s);
std::vector<std::string> split_words(const std::string& s);
// Splits on every occurrence of sep and trims the parts; empty input gives no parts.
std::vector<std::string> split(const std::string& s, const std::string& sep);
// "head : tail" at the first " : " (or a trailing " :").
std::pair<std::string, std::optional<std::string>> split_colon(const std::string& s);
bool starts_with(const std::string& s, const std::string& prefix);

int parse_int(const std::string& token, const std::string& what);

// Throws InputError carrying "source:line: message".
[[noreturn]] void fail(const std::string& source, const Line& line, const std::string& message);

// Reads lines up to the matching "end"; the cursor ends on the "end" line.
std::vector<Line> read_block(const std::vector<Line>& lines, std::size_t& cursor, const std::string& source);

}  // namespace bordcalc::text
