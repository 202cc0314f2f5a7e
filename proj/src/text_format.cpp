#include "bordcalc/text_format.hpp"

#include <sstream>

#include "bordcalc/errors.hpp"

namespace bordcalc::text {

std::string trim(const std::string& s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<Line> read_lines(const std::string& document) {
  std::vector<Line> out;
  std::istringstream in(document);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    auto t = trim(raw);
    if (!t.empty()) out.push_back({number, t});
  }
  return out;
}

std::vector<std::string> split_words(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

std::vector<std::string> split(const std::string& s, const std::string& sep) {
  std::vector<std::string> out;
  if (trim(s).empty()) return out;
  std::size_t start = 0;
  for (;;) {
    auto at = s.find(sep, start);
    out.push_back(trim(s.substr(start, at == std::string::npos ? std::string::npos : at - start)));
    if (at == std::string::npos) break;
    start = at + sep.size();
  }
  return out;
}

std::pair<std::string, std::optional<std::string>> split_colon(const std::string& s) {
  auto at = s.find(" : ");
  if (at != std::string::npos) return {trim(s.substr(0, at)), trim(s.substr(at + 3))};
  if (s.size() >= 2 && s.compare(s.size() - 2, 2, " :") == 0) return {trim(s.substr(0, s.size() - 2)), std::string()};
  return {trim(s), std::nullopt};
}

bool starts_with(const std::string& s, const std::string& prefix) { return s.compare(0, prefix.size(), prefix) == 0; }

int parse_int(const std::string& token, const std::string& what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(token, &used);
    if (used != token.size()) throw InputError("");
    return v;
  } catch (const std::exception&) {
    throw InputError("expected an integer for " + what + ", got '" + token + "'");
  }
}

void fail(const std::string& source, const Line& line, const std::string& message) {
  throw InputError(source + ":" + std::to_string(line.number) + ": " + message);
}

std::vector<Line> read_block(const std::vector<Line>& lines, std::size_t& cursor, const std::string& source) {
  const Line& open = lines[cursor];
  std::vector<Line> body;
  for (++cursor; cursor < lines.size(); ++cursor) {
    if (lines[cursor].text == "end") return body;
    body.push_back(lines[cursor]);
  }
  fail(source, open, "block is missing its 'end'");
}

}  // namespace bordcalc::text
