#include "text_util.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace casekit::detail {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t')) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(s.substr(start));
      return out;
    }
    out.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t pos = text.find('\n', start);
    std::string_view line;
    if (pos == std::string_view::npos) {
      line = text.substr(start);
      start = text.size() + 1;
      if (line.empty()) break;  // no trailing empty line after a final LF
    } else {
      line = text.substr(start, pos - start);
      start = pos + 1;
    }
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.emplace_back(line);
  }
  return out;
}

bool is_comment_or_blank(const std::string& line) {
  std::size_t i = 0;
  while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
  return i == line.size() || line[i] == '#';
}

bool decimal_literal(std::string_view s) {
  std::size_t i = 0;
  if (i == s.size() || s[i] < '0' || s[i] > '9') return false;
  while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
  if (i == s.size()) return true;
  if (s[i] != '.') return false;
  ++i;
  if (i == s.size()) return false;
  while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
  return i == s.size();
}

std::string format_decimal(double v) {
  char buf[512];
  for (int prec = 0; prec <= 340; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*f", prec, v);
    if (std::strtod(buf, nullptr) == v) {
      std::string s(buf);
      if (s.find('.') != std::string::npos) {
        std::size_t last = s.find_last_not_of('0');
        if (s[last] == '.') --last;
        s.erase(last + 1);
      }
      return s;
    }
  }
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quote(std::string_view s) {
  std::string out;
  out.reserve(s.size() + 2);
  out.push_back('"');
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

LineTokens tokenize_line(const std::string& line) {
  LineTokens out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == ' ' || line[i] == '\t') {
      ++i;
      continue;
    }
    Token tok;
    tok.column = static_cast<int>(i) + 1;
    tok.quoted = line[i] == '"';
    bool in_quotes = false;
    while (i < line.size()) {
      char c = line[i];
      if (in_quotes) {
        if (c == '\\') {
          if (i + 1 >= line.size() || (line[i + 1] != '"' && line[i + 1] != '\\')) {
            out.error = "invalid escape; only \\\" and \\\\ are recognised";
            out.error_column = static_cast<int>(i) + 1;
            return out;
          }
          tok.text.push_back(line[i + 1]);
          i += 2;
        } else if (c == '"') {
          in_quotes = false;
          ++i;
        } else {
          tok.text.push_back(c);
          ++i;
        }
      } else if (c == '"') {
        in_quotes = true;
        ++i;
      } else if (c == ' ' || c == '\t') {
        break;
      } else {
        tok.text.push_back(c);
        ++i;
      }
    }
    if (in_quotes) {
      out.error = "unterminated string";
      out.error_column = tok.column;
      return out;
    }
    out.tokens.push_back(std::move(tok));
  }
  return out;
}

std::optional<std::pair<std::string, std::string>> split_attr(const std::string& token) {
  std::size_t pos = token.find('=');
  if (pos == std::string::npos) return std::nullopt;
  return std::make_pair(token.substr(0, pos), token.substr(pos + 1));
}

}  // namespace casekit::detail
