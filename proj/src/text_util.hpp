#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Small lexical helpers shared by the line-oriented readers (.casl, .dpnl,
// .evl and the resilience file formats). Internal to the library.
namespace casekit::detail {

std::string trim(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);

/// Splits a document into lines. Accepts LF and CRLF; the returned lines
/// carry neither terminator.
std::vector<std::string> split_lines(std::string_view text);

bool is_comment_or_blank(const std::string& line);

/// Probability literals: digits with an optional fraction part, nothing
/// else. No exponents, signs, inf or nan.
bool decimal_literal(std::string_view s);

/// Renders a probability as the shortest fixed-point decimal that parses
/// back to exactly the same double. "0", "1" and "0.25" stay that short;
/// values that need all 17 significant digits get them.
std::string format_decimal(double v);

std::string quote(std::string_view s);

struct Token {
  std::string text;   // escapes resolved
  int column = 0;     // 1-based
  bool quoted = false;  // true when the token started with a double quote
};

/// Tokenizes one statement line: words separated by blanks, double-quoted
/// strings with \" and \\ escapes. A quote opening mid-word (as in
/// key="some value") keeps the pieces in one token. On a lexical problem
/// the error string is set and tokenization stops at the offending column.
struct LineTokens {
  std::vector<Token> tokens;
  std::string error;
  int error_column = 0;
};

LineTokens tokenize_line(const std::string& line);

/// Splits a word token into key and value at the first '='. Returns
/// nullopt when there is no '='.
std::optional<std::pair<std::string, std::string>> split_attr(const std::string& token);

}  // namespace casekit::detail
