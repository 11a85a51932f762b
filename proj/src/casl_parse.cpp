#include <cstdlib>
#include <map>
#include <set>

#include "casekit/casl.hpp"
#include "text_util.hpp"

namespace casekit::casl {

using detail::LineTokens;
using detail::Token;

namespace {

// Per-statement scratch state. Keeps the parse loop readable: each
// statement handler pulls what it needs and records problems against the
// current line without aborting the pass.
struct Parser {
  ParseResult result;
  bool saw_case_header = false;
  int line_no = 0;

  void error(int column, const std::string& rule, const std::string& msg,
             const std::string& node = "") {
    result.diagnostics.push_back({Severity::Error, node, rule, msg, line_no, column});
  }

  bool id_taken(const std::string& id) {
    return result.doc.graph.kind_of(id) != NodeKind::None;
  }

  // Returns false (and reports) when the id cannot be introduced.
  bool introduce(const Token& tok, const char* what) {
    if (!valid_node_id(tok.text)) {
      error(tok.column, "dsl.bad-id",
            std::string(what) + " id '" + tok.text +
                "' must be a letter followed by letters, digits, '_', '.' or '-'");
      return false;
    }
    if (id_taken(tok.text)) {
      error(tok.column, "dsl.duplicate-id",
            "id '" + tok.text + "' is already in use", tok.text);
      return false;
    }
    return true;
  }
};

struct Attrs {
  std::map<std::string, Token> values;
  bool ok = true;
};

// Everything after the fixed positional tokens must be key=value.
Attrs collect_attrs(Parser& p, const std::vector<Token>& toks, std::size_t first,
                    const std::set<std::string>& allowed, const char* what) {
  Attrs out;
  for (std::size_t i = first; i < toks.size(); ++i) {
    const Token& t = toks[i];
    auto kv = detail::split_attr(t.text);
    if (t.quoted || !kv) {
      p.error(t.column, "dsl.syntax",
              "expected key=value after the " + std::string(what) + " header, got '" +
                  t.text + "'");
      out.ok = false;
      continue;
    }
    if (!allowed.count(kv->first)) {
      p.error(t.column, "dsl.bad-attribute",
              "unknown attribute '" + kv->first + "' for " + what);
      out.ok = false;
      continue;
    }
    if (out.values.count(kv->first)) {
      p.error(t.column, "dsl.bad-attribute",
              "attribute '" + kv->first + "' given twice");
      out.ok = false;
      continue;
    }
    Token val = t;
    val.text = kv->second;
    val.column = t.column + static_cast<int>(kv->first.size()) + 1;
    out.values.emplace(kv->first, std::move(val));
  }
  return out;
}

std::optional<Status> parse_status(Parser& p, const Token& tok) {
  auto s = status_from_colour(tok.text);
  if (!s) {
    p.error(tok.column, "dsl.bad-attribute",
            "unknown status colour '" + tok.text +
                "'; expected white, purple, green, orange, yellow or red");
  }
  return s;
}

// claim <id> "<text>" [status=<colour>] [expands=<path>]
void parse_claim(Parser& p, const std::vector<Token>& toks) {
  if (toks.size() < 3 || toks[1].quoted || !toks[2].quoted) {
    p.error(toks[0].column, "dsl.syntax", "expected: claim <id> \"<text>\" [attributes]");
    return;
  }
  Attrs attrs = collect_attrs(p, toks, 3, {"status", "expands"}, "claim");
  Claim c;
  c.id = toks[1].text;
  c.text = toks[2].text;
  bool ok = attrs.ok;
  if (auto it = attrs.values.find("status"); it != attrs.values.end()) {
    auto s = parse_status(p, it->second);
    if (s) c.declared = *s; else ok = false;
  }
  if (auto it = attrs.values.find("expands"); it != attrs.values.end()) {
    c.expands = it->second.text;
  }
  if (!p.introduce(toks[1], "claim") || !ok) return;
  p.result.doc.graph.claims.emplace(c.id, std::move(c));
}

// evidence <id> "<text>" [status=<colour>]
void parse_evidence(Parser& p, const std::vector<Token>& toks) {
  if (toks.size() < 3 || toks[1].quoted || !toks[2].quoted) {
    p.error(toks[0].column, "dsl.syntax", "expected: evidence <id> \"<text>\" [attributes]");
    return;
  }
  Attrs attrs = collect_attrs(p, toks, 3, {"status"}, "evidence");
  Evidence e;
  e.id = toks[1].text;
  e.text = toks[2].text;
  bool ok = attrs.ok;
  if (auto it = attrs.values.find("status"); it != attrs.values.end()) {
    auto s = parse_status(p, it->second);
    if (s) e.declared = *s; else ok = false;
  }
  if (!p.introduce(toks[1], "evidence") || !ok) return;
  p.result.doc.graph.evidence.emplace(e.id, std::move(e));
}

// argument <id> block=<kind> claim=<id> from=<id>[,<id>...] [side=<id>]
void parse_argument(Parser& p, const std::vector<Token>& toks) {
  if (toks.size() < 2 || toks[1].quoted) {
    p.error(toks[0].column, "dsl.syntax", "expected: argument <id> block=... claim=... from=...");
    return;
  }
  Attrs attrs = collect_attrs(p, toks, 2, {"block", "claim", "from", "side"}, "argument");
  bool ok = attrs.ok;
  Argument a;
  a.id = toks[1].text;
  for (const char* req : {"block", "claim", "from"}) {
    if (!attrs.values.count(req)) {
      p.error(toks[0].column, "dsl.bad-attribute",
              std::string("argument requires ") + req + "=");
      ok = false;
    }
  }
  if (auto it = attrs.values.find("block"); it != attrs.values.end()) {
    auto b = block_from_keyword(it->second.text);
    if (!b) {
      p.error(it->second.column, "dsl.bad-attribute",
              "unknown block '" + it->second.text +
                  "'; expected decomposition, substitution, evidence, concretion or calculation");
      ok = false;
    } else {
      a.block = *b;
    }
  }
  if (auto it = attrs.values.find("claim"); it != attrs.values.end()) {
    a.claim = it->second.text;
  }
  if (auto it = attrs.values.find("from"); it != attrs.values.end()) {
    for (const auto& part : detail::split(it->second.text, ',')) {
      if (part.empty()) {
        p.error(it->second.column, "dsl.bad-attribute",
                "from= must be a comma-separated list of ids");
        ok = false;
        break;
      }
      a.supports.push_back(part);
    }
    if (a.supports.empty()) {
      p.error(it->second.column, "dsl.bad-attribute", "from= lists no supports");
      ok = false;
    }
  }
  if (auto it = attrs.values.find("side"); it != attrs.values.end()) {
    a.side = it->second.text;
  }
  if (!p.introduce(toks[1], "argument") || !ok) return;
  p.result.doc.graph.arguments.emplace(a.id, std::move(a));
}

// defeater <id> kind=<undercut|rebut> target=<id> "<text>" [resolved=<bool>]
void parse_defeater(Parser& p, const std::vector<Token>& toks) {
  if (toks.size() < 2 || toks[1].quoted) {
    p.error(toks[0].column, "dsl.syntax", "expected: defeater <id> kind=... target=... \"<text>\"");
    return;
  }
  Defeater d;
  d.id = toks[1].text;
  bool ok = true;
  bool have_text = false;
  std::vector<Token> attr_toks{toks[0], toks[1]};
  for (std::size_t i = 2; i < toks.size(); ++i) {
    if (toks[i].quoted && !have_text) {
      d.text = toks[i].text;
      have_text = true;
    } else {
      attr_toks.push_back(toks[i]);
    }
  }
  if (!have_text) {
    p.error(toks[0].column, "dsl.syntax", "defeater needs a quoted description");
    ok = false;
  }
  Attrs attrs = collect_attrs(p, attr_toks, 2, {"kind", "target", "resolved"}, "defeater");
  ok = ok && attrs.ok;
  for (const char* req : {"kind", "target"}) {
    if (!attrs.values.count(req)) {
      p.error(toks[0].column, "dsl.bad-attribute",
              std::string("defeater requires ") + req + "=");
      ok = false;
    }
  }
  if (auto it = attrs.values.find("kind"); it != attrs.values.end()) {
    if (it->second.text == "undercut") {
      d.kind = DefeaterKind::Undercut;
    } else if (it->second.text == "rebut") {
      d.kind = DefeaterKind::Rebuttal;
    } else {
      p.error(it->second.column, "dsl.bad-attribute",
              "unknown kind '" + it->second.text + "'; expected undercut or rebut");
      ok = false;
    }
  }
  if (auto it = attrs.values.find("target"); it != attrs.values.end()) {
    d.target = it->second.text;
  }
  if (auto it = attrs.values.find("resolved"); it != attrs.values.end()) {
    if (it->second.text == "true") {
      d.resolved = true;
    } else if (it->second.text == "false") {
      d.resolved = false;
    } else {
      p.error(it->second.column, "dsl.bad-attribute",
              "resolved= must be true or false");
      ok = false;
    }
  }
  if (!p.introduce(toks[1], "defeater") || !ok) return;
  p.result.doc.graph.defeaters.emplace(d.id, std::move(d));
}

// prob <evidence-id> given=<claim-id> p_e_h=<float> p_e_nh=<float>
void parse_prob(Parser& p, const std::vector<Token>& toks) {
  if (toks.size() < 2 || toks[1].quoted) {
    p.error(toks[0].column, "dsl.syntax",
            "expected: prob <evidence-id> given=<claim-id> p_e_h=<p> p_e_nh=<p>");
    return;
  }
  Attrs attrs = collect_attrs(p, toks, 2, {"given", "p_e_h", "p_e_nh"}, "prob");
  bool ok = attrs.ok;
  Prob pr;
  pr.evidence = toks[1].text;
  pr.line = p.line_no;
  for (const char* req : {"given", "p_e_h", "p_e_nh"}) {
    if (!attrs.values.count(req)) {
      p.error(toks[0].column, "dsl.bad-attribute",
              std::string("prob requires ") + req + "=");
      ok = false;
    }
  }
  if (auto it = attrs.values.find("given"); it != attrs.values.end()) {
    pr.given = it->second.text;
  }
  auto number = [&](const char* key, double& out_value) {
    auto it = attrs.values.find(key);
    if (it == attrs.values.end()) return;
    const Token& t = it->second;
    if (!detail::decimal_literal(t.text)) {
      p.error(t.column, "dsl.bad-number",
              std::string(key) + " must be a plain decimal such as 0.9");
      ok = false;
      return;
    }
    double v = std::strtod(t.text.c_str(), nullptr);
    if (v > 1.0) {
      p.error(t.column, "dsl.bad-number",
              std::string(key) + " must lie in [0,1], got " + t.text);
      ok = false;
      return;
    }
    out_value = v;
  };
  number("p_e_h", pr.p_e_h);
  number("p_e_nh", pr.p_e_nh);
  if (!ok) return;
  p.result.doc.probs.push_back(std::move(pr));
}

// case "<title>"
void parse_case_header(Parser& p, const std::vector<Token>& toks) {
  if (toks.size() != 2 || !toks[1].quoted) {
    p.error(toks[0].column, "dsl.syntax", "expected: case \"<title>\"");
    return;
  }
  if (p.saw_case_header) {
    p.error(toks[0].column, "dsl.duplicate-case", "document already has a case header");
    return;
  }
  p.saw_case_header = true;
  p.result.doc.graph.title = toks[1].text;
}

}  // namespace

ParseResult parse(std::string_view text) {
  Parser p;
  auto lines = detail::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    p.line_no = static_cast<int>(i) + 1;
    const std::string& line = lines[i];
    if (detail::is_comment_or_blank(line)) continue;
    LineTokens lt = detail::tokenize_line(line);
    if (!lt.error.empty()) {
      p.error(lt.error_column, "dsl.syntax", lt.error);
      continue;
    }
    if (lt.tokens.empty()) continue;
    const Token& head = lt.tokens[0];
    if (head.quoted) {
      p.error(head.column, "dsl.syntax", "statement must start with a keyword");
      continue;
    }
    if (head.text == "case") parse_case_header(p, lt.tokens);
    else if (head.text == "claim") parse_claim(p, lt.tokens);
    else if (head.text == "evidence") parse_evidence(p, lt.tokens);
    else if (head.text == "argument") parse_argument(p, lt.tokens);
    else if (head.text == "defeater") parse_defeater(p, lt.tokens);
    else if (head.text == "prob") parse_prob(p, lt.tokens);
    else {
      p.error(head.column, "dsl.unknown-statement",
              "unknown statement '" + head.text + "'");
    }
  }

  // Likelihood records are resolved once the whole document is known, so a
  // prob may precede the nodes it names.
  std::set<std::pair<std::string, std::string>> seen;
  std::vector<Prob> kept;
  for (const Prob& pr : p.result.doc.probs) {
    p.line_no = pr.line;
    bool ok = true;
    if (p.result.doc.graph.kind_of(pr.evidence) != NodeKind::Evidence) {
      p.error(1, "dsl.unknown-ref",
              "prob names unknown evidence '" + pr.evidence + "'", pr.evidence);
      ok = false;
    }
    if (p.result.doc.graph.kind_of(pr.given) != NodeKind::Claim) {
      p.error(1, "dsl.unknown-ref",
              "prob names unknown claim '" + pr.given + "'", pr.given);
      ok = false;
    }
    if (ok && !seen.insert({pr.evidence, pr.given}).second) {
      p.error(1, "dsl.duplicate-prob",
              "prob for evidence '" + pr.evidence + "' given claim '" + pr.given +
                  "' appears twice",
              pr.evidence);
      ok = false;
    }
    if (ok) kept.push_back(pr);
  }
  p.result.doc.probs = std::move(kept);
  return p.result;
}

}  // namespace casekit::casl
