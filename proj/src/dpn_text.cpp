#include "casekit/dpn_text.hpp"

#include "casekit/case_graph.hpp"
#include "text_util.hpp"

namespace casekit::dpn {

using detail::LineTokens;
using Tok = detail::Token;

namespace {

struct NetParser {
  ParsedNet result;
  int line_no = 0;

  void error(int column, const std::string& rule, const std::string& msg) {
    result.diagnostics.push_back({Severity::Error, "", rule, msg, line_no, column});
  }

  bool parse_guard(const std::string& text, int column, Guard& out) {
    if (text.empty()) {
      error(column, "dpnl.bad-guard", "empty guard");
      return false;
    }
    for (const auto& atom_text : detail::split(text, '&')) {
      GuardAtom atom;
      std::size_t pos = std::string::npos;
      std::size_t op_len = 2;
      for (const char* two : {"!=", ">=", "<="}) {
        std::size_t p = atom_text.find(two);
        if (p != std::string::npos && p < pos) {
          pos = p;
          atom.op = two[0] == '!' ? CmpOp::Ne : (two[0] == '>' ? CmpOp::Ge : CmpOp::Le);
        }
      }
      if (std::size_t eq = atom_text.find('='); eq != std::string::npos && eq < pos) {
        pos = eq;
        op_len = 1;
        atom.op = CmpOp::Eq;
      }
      if (pos == std::string::npos || pos == 0) {
        error(column, "dpnl.bad-guard",
              "guard atom '" + atom_text + "' must be <key><op><literal>");
        return false;
      }
      atom.key = atom_text.substr(0, pos);
      atom.literal = value_from_text(atom_text.substr(pos + op_len));
      if ((atom.op == CmpOp::Ge || atom.op == CmpOp::Le) &&
          !std::holds_alternative<double>(atom.literal)) {
        error(column, "dpnl.bad-guard",
              "ordering comparison in '" + atom_text + "' needs a numeric literal");
        return false;
      }
      out.atoms.push_back(std::move(atom));
    }
    return true;
  }

  bool parse_transform(const std::string& text, int column, Transform& out) {
    if (text.empty()) return true;  // an empty transform passes tokens through
    for (const auto& edit_text : detail::split(text, '&')) {
      if (edit_text.empty()) {
        error(column, "dpnl.bad-transform", "empty edit in transform");
        return false;
      }
      if (std::size_t eq = edit_text.find('='); eq != std::string::npos) {
        if (eq == 0) {
          error(column, "dpnl.bad-transform", "edit '" + edit_text + "' has no key");
          return false;
        }
        out.edits.push_back(EditSet{edit_text.substr(0, eq),
                                    value_from_text(edit_text.substr(eq + 1))});
      } else if (edit_text[0] == '!') {
        std::string key = edit_text.substr(1);
        if (key.empty()) {
          error(column, "dpnl.bad-transform", "drop edit '!' names no key");
          return false;
        }
        if (key == "artefact") {
          error(column, "dpnl.bad-transform", "the artefact label cannot be dropped");
          return false;
        }
        out.edits.push_back(EditDrop{std::move(key)});
      } else if (std::size_t at = edit_text.find('@'); at != std::string::npos) {
        std::string key = edit_text.substr(0, at);
        std::string idx = edit_text.substr(at + 1);
        if (key.empty() || idx.empty() ||
            idx.find_first_not_of("0123456789") != std::string::npos) {
          error(column, "dpnl.bad-transform",
                "copy edit '" + edit_text + "' must be <key>@<input-number>");
          return false;
        }
        out.edits.push_back(EditCopy{std::move(key),
                                     static_cast<std::size_t>(std::stoul(idx))});
      } else {
        error(column, "dpnl.bad-transform",
              "edit '" + edit_text + "' is neither key=literal, key@N nor !key");
        return false;
      }
    }
    return true;
  }

  void parse_place(const std::vector<Tok>& toks) {
    if (toks.size() < 2 || toks[1].quoted || !valid_node_id_like(toks[1].text)) {
      error(toks[0].column, "dpnl.syntax", "expected: place <id> [view=...] [cond=...]");
      return;
    }
    Place place;
    place.id = toks[1].text;
    bool ok = true;
    for (std::size_t i = 2; i < toks.size(); ++i) {
      auto kv = detail::split_attr(toks[i].text);
      if (!kv) {
        error(toks[i].column, "dpnl.syntax", "expected key=value, got '" + toks[i].text + "'");
        ok = false;
      } else if (kv->first == "view") {
        auto v = view_from_keyword(kv->second);
        if (!v) {
          error(toks[i].column, "dpnl.bad-attribute",
                "unknown process view '" + kv->second + "'");
          ok = false;
        } else {
          place.view = *v;
        }
      } else if (kv->first == "cond") {
        ok = parse_guard(kv->second, toks[i].column, place.condition) && ok;
      } else {
        error(toks[i].column, "dpnl.bad-attribute",
              "unknown attribute '" + kv->first + "' for place");
        ok = false;
      }
    }
    if (!ok) return;
    if (!result.net.places.emplace(place.id, place).second) {
      error(toks[1].column, "dpnl.duplicate-id", "place '" + place.id + "' declared twice");
    }
  }

  void parse_transition(const std::vector<Tok>& toks) {
    if (toks.size() < 2 || toks[1].quoted || !valid_node_id_like(toks[1].text)) {
      error(toks[0].column, "dpnl.syntax",
            "expected: transition <id> stage=\"...\" in=... out=...");
      return;
    }
    Transition t;
    t.id = toks[1].text;
    bool ok = true;
    bool saw_stage = false, saw_in = false;
    for (std::size_t i = 2; i < toks.size(); ++i) {
      auto kv = detail::split_attr(toks[i].text);
      if (!kv) {
        error(toks[i].column, "dpnl.syntax", "expected key=value, got '" + toks[i].text + "'");
        ok = false;
        continue;
      }
      if (kv->first == "stage") {
        t.stage = kv->second;
        saw_stage = true;
      } else if (kv->first == "view") {
        auto v = view_from_keyword(kv->second);
        if (!v) {
          error(toks[i].column, "dpnl.bad-attribute",
                "unknown process view '" + kv->second + "'");
          ok = false;
        } else {
          t.view = *v;
        }
      } else if (kv->first == "in") {
        saw_in = true;
        for (const auto& arc_text : detail::split(kv->second, ',')) {
          InputArc arc;
          std::size_t colon = arc_text.find(':');
          arc.place = arc_text.substr(0, colon);
          if (arc.place.empty()) {
            error(toks[i].column, "dpnl.syntax", "input arc names no place");
            ok = false;
            continue;
          }
          if (colon != std::string::npos) {
            ok = parse_guard(arc_text.substr(colon + 1), toks[i].column, arc.guard) && ok;
          }
          t.inputs.push_back(std::move(arc));
        }
      } else if (kv->first == "out") {
        for (const auto& arc_text : detail::split(kv->second, ',')) {
          OutputArc arc;
          std::size_t colon = arc_text.find(':');
          arc.place = arc_text.substr(0, colon);
          if (arc.place.empty()) {
            error(toks[i].column, "dpnl.syntax", "output arc names no place");
            ok = false;
            continue;
          }
          if (colon != std::string::npos) {
            ok = parse_transform(arc_text.substr(colon + 1), toks[i].column, arc.transform) && ok;
          }
          t.outputs.push_back(std::move(arc));
        }
      } else {
        error(toks[i].column, "dpnl.bad-attribute",
              "unknown attribute '" + kv->first + "' for transition");
        ok = false;
      }
    }
    if (!saw_stage) {
      error(toks[0].column, "dpnl.bad-attribute", "transition requires stage=\"...\"");
      ok = false;
    }
    if (!saw_in || t.inputs.empty()) {
      error(toks[0].column, "dpnl.bad-attribute",
            "transition requires at least one input arc");
      ok = false;
    }
    if (!ok) return;
    if (!result.net.transitions.emplace(t.id, std::move(t)).second) {
      error(toks[1].column, "dpnl.duplicate-id",
            "transition '" + toks[1].text + "' declared twice");
    }
  }

  // Net ids follow the same grammar as case node ids.
  static bool valid_node_id_like(const std::string& id) { return valid_node_id(id); }
};

}  // namespace

ParsedNet parse_net(std::string_view text) {
  NetParser p;
  std::vector<std::pair<int, std::string>> input_decls;
  auto lines = detail::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    p.line_no = static_cast<int>(i) + 1;
    const std::string& line = lines[i];
    if (detail::is_comment_or_blank(line)) continue;
    LineTokens lt = detail::tokenize_line(line);
    if (!lt.error.empty()) {
      p.error(lt.error_column, "dpnl.syntax", lt.error);
      continue;
    }
    if (lt.tokens.empty()) continue;
    const Tok& head = lt.tokens[0];
    if (head.text == "place") {
      p.parse_place(lt.tokens);
    } else if (head.text == "transition") {
      p.parse_transition(lt.tokens);
    } else if (head.text == "input") {
      if (lt.tokens.size() != 2 || lt.tokens[1].quoted) {
        p.error(head.column, "dpnl.syntax", "expected: input <place>");
      } else {
        input_decls.emplace_back(p.line_no, lt.tokens[1].text);
      }
    } else {
      p.error(head.column, "dpnl.unknown-statement",
              "unknown statement '" + head.text + "'");
    }
  }

  // Arc targets and input declarations are resolved once every place is
  // known, so declaration order is free.
  for (const auto& [line, place] : input_decls) {
    p.line_no = line;
    if (!p.result.net.places.count(place)) {
      p.error(1, "dpnl.unknown-ref", "input declares unknown place '" + place + "'");
    } else {
      p.result.net.input_places.insert(place);
    }
  }
  p.line_no = 0;
  for (const auto& [id, t] : p.result.net.transitions) {
    for (const auto& arc : t.inputs) {
      if (!p.result.net.places.count(arc.place)) {
        p.error(0, "dpnl.unknown-ref", "transition '" + id +
                                           "' reads from unknown place '" + arc.place + "'");
      }
    }
    for (const auto& arc : t.outputs) {
      if (!p.result.net.places.count(arc.place)) {
        p.error(0, "dpnl.unknown-ref", "transition '" + id +
                                           "' writes to unknown place '" + arc.place + "'");
      }
      for (const Edit& edit : arc.transform.edits) {
        if (const EditCopy* copy = std::get_if<EditCopy>(&edit)) {
          if (copy->from_input == 0 || copy->from_input > t.inputs.size()) {
            p.error(0, "dpnl.bad-transform",
                    "transition '" + id + "' copies from input token " +
                        std::to_string(copy->from_input) + " but has " +
                        std::to_string(t.inputs.size()) + " input arcs");
          }
        }
      }
    }
  }
  return p.result;
}

ParsedEvents parse_events(std::string_view text) {
  ParsedEvents out;
  auto lines = detail::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    int line_no = static_cast<int>(i) + 1;
    auto error = [&](int column, const std::string& msg) {
      out.diagnostics.push_back({Severity::Error, "", "evl.syntax", msg, line_no, column});
    };
    const std::string& line = lines[i];
    if (detail::is_comment_or_blank(line)) continue;
    LineTokens lt = detail::tokenize_line(line);
    if (!lt.error.empty()) {
      error(lt.error_column, lt.error);
      continue;
    }
    if (lt.tokens.empty()) continue;
    const Tok& head = lt.tokens[0];
    if (head.text == "fire") {
      if (lt.tokens.size() != 2 || lt.tokens[1].quoted) {
        error(head.column, "expected: fire <transition>");
        continue;
      }
      out.events.push_back({Event::Kind::Fire, lt.tokens[1].text, {}});
    } else if (head.text == "inject") {
      if (lt.tokens.size() < 2 || lt.tokens.size() > 3 || lt.tokens[1].quoted) {
        error(head.column, "expected: inject <place> [key=value,...]");
        continue;
      }
      Event ev{Event::Kind::Inject, lt.tokens[1].text, {}};
      ev.payload.artefact = ev.target;  // default label; artefact= overrides
      bool ok = true;
      if (lt.tokens.size() == 3) {
        for (const auto& field : detail::split(lt.tokens[2].text, ',')) {
          std::size_t eq = field.find('=');
          if (eq == std::string::npos || eq == 0) {
            error(lt.tokens[2].column,
                  "payload field '" + field + "' must be key=value");
            ok = false;
            break;
          }
          std::string key = field.substr(0, eq);
          std::string val = field.substr(eq + 1);
          if (key == "artefact") {
            if (val.empty()) {
              error(lt.tokens[2].column, "artefact label must not be empty");
              ok = false;
              break;
            }
            ev.payload.artefact = val;
          } else {
            ev.payload.fields[key] = value_from_text(val);
          }
        }
      }
      if (ok) out.events.push_back(std::move(ev));
    } else {
      error(head.column, "unknown statement '" + head.text + "'");
    }
  }
  return out;
}

}  // namespace casekit::dpn
