#include "casekit/resilience.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "text_util.hpp"

namespace casekit::resilience {

using detail::LineTokens;
using detail::Token;

char aspect_letter(AspectKind k) {
  switch (k) {
    case AspectKind::Input: return 'I';
    case AspectKind::Output: return 'O';
    case AspectKind::Precondition: return 'P';
    case AspectKind::Resource: return 'R';
    case AspectKind::Control: return 'C';
    case AspectKind::Time: return 'T';
  }
  return 'I';
}

std::optional<AspectKind> aspect_from_letter(const std::string& s) {
  if (s.size() != 1) return std::nullopt;
  switch (s[0]) {
    case 'I': return AspectKind::Input;
    case 'O': return AspectKind::Output;
    case 'P': return AspectKind::Precondition;
    case 'R': return AspectKind::Resource;
    case 'C': return AspectKind::Control;
    case 'T': return AspectKind::Time;
  }
  return std::nullopt;
}

const std::vector<std::string>& FramFunction::ports(AspectKind k) const {
  switch (k) {
    case AspectKind::Input: return inputs;
    case AspectKind::Output: return outputs;
    case AspectKind::Precondition: return preconditions;
    case AspectKind::Resource: return resources;
    case AspectKind::Control: return controls;
    case AspectKind::Time: return times;
  }
  return inputs;
}

std::vector<std::string>& FramFunction::ports(AspectKind k) {
  return const_cast<std::vector<std::string>&>(
      static_cast<const FramFunction&>(*this).ports(k));
}

namespace {

constexpr AspectKind kAllAspects[] = {
    AspectKind::Input,       AspectKind::Output,  AspectKind::Precondition,
    AspectKind::Resource,    AspectKind::Control, AspectKind::Time,
};

const FramFunction* find_function(const FramModel& m, const std::string& id) {
  for (const auto& fn : m.functions) {
    if (fn.id == id) return &fn;
  }
  return nullptr;
}

bool has_port(const FramFunction& fn, AspectKind k, const std::string& name) {
  const auto& v = fn.ports(k);
  return std::find(v.begin(), v.end(), name) != v.end();
}

}  // namespace

std::vector<Diagnostic> validate_fram(const FramModel& model) {
  std::vector<Diagnostic> out;

  for (const auto& fn : model.functions) {
    std::set<std::string> seen;
    for (AspectKind k : kAllAspects) {
      for (const auto& port : fn.ports(k)) {
        if (!seen.insert(port).second) {
          out.push_back({Severity::Error, fn.id, "fram.duplicate-port",
                         "port '" + port + "' declared more than once"});
        }
      }
    }
  }

  // Which output ports feed something, and which non-output ports are fed.
  std::set<std::pair<std::string, std::string>> outputs_used;
  std::set<std::tuple<std::string, AspectKind, std::string>> aspects_fed;
  for (const auto& c : model.couplings) {
    std::string endpoints = c.from_function + "." + c.from_port + " -> " +
                            c.to_function + "." + aspect_letter(c.to_aspect) + "." +
                            c.to_port;
    const FramFunction* from = find_function(model, c.from_function);
    if (!from) {
      out.push_back({Severity::Error, c.from_function, "fram.dangling-endpoint",
                     "coupling " + endpoints + ": function '" + c.from_function +
                         "' does not exist"});
    } else if (!has_port(*from, AspectKind::Output, c.from_port)) {
      out.push_back({Severity::Error, c.from_function, "fram.dangling-endpoint",
                     "coupling " + endpoints + ": '" + c.from_port +
                         "' is not an output of '" + c.from_function + "'"});
    } else {
      outputs_used.insert({c.from_function, c.from_port});
    }
    const FramFunction* to = find_function(model, c.to_function);
    if (!to) {
      out.push_back({Severity::Error, c.to_function, "fram.dangling-endpoint",
                     "coupling " + endpoints + ": function '" + c.to_function +
                         "' does not exist"});
    } else if (!has_port(*to, c.to_aspect, c.to_port)) {
      out.push_back({Severity::Error, c.to_function, "fram.dangling-endpoint",
                     "coupling " + endpoints + ": '" + c.to_function + "' has no " +
                         aspect_letter(c.to_aspect) + (" port '" + c.to_port + "'")});
    } else {
      aspects_fed.insert({c.to_function, c.to_aspect, c.to_port});
    }
    if (from && to && c.from_function == c.to_function &&
        c.to_aspect == AspectKind::Input) {
      out.push_back({Severity::Warning, c.from_function, "fram.self-loop",
                     "coupling " + endpoints + " feeds the function's own input"});
    }
  }

  for (const auto& fn : model.functions) {
    for (const auto& port : fn.outputs) {
      if (!outputs_used.count({fn.id, port})) {
        out.push_back({Severity::Warning, fn.id, "fram.unused-output",
                       "output '" + port + "' is not coupled to anything"});
      }
    }
    // Unfed inputs are fine: they are the service's external triggers.
    for (AspectKind k : {AspectKind::Precondition, AspectKind::Resource,
                         AspectKind::Control, AspectKind::Time}) {
      for (const auto& port : fn.ports(k)) {
        if (!aspects_fed.count({fn.id, k, port})) {
          out.push_back({Severity::Warning, fn.id, "fram.unfed-aspect",
                         std::string(1, aspect_letter(k)) + " port '" + port +
                             "' is never fed by a coupling"});
        }
      }
    }
  }

  sort_diagnostics(out);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct LineReader {
  std::vector<Diagnostic>& diagnostics;
  int line_no = 0;

  void error(int column, const std::string& rule, const std::string& msg) {
    diagnostics.push_back({Severity::Error, "", rule, msg, line_no, column});
  }
};

}  // namespace

ParsedFram parse_fram(std::string_view text) {
  ParsedFram out;
  LineReader r{out.diagnostics};

  struct PortDecl { int line; std::string fn; AspectKind aspect; std::string name; int column; };
  struct CoupleDecl { int line; FramCoupling c; int column; };
  std::vector<PortDecl> ports;
  std::vector<CoupleDecl> couples;

  auto lines = detail::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    r.line_no = static_cast<int>(i) + 1;
    const std::string& line = lines[i];
    if (detail::is_comment_or_blank(line)) continue;
    LineTokens lt = detail::tokenize_line(line);
    if (!lt.error.empty()) {
      r.error(lt.error_column, "fram.syntax", lt.error);
      continue;
    }
    if (lt.tokens.empty()) continue;
    const Token& head = lt.tokens[0];
    const auto& toks = lt.tokens;
    if (head.text == "function") {
      // function <id> "<name>" owner=<label>
      if (toks.size() != 4 || toks[1].quoted || !toks[2].quoted) {
        r.error(head.column, "fram.syntax",
                "expected: function <id> \"<name>\" owner=<label>");
        continue;
      }
      auto kv = detail::split_attr(toks[3].text);
      if (!kv || kv->first != "owner") {
        r.error(toks[3].column, "fram.syntax", "expected owner=<label>");
        continue;
      }
      if (!valid_node_id(toks[1].text)) {
        r.error(toks[1].column, "fram.bad-id",
                "function id '" + toks[1].text + "' is not a valid identifier");
        continue;
      }
      if (find_function(out.model, toks[1].text)) {
        r.error(toks[1].column, "fram.duplicate-id",
                "function '" + toks[1].text + "' declared twice");
        continue;
      }
      FramFunction fn;
      fn.id = toks[1].text;
      fn.name = toks[2].text;
      fn.owner = kv->second;
      out.model.functions.push_back(std::move(fn));
    } else if (head.text == "port") {
      // port <function> <aspect letter> <name>
      if (toks.size() != 4 || toks[1].quoted || toks[2].quoted) {
        r.error(head.column, "fram.syntax", "expected: port <function> <I|O|P|R|C|T> <name>");
        continue;
      }
      auto aspect = aspect_from_letter(toks[2].text);
      if (!aspect) {
        r.error(toks[2].column, "fram.bad-aspect",
                "aspect must be one of I, O, P, R, C, T");
        continue;
      }
      ports.push_back({r.line_no, toks[1].text, *aspect, toks[3].text, toks[1].column});
    } else if (head.text == "couple") {
      // couple <fn>.<output-port> -> <fn>.<aspect>.<port>
      if (toks.size() != 4 || toks[2].text != "->") {
        r.error(head.column, "fram.syntax",
                "expected: couple <fn>.<out> -> <fn>.<aspect>.<port>");
        continue;
      }
      const std::string& from = toks[1].text;
      const std::string& to = toks[3].text;
      std::size_t from_dot = from.rfind('.');
      std::size_t to_last = to.rfind('.');
      std::size_t to_mid = to_last == std::string::npos || to_last == 0
                               ? std::string::npos
                               : to.rfind('.', to_last - 1);
      if (from_dot == std::string::npos || from_dot == 0 ||
          from_dot + 1 == from.size()) {
        r.error(toks[1].column, "fram.syntax",
                "coupling source must be <function>.<output-port>");
        continue;
      }
      if (to_last == std::string::npos || to_mid == std::string::npos ||
          to_mid == 0 || to_last + 1 == to.size()) {
        r.error(toks[3].column, "fram.syntax",
                "coupling target must be <function>.<aspect>.<port>");
        continue;
      }
      auto aspect = aspect_from_letter(to.substr(to_mid + 1, to_last - to_mid - 1));
      if (!aspect || *aspect == AspectKind::Output) {
        r.error(toks[3].column, "fram.bad-aspect",
                "coupling target aspect must be one of I, P, R, C, T");
        continue;
      }
      FramCoupling c;
      c.from_function = from.substr(0, from_dot);
      c.from_port = from.substr(from_dot + 1);
      c.to_function = to.substr(0, to_mid);
      c.to_aspect = *aspect;
      c.to_port = to.substr(to_last + 1);
      couples.push_back({r.line_no, std::move(c), toks[1].column});
    } else {
      r.error(head.column, "fram.unknown-statement",
              "unknown statement '" + head.text + "'");
    }
  }

  // Ports and couplings resolve after the whole file is read, so the
  // statement order is free.
  for (const auto& decl : ports) {
    r.line_no = decl.line;
    auto it = std::find_if(out.model.functions.begin(), out.model.functions.end(),
                           [&](const FramFunction& fn) { return fn.id == decl.fn; });
    if (it == out.model.functions.end()) {
      r.error(decl.column, "fram.unknown-ref",
              "port declared for unknown function '" + decl.fn + "'");
      continue;
    }
    it->ports(decl.aspect).push_back(decl.name);
  }
  for (auto& decl : couples) {
    out.model.couplings.push_back(std::move(decl.c));
  }
  return out;
}

// ---------------------------------------------------------------------------

ParsedCatalogue parse_catalogue(std::string_view text) {
  ParsedCatalogue out;
  LineReader r{out.diagnostics};
  std::set<std::string> ids;
  auto lines = detail::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    r.line_no = static_cast<int>(i) + 1;
    const std::string& line = lines[i];
    if (detail::is_comment_or_blank(line)) continue;
    LineTokens lt = detail::tokenize_line(line);
    if (!lt.error.empty()) {
      r.error(lt.error_column, "catalogue.syntax", lt.error);
      continue;
    }
    if (lt.tokens.empty()) continue;
    const auto& toks = lt.tokens;
    if (toks[0].text != "outcome") {
      r.error(toks[0].column, "catalogue.unknown-statement",
              "unknown statement '" + toks[0].text + "'");
      continue;
    }
    if (toks.size() < 3 || toks[1].quoted || !toks[2].quoted) {
      r.error(toks[0].column, "catalogue.syntax",
              "expected: outcome <id> \"<outcome>\" template=\"<requirement>\"");
      continue;
    }
    CatalogueEntry entry;
    entry.id = toks[1].text;
    entry.outcome_text = toks[2].text;
    bool ok = true;
    bool saw_template = false;
    for (std::size_t t = 3; t < toks.size(); ++t) {
      auto kv = detail::split_attr(toks[t].text);
      if (!kv) {
        r.error(toks[t].column, "catalogue.syntax",
                "expected key=value, got '" + toks[t].text + "'");
        ok = false;
      } else if (kv->first == "template") {
        entry.requirement_template = kv->second;
        saw_template = true;
      } else if (kv->first == "source") {
        if (kv->second == "table") {
          entry.source = CatalogueSource::Table;
        } else if (kv->second == "appendix") {
          entry.source = CatalogueSource::Appendix;
        } else {
          r.error(toks[t].column, "catalogue.bad-attribute",
                  "source must be table or appendix");
          ok = false;
        }
      } else {
        r.error(toks[t].column, "catalogue.bad-attribute",
                "unknown attribute '" + kv->first + "'");
        ok = false;
      }
    }
    if (!saw_template) {
      r.error(toks[0].column, "catalogue.bad-attribute",
              "outcome requires template=\"...\"");
      ok = false;
    }
    if (!valid_node_id(entry.id)) {
      r.error(toks[1].column, "catalogue.bad-id",
              "outcome id '" + entry.id + "' is not a valid identifier");
      ok = false;
    }
    if (ok && !ids.insert(entry.id).second) {
      r.error(toks[1].column, "catalogue.duplicate-id",
              "outcome '" + entry.id + "' declared twice");
      ok = false;
    }
    if (ok) out.entries.push_back(std::move(entry));
  }
  return out;
}

std::vector<OutcomeRequirement> derive_requirements(
    const std::vector<CatalogueEntry>& catalogue, const std::string& service) {
  if (service.empty()) {
    throw std::invalid_argument("service name must not be empty");
  }
  std::vector<OutcomeRequirement> out;
  out.reserve(catalogue.size());
  for (const auto& entry : catalogue) {
    OutcomeRequirement req;
    req.id = entry.id;
    req.outcome_text = entry.outcome_text;
    req.requirement_template = entry.requirement_template;
    req.source = entry.source;
    req.derived_text = entry.requirement_template;
    const std::string placeholder = "{service}";
    std::size_t pos = 0;
    while ((pos = req.derived_text.find(placeholder, pos)) != std::string::npos) {
      req.derived_text.replace(pos, placeholder.size(), service);
      pos += service.size();
    }
    out.push_back(std::move(req));
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

bool valid_spec_id(const std::string& id) {
  if (id.size() < 4 || id.compare(0, 3, "SS-") != 0) return false;
  return id.find_first_not_of("0123456789", 3) == std::string::npos;
}

}  // namespace

ParsedSpecs parse_specs(std::string_view text) {
  ParsedSpecs out;
  LineReader r{out.diagnostics};
  std::set<std::string> ids;
  struct ParentRef { int line; std::string spec; std::string parent; };
  std::vector<ParentRef> parents;
  auto lines = detail::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    r.line_no = static_cast<int>(i) + 1;
    const std::string& line = lines[i];
    if (detail::is_comment_or_blank(line)) continue;
    LineTokens lt = detail::tokenize_line(line);
    if (!lt.error.empty()) {
      r.error(lt.error_column, "specs.syntax", lt.error);
      continue;
    }
    if (lt.tokens.empty()) continue;
    const auto& toks = lt.tokens;
    if (toks[0].text != "spec") {
      r.error(toks[0].column, "specs.unknown-statement",
              "unknown statement '" + toks[0].text + "'");
      continue;
    }
    if (toks.size() < 3 || toks[1].quoted || !toks[2].quoted) {
      r.error(toks[0].column, "specs.syntax",
              "expected: spec <id> \"<text>\" [parent=<id>]");
      continue;
    }
    ServiceSpec spec;
    spec.id = toks[1].text;
    spec.text = toks[2].text;
    bool ok = true;
    for (std::size_t t = 3; t < toks.size(); ++t) {
      auto kv = detail::split_attr(toks[t].text);
      if (!kv || kv->first != "parent") {
        r.error(toks[t].column, "specs.bad-attribute",
                "only parent=<id> may follow the text");
        ok = false;
      } else {
        spec.parent = kv->second;
        parents.push_back({r.line_no, spec.id, kv->second});
      }
    }
    if (!valid_spec_id(spec.id)) {
      r.error(toks[1].column, "specs.bad-id",
              "spec id '" + spec.id + "' must be SS- followed by digits");
      ok = false;
    }
    if (ok && !ids.insert(spec.id).second) {
      r.error(toks[1].column, "specs.duplicate-id",
              "spec '" + spec.id + "' declared twice");
      ok = false;
    }
    if (ok) out.specs.push_back(std::move(spec));
  }
  for (const auto& ref : parents) {
    if (!ids.count(ref.parent)) {
      r.line_no = ref.line;
      r.error(1, "specs.unknown-ref",
              "parent '" + ref.parent + "' of '" + ref.spec + "' is not declared");
    }
  }
  return out;
}

ParsedRecords parse_records(std::string_view text) {
  ParsedRecords out;
  LineReader r{out.diagnostics};
  auto lines = detail::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    r.line_no = static_cast<int>(i) + 1;
    const std::string& line = lines[i];
    if (detail::is_comment_or_blank(line)) continue;
    LineTokens lt = detail::tokenize_line(line);
    if (!lt.error.empty()) {
      r.error(lt.error_column, "records.syntax", lt.error);
      continue;
    }
    if (lt.tokens.empty()) continue;
    const auto& toks = lt.tokens;
    if (toks[0].text != "record") {
      r.error(toks[0].column, "records.unknown-statement",
              "unknown statement '" + toks[0].text + "'");
      continue;
    }
    if (toks.size() < 2 || toks[1].quoted) {
      r.error(toks[0].column, "records.syntax",
              "expected: record <req-id> status=<colour> \"<justification>\"");
      continue;
    }
    VerificationRecord rec;
    rec.requirement = toks[1].text;
    bool ok = true;
    bool saw_status = false, saw_text = false;
    for (std::size_t t = 2; t < toks.size(); ++t) {
      if (toks[t].quoted) {
        if (saw_text) {
          r.error(toks[t].column, "records.syntax", "justification given twice");
          ok = false;
        } else {
          rec.justification = toks[t].text;
          saw_text = true;
        }
        continue;
      }
      auto kv = detail::split_attr(toks[t].text);
      if (!kv) {
        r.error(toks[t].column, "records.syntax",
                "expected key=value, got '" + toks[t].text + "'");
        ok = false;
      } else if (kv->first == "status") {
        auto s = status_from_colour(kv->second);
        if (!s || (*s != Status::Satisfied && *s != Status::Partial &&
                   *s != Status::StandardsAssumed && *s != Status::Deferred)) {
          r.error(toks[t].column, "records.bad-attribute",
                  "status must be green, orange, yellow or red");
          ok = false;
        } else {
          rec.status = *s;
          saw_status = true;
        }
      } else if (kv->first == "revise") {
        if (kv->second == "requirements") {
          rec.revise = ReviseFlag::Requirements;
        } else if (kv->second == "specs") {
          rec.revise = ReviseFlag::Specs;
        } else {
          r.error(toks[t].column, "records.bad-attribute",
                  "revise must be requirements or specs");
          ok = false;
        }
      } else if (kv->first == "specs") {
        for (const auto& ref : detail::split(kv->second, ',')) {
          if (ref.empty()) {
            r.error(toks[t].column, "records.bad-attribute",
                    "specs= must be a comma-separated list of spec ids");
            ok = false;
            break;
          }
          rec.spec_refs.push_back(ref);
        }
      } else {
        r.error(toks[t].column, "records.bad-attribute",
                "unknown attribute '" + kv->first + "'");
        ok = false;
      }
    }
    if (!saw_status) {
      r.error(toks[0].column, "records.bad-attribute", "record requires status=");
      ok = false;
    }
    if (!saw_text) {
      r.error(toks[0].column, "records.syntax",
              "record requires a quoted justification");
      ok = false;
    }
    if (ok) out.records.push_back(std::move(rec));
  }
  return out;
}

// ---------------------------------------------------------------------------

VerificationReport verify(const std::vector<OutcomeRequirement>& requirements,
                          const std::vector<VerificationRecord>& records,
                          const std::optional<std::vector<ServiceSpec>>& specs) {
  VerificationReport report;
  std::map<std::string, std::size_t> row_index;
  for (const auto& req : requirements) {
    row_index.emplace(req.id, report.rows.size());
    report.rows.push_back({req, std::nullopt});
  }

  std::set<std::string> known_specs;
  if (specs) {
    for (const auto& s : *specs) known_specs.insert(s.id);
  }

  for (const auto& rec : records) {
    auto it = row_index.find(rec.requirement);
    if (it == row_index.end()) {
      report.diagnostics.push_back(
          {Severity::Error, rec.requirement, "verify.unknown-requirement",
           "record names unknown requirement '" + rec.requirement + "'"});
      continue;
    }
    RequirementRow& row = report.rows[it->second];
    if (row.record) {
      report.diagnostics.push_back(
          {Severity::Error, rec.requirement, "verify.duplicate-record",
           "requirement '" + rec.requirement + "' has more than one record"});
      continue;
    }
    if (specs) {
      for (const auto& ref : rec.spec_refs) {
        if (!known_specs.count(ref)) {
          report.diagnostics.push_back(
              {Severity::Error, rec.requirement, "verify.unknown-spec",
               "record for '" + rec.requirement + "' cites unknown spec '" + ref + "'"});
        }
      }
    }
    if (rec.status == Status::Satisfied && rec.spec_refs.empty()) {
      report.diagnostics.push_back(
          {Severity::Warning, rec.requirement, "verify.unsupported-satisfaction",
           "requirement '" + rec.requirement +
               "' is marked green without citing any specification"});
    }
    row.record = rec;
  }

  sort_diagnostics(report.diagnostics);
  return report;
}

namespace {

// Texts for intermediate claims the report does not carry itself. The
// argument shape must always reach G0, so missing parents are filled in.
const std::map<std::string, std::string>& standard_texts() {
  static const std::map<std::string, std::string> texts = {
      {"G0", "The Failure Response process view is achieved."},
      {"G1",
       "The provision of the service is continued as much as possible, with the "
       "least possible disruption and damages, in the manner most expedient in "
       "the context."},
      {"G2", "Immediate harms of failures are mitigated."},
      {"G3", "Longer-term harms of failures are mitigated."},
      {"a", "Failure response is prepared."},
      {"b", "Failure response is performed when necessary."},
      {"c", "Failure response is accounted by the accountability achievement "
            "process view."},
      {"d", "The system life cycle is improved based on the experience from "
            "failures by the change accommodation process view."},
  };
  return texts;
}

// The packaged parent mapping: groups a under continuity, b under
// immediate harm, c and d under longer-term harm. Empty = no fixed
// parent (unmapped ids are attached under G0 and reported).
std::string parent_of(const std::string& id) {
  if (id == "G0") return "";
  if (id == "G1" || id == "G2" || id == "G3") return "G0";
  if (id == "a") return "G1";
  if (id == "b") return "G2";
  if (id == "c" || id == "d") return "G3";
  if (id.size() > 1 && (id[0] == 'a' || id[0] == 'b' || id[0] == 'c' || id[0] == 'd')) {
    return std::string(1, id[0]);
  }
  return "?";
}

}  // namespace

EmittedCase emit_case(const VerificationReport& report) {
  EmittedCase out;
  out.graph.title = "Failure response process view";

  std::map<std::string, const RequirementRow*> rows_by_id;
  for (const auto& row : report.rows) rows_by_id.emplace(row.requirement.id, &row);

  std::map<std::string, std::vector<std::string>> children;

  // Creates the claim for `id`, hanging it (and any missing intermediate)
  // under its parent, down to G0.
  std::function<void(const std::string&)> ensure = [&](const std::string& id) {
    if (out.graph.claims.count(id)) return;
    Claim c;
    c.id = id;
    if (auto it = rows_by_id.find(id); it != rows_by_id.end()) {
      const OutcomeRequirement& req = it->second->requirement;
      c.text = !req.derived_text.empty() ? req.derived_text
                                         : (!req.outcome_text.empty() ? req.outcome_text : id);
    } else if (auto st = standard_texts().find(id); st != standard_texts().end()) {
      c.text = st->second;
    } else {
      c.text = id;
    }
    out.graph.claims.emplace(id, std::move(c));
    if (id == "G0") return;
    std::string parent = parent_of(id);
    if (parent == "?") {
      parent = "G0";
      out.unmapped.push_back(id);
    }
    ensure(parent);
    children[parent].push_back(id);
  };

  ensure("G0");
  for (const auto& row : report.rows) ensure(row.requirement.id);

  for (const auto& row : report.rows) {
    if (!row.record) continue;
    const std::string& id = row.requirement.id;
    Evidence ev;
    ev.id = "ev-" + id;
    ev.text = row.record->justification;
    ev.declared = row.record->status;
    out.graph.evidence.emplace(ev.id, std::move(ev));
    Argument arg;
    arg.id = "ei-" + id;
    arg.block = BlockKind::EvidenceIncorporation;
    arg.claim = id;
    arg.supports = {"ev-" + id};
    out.graph.arguments.emplace(arg.id, std::move(arg));
  }

  for (const auto& [parent, kids] : children) {
    Argument arg;
    arg.id = "arg-" + parent;
    arg.block = kids.size() >= 2 ? BlockKind::Decomposition : BlockKind::Concretion;
    arg.claim = parent;
    arg.supports = kids;
    out.graph.arguments.emplace(arg.id, std::move(arg));
  }

  return out;
}

// ---------------------------------------------------------------------------

const char* step_name(WorkflowStep s) {
  switch (s) {
    case WorkflowStep::S1_UnderstandOutcomes: return "S1-understand-outcomes";
    case WorkflowStep::S2_DeriveRequirements: return "S2-derive-requirements";
    case WorkflowStep::S3_Verify: return "S3-verify";
    case WorkflowStep::S4_Evaluate: return "S4-evaluate";
    case WorkflowStep::S5_DevelopAndOperate: return "S5-develop-and-operate";
    case WorkflowStep::S6_ReviseRequirements: return "S6-revise-requirements";
    case WorkflowStep::S7_ReviseSpecs: return "S7-revise-specs";
  }
  return "S1-understand-outcomes";
}

WorkflowStep advance(WorkflowStep step, const VerificationReport& report) {
  switch (step) {
    case WorkflowStep::S1_UnderstandOutcomes: return WorkflowStep::S2_DeriveRequirements;
    case WorkflowStep::S2_DeriveRequirements: return WorkflowStep::S3_Verify;
    case WorkflowStep::S3_Verify: return WorkflowStep::S4_Evaluate;
    case WorkflowStep::S6_ReviseRequirements:
    case WorkflowStep::S7_ReviseSpecs: return WorkflowStep::S3_Verify;
    case WorkflowStep::S5_DevelopAndOperate:
      throw WorkflowError("the flow ends at development and operation; "
                          "nothing follows step 5");
    case WorkflowStep::S4_Evaluate: {
      bool all_accounted = true;
      bool revise_requirements = false;
      for (const auto& row : report.rows) {
        if (!row.record || (row.record->status != Status::Satisfied &&
                            row.record->justification.empty())) {
          all_accounted = false;
        }
        if (row.record && row.record->revise == ReviseFlag::Requirements) {
          revise_requirements = true;
        }
      }
      if (all_accounted) return WorkflowStep::S5_DevelopAndOperate;
      return revise_requirements ? WorkflowStep::S6_ReviseRequirements
                                 : WorkflowStep::S7_ReviseSpecs;
    }
  }
  throw WorkflowError("invalid workflow step");
}

}  // namespace casekit::resilience
