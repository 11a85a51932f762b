#include <sstream>

#include "casekit/status_engine.hpp"

namespace casekit {

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string fill_for(const StatusMap& statuses, const std::string& id) {
  auto it = statuses.find(id);
  return status_colour(it == statuses.end() ? Status::Unevaluated : it->second.status);
}

}  // namespace

std::string emit_dot(const CaseGraph& g, const StatusMap& statuses) {
  std::ostringstream out;
  out << "digraph assurance_case {\n";
  out << "  rankdir=TB;\n";
  out << "  node [style=filled, fontname=\"Helvetica\"];\n";
  for (const auto& [id, c] : g.claims) {
    out << "  \"" << dot_escape(id) << "\" [shape=box, fillcolor="
        << fill_for(statuses, id) << ", label=\"" << dot_escape(id) << "\\n"
        << dot_escape(c.text) << "\"];\n";
  }
  for (const auto& [id, e] : g.evidence) {
    out << "  \"" << dot_escape(id) << "\" [shape=folder, fillcolor="
        << fill_for(statuses, id) << ", label=\"" << dot_escape(id) << "\\n"
        << dot_escape(e.text) << "\"];\n";
  }
  for (const auto& [id, a] : g.arguments) {
    out << "  \"" << dot_escape(id) << "\" [shape=ellipse, fillcolor=lightgrey, label=\""
        << dot_escape(id) << "\\n" << block_keyword(a.block) << "\"];\n";
  }
  for (const auto& [id, d] : g.defeaters) {
    out << "  \"" << dot_escape(id) << "\" [shape=octagon, fillcolor=mistyrose, label=\""
        << dot_escape(id) << "\\n" << dot_escape(d.text) << "\"];\n";
  }
  for (const auto& [id, a] : g.arguments) {
    out << "  \"" << dot_escape(a.claim) << "\" -> \"" << dot_escape(id) << "\";\n";
    for (const auto& sup : a.supports) {
      out << "  \"" << dot_escape(id) << "\" -> \"" << dot_escape(sup) << "\";\n";
    }
    if (a.side) {
      out << "  \"" << dot_escape(id) << "\" -> \"" << dot_escape(*a.side)
          << "\" [style=dotted, label=\"side\"];\n";
    }
  }
  for (const auto& [id, d] : g.defeaters) {
    out << "  \"" << dot_escape(id) << "\" -> \"" << dot_escape(d.target)
        << "\" [style=dashed, label=\"" << defeater_keyword(d.kind)
        << (d.resolved ? " (resolved)" : "") << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace casekit
