#include "casekit/diagnostics.hpp"

#include <sstream>
#include <tuple>

namespace casekit {

const char* severity_name(Severity s) {
  switch (s) {
    case Severity::Error: return "error";
    case Severity::Warning: return "warning";
    case Severity::Info: return "info";
  }
  return "error";
}

void sort_diagnostics(std::vector<Diagnostic>& diags) {
  std::stable_sort(diags.begin(), diags.end(),
                   [](const Diagnostic& a, const Diagnostic& b) {
                     return std::tie(a.node, a.rule, a.message) <
                            std::tie(b.node, b.rule, b.message);
                   });
}

std::string render_diagnostic(const Diagnostic& d) {
  std::ostringstream out;
  if (d.line > 0) {
    out << d.line << ':' << d.column << ": ";
  }
  out << severity_name(d.severity) << " [" << d.rule << "]";
  if (!d.node.empty()) {
    out << ' ' << d.node << ':';
  }
  out << ' ' << d.message;
  return out.str();
}

}  // namespace casekit
