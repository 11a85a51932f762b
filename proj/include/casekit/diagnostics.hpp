#pragma once

#include <algorithm>
#include <string>
#include <vector>

namespace casekit {

enum class Severity { Error, Warning, Info };

const char* severity_name(Severity s);

/// One finding produced by a validator or parser. `node` is the id of the
/// graph node (or statement subject) the finding is about; empty for
/// document-level findings. `line`/`column` are 1-based and 0 when the
/// finding is not tied to source text.
struct Diagnostic {
  Severity severity = Severity::Error;
  std::string node;
  std::string rule;
  std::string message;
  int line = 0;
  int column = 0;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

inline bool has_errors(const std::vector<Diagnostic>& diags) {
  return std::any_of(diags.begin(), diags.end(), [](const Diagnostic& d) {
    return d.severity == Severity::Error;
  });
}

inline std::size_t count_severity(const std::vector<Diagnostic>& diags, Severity s) {
  return static_cast<std::size_t>(
      std::count_if(diags.begin(), diags.end(),
                    [s](const Diagnostic& d) { return d.severity == s; }));
}

/// Canonical ordering used by the graph validators: node id, then rule id.
void sort_diagnostics(std::vector<Diagnostic>& diags);

std::string render_diagnostic(const Diagnostic& d);

}  // namespace casekit
