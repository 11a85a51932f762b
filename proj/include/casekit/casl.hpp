#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "casekit/case_graph.hpp"
#include "casekit/diagnostics.hpp"

namespace casekit::casl {

/// Likelihood record attached to a case document: how probable the
/// evidence is when the claim holds (p_e_h) and when it does not (p_e_nh).
struct Prob {
  std::string evidence;
  std::string given;  // claim id
  double p_e_h = 0.0;
  double p_e_nh = 0.0;
  int line = 0;  // source line, 0 for programmatic records

  friend bool operator==(const Prob& a, const Prob& b) {
    return a.evidence == b.evidence && a.given == b.given &&
           a.p_e_h == b.p_e_h && a.p_e_nh == b.p_e_nh;
  }
};

struct Document {
  CaseGraph graph;
  std::vector<Prob> probs;

  friend bool operator==(const Document&, const Document&) = default;
};

/// Result of parsing one document. Parsing never throws and never stops at
/// the first problem: every line is scanned and every finding is reported
/// with its line and column. Statements with errors are dropped; the rest
/// of the document is still built.
struct ParseResult {
  Document doc;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return !has_errors(diagnostics); }
};

ParseResult parse(std::string_view text);

/// Renders the canonical form: case header first, then claims, evidence,
/// arguments, defeaters and probs, each section sorted by id (probs by
/// evidence id, then claim id). parse(serialize(d)) == d, and serializing
/// an already canonical document reproduces it byte for byte.
///
/// Throws std::invalid_argument when the graph has error-level
/// well-formedness findings or a prob names a missing node; such a
/// document would not survive the round trip.
std::string serialize(const Document& doc);
std::string serialize(const CaseGraph& g, const std::vector<Prob>& probs = {});

}  // namespace casekit::casl
