#pragma once

#include <array>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "casekit/case_graph.hpp"

namespace casekit {

/// Where an effective status came from.
enum class Provenance {
  Declared,          // taken from the node's own status attribute
  RolledUp,          // computed from the node's arguments
  Expanded,          // computed from another case document
  CappedByDefeater,  // an unresolved defeater lowered the result
};

const char* provenance_name(Provenance p);

struct EffectiveStatus {
  Status status = Status::Unevaluated;
  Provenance provenance = Provenance::Declared;

  friend bool operator==(const EffectiveStatus&, const EffectiveStatus&) = default;
};

/// Effective status per claim and evidence id.
using StatusMap = std::map<std::string, EffectiveStatus>;

/// Resolves a claim's expansion path to the parsed document behind it.
/// Implementations throw PropagateError (or any exception) when the path
/// cannot be loaded.
using ExpansionLoader = std::function<CaseGraph(const std::string& path)>;

struct PropagateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Computes effective statuses over a well-formed graph:
///
///  - expanded claims take the status of the expansion document's root
///    claims (their minimum; white when the document has no claims),
///  - claims with arguments take the best (max) of their argument
///    roll-ups, and each argument rolls up as the worst (min) of its
///    supports and side claim,
///  - leaves take their declared status; purple without an expansion and
///    undeclared nodes count as white,
///  - every unresolved defeater then caps its target: an undercut to at
///    most orange, a rebuttal to at most red. Undercutting an argument
///    caps the argument's roll-up before the claim above sees it.
///
/// The graph must be acyclic and reference-closed (check_wellformed finds
/// both); violations surface as PropagateError. Expansion paths are
/// resolved through `load`; a cycle of documents raises PropagateError.
StatusMap propagate(const CaseGraph& g, const ExpansionLoader& load = nullptr);

struct ReportRow {
  std::string id;
  std::string kind;  // "claim" or "evidence"
  std::string text;
  EffectiveStatus effective;
};

struct StatusReport {
  std::vector<ReportRow> rows;               // sorted by id
  std::map<std::string, std::size_t> colour_counts;  // colour keyword -> rows
};

StatusReport build_report(const CaseGraph& g, const StatusMap& statuses);

std::string render_report_text(const StatusReport& report);

/// Graphviz rendering: claims as boxes, evidence as folders, arguments as
/// ellipses labelled with their block type, fill colours from the status
/// colour scheme, defeater attacks as dashed edges labelled with their
/// kind. Output is deterministic, so goldens can be byte-compared.
std::string emit_dot(const CaseGraph& g, const StatusMap& statuses);

}  // namespace casekit
