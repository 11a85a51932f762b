#pragma once

#include <vector>

#include "casekit/case_graph.hpp"
#include "casekit/diagnostics.hpp"

namespace casekit {

/// One entry of the closed block-rule catalogue.
struct BlockRule {
  std::string id;
  BlockKind block;
  std::string summary;
};

/// Every rule validate_blocks can fire, in reporting order. The catalogue
/// is closed: tests enumerate it to prove each rule both fires and stays
/// quiet on conforming input.
const std::vector<BlockRule>& block_rule_catalogue();

/// Checks each argument against the rules of its block type:
///
///   decomposition  two or more supports, all claims
///   substitution   exactly one support, a claim
///   evidence       one or more supports, all evidence
///   concretion     exactly one support, a claim
///   calculation    one or more supports, claims or evidence
///
/// plus, for every block type, a warning when the side claim is missing.
/// A missing side claim is never an error: the inference is merely
/// unconditional on paper. Results are ordered by (argument id, rule id).
///
/// Assumes referenced ids resolve; run check_wellformed first. Supports
/// that do not resolve are skipped here rather than double-reported.
std::vector<Diagnostic> validate_blocks(const CaseGraph& g);

}  // namespace casekit
