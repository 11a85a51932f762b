#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "casekit/diagnostics.hpp"

namespace casekit {

/// Evaluation status of a claim or evidence node, following the GSN editor
/// colour scheme. The colours form a confidence order used by roll-up:
///
///   white < red < orange < yellow < green
///
/// Expanded (purple) is a presentation marker, not a confidence level: a
/// purple claim delegates its status to another case document and never
/// appears as an effective status.
enum class Status {
  Unevaluated,      // white
  Expanded,         // purple
  Satisfied,        // green
  Partial,          // orange
  StandardsAssumed, // yellow
  Deferred,         // red
};

const char* status_colour(Status s);
std::optional<Status> status_from_colour(const std::string& colour);

/// Confidence rank within the roll-up lattice. Expanded has no rank; asking
/// for one is a programming error and throws std::logic_error.
int status_rank(Status s);
Status min_status(Status a, Status b);
Status max_status(Status a, Status b);

/// Node and argument identifiers: a letter followed by letters, digits,
/// '_', '.' or '-'.
bool valid_node_id(const std::string& id);

enum class BlockKind {
  Decomposition,
  Substitution,
  EvidenceIncorporation,
  Concretion,
  Calculation,
};

const char* block_keyword(BlockKind b);
std::optional<BlockKind> block_from_keyword(const std::string& kw);

enum class DefeaterKind { Undercut, Rebuttal };

const char* defeater_keyword(DefeaterKind k);

struct Claim {
  std::string id;
  std::string text;
  std::optional<Status> declared;
  /// Path of another case document this claim delegates to.
  std::optional<std::string> expands;

  friend bool operator==(const Claim&, const Claim&) = default;
};

struct Evidence {
  std::string id;
  std::string text;
  std::optional<Status> declared;

  friend bool operator==(const Evidence&, const Evidence&) = default;
};

/// An argument applies one block type to conclude `claim` from `supports`.
/// The optional side claim states the assumption under which the inference
/// holds; omitting it is legal but flagged as a warning by the block rules.
struct Argument {
  std::string id;
  BlockKind block = BlockKind::Decomposition;
  std::string claim;
  std::vector<std::string> supports;  // claim or evidence ids, order kept
  std::optional<std::string> side;

  friend bool operator==(const Argument&, const Argument&) = default;
};

struct Defeater {
  std::string id;
  DefeaterKind kind = DefeaterKind::Undercut;
  /// A claim, evidence or argument id. Undercutting a claim or evidence
  /// caps that node; undercutting an argument caps the inference itself.
  std::string target;
  std::string text;
  bool resolved = false;

  friend bool operator==(const Defeater&, const Defeater&) = default;
};

enum class NodeKind { None, Claim, Evidence, Argument, Defeater };

/// In-memory assurance case. Maps are keyed by id, so iteration is already
/// in canonical order. The structure itself does not enforce well-formedness;
/// call check_wellformed for that.
struct CaseGraph {
  std::string title;
  std::map<std::string, Claim> claims;
  std::map<std::string, Evidence> evidence;
  std::map<std::string, Argument> arguments;
  std::map<std::string, Defeater> defeaters;

  NodeKind kind_of(const std::string& id) const;

  /// Ids of arguments whose concluded claim is `claim_id`, sorted.
  std::vector<std::string> arguments_for(const std::string& claim_id) const;

  /// Claims that no argument uses as support or side claim. These are the
  /// conclusions the case exists to establish.
  std::vector<std::string> root_claims() const;

  friend bool operator==(const CaseGraph&, const CaseGraph&) = default;
};

/// Structural validation. Reports, in (node id, rule id) order:
///   errors   core.id-syntax          malformed identifier
///            core.duplicate-id      one id naming nodes of two kinds
///            core.empty-text        claim with empty text
///            core.dangling-ref      reference to a missing id
///            core.ref-kind          reference to a node of the wrong kind
///            core.no-supports       argument with an empty support list
///            core.cycle             support relation is cyclic
///   warnings core.status-on-supported-claim
///                                   declared status on a claim that also
///                                   has arguments or an expansion
///            core.purple-no-expansion
///                                   purple declared without an expansion
///                                   target (treated as white)
///   info     core.assumption        claim with no argument and no
///                                   expansion, i.e. asserted as true
std::vector<Diagnostic> check_wellformed(const CaseGraph& g);

}  // namespace casekit
