#include "casekit/case_graph.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace casekit {

const char* status_colour(Status s) {
  switch (s) {
    case Status::Unevaluated: return "white";
    case Status::Expanded: return "purple";
    case Status::Satisfied: return "green";
    case Status::Partial: return "orange";
    case Status::StandardsAssumed: return "yellow";
    case Status::Deferred: return "red";
  }
  return "white";
}

std::optional<Status> status_from_colour(const std::string& colour) {
  if (colour == "white") return Status::Unevaluated;
  if (colour == "purple") return Status::Expanded;
  if (colour == "green") return Status::Satisfied;
  if (colour == "orange") return Status::Partial;
  if (colour == "yellow") return Status::StandardsAssumed;
  if (colour == "red") return Status::Deferred;
  return std::nullopt;
}

int status_rank(Status s) {
  switch (s) {
    case Status::Unevaluated: return 0;
    case Status::Deferred: return 1;
    case Status::Partial: return 2;
    case Status::StandardsAssumed: return 3;
    case Status::Satisfied: return 4;
    case Status::Expanded:
      throw std::logic_error("Expanded is not an effective status");
  }
  throw std::logic_error("invalid status");
}

Status min_status(Status a, Status b) {
  return status_rank(a) <= status_rank(b) ? a : b;
}

Status max_status(Status a, Status b) {
  return status_rank(a) >= status_rank(b) ? a : b;
}

bool valid_node_id(const std::string& id) {
  if (id.empty()) return false;
  auto letter = [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z');
  };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!letter(id[0])) return false;
  for (std::size_t i = 1; i < id.size(); ++i) {
    char c = id[i];
    if (!letter(c) && !digit(c) && c != '_' && c != '.' && c != '-') return false;
  }
  return true;
}

const char* block_keyword(BlockKind b) {
  switch (b) {
    case BlockKind::Decomposition: return "decomposition";
    case BlockKind::Substitution: return "substitution";
    case BlockKind::EvidenceIncorporation: return "evidence";
    case BlockKind::Concretion: return "concretion";
    case BlockKind::Calculation: return "calculation";
  }
  return "decomposition";
}

std::optional<BlockKind> block_from_keyword(const std::string& kw) {
  if (kw == "decomposition") return BlockKind::Decomposition;
  if (kw == "substitution") return BlockKind::Substitution;
  if (kw == "evidence") return BlockKind::EvidenceIncorporation;
  if (kw == "concretion") return BlockKind::Concretion;
  if (kw == "calculation") return BlockKind::Calculation;
  return std::nullopt;
}

const char* defeater_keyword(DefeaterKind k) {
  return k == DefeaterKind::Undercut ? "undercut" : "rebut";
}

NodeKind CaseGraph::kind_of(const std::string& id) const {
  if (claims.count(id)) return NodeKind::Claim;
  if (evidence.count(id)) return NodeKind::Evidence;
  if (arguments.count(id)) return NodeKind::Argument;
  if (defeaters.count(id)) return NodeKind::Defeater;
  return NodeKind::None;
}

std::vector<std::string> CaseGraph::arguments_for(const std::string& claim_id) const {
  std::vector<std::string> out;
  for (const auto& [id, arg] : arguments) {
    if (arg.claim == claim_id) out.push_back(id);
  }
  return out;
}

std::vector<std::string> CaseGraph::root_claims() const {
  std::set<std::string> referenced;
  for (const auto& [id, arg] : arguments) {
    for (const auto& s : arg.supports) referenced.insert(s);
    if (arg.side) referenced.insert(*arg.side);
  }
  std::vector<std::string> out;
  for (const auto& [id, claim] : claims) {
    if (!referenced.count(id)) out.push_back(id);
  }
  return out;
}

namespace {

void check_id(const std::string& id, const char* what, std::vector<Diagnostic>& out) {
  if (!valid_node_id(id)) {
    out.push_back({Severity::Error, id, "core.id-syntax",
                   std::string(what) + " id '" + id +
                       "' must be a letter followed by letters, digits, '_', '.' or '-'"});
  }
}

// The support relation walked by roll-up: claim -> every support and side
// claim of each of its arguments. A cycle here would make roll-up circular.
struct CycleFinder {
  const CaseGraph& g;
  std::vector<Diagnostic>& out;
  // 0 = unvisited, 1 = on the current path, 2 = done
  std::map<std::string, int> colour;
  std::vector<std::string> path;
  std::set<std::string> reported;

  void visit(const std::string& id) {
    colour[id] = 1;
    path.push_back(id);
    auto it = g.claims.find(id);
    if (it != g.claims.end()) {
      for (const auto& arg_id : g.arguments_for(id)) {
        const Argument& arg = g.arguments.at(arg_id);
        std::vector<std::string> next = arg.supports;
        if (arg.side) next.push_back(*arg.side);
        for (const auto& child : next) {
          if (!g.claims.count(child)) continue;  // evidence never has children
          int c = colour[child];
          if (c == 1) {
            report(child);
          } else if (c == 0) {
            visit(child);
          }
        }
      }
    }
    path.pop_back();
    colour[id] = 2;
  }

  void report(const std::string& entry) {
    if (!reported.insert(entry).second) return;
    std::ostringstream msg;
    msg << "support relation is circular: ";
    auto start = std::find(path.begin(), path.end(), entry);
    for (auto it = start; it != path.end(); ++it) msg << *it << " -> ";
    msg << entry;
    out.push_back({Severity::Error, entry, "core.cycle", msg.str()});
  }
};

}  // namespace

std::vector<Diagnostic> check_wellformed(const CaseGraph& g) {
  std::vector<Diagnostic> out;

  for (const auto& [id, c] : g.claims) {
    check_id(id, "claim", out);
    if (c.text.empty()) {
      out.push_back({Severity::Error, id, "core.empty-text", "claim text is empty"});
    }
  }
  for (const auto& [id, e] : g.evidence) check_id(id, "evidence", out);
  for (const auto& [id, a] : g.arguments) check_id(id, "argument", out);
  for (const auto& [id, d] : g.defeaters) check_id(id, "defeater", out);

  // One id must name at most one node, across all four kinds.
  {
    std::map<std::string, std::vector<const char*>> uses;
    for (const auto& [id, n] : g.claims) uses[id].push_back("claim");
    for (const auto& [id, n] : g.evidence) uses[id].push_back("evidence");
    for (const auto& [id, n] : g.arguments) uses[id].push_back("argument");
    for (const auto& [id, n] : g.defeaters) uses[id].push_back("defeater");
    for (const auto& [id, kinds] : uses) {
      if (kinds.size() < 2) continue;
      std::ostringstream msg;
      msg << "id names " << kinds.size() << " nodes:";
      for (const char* k : kinds) msg << ' ' << k;
      out.push_back({Severity::Error, id, "core.duplicate-id", msg.str()});
    }
  }

  auto kind_name = [](NodeKind k) {
    switch (k) {
      case NodeKind::Claim: return "claim";
      case NodeKind::Evidence: return "evidence";
      case NodeKind::Argument: return "argument";
      case NodeKind::Defeater: return "defeater";
      case NodeKind::None: return "nothing";
    }
    return "nothing";
  };

  for (const auto& [id, arg] : g.arguments) {
    auto ref = [&](const std::string& target, const char* role, bool claim_only) {
      NodeKind k = g.kind_of(target);
      if (k == NodeKind::None) {
        out.push_back({Severity::Error, id, "core.dangling-ref",
                       std::string(role) + " '" + target + "' does not exist"});
        return;
      }
      bool ok = claim_only ? k == NodeKind::Claim
                           : (k == NodeKind::Claim || k == NodeKind::Evidence);
      if (!ok) {
        out.push_back({Severity::Error, id, "core.ref-kind",
                       std::string(role) + " '" + target + "' is a " + kind_name(k) +
                           (claim_only ? "; only claims are allowed"
                                       : "; only claims or evidence are allowed")});
      }
    };
    ref(arg.claim, "concluded claim", true);
    if (arg.supports.empty()) {
      out.push_back({Severity::Error, id, "core.no-supports",
                     "argument has no supporting nodes"});
    }
    for (const auto& s : arg.supports) ref(s, "support", false);
    if (arg.side) ref(*arg.side, "side claim", true);
  }

  for (const auto& [id, d] : g.defeaters) {
    NodeKind k = g.kind_of(d.target);
    if (k == NodeKind::None) {
      out.push_back({Severity::Error, id, "core.dangling-ref",
                     "defeater target '" + d.target + "' does not exist"});
    } else if (k == NodeKind::Defeater) {
      out.push_back({Severity::Error, id, "core.ref-kind",
                     "defeater target '" + d.target +
                         "' is a defeater; claims, evidence and arguments can be attacked"});
    }
  }

  for (const auto& [id, c] : g.claims) {
    bool supported = !g.arguments_for(id).empty();
    bool expands = c.expands.has_value();
    if (c.declared && (supported || expands) && *c.declared != Status::Expanded) {
      out.push_back({Severity::Warning, id, "core.status-on-supported-claim",
                     "declared status is ignored because the claim is " +
                         std::string(expands ? "expanded elsewhere" : "supported by an argument")});
    }
    if (c.declared == Status::Expanded && !expands) {
      out.push_back({Severity::Warning, id, "core.purple-no-expansion",
                     "claim is marked purple but names no case document to expand; "
                     "treated as white"});
    }
    if (!supported && !expands) {
      out.push_back({Severity::Info, id, "core.assumption",
                     "claim is asserted without justification (assumption)"});
    }
  }
  for (const auto& [id, e] : g.evidence) {
    if (e.declared == Status::Expanded) {
      out.push_back({Severity::Warning, id, "core.purple-no-expansion",
                     "evidence cannot expand to another document; purple is "
                     "treated as white"});
    }
  }

  {
    CycleFinder finder{g, out, {}, {}, {}};
    for (const auto& [id, c] : g.claims) {
      if (finder.colour[id] == 0) finder.visit(id);
    }
  }

  sort_diagnostics(out);
  return out;
}

}  // namespace casekit
