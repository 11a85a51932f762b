#include "casekit/block_rules.hpp"

#include <sstream>

namespace casekit {

const std::vector<BlockRule>& block_rule_catalogue() {
  static const std::vector<BlockRule> rules = {
      {"block.decomposition.arity", BlockKind::Decomposition,
       "a decomposition splits its claim into two or more sub-claims"},
      {"block.decomposition.support-kind", BlockKind::Decomposition,
       "every support of a decomposition is a claim"},
      {"block.substitution.arity", BlockKind::Substitution,
       "a substitution replaces its claim with exactly one other claim"},
      {"block.substitution.support-kind", BlockKind::Substitution,
       "the support of a substitution is a claim"},
      {"block.evidence.support-kind", BlockKind::EvidenceIncorporation,
       "every support of an evidence incorporation is an evidence node"},
      {"block.concretion.arity", BlockKind::Concretion,
       "a concretion makes exactly one claim precise"},
      {"block.concretion.support-kind", BlockKind::Concretion,
       "the support of a concretion is a claim"},
      {"block.side-claim", BlockKind::Decomposition,
       "an argument without a side claim leaves its inference unconditional"},
  };
  return rules;
}

namespace {

// Counts only supports that resolve; dangling ids are check_wellformed's
// business and must not produce a second finding here.
struct SupportKinds {
  std::size_t claims = 0;
  std::size_t evidence = 0;
  std::size_t total() const { return claims + evidence; }
};

SupportKinds classify(const CaseGraph& g, const Argument& arg) {
  SupportKinds k;
  for (const auto& s : arg.supports) {
    switch (g.kind_of(s)) {
      case NodeKind::Claim: ++k.claims; break;
      case NodeKind::Evidence: ++k.evidence; break;
      default: break;
    }
  }
  return k;
}

}  // namespace

std::vector<Diagnostic> validate_blocks(const CaseGraph& g) {
  std::vector<Diagnostic> out;
  for (const auto& [id, arg] : g.arguments) {
    SupportKinds kinds = classify(g, arg);
    std::size_t arity = arg.supports.size();
    auto err = [&](const std::string& rule, const std::string& msg) {
      out.push_back({Severity::Error, id, rule, msg});
    };
    switch (arg.block) {
      case BlockKind::Decomposition:
        if (arity < 2) {
          err("block.decomposition.arity",
              "decomposition needs at least two supporting claims, found " +
                  std::to_string(arity));
        }
        if (kinds.evidence > 0) {
          err("block.decomposition.support-kind",
              "decomposition supports must all be claims");
        }
        break;
      case BlockKind::Substitution:
        if (arity != 1) {
          err("block.substitution.arity",
              "substitution needs exactly one supporting claim, found " +
                  std::to_string(arity));
        }
        if (kinds.evidence > 0) {
          err("block.substitution.support-kind",
              "substitution support must be a claim");
        }
        break;
      case BlockKind::EvidenceIncorporation:
        if (kinds.claims > 0) {
          err("block.evidence.support-kind",
              "evidence incorporation supports must all be evidence nodes");
        }
        break;
      case BlockKind::Concretion:
        if (arity != 1) {
          err("block.concretion.arity",
              "concretion makes exactly one claim precise, found " +
                  std::to_string(arity));
        }
        if (kinds.evidence > 0) {
          err("block.concretion.support-kind", "concretion support must be a claim");
        }
        break;
      case BlockKind::Calculation:
        // Any non-empty mix of claims and evidence is acceptable; emptiness
        // is already core.no-supports.
        break;
    }
    if (!arg.side) {
      out.push_back({Severity::Warning, id, "block.side-claim",
                     "no side claim: the " + std::string(block_keyword(arg.block)) +
                         " is applied unconditionally"});
    }
  }
  sort_diagnostics(out);
  return out;
}

}  // namespace casekit
