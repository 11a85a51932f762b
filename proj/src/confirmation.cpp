#include "casekit/confirmation.hpp"

#include <cmath>
#include <set>

namespace casekit {

Likelihoods likelihoods_from_joint(const JointDistribution& d) {
  auto in_unit = [](double p) { return p >= 0.0 && p <= 1.0 && std::isfinite(p); };
  if (!in_unit(d.p_h_e) || !in_unit(d.p_h_ne) || !in_unit(d.p_nh_e) ||
      !in_unit(d.p_nh_ne)) {
    throw ConditioningError("joint table entries must lie in [0,1]");
  }
  double sum = d.p_h_e + d.p_h_ne + d.p_nh_e + d.p_nh_ne;
  if (std::fabs(sum - 1.0) > 1e-12) {
    throw ConditioningError("joint table does not sum to 1");
  }
  double p_h = d.p_h_e + d.p_h_ne;
  double p_nh = d.p_nh_e + d.p_nh_ne;
  if (p_h == 0.0) {
    throw ConditioningError("claim has probability zero; cannot condition on it");
  }
  if (p_nh == 0.0) {
    throw ConditioningError("negated claim has probability zero; cannot condition on it");
  }
  return {d.p_h_e / p_h, d.p_nh_e / p_nh};
}

double ko_measure(const Likelihoods& l) {
  auto in_unit = [](double p) { return p >= 0.0 && p <= 1.0 && std::isfinite(p); };
  if (!in_unit(l.p_e_given_h) || !in_unit(l.p_e_given_not_h)) {
    throw MeasureError("likelihoods must lie in [0,1]");
  }
  double sum = l.p_e_given_h + l.p_e_given_not_h;
  if (sum == 0.0) {
    throw MeasureError("measure undefined: evidence has probability zero under "
                       "both the claim and its negation");
  }
  return (l.p_e_given_h - l.p_e_given_not_h) / sum;
}

const char* grade_name(ConfirmationGrade g) {
  switch (g) {
    case ConfirmationGrade::DeductiveGrade: return "deductive-grade";
    case ConfirmationGrade::Supporting: return "supporting";
    case ConfirmationGrade::Neutral: return "neutral";
    case ConfirmationGrade::Disconfirming: return "disconfirming";
  }
  return "neutral";
}

ConfirmationGrade classify(double value, double threshold) {
  if (!(threshold > 0.0) || threshold > 1.0) {
    throw MeasureError("evidential threshold must lie in (0,1]");
  }
  if (value >= threshold) return ConfirmationGrade::DeductiveGrade;
  if (value > 0.0) return ConfirmationGrade::Supporting;
  if (value == 0.0) return ConfirmationGrade::Neutral;
  return ConfirmationGrade::Disconfirming;
}

namespace {

// Evidence reachable from `root` through the argument structure: walk the
// claim subtree (side claims included) and collect every evidence support.
std::set<std::string> evidence_under(const CaseGraph& g, const std::string& root) {
  std::set<std::string> claims_seen{root};
  std::set<std::string> evidence;
  std::vector<std::string> todo{root};
  while (!todo.empty()) {
    std::string cur = todo.back();
    todo.pop_back();
    for (const auto& arg_id : g.arguments_for(cur)) {
      const Argument& arg = g.arguments.at(arg_id);
      std::vector<std::string> next = arg.supports;
      if (arg.side) next.push_back(*arg.side);
      for (const auto& child : next) {
        switch (g.kind_of(child)) {
          case NodeKind::Claim:
            if (claims_seen.insert(child).second) todo.push_back(child);
            break;
          case NodeKind::Evidence:
            evidence.insert(child);
            break;
          default:
            break;
        }
      }
    }
  }
  return evidence;
}

}  // namespace

CaseConfirmation case_confirmation(const CaseGraph& g,
                                   const std::vector<casl::Prob>& probs,
                                   const std::string& claim, double threshold) {
  if (g.kind_of(claim) != NodeKind::Claim) {
    throw UnknownClaimError("unknown claim '" + claim + "'");
  }
  std::set<std::string> attached = evidence_under(g, claim);

  CaseConfirmation out;
  for (const auto& pr : probs) {
    if (pr.given != claim) continue;
    if (!attached.count(pr.evidence)) {
      out.diagnostics.push_back(
          {Severity::Warning, pr.evidence, "confirm.dangling",
           "evidence '" + pr.evidence + "' is not attached under claim '" + claim +
               "'; its likelihood record cannot support this claim",
           pr.line, 1});
      continue;
    }
    try {
      double value = ko_measure({pr.p_e_h, pr.p_e_nh});
      out.scores.push_back({pr.evidence, pr.given, value, classify(value, threshold)});
    } catch (const MeasureError& e) {
      out.diagnostics.push_back({Severity::Error, pr.evidence, "confirm.undefined",
                                 e.what(), pr.line, 1});
    }
  }
  return out;
}

}  // namespace casekit
