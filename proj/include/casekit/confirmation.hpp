#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "casekit/case_graph.hpp"
#include "casekit/casl.hpp"
#include "casekit/diagnostics.hpp"

namespace casekit {

/// The degree to which evidence e confirms hypothesis h, on the scale of
/// Kemeny and Oppenheim:
///
///   F(h, e) = (P(e|h) - P(e|not h)) / (P(e|h) + P(e|not h))
///
/// The value lies in [-1, 1]: 1 when the evidence is impossible unless the
/// claim holds, -1 when it refutes the claim outright, 0 when it is
/// uninformative. Swapping h with its negation flips the sign, which gives
/// counter-claims the mirror-image score of claims.
struct Likelihoods {
  double p_e_given_h = 0.0;
  double p_e_given_not_h = 0.0;
};

struct MeasureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when a joint table cannot be conditioned (hypothesis or its
/// negation has probability zero, or the table is not a distribution).
struct ConditioningError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Full joint distribution over (claim, evidence): p_h_e is the
/// probability that both hold, p_h_ne that the claim holds without the
/// evidence, and so on. Entries must be in [0,1] and sum to 1 within
/// 1e-12.
struct JointDistribution {
  double p_h_e = 0.0;
  double p_h_ne = 0.0;
  double p_nh_e = 0.0;
  double p_nh_ne = 0.0;
};

/// Conditions the joint table on the claim and on its negation. Throws
/// ConditioningError when either has zero mass or the table is invalid.
Likelihoods likelihoods_from_joint(const JointDistribution& d);

/// Throws MeasureError when both likelihoods are zero (the measure is
/// undefined) or either lies outside [0,1].
double ko_measure(const Likelihoods& l);

/// How an evidence score relates to the evidential threshold. The
/// threshold marks where support is strong enough to discharge the claim
/// deductively for assessment purposes; below it the evidence merely
/// supports.
enum class ConfirmationGrade { DeductiveGrade, Supporting, Neutral, Disconfirming };

const char* grade_name(ConfirmationGrade g);

constexpr double kDefaultEvidentialThreshold = 0.9;

/// Throws MeasureError unless 0 < threshold <= 1.
ConfirmationGrade classify(double value, double threshold = kDefaultEvidentialThreshold);

struct EvidenceScore {
  std::string evidence;
  std::string claim;
  double value = 0.0;
  ConfirmationGrade grade = ConfirmationGrade::Neutral;
};

struct UnknownClaimError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CaseConfirmation {
  std::vector<EvidenceScore> scores;        // prob-record order
  std::vector<Diagnostic> diagnostics;      // records that could not be scored
};

/// Scores every likelihood record whose `given` names `claim`. A record
/// only counts when its evidence actually hangs (transitively, through
/// arguments) below the claim; evidence attached somewhere else is a
/// misattachment and is reported as a dangling diagnostic, as are
/// likelihood pairs the measure is undefined for. Throws
/// UnknownClaimError when `claim` is not a claim of the graph.
CaseConfirmation case_confirmation(const CaseGraph& g,
                                   const std::vector<casl::Prob>& probs,
                                   const std::string& claim,
                                   double threshold = kDefaultEvidentialThreshold);

}  // namespace casekit
