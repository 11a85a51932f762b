// Acceptance gate for the toolchain. Nine independent checks cover the
// packaged failure-response case, the service specification fixture, the
// serializer round-trip law, the block-rule corpus, the confirmation
// measure, the status algebra, the lifecycle net semantics, the analysis
// flow edges, and the end-to-end CLI emission. One line of output per
// criterion; the process exits nonzero when any of them fail.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "casekit/block_rules.hpp"
#include "casekit/casl.hpp"
#include "casekit/confirmation.hpp"
#include "casekit/dpn.hpp"
#include "casekit/dpn_text.hpp"
#include "casekit/resilience.hpp"
#include "casekit/status_engine.hpp"
#include "support/generators.hpp"
#include "support/reach_oracle.hpp"
#include "support/status_testbed.hpp"

using namespace casekit;

namespace {

constexpr double kTol = 1e-12;

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void expect(bool ok, const std::string& detail) {
  if (!ok) throw Failure(detail);
}

std::string fixture_path(const std::string& name) {
  return std::string(CASEKIT_FIXTURE_DIR) + "/" + name;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  expect(static_cast<bool>(in), "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

CaseGraph load_case(const std::string& path) {
  auto parsed = casl::parse(slurp(path));
  expect(parsed.ok(), path + " has parse errors");
  return parsed.doc.graph;
}

std::map<std::string, Status> claim_statuses(const CaseGraph& g) {
  auto statuses = propagate(g);
  std::map<std::string, Status> out;
  for (const auto& [id, c] : g.claims) out[id] = statuses.at(id).status;
  return out;
}

/// The verification outcomes of the failure-response case: the fourteen
/// evidence-backed outcome claims split into exactly these colour groups,
/// and the roll-up leaves the top claim red.
void check_failure_response_statuses(const CaseGraph& g) {
  const std::map<Status, std::set<std::string>> groups = {
      {Status::Partial, {"a1", "a2", "a8"}},
      {Status::StandardsAssumed, {"a3", "a4", "a5", "a6"}},
      {Status::Deferred, {"b3", "b8", "c2", "c4", "d2"}},
      {Status::Satisfied, {"a7", "c3"}},
  };
  auto statuses = claim_statuses(g);
  for (const auto& [status, ids] : groups) {
    for (const auto& id : ids) {
      expect(statuses.count(id) == 1, "claim " + id + " is missing");
      expect(statuses.at(id) == status,
             "claim " + id + " is " + status_colour(statuses.at(id)) +
                 ", expected " + status_colour(status));
    }
  }
  std::size_t named = 0;
  for (const auto& [status, ids] : groups) named += ids.size();
  expect(named == 14, "the outcome groups must cover all fourteen leaves");
  expect(statuses.count("G0") == 1, "top claim G0 is missing");
  expect(statuses.at("G0") == Status::Deferred, "G0 must come out red");
}

// ---------------------------------------------------------------------------
// 1. The packaged failure-response case

void criterion_fixture_statuses() {
  auto start = std::chrono::steady_clock::now();
  check_failure_response_statuses(load_case(fixture_path("failure_response.casl")));
  auto elapsed = std::chrono::steady_clock::now() - start;
  expect(elapsed < std::chrono::seconds(1), "took a second or more");
}

// ---------------------------------------------------------------------------
// 2. The service specification fixture

void criterion_service_specs() {
  auto parsed = resilience::parse_specs(slurp(fixture_path("service_specs.specs")));
  expect(parsed.ok(), "the specs fixture has parse errors");
  expect(parsed.specs.size() == 10,
         "expected 10 specs, got " + std::to_string(parsed.specs.size()));
  for (const auto& spec : parsed.specs) {
    bool derived = spec.id == "SS-0051" || spec.id == "SS-0052";
    if (derived) {
      expect(spec.parent == "SS-005", spec.id + " must derive from SS-005");
    } else {
      expect(!spec.parent, spec.id + " must not name a parent");
    }
  }
}

// ---------------------------------------------------------------------------
// 3. The serializer round-trip law

void criterion_round_trip() {
  testgen::Rng rng(90210);
  for (int i = 0; i < 1000; ++i) {
    auto doc = testgen::random_document(rng);
    std::string canonical;
    try {
      canonical = casl::serialize(doc);
    } catch (const std::exception& e) {
      throw Failure("document " + std::to_string(i) +
                    " failed to serialize: " + e.what());
    }
    auto parsed = casl::parse(canonical);
    expect(parsed.ok(), "document " + std::to_string(i) + " has parse errors");
    expect(parsed.doc == doc,
           "document " + std::to_string(i) + " changed across the round trip");
    expect(casl::serialize(parsed.doc) == canonical,
           "document " + std::to_string(i) + " is not canonical after reparse");
  }
}

// ---------------------------------------------------------------------------
// 4. The block-rule corpus

void criterion_block_corpus() {
  const std::map<std::string, std::set<std::string>> expectations = {
      {"decomposition_valid.casl", {}},
      {"decomposition_arity.casl", {"BAD"}},
      {"decomposition_kind.casl", {"BAD"}},
      {"substitution_valid.casl", {}},
      {"substitution_arity.casl", {"BAD"}},
      {"substitution_kind.casl", {"BAD"}},
      {"evidence_valid.casl", {}},
      {"evidence_kind_claim.casl", {"BAD"}},
      {"evidence_kind_mixed.casl", {"BAD"}},
      {"concretion_valid.casl", {}},
      {"concretion_arity.casl", {"BAD"}},
      {"concretion_kind.casl", {"BAD"}},
      {"calculation_valid.casl", {}},
      {"calculation_no_side.casl", {"BAD"}},
      {"calculation_two_no_side.casl", {"BAD1", "BAD2"}},
  };
  for (const auto& [name, expected] : expectations) {
    CaseGraph g = load_case(fixture_path("block_rules/" + name));
    expect(!has_errors(check_wellformed(g)), name + " is not well formed");
    std::set<std::string> flagged;
    for (const auto& d : validate_blocks(g)) flagged.insert(d.node);
    expect(flagged == expected, name + " flags the wrong arguments");
  }
}

// ---------------------------------------------------------------------------
// 5. The confirmation measure

void criterion_confirmation() {
  expect(std::fabs(ko_measure({0.9, 0.1}) - 0.8) <= kTol, "(0.9, 0.1) is not 0.8");
  expect(std::fabs(ko_measure({1.0, 0.0}) - 1.0) <= kTol, "(1, 0) is not 1");
  expect(std::fabs(ko_measure({0.0, 1.0}) + 1.0) <= kTol, "(0, 1) is not -1");
  expect(std::fabs(ko_measure({0.5, 0.5})) <= kTol, "(0.5, 0.5) is not 0");

  std::mt19937_64 rng(46923);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int checked = 0;
  while (checked < 10000) {
    double p = unit(rng), q = unit(rng);
    if (p + q == 0.0) continue;
    ++checked;
    double f = ko_measure({p, q});
    expect(f >= -1.0 && f <= 1.0, "measure out of [-1, 1]");
    expect(std::fabs(f + ko_measure({q, p})) <= kTol, "antisymmetry violated");
  }

  // Conditioning oracle in cross-product form, clear of the marginal
  // divisions the library performs.
  checked = 0;
  while (checked < 10000) {
    double a = unit(rng), b = unit(rng), c = unit(rng), d = unit(rng);
    double sum = a + b + c + d;
    if (sum == 0.0) continue;
    JointDistribution j{a / sum, b / sum, c / sum, d / sum};
    j.p_nh_ne += 1.0 - (j.p_h_e + j.p_h_ne + j.p_nh_e + j.p_nh_ne);
    double p_h = j.p_h_e + j.p_h_ne;
    double p_nh = j.p_nh_e + j.p_nh_ne;
    if (p_h <= 0.0 || p_nh <= 0.0) continue;
    if (j.p_h_e * p_nh + j.p_nh_e * p_h == 0.0) continue;
    ++checked;
    double expected = (j.p_h_e * p_nh - j.p_nh_e * p_h) /
                      (j.p_h_e * p_nh + j.p_nh_e * p_h);
    double actual = ko_measure(likelihoods_from_joint(j));
    expect(std::fabs(actual - expected) <= kTol, "joint table oracle disagrees");
  }
}

// ---------------------------------------------------------------------------
// 6. The status algebra

void criterion_status_algebra() {
  testgen::Rng rng(1805);
  for (int round = 0; round < 10000; ++round) {
    CaseGraph g = testgen::random_status_dag(rng, 20);
    std::vector<std::string> leaves;
    for (const auto& [id, c] : g.claims) {
      if (g.arguments_for(id).empty() && c.declared &&
          *c.declared != Status::Satisfied) {
        leaves.push_back(id);
      }
    }
    if (leaves.empty()) continue;
    auto before = propagate(g);

    const std::string& chosen = leaves[testgen::pick(rng, 0, leaves.size() - 1)];
    static const Status ladder[] = {Status::Unevaluated, Status::Deferred,
                                    Status::Partial, Status::StandardsAssumed,
                                    Status::Satisfied};
    g.claims.at(chosen).declared =
        ladder[status_rank(*g.claims.at(chosen).declared) + 1];
    auto after = propagate(g);
    for (const auto& [id, eff] : before) {
      expect(status_rank(after.at(id).status) >= status_rank(eff.status),
             "round " + std::to_string(round) + ": upgrading " + chosen +
                 " lowered " + id);
    }
  }

  for (int round = 0; round < 10000; ++round) {
    CaseGraph g = testgen::random_status_dag(rng, 12);
    auto statuses = propagate(g);
    testgen::Oracle oracle{g};
    for (const auto& [id, c] : g.claims) {
      expect(statuses.at(id).status == oracle.claim(id),
             "round " + std::to_string(round) + ": oracle disagrees on claim " + id);
    }
    for (const auto& [id, e] : g.evidence) {
      expect(statuses.at(id).status == oracle.node(id),
             "round " + std::to_string(round) + ": oracle disagrees on " + id);
    }
  }
}

// ---------------------------------------------------------------------------
// 7. The lifecycle net semantics

void criterion_lifecycle_net() {
  auto start = std::chrono::steady_clock::now();

  auto net_parsed = dpn::parse_net(slurp(fixture_path("delivery.dpnl")));
  expect(net_parsed.ok(), "the delivery net has parse errors");
  const dpn::Net& net = net_parsed.net;
  expect(net.places.size() == 6, "the delivery net must have six places");

  auto events = dpn::parse_events(slurp(fixture_path("delivery_run.evl")));
  expect(events.ok(), "the delivery run has parse errors");
  auto first = dpn::replay(net, dpn::Marking{}, events.events);
  auto second = dpn::replay(net, dpn::Marking{}, events.events);
  expect(first.trace == second.trace, "replay traces differ between runs");
  expect(dpn::fingerprint(first.marking) == dpn::fingerprint(second.marking),
         "replay end markings differ between runs");

  // A transition whose output token violates the target place's condition
  // must leave the marking untouched.
  dpn::Net broken;
  dpn::Place a;
  a.id = "A";
  broken.places["A"] = a;
  dpn::Place b;
  b.id = "B";
  b.condition.atoms.push_back({"stage", dpn::CmpOp::Eq, std::string("done")});
  broken.places["B"] = b;
  broken.input_places.insert("A");
  dpn::Transition step;
  step.id = "step";
  step.stage = "work";
  step.inputs.push_back({"A", {}});
  step.outputs.push_back({"B", {}});
  broken.transitions["step"] = step;
  dpn::Marking m;
  dpn::Payload p;
  p.artefact = "job";
  m = dpn::inject(broken, m, "A", p);
  const dpn::Marking before = m;
  bool threw = false;
  try {
    dpn::fire(broken, m, "step");
  } catch (const dpn::AssuranceCheckError&) {
    threw = true;
  }
  expect(threw, "the failing fire did not raise the assurance error");
  expect(m == before, "the failing fire modified the marking");

  dpn::Marking initial;
  dpn::Payload request;
  request.artefact = "package";
  request.fields["status"] = std::string("requested");
  initial = dpn::inject(net, initial, "RequestPlaced", request);
  auto result = dpn::reachable(net, initial, 2, 6);
  auto graph = testgen::oracle_graph(net, initial, 2);
  std::set<std::string> seen;
  bool truncated = false;
  testgen::oracle_reach(graph, dpn::fingerprint(initial), 6, seen, truncated);
  expect(result.fingerprints == seen, "reachable set disagrees with the oracle");
  expect(result.truncated == truncated, "truncation flag disagrees with the oracle");

  auto elapsed = std::chrono::steady_clock::now() - start;
  expect(elapsed < std::chrono::seconds(5), "took five seconds or more");
}

// ---------------------------------------------------------------------------
// 8. The analysis flow edges

resilience::VerificationReport report_with(
    const std::vector<std::optional<resilience::VerificationRecord>>& records_by_row) {
  resilience::VerificationReport report;
  for (std::size_t i = 0; i < records_by_row.size(); ++i) {
    resilience::RequirementRow row;
    row.requirement.id = "r" + std::to_string(i + 1);
    row.record = records_by_row[i];
    report.rows.push_back(std::move(row));
  }
  return report;
}

resilience::VerificationRecord record_of(
    Status status, const std::string& justification,
    resilience::ReviseFlag revise = resilience::ReviseFlag::None) {
  resilience::VerificationRecord rec;
  rec.requirement = "r";
  rec.status = status;
  rec.justification = justification;
  rec.revise = revise;
  return rec;
}

void criterion_workflow_edges() {
  using resilience::ReviseFlag;
  using resilience::WorkflowStep;

  std::vector<resilience::VerificationReport> variants;
  variants.push_back(resilience::VerificationReport{});
  variants.push_back(report_with({std::nullopt}));
  variants.push_back(report_with({record_of(Status::Satisfied, "")}));
  variants.push_back(report_with({record_of(Status::Deferred, "known gap")}));
  variants.push_back(report_with({record_of(Status::Deferred, "")}));
  variants.push_back(report_with(
      {std::nullopt, record_of(Status::Deferred, "", ReviseFlag::Requirements)}));
  variants.push_back(report_with(
      {std::nullopt, record_of(Status::Deferred, "", ReviseFlag::Specs)}));

  const std::set<std::pair<WorkflowStep, WorkflowStep>> allowed = {
      {WorkflowStep::S1_UnderstandOutcomes, WorkflowStep::S2_DeriveRequirements},
      {WorkflowStep::S2_DeriveRequirements, WorkflowStep::S3_Verify},
      {WorkflowStep::S3_Verify, WorkflowStep::S4_Evaluate},
      {WorkflowStep::S4_Evaluate, WorkflowStep::S5_DevelopAndOperate},
      {WorkflowStep::S4_Evaluate, WorkflowStep::S6_ReviseRequirements},
      {WorkflowStep::S4_Evaluate, WorkflowStep::S7_ReviseSpecs},
      {WorkflowStep::S6_ReviseRequirements, WorkflowStep::S3_Verify},
      {WorkflowStep::S7_ReviseSpecs, WorkflowStep::S3_Verify},
  };
  std::set<WorkflowStep> from_evaluate;
  for (WorkflowStep step :
       {WorkflowStep::S1_UnderstandOutcomes, WorkflowStep::S2_DeriveRequirements,
        WorkflowStep::S3_Verify, WorkflowStep::S4_Evaluate,
        WorkflowStep::S6_ReviseRequirements, WorkflowStep::S7_ReviseSpecs}) {
    for (const auto& report : variants) {
      WorkflowStep next = resilience::advance(step, report);
      expect(allowed.count({step, next}) == 1,
             std::string("illegal edge out of ") + resilience::step_name(step));
      if (step == WorkflowStep::S4_Evaluate) from_evaluate.insert(next);
    }
  }
  expect(from_evaluate.size() == 3, "evaluation must be able to reach S5, S6 and S7");
  for (const auto& report : variants) {
    bool threw = false;
    try {
      resilience::advance(WorkflowStep::S5_DevelopAndOperate, report);
    } catch (const resilience::WorkflowError&) {
      threw = true;
    }
    expect(threw, "advancing from development did not raise");
  }
}

// ---------------------------------------------------------------------------
// 9. End-to-end CLI emission

int run_command(const std::string& command) {
  int rc = std::system(command.c_str());
  return rc < 0 ? rc : WEXITSTATUS(rc);
}

void criterion_end_to_end() {
  const std::string cli = CASEKIT_CLI;
  const std::string emitted_path = "acceptance_emitted.casl";
  std::string verify_cmd = "'" + cli + "' resilience verify --catalogue '" +
                           fixture_path("failure_response.catalogue") +
                           "' --records '" +
                           fixture_path("analysis_findings.records") +
                           "' --specs '" + fixture_path("service_specs.specs") +
                           "' --emit-case '" + emitted_path + "' >/dev/null 2>&1";
  int rc = run_command(verify_cmd);
  expect(rc == 0, "resilience verify exited with " + std::to_string(rc));

  rc = run_command("'" + cli + "' check '" + emitted_path + "' >/dev/null 2>&1");
  expect(rc == 0, "check on the emitted case exited with " + std::to_string(rc));

  CaseGraph emitted = load_case(emitted_path);
  expect(!has_errors(check_wellformed(emitted)), "the emitted case has errors");
  check_failure_response_statuses(emitted);
  expect(claim_statuses(emitted) ==
             claim_statuses(load_case(fixture_path("failure_response.casl"))),
         "emitted statuses differ from the packaged case");
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void()>>> criteria = {
      {"failure-response case statuses", criterion_fixture_statuses},
      {"service specification fixture", criterion_service_specs},
      {"serializer round-trip law", criterion_round_trip},
      {"block-rule corpus", criterion_block_corpus},
      {"confirmation measure", criterion_confirmation},
      {"status algebra properties", criterion_status_algebra},
      {"lifecycle net semantics", criterion_lifecycle_net},
      {"analysis flow edges", criterion_workflow_edges},
      {"end-to-end case emission", criterion_end_to_end},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& [label, run] = criteria[i];
    try {
      run();
      std::cout << "criterion " << i + 1 << ": PASS (" << label << ")\n";
    } catch (const std::exception& e) {
      ++failures;
      std::cout << "criterion " << i + 1 << ": FAIL (" << e.what() << ")\n";
    }
  }
  return failures == 0 ? 0 : 1;
}
