#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "casekit/case_graph.hpp"
#include "casekit/diagnostics.hpp"

namespace casekit::resilience {

// ---------------------------------------------------------------------------
// FRAM service models

enum class AspectKind { Input, Output, Precondition, Resource, Control, Time };

char aspect_letter(AspectKind k);
std::optional<AspectKind> aspect_from_letter(const std::string& s);

/// A service function with the six FRAM aspects. Ports are named; every
/// coupling connects an output port of one function to a non-output
/// aspect port of another.
struct FramFunction {
  std::string id;
  std::string name;
  std::string owner;  // stakeholder the function belongs to
  std::vector<std::string> inputs, outputs, preconditions, resources, controls, times;

  const std::vector<std::string>& ports(AspectKind k) const;
  std::vector<std::string>& ports(AspectKind k);
};

struct FramCoupling {
  std::string from_function;
  std::string from_port;  // an output port
  std::string to_function;
  AspectKind to_aspect = AspectKind::Input;
  std::string to_port;
};

struct FramModel {
  std::vector<FramFunction> functions;  // file order
  std::vector<FramCoupling> couplings;
};

/// Errors for couplings whose endpoints do not resolve; warnings for
/// output ports nothing consumes, for precondition/resource/control/time
/// ports nothing feeds (inputs may arrive from outside the modelled
/// scope), and for functions coupled to their own input. Ordered by
/// (function id, rule id).
std::vector<Diagnostic> validate_fram(const FramModel& model);

/// FRAM file, line oriented:
///
///   function <id> "<name>" owner=<label>
///   port <function> <I|O|P|R|C|T> <name>
///   couple <fn>.<output-port> -> <fn>.<aspect>.<port>
struct ParsedFram {
  FramModel model;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return !has_errors(diagnostics); }
};

ParsedFram parse_fram(std::string_view text);

// ---------------------------------------------------------------------------
// Outcome catalogue and requirement derivation

/// Whether a catalogue entry carries verbatim standard text or stands in
/// for an outcome only referenced by the detailed argument figures.
enum class CatalogueSource { Table, Appendix };

struct CatalogueEntry {
  std::string id;  // G0..G3, a, a1..a8, b..., d2
  std::string outcome_text;
  std::string requirement_template;  // may contain the {service} placeholder
  CatalogueSource source = CatalogueSource::Table;
};

/// Catalogue file, line oriented:
///
///   outcome <id> "<outcome_text>" template="<requirement_template>" [source=table|appendix]
struct ParsedCatalogue {
  std::vector<CatalogueEntry> entries;  // file order
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return !has_errors(diagnostics); }
};

ParsedCatalogue parse_catalogue(std::string_view text);

struct OutcomeRequirement {
  std::string id;
  std::string outcome_text;
  std::string requirement_template;
  std::string derived_text;  // template with {service} filled in
  CatalogueSource source = CatalogueSource::Table;
};

/// Instantiates every template for the named service, in catalogue order.
/// Throws std::invalid_argument when the service name is empty.
std::vector<OutcomeRequirement> derive_requirements(
    const std::vector<CatalogueEntry>& catalogue, const std::string& service);

// ---------------------------------------------------------------------------
// Service specifications and verification records

struct ServiceSpec {
  std::string id;  // SS-<digits>
  std::string text;
  std::optional<std::string> parent;  // the spec this one was derived from
};

/// Specs file, line oriented:
///
///   spec <id> "<text>" [parent=<id>]
struct ParsedSpecs {
  std::vector<ServiceSpec> specs;  // file order
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return !has_errors(diagnostics); }
};

ParsedSpecs parse_specs(std::string_view text);

enum class ReviseFlag { None, Requirements, Specs };

struct VerificationRecord {
  std::string requirement;
  Status status = Status::Unevaluated;  // one of green/orange/yellow/red
  std::string justification;
  std::vector<std::string> spec_refs;
  ReviseFlag revise = ReviseFlag::None;
};

/// Records file, line oriented:
///
///   record <req-id> status=<colour> [revise=requirements|specs] [specs=SS-...,...] "<justification>"
struct ParsedRecords {
  std::vector<VerificationRecord> records;  // file order
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return !has_errors(diagnostics); }
};

ParsedRecords parse_records(std::string_view text);

// ---------------------------------------------------------------------------
// Verification report and case emission

struct RequirementRow {
  OutcomeRequirement requirement;
  std::optional<VerificationRecord> record;  // absent = not yet evaluated

  Status effective_status() const {
    return record ? record->status : Status::Unevaluated;
  }
};

struct VerificationReport {
  std::vector<RequirementRow> rows;  // requirement (catalogue) order
  std::vector<Diagnostic> diagnostics;
};

/// Pairs every requirement with its record. Records naming unknown
/// requirements, duplicate records, and (when specs are given) spec
/// references that do not resolve are errors; a green record citing no
/// specs draws an unsupported-satisfaction warning.
VerificationReport verify(const std::vector<OutcomeRequirement>& requirements,
                          const std::vector<VerificationRecord>& records,
                          const std::optional<std::vector<ServiceSpec>>& specs);

struct EmittedCase {
  CaseGraph graph;
  /// Requirement ids that fit no known parent and were attached directly
  /// under G0.
  std::vector<std::string> unmapped;
};

/// Builds the GSN argument for the failure-response process view: G0 on
/// top, decomposed into G1 (service continuity), G2 (immediate harms) and
/// G3 (longer-term harms); outcome groups a/b/c/d under their parents (a
/// under G1, b under G2, c and d under G3); numbered outcomes under their
/// group letter; every record as an evidence node carrying its colour.
/// Intermediate claims missing from the report are synthesised with
/// standard texts so mapped outcomes always reach G0. The result passes
/// check_wellformed with zero errors and serializes to `.casl`.
EmittedCase emit_case(const VerificationReport& report);

// ---------------------------------------------------------------------------
// The analysis flow state machine

/// The IEC 62853 resilience analysis flow: understand outcomes, derive
/// requirements, verify them against the service specifications, evaluate
/// the verification, then either proceed to development and operation or
/// loop back through requirement or specification revision.
enum class WorkflowStep {
  S1_UnderstandOutcomes,
  S2_DeriveRequirements,
  S3_Verify,
  S4_Evaluate,
  S5_DevelopAndOperate,
  S6_ReviseRequirements,
  S7_ReviseSpecs,
};

const char* step_name(WorkflowStep s);

struct WorkflowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One step of the flow. S1 through S3 advance linearly; from S4 the
/// report decides: development (S5) when every requirement is green or at
/// least carries a justification, otherwise requirement revision (S6)
/// when some record asks for it, otherwise specification revision (S7).
/// S6 and S7 loop back to verification. S5 is terminal; advancing from it
/// throws WorkflowError.
WorkflowStep advance(WorkflowStep step, const VerificationReport& report);

}  // namespace casekit::resilience
