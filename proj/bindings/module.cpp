// Python bindings for the casekit core. Everything crosses the boundary as
// plain dicts and lists so callers need no wrapped types.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "casekit/block_rules.hpp"
#include "casekit/casl.hpp"
#include "casekit/confirmation.hpp"
#include "casekit/dpn.hpp"
#include "casekit/dpn_text.hpp"
#include "casekit/resilience.hpp"
#include "casekit/status_engine.hpp"

namespace py = pybind11;
using namespace casekit;

namespace {

py::dict diagnostic_dict(const Diagnostic& d) {
  py::dict out;
  out["severity"] = severity_name(d.severity);
  out["node"] = d.node;
  out["rule"] = d.rule;
  out["message"] = d.message;
  out["line"] = d.line;
  out["column"] = d.column;
  return out;
}

py::list diagnostic_list(const std::vector<Diagnostic>& diags) {
  py::list out;
  for (const auto& d : diags) out.append(diagnostic_dict(d));
  return out;
}

casl::Document parse_or_throw(const std::string& text) {
  casl::ParseResult parsed = casl::parse(text);
  if (!parsed.ok()) {
    throw std::invalid_argument("case document has parse errors; run check() first");
  }
  return parsed.doc;
}

py::object value_object(const dpn::Value& v) {
  if (const double* num = std::get_if<double>(&v)) return py::float_(*num);
  return py::str(std::get<std::string>(v));
}

py::dict marking_dict(const dpn::Marking& marking) {
  py::dict out;
  for (const auto& [place, tokens] : marking.tokens) {
    py::list entries;
    for (const auto& tok : tokens) {
      py::dict fields;
      for (const auto& [k, v] : tok.payload.fields) {
        fields[py::str(k)] = value_object(v);
      }
      py::dict entry;
      entry["serial"] = tok.serial;
      entry["artefact"] = tok.payload.artefact;
      entry["fields"] = fields;
      entries.append(entry);
    }
    out[py::str(place)] = entries;
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_casekit, m) {
  m.doc() = "assurance case toolchain core";

  m.def("check", [](const std::string& text) {
    casl::ParseResult parsed = casl::parse(text);
    std::vector<Diagnostic> diags = std::move(parsed.diagnostics);
    auto structural = check_wellformed(parsed.doc.graph);
    diags.insert(diags.end(), structural.begin(), structural.end());
    auto blocks = validate_blocks(parsed.doc.graph);
    diags.insert(diags.end(), blocks.begin(), blocks.end());
    return diagnostic_list(diags);
  }, py::arg("text"), "Parse and validate a case document; returns diagnostics.");

  m.def("canonical", [](const std::string& text) {
    return casl::serialize(parse_or_throw(text));
  }, py::arg("text"), "Reserialize a case document in canonical form.");

  m.def("status", [](const std::string& text) {
    casl::Document doc = parse_or_throw(text);
    StatusMap statuses = propagate(doc.graph);
    StatusReport report = build_report(doc.graph, statuses);
    py::list rows;
    for (const auto& row : report.rows) {
      py::dict entry;
      entry["id"] = row.id;
      entry["kind"] = row.kind;
      entry["colour"] = status_colour(row.effective.status);
      entry["provenance"] = provenance_name(row.effective.provenance);
      entry["text"] = row.text;
      rows.append(entry);
    }
    py::dict totals;
    for (const auto& [colour, count] : report.colour_counts) {
      totals[py::str(colour)] = count;
    }
    py::dict out;
    out["rows"] = rows;
    out["totals"] = totals;
    return out;
  }, py::arg("text"), "Compute effective statuses; expansion references are not followed.");

  m.def("confirm", [](const std::string& text, const std::string& claim, double threshold) {
    casl::Document doc = parse_or_throw(text);
    CaseConfirmation result = case_confirmation(doc.graph, doc.probs, claim, threshold);
    py::list scores;
    for (const auto& s : result.scores) {
      py::dict entry;
      entry["evidence"] = s.evidence;
      entry["claim"] = s.claim;
      entry["value"] = s.value;
      entry["grade"] = grade_name(s.grade);
      scores.append(entry);
    }
    py::dict out;
    out["scores"] = scores;
    out["diagnostics"] = diagnostic_list(result.diagnostics);
    return out;
  }, py::arg("text"), py::arg("claim"), py::arg("threshold") = kDefaultEvidentialThreshold,
     "Score the evidence attached under a claim.");

  m.def("ko_measure", [](double p_e_h, double p_e_nh) {
    return ko_measure({p_e_h, p_e_nh});
  }, py::arg("p_e_given_h"), py::arg("p_e_given_not_h"),
     "Kemeny-Oppenheim confirmation value.");

  m.def("classify", [](double value, double threshold) {
    return std::string(grade_name(classify(value, threshold)));
  }, py::arg("value"), py::arg("threshold") = kDefaultEvidentialThreshold,
     "Grade a confirmation value.");

  m.def("dpn_replay", [](const std::string& net_text, const std::string& events_text) {
    dpn::ParsedNet net = dpn::parse_net(net_text);
    if (!net.ok()) throw std::invalid_argument("net description has parse errors");
    dpn::ParsedEvents events = dpn::parse_events(events_text);
    if (!events.ok()) throw std::invalid_argument("event log has parse errors");
    dpn::ReplayResult result = dpn::replay(net.net, dpn::Marking{}, events.events);
    py::dict out;
    out["trace"] = result.trace;
    out["marking"] = marking_dict(result.marking);
    return out;
  }, py::arg("net_text"), py::arg("events_text"),
     "Replay an event log against a lifecycle net from an empty marking.");

  m.def("dpn_reach", [](const std::string& net_text, const std::string& events_text,
                        std::size_t bound, std::size_t depth) {
    dpn::ParsedNet net = dpn::parse_net(net_text);
    if (!net.ok()) throw std::invalid_argument("net description has parse errors");
    dpn::ParsedEvents events = dpn::parse_events(events_text);
    if (!events.ok()) throw std::invalid_argument("event log has parse errors");
    dpn::ReplayResult start = dpn::replay(net.net, dpn::Marking{}, events.events);
    dpn::ReachResult result = dpn::reachable(net.net, start.marking, bound, depth);
    py::dict out;
    py::list fingerprints;
    for (const auto& fp : result.fingerprints) fingerprints.append(fp);
    out["fingerprints"] = fingerprints;
    out["truncated"] = result.truncated;
    return out;
  }, py::arg("net_text"), py::arg("events_text"), py::arg("bound") = 3,
     py::arg("depth") = 12,
     "Enumerate markings reachable after replaying the given event log.");

  m.def("derive_requirements", [](const std::string& catalogue_text,
                                  const std::string& service) {
    resilience::ParsedCatalogue parsed = resilience::parse_catalogue(catalogue_text);
    if (!parsed.ok()) throw std::invalid_argument("catalogue has parse errors");
    py::list out;
    for (const auto& req : resilience::derive_requirements(parsed.entries, service)) {
      py::dict entry;
      entry["id"] = req.id;
      entry["outcome"] = req.outcome_text;
      entry["requirement"] = req.derived_text;
      out.append(entry);
    }
    return out;
  }, py::arg("catalogue_text"), py::arg("service"),
     "Instantiate the outcome catalogue for a named service.");

  m.def("resilience_verify", [](const std::string& catalogue_text,
                                const std::string& records_text,
                                const py::object& specs_text) {
    resilience::ParsedCatalogue catalogue = resilience::parse_catalogue(catalogue_text);
    if (!catalogue.ok()) throw std::invalid_argument("catalogue has parse errors");
    resilience::ParsedRecords records = resilience::parse_records(records_text);
    if (!records.ok()) throw std::invalid_argument("records have parse errors");
    std::optional<std::vector<resilience::ServiceSpec>> specs;
    if (!specs_text.is_none()) {
      resilience::ParsedSpecs parsed = resilience::parse_specs(specs_text.cast<std::string>());
      if (!parsed.ok()) throw std::invalid_argument("specs have parse errors");
      specs = std::move(parsed.specs);
    }
    std::vector<resilience::OutcomeRequirement> requirements;
    for (const auto& entry : catalogue.entries) {
      requirements.push_back({entry.id, entry.outcome_text, entry.requirement_template,
                              entry.requirement_template, entry.source});
    }
    resilience::VerificationReport report =
        resilience::verify(requirements, records.records, specs);
    py::list rows;
    for (const auto& row : report.rows) {
      py::dict entry;
      entry["id"] = row.requirement.id;
      entry["colour"] = status_colour(row.effective_status());
      entry["recorded"] = bool(row.record);
      rows.append(entry);
    }
    resilience::EmittedCase emitted = resilience::emit_case(report);
    py::dict out;
    out["rows"] = rows;
    out["diagnostics"] = diagnostic_list(report.diagnostics);
    out["case"] = casl::serialize(emitted.graph);
    return out;
  }, py::arg("catalogue_text"), py::arg("records_text"), py::arg("specs_text") = py::none(),
     "Pair derived requirements with verification records and emit the GSN case.");
}
