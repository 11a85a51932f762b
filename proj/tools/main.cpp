// casekit: assurance case toolchain.
//
// Subcommands: check, status, confirm, dpn run, dpn reach,
// resilience derive, resilience verify. Diagnostics go to stderr, data to
// stdout; --format json emits line-delimited objects. Exit codes: 0 clean,
// 1 validation errors or a failed check, 2 usage or I/O problems.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "casekit/block_rules.hpp"
#include "casekit/casl.hpp"
#include "casekit/confirmation.hpp"
#include "casekit/dpn.hpp"
#include "casekit/dpn_text.hpp"
#include "casekit/resilience.hpp"
#include "casekit/status_engine.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace casekit;

namespace {

constexpr int kOk = 0;
constexpr int kFailedCheck = 1;
constexpr int kUsage = 2;

std::optional<std::string> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << content;
  return bool(out);
}

json diagnostic_json(const Diagnostic& d) {
  json j{{"severity", severity_name(d.severity)},
         {"rule", d.rule},
         {"message", d.message}};
  if (!d.node.empty()) j["node"] = d.node;
  if (d.line > 0) {
    j["line"] = d.line;
    j["column"] = d.column;
  }
  return j;
}

void print_diagnostics(const std::vector<Diagnostic>& diags, const std::string& file) {
  for (const auto& d : diags) {
    std::cerr << file << ':' << render_diagnostic(d) << '\n';
  }
}

// Parses and structurally validates one case document; block rules
// included. Returns nullopt (after reporting) when the file cannot be
// read. The caller decides what error diagnostics mean for its exit code.
struct LoadedCase {
  casl::Document doc;
  std::vector<Diagnostic> diagnostics;
};

std::optional<LoadedCase> load_case(const fs::path& path) {
  auto text = read_file(path);
  if (!text) {
    std::cerr << "cannot read '" << path.string() << "'\n";
    return std::nullopt;
  }
  casl::ParseResult parsed = casl::parse(*text);
  LoadedCase out{std::move(parsed.doc), std::move(parsed.diagnostics)};
  auto structural = check_wellformed(out.doc.graph);
  out.diagnostics.insert(out.diagnostics.end(), structural.begin(), structural.end());
  auto blocks = validate_blocks(out.doc.graph);
  out.diagnostics.insert(out.diagnostics.end(), blocks.begin(), blocks.end());
  return out;
}

// Expansion paths resolve relative to the top document's directory.
ExpansionLoader make_loader(const fs::path& base_dir) {
  return [base_dir](const std::string& ref) -> CaseGraph {
    fs::path p(ref);
    if (p.is_relative()) p = base_dir / p;
    auto text = read_file(p);
    if (!text) {
      throw std::runtime_error("cannot read expansion document '" + ref + "'");
    }
    casl::ParseResult parsed = casl::parse(*text);
    for (const auto& d : parsed.diagnostics) {
      if (d.severity == Severity::Error) {
        throw std::runtime_error("expansion document '" + ref +
                                 "' has errors: " + render_diagnostic(d));
      }
    }
    auto structural = check_wellformed(parsed.doc.graph);
    for (const auto& d : structural) {
      if (d.severity == Severity::Error) {
        throw std::runtime_error("expansion document '" + ref +
                                 "' has errors: " + render_diagnostic(d));
      }
    }
    return parsed.doc.graph;
  };
}

int cmd_check(const std::string& file, const std::string& format) {
  auto loaded = load_case(file);
  if (!loaded) return kUsage;
  if (format == "json") {
    for (const auto& d : loaded->diagnostics) {
      json j = diagnostic_json(d);
      j["file"] = file;
      std::cout << j.dump() << '\n';
    }
  } else {
    print_diagnostics(loaded->diagnostics, file);
    std::cout << file << ": " << count_severity(loaded->diagnostics, Severity::Error)
              << " errors, " << count_severity(loaded->diagnostics, Severity::Warning)
              << " warnings, " << count_severity(loaded->diagnostics, Severity::Info)
              << " notes\n";
  }
  return has_errors(loaded->diagnostics) ? kFailedCheck : kOk;
}

int cmd_status(const std::string& file, const std::string& format,
               const std::string& dot_out) {
  auto loaded = load_case(file);
  if (!loaded) return kUsage;
  print_diagnostics(loaded->diagnostics, file);
  if (has_errors(loaded->diagnostics)) return kFailedCheck;

  StatusMap statuses;
  try {
    statuses = propagate(loaded->doc.graph,
                         make_loader(fs::path(file).parent_path()));
  } catch (const std::exception& e) {
    std::cerr << file << ": " << e.what() << '\n';
    return kFailedCheck;
  }
  StatusReport report = build_report(loaded->doc.graph, statuses);
  if (format == "json") {
    for (const auto& row : report.rows) {
      json j{{"id", row.id},
             {"kind", row.kind},
             {"colour", status_colour(row.effective.status)},
             {"provenance", provenance_name(row.effective.provenance)},
             {"text", row.text}};
      std::cout << j.dump() << '\n';
    }
    std::cout << json{{"totals", report.colour_counts}}.dump() << '\n';
  } else {
    std::cout << render_report_text(report);
  }
  if (!dot_out.empty()) {
    if (!write_file(dot_out, emit_dot(loaded->doc.graph, statuses))) {
      std::cerr << "cannot write '" << dot_out << "'\n";
      return kUsage;
    }
  }
  return kOk;
}

int cmd_confirm(const std::string& file, const std::string& claim, double threshold,
                const std::string& format) {
  if (!(threshold > 0.0) || threshold > 1.0) {
    std::cerr << "--threshold must lie in (0,1]\n";
    return kUsage;
  }
  auto loaded = load_case(file);
  if (!loaded) return kUsage;
  print_diagnostics(loaded->diagnostics, file);
  if (has_errors(loaded->diagnostics)) return kFailedCheck;

  CaseConfirmation result;
  try {
    result = case_confirmation(loaded->doc.graph, loaded->doc.probs, claim, threshold);
  } catch (const UnknownClaimError& e) {
    std::cerr << e.what() << '\n';
    return kFailedCheck;
  }
  print_diagnostics(result.diagnostics, file);
  if (format == "json") {
    for (const auto& s : result.scores) {
      std::cout << json{{"evidence", s.evidence},
                        {"claim", s.claim},
                        {"value", s.value},
                        {"grade", grade_name(s.grade)}}
                       .dump()
                << '\n';
    }
  } else {
    for (const auto& s : result.scores) {
      std::ostringstream value;
      value.precision(12);
      value << s.value;
      std::cout << s.evidence << "  " << value.str() << "  " << grade_name(s.grade)
                << '\n';
    }
  }
  return has_errors(result.diagnostics) ? kFailedCheck : kOk;
}

void print_marking_text(const dpn::Marking& marking) {
  for (const auto& [place, tokens] : marking.tokens) {
    if (tokens.empty()) continue;
    for (const auto& tok : tokens) {
      std::cout << place << "  serial=" << tok.serial
                << "  artefact=" << tok.payload.artefact;
      for (const auto& [k, v] : tok.payload.fields) {
        std::cout << ' ' << k << '=' << dpn::value_text(v);
      }
      std::cout << '\n';
    }
  }
}

json payload_json(const dpn::Payload& p) {
  json fields = json::object();
  for (const auto& [k, v] : p.fields) {
    if (const double* num = std::get_if<double>(&v)) {
      fields[k] = *num;
    } else {
      fields[k] = std::get<std::string>(v);
    }
  }
  return json{{"artefact", p.artefact}, {"fields", fields}};
}

std::optional<dpn::Net> load_net(const std::string& file) {
  auto text = read_file(file);
  if (!text) {
    std::cerr << "cannot read '" << file << "'\n";
    return std::nullopt;
  }
  dpn::ParsedNet parsed = dpn::parse_net(*text);
  print_diagnostics(parsed.diagnostics, file);
  if (!parsed.ok()) return std::nullopt;
  return parsed.net;
}

int cmd_dpn_run(const std::string& net_file, const std::string& events_file,
                bool trace, const std::string& format) {
  auto text = read_file(net_file);
  if (!text) {
    std::cerr << "cannot read '" << net_file << "'\n";
    return kUsage;
  }
  dpn::ParsedNet parsed_net = dpn::parse_net(*text);
  print_diagnostics(parsed_net.diagnostics, net_file);
  if (!parsed_net.ok()) return kFailedCheck;

  auto log_text = read_file(events_file);
  if (!log_text) {
    std::cerr << "cannot read '" << events_file << "'\n";
    return kUsage;
  }
  dpn::ParsedEvents parsed_events = dpn::parse_events(*log_text);
  print_diagnostics(parsed_events.diagnostics, events_file);
  if (!parsed_events.ok()) return kFailedCheck;

  dpn::ReplayResult result;
  try {
    result = dpn::replay(parsed_net.net, dpn::Marking{}, parsed_events.events);
  } catch (const dpn::ReplayError& e) {
    std::cerr << events_file << ": " << e.what() << '\n';
    return kFailedCheck;
  }
  if (format == "json") {
    if (trace) {
      for (const auto& line : result.trace) {
        std::cout << json{{"trace", line}}.dump() << '\n';
      }
    }
    for (const auto& [place, tokens] : result.marking.tokens) {
      for (const auto& tok : tokens) {
        json j = payload_json(tok.payload);
        j["place"] = place;
        j["serial"] = tok.serial;
        std::cout << j.dump() << '\n';
      }
    }
  } else {
    if (trace) {
      for (const auto& line : result.trace) std::cout << line << '\n';
    }
    print_marking_text(result.marking);
  }
  return kOk;
}

// `dpn reach` explores from a synthetic start: one witness token per
// designated input place, built to satisfy the place condition (equality
// and ordering atoms pin the value; != gets a perturbed one).
dpn::Marking witness_marking(const dpn::Net& net) {
  dpn::Marking marking;
  for (const auto& place_id : net.input_places) {
    const dpn::Place& place = net.places.at(place_id);
    dpn::Payload payload;
    payload.artefact = place_id;
    for (const auto& atom : place.condition.atoms) {
      dpn::Value v = atom.literal;
      if (atom.op == dpn::CmpOp::Ne) {
        if (const double* num = std::get_if<double>(&atom.literal)) {
          v = *num + 1;
        } else {
          v = std::get<std::string>(atom.literal) + "-other";
        }
      }
      if (atom.key == "artefact") {
        payload.artefact = dpn::value_text(v);
      } else {
        payload.fields[atom.key] = v;
      }
    }
    if (!place.condition.satisfied_by(payload)) {
      std::cerr << "cannot build a witness token for input place '" << place_id
                << "'; place left empty\n";
      continue;
    }
    marking.tokens[place_id].push_back({marking.next_serial++, std::move(payload)});
  }
  return marking;
}

int cmd_dpn_reach(const std::string& net_file, std::size_t bound, std::size_t depth) {
  if (bound == 0 || depth == 0) {
    std::cerr << "--bound and --depth must be positive\n";
    return kUsage;
  }
  auto net = load_net(net_file);
  if (!net) return kFailedCheck;
  dpn::ReachResult result = dpn::reachable(*net, witness_marking(*net), bound, depth);
  std::cout << "states=" << result.fingerprints.size() << " truncated="
            << (result.truncated ? "true" : "false") << '\n';
  for (const auto& fp : result.fingerprints) {
    std::cout << fp << '\n';
  }
  return kOk;
}

int cmd_resilience_derive(const std::string& catalogue_file, const std::string& service) {
  if (service.empty()) {
    std::cerr << "--service must not be empty\n";
    return kUsage;
  }
  auto text = read_file(catalogue_file);
  if (!text) {
    std::cerr << "cannot read '" << catalogue_file << "'\n";
    return kUsage;
  }
  resilience::ParsedCatalogue parsed = resilience::parse_catalogue(*text);
  print_diagnostics(parsed.diagnostics, catalogue_file);
  if (!parsed.ok()) return kFailedCheck;
  for (const auto& req : resilience::derive_requirements(parsed.entries, service)) {
    std::cout << req.id << "  " << req.derived_text << '\n';
  }
  return kOk;
}

int cmd_resilience_verify(const std::string& catalogue_file,
                          const std::string& records_file,
                          const std::string& specs_file,
                          const std::string& emit_case_file) {
  auto catalogue_text = read_file(catalogue_file);
  if (!catalogue_text) {
    std::cerr << "cannot read '" << catalogue_file << "'\n";
    return kUsage;
  }
  resilience::ParsedCatalogue catalogue = resilience::parse_catalogue(*catalogue_text);
  print_diagnostics(catalogue.diagnostics, catalogue_file);

  auto records_text = read_file(records_file);
  if (!records_text) {
    std::cerr << "cannot read '" << records_file << "'\n";
    return kUsage;
  }
  resilience::ParsedRecords records = resilience::parse_records(*records_text);
  print_diagnostics(records.diagnostics, records_file);

  std::optional<std::vector<resilience::ServiceSpec>> specs;
  bool specs_ok = true;
  if (!specs_file.empty()) {
    auto specs_text = read_file(specs_file);
    if (!specs_text) {
      std::cerr << "cannot read '" << specs_file << "'\n";
      return kUsage;
    }
    resilience::ParsedSpecs parsed_specs = resilience::parse_specs(*specs_text);
    print_diagnostics(parsed_specs.diagnostics, specs_file);
    specs_ok = parsed_specs.ok();
    specs = std::move(parsed_specs.specs);
  }
  if (!catalogue.ok() || !records.ok() || !specs_ok) return kFailedCheck;

  // Verification is service-name agnostic: requirement texts stay as the
  // catalogue wrote them. Use `resilience derive` for instantiated texts.
  std::vector<resilience::OutcomeRequirement> requirements;
  for (const auto& entry : catalogue.entries) {
    requirements.push_back({entry.id, entry.outcome_text, entry.requirement_template,
                            entry.requirement_template, entry.source});
  }
  resilience::VerificationReport report =
      resilience::verify(requirements, records.records, specs);
  print_diagnostics(report.diagnostics, records_file);

  std::size_t id_width = 2;
  for (const auto& row : report.rows) {
    id_width = std::max(id_width, row.requirement.id.size());
  }
  for (const auto& row : report.rows) {
    std::cout << std::left << std::setw(static_cast<int>(id_width))
              << row.requirement.id << "  " << std::setw(6)
              << status_colour(row.effective_status()) << "  ";
    if (row.record) {
      if (!row.record->spec_refs.empty()) {
        std::cout << '[';
        for (std::size_t i = 0; i < row.record->spec_refs.size(); ++i) {
          if (i) std::cout << ',';
          std::cout << row.record->spec_refs[i];
        }
        std::cout << "] ";
      }
      std::cout << row.record->justification;
    } else {
      std::cout << "-";
    }
    std::cout << '\n';
  }

  if (!emit_case_file.empty()) {
    resilience::EmittedCase emitted = resilience::emit_case(report);
    for (const auto& id : emitted.unmapped) {
      std::cerr << "requirement '" << id
                << "' fits no known parent; attached under G0\n";
    }
    if (!write_file(emit_case_file, casl::serialize(emitted.graph))) {
      std::cerr << "cannot write '" << emit_case_file << "'\n";
      return kUsage;
    }
  }
  return has_errors(report.diagnostics) ? kFailedCheck : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"assurance case toolchain: CAE/GSN cases, confirmation scoring, "
               "lifecycle nets and the IEC 62853 resilience loop"};
  app.require_subcommand(1);

  std::string file, format = "text", dot_out, claim;
  double threshold = kDefaultEvidentialThreshold;

  auto* check = app.add_subcommand("check", "validate a case document");
  check->add_option("file", file, "case document (.casl)")->required();
  check->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* status = app.add_subcommand("status", "compute effective statuses");
  status->add_option("file", file, "case document (.casl)")->required();
  status->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  status->add_option("--dot", dot_out, "write a Graphviz rendering here");

  auto* confirm = app.add_subcommand("confirm", "score evidential support");
  confirm->add_option("file", file, "case document (.casl)")->required();
  confirm->add_option("--claim", claim, "claim to score")->required();
  confirm->add_option("--threshold", threshold, "evidential threshold (default 0.9)");
  confirm->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* dpn_cmd = app.add_subcommand("dpn", "lifecycle net operations");
  dpn_cmd->require_subcommand(1);
  std::string net_file, events_file;
  bool trace = false;
  std::size_t bound = 3, depth = 12;

  auto* dpn_run = dpn_cmd->add_subcommand("run", "replay an event log");
  dpn_run->add_option("net", net_file, "net description (.dpnl)")->required();
  dpn_run->add_option("--events", events_file, "event log (.evl)")->required();
  dpn_run->add_flag("--trace", trace, "print one line per event");
  dpn_run->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* dpn_reach = dpn_cmd->add_subcommand("reach", "enumerate reachable markings");
  dpn_reach->add_option("net", net_file, "net description (.dpnl)")->required();
  dpn_reach->add_option("--bound", bound, "max tokens per place (default 3)");
  dpn_reach->add_option("--depth", depth, "max firings deep (default 12)");

  auto* resilience_cmd = app.add_subcommand("resilience", "IEC 62853 analysis loop");
  resilience_cmd->require_subcommand(1);
  std::string catalogue_file, records_file, specs_file, emit_case_file, service;

  auto* derive = resilience_cmd->add_subcommand("derive", "instantiate outcome templates");
  derive->add_option("--catalogue", catalogue_file, "outcome catalogue")->required();
  derive->add_option("--service", service, "service name to fill in")->required();

  auto* verify = resilience_cmd->add_subcommand("verify", "pair requirements with records");
  verify->add_option("--catalogue", catalogue_file, "outcome catalogue")->required();
  verify->add_option("--records", records_file, "verification records")->required();
  verify->add_option("--specs", specs_file, "service specifications");
  verify->add_option("--emit-case", emit_case_file, "write the GSN case here (.casl)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*check) return cmd_check(file, format);
    if (*status) return cmd_status(file, format, dot_out);
    if (*confirm) return cmd_confirm(file, claim, threshold, format);
    if (*dpn_run) return cmd_dpn_run(net_file, events_file, trace, format);
    if (*dpn_reach) return cmd_dpn_reach(net_file, bound, depth);
    if (*derive) return cmd_resilience_derive(catalogue_file, service);
    if (*verify) return cmd_resilience_verify(catalogue_file, records_file, specs_file,
                                              emit_case_file);
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
