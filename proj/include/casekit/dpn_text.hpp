#pragma once

#include <string_view>

#include "casekit/diagnostics.hpp"
#include "casekit/dpn.hpp"

namespace casekit::dpn {

/// Net description, line oriented:
///
///   place <id> [view=<view>] [cond=<key><op><lit>[&...]]
///   transition <id> stage="<label>" in=<place>[:<guard>][,...] out=<place>[:<transform>][,...]
///   input <place>
///
/// Guards are '&'-joined atoms with ops =, !=, >= and <=; transforms are
/// '&'-joined edits: key=literal sets, key@N copies from the N-th bound
/// input token, !key drops. Literals that look like decimal numbers are
/// numbers. Because arcs pack guards after ':' and atoms after '&',
/// values used here cannot contain ':', '&', ',' or blanks.
///
/// Like the case reader, the pass never stops early: every problem is
/// reported with line and column, and clean statements are still built.
struct ParsedNet {
  Net net;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return !has_errors(diagnostics); }
};

ParsedNet parse_net(std::string_view text);

/// Event log, line oriented:
///
///   inject <place> [<key>=<value>[,...]]
///   fire <transition>
///
/// The reserved key artefact sets the token's artefact label; without it
/// the label defaults to the place id. Ids are resolved during replay,
/// not here, so a log can be read without its net.
struct ParsedEvents {
  std::vector<Event> events;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return !has_errors(diagnostics); }
};

ParsedEvents parse_events(std::string_view text);

}  // namespace casekit::dpn
