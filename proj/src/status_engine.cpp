#include "casekit/status_engine.hpp"

#include <iomanip>
#include <sstream>

namespace casekit {

const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::Declared: return "declared";
    case Provenance::RolledUp: return "rolled-up";
    case Provenance::Expanded: return "expanded";
    case Provenance::CappedByDefeater: return "capped-by-defeater";
  }
  return "declared";
}

namespace {

Status declared_or_white(const std::optional<Status>& declared) {
  // Purple is a delegation marker; without an expansion target it carries
  // no confidence of its own.
  if (!declared || *declared == Status::Expanded) return Status::Unevaluated;
  return *declared;
}

struct Engine {
  const CaseGraph& g;
  const ExpansionLoader& load;
  std::vector<std::string>& doc_stack;
  StatusMap result;
  std::map<std::string, int> state;  // 0 new, 1 visiting, 2 done
  std::map<std::string, std::vector<const Defeater*>> attacks;

  Engine(const CaseGraph& graph, const ExpansionLoader& loader,
         std::vector<std::string>& stack)
      : g(graph), load(loader), doc_stack(stack) {
    for (const auto& [id, d] : g.defeaters) {
      if (!d.resolved) attacks[d.target].push_back(&d);
    }
  }

  Status apply_caps(const std::string& target, Status s, bool& capped) {
    auto it = attacks.find(target);
    if (it == attacks.end()) return s;
    for (const Defeater* d : it->second) {
      Status cap = d->kind == DefeaterKind::Undercut ? Status::Partial
                                                     : Status::Deferred;
      Status next = min_status(s, cap);
      if (next != s) capped = true;
      s = next;
    }
    return s;
  }

  Status expansion_status(const Claim& c) {
    if (!load) {
      throw PropagateError("claim '" + c.id + "' expands to '" + *c.expands +
                           "' but no expansion loader was provided");
    }
    for (const auto& open : doc_stack) {
      if (open == *c.expands) {
        std::string chain;
        for (const auto& p : doc_stack) chain += p + " -> ";
        throw PropagateError("expansion cycle: " + chain + *c.expands);
      }
    }
    CaseGraph expansion;
    try {
      expansion = load(*c.expands);
    } catch (const PropagateError&) {
      throw;
    } catch (const std::exception& e) {
      throw PropagateError("failed to load expansion '" + *c.expands +
                           "' for claim '" + c.id + "': " + e.what());
    }
    doc_stack.push_back(*c.expands);
    Engine sub(expansion, load, doc_stack);
    StatusMap inner = sub.run();
    doc_stack.pop_back();

    // The expansion document argues for its root claims; the expanding
    // claim is only as good as the weakest of them.
    std::optional<Status> acc;
    for (const auto& root : expansion.root_claims()) {
      Status s = inner.at(root).status;
      acc = acc ? min_status(*acc, s) : s;
    }
    return acc.value_or(Status::Unevaluated);
  }

  Status argument_status(const Argument& a) {
    std::optional<Status> acc;
    auto fold = [&](Status s) { acc = acc ? min_status(*acc, s) : s; };
    for (const auto& sup : a.supports) {
      switch (g.kind_of(sup)) {
        case NodeKind::Claim: fold(claim_status(sup).status); break;
        case NodeKind::Evidence: fold(evidence_status(sup).status); break;
        default: break;  // ill-formed input; check_wellformed reports it
      }
    }
    if (a.side && g.kind_of(*a.side) == NodeKind::Claim) {
      fold(claim_status(*a.side).status);
    }
    Status s = acc.value_or(Status::Unevaluated);
    bool capped = false;
    return apply_caps(a.id, s, capped);
  }

  EffectiveStatus evidence_status(const std::string& id) {
    auto hit = result.find(id);
    if (hit != result.end()) return hit->second;
    const Evidence& e = g.evidence.at(id);
    EffectiveStatus eff{declared_or_white(e.declared), Provenance::Declared};
    bool capped = false;
    eff.status = apply_caps(id, eff.status, capped);
    if (capped) eff.provenance = Provenance::CappedByDefeater;
    result[id] = eff;
    return eff;
  }

  EffectiveStatus claim_status(const std::string& id) {
    auto hit = result.find(id);
    if (hit != result.end()) return hit->second;
    if (state[id] == 1) {
      throw PropagateError("support relation is circular at claim '" + id + "'");
    }
    state[id] = 1;
    const Claim& c = g.claims.at(id);
    EffectiveStatus eff;
    auto args = g.arguments_for(id);
    if (c.expands) {
      eff = {expansion_status(c), Provenance::Expanded};
    } else if (!args.empty()) {
      std::optional<Status> best;
      for (const auto& arg_id : args) {
        Status s = argument_status(g.arguments.at(arg_id));
        best = best ? max_status(*best, s) : s;
      }
      eff = {*best, Provenance::RolledUp};
    } else {
      eff = {declared_or_white(c.declared), Provenance::Declared};
    }
    bool capped = false;
    eff.status = apply_caps(id, eff.status, capped);
    if (capped) eff.provenance = Provenance::CappedByDefeater;
    state[id] = 2;
    result[id] = eff;
    return eff;
  }

  StatusMap run() {
    for (const auto& [id, c] : g.claims) claim_status(id);
    for (const auto& [id, e] : g.evidence) evidence_status(id);
    return result;
  }
};

}  // namespace

StatusMap propagate(const CaseGraph& g, const ExpansionLoader& load) {
  std::vector<std::string> doc_stack;
  Engine engine(g, load, doc_stack);
  return engine.run();
}

StatusReport build_report(const CaseGraph& g, const StatusMap& statuses) {
  StatusReport report;
  for (const char* colour : {"white", "red", "orange", "yellow", "green", "purple"}) {
    report.colour_counts[colour] = 0;
  }
  auto add = [&](const std::string& id, const char* kind, const std::string& text) {
    EffectiveStatus eff;
    if (auto it = statuses.find(id); it != statuses.end()) eff = it->second;
    report.rows.push_back({id, kind, text, eff});
    report.colour_counts[status_colour(eff.status)] += 1;
  };
  // Claims and evidence ids never collide in a well-formed graph; a plain
  // merge keeps the rows sorted.
  auto ci = g.claims.begin();
  auto ei = g.evidence.begin();
  while (ci != g.claims.end() || ei != g.evidence.end()) {
    bool take_claim = ei == g.evidence.end() ||
                      (ci != g.claims.end() && ci->first <= ei->first);
    if (take_claim) {
      add(ci->first, "claim", ci->second.text);
      ++ci;
    } else {
      add(ei->first, "evidence", ei->second.text);
      ++ei;
    }
  }
  return report;
}

std::string render_report_text(const StatusReport& report) {
  std::size_t id_width = 2, kind_width = 5, colour_width = 6, prov_width = 9;
  for (const auto& row : report.rows) {
    id_width = std::max(id_width, row.id.size());
    kind_width = std::max(kind_width, row.kind.size());
    colour_width = std::max(colour_width, std::string(status_colour(row.effective.status)).size());
    prov_width = std::max(prov_width, std::string(provenance_name(row.effective.provenance)).size());
  }
  std::ostringstream out;
  for (const auto& row : report.rows) {
    out << std::left << std::setw(static_cast<int>(id_width)) << row.id << "  "
        << std::setw(static_cast<int>(kind_width)) << row.kind << "  "
        << std::setw(static_cast<int>(colour_width))
        << status_colour(row.effective.status) << "  "
        << std::setw(static_cast<int>(prov_width))
        << provenance_name(row.effective.provenance) << "  " << row.text << '\n';
  }
  out << "totals:";
  for (const char* colour : {"white", "red", "orange", "yellow", "green", "purple"}) {
    out << ' ' << colour << '=' << report.colour_counts.at(colour);
  }
  out << '\n';
  return out.str();
}

}  // namespace casekit
