#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "casekit/casl.hpp"
#include "text_util.hpp"

namespace casekit::casl {

namespace {

bool needs_quoting(const std::string& value) {
  if (value.empty()) return true;
  return value.find_first_of(" \t\"\\") != std::string::npos;
}

std::string attr_value(const std::string& value) {
  return needs_quoting(value) ? detail::quote(value) : value;
}

void require_roundtrippable(const CaseGraph& g, const std::vector<Prob>& probs) {
  auto diags = check_wellformed(g);
  for (const auto& d : diags) {
    if (d.severity == Severity::Error) {
      throw std::invalid_argument("cannot serialize an ill-formed case: " +
                                  render_diagnostic(d));
    }
  }
  for (const auto& pr : probs) {
    if (g.kind_of(pr.evidence) != NodeKind::Evidence) {
      throw std::invalid_argument("cannot serialize: prob names unknown evidence '" +
                                  pr.evidence + "'");
    }
    if (g.kind_of(pr.given) != NodeKind::Claim) {
      throw std::invalid_argument("cannot serialize: prob names unknown claim '" +
                                  pr.given + "'");
    }
  }
}

}  // namespace

std::string serialize(const CaseGraph& g, const std::vector<Prob>& probs) {
  require_roundtrippable(g, probs);

  std::ostringstream out;
  out << "case " << detail::quote(g.title) << '\n';

  if (!g.claims.empty()) out << '\n';
  for (const auto& [id, c] : g.claims) {
    out << "claim " << id << ' ' << detail::quote(c.text);
    if (c.declared) out << " status=" << status_colour(*c.declared);
    if (c.expands) out << " expands=" << attr_value(*c.expands);
    out << '\n';
  }

  if (!g.evidence.empty()) out << '\n';
  for (const auto& [id, e] : g.evidence) {
    out << "evidence " << id << ' ' << detail::quote(e.text);
    if (e.declared) out << " status=" << status_colour(*e.declared);
    out << '\n';
  }

  if (!g.arguments.empty()) out << '\n';
  for (const auto& [id, a] : g.arguments) {
    out << "argument " << id << " block=" << block_keyword(a.block)
        << " claim=" << a.claim << " from=";
    for (std::size_t i = 0; i < a.supports.size(); ++i) {
      if (i) out << ',';
      out << a.supports[i];
    }
    if (a.side) out << " side=" << *a.side;
    out << '\n';
  }

  if (!g.defeaters.empty()) out << '\n';
  for (const auto& [id, d] : g.defeaters) {
    out << "defeater " << id << " kind=" << defeater_keyword(d.kind)
        << " target=" << d.target << ' ' << detail::quote(d.text);
    if (d.resolved) out << " resolved=true";
    out << '\n';
  }

  std::vector<Prob> sorted = probs;
  std::sort(sorted.begin(), sorted.end(), [](const Prob& a, const Prob& b) {
    return std::tie(a.evidence, a.given) < std::tie(b.evidence, b.given);
  });
  if (!sorted.empty()) out << '\n';
  for (const auto& pr : sorted) {
    out << "prob " << pr.evidence << " given=" << pr.given
        << " p_e_h=" << detail::format_decimal(pr.p_e_h)
        << " p_e_nh=" << detail::format_decimal(pr.p_e_nh) << '\n';
  }
  return out.str();
}

std::string serialize(const Document& doc) { return serialize(doc.graph, doc.probs); }

}  // namespace casekit::casl
