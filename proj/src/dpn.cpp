#include "casekit/dpn.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "text_util.hpp"

namespace casekit::dpn {

std::string value_text(const Value& v) {
  if (const double* d = std::get_if<double>(&v)) return detail::format_decimal(*d);
  return std::get<std::string>(v);
}

Value value_from_text(const std::string& text) {
  std::string_view s = text;
  bool neg = !s.empty() && s.front() == '-';
  if (neg) s.remove_prefix(1);
  if (detail::decimal_literal(s)) {
    return std::strtod(text.c_str(), nullptr);
  }
  return text;
}

const char* cmp_text(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return "=";
    case CmpOp::Ne: return "!=";
    case CmpOp::Ge: return ">=";
    case CmpOp::Le: return "<=";
  }
  return "=";
}

namespace {

const Value* lookup(const Payload& p, const std::string& key, Value& scratch) {
  if (key == "artefact") {
    scratch = p.artefact;
    return &scratch;
  }
  auto it = p.fields.find(key);
  return it == p.fields.end() ? nullptr : &it->second;
}

}  // namespace

bool GuardAtom::holds(const Payload& p) const {
  Value scratch;
  const Value* v = lookup(p, key, scratch);
  if (!v) return false;
  if (v->index() != literal.index()) return false;
  if (const double* num = std::get_if<double>(v)) {
    double lit = std::get<double>(literal);
    switch (op) {
      case CmpOp::Eq: return *num == lit;
      case CmpOp::Ne: return *num != lit;
      case CmpOp::Ge: return *num >= lit;
      case CmpOp::Le: return *num <= lit;
    }
    return false;
  }
  const std::string& str = std::get<std::string>(*v);
  const std::string& lit = std::get<std::string>(literal);
  switch (op) {
    case CmpOp::Eq: return str == lit;
    case CmpOp::Ne: return str != lit;
    case CmpOp::Ge:
    case CmpOp::Le:
      return false;  // ordering comparisons are numeric-only
  }
  return false;
}

std::string GuardAtom::text() const {
  return key + cmp_text(op) + value_text(literal);
}

bool Guard::satisfied_by(const Payload& p) const { return first_failing(p) == nullptr; }

const GuardAtom* Guard::first_failing(const Payload& p) const {
  for (const auto& atom : atoms) {
    if (!atom.holds(p)) return &atom;
  }
  return nullptr;
}

const char* view_keyword(ProcessView v) {
  switch (v) {
    case ProcessView::ConsensusBuilding: return "consensus_building";
    case ProcessView::AccountabilityAchievement: return "accountability_achievement";
    case ProcessView::FailureResponse: return "failure_response";
    case ProcessView::ChangeAccommodation: return "change_accommodation";
  }
  return "failure_response";
}

std::optional<ProcessView> view_from_keyword(const std::string& kw) {
  if (kw == "consensus_building") return ProcessView::ConsensusBuilding;
  if (kw == "accountability_achievement") return ProcessView::AccountabilityAchievement;
  if (kw == "failure_response") return ProcessView::FailureResponse;
  if (kw == "change_accommodation") return ProcessView::ChangeAccommodation;
  return std::nullopt;
}

Payload Transform::apply(const std::vector<Payload>& bound_inputs) const {
  if (bound_inputs.empty()) {
    throw DpnError("transform needs at least one bound input token");
  }
  Payload out = bound_inputs.front();
  for (const Edit& edit : edits) {
    if (const EditSet* set = std::get_if<EditSet>(&edit)) {
      if (set->key == "artefact") {
        out.artefact = value_text(set->literal);
      } else {
        out.fields[set->key] = set->literal;
      }
    } else if (const EditCopy* copy = std::get_if<EditCopy>(&edit)) {
      if (copy->from_input == 0 || copy->from_input > bound_inputs.size()) {
        throw DpnError("transform copies key '" + copy->key + "' from input token " +
                       std::to_string(copy->from_input) + " but only " +
                       std::to_string(bound_inputs.size()) + " are bound");
      }
      const Payload& src = bound_inputs[copy->from_input - 1];
      if (copy->key == "artefact") {
        out.artefact = src.artefact;
      } else if (auto it = src.fields.find(copy->key); it != src.fields.end()) {
        out.fields[copy->key] = it->second;
      } else {
        out.fields.erase(copy->key);
      }
    } else {
      const EditDrop& drop = std::get<EditDrop>(edit);
      if (drop.key == "artefact") {
        throw DpnError("the artefact label cannot be dropped");
      }
      out.fields.erase(drop.key);
    }
  }
  return out;
}

namespace {

// Deterministic binding: each arc takes the lowest-serial token of its
// place that passes the arc guard and is not already taken by an earlier
// arc of the same transition.
std::optional<std::vector<std::uint64_t>> bind(const Marking& m,
                                               const Transition& t) {
  std::vector<std::uint64_t> chosen;
  std::set<std::uint64_t> used;
  for (const InputArc& arc : t.inputs) {
    auto place_it = m.tokens.find(arc.place);
    const Token* found = nullptr;
    if (place_it != m.tokens.end()) {
      for (const Token& tok : place_it->second) {
        if (used.count(tok.serial)) continue;
        if (!arc.guard.satisfied_by(tok.payload)) continue;
        found = &tok;
        break;
      }
    }
    if (!found) return std::nullopt;
    chosen.push_back(found->serial);
    used.insert(found->serial);
  }
  return chosen;
}

}  // namespace

std::vector<EnabledFiring> enabled(const Net& net, const Marking& m) {
  std::vector<EnabledFiring> out;
  for (const auto& [id, t] : net.transitions) {
    if (t.inputs.empty()) continue;  // ill-formed; the parser rejects this
    if (auto serials = bind(m, t)) {
      out.push_back({id, std::move(*serials)});
    }
  }
  return out;
}

FireResult fire(const Net& net, const Marking& m, const std::string& transition) {
  auto t_it = net.transitions.find(transition);
  if (t_it == net.transitions.end()) {
    throw DpnError("unknown transition '" + transition + "'");
  }
  const Transition& t = t_it->second;
  auto serials = bind(m, t);
  if (!serials) {
    throw NotEnabledError("transition '" + transition + "' is not enabled");
  }

  std::vector<Payload> bound;
  Marking next = m;
  for (std::size_t i = 0; i < t.inputs.size(); ++i) {
    auto& vec = next.tokens[t.inputs[i].place];
    auto tok = std::find_if(vec.begin(), vec.end(), [&](const Token& x) {
      return x.serial == (*serials)[i];
    });
    bound.push_back(tok->payload);
    vec.erase(tok);
  }

  FiringRecord record{transition, *serials, {}};
  for (std::size_t i = 0; i < t.outputs.size(); ++i) {
    const OutputArc& arc = t.outputs[i];
    auto place_it = net.places.find(arc.place);
    if (place_it == net.places.end()) {
      throw DpnError("transition '" + transition + "' outputs to unknown place '" +
                     arc.place + "'");
    }
    Payload produced = arc.transform.apply(bound);
    if (const GuardAtom* failing = place_it->second.condition.first_failing(produced)) {
      throw AssuranceCheckError(
          "assurance check failed: token produced by '" + transition +
          "' violates condition '" + failing->text() + "' of place '" + arc.place + "'");
    }
    Token tok{next.next_serial++, std::move(produced)};
    record.produced.emplace_back(arc.place, tok.serial);
    next.tokens[arc.place].push_back(std::move(tok));
  }
  return {std::move(next), std::move(record)};
}

Marking inject(const Net& net, const Marking& m, const std::string& place,
               const Payload& payload, std::uint64_t* serial_out) {
  auto p_it = net.places.find(place);
  if (p_it == net.places.end()) {
    throw DpnError("unknown place '" + place + "'");
  }
  if (!net.input_places.count(place)) {
    throw DpnError("place '" + place + "' is not a designated input place");
  }
  if (payload.artefact.empty()) {
    throw DpnError("token artefact label must not be empty");
  }
  if (const GuardAtom* failing = p_it->second.condition.first_failing(payload)) {
    throw AssuranceCheckError("assurance check failed: injected token violates "
                              "condition '" + failing->text() + "' of place '" +
                              place + "'");
  }
  Marking next = m;
  Token tok{next.next_serial++, payload};
  if (serial_out) *serial_out = tok.serial;
  next.tokens[place].push_back(std::move(tok));
  return next;
}

ReplayResult replay(const Net& net, const Marking& initial,
                    const std::vector<Event>& events) {
  ReplayResult out{initial, {}};
  for (std::size_t i = 0; i < events.size(); ++i) {
    const Event& ev = events[i];
    try {
      if (ev.kind == Event::Kind::Inject) {
        std::uint64_t serial = 0;
        out.marking = inject(net, out.marking, ev.target, ev.payload, &serial);
        out.trace.push_back("inject " + ev.target + " serial=" +
                            std::to_string(serial));
      } else {
        FireResult fr = fire(net, out.marking, ev.target);
        out.marking = std::move(fr.marking);
        std::ostringstream line;
        line << "fire " << ev.target << " consumed=[";
        for (std::size_t k = 0; k < fr.record.consumed.size(); ++k) {
          if (k) line << ',';
          line << fr.record.consumed[k];
        }
        line << "] produced=[";
        for (std::size_t k = 0; k < fr.record.produced.size(); ++k) {
          if (k) line << ',';
          line << fr.record.produced[k].first << ':' << fr.record.produced[k].second;
        }
        line << ']';
        out.trace.push_back(line.str());
      }
    } catch (const DpnError& e) {
      throw ReplayError(i + 1, e.what());
    }
  }
  return out;
}

namespace {

std::string payload_canonical(const Payload& p) {
  std::string s = detail::quote(p.artefact);
  for (const auto& [k, v] : p.fields) {
    s += '|';
    s += detail::quote(k);
    s += '=';
    s += detail::quote(value_text(v));
  }
  return s;
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// The canonical form of a marking: tokens renumbered 1..n in (place,
// payload text) order. Firing history stops mattering, which is what
// lets reachability identify states.
Marking canonicalize(const Marking& m) {
  Marking out;
  std::uint64_t serial = 1;
  for (const auto& [place, toks] : m.tokens) {
    if (toks.empty()) continue;
    std::vector<std::string> texts;
    texts.reserve(toks.size());
    for (const Token& t : toks) texts.push_back(payload_canonical(t.payload));
    std::vector<std::size_t> order(toks.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return texts[a] < texts[b];
    });
    for (std::size_t idx : order) {
      out.tokens[place].push_back({serial++, toks[idx].payload});
    }
  }
  out.next_serial = serial;
  return out;
}

}  // namespace

std::string fingerprint(const Marking& m) {
  std::string text;
  for (const auto& [place, toks] : m.tokens) {
    if (toks.empty()) continue;
    std::vector<std::string> lines;
    lines.reserve(toks.size());
    for (const Token& t : toks) {
      lines.push_back(detail::quote(place) + '|' + payload_canonical(t.payload));
    }
    std::sort(lines.begin(), lines.end());
    for (const auto& line : lines) {
      text += line;
      text += '\n';
    }
  }
  std::uint64_t h = fnv1a64(text);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ReachResult reachable(const Net& net, const Marking& initial, std::size_t bound,
                      std::size_t max_depth) {
  if (bound == 0 || max_depth == 0) {
    throw DpnError("reachability bounds must be positive");
  }
  ReachResult out;
  Marking start = canonicalize(initial);
  std::deque<std::pair<Marking, std::size_t>> queue;
  out.fingerprints.insert(fingerprint(start));
  queue.emplace_back(std::move(start), 0);

  while (!queue.empty()) {
    auto [marking, depth] = std::move(queue.front());
    queue.pop_front();
    auto firings = enabled(net, marking);
    if (depth == max_depth) {
      if (!firings.empty()) out.truncated = true;
      continue;
    }
    for (const auto& firing : firings) {
      FireResult fr = fire(net, marking, firing.transition);
      bool over_bound = false;
      for (const auto& [place, toks] : fr.marking.tokens) {
        if (toks.size() > bound) {
          over_bound = true;
          break;
        }
      }
      if (over_bound) {
        out.truncated = true;
        continue;
      }
      Marking canon = canonicalize(fr.marking);
      std::string fp = fingerprint(canon);
      if (out.fingerprints.insert(fp).second) {
        queue.emplace_back(std::move(canon), depth + 1);
      }
    }
  }
  return out;
}

}  // namespace casekit::dpn
