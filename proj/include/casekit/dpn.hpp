#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace casekit::dpn {

/// Payload values are either numbers or strings. In the text formats a
/// bare token that looks like a decimal number is a number; everything
/// else is a string.
using Value = std::variant<double, std::string>;

std::string value_text(const Value& v);
Value value_from_text(const std::string& text);

/// What a token carries: the artefact label (a document, a work request,
/// an approval) plus assurance assertions as key/value fields.
struct Payload {
  std::string artefact;
  std::map<std::string, Value> fields;

  friend bool operator==(const Payload&, const Payload&) = default;
};

enum class CmpOp { Eq, Ne, Ge, Le };

const char* cmp_text(CmpOp op);

/// One conjunct of a guard. An atom holds only when the key is present,
/// the stored value has the literal's type, and the comparison is true;
/// a missing key or a type mismatch fails the atom, != included.
struct GuardAtom {
  std::string key;
  CmpOp op = CmpOp::Eq;
  Value literal;

  bool holds(const Payload& p) const;
  std::string text() const;
};

struct Guard {
  std::vector<GuardAtom> atoms;  // conjunction; empty = true

  bool satisfied_by(const Payload& p) const;
  /// First atom the payload fails, or nullptr when the guard holds.
  const GuardAtom* first_failing(const Payload& p) const;
};

enum class ProcessView {
  ConsensusBuilding,
  AccountabilityAchievement,
  FailureResponse,
  ChangeAccommodation,
};

const char* view_keyword(ProcessView v);
std::optional<ProcessView> view_from_keyword(const std::string& kw);

struct Place {
  std::string id;
  Guard condition;
  std::optional<ProcessView> view;
};

/// Transform edits, applied left to right to a copy of the first bound
/// input token's payload. `artefact` is addressable as a field name.
struct EditSet {
  std::string key;
  Value literal;
};
struct EditCopy {
  std::string key;
  std::size_t from_input = 1;  // 1-based index into the bound input tokens
};
struct EditDrop {
  std::string key;
};
using Edit = std::variant<EditSet, EditCopy, EditDrop>;

struct Transform {
  std::vector<Edit> edits;

  Payload apply(const std::vector<Payload>& bound_inputs) const;
};

struct InputArc {
  std::string place;
  Guard guard;
};

struct OutputArc {
  std::string place;
  Transform transform;
};

/// A lifecycle stage. Firing consumes one token per input arc and emits
/// one per output arc.
struct Transition {
  std::string id;
  std::string stage;
  std::vector<InputArc> inputs;
  std::vector<OutputArc> outputs;
  std::optional<ProcessView> view;
};

struct Net {
  std::map<std::string, Place> places;
  std::map<std::string, Transition> transitions;
  std::set<std::string> input_places;  // where inject may add tokens
};

struct Token {
  std::uint64_t serial = 0;
  Payload payload;

  friend bool operator==(const Token&, const Token&) = default;
};

/// Tokens per place, in serial order. next_serial makes token identity
/// deterministic across runs: every injection and firing hands out
/// serials in sequence.
struct Marking {
  std::map<std::string, std::vector<Token>> tokens;
  std::uint64_t next_serial = 1;

  friend bool operator==(const Marking&, const Marking&) = default;
};

struct DpnError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotEnabledError : DpnError {
  using DpnError::DpnError;
};
/// A produced token failed its target place's condition: the assurance
/// check the place encodes did not pass.
struct AssuranceCheckError : DpnError {
  using DpnError::DpnError;
};

struct EnabledFiring {
  std::string transition;
  std::vector<std::uint64_t> serials;  // one per input arc, in arc order
};

/// All currently enabled transitions with their deterministic bindings,
/// sorted by transition id. Each input arc binds the lowest-serial token
/// in its place that satisfies the arc guard and is not already bound by
/// an earlier arc of the same transition.
std::vector<EnabledFiring> enabled(const Net& net, const Marking& m);

struct FiringRecord {
  std::string transition;
  std::vector<std::uint64_t> consumed;
  std::vector<std::pair<std::string, std::uint64_t>> produced;  // (place, serial)
};

struct FireResult {
  Marking marking;
  FiringRecord record;
};

/// Fires `transition` with its deterministic binding. The input marking
/// is untouched; on error nothing is committed. Throws NotEnabledError
/// or, when an output token violates its place's condition,
/// AssuranceCheckError naming the failing atom.
FireResult fire(const Net& net, const Marking& m, const std::string& transition);

/// Adds a token (fresh serial) to a designated input place after checking
/// the place condition. Throws DpnError for unknown or non-input places
/// and AssuranceCheckError when the payload fails the condition.
Marking inject(const Net& net, const Marking& m, const std::string& place,
               const Payload& payload, std::uint64_t* serial_out = nullptr);

struct Event {
  enum class Kind { Inject, Fire } kind = Kind::Fire;
  std::string target;  // place or transition id
  Payload payload;     // inject only
};

struct ReplayError : DpnError {
  ReplayError(std::size_t step, const std::string& what)
      : DpnError("step " + std::to_string(step) + ": " + what), step(step) {}
  std::size_t step;  // 1-based index of the failing event
};

struct ReplayResult {
  Marking marking;
  std::vector<std::string> trace;  // one line per event
};

/// Applies the log in order. Deterministic: the same net, marking and log
/// always produce the same trace and final marking.
ReplayResult replay(const Net& net, const Marking& initial,
                    const std::vector<Event>& events);

/// Canonical fingerprint of a marking: serial numbers are normalised
/// away, so two markings with the same tokens in the same places hash
/// alike regardless of firing history.
std::string fingerprint(const Marking& m);

struct ReachResult {
  std::set<std::string> fingerprints;
  bool truncated = false;
};

/// Breadth-first enumeration of the markings reachable through enabled
/// firings, up to `bound` tokens per place and `max_depth` firings deep.
/// States are identified by fingerprint (serials normalised). truncated
/// is set when a successor was skipped for exceeding the bound or a
/// frontier marking at the depth limit still had an enabled transition.
ReachResult reachable(const Net& net, const Marking& initial, std::size_t bound,
                      std::size_t max_depth);

}  // namespace casekit::dpn
