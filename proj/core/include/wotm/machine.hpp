// Machine descriptions, tape disciplines, configurations and single-step
// semantics shared by the simulators, transpilers and analysis passes.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace wotm {

// Tape symbols are small non-negative integers; 0 is the blank.
using Symbol = int;
using Word = std::vector<Symbol>;

constexpr Symbol kBlank = 0;

enum class Move { Left, Right, Stay };
enum class Mode { Deterministic, Nondeterministic, Alternating };
enum class TapeDiscipline { Standard, WriteOnce, WriteOnceEndOnly };
enum class Polarity { Existential, Universal };

const char* to_string(Move m);
const char* to_string(Mode m);
const char* to_string(TapeDiscipline d);

struct Transition {
  int from = -1;
  Symbol read = kBlank;
  Symbol write = kBlank;
  Move move = Move::Stay;
  int to = -1;
  bool operator==(const Transition&) const = default;
};

struct MachineDescription {
  std::vector<std::string> state_names;
  int start = -1;
  int accept = -1;
  int reject = -1;
  Mode mode = Mode::Deterministic;
  TapeDiscipline discipline = TapeDiscipline::Standard;
  std::vector<Symbol> alphabet;        // always contains the blank
  std::vector<Polarity> polarity;      // one entry per state; Existential unless alternating
  std::vector<Transition> transitions; // declaration order is meaningful (tie breaking)

  int state_count() const { return static_cast<int>(state_names.size()); }
  const std::string& name(int q) const { return state_names[q]; }
  int state_index(std::string_view name) const;
  bool has_symbol(Symbol s) const;
  bool is_halting(int q) const { return q == accept || q == reject; }
  Polarity state_polarity(int q) const {
    return q < static_cast<int>(polarity.size()) ? polarity[q] : Polarity::Existential;
  }

  bool operator==(const MachineDescription&) const = default;
};

// Transition lookup by (state, read symbol), built once per immutable machine.
class TransitionIndex {
 public:
  explicit TransitionIndex(const MachineDescription& desc);
  // Indices into desc.transitions, in declaration order.
  const std::vector<int>& at(int state, Symbol read) const;

 private:
  std::map<std::pair<int, Symbol>, std::vector<int>> index_;
  std::vector<int> empty_;
};

// One-way infinite tape; only non-blank cells are stored.
struct Tape {
  std::map<std::int64_t, Symbol> cells;

  Symbol read(std::int64_t i) const {
    auto it = cells.find(i);
    return it == cells.end() ? kBlank : it->second;
  }
  void write(std::int64_t i, Symbol v) {
    if (v == kBlank)
      cells.erase(i);
    else
      cells[i] = v;
  }
  // Largest non-blank index, -1 if the tape is all blank.
  std::int64_t max_written() const { return cells.empty() ? -1 : cells.rbegin()->first; }
  // First blank cell at or after index 0 (the frontier of a contiguous word).
  std::int64_t frontier() const;

  bool operator==(const Tape&) const = default;
  auto operator<=>(const Tape&) const = default;
};

struct Configuration {
  int state = -1;
  std::int64_t head = 0;
  Tape tape;
  std::int64_t steps = 0;
  std::int64_t writes = 0;  // blank -> non-blank changes only
  std::int64_t max_head = 0;

  // Space accounting follows head visits, not writes.
  std::int64_t space_used() const { return max_head + 1; }
};

// Identity of a configuration for search and loop analysis: the counters are
// instrumentation and do not participate.
struct ConfigKey {
  int state;
  std::int64_t head;
  Tape tape;
  auto operator<=>(const ConfigKey&) const = default;
};
inline ConfigKey key_of(const Configuration& c) { return {c.state, c.head, c.tape}; }
inline bool same_point(const Configuration& a, const Configuration& b) {
  return a.state == b.state && a.head == b.head && a.tape == b.tape;
}

enum class Outcome {
  Accept,
  Reject,
  StepLimit,
  SpaceLimit,
  WriteLimit,
  WriteOnceViolation,
  LoopDetected,
  Diverge,
};
const char* to_string(Outcome o);

struct TraceEvent {
  Transition taken;  // may be the synthetic fall-through-to-reject transition
  Configuration after;
  bool was_write = false;
};

struct RunTrace {
  Configuration initial;
  std::vector<TraceEvent> events;  // empty when recording was off
  bool recorded = true;
  Outcome outcome = Outcome::Reject;
  Configuration final_config;
  // Non-write step counts: leading gap, the gaps between consecutive writes,
  // trailing gap. Always has final_config.writes + 1 entries.
  std::vector<std::int64_t> gaps;
};

struct ValidationIssue {
  enum class Severity { Error, Warning } severity = Severity::Error;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool well_formed() const {
    for (const auto& i : issues)
      if (i.severity == ValidationIssue::Severity::Error) return false;
    return true;
  }
};

// Checks every MachineDescription invariant and flags transitions that can
// never fire under the declared discipline (e.g. writing blank over a mark
// under write-once) as warnings.
ValidationReport validate_machine(const MachineDescription& desc);

struct Successor {
  Transition taken;
  Configuration config;
  bool was_write = false;
};

struct StepResult {
  std::vector<Successor> successors;
  // Set when a deterministic machine's unique applicable transition is
  // discipline-illegal; nondeterministic/alternating branches are pruned
  // silently instead.
  std::optional<Outcome> fault;
};

// All legal one-step successors of config. Conventions: a Left move at cell 0
// keeps the head at 0; writing the symbol already present is a legal no-op
// step; a missing transition from a non-halting state becomes a synthetic
// step into the reject state. Halting states have no successors.
StepResult successors(const MachineDescription& desc, const Configuration& config,
                      const TransitionIndex& index);

// Applies one specific transition, if legal in config. Returns the successor
// and its was-write flag, or nullopt when the transition does not apply
// (wrong state/read symbol or discipline-illegal effect).
std::optional<std::pair<Configuration, bool>> apply_transition(const MachineDescription& desc,
                                                               const Configuration& config,
                                                               const Transition& t);

// Initial configuration with the input written on cells 0..n-1.
Configuration initial_configuration(const Word& input);

struct BinarizeResult {
  MachineDescription machine;
  int block_width = 1;  // cells per source cell; 1 means the identity path
};

// Rewrites a Standard-discipline machine over an m-symbol alphabet into a
// binary one using blocks of ceil(log2(max symbol + 1)) + 1 cells per source
// cell (presence bit first, then value bits, most significant first). Binary
// machines pass through structurally unchanged. Throws std::invalid_argument
// for write-once inputs.
BinarizeResult binarize_alphabet(const MachineDescription& desc);

// Block encoding of an input word matching binarize_alphabet's layout.
Word binarize_encode_input(const BinarizeResult& bin, const Word& input);

}  // namespace wotm
