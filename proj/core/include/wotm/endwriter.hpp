// Analysis pipeline for write-once machines that write only at the end of the
// tape: per-writing-state two-way automata over the written word, one-way
// conversion via re-entry tables, synchronous products, the pumping threshold
// and the bounded-memory acceptance decider.
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "wotm/machine.hpp"
#include "wotm/simulate.hpp"

namespace wotm {

enum class Move2 { Left, Right };

struct ExitAnnotation {
  enum class Kind { NextWrite, HaltAccept, HaltReject, Diverge, Fault };
  Kind kind = Kind::HaltReject;
  int writing_state = -1;  // source-machine state, for NextWrite
  Symbol write_symbol = 0;
  bool operator==(const ExitAnnotation&) const = default;
};
const char* to_string(ExitAnnotation::Kind k);

// Deterministic two-way automaton running on |- w -| with the head starting
// on the left endmarker. Left moves pin at the left endmarker, right moves
// pin at the right one. The automaton halts on entering a halting state;
// revisiting a (state, position) pair means it never halts on this word.
struct TwoWayAutomaton {
  static constexpr Symbol kLeftEnd = -1;
  static constexpr Symbol kRightEnd = -2;

  std::vector<std::string> state_names;
  int start = 0;
  std::vector<Symbol> alphabet;  // word symbols; endmarkers are implicit
  std::map<std::pair<int, Symbol>, std::pair<int, Move2>> delta;
  std::set<int> halting;
  std::set<int> accepting;  // subset of halting
  std::map<int, ExitAnnotation> annotations;

  int state_count() const { return static_cast<int>(state_names.size()); }
  int add_state(const std::string& name) {
    state_names.push_back(name);
    return state_count() - 1;
  }
};

struct TwaRun {
  bool halted = false;
  int state = -1;       // halting state when halted
  std::int64_t steps = 0;
};
TwaRun run_two_way(const TwoWayAutomaton& twa, const Word& word);

// Deterministic one-way automaton with a Moore-style output: the annotation
// reports what the source two-way automaton does after the whole word.
struct OneWayAutomaton {
  std::vector<std::string> state_names;
  int start = 0;
  std::vector<Symbol> alphabet;
  std::vector<std::vector<int>> delta;  // [state][symbol index]
  std::set<int> accepting;
  std::vector<ExitAnnotation> output;

  int state_count() const { return static_cast<int>(state_names.size()); }
  int symbol_index(Symbol s) const;
  int run(const Word& w) const;  // final state after consuming w
  bool accepts(const Word& w) const { return accepting.count(run(w)) != 0; }
};

struct NonHaltingTwoWayError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotAWritingStateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct AlphabetMismatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Subset-style conversion: each one-way state is the pair (arrival status,
// re-entry table of the consumed prefix). When require_halting_up_to is set,
// the two-way automaton is first probed on every word up to that length and
// NonHaltingTwoWayError is thrown if its loop detector fires.
OneWayAutomaton two_way_to_one_way(const TwoWayAutomaton& twa,
                                   std::optional<int> require_halting_up_to = std::nullopt);

// States in which a deterministic end-writer performs its next write: the
// transition on blank writes a non-blank symbol.
std::vector<int> writing_states(const MachineDescription& desc);

// Two-way automaton over the current written word simulating the machine from
// writing state s (just after its write) to the next write; the halting
// states carry (next writing state, written symbol) annotations, or report
// accept/reject/divergence/fault. Off-word excursions over the blank region
// are folded into the right-endmarker behaviour.
TwoWayAutomaton between_writes_automaton(const MachineDescription& desc, int s);

// Same construction for the stretch from the initial configuration to the
// first write.
TwoWayAutomaton initial_gap_automaton(const MachineDescription& desc);

struct ProductAutomaton {
  OneWayAutomaton dfa;
  std::vector<std::vector<int>> component_state;  // [product state] -> tuple
  int components = 0;
};

ProductAutomaton product(const std::vector<const OneWayAutomaton*>& automata);

struct PumpingThreshold {
  std::int64_t constructed = 0;  // |product states| + 1 (pigeonhole)
  std::string paper_formula;
  std::optional<mpz_class> paper_value;  // when numerically representable
  bool constructed_le_paper = true;
};

PumpingThreshold pumping_threshold(const ProductAutomaton& prod, int k);

struct PumpCertificate {
  std::size_t i1 = 0, i2 = 0, i3 = 0;  // forward repeat at i1,i2; last occurrence i3
  int state = -1;                      // the repeated product state
  Word removed;                        // the infix (i1, i3]
};

struct PumpResult {
  bool found = false;  // false: no repetition (word below threshold)
  Word pumped;
  PumpCertificate certificate;
};

// Runs the product automaton over the word recording the full state sequence,
// then removes the infix between the first state with a later repeat and that
// state's last occurrence.
PumpResult pump_down(const Word& word, const ProductAutomaton& prod);

struct EndWriterAnalysis {
  std::vector<int> writers;                       // writing states
  std::vector<TwoWayAutomaton> two_way;           // initial gap first, then per writer
  std::vector<OneWayAutomaton> one_way;           // converted, same order
  ProductAutomaton prod;
  PumpingThreshold threshold;
};

EndWriterAnalysis analyze_end_writer(const MachineDescription& desc);

struct AppliedPump {
  Word original;
  Word pumped;
  PumpCertificate certificate;
};

struct EndWriterDecision {
  Outcome verdict = Outcome::Reject;  // Accept, Reject, Diverge, fault or limit
  std::int64_t peak_stored_word = 0;
  std::int64_t peak_memory_model = 0;  // the enforced bound: threshold + 1
  std::int64_t threshold = 0;
  std::int64_t writes = 0;
  std::int64_t automaton_steps = 0;
  std::vector<AppliedPump> applied;
};

// Simulates the end-writer on the input while keeping only a pumped-down
// written word, bounded by the constructed threshold; divergence is detected
// by repetition of the compressed (gap state, word) pair. The input must be
// blank-free. Verdicts agree with direct simulation whenever it halts.
EndWriterDecision decide_acceptance(const MachineDescription& desc, const Word& input,
                                    const Limits& limits);

}  // namespace wotm
