// Machine-to-machine translators: write-once relaxation, the copying
// construction, the WOM-coded construction, and a differential equivalence
// harness used to witness verdict preservation.
#pragma once

#include <functional>
#include <optional>
#include <string>

#include "wotm/machine.hpp"
#include "wotm/simulate.hpp"
#include "wotm/womcode.hpp"

namespace wotm {

struct TranspileReport {
  std::string construction;
  int source_states = 0;
  int target_states = 0;
  double blowup = 0.0;  // state-count ratio
  // Tape layout; fully determines the input-encoding map the harness uses.
  std::string layout;
  std::string step_overhead_model;
};

// Same transition table under the standard discipline; every write-once-legal
// run is a legal standard run, so verdicts are preserved (a machine with
// discipline-dead transitions may gain behaviours, which the harness reports).
MachineDescription relax_to_standard(const MachineDescription& desc);

struct TranspileResult {
  MachineDescription machine;
  TranspileReport report;
};

// Write-once simulation of a binary standard machine by whole-tape copying.
// The tape is a sequence of snapshot segments of 4-cell blocks
// [presence, value, head-marker, copy-progress], each segment prefixed by a
// start block [1,0,1,1]. Non-destructive writes happen in place; a 1->0 write
// marks the head block and copies the segment to a fresh one appended at the
// right end, leaving the head block for last so the head lands on it without
// any counting in states. Works for any mode; for alternating machines the
// construction applies per branch of the computation tree.
TranspileResult to_write_once_copying(const MachineDescription& desc);

// Input encoding matching to_write_once_copying's layout.
Word copying_encode_input(const Word& input);

// Structural invariants of a copying-transpiled tape snapshot. Empty result
// means the snapshot parses as start-prefixed segments with contiguous
// presence (at most one hole in the forming segment) and at most one segment
// with a partially advanced copy pointer.
std::vector<std::string> check_copying_layout(const Tape& tape);

// Write-once simulation of a binary standard machine on WOM-coded cells.
// Each simulated cell is a group of (1 + code width) cells: a group mark
// followed by the code's physical word. Reads decode the group; writes run
// the code's update inside the group. A run that exceeds the per-cell update
// budget enters the distinguished `budget_exhausted` state and rejects.
TranspileResult to_write_once_womcoded(const MachineDescription& desc, const WomCode& code);

Word womcoded_encode_input(const WomCode& code, const Word& input);

// ---------------------------------------------------------------------------
// Differential equivalence harness
// ---------------------------------------------------------------------------

enum class Verdict { Accept, Reject, Fault, Inconclusive };
const char* to_string(Verdict v);

struct EngineRun {
  Verdict verdict = Verdict::Inconclusive;
  Outcome outcome = Outcome::Reject;
  std::int64_t steps = 0;
  std::int64_t space = 0;
  std::int64_t writes = 0;
};

// Runs a machine with the engine matching its mode and normalizes the result.
// Deterministic loop detection counts as a definitive non-accept.
EngineRun run_machine(const MachineDescription& desc, const Word& input, const Limits& limits);

struct DiffEntry {
  Word input;
  EngineRun a;
  EngineRun b;
  bool agree = false;
  bool inconclusive = false;
};

struct DiffReport {
  std::vector<DiffEntry> entries;
  std::int64_t words_checked = 0;
  std::int64_t agreements = 0;
  std::int64_t divergences = 0;
  std::int64_t inconclusive = 0;
  std::optional<std::size_t> first_divergence;  // index into entries
  // Traces of the first divergence when the machines are deterministic.
  std::optional<RunTrace> diverging_trace_a, diverging_trace_b;
  // Max resource ratios of b over a across definitive entries.
  double max_steps_ratio = 0.0, max_space_ratio = 0.0, max_writes_ratio = 0.0;
  bool clean() const { return divergences == 0; }
};

using InputEncoding = std::function<Word(const Word&)>;

// Enumerates every word over a's alphabet up to max_len, runs a on the word
// and b on its encoding, and compares verdicts. Limit-hits on either side are
// reported as inconclusive, never as divergence.
DiffReport differential_check(const MachineDescription& a, const MachineDescription& b,
                              const InputEncoding& encode, int max_len, const Limits& limits);

}  // namespace wotm
