// Execution engines and run analyses: resource-limited simulation, inter-write
// loop detection, breadth-first nondeterministic search, alternating
// acceptance, run shortening and gap statistics.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>

#include "wotm/machine.hpp"

namespace wotm {

struct Limits {
  std::int64_t max_steps = 100000;
  std::int64_t max_space = 10000;
  std::optional<std::int64_t> max_writes;
};

struct GapReport {
  std::int64_t write_count = 0;
  // Leading gap, the gaps between consecutive writes, trailing gap.
  std::vector<std::int64_t> gaps;
  // Maximum over the inter-write gaps only; that is what the bound covers.
  std::int64_t max_gap = 0;
  std::int64_t space_used = 0;
  bool bound_check = true;  // max_gap <= space_used * state_count
};

GapReport gap_stats(const RunTrace& trace, int state_count);

struct InvalidTraceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Runs a deterministic machine until accept/reject/fault/limit. Within each
// stretch of steps that leaves the tape unchanged the set of visited (state,
// head) pairs is tracked; a repeat means the machine can never halt
// (deterministic + unchanged tape), reported as LoopDetected. The set is
// cleared whenever the tape changes, in particular at every write.
RunTrace run_deterministic(const MachineDescription& desc, const Word& input,
                           const Limits& limits, bool record_trace = true,
                           bool detect_loops = true);

// As above but starting from an explicit configuration.
RunTrace run_deterministic_from(const MachineDescription& desc, const Configuration& start,
                                const Limits& limits, bool record_trace = true,
                                bool detect_loops = true);

struct NdResult {
  bool accepts = false;
  std::optional<RunTrace> witness;   // a legal accepting trace when accepts
  bool frontier_exhausted = false;   // entire reachable set within limits covered
  bool truncated = false;            // some branch hit a limit (or was faulted)
  std::int64_t explored = 0;         // distinct configurations visited
};

// Breadth-first exploration of the configuration graph with memoization on
// (state, head, tape); ties between sibling transitions follow declaration
// order, so the first accepting trace found is reproducible and shortest.
NdResult run_nondeterministic(const MachineDescription& desc, const Word& input,
                              const Limits& limits);

enum class Ternary { False, True, Unresolved };

struct AltResult {
  bool accepts = false;
  bool truncated = false;
  std::int64_t explored = 0;
  // Verdict per configuration at its earliest occurrence. Unresolved covers
  // limit-truncated nodes and cycles; both evaluate false for acceptance
  // (least-fixed-point semantics).
  std::map<ConfigKey, Ternary> value_map;
};

// Least-fixed-point acceptance over the step-layered configuration graph:
// existential nodes accept iff some successor accepts, universal iff all do.
AltResult run_alternating(const MachineDescription& desc, const Word& input,
                          const Limits& limits);

// Replays a transition sequence from an initial configuration, verifying each
// step; throws InvalidTraceError if a transition is not applicable.
RunTrace replay_transitions(const MachineDescription& desc, const Configuration& initial,
                            const std::vector<Transition>& transitions);

// Removes, within each inter-write gap, the steps between two visits of the
// same (state, head) pair with identical tape, leftmost-innermost first,
// iterated to fixpoint. The result replays as a legal run with the same
// initial/final point and the same write-event sequence.
RunTrace shorten_run(const MachineDescription& desc, const RunTrace& trace);

}  // namespace wotm
