// Test-only oracles, independent of the simulator implementation: a direct
// re-implementation of the step semantics, brute-force run-tree enumeration
// for nondeterministic machines, and a memoization-free recursive game-tree
// evaluation for alternating machines.
#pragma once

#include <random>

#include "wotm/machine.hpp"

namespace wotm::test {

struct OracleStep {
  Transition taken;
  Configuration config;
  bool was_write = false;
};

inline std::vector<OracleStep> oracle_successors(const MachineDescription& m,
                                                 const Configuration& c) {
  std::vector<OracleStep> out;
  if (c.state == m.accept || c.state == m.reject) return out;
  Symbol cur = c.tape.read(c.head);

  auto push = [&](const Transition& t) {
    if (m.discipline != TapeDiscipline::Standard) {
      if (cur != kBlank && t.write != cur) return false;  // illegal overwrite
      if (m.discipline == TapeDiscipline::WriteOnceEndOnly && cur == kBlank &&
          t.write != kBlank) {
        std::int64_t frontier = 0;
        while (c.tape.read(frontier) != kBlank) ++frontier;
        if (c.head != frontier) return false;
      }
    }
    Configuration n = c;
    n.state = t.to;
    n.tape.write(c.head, t.write);
    if (t.move == Move::Left && n.head > 0) --n.head;
    if (t.move == Move::Right) ++n.head;
    n.max_head = std::max(n.max_head, n.head);
    n.steps += 1;
    bool write = cur == kBlank && t.write != kBlank;
    n.writes += write ? 1 : 0;
    out.push_back({t, std::move(n), write});
    return true;
  };

  bool any_rule = false;
  for (const Transition& t : m.transitions) {
    if (t.from != c.state || t.read != cur) continue;
    any_rule = true;
    push(t);
  }
  if (!any_rule) {
    Transition synthetic{c.state, cur, cur, Move::Stay, m.reject};
    push(synthetic);
  }
  return out;
}

// Deterministic run without any loop detector.
struct OracleRun {
  bool halted = false;
  bool accepted = false;
  bool faulted = false;
  Configuration final_config;
};

inline OracleRun oracle_run_deterministic(const MachineDescription& m, const Word& input,
                                          std::int64_t max_steps) {
  Configuration c = initial_configuration(input);
  c.state = m.start;
  OracleRun r;
  while (c.steps < max_steps) {
    if (c.state == m.accept || c.state == m.reject) {
      r.halted = true;
      r.accepted = c.state == m.accept;
      r.final_config = c;
      return r;
    }
    auto succ = oracle_successors(m, c);
    if (succ.empty()) {  // unique transition was discipline-illegal
      r.faulted = true;
      r.final_config = c;
      return r;
    }
    c = std::move(succ.front().config);
  }
  r.final_config = c;
  return r;
}

// Exhaustive enumeration of every run of length <= depth.
inline bool oracle_nd_accepts(const MachineDescription& m, const Configuration& c, int depth,
                              std::int64_t max_space) {
  if (c.state == m.accept) return true;
  if (c.state == m.reject) return false;
  if (depth == 0) return false;
  for (auto& s : oracle_successors(m, c)) {
    if (s.config.space_used() > max_space) continue;
    if (oracle_nd_accepts(m, s.config, depth - 1, max_space)) return true;
  }
  return false;
}

inline bool oracle_nd_accepts(const MachineDescription& m, const Word& input, int depth,
                              std::int64_t max_space) {
  Configuration c = initial_configuration(input);
  c.state = m.start;
  return oracle_nd_accepts(m, c, depth, max_space);
}

// Recursive game-tree evaluation with an explicit depth cap.
inline bool oracle_alt_accepts(const MachineDescription& m, const Configuration& c, int depth,
                               std::int64_t max_space) {
  if (c.state == m.accept) return true;
  if (c.state == m.reject) return false;
  if (depth == 0) return false;
  auto succ = oracle_successors(m, c);
  bool universal = m.state_polarity(c.state) == Polarity::Universal;
  // Successors beyond the space bound count as non-accepting children.
  if (universal) {
    for (auto& s : succ) {
      bool v = s.config.space_used() <= max_space &&
               oracle_alt_accepts(m, s.config, depth - 1, max_space);
      if (!v) return false;
    }
    return true;
  }
  for (auto& s : succ) {
    if (s.config.space_used() > max_space) continue;
    if (oracle_alt_accepts(m, s.config, depth - 1, max_space)) return true;
  }
  return false;
}

inline bool oracle_alt_accepts(const MachineDescription& m, const Word& input, int depth,
                               std::int64_t max_space) {
  Configuration c = initial_configuration(input);
  c.state = m.start;
  return oracle_alt_accepts(m, c, depth, max_space);
}

// Random legal walk, for exercising trace analyses on wandering runs.
inline std::vector<Transition> oracle_random_walk(const MachineDescription& m, const Word& input,
                                                  int steps, std::uint32_t seed) {
  std::mt19937 rng(seed);
  Configuration c = initial_configuration(input);
  c.state = m.start;
  std::vector<Transition> path;
  for (int i = 0; i < steps; ++i) {
    auto succ = oracle_successors(m, c);
    if (succ.empty()) break;
    auto& pick = succ[rng() % succ.size()];
    path.push_back(pick.taken);
    c = pick.config;
  }
  return path;
}

}  // namespace wotm::test
