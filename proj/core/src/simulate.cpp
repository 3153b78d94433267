#include "wotm/simulate.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <set>
#include <stdexcept>

namespace wotm {

GapReport gap_stats(const RunTrace& trace, int state_count) {
  GapReport r;
  r.write_count = trace.final_config.writes;
  r.gaps = trace.gaps;
  r.space_used = trace.final_config.space_used();
  r.max_gap = 0;
  // gaps = [leading, inter..., trailing]; inter-write gaps exist only with
  // at least two writes.
  for (std::size_t i = 1; i + 1 < r.gaps.size(); ++i) r.max_gap = std::max(r.max_gap, r.gaps[i]);
  r.bound_check = r.max_gap <= r.space_used * static_cast<std::int64_t>(state_count);
  return r;
}

namespace {

void finish_gaps(RunTrace& trace, std::vector<std::int64_t>& gaps, std::int64_t current_gap) {
  gaps.push_back(current_gap);
  trace.gaps = std::move(gaps);
}

}  // namespace

RunTrace run_deterministic_from(const MachineDescription& desc, const Configuration& start,
                                const Limits& limits, bool record_trace, bool detect_loops) {
  if (desc.mode != Mode::Deterministic)
    throw std::invalid_argument("run_deterministic requires a deterministic machine");
  TransitionIndex index(desc);

  RunTrace trace;
  trace.initial = start;
  trace.recorded = record_trace;

  Configuration cfg = start;
  std::set<std::pair<int, std::int64_t>> visited;  // (state, head) since last tape change
  std::vector<std::int64_t> gaps;
  std::int64_t current_gap = 0;

  for (;;) {
    if (cfg.state == desc.accept) {
      trace.outcome = Outcome::Accept;
      break;
    }
    if (cfg.state == desc.reject) {
      trace.outcome = Outcome::Reject;
      break;
    }
    if (detect_loops && !visited.insert({cfg.state, cfg.head}).second) {
      trace.outcome = Outcome::LoopDetected;
      break;
    }
    if (cfg.steps >= limits.max_steps) {
      trace.outcome = Outcome::StepLimit;
      break;
    }
    StepResult step = successors(desc, cfg, index);
    if (step.fault) {
      trace.outcome = *step.fault;
      break;
    }
    assert(step.successors.size() == 1);
    Successor& s = step.successors.front();

    const bool tape_changed = s.taken.write != cfg.tape.read(cfg.head);
    if (s.was_write) {
      gaps.push_back(current_gap);
      current_gap = 0;
    } else {
      ++current_gap;
    }
    if (tape_changed) visited.clear();

    if (record_trace) trace.events.push_back({s.taken, s.config, s.was_write});
    cfg = std::move(s.config);

    if (cfg.space_used() > limits.max_space) {
      trace.outcome = Outcome::SpaceLimit;
      break;
    }
    if (limits.max_writes && cfg.writes > *limits.max_writes) {
      trace.outcome = Outcome::WriteLimit;
      break;
    }
  }

  trace.final_config = cfg;
  finish_gaps(trace, gaps, current_gap);
  return trace;
}

RunTrace run_deterministic(const MachineDescription& desc, const Word& input,
                           const Limits& limits, bool record_trace, bool detect_loops) {
  Configuration start = initial_configuration(input);
  start.state = desc.start;
  return run_deterministic_from(desc, start, limits, record_trace, detect_loops);
}

NdResult run_nondeterministic(const MachineDescription& desc, const Word& input,
                              const Limits& limits) {
  TransitionIndex index(desc);
  NdResult result;

  struct Node {
    Configuration config;
    int parent = -1;
    Transition via;  // transition taken from parent
  };
  std::vector<Node> nodes;
  std::map<ConfigKey, int> seen;
  std::deque<int> queue;

  Configuration start = initial_configuration(input);
  start.state = desc.start;
  nodes.push_back({start, -1, {}});
  seen.emplace(key_of(start), 0);
  queue.push_back(0);

  int accept_node = -1;
  while (!queue.empty()) {
    int id = queue.front();
    queue.pop_front();
    Configuration cfg = nodes[id].config;  // copy: nodes may reallocate below
    if (cfg.state == desc.accept) {
      accept_node = id;
      break;
    }
    if (cfg.state == desc.reject) continue;
    if (cfg.steps >= limits.max_steps) {
      result.truncated = true;
      continue;
    }
    StepResult step = successors(desc, cfg, index);
    if (step.fault) {
      result.truncated = true;
      continue;
    }
    for (Successor& s : step.successors) {
      if (s.config.space_used() > limits.max_space ||
          (limits.max_writes && s.config.writes > *limits.max_writes)) {
        result.truncated = true;
        continue;
      }
      ConfigKey k = key_of(s.config);
      if (seen.count(k)) continue;
      int nid = static_cast<int>(nodes.size());
      nodes.push_back({std::move(s.config), id, s.taken});
      seen.emplace(std::move(k), nid);
      queue.push_back(nid);
    }
  }

  result.explored = static_cast<std::int64_t>(nodes.size());
  if (accept_node >= 0) {
    result.accepts = true;
    result.frontier_exhausted = false;
    std::vector<Transition> path;
    for (int id = accept_node; nodes[id].parent != -1; id = nodes[id].parent)
      path.push_back(nodes[id].via);
    std::reverse(path.begin(), path.end());
    RunTrace witness = replay_transitions(desc, nodes[0].config, path);
    witness.outcome = Outcome::Accept;
    result.witness = std::move(witness);
  } else {
    result.accepts = false;
    result.frontier_exhausted = true;
  }
  return result;
}

AltResult run_alternating(const MachineDescription& desc, const Word& input,
                          const Limits& limits) {
  TransitionIndex index(desc);
  AltResult result;

  struct Node {
    Configuration config;
    std::vector<int> succ;
    Ternary value = Ternary::Unresolved;
    bool terminal = false;
  };
  std::vector<Node> nodes;
  std::map<std::pair<ConfigKey, std::int64_t>, int> seen;

  Configuration start = initial_configuration(input);
  start.state = desc.start;

  auto intern = [&](Configuration&& cfg) {
    std::pair<ConfigKey, std::int64_t> k{key_of(cfg), cfg.steps};
    auto it = seen.find(k);
    if (it != seen.end()) return it->second;
    int id = static_cast<int>(nodes.size());
    nodes.push_back({std::move(cfg), {}, Ternary::Unresolved, false});
    seen.emplace(std::move(k), id);
    return id;
  };

  intern(std::move(start));
  // Breadth-first expansion; node ids are in nondecreasing step order.
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    Configuration cfg = nodes[i].config;
    if (cfg.state == desc.accept) {
      nodes[i].terminal = true;
      nodes[i].value = Ternary::True;
      continue;
    }
    if (cfg.state == desc.reject) {
      nodes[i].terminal = true;
      nodes[i].value = Ternary::False;
      continue;
    }
    if (cfg.steps >= limits.max_steps) {
      nodes[i].terminal = true;
      nodes[i].value = Ternary::Unresolved;
      result.truncated = true;
      continue;
    }
    StepResult step = successors(desc, cfg, index);
    if (step.fault) {
      nodes[i].terminal = true;
      nodes[i].value = Ternary::Unresolved;
      result.truncated = true;
      continue;
    }
    bool truncated_succ = false;
    for (Successor& s : step.successors) {
      if (s.config.space_used() > limits.max_space ||
          (limits.max_writes && s.config.writes > *limits.max_writes)) {
        truncated_succ = true;
        continue;
      }
      int child = intern(std::move(s.config));  // may reallocate nodes
      nodes[i].succ.push_back(child);
    }
    if (truncated_succ) {
      result.truncated = true;
      // A truncated branch behaves as an unresolved (non-accepting) child.
      int id = static_cast<int>(nodes.size());
      nodes.push_back({{}, {}, Ternary::Unresolved, true});
      nodes[i].succ.push_back(id);
    }
  }

  // Backward induction over the layered DAG (successors have higher steps, so
  // higher ids; a reverse sweep settles everything).
  for (int i = static_cast<int>(nodes.size()) - 1; i >= 0; --i) {
    Node& n = nodes[i];
    if (n.terminal) continue;
    const bool universal = desc.state_polarity(n.config.state) == Polarity::Universal;
    bool any_true = false, all_true = true, any_false = false, all_false = true;
    for (int s : n.succ) {
      Ternary v = nodes[s].value;
      any_true |= v == Ternary::True;
      all_true &= v == Ternary::True;
      any_false |= v == Ternary::False;
      all_false &= v == Ternary::False;
    }
    if (n.succ.empty()) {
      // All branches pruned by the discipline: vacuous universal accepts,
      // existential rejects.
      n.value = universal ? Ternary::True : Ternary::False;
      continue;
    }
    if (universal) {
      if (all_true) n.value = Ternary::True;
      else if (any_false) n.value = Ternary::False;
      else n.value = Ternary::Unresolved;
    } else {
      if (any_true) n.value = Ternary::True;
      else if (all_false) n.value = Ternary::False;
      else n.value = Ternary::Unresolved;
    }
  }

  result.accepts = nodes[0].value == Ternary::True;
  result.explored = static_cast<std::int64_t>(nodes.size());
  for (const Node& n : nodes) {
    if (n.config.state < 0) continue;  // synthetic truncation child
    result.value_map.emplace(key_of(n.config), n.value);  // first occurrence wins
  }
  return result;
}

RunTrace replay_transitions(const MachineDescription& desc, const Configuration& initial,
                            const std::vector<Transition>& transitions) {
  RunTrace trace;
  trace.initial = initial;
  trace.recorded = true;

  Configuration cfg = initial;
  std::vector<std::int64_t> gaps;
  std::int64_t current_gap = 0;
  for (const Transition& t : transitions) {
    auto applied = apply_transition(desc, cfg, t);
    if (!applied)
      throw InvalidTraceError("transition from '" +
                              (t.from >= 0 && t.from < desc.state_count() ? desc.name(t.from)
                                                                          : std::string("?")) +
                              "' does not apply at step " + std::to_string(cfg.steps));
    if (applied->second) {
      gaps.push_back(current_gap);
      current_gap = 0;
    } else {
      ++current_gap;
    }
    trace.events.push_back({t, applied->first, applied->second});
    cfg = std::move(applied->first);
  }
  trace.final_config = cfg;
  finish_gaps(trace, gaps, current_gap);
  if (cfg.state == desc.accept) trace.outcome = Outcome::Accept;
  else if (cfg.state == desc.reject) trace.outcome = Outcome::Reject;
  else trace.outcome = Outcome::StepLimit;
  return trace;
}

RunTrace shorten_run(const MachineDescription& desc, const RunTrace& trace) {
  if (!trace.recorded) throw InvalidTraceError("cannot shorten a trace without recorded events");

  // Re-verify the input trace and collect the step sequence.
  std::vector<Transition> steps;
  steps.reserve(trace.events.size());
  for (const TraceEvent& e : trace.events) steps.push_back(e.taken);
  RunTrace verified = replay_transitions(desc, trace.initial, steps);
  for (std::size_t i = 0; i < trace.events.size(); ++i) {
    if (!same_point(verified.events[i].after, trace.events[i].after) ||
        verified.events[i].was_write != trace.events[i].was_write)
      throw InvalidTraceError("trace event " + std::to_string(i) +
                              " does not match its replayed successor");
  }

  // Work on configs C0..Cn; event i leads to C_i. A gap is a maximal range of
  // configs with no write event strictly inside it.
  std::vector<Configuration> configs;
  configs.push_back(verified.initial);
  for (auto& e : verified.events) configs.push_back(e.after);
  std::vector<bool> is_write;
  is_write.push_back(false);  // C0 alignment slot
  for (auto& e : verified.events) is_write.push_back(e.was_write);

  bool changed = true;
  while (changed) {
    changed = false;
    std::size_t gap_start = 0;
    std::map<std::pair<int, std::int64_t>, std::size_t> last_at;
    for (std::size_t j = 0; j <= verified.events.size() && !changed; ++j) {
      if (j > 0 && is_write[j]) {
        gap_start = j;
        last_at.clear();
      }
      std::pair<int, std::int64_t> key{configs[j].state, configs[j].head};
      auto it = last_at.find(key);
      if (it != last_at.end() && configs[it->second].tape == configs[j].tape) {
        // Excise events (i, j]: drop steps i+1..j.
        std::size_t i = it->second;
        steps.erase(steps.begin() + static_cast<std::ptrdiff_t>(i),
                    steps.begin() + static_cast<std::ptrdiff_t>(j));
        verified = replay_transitions(desc, trace.initial, steps);
        configs.clear();
        configs.push_back(verified.initial);
        for (auto& e : verified.events) configs.push_back(e.after);
        is_write.assign(1, false);
        for (auto& e : verified.events) is_write.push_back(e.was_write);
        changed = true;
      } else {
        last_at[key] = j;
      }
    }
  }

  verified.outcome = trace.outcome;
  return verified;
}

}  // namespace wotm
