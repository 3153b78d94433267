#include "wotm/endwriter.hpp"

#include <algorithm>
#include <cassert>
#include <deque>

namespace wotm {

const char* to_string(ExitAnnotation::Kind k) {
  switch (k) {
    case ExitAnnotation::Kind::NextWrite: return "next-write";
    case ExitAnnotation::Kind::HaltAccept: return "halt-accept";
    case ExitAnnotation::Kind::HaltReject: return "halt-reject";
    case ExitAnnotation::Kind::Diverge: return "diverge";
    case ExitAnnotation::Kind::Fault: return "fault";
  }
  return "?";
}

TwaRun run_two_way(const TwoWayAutomaton& twa, const Word& word) {
  TwaRun r;
  const std::int64_t n = static_cast<std::int64_t>(word.size());
  int state = twa.start;
  std::int64_t pos = 0;  // 0 = left endmarker, n+1 = right endmarker
  std::set<std::pair<int, std::int64_t>> visited;
  for (;;) {
    if (twa.halting.count(state)) {
      r.halted = true;
      r.state = state;
      return r;
    }
    if (!visited.insert({state, pos}).second) {
      r.halted = false;
      r.state = state;
      return r;
    }
    Symbol sym = pos == 0 ? TwoWayAutomaton::kLeftEnd
                          : (pos == n + 1 ? TwoWayAutomaton::kRightEnd : word[pos - 1]);
    auto it = twa.delta.find({state, sym});
    if (it == twa.delta.end()) {
      r.halted = false;  // treat a hole in the table as a dead walk
      r.state = state;
      return r;
    }
    state = it->second.first;
    if (it->second.second == Move2::Left) {
      if (pos > 0) --pos;
    } else {
      if (pos < n + 1) ++pos;
    }
    ++r.steps;
  }
}

int OneWayAutomaton::symbol_index(Symbol s) const {
  for (int i = 0; i < static_cast<int>(alphabet.size()); ++i)
    if (alphabet[i] == s) return i;
  return -1;
}

int OneWayAutomaton::run(const Word& w) const {
  int state = start;
  for (Symbol s : w) {
    int si = symbol_index(s);
    if (si < 0) throw std::logic_error("one-way automaton fed a symbol outside its alphabet");
    state = delta[state][si];
  }
  return state;
}

// ---------------------------------------------------------------------------
// Two-way -> one-way conversion (re-entry tables)
// ---------------------------------------------------------------------------

namespace {

// Behaviour summary entry: what happens when the automaton enters a region.
struct Fate {
  enum Kind { Running = 0, Exited = 1, Dead = 2 };
  int kind = Dead;
  int state = -1;  // emerging state (Running) or halting state (Exited)
  auto operator<=>(const Fate&) const = default;
};

using Table = std::vector<Fate>;

// Simulates the automaton parked on one cell: excursions to the left resolve
// through `left` (null when the cell is the left endmarker, which pins);
// right moves either emerge (return Running) or pin when `right_pins`.
Fate resolve_at(const TwoWayAutomaton& twa, Symbol sym, int entry, const Table* left,
                bool right_pins) {
  int state = entry;
  std::set<int> seen;
  for (;;) {
    if (twa.halting.count(state)) return {Fate::Exited, state};
    if (!seen.insert(state).second) return {Fate::Dead, -1};
    auto it = twa.delta.find({state, sym});
    if (it == twa.delta.end()) return {Fate::Dead, -1};
    const auto& [next, move] = it->second;
    if (move == Move2::Right) {
      if (!right_pins) return {Fate::Running, next};
      state = next;
      continue;
    }
    // Left move.
    if (left == nullptr) {  // at the left endmarker: pin
      state = next;
      continue;
    }
    Fate f = (*left)[static_cast<std::size_t>(next)];
    if (f.kind != Fate::Running) return f;
    state = f.state;
  }
}

ExitAnnotation annotation_of(const TwoWayAutomaton& twa, const Fate& f) {
  if (f.kind == Fate::Dead) {
    ExitAnnotation a;
    a.kind = ExitAnnotation::Kind::Diverge;
    return a;
  }
  assert(f.kind == Fate::Exited);
  auto it = twa.annotations.find(f.state);
  if (it != twa.annotations.end()) return it->second;
  ExitAnnotation a;
  a.kind = twa.accepting.count(f.state) ? ExitAnnotation::Kind::HaltAccept
                                        : ExitAnnotation::Kind::HaltReject;
  return a;
}

}  // namespace

OneWayAutomaton two_way_to_one_way(const TwoWayAutomaton& twa,
                                   std::optional<int> require_halting_up_to) {
  if (require_halting_up_to) {
    std::vector<Word> words{Word{}};
    for (int len = 0; len <= *require_halting_up_to; ++len) {
      for (const Word& w : words) {
        TwaRun r = run_two_way(twa, w);
        if (!r.halted)
          throw NonHaltingTwoWayError("two-way automaton does not halt on a word of length " +
                                      std::to_string(len));
      }
      std::vector<Word> next;
      for (const Word& w : words)
        for (Symbol s : twa.alphabet) {
          Word w2 = w;
          w2.push_back(s);
          next.push_back(std::move(w2));
        }
      words = std::move(next);
    }
  }

  const int k = twa.state_count();

  // Initial summary: behaviour of the left endmarker alone.
  Table init_table(static_cast<std::size_t>(k));
  for (int q = 0; q < k; ++q)
    init_table[q] = resolve_at(twa, TwoWayAutomaton::kLeftEnd, q, nullptr, false);
  Fate init_status = resolve_at(twa, TwoWayAutomaton::kLeftEnd, twa.start, nullptr, false);

  using Key = std::pair<Fate, Table>;
  std::map<Key, int> ids;
  std::vector<Key> keys;
  OneWayAutomaton out;
  out.alphabet = twa.alphabet;

  auto intern = [&](const Fate& status, const Table& table) {
    Key key{status, table};
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    int id = static_cast<int>(keys.size());
    ids.emplace(key, id);
    keys.push_back(std::move(key));
    out.state_names.push_back("s" + std::to_string(id));
    return id;
  };

  out.start = intern(init_status, init_table);
  std::deque<int> queue{out.start};
  std::set<int> expanded;
  while (!queue.empty()) {
    int id = queue.front();
    queue.pop_front();
    if (!expanded.insert(id).second) continue;
    if (static_cast<int>(out.delta.size()) <= id) out.delta.resize(id + 1);
    out.delta[id].assign(twa.alphabet.size(), -1);
    Key key = keys[id];
    for (std::size_t si = 0; si < twa.alphabet.size(); ++si) {
      Symbol a = twa.alphabet[si];
      const auto& [status, table] = key;
      Table next_table(static_cast<std::size_t>(k));
      for (int q = 0; q < k; ++q) next_table[q] = resolve_at(twa, a, q, &table, false);
      Fate next_status = status;
      if (status.kind == Fate::Running)
        next_status = resolve_at(twa, a, status.state, &table, false);
      int nid = intern(next_status, next_table);
      out.delta[id][si] = nid;
      if (!expanded.count(nid)) queue.push_back(nid);
    }
  }

  out.output.resize(out.state_count());
  for (int id = 0; id < out.state_count(); ++id) {
    const auto& [status, table] = keys[id];
    Fate final_fate = status;
    if (status.kind == Fate::Running)
      final_fate = resolve_at(twa, TwoWayAutomaton::kRightEnd, status.state, &table, true);
    out.output[id] = annotation_of(twa, final_fate);
    if (final_fate.kind == Fate::Exited && twa.accepting.count(final_fate.state))
      out.accepting.insert(id);
  }
  return out;
}

// ---------------------------------------------------------------------------
// End-writer gap automata
// ---------------------------------------------------------------------------

std::vector<int> writing_states(const MachineDescription& desc) {
  TransitionIndex idx(desc);
  std::vector<int> out;
  for (int q = 0; q < desc.state_count(); ++q) {
    if (desc.is_halting(q)) continue;
    const auto& ts = idx.at(q, kBlank);
    if (!ts.empty() && desc.transitions[ts.front()].write != kBlank) out.push_back(q);
  }
  return out;
}

namespace {

void require_end_writer(const MachineDescription& desc, const char* what) {
  if (desc.discipline != TapeDiscipline::WriteOnceEndOnly)
    throw std::invalid_argument(std::string(what) + " requires a write-once-end machine");
  if (desc.mode != Mode::Deterministic)
    throw std::invalid_argument(std::string(what) + " requires a deterministic machine");
}

// Builds the two-way automaton simulating one inter-write gap of the machine.
struct GapAutomatonBuilder {
  const MachineDescription& desc;
  TransitionIndex idx;
  TwoWayAutomaton twa;
  int acc_exit, rej_exit, div_exit, fault_exit;
  std::map<int, int> write_exit;  // writing state -> exit state
  std::map<int, int> embed;       // machine state -> automaton state

  explicit GapAutomatonBuilder(const MachineDescription& d) : desc(d), idx(d) {
    for (Symbol s : desc.alphabet)
      if (s != kBlank) twa.alphabet.push_back(s);
    acc_exit = exit_state("exit.accept", {ExitAnnotation::Kind::HaltAccept});
    rej_exit = exit_state("exit.reject", {ExitAnnotation::Kind::HaltReject});
    div_exit = exit_state("exit.diverge", {ExitAnnotation::Kind::Diverge});
    fault_exit = exit_state("exit.fault", {ExitAnnotation::Kind::Fault});
    twa.accepting.insert(acc_exit);
    for (int q = 0; q < desc.state_count(); ++q)
      if (!desc.is_halting(q)) embed[q] = twa.add_state("m." + desc.name(q));
    for (auto& [q, id] : embed) emit_state(q, id);
  }

  int exit_state(const std::string& name, ExitAnnotation ann) {
    int id = twa.add_state(name);
    twa.halting.insert(id);
    twa.annotations[id] = ann;
    return id;
  }

  // Machine state -> automaton state, halting states to their exits.
  int target(int q) {
    if (q == desc.accept) return acc_exit;
    if (q == desc.reject) return rej_exit;
    return embed.at(q);
  }

  int writer_exit(int q, Symbol w) {
    auto it = write_exit.find(q);
    if (it != write_exit.end()) return it->second;
    int id = exit_state("exit.write." + desc.name(q),
                        {ExitAnnotation::Kind::NextWrite, q, w});
    write_exit.emplace(q, id);
    return id;
  }

  // The single transition of a deterministic machine, or nullptr (reject).
  const Transition* lookup(int q, Symbol a) {
    const auto& ts = idx.at(q, a);
    return ts.empty() ? nullptr : &desc.transitions[ts.front()];
  }

  void emit_state(int q, int id) {
    // Left endmarker: bounce back; together with the preceding left move this
    // emulates the machine pinning at cell 0.
    twa.delta[{id, TwoWayAutomaton::kLeftEnd}] = {id, Move2::Right};

    for (Symbol a : twa.alphabet) {
      // Word cells hold non-blank symbols; compress Stay chains.
      int cur = q;
      std::set<int> seen;
      for (;;) {
        if (cur == desc.accept) { twa.delta[{id, a}] = {acc_exit, Move2::Right}; break; }
        if (cur == desc.reject) { twa.delta[{id, a}] = {rej_exit, Move2::Right}; break; }
        if (!seen.insert(cur).second) { twa.delta[{id, a}] = {div_exit, Move2::Right}; break; }
        const Transition* t = lookup(cur, a);
        if (!t) { twa.delta[{id, a}] = {rej_exit, Move2::Right}; break; }
        if (t->write != a) { twa.delta[{id, a}] = {fault_exit, Move2::Right}; break; }
        if (t->move == Move::Stay) { cur = t->to; continue; }
        twa.delta[{id, a}] = {target(t->to), t->move == Move::Left ? Move2::Left : Move2::Right};
        break;
      }
    }

    // Right endmarker = the frontier blank. Right moves pin there, which
    // expresses both Stay steps and returns from the blank region.
    const Transition* t = lookup(q, kBlank);
    if (!t) {
      twa.delta[{id, TwoWayAutomaton::kRightEnd}] = {rej_exit, Move2::Right};
      return;
    }
    if (t->write != kBlank) {
      twa.delta[{id, TwoWayAutomaton::kRightEnd}] = {writer_exit(q, t->write), Move2::Right};
      return;
    }
    switch (t->move) {
      case Move::Left:
        twa.delta[{id, TwoWayAutomaton::kRightEnd}] =
            {target(t->to), Move2::Left};
        break;
      case Move::Stay:
        twa.delta[{id, TwoWayAutomaton::kRightEnd}] = {target(t->to), Move2::Right};
        break;
      case Move::Right: {
        // The machine leaves the frontier into the all-blank region; its walk
        // there is input-independent, so its fate folds into one transition.
        auto fate = roam(t->to);
        twa.delta[{id, TwoWayAutomaton::kRightEnd}] = {fate, Move2::Right};
        break;
      }
    }
  }

  // Deterministic walk over uniform blanks starting one cell right of the
  // frontier; returns the automaton state expressing its fate.
  int roam(int q0) {
    const int k = desc.state_count();
    const std::int64_t bound = 64LL * (k + 4) * (k + 4);
    int state = q0;
    std::int64_t pos = 1;
    std::map<int, std::int64_t> first_pos;
    for (std::int64_t step = 0; step <= bound; ++step) {
      if (state == desc.accept) return acc_exit;
      if (state == desc.reject) return rej_exit;
      if (pos == 0) return target(state);
      auto it = first_pos.find(state);
      if (it != first_pos.end() && pos >= it->second) return div_exit;  // non-negative drift
      if (it == first_pos.end()) first_pos.emplace(state, pos);
      const Transition* t = lookup(state, kBlank);
      if (!t) return rej_exit;
      if (t->write != kBlank) return fault_exit;  // write beyond the frontier
      state = t->to;
      pos += t->move == Move::Left ? -1 : (t->move == Move::Right ? 1 : 0);
    }
    return div_exit;  // unreachable: drifting walks are caught above
  }
};

TwoWayAutomaton with_dispatch(GapAutomatonBuilder&& builder, int init_target_state,
                              std::optional<std::pair<Move, int>> post_write) {
  TwoWayAutomaton twa = std::move(builder.twa);
  int init = twa.add_state("dispatch.init");
  twa.start = init;
  if (!post_write) {
    // Initial gap: the machine starts on cell 0.
    twa.delta[{init, TwoWayAutomaton::kLeftEnd}] = {init_target_state, Move2::Right};
    for (Symbol a : twa.alphabet) twa.delta[{init, a}] = {init, Move2::Right};
    twa.delta[{init, TwoWayAutomaton::kRightEnd}] = {init_target_state, Move2::Right};
    return twa;
  }
  // Post-write gap: walk to the frontier, then place the head per the
  // writing transition's move (the written cell is the last word cell).
  int walk = twa.add_state("dispatch.walk");
  twa.delta[{init, TwoWayAutomaton::kLeftEnd}] = {walk, Move2::Right};
  for (Symbol a : twa.alphabet) {
    twa.delta[{init, a}] = {walk, Move2::Right};
    twa.delta[{walk, a}] = {walk, Move2::Right};
  }
  twa.delta[{walk, TwoWayAutomaton::kLeftEnd}] = {walk, Move2::Right};
  auto [move, q2] = *post_write;
  switch (move) {
    case Move::Right:
      twa.delta[{walk, TwoWayAutomaton::kRightEnd}] = {q2, Move2::Right};  // pin: new frontier
      break;
    case Move::Stay:
      twa.delta[{walk, TwoWayAutomaton::kRightEnd}] = {q2, Move2::Left};
      break;
    case Move::Left: {
      int hop = twa.add_state("dispatch.hop");
      twa.delta[{walk, TwoWayAutomaton::kRightEnd}] = {hop, Move2::Left};
      for (Symbol a : twa.alphabet) twa.delta[{hop, a}] = {q2, Move2::Left};
      twa.delta[{hop, TwoWayAutomaton::kLeftEnd}] = {q2, Move2::Right};  // one-cell word
      twa.delta[{hop, TwoWayAutomaton::kRightEnd}] = {hop, Move2::Left};  // unreachable
      break;
    }
  }
  return twa;
}

}  // namespace

TwoWayAutomaton between_writes_automaton(const MachineDescription& desc, int s) {
  require_end_writer(desc, "between_writes_automaton");
  auto writers = writing_states(desc);
  if (std::find(writers.begin(), writers.end(), s) == writers.end())
    throw NotAWritingStateError("state '" + (s >= 0 && s < desc.state_count() ? desc.name(s)
                                                                              : std::string("?")) +
                                "' does not write on its next action");
  GapAutomatonBuilder builder(desc);
  TransitionIndex idx(desc);
  const Transition& wt = desc.transitions[idx.at(s, kBlank).front()];
  int q2 = builder.target(wt.to);
  return with_dispatch(std::move(builder), -1, std::make_pair(wt.move, q2));
}

TwoWayAutomaton initial_gap_automaton(const MachineDescription& desc) {
  require_end_writer(desc, "initial_gap_automaton");
  GapAutomatonBuilder builder(desc);
  int q0 = builder.target(desc.start);
  return with_dispatch(std::move(builder), q0, std::nullopt);
}

// ---------------------------------------------------------------------------
// Product, pumping, decider
// ---------------------------------------------------------------------------

ProductAutomaton product(const std::vector<const OneWayAutomaton*>& automata) {
  if (automata.empty()) throw std::invalid_argument("product of zero automata");
  for (const auto* a : automata)
    if (a->alphabet != automata.front()->alphabet)
      throw AlphabetMismatchError("product components must share one alphabet");

  ProductAutomaton prod;
  prod.components = static_cast<int>(automata.size());
  prod.dfa.alphabet = automata.front()->alphabet;

  std::map<std::vector<int>, int> ids;
  auto intern = [&](const std::vector<int>& tuple) {
    auto it = ids.find(tuple);
    if (it != ids.end()) return it->second;
    int id = static_cast<int>(prod.component_state.size());
    ids.emplace(tuple, id);
    prod.component_state.push_back(tuple);
    prod.dfa.state_names.push_back("p" + std::to_string(id));
    return id;
  };

  std::vector<int> start_tuple;
  for (const auto* a : automata) start_tuple.push_back(a->start);
  prod.dfa.start = intern(start_tuple);

  std::deque<int> queue{prod.dfa.start};
  std::set<int> done;
  while (!queue.empty()) {
    int id = queue.front();
    queue.pop_front();
    if (!done.insert(id).second) continue;
    if (static_cast<int>(prod.dfa.delta.size()) <= id) prod.dfa.delta.resize(id + 1);
    prod.dfa.delta[id].assign(prod.dfa.alphabet.size(), -1);
    std::vector<int> tuple = prod.component_state[id];
    for (std::size_t si = 0; si < prod.dfa.alphabet.size(); ++si) {
      std::vector<int> next;
      next.reserve(tuple.size());
      for (std::size_t c = 0; c < tuple.size(); ++c)
        next.push_back(automata[c]->delta[tuple[c]][si]);
      int nid = intern(next);
      prod.dfa.delta[id][si] = nid;
      if (!done.count(nid)) queue.push_back(nid);
    }
  }
  prod.dfa.delta.resize(prod.component_state.size());
  prod.dfa.output.resize(prod.component_state.size());
  for (std::size_t id = 0; id < prod.component_state.size(); ++id) {
    bool all = true;
    for (std::size_t c = 0; c < prod.component_state[id].size(); ++c)
      all = all && automata[c]->accepting.count(prod.component_state[id][c]);
    if (all) prod.dfa.accepting.insert(static_cast<int>(id));
  }
  return prod;
}

PumpingThreshold pumping_threshold(const ProductAutomaton& prod, int k) {
  PumpingThreshold t;
  t.constructed = prod.dfa.state_count() + 1;
  t.paper_formula = "O(2^K) with K = (2^(k^2))^k = 2^(k^3), k = " + std::to_string(k);
  mpz_class kk = k;
  mpz_class exponent;  // K = 2^(k^3)
  mpz_class k3 = kk * kk * kk;
  if (k3.fits_ulong_p() && k3.get_ui() <= 64) {
    mpz_ui_pow_ui(exponent.get_mpz_t(), 2, k3.get_ui());
  } else {
    exponent = 0;  // K itself is astronomically large
  }
  if (exponent > 0 && exponent.fits_ulong_p() && exponent.get_ui() <= (1u << 20)) {
    mpz_class v;
    mpz_ui_pow_ui(v.get_mpz_t(), 2, exponent.get_ui());
    t.paper_value = v;
    t.constructed_le_paper = mpz_class(t.constructed) <= *t.paper_value;
  } else {
    // Compare via bit length: constructed < 2^K iff bits(constructed) <= K.
    mpz_class bits = static_cast<unsigned long>(
        mpz_sizeinbase(mpz_class(t.constructed).get_mpz_t(), 2));
    t.constructed_le_paper = exponent == 0 || bits <= exponent;
  }
  return t;
}

PumpResult pump_down(const Word& word, const ProductAutomaton& prod) {
  PumpResult result;
  std::vector<int> run;
  run.reserve(word.size() + 1);
  int state = prod.dfa.start;
  run.push_back(state);
  for (Symbol s : word) {
    state = prod.dfa.delta[state][prod.dfa.symbol_index(s)];
    run.push_back(state);
  }
  // First position whose state recurs later; remove up to its last occurrence.
  std::map<int, std::size_t> last;
  for (std::size_t i = 0; i < run.size(); ++i) last[run[i]] = i;
  for (std::size_t i1 = 0; i1 < run.size(); ++i1) {
    std::size_t i3 = last[run[i1]];
    if (i3 == i1) continue;
    std::size_t i2 = i1 + 1;
    while (run[i2] != run[i1]) ++i2;
    result.found = true;
    result.certificate.i1 = i1;
    result.certificate.i2 = i2;
    result.certificate.i3 = i3;
    result.certificate.state = run[i1];
    result.certificate.removed.assign(word.begin() + static_cast<std::ptrdiff_t>(i1),
                                      word.begin() + static_cast<std::ptrdiff_t>(i3));
    result.pumped.assign(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(i1));
    result.pumped.insert(result.pumped.end(), word.begin() + static_cast<std::ptrdiff_t>(i3),
                         word.end());
    return result;
  }
  return result;
}

EndWriterAnalysis analyze_end_writer(const MachineDescription& desc) {
  require_end_writer(desc, "analyze_end_writer");
  EndWriterAnalysis a;
  a.writers = writing_states(desc);
  a.two_way.push_back(initial_gap_automaton(desc));
  for (int s : a.writers) a.two_way.push_back(between_writes_automaton(desc, s));
  for (const TwoWayAutomaton& twa : a.two_way) a.one_way.push_back(two_way_to_one_way(twa));
  std::vector<const OneWayAutomaton*> parts;
  for (const OneWayAutomaton& owa : a.one_way) parts.push_back(&owa);
  a.prod = product(parts);
  a.threshold = pumping_threshold(a.prod, desc.state_count());
  return a;
}

EndWriterDecision decide_acceptance(const MachineDescription& desc, const Word& input,
                                    const Limits& limits) {
  require_end_writer(desc, "decide_acceptance");
  for (Symbol s : input) {
    if (s == kBlank)
      throw std::invalid_argument("end-writer inputs must be blank-free words");
    if (!desc.has_symbol(s))
      throw std::invalid_argument("input symbol outside the machine alphabet");
  }

  EndWriterAnalysis analysis = analyze_end_writer(desc);
  EndWriterDecision d;
  d.threshold = analysis.threshold.constructed;
  d.peak_memory_model = d.threshold + 1;

  // Automaton per phase: 0 = initial gap, i+1 = gap after writer i.
  std::map<int, int> writer_phase;
  for (std::size_t i = 0; i < analysis.writers.size(); ++i)
    writer_phase[analysis.writers[i]] = static_cast<int>(i) + 1;

  Word x = input;
  int phase = 0;
  auto pump_all = [&]() {
    while (static_cast<std::int64_t>(x.size()) >= d.threshold) {
      PumpResult p = pump_down(x, analysis.prod);
      if (!p.found) throw std::logic_error("pigeonhole failure: no repetition above threshold");
      d.applied.push_back({x, p.pumped, p.certificate});
      x = std::move(p.pumped);
    }
  };
  pump_all();
  d.peak_stored_word = static_cast<std::int64_t>(x.size());

  std::set<std::pair<int, Word>> seen;
  for (;;) {
    if (!seen.insert({phase, x}).second) {
      d.verdict = Outcome::Diverge;
      return d;
    }
    d.automaton_steps += static_cast<std::int64_t>(x.size()) + 2;
    if (d.automaton_steps > limits.max_steps) {
      d.verdict = Outcome::StepLimit;
      return d;
    }
    const OneWayAutomaton& owa = analysis.one_way[static_cast<std::size_t>(phase)];
    const ExitAnnotation& ann = owa.output[static_cast<std::size_t>(owa.run(x))];
    switch (ann.kind) {
      case ExitAnnotation::Kind::HaltAccept: d.verdict = Outcome::Accept; return d;
      case ExitAnnotation::Kind::HaltReject: d.verdict = Outcome::Reject; return d;
      case ExitAnnotation::Kind::Diverge: d.verdict = Outcome::Diverge; return d;
      case ExitAnnotation::Kind::Fault: d.verdict = Outcome::WriteOnceViolation; return d;
      case ExitAnnotation::Kind::NextWrite: {
        x.push_back(ann.write_symbol);
        ++d.writes;
        d.peak_stored_word = std::max(d.peak_stored_word,
                                      static_cast<std::int64_t>(x.size()));
        if (limits.max_writes && d.writes > *limits.max_writes) {
          d.verdict = Outcome::WriteLimit;
          return d;
        }
        phase = writer_phase.at(ann.writing_state);
        pump_all();
        break;
      }
    }
  }
}

}  // namespace wotm
