#include "wotm/machine.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <stdexcept>

namespace wotm {

const char* to_string(Move m) {
  switch (m) {
    case Move::Left: return "L";
    case Move::Right: return "R";
    case Move::Stay: return "S";
  }
  return "?";
}

const char* to_string(Mode m) {
  switch (m) {
    case Mode::Deterministic: return "deterministic";
    case Mode::Nondeterministic: return "nondeterministic";
    case Mode::Alternating: return "alternating";
  }
  return "?";
}

const char* to_string(TapeDiscipline d) {
  switch (d) {
    case TapeDiscipline::Standard: return "standard";
    case TapeDiscipline::WriteOnce: return "write-once";
    case TapeDiscipline::WriteOnceEndOnly: return "write-once-end";
  }
  return "?";
}

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Accept: return "accept";
    case Outcome::Reject: return "reject";
    case Outcome::StepLimit: return "step-limit";
    case Outcome::SpaceLimit: return "space-limit";
    case Outcome::WriteLimit: return "write-limit";
    case Outcome::WriteOnceViolation: return "write-once-violation";
    case Outcome::LoopDetected: return "loop-detected";
    case Outcome::Diverge: return "diverge";
  }
  return "?";
}

int MachineDescription::state_index(std::string_view name) const {
  for (int i = 0; i < state_count(); ++i)
    if (state_names[i] == name) return i;
  return -1;
}

bool MachineDescription::has_symbol(Symbol s) const {
  return std::find(alphabet.begin(), alphabet.end(), s) != alphabet.end();
}

TransitionIndex::TransitionIndex(const MachineDescription& desc) {
  for (int i = 0; i < static_cast<int>(desc.transitions.size()); ++i) {
    const Transition& t = desc.transitions[i];
    index_[{t.from, t.read}].push_back(i);
  }
}

const std::vector<int>& TransitionIndex::at(int state, Symbol read) const {
  auto it = index_.find({state, read});
  return it == index_.end() ? empty_ : it->second;
}

std::int64_t Tape::frontier() const {
  std::int64_t i = 0;
  for (auto& [idx, sym] : cells) {
    (void)sym;
    if (idx != i) break;
    ++i;
  }
  return i;
}

ValidationReport validate_machine(const MachineDescription& desc) {
  ValidationReport report;
  auto error = [&](std::string msg) {
    report.issues.push_back({ValidationIssue::Severity::Error, std::move(msg)});
  };
  auto warning = [&](std::string msg) {
    report.issues.push_back({ValidationIssue::Severity::Warning, std::move(msg)});
  };

  const int n = desc.state_count();
  if (n == 0) error("machine has no states");
  auto check_state = [&](int q, const char* what) {
    if (q < 0 || q >= n) error(std::string(what) + " state is missing or out of range");
  };
  check_state(desc.start, "start");
  check_state(desc.accept, "accept");
  check_state(desc.reject, "reject");

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (desc.state_names[i] == desc.state_names[j])
        error("duplicate state name '" + desc.state_names[i] + "'");

  if (!desc.has_symbol(kBlank)) error("alphabet does not contain the blank symbol 0");
  for (Symbol s : desc.alphabet)
    if (s < 0) error("negative symbol " + std::to_string(s) + " in alphabet");
  {
    auto sorted = desc.alphabet;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      error("duplicate symbol in alphabet");
  }

  if (desc.mode != Mode::Alternating) {
    for (int q = 0; q < n; ++q)
      if (desc.state_polarity(q) == Polarity::Universal)
        error("universal state '" + desc.name(q) + "' in a non-alternating machine");
  }

  std::set<std::pair<int, Symbol>> det_seen;
  for (const Transition& t : desc.transitions) {
    if (t.from < 0 || t.from >= n || t.to < 0 || t.to >= n) {
      error("transition references a state outside the machine");
      continue;
    }
    if (!desc.has_symbol(t.read))
      error("transition from '" + desc.name(t.from) + "' reads symbol " +
            std::to_string(t.read) + " not in the alphabet");
    if (!desc.has_symbol(t.write))
      error("transition from '" + desc.name(t.from) + "' writes symbol " +
            std::to_string(t.write) + " not in the alphabet");
    if (desc.is_halting(t.from))
      error("halting state '" + desc.name(t.from) + "' has an outgoing transition");
    if (desc.mode == Mode::Deterministic) {
      if (!det_seen.insert({t.from, t.read}).second)
        error("deterministic machine has two transitions on ('" + desc.name(t.from) +
              "', " + std::to_string(t.read) + ")");
    }
    if (desc.discipline != TapeDiscipline::Standard) {
      // A transition reading a mark and writing anything else can never fire.
      if (t.read != kBlank && t.write != t.read)
        warning("discipline-dead transition: ('" + desc.name(t.from) + "', " +
                std::to_string(t.read) + ") writes " + std::to_string(t.write) +
                " over a non-blank cell");
    }
  }
  return report;
}

namespace {

struct Effect {
  bool legal = false;
  bool was_write = false;
};

Effect classify_effect(const MachineDescription& desc, const Configuration& config,
                       const Transition& t) {
  const Symbol cur = config.tape.read(config.head);
  Effect e;
  e.was_write = (cur == kBlank && t.write != kBlank);
  if (desc.discipline == TapeDiscipline::Standard) {
    e.legal = true;
    return e;
  }
  // Write-once: a non-blank cell may only be rewritten with the same symbol.
  if (cur != kBlank && t.write != cur) {
    e.legal = false;
    return e;
  }
  if (desc.discipline == TapeDiscipline::WriteOnceEndOnly && e.was_write &&
      config.head != config.tape.frontier()) {
    e.legal = false;
    return e;
  }
  e.legal = true;
  return e;
}

Configuration make_successor(const Configuration& config, const Transition& t, bool was_write) {
  Configuration next = config;
  next.state = t.to;
  next.tape.write(config.head, t.write);
  switch (t.move) {
    case Move::Left:
      if (next.head > 0) --next.head;
      break;
    case Move::Right:
      ++next.head;
      break;
    case Move::Stay:
      break;
  }
  next.max_head = std::max(next.max_head, next.head);
  next.steps += 1;
  next.writes += was_write ? 1 : 0;
  return next;
}

}  // namespace

StepResult successors(const MachineDescription& desc, const Configuration& config,
                      const TransitionIndex& index) {
  StepResult result;
  if (desc.is_halting(config.state)) return result;

  const Symbol cur = config.tape.read(config.head);
  const std::vector<int>& ts = index.at(config.state, cur);
  if (ts.empty()) {
    // Missing transition: totalize by stepping into the reject state.
    Transition synthetic{config.state, cur, cur, Move::Stay, desc.reject};
    result.successors.push_back({synthetic, make_successor(config, synthetic, false), false});
    return result;
  }
  for (int ti : ts) {
    const Transition& t = desc.transitions[ti];
    Effect e = classify_effect(desc, config, t);
    if (!e.legal) {
      if (desc.mode == Mode::Deterministic) result.fault = Outcome::WriteOnceViolation;
      continue;  // pruned for nondeterministic/alternating machines
    }
    result.successors.push_back({t, make_successor(config, t, e.was_write), e.was_write});
  }
  return result;
}

std::optional<std::pair<Configuration, bool>> apply_transition(const MachineDescription& desc,
                                                               const Configuration& config,
                                                               const Transition& t) {
  if (desc.is_halting(config.state)) return std::nullopt;
  if (t.from != config.state) return std::nullopt;
  if (config.tape.read(config.head) != t.read) return std::nullopt;
  Effect e = classify_effect(desc, config, t);
  if (!e.legal) return std::nullopt;
  return std::make_pair(make_successor(config, t, e.was_write), e.was_write);
}

Configuration initial_configuration(const Word& input) {
  Configuration c;
  c.state = -1;
  c.head = 0;
  for (std::size_t i = 0; i < input.size(); ++i) c.tape.write(static_cast<std::int64_t>(i), input[i]);
  return c;
}

// ---------------------------------------------------------------------------
// Alphabet binarization
// ---------------------------------------------------------------------------

namespace {

// Incremental construction helper for generated machines.
struct MachineBuilder {
  MachineDescription m;
  std::map<std::string, int> by_name;

  int state(const std::string& name, Polarity pol = Polarity::Existential) {
    auto it = by_name.find(name);
    if (it != by_name.end()) return it->second;
    int id = m.state_count();
    m.state_names.push_back(name);
    m.polarity.push_back(pol);
    by_name.emplace(name, id);
    return id;
  }
  bool has(const std::string& name) const { return by_name.count(name) != 0; }
  void trans(int from, Symbol read, Symbol write, Move move, int to) {
    m.transitions.push_back({from, read, write, move, to});
  }
  // Chain of `count` uniform moves; every cell content is written back as read.
  // Returns the entry state; the chain ends in `to`.
  int walk(const std::string& tag, int count, Move dir, int to, Polarity pol) {
    int next = to;
    for (int i = count; i >= 1; --i) {
      int st = state(tag + ".w" + std::to_string(i), pol);
      trans(st, 0, 0, dir, next);
      trans(st, 1, 1, dir, next);
      next = st;
    }
    return next;
  }
};

int bits_for(Symbol max_symbol) {
  int b = 0;
  while ((1 << b) <= max_symbol) ++b;
  return std::max(b, 1);
}

}  // namespace

BinarizeResult binarize_alphabet(const MachineDescription& desc) {
  if (desc.discipline != TapeDiscipline::Standard)
    throw std::invalid_argument("binarize_alphabet requires a standard-discipline machine");

  Symbol max_symbol = 0;
  for (Symbol s : desc.alphabet) max_symbol = std::max(max_symbol, s);
  if (max_symbol <= 1) return {desc, 1};

  const int b = bits_for(max_symbol);
  const int width = b + 1;  // presence bit + value bits

  MachineBuilder out;
  out.m.mode = desc.mode;
  out.m.discipline = TapeDiscipline::Standard;
  out.m.alphabet = {0, 1};

  // Block-start states keep the source state names so start/accept/reject
  // carry over directly.
  for (int q = 0; q < desc.state_count(); ++q) out.state(desc.name(q), desc.state_polarity(q));
  out.m.start = desc.start;
  out.m.accept = desc.accept;
  out.m.reject = desc.reject;

  TransitionIndex index(desc);
  auto value_bit = [&](Symbol v, int j) { return (v >> (b - 1 - j)) & 1; };  // MSB first

  int chain = 0;
  // Emits the post-dispatch action for transition t, entered at `offset` cells
  // past the current block start. Returns the entry state of the action.
  auto action_entry = [&](const Transition& t, int offset) -> int {
    const Polarity pol = desc.state_polarity(t.from);
    const std::string tag = desc.name(t.from) + ".a" + std::to_string(chain++);
    const bool rewrite = t.write != t.read;
    // Final navigation: from the next block start to the target block start.
    int landing = out.state(desc.name(t.to), desc.state_polarity(t.to));
    int nav;
    if (desc.is_halting(t.to)) {
      nav = landing;  // verdict does not depend on head position
    } else {
      switch (t.move) {
        case Move::Right: nav = landing; break;
        case Move::Stay: nav = out.walk(tag + ".nav", width, Move::Left, landing, pol); break;
        case Move::Left: nav = out.walk(tag + ".nav", 2 * width, Move::Left, landing, pol); break;
      }
    }
    if (!rewrite) {
      if (desc.is_halting(t.to)) return nav;
      return offset == width ? nav : out.walk(tag + ".fwd", width - offset, Move::Right, nav, pol);
    }
    // Rewrite the block with t.write: presence 1 at +0, then the value bits.
    int entry = out.state(tag + ".rw", pol);
    std::vector<int> cells(b);
    for (int j = 0; j < b; ++j) cells[j] = out.state(tag + ".v" + std::to_string(j), pol);
    out.trans(entry, 0, 1, Move::Right, cells[0]);
    out.trans(entry, 1, 1, Move::Right, cells[0]);
    for (int j = 0; j < b; ++j) {
      int nxt = (j == b - 1) ? nav : cells[j + 1];
      int bit = value_bit(t.write, j);
      out.trans(cells[j], 0, bit, Move::Right, nxt);
      out.trans(cells[j], 1, bit, Move::Right, nxt);
    }
    // Walk back from the dispatch offset to the block start before rewriting.
    if (offset == 0) return entry;
    return out.walk(tag + ".back", offset, Move::Left, entry, pol);
  };

  for (int q = 0; q < desc.state_count(); ++q) {
    if (desc.is_halting(q)) continue;
    const Polarity pol = desc.state_polarity(q);
    const int rq = out.by_name.at(desc.name(q));

    // Blank block: presence bit is 0, simulated symbol is 0; dispatch at +0.
    for (int ti : index.at(q, kBlank)) {
      const Transition& t = desc.transitions[ti];
      int entry = action_entry(t, 0);
      out.trans(rq, 0, 0, Move::Stay, entry);
    }
    if (index.at(q, kBlank).empty()) {
      // Keep totalization behaviour: fall through to reject.
      out.trans(rq, 0, 0, Move::Stay, out.m.reject);
    }

    // Present block: read the value bits, most significant first.
    // State per (cells read, accumulated value).
    struct RdKey { int j; Symbol acc; };
    std::vector<std::vector<int>> rd(b + 1);
    for (int j = 1; j <= b; ++j) rd[j].resize(1 << (j - 1), -1);
    auto rd_state = [&](int j, Symbol acc) -> int {
      if (rd[j][acc] == -1)
        rd[j][acc] = out.state(desc.name(q) + ".rd" + std::to_string(j) + "_" + std::to_string(acc), pol);
      return rd[j][acc];
    };
    out.trans(rq, 1, 1, Move::Right, rd_state(1, 0));
    for (int j = 1; j <= b; ++j) {
      for (Symbol acc = 0; acc < (1 << (j - 1)); ++acc) {
        int st = rd[j][acc];
        if (st == -1) continue;
        for (int bit = 0; bit <= 1; ++bit) {
          Symbol acc2 = (acc << 1) | bit;
          if (j == b) {
            // Full value read; dispatch at offset `width` (next block start).
            Symbol a = acc2;
            const auto& ts = index.at(q, a);
            if (!desc.has_symbol(a) || ts.empty()) {
              out.trans(st, bit, bit, Move::Right, out.m.reject);
              continue;
            }
            for (int ti : ts) {
              const Transition& t = desc.transitions[ti];
              int entry = action_entry(t, width);
              out.trans(st, bit, bit, Move::Right, entry);
            }
          } else {
            out.trans(st, bit, bit, Move::Right, rd_state(j + 1, acc2));
          }
        }
      }
    }
  }

  return {out.m, width};
}

Word binarize_encode_input(const BinarizeResult& bin, const Word& input) {
  if (bin.block_width == 1) return input;
  const int b = bin.block_width - 1;
  Word out;
  out.reserve(input.size() * bin.block_width);
  for (Symbol s : input) {
    out.push_back(1);
    for (int j = b - 1; j >= 0; --j) out.push_back((s >> j) & 1);
  }
  return out;
}

}  // namespace wotm
