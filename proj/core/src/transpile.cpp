#include "wotm/transpile.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <set>
#include <stdexcept>

namespace wotm {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Accept: return "accept";
    case Verdict::Reject: return "reject";
    case Verdict::Fault: return "fault";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

MachineDescription relax_to_standard(const MachineDescription& desc) {
  MachineDescription out = desc;
  out.discipline = TapeDiscipline::Standard;
  return out;
}

namespace {

void require_binary_standard(const MachineDescription& desc, const char* what) {
  if (desc.discipline != TapeDiscipline::Standard)
    throw std::invalid_argument(std::string(what) + " requires a standard-discipline machine");
  for (Symbol s : desc.alphabet)
    if (s != 0 && s != 1)
      throw std::invalid_argument(std::string(what) + " requires a binary alphabet");
}

// Create-once state table with deferred transition emission so mutually
// recursive gadgets can reference each other.
struct GadgetBuilder {
  MachineDescription m;
  std::map<std::string, int> ids;
  std::deque<std::pair<int, std::function<void(int)>>> pending;

  int plain(const std::string& name, Polarity pol) {
    auto it = ids.find(name);
    if (it != ids.end()) return it->second;
    int id = m.state_count();
    m.state_names.push_back(name);
    m.polarity.push_back(pol);
    ids.emplace(name, id);
    return id;
  }
  int ensure(const std::string& name, Polarity pol, std::function<void(int)> fill) {
    auto it = ids.find(name);
    if (it != ids.end()) return it->second;
    int id = plain(name, pol);
    pending.push_back({id, std::move(fill)});
    return id;
  }
  void run() {
    while (!pending.empty()) {
      auto [id, fill] = std::move(pending.front());
      pending.pop_front();
      fill(id);
    }
  }
  void trans(int from, Symbol read, Symbol write, Move move, int to) {
    m.transitions.push_back({from, read, write, move, to});
  }
  void passthrough(int from, Move move, int to) {
    trans(from, 0, 0, move, to);
    trans(from, 1, 1, move, to);
  }
  // Chain of `count` pass-through moves ending in `to`.
  int chain(const std::string& tag, int count, Move dir, int to) {
    int next = to;
    for (int i = count; i >= 1; --i) {
      next = ensure(tag + "." + std::to_string(i), Polarity::Existential,
                    [this, dir, next](int id) { passthrough(id, dir, next); });
    }
    return next;
  }
};

// ---------------------------------------------------------------------------
// Copying construction
//
// Physical layout: 4-cell blocks [presence, value, head-marker, copy-progress]
// grouped into segments, each segment prefixed by a start block [1,0,1,1].
// The rightmost segment is current; on a destructive write the head block is
// marked (h), the segment is copied block-by-block to a fresh segment after
// the extent (copy pointer = leftmost c=0 block on the old side, write target
// = first/second p=0 block on the new side), the head block's copy is left as
// an all-blank hole and filled last, which re-locates the head without any
// counting in states.
// ---------------------------------------------------------------------------

struct Pend {
  int next_state;
  Move move;
  bool operator<(const Pend& o) const {
    return std::tie(next_state, move) < std::tie(o.next_state, o.move);
  }
};

class CopyingBuilder {
 public:
  explicit CopyingBuilder(const MachineDescription& src) : src_(src), idx_(src) {}

  MachineDescription build() {
    b_.m.mode = src_.mode;
    b_.m.discipline = TapeDiscipline::WriteOnce;
    b_.m.alphabet = {0, 1};
    int accept = b_.plain("accept", Polarity::Existential);
    int reject = b_.plain("reject", Polarity::Existential);
    b_.m.accept = accept;
    b_.m.reject = reject;
    b_.m.start = b_.chain("boot", 4, Move::Right, rd0(src_.start));
    b_.run();
    return b_.m;
  }

 private:
  std::string pkey(const Pend& p) const {
    return src_.name(p.next_state) + "." + to_string(p.move);
  }

  int rd0(int q) {
    if (q == src_.accept) return b_.ids.at("accept");
    if (q == src_.reject) return b_.ids.at("reject");
    Polarity pol = src_.state_polarity(q);
    return b_.ensure("rd0." + src_.name(q), pol, [this, q](int id) {
      int next = rdv(q);
      b_.trans(id, 0, 1, Move::Right, next);  // materialize the block on visit
      b_.trans(id, 1, 1, Move::Right, next);
    });
  }

  int rdv(int q) {
    Polarity pol = src_.state_polarity(q);
    return b_.ensure("rdv." + src_.name(q), pol, [this, q](int id) {
      for (Symbol a = 0; a <= 1; ++a) {
        const auto& ts = idx_.at(q, a);
        if (ts.empty()) {
          b_.trans(id, a, a, Move::Stay, b_.ids.at("reject"));
          continue;
        }
        for (int ti : ts) {
          const Transition& t = src_.transitions[ti];
          if (a == 1 && t.write == 0) {
            // Destructive write: mark the head block and start a copy.
            b_.trans(id, 1, 1, Move::Right, head_mark({t.to, t.move}));
            continue;
          }
          Symbol first = (a == 0 && t.write == 1) ? 1 : a;
          switch (t.move) {
            case Move::Right:
              b_.trans(id, a, first, Move::Right, fwd_to_next(t.to));
              break;
            case Move::Stay:
              b_.trans(id, a, first, Move::Left, rd0(t.to));
              break;
            case Move::Left:
              b_.trans(id, a, first, Move::Left, left_probe_from0(t.to));
              break;
          }
        }
      }
    });
  }

  // From +2, pass through +2,+3 and land on the next block start.
  int fwd_to_next(int q) {
    return b_.chain("fwd." + src_.name(q), 2, Move::Right, rd0(q));
  }

  // From +0: step left and probe the left neighbour's copy-progress cell;
  // 1 means we sit on the segment's first block (the neighbour is a start
  // block or retired content), so a simulated Left stays at cell 0.
  int left_probe_from0(int q) {
    return b_.ensure("pl0." + src_.name(q), Polarity::Existential,
                     [this, q](int id) { b_.passthrough(id, Move::Left, left_probe(q)); });
  }
  int left_probe(int q) {
    return b_.ensure("plc." + src_.name(q), Polarity::Existential, [this, q](int id) {
      b_.trans(id, 1, 1, Move::Right, rd0(q));  // at the segment edge: stay
      int back = b_.chain("plb." + src_.name(q), 2, Move::Left, rd0(q));
      b_.trans(id, 0, 0, Move::Left, back);
    });
  }

  // Copy machinery, parameterized by the pending (next state, move).
  int head_mark(Pend p) {
    return b_.ensure("hm." + pkey(p), Polarity::Existential, [this, p](int id) {
      int hc = b_.chain("hc." + pkey(p), 1, Move::Right, find_extent(p));
      b_.trans(id, 0, 1, Move::Right, hc);
      b_.trans(id, 1, 1, Move::Right, hc);
    });
  }

  // Walk right block-by-block to the first p=0 block and write the fresh
  // segment's start block there.
  int find_extent(Pend p) {
    return b_.ensure("fsk." + pkey(p), Polarity::Existential, [this, p](int id) {
      b_.trans(id, 1, 1, Move::Right, b_.chain("fsks." + pkey(p), 3, Move::Right, id));
      int st1 = b_.ensure("st1." + pkey(p), Polarity::Existential, [this, p](int s1) {
        int st2 = b_.ensure("st2." + pkey(p), Polarity::Existential, [this, p](int s2) {
          int st3 = b_.ensure("st3." + pkey(p), Polarity::Existential, [this, p](int s3) {
            b_.trans(s3, 0, 1, Move::Right, rewind(p, 'A', 0));
          });
          b_.trans(s2, 0, 1, Move::Right, st3);
        });
        b_.trans(s1, 0, 0, Move::Right, st2);
      });
      b_.trans(id, 0, 1, Move::Right, st1);
    });
  }

  // Walk left from a block start to the old segment's start block (skipping
  // exactly one start block: the fresh one), then hand over to the scan.
  // Start blocks are the only blocks with h=1 and v=0. Built eagerly so the
  // family's states exist as soon as rewind() returns.
  int rewind(Pend p, char phase, int seen) {
    std::string k = pkey(p) + "." + phase + std::to_string(seen);
    auto it = b_.ids.find("rwA." + k);
    if (it != b_.ids.end()) return it->second;
    int a = b_.plain("rwA." + k, Polarity::Existential);
    int bst = b_.plain("rwB." + k, Polarity::Existential);
    int c = b_.plain("rwC." + k, Polarity::Existential);
    int d = b_.plain("rwD." + k, Polarity::Existential);
    int e = b_.plain("rwE." + k, Polarity::Existential);
    b_.passthrough(a, Move::Left, bst);    // block start -> neighbour's c cell
    b_.passthrough(bst, Move::Left, c);    // -> neighbour's h cell
    b_.trans(c, 0, 0, Move::Left, d);      // plain data block
    b_.trans(c, 1, 1, Move::Left, e);      // start block or old head block
    b_.passthrough(d, Move::Left, a);      // -> neighbour's block start
    b_.trans(e, 1, 1, Move::Left, a);      // v=1: the old head block, keep going
    if (seen == 0) {
      b_.trans(e, 0, 0, Move::Left, rewind(p, phase, 1));
    } else {
      int g = b_.chain("rwG." + pkey(p) + "." + phase, 2, Move::Right, oscan(p, phase));
      b_.trans(e, 0, 0, Move::Right, g);
    }
    return a;
  }

  // At an old-segment block start, find the leftmost uncopied block, mark it
  // copied and carry its contents right; the fresh start block signals that
  // everything is copied.
  int oscan(Pend p, char phase) {
    std::string k = pkey(p) + "." + phase;
    return b_.ensure("os0." + k, Polarity::Existential, [this, p, phase, k](int id) {
      int os1 = b_.ensure("os1." + k, Polarity::Existential, [this, p, phase, k](int o1) {
        for (Symbol v = 0; v <= 1; ++v) {
          int os2 = b_.ensure("os2." + k + std::to_string(v), Polarity::Existential,
                              [this, p, phase, k, v](int o2) {
            for (Symbol h = 0; h <= 1; ++h) {
              if (v == 0 && h == 1) {
                // Start block: the old segment is fully copied.
                int f = b_.chain("osf." + k, 1, Move::Right, hole_scan(p));
                b_.trans(o2, 1, 1, Move::Right, f);
                continue;
              }
              int os3 = b_.ensure("os3." + k + std::to_string(v) + std::to_string(h),
                                  Polarity::Existential, [this, p, phase, v, h](int o3) {
                int o0 = oscan(p, phase);
                b_.trans(o3, 1, 1, Move::Right, o0);  // already copied, next block
                char payload = h ? 'H' : (v ? '1' : '0');
                char nphase = phase;
                b_.trans(o3, 0, 1, Move::Right, carry(p, nphase, payload));
              });
              b_.trans(o2, h, h, Move::Right, os3);
            }
          });
          b_.trans(o1, v, v, Move::Right, os2);
        }
      });
      b_.trans(id, 1, 1, Move::Right, os1);
      b_.trans(id, 0, 0, Move::Stay, b_.ids.at("reject"));  // cannot happen
    });
  }

  // Carry (payload in {'0','1','H'}) right across the remaining old blocks
  // and the fresh start block, then write at the target block.
  int carry(Pend p, char phase, char payload) {
    std::string k = pkey(p) + "." + phase + payload;
    return b_.ensure("cr0." + k, Polarity::Existential, [this, p, phase, payload, k](int id) {
      int post = carry_post(p, phase, payload, false);
      int cr1 = b_.ensure("cr1." + k, Polarity::Existential, [this, p, phase, payload, k,
                                                              post](int c1) {
        for (Symbol v = 0; v <= 1; ++v) {
          int cr2 = b_.ensure("cr2." + k + std::to_string(v), Polarity::Existential,
                              [this, k, v, post](int c2) {
            for (Symbol h = 0; h <= 1; ++h) {
              if (v == 0 && h == 1) {
                // Crossed the fresh start block; its c cell then the target
                // scan on the new side.
                int s = b_.chain("crs." + k, 1, Move::Right, post);
                b_.trans(c2, 1, 1, Move::Right, s);
                continue;
              }
              int c3 = b_.chain("cr3." + k + std::to_string(v) + std::to_string(h), 1,
                                Move::Right, b_.ids.at("cr0." + k));
              b_.trans(c2, h, h, Move::Right, c3);
            }
          });
          b_.trans(c1, v, v, Move::Right, cr2);
        }
      });
      b_.trans(id, 1, 1, Move::Right, cr1);
      b_.trans(id, 0, 0, Move::Stay, b_.ids.at("reject"));  // cannot happen
    });
  }

  // New-side target scan. In phase B the first blank block is the hole and is
  // skipped once; the write target is the next blank block.
  int carry_post(Pend p, char phase, char payload, bool hole_passed) {
    std::string k = pkey(p) + "." + phase + payload + (hole_passed ? "x" : "");
    return b_.ensure("crp." + k, Polarity::Existential,
                     [this, p, phase, payload, hole_passed, k](int id) {
      b_.trans(id, 1, 1, Move::Right, b_.chain("crps." + k, 3, Move::Right, id));
      if (phase == 'B' && !hole_passed) {
        int skip = b_.chain("crph." + k, 3, Move::Right, carry_post(p, phase, payload, true));
        b_.trans(id, 0, 0, Move::Right, skip);
        return;
      }
      if (payload == 'H') {
        // Leave the hole: write nothing and start rewinding in phase B.
        b_.trans(id, 0, 0, Move::Left, rewind_entry_from_minus1(p, 'B'));
        return;
      }
      int wv = b_.ensure("wv." + k, Polarity::Existential, [this, p, phase, payload](int w) {
        b_.trans(w, 0, payload == '1' ? 1 : 0, Move::Left, rewind(p, phase, 0));
      });
      b_.trans(id, 0, 1, Move::Right, wv);
    });
  }

  // rewind() expects to start at a block start; stepping Left from a block
  // start lands on the neighbour's c cell, which is rwB's position.
  int rewind_entry_from_minus1(Pend p, char phase) {
    rewind(p, phase, 0);  // materialize the family
    return b_.ids.at("rwB." + pkey(p) + "." + phase + "0");
  }

  // After the copy: find the hole in the fresh segment, fill its presence bit
  // and resume the simulation with the pending move.
  int hole_scan(Pend p) {
    return b_.ensure("hs." + pkey(p), Polarity::Existential, [this, p](int id) {
      b_.trans(id, 1, 1, Move::Right, b_.chain("hss." + pkey(p), 3, Move::Right, id));
      switch (p.move) {
        case Move::Stay:
          b_.trans(id, 0, 1, Move::Stay, rd0(p.next_state));
          break;
        case Move::Right:
          b_.trans(id, 0, 1, Move::Right,
                   b_.chain("hsr." + pkey(p), 3, Move::Right, rd0(p.next_state)));
          break;
        case Move::Left:
          b_.trans(id, 0, 1, Move::Left, left_probe(p.next_state));
          break;
      }
    });
  }

  const MachineDescription& src_;
  TransitionIndex idx_;
  GadgetBuilder b_;
};

}  // namespace

TranspileResult to_write_once_copying(const MachineDescription& desc) {
  require_binary_standard(desc, "to_write_once_copying");
  CopyingBuilder builder(desc);
  TranspileResult result;
  result.machine = builder.build();
  result.report.construction = "copying";
  result.report.source_states = desc.state_count();
  result.report.target_states = result.machine.state_count();
  result.report.blowup =
      static_cast<double>(result.report.target_states) / std::max(1, result.report.source_states);
  result.report.layout =
      "segments of 4-cell blocks [presence,value,head-marker,copy-progress], "
      "start block [1,0,1,1]; input encoded one block per symbol after the start block";
  result.report.step_overhead_model = "O((steps + space)^3)";
  return result;
}

Word copying_encode_input(const Word& input) {
  Word out = {1, 0, 1, 1};
  for (Symbol s : input) {
    if (s != 0 && s != 1) throw std::invalid_argument("copying layout encodes binary words only");
    out.push_back(1);
    out.push_back(s);
    out.push_back(0);
    out.push_back(0);
  }
  return out;
}

std::vector<std::string> check_copying_layout(const Tape& tape) {
  std::vector<std::string> problems;
  std::int64_t last = tape.max_written();
  if (last < 0) {
    problems.push_back("tape has no start block");
    return problems;
  }
  std::int64_t blocks = last / 4 + 1;
  auto cell = [&](std::int64_t b, int off) { return tape.read(b * 4 + off); };
  auto is_start = [&](std::int64_t b) {
    return cell(b, 0) == 1 && cell(b, 1) == 0 && cell(b, 2) == 1 && cell(b, 3) == 1;
  };
  if (!is_start(0)) problems.push_back("block 0 is not a start block");

  struct Segment {
    std::int64_t first = 0, count = 0;
  };
  std::vector<Segment> segments;
  for (std::int64_t b = 0; b < blocks; ++b) {
    if (is_start(b)) {
      segments.push_back({b + 1, 0});
    } else if (!segments.empty()) {
      ++segments.back().count;
    }
  }

  int partial_copies = 0;
  for (std::size_t si = 0; si < segments.size(); ++si) {
    const Segment& seg = segments[si];
    std::int64_t extent = 0;
    int holes = 0;
    bool after_presence = false;
    std::int64_t marked = 0;
    bool c_gap = false;
    int head_marks = 0;
    for (std::int64_t j = 0; j < seg.count; ++j) {
      std::int64_t b = seg.first + j;
      int p = cell(b, 0), v = cell(b, 1), h = cell(b, 2), c = cell(b, 3);
      if (p == 1) {
        if (after_presence) ++holes, after_presence = false;
        extent = j + 1;
      } else {
        if (extent > 0) after_presence = true;
        if (v == 1) problems.push_back("value bit without presence in segment " +
                                       std::to_string(si));
      }
      if (c == 1) {
        if (c_gap) problems.push_back("copy-progress marks are not a prefix in segment " +
                                      std::to_string(si));
        ++marked;
      } else if (marked > 0) {
        c_gap = true;
      }
      head_marks += h;
    }
    if (holes > 1)
      problems.push_back("more than one presence hole in segment " + std::to_string(si));
    if (holes == 1 && si + 1 != segments.size())
      problems.push_back("presence hole outside the forming segment");
    if (head_marks > 1)
      problems.push_back("multiple head marks in segment " + std::to_string(si));
    if (marked > 0 && marked < extent) ++partial_copies;
  }
  if (partial_copies > 1)
    problems.push_back("more than one segment with a partially advanced copy pointer");
  return problems;
}

// ---------------------------------------------------------------------------
// WOM-coded construction
// ---------------------------------------------------------------------------

namespace {

struct WomTables {
  std::vector<WomWord> words;                 // reachable under {0,1} updates
  std::map<WomWord, int> word_id;
  std::vector<int> decode;                    // per word
  std::map<std::pair<int, int>, int> next;    // (word, value) -> word, -1 exhausted
  std::set<std::string> prefixes;             // feasible bit prefixes of words
};

WomTables enumerate_words(const WomCode& code) {
  WomTables t;
  std::deque<WomWord> queue;
  auto intern = [&](const WomWord& w) {
    auto it = t.word_id.find(w);
    if (it != t.word_id.end()) return it->second;
    int id = static_cast<int>(t.words.size());
    t.words.push_back(w);
    t.word_id.emplace(w, id);
    auto d = code.decode(w);
    if (!d) throw std::logic_error("reachable WOM word fails to decode");
    t.decode.push_back(*d);
    queue.push_back(w);
    return id;
  };
  intern(code.fresh());
  while (!queue.empty()) {
    WomWord w = queue.front();
    queue.pop_front();
    int id = t.word_id.at(w);
    for (int v = 0; v <= 1; ++v) {
      WomUpdateResult r = code.update(w, v);
      if (r.status == WomStatus::Ok)
        t.next[{id, v}] = intern(r.word);
      else
        t.next[{id, v}] = -1;
    }
  }
  for (const WomWord& w : t.words) {
    std::string s;
    t.prefixes.insert(s);
    for (auto bit : w) {
      s += bit ? '1' : '0';
      t.prefixes.insert(s);
    }
  }
  return t;
}

class WomcodedBuilder {
 public:
  WomcodedBuilder(const MachineDescription& src, const WomCode& code)
      : src_(src), idx_(src), code_(code), tables_(enumerate_words(code)), width_(code.width()) {}

  MachineDescription build() {
    b_.m.mode = src_.mode;
    b_.m.discipline = TapeDiscipline::WriteOnce;
    b_.m.alphabet = {0, 1};
    b_.m.accept = b_.plain("accept", Polarity::Existential);
    b_.m.reject = b_.plain("reject", Polarity::Existential);
    b_.plain("budget_exhausted", Polarity::Existential);  // no outgoing: rejects
    b_.m.start = g0(src_.start);
    b_.run();
    return b_.m;
  }

 private:
  int group_width() const { return width_ + 1; }

  int g0(int q) {
    if (q == src_.accept) return b_.ids.at("accept");
    if (q == src_.reject) return b_.ids.at("reject");
    Polarity pol = src_.state_polarity(q);
    return b_.ensure("g0." + src_.name(q), pol, [this, q](int id) {
      int next = rd(q, "");
      b_.trans(id, 0, 1, Move::Right, next);  // mark the group on first visit
      b_.trans(id, 1, 1, Move::Right, next);
    });
  }

  // Reading code cell |prefix|+1 with the given accumulated bits.
  int rd(int q, const std::string& prefix) {
    Polarity pol = src_.state_polarity(q);
    return b_.ensure("rd." + src_.name(q) + "." + prefix, pol, [this, q, prefix](int id) {
      for (Symbol bit = 0; bit <= 1; ++bit) {
        std::string p2 = prefix + (bit ? '1' : '0');
        if (!tables_.prefixes.count(p2)) {
          b_.trans(id, bit, bit, Move::Stay, b_.ids.at("reject"));  // unreachable word
          continue;
        }
        if (static_cast<int>(p2.size()) < width_) {
          b_.trans(id, bit, bit, Move::Right, rd(q, p2));
          continue;
        }
        // Full physical word read; dispatch on the decoded value. We stand on
        // the last code cell and move right onto the next group start.
        WomWord w(p2.size());
        for (std::size_t i = 0; i < p2.size(); ++i) w[i] = p2[i] == '1';
        int wid = tables_.word_id.at(w);
        Symbol a = tables_.decode[wid];
        const auto& ts = idx_.at(q, a);
        if (ts.empty()) {
          b_.trans(id, bit, bit, Move::Stay, b_.ids.at("reject"));
          continue;
        }
        for (int ti : ts) {
          const Transition& t = src_.transitions[ti];
          if (t.write == a) {
            b_.trans(id, bit, bit, Move::Right, navigate(t.to, t.move));
          } else {
            int nw = tables_.next.at({wid, t.write});
            if (nw < 0) {
              b_.trans(id, bit, bit, Move::Stay, b_.ids.at("budget_exhausted"));
            } else {
              // Back to the group start, then rewrite the code cells.
              int upd = update_entry(t, wid, nw);
              b_.trans(id, bit, bit, Move::Right,
                       b_.chain("ub." + std::to_string(ti) + "." + std::to_string(wid),
                                group_width(), Move::Left, upd));
            }
          }
        }
      }
    });
  }

  // From the next group start, land on the target group start for the move.
  int navigate(int q, Move mv) {
    switch (mv) {
      case Move::Right: return g0(q);
      case Move::Stay:
        return b_.chain("nvs." + src_.name(q), group_width(), Move::Left, g0(q));
      case Move::Left:
        return b_.chain("nvl." + src_.name(q), 2 * group_width(), Move::Left, g0(q));
    }
    return -1;
  }

  // At the group start: pass the mark cell, then write the target word's bits
  // over the current ones (only 0->1 changes, so each state reads exactly the
  // old bit).
  int update_entry(const Transition& t, int wid, int nwid) {
    std::string k = "up." + std::to_string(wid) + "." + std::to_string(nwid) + "." +
                    src_.name(t.to) + "." + to_string(t.move);
    return b_.ensure(k, Polarity::Existential, [this, t, wid, nwid, k](int id) {
      int after = navigate(t.to, t.move);
      int next = after;
      for (int j = width_ - 1; j >= 0; --j) {
        Symbol ob = tables_.words[wid][j];
        Symbol nb = tables_.words[nwid][j];
        int cur = b_.ensure(k + ".c" + std::to_string(j), Polarity::Existential,
                            [this, ob, nb, next](int c) {
          b_.trans(c, ob, nb, Move::Right, next);
        });
        next = cur;
      }
      b_.trans(id, 1, 1, Move::Right, next);
    });
  }

  const MachineDescription& src_;
  TransitionIndex idx_;
  const WomCode& code_;
  WomTables tables_;
  int width_;
  GadgetBuilder b_;
};

}  // namespace

TranspileResult to_write_once_womcoded(const MachineDescription& desc, const WomCode& code) {
  require_binary_standard(desc, "to_write_once_womcoded");
  if (code.value_count() < 2)
    throw std::invalid_argument("to_write_once_womcoded needs a code with at least 2 values");
  WomcodedBuilder builder(desc, code);
  TranspileResult result;
  result.machine = builder.build();
  result.report.construction = "womcoded";
  result.report.source_states = desc.state_count();
  result.report.target_states = result.machine.state_count();
  result.report.blowup =
      static_cast<double>(result.report.target_states) / std::max(1, result.report.source_states);
  result.report.layout = "groups of " + std::to_string(code.width() + 1) +
                         " cells [mark, code word]; code " + code.describe();
  result.report.step_overhead_model = "O(steps * code_width); space O(space * code_width)";
  return result;
}

Word womcoded_encode_input(const WomCode& code, const Word& input) {
  Word out;
  for (Symbol s : input) {
    if (s != 0 && s != 1) throw std::invalid_argument("womcoded layout encodes binary words only");
    out.push_back(1);
    WomWord w = code.fresh();
    if (s != 0) {
      WomUpdateResult r = code.update(w, s);
      if (r.status != WomStatus::Ok) throw std::logic_error("initial encode failed");
      w = r.word;
    }
    for (auto bit : w) out.push_back(bit);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Differential harness
// ---------------------------------------------------------------------------

EngineRun run_machine(const MachineDescription& desc, const Word& input, const Limits& limits) {
  EngineRun r;
  switch (desc.mode) {
    case Mode::Deterministic: {
      RunTrace t = run_deterministic(desc, input, limits, /*record_trace=*/false);
      r.outcome = t.outcome;
      r.steps = t.final_config.steps;
      r.space = t.final_config.space_used();
      r.writes = t.final_config.writes;
      switch (t.outcome) {
        case Outcome::Accept: r.verdict = Verdict::Accept; break;
        case Outcome::Reject:
        case Outcome::LoopDetected: r.verdict = Verdict::Reject; break;
        case Outcome::WriteOnceViolation: r.verdict = Verdict::Fault; break;
        default: r.verdict = Verdict::Inconclusive; break;
      }
      break;
    }
    case Mode::Nondeterministic: {
      NdResult n = run_nondeterministic(desc, input, limits);
      if (n.accepts) {
        r.verdict = Verdict::Accept;
        r.outcome = Outcome::Accept;
        if (n.witness) {
          r.steps = n.witness->final_config.steps;
          r.space = n.witness->final_config.space_used();
          r.writes = n.witness->final_config.writes;
        }
      } else {
        r.verdict = n.truncated ? Verdict::Inconclusive : Verdict::Reject;
        r.outcome = n.truncated ? Outcome::StepLimit : Outcome::Reject;
        r.steps = n.explored;
      }
      break;
    }
    case Mode::Alternating: {
      AltResult a = run_alternating(desc, input, limits);
      if (a.accepts) {
        r.verdict = Verdict::Accept;
        r.outcome = Outcome::Accept;
      } else {
        r.verdict = a.truncated ? Verdict::Inconclusive : Verdict::Reject;
        r.outcome = a.truncated ? Outcome::StepLimit : Outcome::Reject;
      }
      r.steps = a.explored;
      break;
    }
  }
  return r;
}

DiffReport differential_check(const MachineDescription& a, const MachineDescription& b,
                              const InputEncoding& encode, int max_len, const Limits& limits) {
  DiffReport report;
  Word word;
  auto visit = [&](const Word& w) {
    DiffEntry e;
    e.input = w;
    e.a = run_machine(a, w, limits);
    e.b = run_machine(b, encode ? encode(w) : w, limits);
    ++report.words_checked;
    if (e.a.verdict == Verdict::Inconclusive || e.b.verdict == Verdict::Inconclusive) {
      e.inconclusive = true;
      ++report.inconclusive;
    } else if (e.a.verdict == e.b.verdict) {
      e.agree = true;
      ++report.agreements;
      if (e.a.steps > 0) {
        report.max_steps_ratio =
            std::max(report.max_steps_ratio, static_cast<double>(e.b.steps) / e.a.steps);
      }
      if (e.a.space > 0)
        report.max_space_ratio =
            std::max(report.max_space_ratio, static_cast<double>(e.b.space) / e.a.space);
      if (e.a.writes > 0)
        report.max_writes_ratio =
            std::max(report.max_writes_ratio, static_cast<double>(e.b.writes) / e.a.writes);
    } else {
      ++report.divergences;
      if (!report.first_divergence) {
        report.first_divergence = report.entries.size();
        if (a.mode == Mode::Deterministic)
          report.diverging_trace_a = run_deterministic(a, w, limits);
        if (b.mode == Mode::Deterministic)
          report.diverging_trace_b = run_deterministic(b, encode ? encode(w) : w, limits);
      }
    }
    report.entries.push_back(std::move(e));
  };

  // All words over a's alphabet, shortest first.
  std::vector<Word> current{Word{}};
  for (int len = 0; len <= max_len; ++len) {
    for (const Word& w : current) visit(w);
    if (len == max_len) break;
    std::vector<Word> next;
    next.reserve(current.size() * a.alphabet.size());
    for (const Word& w : current) {
      for (Symbol s : a.alphabet) {
        Word w2 = w;
        w2.push_back(s);
        next.push_back(std::move(w2));
      }
    }
    current = std::move(next);
  }
  return report;
}

}  // namespace wotm
