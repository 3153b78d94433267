#include "wotm/womcode.hpp"

#include <algorithm>
#include <stdexcept>

namespace wotm {

std::string format_word(const WomWord& w) {
  std::string s;
  s.reserve(w.size());
  for (auto b : w) s += b ? '1' : '0';
  return s;
}

namespace {

bool bitwise_le(const WomWord& a, const WomWord& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Slot code
// ---------------------------------------------------------------------------

class SlotCode : public WomCode {
 public:
  SlotCode(int value_bits, int updates)
      : WomCode(1 << value_bits, updates, updates * (value_bits + 1)),
        bits_(value_bits),
        slots_(updates) {}

  std::optional<int> decode(const WomWord& phys) const override {
    auto st = parse(phys);
    if (!st) return std::nullopt;
    return st->empty() ? 0 : st->back();
  }

  std::optional<int> generation(const WomWord& phys) const override {
    auto st = parse(phys);
    if (!st) return std::nullopt;
    return static_cast<int>(st->size());
  }

  WomUpdateResult update(const WomWord& phys, int value) const override {
    if (value < 0 || value >= value_count_) return {WomStatus::InvalidState, {}};
    auto st = parse(phys);
    if (!st) return {WomStatus::InvalidState, {}};
    int stored = st->empty() ? 0 : st->back();
    if (value == stored) return {WomStatus::Ok, phys};
    int g = static_cast<int>(st->size());
    if (g == slots_) return {WomStatus::CapacityExhausted, {}};
    WomWord next = phys;
    int base = g * (bits_ + 1);
    next[base] = 1;
    for (int j = 0; j < bits_; ++j) next[base + 1 + j] = (value >> (bits_ - 1 - j)) & 1;
    return {WomStatus::Ok, std::move(next)};
  }

  std::string describe() const override {
    return "slot(" + std::to_string(bits_) + "," + std::to_string(slots_) + "): " +
           std::to_string(value_count_) + " values, " + std::to_string(slots_) +
           " updates, width " + std::to_string(width_);
  }

  std::vector<TableRow> table() const override {
    std::vector<TableRow> rows;
    for (int g = 1; g <= slots_; ++g) {
      for (int v = 0; v < value_count_; ++v) {
        WomWord w(static_cast<std::size_t>(width_), 0);
        int base = (g - 1) * (bits_ + 1);
        w[base] = 1;
        for (int j = 0; j < bits_; ++j) w[base + 1 + j] = (v >> (bits_ - 1 - j)) & 1;
        std::string pat = format_word(w);
        // Cells of earlier slots depend on history.
        for (int j = 0; j < base; ++j) pat[j] = '*';
        rows.push_back({g, v, pat});
      }
    }
    return rows;
  }

 private:
  // Values of the present slots in order; nullopt if not reachable (presence
  // gaps, leading stored 0, or two consecutive equal values).
  std::optional<std::vector<int>> parse(const WomWord& phys) const {
    if (static_cast<int>(phys.size()) != width_) return std::nullopt;
    std::vector<int> values;
    bool ended = false;
    for (int s = 0; s < slots_; ++s) {
      int base = s * (bits_ + 1);
      int v = 0;
      for (int j = 0; j < bits_; ++j) v = (v << 1) | phys[base + 1 + j];
      if (phys[base]) {
        if (ended) return std::nullopt;  // hole in the presence prefix
        values.push_back(v);
      } else {
        ended = true;
        if (v != 0) return std::nullopt;  // value bits without presence
      }
    }
    int prev = 0;
    for (int v : values) {
      if (v == prev) return std::nullopt;  // same-value update is a no-op
      prev = v;
    }
    return values;
  }

  int bits_;
  int slots_;
};

// ---------------------------------------------------------------------------
// Rivest-Shamir 4-value / 2-update / 3-bit code
// ---------------------------------------------------------------------------

class RivestShamirCode : public WomCode {
 public:
  RivestShamirCode() : WomCode(4, 2, 3) {}

  std::optional<int> decode(const WomWord& phys) const override {
    if (phys.size() != 3) return std::nullopt;
    switch (weight(phys)) {
      case 0: return 0;
      case 1: return gen1_value(phys);
      default: return gen2_value(phys);
    }
  }

  std::optional<int> generation(const WomWord& phys) const override {
    if (phys.size() != 3) return std::nullopt;
    int w = weight(phys);
    return w == 0 ? 0 : (w == 1 ? 1 : 2);
  }

  WomUpdateResult update(const WomWord& phys, int value) const override {
    if (value < 0 || value >= 4 || phys.size() != 3) return {WomStatus::InvalidState, {}};
    int stored = *decode(phys);
    if (value == stored) return {WomStatus::Ok, phys};
    switch (*generation(phys)) {
      case 0: return {WomStatus::Ok, gen1_pattern(value)};
      case 1: return {WomStatus::Ok, gen2_pattern(value)};
      default: return {WomStatus::CapacityExhausted, {}};
    }
  }

  std::string describe() const override {
    return "rivest-shamir: 4 values, 2 updates, width 3";
  }

  std::vector<TableRow> table() const override {
    std::vector<TableRow> rows;
    for (int v = 0; v < 4; ++v) rows.push_back({1, v, format_word(gen1_pattern(v))});
    for (int v = 0; v < 4; ++v) rows.push_back({2, v, format_word(gen2_pattern(v))});
    return rows;
  }

 private:
  static int weight(const WomWord& w) { return w[0] + w[1] + w[2]; }
  static WomWord gen1_pattern(int v) {
    switch (v) {
      case 1: return {1, 0, 0};
      case 2: return {0, 1, 0};
      case 3: return {0, 0, 1};
      default: return {0, 0, 0};
    }
  }
  // Second generation is the bitwise complement of the first; any weight<=1
  // pattern fits under any complement pattern for a different value.
  static WomWord gen2_pattern(int v) {
    WomWord g = gen1_pattern(v);
    return {static_cast<std::uint8_t>(1 - g[0]), static_cast<std::uint8_t>(1 - g[1]),
            static_cast<std::uint8_t>(1 - g[2])};
  }
  static int gen1_value(const WomWord& w) { return w[0] ? 1 : (w[1] ? 2 : 3); }
  static int gen2_value(const WomWord& w) {
    if (weight(w) == 3) return 0;
    return !w[0] ? 1 : (!w[1] ? 2 : 3);
  }
};

}  // namespace

std::unique_ptr<WomCode> slot_code(int value_bits, int updates) {
  if (value_bits < 1 || updates < 1)
    throw std::invalid_argument("slot_code requires value_bits >= 1 and updates >= 1");
  return std::make_unique<SlotCode>(value_bits, updates);
}

std::unique_ptr<WomCode> rivest_shamir_code() { return std::make_unique<RivestShamirCode>(); }

WomUpdateResult wom_update(const WomCode& code, const WomWord& phys, int value) {
  return code.update(phys, value);
}

std::optional<int> wom_decode(const WomCode& code, const WomWord& phys) {
  return code.decode(phys);
}

namespace {

void verify_from(const WomCode& code, WomWord word, int stored, int changes, int remaining,
                 std::vector<int>& sequence, WomVerifyReport& report) {
  if (remaining == 0) return;
  for (int v = 0; v < code.value_count(); ++v) {
    sequence.push_back(v);
    ++report.sequences_checked;
    WomUpdateResult r = code.update(word, v);
    auto violation = [&](const char* kind, std::string detail) {
      report.violations.push_back({sequence, kind, std::move(detail)});
    };
    if (v == stored) {
      if (r.status != WomStatus::Ok || r.word != word)
        violation("no-op", "updating to the stored value must not change the word " +
                               format_word(word));
      else
        verify_from(code, word, stored, changes, remaining - 1, sequence, report);
    } else if (changes == code.update_budget()) {
      if (r.status != WomStatus::CapacityExhausted)
        violation("capacity", "update beyond the budget must report CapacityExhausted");
    } else {
      if (r.status != WomStatus::Ok) {
        violation("capacity", "legal update rejected with status " +
                                  std::to_string(static_cast<int>(r.status)));
      } else {
        if (!bitwise_le(word, r.word))
          violation("monotonicity", format_word(word) + " -> " + format_word(r.word) +
                                        " clears a bit");
        auto d = code.decode(r.word);
        if (!d || *d != v)
          violation("decode", "decode(" + format_word(r.word) + ") != " + std::to_string(v));
        verify_from(code, r.word, v, changes + 1, remaining - 1, sequence, report);
      }
    }
    sequence.pop_back();
  }
}

}  // namespace

WomVerifyReport verify_code(const WomCode& code, int max_sequence) {
  WomVerifyReport report;
  int len = std::min(code.update_budget(), max_sequence) + 1;
  std::vector<int> sequence;
  WomWord fresh = code.fresh();
  auto d0 = code.decode(fresh);
  if (!d0 || *d0 != 0)
    report.violations.push_back({{}, "decode", "the fresh all-zero word must decode to 0"});
  verify_from(code, fresh, 0, 0, len, sequence, report);
  return report;
}

}  // namespace wotm
