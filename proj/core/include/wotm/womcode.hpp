// Write-once memory codes: storage schemes that let a logical value be
// updated several times on physically write-once bits.
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace wotm {

// A physical word: fixed-length bit pattern of the owning code's width.
using WomWord = std::vector<std::uint8_t>;

enum class WomStatus { Ok, CapacityExhausted, InvalidState };

struct WomUpdateResult {
  WomStatus status = WomStatus::Ok;
  WomWord word;  // valid when status == Ok
};

class WomCode {
 public:
  virtual ~WomCode() = default;

  int value_count() const { return value_count_; }
  int update_budget() const { return budget_; }
  int width() const { return width_; }
  WomWord fresh() const { return WomWord(static_cast<std::size_t>(width_), 0); }

  // Last written value; the all-zero word decodes to 0. nullopt when the word
  // is not reachable by any legal update sequence.
  virtual std::optional<int> decode(const WomWord& phys) const = 0;
  // Number of value-changing updates consumed to reach the word.
  virtual std::optional<int> generation(const WomWord& phys) const = 0;
  // Updating to the stored value is a physical no-op and costs no budget.
  virtual WomUpdateResult update(const WomWord& phys, int value) const = 0;

  virtual std::string describe() const = 0;
  // One row per (generation, value): the canonical pattern written.
  struct TableRow {
    int generation;
    int value;
    std::string pattern;
  };
  virtual std::vector<TableRow> table() const = 0;

 protected:
  WomCode(int value_count, int budget, int width)
      : value_count_(value_count), budget_(budget), width_(width) {}
  int value_count_;
  int budget_;
  int width_;
};

// u slots of (presence bit + b value bits); update i fills slot i, decode
// reads the highest-index present slot. width = u * (b + 1).
std::unique_ptr<WomCode> slot_code(int value_bits, int updates);

// The classic 4-value / 2-update / 3-bit instance: first-generation encodings
// are the weight<=1 patterns, second-generation the weight>=2 patterns, decode
// dispatches on weight.
std::unique_ptr<WomCode> rivest_shamir_code();

WomUpdateResult wom_update(const WomCode& code, const WomWord& phys, int value);
std::optional<int> wom_decode(const WomCode& code, const WomWord& phys);

struct WomViolation {
  std::vector<int> sequence;  // the value sequence that exposed the problem
  std::string kind;           // monotonicity | decode | no-op | capacity | invalid
  std::string detail;
};

struct WomVerifyReport {
  std::vector<WomViolation> violations;
  std::int64_t sequences_checked = 0;
  bool clean() const { return violations.empty(); }
};

// Exhaustively enumerates value sequences of length <= min(budget,
// max_sequence) + 1 and checks monotonicity, decode correctness, the
// same-value no-op, and that CapacityExhausted fires exactly when the budget
// is spent.
WomVerifyReport verify_code(const WomCode& code, int max_sequence);

std::string format_word(const WomWord& w);

}  // namespace wotm
