#include <doctest.h>

#include "wotm/womcode.hpp"

using namespace wotm;

namespace {

// Sequence-tracking oracle: applies raw updates keeping the expected stored
// value on the side; returns all (word, stored value) pairs reached.
struct Replay {
  WomWord word;
  int stored = 0;
  int changes = 0;
};

std::vector<Replay> oracle_reachable(const WomCode& code, int max_changes) {
  std::vector<Replay> out{{code.fresh(), 0, 0}};
  for (std::size_t i = 0; i < out.size(); ++i) {
    Replay r = out[i];
    if (r.changes >= max_changes) continue;
    for (int v = 0; v < code.value_count(); ++v) {
      if (v == r.stored) continue;
      WomUpdateResult u = code.update(r.word, v);
      if (u.status != WomStatus::Ok) continue;
      bool seen = false;
      for (auto& prev : out) seen = seen || (prev.word == u.word && prev.stored == v);
      if (!seen) out.push_back({u.word, v, r.changes + 1});
    }
  }
  return out;
}

// A deliberately broken code: the second-generation update clears a bit.
class CorruptedCode : public WomCode {
 public:
  CorruptedCode() : WomCode(4, 2, 3), inner_(rivest_shamir_code()) {}
  std::optional<int> decode(const WomWord& w) const override { return inner_->decode(w); }
  std::optional<int> generation(const WomWord& w) const override { return inner_->generation(w); }
  WomUpdateResult update(const WomWord& w, int v) const override {
    WomUpdateResult r = inner_->update(w, v);
    if (r.status == WomStatus::Ok && inner_->generation(w) == 1 && v != *inner_->decode(w)) {
      r.word[0] = 0;  // clear a bit: breaks monotonicity whenever w had bit 0 set
    }
    return r;
  }
  std::string describe() const override { return "corrupted"; }
  std::vector<TableRow> table() const override { return inner_->table(); }

 private:
  std::unique_ptr<WomCode> inner_;
};

}  // namespace

TEST_CASE("slot_code: width and the worked examples") {
  auto c13 = slot_code(1, 3);
  CHECK(c13->width() == 6);  // u * (b + 1)
  CHECK(c13->value_count() == 2);
  // write 1, write 0, write 1: all three presence bits set, decodes 1.
  WomWord w = c13->fresh();
  for (int v : {1, 0, 1}) {
    auto r = c13->update(w, v);
    REQUIRE(r.status == WomStatus::Ok);
    w = r.word;
  }
  CHECK(w[0] == 1);
  CHECK(w[2] == 1);
  CHECK(w[4] == 1);
  CHECK(c13->decode(w).value() == 1);

  auto c22 = slot_code(2, 2);
  CHECK(c22->width() == 6);
  WomWord v = c22->fresh();
  for (int x : {3, 1}) {
    auto r = c22->update(v, x);
    REQUIRE(r.status == WomStatus::Ok);
    v = r.word;
  }
  CHECK(c22->decode(v).value() == 1);
}

TEST_CASE("slot_code: fresh word decodes to 0 and budget is enforced") {
  auto c11 = slot_code(1, 1);
  CHECK(c11->decode(c11->fresh()).value() == 0);

  auto c12 = slot_code(1, 2);
  WomWord w = c12->fresh();
  w = c12->update(w, 1).word;
  w = c12->update(w, 0).word;
  CHECK(c12->update(w, 1).status == WomStatus::CapacityExhausted);
}

TEST_CASE("slot_code: unreachable words are reported as invalid") {
  auto c = slot_code(1, 2);
  WomWord hole = {0, 0, 1, 1};  // slot 1 present without slot 0
  CHECK(!c->decode(hole).has_value());
  CHECK(c->update(hole, 1).status == WomStatus::InvalidState);
  WomWord zero_first = {1, 0, 0, 0};  // first update to the already-stored 0
  CHECK(!c->decode(zero_first).has_value());
}

TEST_CASE("rivest_shamir: fresh decode, monotone first-to-second transition, no-op") {
  auto rs = rivest_shamir_code();
  CHECK(rs->width() == 3);
  CHECK(rs->value_count() == 4);
  CHECK(rs->update_budget() == 2);
  CHECK(rs->decode(rs->fresh()).value() == 0);

  // write 1 then write 2: only adds bits, decodes 2.
  WomWord w = rs->fresh();
  w = rs->update(w, 1).word;
  CHECK(w == WomWord{1, 0, 0});
  WomUpdateResult r = rs->update(w, 2);
  REQUIRE(r.status == WomStatus::Ok);
  for (std::size_t i = 0; i < 3; ++i) CHECK(w[i] <= r.word[i]);
  CHECK(rs->decode(r.word).value() == 2);

  // Same-value updates never touch the word.
  for (int first : {0, 1, 2, 3}) {
    WomWord x = rs->fresh();
    if (first != 0) x = rs->update(x, first).word;
    WomUpdateResult again = rs->update(x, first);
    CHECK(again.status == WomStatus::Ok);
    CHECK(again.word == x);
  }
}

TEST_CASE("verify_code: clean codes verify clean") {
  CHECK(verify_code(*rivest_shamir_code(), 2).clean());
  CHECK(verify_code(*slot_code(1, 4), 4).clean());
  CHECK(verify_code(*slot_code(2, 2), 2).clean());
}

TEST_CASE("verify_code: injected monotonicity fault is caught") {
  CorruptedCode bad;
  WomVerifyReport r = verify_code(bad, 2);
  CHECK(!r.clean());
  bool monotone_hit = false;
  for (auto& v : r.violations) monotone_hit = monotone_hit || v.kind == "monotonicity";
  CHECK(monotone_hit);
}

TEST_CASE("wom_update/wom_decode: exhaustive agreement with the replay oracle") {
  std::vector<std::unique_ptr<WomCode>> codes;
  codes.push_back(rivest_shamir_code());
  codes.push_back(slot_code(1, 4));
  codes.push_back(slot_code(2, 4));
  codes.push_back(slot_code(1, 2));
  for (auto& code : codes) {
    for (auto& r : oracle_reachable(*code, code->update_budget())) {
      // decode returns the value the generating sequence last wrote
      CHECK(wom_decode(*code, r.word).value() == r.stored);
      CHECK(code->generation(r.word).value() == r.changes);
      for (int v = 0; v < code->value_count(); ++v) {
        WomUpdateResult u = wom_update(*code, r.word, v);
        if (v == r.stored) {
          CHECK(u.status == WomStatus::Ok);
          CHECK(u.word == r.word);
        } else if (r.changes == code->update_budget()) {
          CHECK(u.status == WomStatus::CapacityExhausted);
        } else {
          REQUIRE(u.status == WomStatus::Ok);
          for (std::size_t i = 0; i < u.word.size(); ++i) CHECK(r.word[i] <= u.word[i]);
          CHECK(wom_decode(*code, u.word).value() == v);
        }
      }
    }
  }
}

TEST_CASE("slot_code width arithmetic is exact") {
  for (int b = 1; b <= 3; ++b)
    for (int u = 1; u <= 4; ++u) CHECK(slot_code(b, u)->width() == u * (b + 1));
  // The classic instance beats the naive two-generation scheme: 3 < 2 * 2.
  CHECK(rivest_shamir_code()->width() < 2 * 2);
}
