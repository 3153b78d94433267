#include <doctest.h>

#include "helpers.hpp"
#include "wotm/kexp.hpp"
#include "wotm/machine.hpp"
#include "wotm/parser.hpp"
#include "wotm/simulate.hpp"

using namespace wotm;
using namespace wotm::test;

namespace {

MachineDescription marker_machine() {
  // q0: on 0 write 1 R q0; on 1 accept.
  return parse_machine_string(
             "mode: deterministic\n"
             "tape: write-once\n"
             "alphabet: 0 1\n"
             "states: q0 qa qr\n"
             "start: q0\naccept: qa\nreject: qr\n"
             "trans: q0 0 -> 1 R q0\n"
             "trans: q0 1 -> 1 S qa\n")
      .machine;
}

}  // namespace

TEST_CASE("validate: well-formed two-state marker machine") {
  ValidationReport r = validate_machine(marker_machine());
  CHECK(r.well_formed());
  CHECK(r.issues.empty());
}

TEST_CASE("validate: determinism violation is reported") {
  MachineDescription m = marker_machine();
  m.transitions.push_back({0, 0, 0, Move::Stay, 1});  // second rule on (q0, 0)
  ValidationReport r = validate_machine(m);
  CHECK(!r.well_formed());
  bool found = false;
  for (auto& i : r.issues) found = found || i.message.find("two transitions") != std::string::npos;
  CHECK(found);
}

TEST_CASE("validate: discipline-dead transition is a warning") {
  MachineDescription m = marker_machine();
  m.transitions.erase(m.transitions.begin() + 1);
  m.transitions.push_back({0, 1, 0, Move::Right, 1});  // writes 0 over a mark
  ValidationReport r = validate_machine(m);
  CHECK(r.well_formed());  // warnings only
  REQUIRE(r.issues.size() == 1);
  CHECK(r.issues[0].severity == ValidationIssue::Severity::Warning);
  CHECK(r.issues[0].message.find("discipline-dead") != std::string::npos);
}

TEST_CASE("validate: halting states may not have outgoing transitions") {
  MachineDescription m = marker_machine();
  m.transitions.push_back({1, 0, 0, Move::Stay, 1});
  CHECK(!validate_machine(m).well_formed());
}

TEST_CASE("successors: rule application, writes and moves") {
  MachineDescription m = marker_machine();
  TransitionIndex idx(m);
  Configuration c = initial_configuration({});
  c.state = 0;
  c.head = 3;
  c.max_head = 3;

  StepResult r = successors(m, c, idx);
  REQUIRE(r.successors.size() == 1);
  const Successor& s = r.successors[0];
  CHECK(s.was_write);
  CHECK(s.config.head == 4);
  CHECK(s.config.tape.read(3) == 1);
  CHECK(s.config.writes == 1);
  CHECK(s.config.steps == 1);
}

TEST_CASE("successors: left move at cell 0 stays put and re-marking is not a write") {
  MachineDescription m = parse_machine_string(
                             "mode: deterministic\ntape: write-once\nalphabet: 0 1\n"
                             "states: q0 q1 qa qr\nstart: q0\naccept: qa\nreject: qr\n"
                             "trans: q0 1 -> 1 L q1\n")
                             .machine;
  TransitionIndex idx(m);
  Configuration c = initial_configuration({1});
  c.state = 0;
  StepResult r = successors(m, c, idx);
  REQUIRE(r.successors.size() == 1);
  CHECK(r.successors[0].config.head == 0);
  CHECK(!r.successors[0].was_write);
}

TEST_CASE("successors: deterministic write-once violation faults") {
  MachineDescription m = parse_machine_string(
                             "mode: deterministic\ntape: write-once\nalphabet: 0 1\n"
                             "states: q0 qa qr\nstart: q0\naccept: qa\nreject: qr\n"
                             "trans: q0 1 -> 0 R qa\n")
                             .machine;
  TransitionIndex idx(m);
  Configuration c = initial_configuration({1});
  c.state = 0;
  StepResult r = successors(m, c, idx);
  CHECK(r.successors.empty());
  REQUIRE(r.fault.has_value());
  CHECK(*r.fault == Outcome::WriteOnceViolation);
}

TEST_CASE("successors: nondeterministic discipline-illegal branches are pruned") {
  MachineDescription m = load_corpus("nd_prune_branch.wotm");
  TransitionIndex idx(m);
  Configuration c = initial_configuration({1});
  c.state = m.start;
  StepResult r = successors(m, c, idx);
  CHECK(!r.fault.has_value());
  REQUIRE(r.successors.size() == 1);  // the write-0-over-1 branch is gone
  CHECK(r.successors[0].taken.write == 1);
}

TEST_CASE("successors: missing transition totalizes to reject") {
  MachineDescription m = marker_machine();
  m.transitions.pop_back();  // drop the (q0,1) rule
  TransitionIndex idx(m);
  Configuration c = initial_configuration({1});
  c.state = 0;
  StepResult r = successors(m, c, idx);
  REQUIRE(r.successors.size() == 1);
  CHECK(r.successors[0].config.state == m.reject);
}

TEST_CASE("successors: every successor satisfies configuration invariants") {
  for (const auto& entry : manifest()) {
    MachineDescription m = load_corpus(entry.file);
    TransitionIndex idx(m);
    for (const Word& w : all_words(m.alphabet, 2)) {
      Configuration c = initial_configuration(w);
      c.state = m.start;
      for (int depth = 0; depth < 4; ++depth) {
        StepResult r = successors(m, c, idx);
        if (r.successors.empty()) break;
        for (const Successor& s : r.successors) {
          CHECK(s.config.head >= 0);
          CHECK(s.config.max_head >= s.config.head);
          for (auto& [cell, sym] : s.config.tape.cells) CHECK(sym != kBlank);
          // was_write iff a blank cell became non-blank.
          bool write_diff = c.tape.read(c.head) == kBlank && s.config.tape.read(c.head) != kBlank;
          CHECK(s.was_write == write_diff);
        }
        c = r.successors.front().config;
      }
    }
  }
}

// ---------------------------------------------------------------------------
// kexp
// ---------------------------------------------------------------------------

TEST_CASE("kexp: level-0 identity and small towers") {
  CHECK(kexp_eval(0, 5).value.value() == 5);
  CHECK(kexp_eval(1, 3).value.value() == 8);
  CHECK(kexp_eval(2, 3).value.value() == 256);
}

TEST_CASE("kexp: recurrence holds exhaustively for k <= 3, t <= 4") {
  for (int k = 1; k <= 3; ++k) {
    for (int t = 0; t <= 4; ++t) {
      auto whole = kexp_eval(k, t);
      auto inner = kexp_eval(k - 1, t);
      REQUIRE(whole.value.has_value());
      REQUIRE(inner.value.has_value());
      mpz_class expect = 1;
      mpz_mul_2exp(expect.get_mpz_t(), expect.get_mpz_t(), inner.value->get_ui());
      CHECK(*whole.value == expect);
    }
  }
}

TEST_CASE("kexp: overflow is reported, not wrapped") {
  CHECK(kexp_eval(3, 5).overflow());  // 2^(2^32) exceeds the bit budget
  CHECK(kexp_describe(3, 5) == "2^(2^(2^(5)))");
}

// ---------------------------------------------------------------------------
// binarize_alphabet
// ---------------------------------------------------------------------------

TEST_CASE("binarize: binary machines pass through structurally unchanged") {
  MachineDescription m = load_corpus("std_bit_flipper.wotm");
  BinarizeResult r = binarize_alphabet(m);
  CHECK(r.block_width == 1);
  CHECK(r.machine == m);
}

TEST_CASE("binarize: rejects write-once machines") {
  MachineDescription m = load_corpus("wo_mark2.wotm");
  CHECK_THROWS_AS(binarize_alphabet(m), std::invalid_argument);
}

TEST_CASE("binarize: three-symbol machine agrees with its binarization") {
  MachineDescription m = load_corpus("multi3_accept22.wotm");
  BinarizeResult bin = binarize_alphabet(m);
  CHECK(bin.block_width == 3);  // presence + 2 value bits
  CHECK(validate_machine(bin.machine).well_formed());

  Limits limits{20000, 2000, std::nullopt};
  for (const Word& w : all_words(m.alphabet, 3)) {
    RunTrace src = run_deterministic(m, w, limits, false);
    RunTrace dst = run_deterministic(bin.machine, binarize_encode_input(bin, w), limits, false);
    CAPTURE(format_input_word(w));
    REQUIRE((src.outcome == Outcome::Accept || src.outcome == Outcome::Reject));
    CHECK(src.outcome == dst.outcome);
  }
  // The canonical pair from the language: image of "22" accepted, "21" not.
  RunTrace yes = run_deterministic(bin.machine, binarize_encode_input(bin, {2, 2}), limits, false);
  RunTrace no = run_deterministic(bin.machine, binarize_encode_input(bin, {2, 1}), limits, false);
  CHECK(yes.outcome == Outcome::Accept);
  CHECK(no.outcome == Outcome::Reject);
}

TEST_CASE("binarize: every multi-symbol corpus machine agrees up to length 4") {
  for (const auto& entry : manifest()) {
    if (!entry.has_tag("multisymbol")) continue;
    MachineDescription m = load_corpus(entry.file);
    BinarizeResult bin = binarize_alphabet(m);
    Limits limits{50000, 5000, std::nullopt};
    int len = m.alphabet.size() > 3 ? 3 : 4;
    for (const Word& w : all_words(m.alphabet, len)) {
      RunTrace src = run_deterministic(m, w, limits, false);
      RunTrace dst = run_deterministic(bin.machine, binarize_encode_input(bin, w), limits, false);
      CAPTURE(entry.file);
      CAPTURE(format_input_word(w));
      CHECK(src.outcome == dst.outcome);
    }
  }
}

// ---------------------------------------------------------------------------
// parser round trips
// ---------------------------------------------------------------------------

TEST_CASE("parser: corpus files round-trip through print") {
  for (const auto& entry : manifest()) {
    MachineDescription m = load_corpus(entry.file);
    ParseResult again = parse_machine_string(print_machine(m));
    CAPTURE(entry.file);
    CHECK(again.issues.empty());
    CHECK(again.machine == m);
  }
}

TEST_CASE("parser: syntax errors carry line numbers") {
  try {
    parse_machine_string("mode: deterministic\ntape: bogus\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
  CHECK_THROWS_AS(parse_machine_string("trans: q0 0 ->\n"), ParseError);
}

TEST_CASE("parser: unknown states in transitions become issues, not crashes") {
  ParseResult r = parse_machine_string(
      "mode: deterministic\ntape: standard\nalphabet: 0 1\n"
      "states: q0 qa qr\nstart: q0\naccept: qa\nreject: qr\n"
      "trans: q0 0 -> 0 S nowhere\n");
  CHECK(!r.issues.empty());
  CHECK(r.issues[0].message.find("nowhere") != std::string::npos);
}
