#include <doctest.h>

#include "helpers.hpp"
#include "wotm/parser.hpp"
#include "wotm/simulate.hpp"
#include "wotm/transpile.hpp"

using namespace wotm;
using namespace wotm::test;

namespace {

const Limits kDiff{200000, 20000, std::nullopt};

int segment_count(const Tape& tape) {
  int count = 0;
  std::int64_t blocks = tape.max_written() / 4 + 1;
  for (std::int64_t b = 0; b < blocks; ++b) {
    if (tape.read(4 * b) == 1 && tape.read(4 * b + 1) == 0 && tape.read(4 * b + 2) == 1 &&
        tape.read(4 * b + 3) == 1)
      ++count;
  }
  return count;
}

}  // namespace

// ---------------------------------------------------------------------------
// relax_to_standard
// ---------------------------------------------------------------------------

TEST_CASE("relax: marker machine runs step-for-step identically") {
  MachineDescription m = load_corpus("wo_mark3.wotm");
  MachineDescription r = relax_to_standard(m);
  CHECK(r.discipline == TapeDiscipline::Standard);
  CHECK(r.transitions == m.transitions);
  RunTrace a = run_deterministic(m, {0, 1, 0}, kDiff);
  RunTrace b = run_deterministic(r, {0, 1, 0}, kDiff);
  REQUIRE(a.events.size() == b.events.size());
  for (std::size_t i = 0; i < a.events.size(); ++i)
    CHECK(same_point(a.events[i].after, b.events[i].after));
}

TEST_CASE("relax: write-once corpus machines keep their accept sets") {
  for (const auto& entry : manifest()) {
    if (!entry.has_tag("write-once") || !entry.has_tag("halting")) continue;
    MachineDescription m = load_corpus(entry.file);
    DiffReport d = differential_check(m, relax_to_standard(m), nullptr, 4, kDiff);
    CAPTURE(entry.file);
    CHECK(d.clean());
    CHECK(d.inconclusive == 0);
  }
}

TEST_CASE("relax: a discipline-dead transition may change behaviour, reported as divergence") {
  // Write-once: the (q0,1)->write 0 rule can never fire, so every input ends
  // in the fault/reject path; relaxed, the rule fires and accepts.
  MachineDescription m = parse_machine_string(
                             "mode: deterministic\ntape: write-once\nalphabet: 0 1\n"
                             "states: q0 qa qr\nstart: q0\naccept: qa\nreject: qr\n"
                             "trans: q0 1 -> 0 S qa\n")
                             .machine;
  DiffReport d = differential_check(m, relax_to_standard(m), nullptr, 1, kDiff);
  CHECK(!d.clean());  // expected-possible: the harness must surface it
  REQUIRE(d.first_divergence.has_value());
  CHECK(d.entries[*d.first_divergence].a.verdict == Verdict::Fault);
  CHECK(d.entries[*d.first_divergence].b.verdict == Verdict::Accept);
}

// ---------------------------------------------------------------------------
// to_write_once_copying
// ---------------------------------------------------------------------------

TEST_CASE("copying: transpiled machines validate clean") {
  for (const auto& entry : manifest()) {
    if (!entry.has_tag("standard")) continue;
    MachineDescription m = load_corpus(entry.file);
    if (entry.has_tag("multisymbol")) continue;
    TranspileResult t = to_write_once_copying(m);
    CAPTURE(entry.file);
    ValidationReport vr = validate_machine(t.machine);
    CHECK(vr.well_formed());
    CHECK(vr.issues.empty());  // no discipline-dead transitions either
    CHECK(t.machine.discipline == TapeDiscipline::WriteOnce);
  }
}

TEST_CASE("copying: a machine that never erases uses exactly one segment") {
  MachineDescription m = load_corpus("std_reader_only.wotm");
  TranspileResult t = to_write_once_copying(m);
  for (const Word& w : all_words(m.alphabet, 4)) {
    RunTrace src = run_deterministic(m, w, kDiff);
    RunTrace dst = run_deterministic(t.machine, copying_encode_input(w), kDiff);
    CAPTURE(format_input_word(w));
    CHECK(src.outcome == dst.outcome);
    CHECK(segment_count(dst.final_config.tape) == 1);
  }
}

TEST_CASE("copying: bit flipper copies exactly once and stays monotone") {
  MachineDescription m = load_corpus("std_bit_flipper.wotm");
  TranspileResult t = to_write_once_copying(m);
  RunTrace dst = run_deterministic(t.machine, copying_encode_input({}), kDiff);
  CHECK(dst.outcome == Outcome::Accept);
  CHECK(segment_count(dst.final_config.tape) == 2);  // start segment + one copy
  CHECK(trace_is_write_once_monotone(dst));
  // Layout invariants hold at every step of the trace.
  std::vector<std::string> problems = check_copying_layout(dst.initial.tape);
  for (const TraceEvent& e : dst.events) {
    auto more = check_copying_layout(e.after.tape);
    problems.insert(problems.end(), more.begin(), more.end());
  }
  CHECK(problems.empty());
  if (!problems.empty())
    for (auto& p : problems) MESSAGE(p);
}

TEST_CASE("copying: differential equivalence across the standard corpus") {
  for (const auto& entry : manifest()) {
    if (!entry.has_tag("standard") || entry.has_tag("multisymbol")) continue;
    MachineDescription m = load_corpus(entry.file);
    TranspileResult t = to_write_once_copying(m);
    DiffReport d = differential_check(m, t.machine, copying_encode_input, 4, kDiff);
    CAPTURE(entry.file);
    CHECK(d.clean());
    CHECK(d.inconclusive == 0);
  }
}

TEST_CASE("copying: every transpiled trace is write-once monotone with valid layout") {
  for (const auto& entry : manifest()) {
    if (!entry.has_tag("destructive") || entry.has_tag("multisymbol")) continue;
    MachineDescription m = load_corpus(entry.file);
    TranspileResult t = to_write_once_copying(m);
    for (const Word& w : all_words(m.alphabet, 3)) {
      RunTrace dst = run_deterministic(t.machine, copying_encode_input(w), kDiff);
      CAPTURE(entry.file);
      CAPTURE(format_input_word(w));
      CHECK(trace_is_write_once_monotone(dst));
      for (const TraceEvent& e : dst.events) {
        auto problems = check_copying_layout(e.after.tape);
        if (!problems.empty()) {
          CAPTURE(e.after.steps);
          for (auto& p : problems) MESSAGE(p);
        }
        CHECK(problems.empty());
      }
    }
  }
}

TEST_CASE("copying: cubic step overhead with a modest constant") {
  double worst = 0;
  for (const auto& entry : manifest()) {
    if (!entry.has_tag("standard") || entry.has_tag("multisymbol")) continue;
    MachineDescription m = load_corpus(entry.file);
    TranspileResult t = to_write_once_copying(m);
    for (const Word& w : all_words(m.alphabet, 4)) {
      RunTrace src = run_deterministic(m, w, kDiff);
      RunTrace dst = run_deterministic(t.machine, copying_encode_input(w), kDiff);
      if (src.outcome != Outcome::Accept && src.outcome != Outcome::Reject) continue;
      double base = static_cast<double>(src.final_config.steps + src.final_config.space_used());
      double ratio = static_cast<double>(dst.final_config.steps) / (base * base * base);
      worst = std::max(worst, ratio);
    }
  }
  MESSAGE("fitted cubic constant C = ", worst);
  CHECK(worst > 0);
  CHECK(worst <= 1000.0);
}

// ---------------------------------------------------------------------------
// to_write_once_womcoded
// ---------------------------------------------------------------------------

TEST_CASE("womcoded: single-write-per-cell machines agree under slot(1,2)") {
  auto code = slot_code(1, 2);
  for (const std::string& name : {"std_reader_only.wotm", "std_clear_ones.wotm",
                                  "std_bit_flipper.wotm"}) {
    MachineDescription m = load_corpus(name);
    TranspileResult t = to_write_once_womcoded(m, *code);
    CHECK(validate_machine(t.machine).issues.empty());
    DiffReport d = differential_check(
        m, t.machine, [&](const Word& w) { return womcoded_encode_input(*code, w); }, 4, kDiff);
    CAPTURE(name);
    CHECK(d.clean());
    CHECK(d.inconclusive == 0);
  }
}

TEST_CASE("womcoded: budget exhaustion enters the distinguished reject state") {
  MachineDescription m = load_corpus("std_triple_flip.wotm");  // flips cell 0 three times
  auto code = slot_code(1, 2);
  TranspileResult t = to_write_once_womcoded(m, *code);
  RunTrace dst = run_deterministic(t.machine, womcoded_encode_input(*code, {}), kDiff);
  CHECK(dst.outcome == Outcome::Reject);
  bool hit_budget_state = false;
  int budget_state = t.machine.state_index("budget_exhausted");
  REQUIRE(budget_state >= 0);
  for (auto& e : dst.events) hit_budget_state = hit_budget_state || e.after.state == budget_state;
  CHECK(hit_budget_state);
  // The source machine accepts: the harness surfaces the budget mismatch as a
  // verdict difference, not a crash.
  CHECK(run_deterministic(m, {}, kDiff).outcome == Outcome::Accept);
  // With a sufficient budget the verdicts agree again.
  auto code3 = slot_code(1, 3);
  TranspileResult t3 = to_write_once_womcoded(m, *code3);
  CHECK(run_deterministic(t3.machine, womcoded_encode_input(*code3, {}), kDiff).outcome ==
        Outcome::Accept);
}

TEST_CASE("womcoded: rivest-shamir code backs the simulation too") {
  auto rs = rivest_shamir_code();
  MachineDescription m = load_corpus("std_bit_flipper.wotm");
  TranspileResult t = to_write_once_womcoded(m, *rs);
  DiffReport d = differential_check(
      m, t.machine, [&](const Word& w) { return womcoded_encode_input(*rs, w); }, 4, kDiff);
  CHECK(d.clean());
}

TEST_CASE("womcoded: traces are monotone and space is linear in groups") {
  auto code = slot_code(1, 3);
  for (const auto& entry : manifest()) {
    if (!entry.has_tag("standard") || entry.has_tag("multisymbol")) continue;
    MachineDescription m = load_corpus(entry.file);
    TranspileResult t = to_write_once_womcoded(m, *code);
    for (const Word& w : all_words(m.alphabet, 3)) {
      RunTrace src = run_deterministic(m, w, kDiff, false);
      RunTrace dst = run_deterministic(t.machine, womcoded_encode_input(*code, w), kDiff);
      CAPTURE(entry.file);
      CHECK(trace_is_write_once_monotone(dst));
      if (src.outcome == Outcome::Accept || src.outcome == Outcome::Reject) {
        // Group layout: space is (width+1) cells per simulated cell (+1 for
        // the frontier group the head may enter).
        std::int64_t groups = src.final_config.space_used() + 1;
        CHECK(dst.final_config.space_used() <= groups * (code->width() + 1) + 1);
      }
    }
  }
}

TEST_CASE("womcoded: rejects unusable codes and non-binary machines") {
  MachineDescription multi = load_corpus("multi3_accept22.wotm");
  auto code = slot_code(1, 2);
  CHECK_THROWS_AS(to_write_once_womcoded(multi, *code), std::invalid_argument);
  MachineDescription wo = load_corpus("wo_mark2.wotm");
  CHECK_THROWS_AS(to_write_once_womcoded(wo, *code), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// differential_check
// ---------------------------------------------------------------------------

TEST_CASE("differential_check: identity has zero divergences") {
  MachineDescription m = load_corpus("wo_parity.wotm");
  DiffReport d = differential_check(m, m, nullptr, 5, kDiff);
  CHECK(d.clean());
  CHECK(d.agreements == d.words_checked);
}

TEST_CASE("differential_check: limit hits are inconclusive, not divergences") {
  MachineDescription slow = load_corpus("wo_mark4.wotm");
  MachineDescription fast = relax_to_standard(slow);
  Limits tiny{3, 100, std::nullopt};  // too few steps for longer inputs
  DiffReport d = differential_check(slow, fast, nullptr, 3, tiny);
  CHECK(d.divergences == 0);
  CHECK(d.inconclusive > 0);
}
