// Command-line front end: validation, simulation, transpilation, WOM-code
// inspection, end-writer analysis and corpus benchmarking.
//
// Exit codes (run/decide): 0 accept, 1 reject, 2 parse error, 3 resource
// limit, 4 loop detected, 5 write-once violation, 6 diverge.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "wotm/endwriter.hpp"
#include "wotm/kexp.hpp"
#include "wotm/machine.hpp"
#include "wotm/parser.hpp"
#include "wotm/simulate.hpp"
#include "wotm/transpile.hpp"
#include "wotm/womcode.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace wotm;

namespace {

int exit_code_for(Outcome o) {
  switch (o) {
    case Outcome::Accept: return 0;
    case Outcome::Reject: return 1;
    case Outcome::StepLimit:
    case Outcome::SpaceLimit:
    case Outcome::WriteLimit: return 3;
    case Outcome::LoopDetected: return 4;
    case Outcome::WriteOnceViolation: return 5;
    case Outcome::Diverge: return 6;
  }
  return 1;
}

struct LoadedMachine {
  MachineDescription machine;
  std::vector<ValidationIssue> issues;
};

// Parse errors exit 2; semantic issues are returned for the caller to judge.
LoadedMachine load_machine(const std::string& path) {
  try {
    ParseResult r = parse_machine_file(path);
    return {std::move(r.machine), std::move(r.issues)};
  } catch (const ParseError& e) {
    std::cerr << path << ": " << e.what() << "\n";
    std::exit(2);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    std::exit(2);
  }
}

std::unique_ptr<WomCode> make_code(const std::string& spec) {
  if (spec == "rs") return rivest_shamir_code();
  if (spec.rfind("slot:", 0) == 0) {
    auto rest = spec.substr(5);
    auto comma = rest.find(',');
    if (comma != std::string::npos) {
      int b = std::stoi(rest.substr(0, comma));
      int u = std::stoi(rest.substr(comma + 1));
      return slot_code(b, u);
    }
  }
  throw std::runtime_error("unknown code spec '" + spec + "' (use slot:<b>,<u> or rs)");
}

json gap_report_json(const GapReport& g) {
  return json{{"writes", g.write_count},
              {"gaps", g.gaps},
              {"max_gap", g.max_gap},
              {"space", g.space_used},
              {"bound_check", g.bound_check}};
}

int cmd_validate(const std::string& path) {
  LoadedMachine lm = load_machine(path);
  ValidationReport report = validate_machine(lm.machine);
  std::vector<ValidationIssue> all = lm.issues;
  all.insert(all.end(), report.issues.begin(), report.issues.end());
  bool clean = true;
  for (const auto& issue : all) {
    bool error = issue.severity == ValidationIssue::Severity::Error;
    clean = clean && !error;
    std::cout << (error ? "error: " : "warning: ") << issue.message << "\n";
  }
  if (clean) std::cout << "ok: " << path << " (" << lm.machine.state_count() << " states, "
                       << lm.machine.transitions.size() << " transitions)\n";
  return clean ? 0 : 1;
}

Word encode_cli_input(const Word& raw, const std::string& encoding) {
  if (encoding == "raw") return raw;
  if (encoding == "blocks") {
    Word out;
    for (Symbol s : raw) {
      out.push_back(1);
      out.push_back(s);
    }
    return out;
  }
  throw std::runtime_error("unknown input encoding '" + encoding + "'");
}

int cmd_run(const std::string& path, const std::string& input_digits, const Limits& limits,
            bool trace_on, const std::string& encoding) {
  LoadedMachine lm = load_machine(path);
  ValidationReport vr = validate_machine(lm.machine);
  if (!lm.issues.empty() || !vr.well_formed()) {
    std::cerr << "machine is not well formed; run 'wotm validate' for details\n";
    return 1;
  }
  Word input = encode_cli_input(parse_input_word(input_digits), encoding);

  const MachineDescription& m = lm.machine;
  if (m.mode == Mode::Deterministic) {
    RunTrace t = run_deterministic(m, input, limits, trace_on);
    if (trace_on) {
      for (const TraceEvent& e : t.events) {
        json rec{{"step", e.after.steps},
                 {"state", m.name(e.after.state)},
                 {"head", e.after.head},
                 {"write", e.was_write}};
        std::cout << rec.dump() << "\n";
      }
    }
    GapReport g = gap_stats(t, m.state_count());
    json summary = gap_report_json(g);
    summary["type"] = "summary";
    summary["outcome"] = to_string(t.outcome);
    summary["steps"] = t.final_config.steps;
    std::cout << summary.dump() << "\n";
    return exit_code_for(t.outcome);
  }
  if (m.mode == Mode::Nondeterministic) {
    NdResult r = run_nondeterministic(m, input, limits);
    json summary{{"type", "summary"},
                 {"outcome", r.accepts ? "accept" : (r.truncated ? "inconclusive" : "reject")},
                 {"explored", r.explored},
                 {"frontier_exhausted", r.frontier_exhausted}};
    if (r.accepts && r.witness) {
      if (trace_on) {
        for (const TraceEvent& e : r.witness->events) {
          json rec{{"step", e.after.steps},
                   {"state", m.name(e.after.state)},
                   {"head", e.after.head},
                   {"write", e.was_write}};
          std::cout << rec.dump() << "\n";
        }
      }
      GapReport g = gap_stats(*r.witness, m.state_count());
      summary["witness"] = gap_report_json(g);
    }
    std::cout << summary.dump() << "\n";
    return r.accepts ? 0 : (r.truncated ? 3 : 1);
  }
  AltResult r = run_alternating(m, input, limits);
  json summary{{"type", "summary"},
               {"outcome", r.accepts ? "accept" : (r.truncated ? "inconclusive" : "reject")},
               {"explored", r.explored}};
  std::cout << summary.dump() << "\n";
  return r.accepts ? 0 : (r.truncated ? 3 : 1);
}

int cmd_transpile(const std::string& path, const std::string& construction,
                  const std::string& code_spec, const std::string& out_path) {
  LoadedMachine lm = load_machine(path);
  try {
    TranspileResult result;
    if (construction == "relax") {
      result.machine = relax_to_standard(lm.machine);
      result.report.construction = "relax";
      result.report.source_states = result.report.target_states = lm.machine.state_count();
      result.report.blowup = 1.0;
      result.report.layout = "identity";
      result.report.step_overhead_model = "O(steps)";
    } else if (construction == "copying") {
      result = to_write_once_copying(lm.machine);
    } else if (construction == "womcoded") {
      auto code = make_code(code_spec);
      result = to_write_once_womcoded(lm.machine, *code);
    } else {
      throw std::runtime_error("unknown construction '" + construction + "'");
    }
    write_machine_file(result.machine, out_path);
    json rep{{"type", "transpile-report"},
             {"construction", result.report.construction},
             {"source_states", result.report.source_states},
             {"target_states", result.report.target_states},
             {"blowup", result.report.blowup},
             {"layout", result.report.layout},
             {"step_overhead_model", result.report.step_overhead_model},
             {"out", out_path}};
    std::cout << rep.dump() << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "transpile failed: " << e.what() << "\n";
    return 1;
  }
}

int cmd_wom(const std::string& code_spec, int verify_len) {
  auto code = make_code(code_spec);
  std::cout << "# " << code->describe() << "\n";
  for (const auto& row : code->table())
    std::cout << "gen " << row.generation << " value " << row.value << " -> " << row.pattern
              << "\n";
  WomVerifyReport report = verify_code(*code, verify_len);
  json summary{{"type", "verify-report"},
               {"code", code->describe()},
               {"sequences_checked", report.sequences_checked},
               {"violations", report.violations.size()}};
  std::cout << summary.dump() << "\n";
  for (const auto& v : report.violations) {
    json rec{{"type", "violation"}, {"kind", v.kind}, {"detail", v.detail},
             {"sequence", v.sequence}};
    std::cout << rec.dump() << "\n";
  }
  return report.clean() ? 0 : 1;
}

int cmd_endwriter(const std::string& path, const std::string& action,
                  const std::string& input_digits, const Limits& limits) {
  LoadedMachine lm = load_machine(path);
  if (lm.machine.discipline != TapeDiscipline::WriteOnceEndOnly ||
      lm.machine.mode != Mode::Deterministic) {
    std::cerr << "endwriter requires a deterministic write-once-end machine\n";
    return 1;
  }
  try {
    if (action == "analyze") {
      EndWriterAnalysis a = analyze_end_writer(lm.machine);
      json rec{{"type", "endwriter-analysis"},
               {"writing_states", json::array()},
               {"product_states", a.prod.dfa.state_count()},
               {"threshold", a.threshold.constructed},
               {"paper_formula", a.threshold.paper_formula},
               {"constructed_le_paper", a.threshold.constructed_le_paper}};
      for (int s : a.writers) rec["writing_states"].push_back(lm.machine.name(s));
      if (a.threshold.paper_value)
        rec["paper_value"] = a.threshold.paper_value->get_str();
      std::cout << rec.dump() << "\n";
      for (std::size_t i = 0; i < a.one_way.size(); ++i) {
        json row{{"type", "gap-automaton"},
                 {"gap", i == 0 ? std::string("initial")
                                : lm.machine.name(a.writers[i - 1])},
                 {"two_way_states", a.two_way[i].state_count()},
                 {"one_way_states", a.one_way[i].state_count()}};
        std::cout << row.dump() << "\n";
      }
      return 0;
    }
    if (action == "decide") {
      Word input = parse_input_word(input_digits);
      EndWriterDecision d = decide_acceptance(lm.machine, input, limits);
      json rec{{"type", "endwriter-decision"},
               {"verdict", to_string(d.verdict)},
               {"peak_stored_word", d.peak_stored_word},
               {"peak_memory_model", d.peak_memory_model},
               {"threshold", d.threshold},
               {"writes", d.writes},
               {"pumps", d.applied.size()}};
      std::cout << rec.dump() << "\n";
      return exit_code_for(d.verdict);
    }
    std::cerr << "unknown action '" << action << "'\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "endwriter failed: " << e.what() << "\n";
    return 1;
  }
}

struct CorpusFile {
  std::string path;
  json meta;  // manifest entry, if any
};

std::vector<CorpusFile> corpus_files(const std::string& dir) {
  std::vector<CorpusFile> out;
  fs::path manifest = fs::path(dir) / "manifest.jsonl";
  if (fs::exists(manifest)) {
    std::ifstream in(manifest);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      json meta = json::parse(line);
      out.push_back({(fs::path(dir) / meta.at("file").get<std::string>()).string(), meta});
    }
    return out;
  }
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.path().extension() == ".wotm") out.push_back({entry.path().string(), json{}});
  std::sort(out.begin(), out.end(),
            [](const CorpusFile& a, const CorpusFile& b) { return a.path < b.path; });
  return out;
}

int cmd_bench(const std::string& corpus_dir, int max_len, const Limits& limits) {
  std::vector<CorpusFile> files;
  try {
    files = corpus_files(corpus_dir);
  } catch (const std::exception& e) {
    std::cerr << "cannot read corpus: " << e.what() << "\n";
    return 1;
  }
  for (const CorpusFile& f : files) {
    json header{{"type", "machine"}, {"file", f.path}};
    MachineDescription m;
    try {
      ParseResult pr = parse_machine_file(f.path);
      if (!pr.issues.empty() || !validate_machine(pr.machine).well_formed()) {
        header["error"] = "machine is not well formed";
        std::cout << header.dump() << "\n";
        continue;
      }
      m = std::move(pr.machine);
    } catch (const std::exception& e) {
      header["error"] = e.what();
      std::cout << header.dump() << "\n";
      continue;
    }
    header["states"] = m.state_count();
    header["mode"] = to_string(m.mode);
    header["tape"] = to_string(m.discipline);
    std::cout << header.dump() << "\n";

    // Optional transpiles for standard binary machines.
    std::optional<TranspileResult> copying, womcoded;
    std::unique_ptr<WomCode> code;
    bool binary = true;
    for (Symbol s : m.alphabet) binary = binary && (s == 0 || s == 1);
    if (m.discipline == TapeDiscipline::Standard && binary) {
      copying = to_write_once_copying(m);
      code = slot_code(1, 3);
      womcoded = to_write_once_womcoded(m, *code);
    }

    std::vector<Word> words{Word{}};
    for (int len = 0; len <= max_len; ++len) {
      for (const Word& w : words) {
        EngineRun r = run_machine(m, w, limits);
        json rec{{"type", "run"},
                 {"machine", f.path},
                 {"input", format_input_word(w)},
                 {"verdict", to_string(r.verdict)},
                 {"outcome", to_string(r.outcome)},
                 {"steps", r.steps},
                 {"space", r.space},
                 {"writes", r.writes}};
        if (m.mode == Mode::Deterministic) {
          RunTrace t = run_deterministic(m, w, limits, /*record_trace=*/false);
          GapReport g = gap_stats(t, m.state_count());
          rec["max_gap"] = g.max_gap;
          rec["bound_check"] = g.bound_check;
        }
        if (copying) {
          EngineRun rc = run_machine(copying->machine, copying_encode_input(w), limits);
          rec["copying_verdict"] = to_string(rc.verdict);
          rec["copying_steps"] = rc.steps;
          rec["copying_space"] = rc.space;
        }
        if (womcoded) {
          EngineRun rw = run_machine(womcoded->machine, womcoded_encode_input(*code, w), limits);
          rec["womcoded_verdict"] = to_string(rw.verdict);
          rec["womcoded_steps"] = rw.steps;
          rec["womcoded_space"] = rw.space;
        }
        if (!f.meta.is_null() && f.meta.contains("expected")) {
          for (const auto& exp : f.meta["expected"]) {
            if (exp.at("input").get<std::string>() == format_input_word(w)) {
              int want = exp.at("exit").get<int>();
              int got = exit_code_for(r.outcome);
              rec["expected_exit"] = want;
              rec["expected_match"] = want == got;
            }
          }
        }
        std::cout << rec.dump() << "\n";
      }
      if (len == max_len) break;
      std::vector<Word> next;
      for (const Word& w : words)
        for (Symbol s : m.alphabet) {
          Word w2 = w;
          w2.push_back(s);
          next.push_back(std::move(w2));
        }
      words = std::move(next);
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"write-once Turing machine toolkit"};
  app.require_subcommand(1);

  Limits limits;
  std::int64_t max_writes = -1;
  auto add_limit_flags = [&](CLI::App* cmd) {
    cmd->add_option("--max-steps", limits.max_steps, "step limit");
    cmd->add_option("--max-space", limits.max_space, "space limit (cells)");
    cmd->add_option("--max-writes", max_writes, "write limit");
  };

  std::string path, input, out_path, corpus_dir;
  std::string construction = "copying", code_spec = "rs", encoding = "raw", action = "analyze";
  bool trace_on = false;
  int max_len = 4, verify_len = 4;

  auto* validate = app.add_subcommand("validate", "check a machine file");
  validate->add_option("path", path)->required();

  auto* run = app.add_subcommand("run", "run a machine on an input word");
  run->add_option("path", path)->required();
  run->add_option("input", input, "input word as symbol digits")->default_val("");
  run->add_flag("--trace", trace_on, "emit one JSON record per step");
  run->add_option("--encode-input", encoding, "raw|blocks");
  add_limit_flags(run);

  auto* transpile = app.add_subcommand("transpile", "translate a machine");
  transpile->add_option("path", path)->required();
  transpile->add_option("--construction", construction, "copying|womcoded|relax");
  transpile->add_option("--code", code_spec, "slot:<b>,<u>|rs");
  transpile->add_option("--out", out_path, "output machine file")->required();

  auto* wom = app.add_subcommand("wom", "print and verify WOM codes");
  wom->add_option("--code", code_spec, "slot:<b>,<u>|rs");
  wom->add_option("--verify", verify_len, "max update-sequence length");

  auto* endwriter = app.add_subcommand("endwriter", "analyze or decide an end-writer");
  endwriter->add_option("path", path)->required();
  endwriter->add_option("--action", action, "analyze|decide");
  endwriter->add_option("input", input, "input word (decide)")->default_val("");
  add_limit_flags(endwriter);

  auto* bench = app.add_subcommand("bench", "sweep a corpus and emit measurements");
  bench->add_option("corpus", corpus_dir)->required();
  bench->add_option("--max-len", max_len, "max input length");
  add_limit_flags(bench);

  CLI11_PARSE(app, argc, argv);
  if (max_writes >= 0) limits.max_writes = max_writes;

  try {
    if (validate->parsed()) return cmd_validate(path);
    if (run->parsed()) return cmd_run(path, input, limits, trace_on, encoding);
    if (transpile->parsed()) return cmd_transpile(path, construction, code_spec, out_path);
    if (wom->parsed()) return cmd_wom(code_spec, verify_len);
    if (endwriter->parsed()) return cmd_endwriter(path, action, input, limits);
    if (bench->parsed()) return cmd_bench(corpus_dir, max_len, limits);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
