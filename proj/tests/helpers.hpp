// Shared test utilities: corpus access, word enumeration, trace checks.
#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "wotm/machine.hpp"
#include "wotm/parser.hpp"

namespace wotm::test {

inline std::string corpus_dir() { return WOTM_CORPUS_DIR; }

inline MachineDescription load_corpus(const std::string& name) {
  ParseResult r = parse_machine_file(corpus_dir() + "/" + name);
  if (!r.issues.empty()) throw std::runtime_error("corpus machine has issues: " + name);
  return std::move(r.machine);
}

struct ManifestEntry {
  std::string file;
  std::vector<std::string> tags;
  nlohmann::json raw;
  bool has_tag(const std::string& t) const {
    for (const auto& x : tags)
      if (x == t) return true;
    return false;
  }
};

inline std::vector<ManifestEntry> manifest() {
  std::vector<ManifestEntry> out;
  std::ifstream in(corpus_dir() + "/manifest.jsonl");
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line);
    ManifestEntry e;
    e.file = j.at("file").get<std::string>();
    for (const auto& t : j.at("tags")) e.tags.push_back(t.get<std::string>());
    e.raw = std::move(j);
    out.push_back(std::move(e));
  }
  return out;
}

// All words over the alphabet with length <= max_len, shortest first.
inline std::vector<Word> all_words(const std::vector<Symbol>& alphabet, int max_len) {
  std::vector<Word> out{Word{}};
  std::size_t level_begin = 0;
  for (int len = 1; len <= max_len; ++len) {
    std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i)
      for (Symbol s : alphabet) {
        Word w = out[i];
        w.push_back(s);
        out.push_back(std::move(w));
      }
    level_begin = level_end;
  }
  return out;
}

// Write-once monotonicity over a recorded trace: once non-blank, a cell's
// symbol never changes.
inline bool trace_is_write_once_monotone(const RunTrace& trace) {
  Tape prev = trace.initial.tape;
  for (const TraceEvent& e : trace.events) {
    for (const auto& [cell, sym] : prev.cells) {
      if (e.after.tape.read(cell) != sym) return false;
    }
    prev = e.after.tape;
  }
  return true;
}

}  // namespace wotm::test
