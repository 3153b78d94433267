// Machine description text format: one directive per line, '#' comments.
//
//   mode: deterministic|nondeterministic|alternating
//   tape: standard|write-once|write-once-end
//   alphabet: 0 1 [2 ...]
//   states: q0 q1 ...
//   start: q0
//   accept: qa
//   reject: qr
//   forall: q2 q3            (alternating only; unlisted states existential)
//   trans: <state> <read> -> <write> <L|R|S> <state>
#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "wotm/machine.hpp"

namespace wotm {

struct ParseError : std::runtime_error {
  int line;
  int column;
  ParseError(int line_, int column_, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_) + ":" + std::to_string(column_) +
                           ": " + msg),
        line(line_),
        column(column_) {}
};

struct ParseResult {
  MachineDescription machine;
  // Semantic problems that keep the file parseable but the machine malformed
  // (unknown states in transitions, missing sections). Transitions naming
  // unknown states are dropped and reported here.
  std::vector<ValidationIssue> issues;
};

// Throws ParseError on syntax problems (with line/column).
ParseResult parse_machine(std::istream& in);
ParseResult parse_machine_string(const std::string& text);
ParseResult parse_machine_file(const std::string& path);

// Canonical rendering; parse(print(m)) == m for well-formed machines.
std::string print_machine(const MachineDescription& m);
void write_machine_file(const MachineDescription& m, const std::string& path);

// Input words on the command line use symbol digits, e.g. "0110".
Word parse_input_word(const std::string& digits);
std::string format_input_word(const Word& w);

}  // namespace wotm
