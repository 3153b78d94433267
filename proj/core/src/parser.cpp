#include "wotm/parser.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace wotm {

namespace {

struct Line {
  int number = 0;
  std::string directive;
  std::vector<std::string> tokens;
  std::vector<int> columns;  // 1-based column of each token
};

// Splits a physical line into tokens, stripping '#' comments.
bool tokenize(const std::string& raw, int number, Line& out) {
  out.number = number;
  out.tokens.clear();
  out.columns.clear();
  std::size_t end = raw.find('#');
  std::string text = raw.substr(0, end);
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= text.size()) break;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    out.tokens.push_back(text.substr(i, j - i));
    out.columns.push_back(static_cast<int>(i) + 1);
    i = j;
  }
  return !out.tokens.empty();
}

int parse_symbol(const Line& ln, std::size_t tok) {
  const std::string& s = ln.tokens[tok];
  try {
    std::size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size() || v < 0) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw ParseError(ln.number, ln.columns[tok], "expected a non-negative symbol, got '" + s + "'");
  }
}

Move parse_move(const Line& ln, std::size_t tok) {
  const std::string& s = ln.tokens[tok];
  if (s == "L") return Move::Left;
  if (s == "R") return Move::Right;
  if (s == "S") return Move::Stay;
  throw ParseError(ln.number, ln.columns[tok], "expected move L, R or S, got '" + s + "'");
}

}  // namespace

ParseResult parse_machine(std::istream& in) {
  ParseResult result;
  MachineDescription& m = result.machine;
  bool saw_mode = false, saw_tape = false, saw_alphabet = false, saw_states = false;
  std::string start_name, accept_name, reject_name;
  std::vector<std::pair<std::string, int>> forall_names;  // name, line
  struct RawTrans {
    std::string from, to;
    Symbol read, write;
    Move move;
    int line;
  };
  std::vector<RawTrans> raw_transitions;

  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    Line ln;
    if (!tokenize(raw, number, ln)) continue;
    const std::string& head = ln.tokens[0];
    auto need = [&](std::size_t count, const char* what) {
      if (ln.tokens.size() < count)
        throw ParseError(ln.number, static_cast<int>(raw.size()) + 1,
                         std::string("truncated '") + head + "' directive: expected " + what);
    };
    if (head == "mode:") {
      need(2, "a mode");
      const std::string& v = ln.tokens[1];
      if (v == "deterministic") m.mode = Mode::Deterministic;
      else if (v == "nondeterministic") m.mode = Mode::Nondeterministic;
      else if (v == "alternating") m.mode = Mode::Alternating;
      else throw ParseError(ln.number, ln.columns[1], "unknown mode '" + v + "'");
      saw_mode = true;
    } else if (head == "tape:") {
      need(2, "a tape discipline");
      const std::string& v = ln.tokens[1];
      if (v == "standard") m.discipline = TapeDiscipline::Standard;
      else if (v == "write-once") m.discipline = TapeDiscipline::WriteOnce;
      else if (v == "write-once-end") m.discipline = TapeDiscipline::WriteOnceEndOnly;
      else throw ParseError(ln.number, ln.columns[1], "unknown tape discipline '" + v + "'");
      saw_tape = true;
    } else if (head == "alphabet:") {
      need(2, "at least one symbol");
      for (std::size_t t = 1; t < ln.tokens.size(); ++t) m.alphabet.push_back(parse_symbol(ln, t));
      saw_alphabet = true;
    } else if (head == "states:") {
      need(2, "at least one state");
      for (std::size_t t = 1; t < ln.tokens.size(); ++t) m.state_names.push_back(ln.tokens[t]);
      saw_states = true;
    } else if (head == "start:") {
      need(2, "a state");
      start_name = ln.tokens[1];
    } else if (head == "accept:") {
      need(2, "a state");
      accept_name = ln.tokens[1];
    } else if (head == "reject:") {
      need(2, "a state");
      reject_name = ln.tokens[1];
    } else if (head == "forall:") {
      for (std::size_t t = 1; t < ln.tokens.size(); ++t)
        forall_names.push_back({ln.tokens[t], ln.number});
    } else if (head == "trans:") {
      // trans: <state> <read> -> <write> <move> <state>
      need(7, "<state> <read> -> <write> <L|R|S> <state>");
      if (ln.tokens[3] != "->")
        throw ParseError(ln.number, ln.columns[3], "expected '->', got '" + ln.tokens[3] + "'");
      RawTrans rt;
      rt.from = ln.tokens[1];
      rt.read = parse_symbol(ln, 2);
      rt.write = parse_symbol(ln, 4);
      rt.move = parse_move(ln, 5);
      rt.to = ln.tokens[6];
      rt.line = ln.number;
      raw_transitions.push_back(std::move(rt));
    } else {
      throw ParseError(ln.number, ln.columns[0], "unknown directive '" + head + "'");
    }
  }

  auto issue = [&](std::string msg) {
    result.issues.push_back({ValidationIssue::Severity::Error, std::move(msg)});
  };
  if (!saw_mode) issue("missing 'mode:' directive");
  if (!saw_tape) issue("missing 'tape:' directive");
  if (!saw_alphabet) issue("missing 'alphabet:' directive");
  if (!saw_states) issue("missing 'states:' directive");

  m.polarity.assign(m.state_names.size(), Polarity::Existential);
  auto resolve = [&](const std::string& name, const char* what) {
    if (name.empty()) {
      issue(std::string("missing '") + what + ":' directive");
      return -1;
    }
    int q = m.state_index(name);
    if (q < 0) issue(std::string(what) + " state '" + name + "' is not declared");
    return q;
  };
  m.start = resolve(start_name, "start");
  m.accept = resolve(accept_name, "accept");
  m.reject = resolve(reject_name, "reject");
  for (auto& [name, line] : forall_names) {
    int q = m.state_index(name);
    if (q < 0)
      issue("forall (line " + std::to_string(line) + "): state '" + name + "' is not declared");
    else
      m.polarity[q] = Polarity::Universal;
  }
  for (const auto& rt : raw_transitions) {
    int from = m.state_index(rt.from);
    int to = m.state_index(rt.to);
    if (from < 0)
      issue("trans (line " + std::to_string(rt.line) + "): unknown state '" + rt.from + "'");
    if (to < 0)
      issue("trans (line " + std::to_string(rt.line) + "): unknown state '" + rt.to + "'");
    if (from < 0 || to < 0) continue;
    m.transitions.push_back({from, rt.read, rt.write, rt.move, to});
  }
  return result;
}

ParseResult parse_machine_string(const std::string& text) {
  std::istringstream in(text);
  return parse_machine(in);
}

ParseResult parse_machine_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open machine file: " + path);
  return parse_machine(in);
}

std::string print_machine(const MachineDescription& m) {
  std::ostringstream out;
  out << "mode: " << to_string(m.mode) << "\n";
  out << "tape: " << to_string(m.discipline) << "\n";
  out << "alphabet:";
  for (Symbol s : m.alphabet) out << " " << s;
  out << "\n";
  out << "states:";
  for (const auto& n : m.state_names) out << " " << n;
  out << "\n";
  out << "start: " << (m.start >= 0 ? m.name(m.start) : "?") << "\n";
  out << "accept: " << (m.accept >= 0 ? m.name(m.accept) : "?") << "\n";
  out << "reject: " << (m.reject >= 0 ? m.name(m.reject) : "?") << "\n";
  if (m.mode == Mode::Alternating) {
    std::vector<int> universal;
    for (int q = 0; q < m.state_count(); ++q)
      if (m.state_polarity(q) == Polarity::Universal) universal.push_back(q);
    if (!universal.empty()) {
      out << "forall:";
      for (int q : universal) out << " " << m.name(q);
      out << "\n";
    }
  }
  for (const Transition& t : m.transitions) {
    out << "trans: " << m.name(t.from) << " " << t.read << " -> " << t.write << " "
        << to_string(t.move) << " " << m.name(t.to) << "\n";
  }
  return out.str();
}

void write_machine_file(const MachineDescription& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write machine file: " + path);
  out << print_machine(m);
}

Word parse_input_word(const std::string& digits) {
  Word w;
  for (char c : digits) {
    if (c < '0' || c > '9') throw std::runtime_error("input word must be symbol digits, got '" + digits + "'");
    w.push_back(c - '0');
  }
  return w;
}

std::string format_input_word(const Word& w) {
  std::string s;
  for (Symbol v : w) {
    if (v < 0 || v > 9) {
      s += "<" + std::to_string(v) + ">";
    } else {
      s += static_cast<char>('0' + v);
    }
  }
  return s;
}

}  // namespace wotm
