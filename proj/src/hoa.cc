#include "buchidet/hoa.hh"

#include <bitset>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace buchidet {

namespace {

using SymbolMask = std::bitset<256>;

enum class Tok { header, ident, integer, string, punct, body, end, abort, eof };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
};

std::vector<Token> tokenize(std::string_view in) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t i = 0;
  auto const n = in.size();
  while (i < n) {
    char const c = in[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '/' && i + 1 < n && in[i + 1] == '*') {
      // comments may nest
      int depth = 0;
      auto const start = line;
      do {
        if (i + 1 < n && in[i] == '/' && in[i + 1] == '*') {
          ++depth;
          i += 2;
        } else if (i + 1 < n && in[i] == '*' && in[i + 1] == '/') {
          --depth;
          i += 2;
        } else {
          if (in[i] == '\n') ++line;
          ++i;
        }
      } while (depth > 0 && i < n);
      if (depth > 0) throw ParseError("unterminated comment", start);
    } else if (c == '"') {
      std::string s;
      auto const start = line;
      ++i;
      while (i < n && in[i] != '"') {
        if (in[i] == '\\' && i + 1 < n) ++i;
        if (in[i] == '\n') ++line;
        s += in[i++];
      }
      if (i >= n) throw ParseError("unterminated string", start);
      ++i;
      out.push_back({Tok::string, std::move(s), start});
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string s;
      while (i < n && std::isdigit(static_cast<unsigned char>(in[i]))) s += in[i++];
      out.push_back({Tok::integer, std::move(s), line});
    } else if (c == '-' && in.substr(i, 8) == "--BODY--") {
      out.push_back({Tok::body, "--BODY--", line});
      i += 8;
    } else if (c == '-' && in.substr(i, 7) == "--END--") {
      out.push_back({Tok::end, "--END--", line});
      i += 7;
    } else if (c == '-' && in.substr(i, 9) == "--ABORT--") {
      out.push_back({Tok::abort, "--ABORT--", line});
      i += 9;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '@') {
      std::string s;
      s += in[i++];
      while (i < n && (std::isalnum(static_cast<unsigned char>(in[i])) || in[i] == '_' || in[i] == '-'))
        s += in[i++];
      if (s[0] != '@' && i < n && in[i] == ':') {
        ++i;
        out.push_back({Tok::header, std::move(s), line});
      } else {
        out.push_back({Tok::ident, std::move(s), line});
      }
    } else if (std::string_view("[]{}()!&|").find(c) != std::string_view::npos) {
      out.push_back({Tok::punct, std::string(1, c), line});
      ++i;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line);
    }
  }
  out.push_back({Tok::eof, "", line});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  HoaAutomaton run();

 private:
  Token const& peek() const { return toks_[pos_]; }
  Token const& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool at_punct(char c) const { return peek().kind == Tok::punct && peek().text[0] == c; }
  void expect_punct(char c) {
    if (!at_punct(c)) fail(std::string("expected '") + c + "'");
    next();
  }
  [[noreturn]] void fail(std::string const& msg) const { throw ParseError(msg, peek().line); }

  std::size_t integer() {
    if (peek().kind != Tok::integer) fail("expected integer, got '" + peek().text + "'");
    return std::stoul(next().text);
  }

  void skip_header_values() {
    while (peek().kind != Tok::header && peek().kind != Tok::body && peek().kind != Tok::eof)
      next();
  }

  SymbolMask label_or();
  SymbolMask label_and();
  SymbolMask label_not();
  SymbolMask label_atom();
  std::vector<std::size_t> acc_marks();
  SymbolMask all_symbols() const {
    SymbolMask m;
    for (std::size_t s = 0; s < (std::size_t{1} << aps_.size()); ++s) m.set(s);
    return m;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<std::string> aps_;
  std::map<std::string, SymbolMask> aliases_;
};

SymbolMask Parser::label_or() {
  auto m = label_and();
  while (at_punct('|')) {
    next();
    m |= label_and();
  }
  return m;
}

SymbolMask Parser::label_and() {
  auto m = label_not();
  while (at_punct('&')) {
    next();
    m &= label_not();
  }
  return m;
}

SymbolMask Parser::label_not() {
  if (at_punct('!')) {
    next();
    return all_symbols() & ~label_not();
  }
  return label_atom();
}

SymbolMask Parser::label_atom() {
  auto const& t = peek();
  if (t.kind == Tok::ident && t.text == "t") {
    next();
    return all_symbols();
  }
  if (t.kind == Tok::ident && t.text == "f") {
    next();
    return {};
  }
  if (t.kind == Tok::ident && t.text[0] == '@') {
    auto it = aliases_.find(t.text);
    if (it == aliases_.end()) fail("unknown alias " + t.text);
    next();
    return it->second;
  }
  if (t.kind == Tok::integer) {
    auto const ap = integer();
    if (ap >= aps_.size()) fail("atomic proposition index " + std::to_string(ap) + " out of range");
    SymbolMask m;
    for (std::size_t s = 0; s < (std::size_t{1} << aps_.size()); ++s)
      if ((s >> ap) & 1U) m.set(s);
    return m;
  }
  if (at_punct('(')) {
    next();
    auto m = label_or();
    expect_punct(')');
    return m;
  }
  fail("malformed label expression near '" + t.text + "'");
}

std::vector<std::size_t> Parser::acc_marks() {
  std::vector<std::size_t> marks;
  if (!at_punct('{')) return marks;
  next();
  while (!at_punct('}')) marks.push_back(integer());
  next();
  return marks;
}

enum class AccKind { unknown, buchi, parity_min_even };

HoaAutomaton Parser::run() {
  std::optional<std::size_t> state_count;
  std::vector<std::size_t> starts;
  AccKind kind = AccKind::unknown;
  std::string acc_name;
  std::string acceptance;
  bool seen_version = false;
  std::size_t acc_sets = 0;

  while (peek().kind == Tok::header) {
    auto const h = next();
    if (h.text == "HOA") {
      if (peek().kind != Tok::ident || peek().text != "v1") fail("only HOA v1 is supported");
      next();
      seen_version = true;
    } else if (h.text == "States") {
      state_count = integer();
    } else if (h.text == "Start") {
      starts.push_back(integer());
      if (at_punct('&')) fail("conjunctive initial states are not supported");
    } else if (h.text == "AP") {
      auto const n = integer();
      if (n > max_aps) throw ParseError("at most 8 atomic propositions are supported, got " + std::to_string(n), h.line);
      for (std::size_t i = 0; i < n; ++i) {
        if (peek().kind != Tok::string) fail("expected AP name");
        aps_.push_back(next().text);
      }
    } else if (h.text == "Alias") {
      if (peek().kind != Tok::ident || peek().text[0] != '@') fail("expected alias name");
      auto const name = next().text;
      aliases_[name] = label_or();
    } else if (h.text == "Acceptance") {
      acc_sets = integer();
      while (peek().kind != Tok::header && peek().kind != Tok::body && peek().kind != Tok::eof)
        acceptance += next().text;
    } else if (h.text == "acc-name") {
      while (peek().kind == Tok::ident || peek().kind == Tok::integer) {
        if (!acc_name.empty()) acc_name += " ";
        acc_name += next().text;
      }
    } else {
      skip_header_values();
    }
  }
  if (!seen_version) fail("missing 'HOA: v1' header");
  if (peek().kind != Tok::body) fail("expected --BODY--");
  auto const header_line = peek().line;
  next();

  if (!acc_name.empty()) {
    if (acc_name == "Buchi") {
      kind = AccKind::buchi;
    } else if (acc_name.rfind("parity min even", 0) == 0) {
      kind = AccKind::parity_min_even;
    } else {
      throw ParseError("unsupported acceptance '" + acc_name + "'", header_line);
    }
  } else if (acc_sets == 1 && acceptance == "Inf(0)") {
    kind = AccKind::buchi;
  } else {
    throw ParseError("unsupported acceptance '" + std::to_string(acc_sets) + " " + acceptance + "'", header_line);
  }
  if (!state_count) throw ParseError("missing States header", header_line);

  Alphabet alpha{aps_};
  auto const nsym = alpha.size();
  auto const n = *state_count;
  for (auto s : starts)
    if (s >= n) throw ParseError("initial state out of range", header_line);

  Nba nba(n, alpha);
  std::vector<std::vector<std::optional<std::pair<state_t, priority_t>>>> dedges(
      n, std::vector<std::optional<std::pair<state_t, priority_t>>>(nsym));
  std::vector<std::string> names(n);
  bool named = false;

  while (peek().kind == Tok::header && peek().text == "State") {
    auto const state_line = next().line;
    std::optional<SymbolMask> state_label;
    if (at_punct('[')) {
      next();
      state_label = label_or();
      expect_punct(']');
    }
    auto const q = integer();
    if (q >= n) throw ParseError("state index out of range", state_line);
    if (peek().kind == Tok::string) {
      names[q] = next().text;
      named = true;
    }
    auto const state_marks = acc_marks();
    if (kind == AccKind::buchi && !state_marks.empty()) nba.accepting.insert(static_cast<state_t>(q));

    std::size_t implicit = 0;
    while (peek().kind == Tok::integer || at_punct('[')) {
      auto const edge_line = peek().line;
      SymbolMask label;
      if (at_punct('[')) {
        if (state_label) fail("edge label on a state that already carries a label");
        next();
        label = label_or();
        expect_punct(']');
      } else if (state_label) {
        label = *state_label;
      } else {
        if (implicit >= nsym) throw ParseError("too many implicitly labelled edges", edge_line);
        label.set(implicit++);
      }
      auto const dst = integer();
      if (dst >= n) throw ParseError("edge target out of range", edge_line);
      if (at_punct('&')) fail("universal branching is not supported");
      auto const marks = acc_marks();
      if (kind == AccKind::buchi) {
        if (!marks.empty())
          throw ParseError("transition-based Büchi acceptance is not supported", edge_line);
        for (std::size_t s = 0; s < nsym; ++s)
          if (label.test(s)) nba.add_edge(static_cast<state_t>(q), static_cast<symbol_t>(s), static_cast<state_t>(dst));
      } else {
        auto const& m = marks.empty() ? state_marks : marks;
        if (m.size() != 1) throw ParseError("parity transitions need exactly one acceptance mark", edge_line);
        for (std::size_t s = 0; s < nsym; ++s) {
          if (!label.test(s)) continue;
          auto& slot = dedges[q][s];
          if (slot && slot->first != dst) throw ParseError("automaton is not deterministic", edge_line);
          slot = std::make_pair(static_cast<state_t>(dst), static_cast<priority_t>(m[0]));
        }
      }
    }
  }
  if (peek().kind == Tok::abort) fail("input was aborted (--ABORT--)");
  if (peek().kind != Tok::end) fail("expected --END--, got '" + peek().text + "'");
  auto const end_line = peek().line;
  next();

  if (kind == AccKind::buchi) {
    for (auto s : starts) nba.initial.insert(static_cast<state_t>(s));
    if (named) nba.names = names;
    return nba;
  }

  if (starts.size() != 1) throw ParseError("a parity automaton needs exactly one initial state", end_line);
  Dpa dpa(n, alpha);
  dpa.initial = static_cast<state_t>(starts[0]);
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t s = 0; s < nsym; ++s) {
      if (!dedges[q][s])
        throw ParseError("automaton is not complete (state " + std::to_string(q) + ")", end_line);
      dpa.set(static_cast<state_t>(q), static_cast<symbol_t>(s), dedges[q][s]->first, dedges[q][s]->second);
    }
  return dpa;
}

std::string parity_formula(std::size_t i, std::size_t d) {
  auto const atom = (i % 2 == 0 ? "Inf(" : "Fin(") + std::to_string(i) + ")";
  if (i + 1 == d) return atom;
  auto const rest = parity_formula(i + 1, d);
  auto const wrapped = (i + 2 == d) ? rest : "(" + rest + ")";
  return atom + (i % 2 == 0 ? " | " : " & ") + wrapped;
}

void emit_header(std::ostringstream& out, std::string const& name, std::size_t states) {
  out << "HOA: v1\n";
  if (!name.empty()) out << "name: \"" << name << "\"\n";
  out << "States: " << states << "\n";
}

void emit_aps(std::ostringstream& out, Alphabet const& alpha) {
  out << "AP: " << alpha.aps.size();
  for (auto const& ap : alpha.aps) out << " \"" << ap << "\"";
  out << "\n";
}

}  // namespace

HoaAutomaton parse_hoa(std::string_view text) { return Parser(tokenize(text)).run(); }

Nba parse_nba(std::string_view text) {
  auto aut = parse_hoa(text);
  if (auto* nba = std::get_if<Nba>(&aut)) return std::move(*nba);
  throw ParseError("expected a Büchi automaton, got a parity automaton", 1);
}

Dpa parse_dpa(std::string_view text) {
  auto aut = parse_hoa(text);
  if (auto* dpa = std::get_if<Dpa>(&aut)) return std::move(*dpa);
  throw ParseError("expected a parity automaton, got a Büchi automaton", 1);
}

std::string emit_hoa(Nba const& nba, std::string const& name) {
  std::ostringstream out;
  emit_header(out, name, nba.state_count);
  nba.initial.for_each([&](state_t q) { out << "Start: " << q << "\n"; });
  emit_aps(out, nba.alphabet);
  out << "acc-name: Buchi\nAcceptance: 1 Inf(0)\n";
  out << "properties: trans-labels explicit-labels state-acc\n";
  out << "--BODY--\n";
  for (state_t q = 0; q < nba.state_count; ++q) {
    out << "State: " << q;
    if (q < nba.names.size() && !nba.names[q].empty()) out << " \"" << nba.names[q] << "\"";
    if (nba.accepting.contains(q)) out << " {0}";
    out << "\n";
    for (symbol_t a = 0; a < nba.symbol_count(); ++a)
      nba.succ[q][a].for_each([&](state_t p) { out << "[" << nba.alphabet.label(a) << "] " << p << "\n"; });
  }
  out << "--END--\n";
  return out.str();
}

std::string emit_hoa(Dpa const& raw, std::string const& name) {
  auto const dpa = normalize_priorities(raw);
  priority_t max_prio = 0;
  for (auto p : dpa.priority) max_prio = std::max(max_prio, p);
  auto const d = static_cast<std::size_t>(max_prio) + 1;

  std::ostringstream out;
  emit_header(out, name, dpa.state_count);
  out << "Start: " << dpa.initial << "\n";
  emit_aps(out, dpa.alphabet);
  out << "acc-name: parity min even " << d << "\n";
  out << "Acceptance: " << d << " " << parity_formula(0, d) << "\n";
  out << "properties: trans-labels explicit-labels trans-acc deterministic complete\n";
  out << "--BODY--\n";
  for (state_t q = 0; q < dpa.state_count; ++q) {
    out << "State: " << q << "\n";
    for (symbol_t a = 0; a < dpa.symbol_count(); ++a)
      out << "[" << dpa.alphabet.label(a) << "] " << dpa.succ(q, a) << " {" << dpa.prio(q, a) << "}\n";
  }
  out << "--END--\n";
  return out.str();
}

std::string read_file(std::string const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace buchidet
