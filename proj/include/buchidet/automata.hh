#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "buchidet/state_set.hh"

namespace buchidet {

using priority_t = std::uint32_t;

inline constexpr std::size_t max_aps = 8;

/// Raised on malformed or unsupported automaton input.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string const& msg, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  [[nodiscard]] std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Raised when a construction exceeds its configured state cap.
class StateCapExceeded : public std::runtime_error {
 public:
  explicit StateCapExceeded(std::size_t cap)
      : std::runtime_error("state cap of " + std::to_string(cap) + " exceeded") {}
};

/// Raised when a construction runs past its deadline.
class DeadlineExceeded : public std::runtime_error {
 public:
  DeadlineExceeded() : std::runtime_error("deadline exceeded") {}
};

/// Explicit alphabet: every valuation of the atomic propositions is one symbol.
/// Symbol s assigns AP i the value of bit i of s.
struct Alphabet {
  std::vector<std::string> aps;

  [[nodiscard]] std::size_t size() const { return std::size_t{1} << aps.size(); }
  /// Renders a symbol as an HOA label body, e.g. `0&!1`.
  [[nodiscard]] std::string label(symbol_t s) const;
  /// Human-readable form used in counterexamples, e.g. `{a,!b}`.
  [[nodiscard]] std::string render(symbol_t s) const;

  friend bool operator==(Alphabet const&, Alphabet const&) = default;
};

/// Nondeterministic Büchi automaton with state-based acceptance.
struct Nba {
  std::size_t state_count = 0;
  Alphabet alphabet;
  /// succ[state][symbol]
  std::vector<std::vector<StateSet>> succ;
  StateSet initial;
  StateSet accepting;
  std::vector<std::string> names;

  Nba() = default;
  Nba(std::size_t states, Alphabet alpha);

  [[nodiscard]] std::size_t symbol_count() const { return alphabet.size(); }
  void add_edge(state_t from, symbol_t sym, state_t to) { succ[from][sym].insert(to); }
  [[nodiscard]] StateSet const& post(state_t q, symbol_t a) const { return succ[q][a]; }
  [[nodiscard]] StateSet post(StateSet const& qs, symbol_t a) const;
  /// Union over all symbols.
  [[nodiscard]] StateSet post_any(state_t q) const;
  [[nodiscard]] std::size_t edge_count() const;
};

/// Complete deterministic parity automaton with transition priorities,
/// min-even acceptance.
struct Dpa {
  std::size_t state_count = 0;
  Alphabet alphabet;
  /// delta[state * symbols + symbol]
  std::vector<state_t> delta;
  std::vector<priority_t> priority;
  state_t initial = 0;
  /// Optional per-state tag (the powerset node a state was built for), empty if unused.
  std::vector<std::int64_t> tag;

  Dpa() = default;
  Dpa(std::size_t states, Alphabet alpha);

  [[nodiscard]] std::size_t symbol_count() const { return alphabet.size(); }
  [[nodiscard]] std::size_t index(state_t s, symbol_t a) const { return s * symbol_count() + a; }
  [[nodiscard]] state_t succ(state_t s, symbol_t a) const { return delta[index(s, a)]; }
  [[nodiscard]] priority_t prio(state_t s, symbol_t a) const { return priority[index(s, a)]; }
  void set(state_t s, symbol_t a, state_t to, priority_t p) {
    delta[index(s, a)] = to;
    priority[index(s, a)] = p;
  }
  [[nodiscard]] std::vector<priority_t> distinct_priorities() const;
};

/// Order- and parity-preserving compaction of priorities: the smallest value
/// becomes 0 or 1 according to its parity and no gaps of the same parity
/// remain.
[[nodiscard]] Dpa normalize_priorities(Dpa dpa);

/// Same states, transitions and normalized priorities.
[[nodiscard]] bool isomorphic_by_index(Dpa const& a, Dpa const& b);

}  // namespace buchidet
