#pragma once

#include <optional>
#include <string>
#include <vector>

#include "buchidet/automata.hh"

namespace buchidet {

/// Ultimately periodic word prefix · cycle^ω.
struct Lasso {
  std::vector<symbol_t> prefix;
  std::vector<symbol_t> cycle;

  friend bool operator==(Lasso const&, Lasso const&) = default;
};

/// `u|v` with each symbol rendered as an AP assignment, symbols separated by
/// spaces.
[[nodiscard]] std::string format_lasso(Lasso const& l, Alphabet const& alpha);

[[nodiscard]] bool nba_accepts_lasso(Nba const& nba, Lasso const& l);
[[nodiscard]] bool dpa_accepts_lasso(Dpa const& dpa, Lasso const& l);

/// Calls `f` for every lasso with |prefix| <= max_prefix and
/// 1 <= |cycle| <= max_cycle, ordered by prefix length, prefix
/// (lexicographic), cycle length, cycle. Stops early when `f` returns false.
template <typename F>
void for_each_lasso(std::size_t symbols, std::size_t max_prefix, std::size_t max_cycle, F&& f);

/// First lasso (in for_each_lasso order) on which the two automata disagree.
[[nodiscard]] std::optional<Lasso> bounded_equivalence(Nba const& nba, Dpa const& dpa, std::size_t max_prefix,
                                                       std::size_t max_cycle);

/// Exact language equivalence of two complete DPAs over the same alphabet.
/// Returns a distinguishing lasso, or nothing when equivalent. Throws
/// std::invalid_argument on alphabet mismatch.
[[nodiscard]] std::optional<Lasso> dpa_equivalent(Dpa const& a, Dpa const& b);

namespace detail {

inline bool next_word(std::vector<symbol_t>& w, std::size_t symbols) {
  for (std::size_t i = w.size(); i-- > 0;) {
    if (++w[i] < symbols) return true;
    w[i] = 0;
  }
  return false;
}

}  // namespace detail

template <typename F>
void for_each_lasso(std::size_t symbols, std::size_t max_prefix, std::size_t max_cycle, F&& f) {
  for (std::size_t pl = 0; pl <= max_prefix; ++pl) {
    Lasso l;
    l.prefix.assign(pl, 0);
    do {
      for (std::size_t cl = 1; cl <= max_cycle; ++cl) {
        l.cycle.assign(cl, 0);
        do {
          if (!f(static_cast<Lasso const&>(l))) return;
        } while (detail::next_word(l.cycle, symbols));
      }
    } while (detail::next_word(l.prefix, symbols));
  }
}

}  // namespace buchidet
