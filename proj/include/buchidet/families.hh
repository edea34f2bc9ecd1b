#pragma once

#include <cstdint>
#include <vector>

#include "buchidet/automata.hh"

namespace buchidet {

/// Alphabet able to encode `letters` distinct letters with the fewest APs.
/// Letter k is the valuation k; valuations beyond the last letter behave like
/// the last letter (see letter_of).
[[nodiscard]] Alphabet letter_alphabet(std::size_t letters);

/// Letter index denoted by a symbol of letter_alphabet(letters).
[[nodiscard]] std::size_t letter_of(symbol_t s, std::size_t letters);

/// B(n) over letters {1..n, #}: states q1..qn (indices 0..n-1) and the
/// accepting qF (index n), initial q1. qi moves to qj on j for every j > i,
/// loops on every letter but i and moves to qF on i; qF loops on every letter
/// but #.
[[nodiscard]] Nba family_b(std::size_t n);

/// C(n) over letters {1..n}: q0 (index 0), qi (index i) and the accepting
/// qi' (index n+i). q0 moves to every qi on every letter; qi loops on every
/// letter but i and moves to qi' on i; qi' loops on i and moves to qi on every
/// letter.
[[nodiscard]] Nba family_c(std::size_t n);

struct RandomNbaParams {
  std::size_t states = 5;
  std::size_t symbols = 2;
  double density = 1.5;
  double acc_frac = 0.3;
  std::uint64_t seed = 0;
};

/// Uniformly random NBA: round(density * states * symbols) distinct edges,
/// max(1, round(acc_frac * states)) accepting states, initial state 0. The
/// symbol count is rounded up to a power of two with extra valuations
/// aliasing the last letter.
[[nodiscard]] Nba random_nba(RandomNbaParams const& p);

/// Random weak NBA: the edges of random_nba, acceptance chosen per SCC so
/// that every SCC is either fully accepting or fully rejecting.
[[nodiscard]] Nba random_weak_nba(RandomNbaParams const& p);

struct RandomDpaParams {
  std::size_t states = 5;
  std::size_t aps = 1;
  priority_t max_priority = 3;
  std::uint64_t seed = 0;
};

/// Uniformly random complete DPA with priorities in [0, max_priority].
[[nodiscard]] Dpa random_dpa(RandomDpaParams const& p);

}  // namespace buchidet
