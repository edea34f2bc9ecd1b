#include "buchidet/families.hh"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "buchidet/analysis.hh"

namespace buchidet {

namespace {

std::string letter_name(std::size_t i) { return "l" + std::to_string(i); }

/// Uniform integer in [0, bound) by rejection sampling, independent of the
/// standard library's distribution implementation.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  auto const limit = std::mt19937_64::max() - (std::mt19937_64::max() % bound);
  for (;;) {
    auto const x = rng();
    if (x < limit) return x % bound;
  }
}

double uniform_unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void add_letter_edge(Nba& nba, state_t from, std::size_t letter, std::size_t letters, state_t to) {
  for (symbol_t s = 0; s < nba.symbol_count(); ++s)
    if (letter_of(s, letters) == letter) nba.add_edge(from, s, to);
}

}  // namespace

Alphabet letter_alphabet(std::size_t letters) {
  if (letters == 0) throw std::invalid_argument("alphabet needs at least one letter");
  Alphabet a;
  while (a.size() < letters) {
    if (a.aps.size() == max_aps) throw std::invalid_argument("too many letters");
    a.aps.push_back(letter_name(a.aps.size()));
  }
  return a;
}

std::size_t letter_of(symbol_t s, std::size_t letters) { return std::min<std::size_t>(s, letters - 1); }

Nba family_b(std::size_t n) {
  if (n == 0) throw std::invalid_argument("B(n) needs n >= 1");
  auto const letters = n + 1;  // letter k-1 is k for k in 1..n, letter n is #
  Nba nba(n + 1, letter_alphabet(letters));
  auto const qf = static_cast<state_t>(n);
  for (state_t i = 0; i < n; ++i) {
    for (std::size_t l = 0; l < letters; ++l) {
      if (l == i) {
        add_letter_edge(nba, i, l, letters, qf);
      } else {
        add_letter_edge(nba, i, l, letters, i);
      }
    }
    for (state_t j = i + 1; j < n; ++j) add_letter_edge(nba, i, j, letters, j);
    nba.names.push_back("q" + std::to_string(i + 1));
  }
  for (std::size_t l = 0; l < n; ++l) add_letter_edge(nba, qf, l, letters, qf);
  nba.names.push_back("qF");
  nba.initial.insert(0);
  nba.accepting.insert(qf);
  return nba;
}

Nba family_c(std::size_t n) {
  if (n == 0) throw std::invalid_argument("C(n) needs n >= 1");
  auto const letters = n;  // letter k-1 is k
  Nba nba(2 * n + 1, letter_alphabet(letters));
  nba.names.assign(2 * n + 1, "");
  nba.names[0] = "q0";
  for (std::size_t i = 1; i <= n; ++i) {
    auto const q = static_cast<state_t>(i);
    auto const qa = static_cast<state_t>(n + i);
    nba.names[q] = "q" + std::to_string(i);
    nba.names[qa] = "q" + std::to_string(i) + "'";
    for (symbol_t s = 0; s < nba.symbol_count(); ++s) {
      nba.add_edge(0, s, q);
      nba.add_edge(qa, s, q);
    }
    for (std::size_t l = 0; l < letters; ++l) add_letter_edge(nba, q, l, letters, l == i - 1 ? qa : q);
    add_letter_edge(nba, qa, i - 1, letters, qa);
    nba.accepting.insert(qa);
  }
  nba.initial.insert(0);
  return nba;
}

Nba random_nba(RandomNbaParams const& p) {
  if (p.states == 0 || p.symbols == 0) throw std::invalid_argument("random NBA needs states and symbols");
  std::mt19937_64 rng(p.seed);
  Nba nba(p.states, letter_alphabet(p.symbols));
  auto const total = static_cast<std::uint64_t>(p.states * p.symbols * p.states);
  auto edges = static_cast<std::uint64_t>(std::llround(p.density * static_cast<double>(p.states * p.symbols)));
  edges = std::min(edges, total);
  std::vector<bool> used(total, false);
  for (std::uint64_t k = 0; k < edges;) {
    auto const e = uniform_below(rng, total);
    if (used[e]) continue;
    used[e] = true;
    ++k;
    auto const from = static_cast<state_t>(e / (p.symbols * p.states));
    auto const letter = static_cast<std::size_t>((e / p.states) % p.symbols);
    auto const to = static_cast<state_t>(e % p.states);
    add_letter_edge(nba, from, letter, p.symbols, to);
  }
  auto acc = static_cast<std::size_t>(std::llround(p.acc_frac * static_cast<double>(p.states)));
  acc = std::clamp<std::size_t>(acc, 1, p.states);
  while (nba.accepting.size() < acc) nba.accepting.insert(static_cast<state_t>(uniform_below(rng, p.states)));
  nba.initial.insert(0);
  return nba;
}

Nba random_weak_nba(RandomNbaParams const& p) {
  auto nba = random_nba(p);
  std::mt19937_64 rng(p.seed ^ 0x9e3779b97f4a7c15ULL);
  auto const info = analyze_sccs(nba);
  nba.accepting.clear();
  for (auto const& m : info.members)
    if (uniform_unit(rng) < p.acc_frac) nba.accepting |= m;
  if (nba.accepting.empty()) nba.accepting |= info.members[info.scc_of[0]];
  return nba;
}

Dpa random_dpa(RandomDpaParams const& p) {
  if (p.states == 0) throw std::invalid_argument("random DPA needs states");
  std::mt19937_64 rng(p.seed);
  Alphabet alpha;
  for (std::size_t i = 0; i < p.aps; ++i) alpha.aps.push_back("p" + std::to_string(i));
  Dpa dpa(p.states, alpha);
  for (state_t s = 0; s < p.states; ++s)
    for (symbol_t a = 0; a < dpa.symbol_count(); ++a)
      dpa.set(s, a, static_cast<state_t>(uniform_below(rng, p.states)),
              static_cast<priority_t>(uniform_below(rng, p.max_priority + 1ULL)));
  dpa.initial = 0;
  return dpa;
}

}  // namespace buchidet
