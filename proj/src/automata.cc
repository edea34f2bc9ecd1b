#include "buchidet/automata.hh"

#include <algorithm>
#include <map>

namespace buchidet {

std::string Alphabet::label(symbol_t s) const {
  if (aps.empty()) return "t";
  std::string r;
  for (std::size_t i = 0; i < aps.size(); ++i) {
    if (i) r += "&";
    if (!((s >> i) & 1U)) r += "!";
    r += std::to_string(i);
  }
  return r;
}

std::string Alphabet::render(symbol_t s) const {
  std::string r = "{";
  for (std::size_t i = 0; i < aps.size(); ++i) {
    if (i) r += ",";
    if (!((s >> i) & 1U)) r += "!";
    r += aps[i];
  }
  return r + "}";
}

Nba::Nba(std::size_t states, Alphabet alpha)
    : state_count(states),
      alphabet(std::move(alpha)),
      succ(states, std::vector<StateSet>(alphabet.size())) {}

StateSet Nba::post(StateSet const& qs, symbol_t a) const {
  StateSet r;
  qs.for_each([&](state_t q) { r |= succ[q][a]; });
  return r;
}

StateSet Nba::post_any(state_t q) const {
  StateSet r;
  for (auto const& s : succ[q]) r |= s;
  return r;
}

std::size_t Nba::edge_count() const {
  std::size_t c = 0;
  for (auto const& row : succ)
    for (auto const& s : row) c += s.size();
  return c;
}

Dpa::Dpa(std::size_t states, Alphabet alpha)
    : state_count(states),
      alphabet(std::move(alpha)),
      delta(states * alphabet.size(), 0),
      priority(states * alphabet.size(), 0) {}

std::vector<priority_t> Dpa::distinct_priorities() const {
  auto r = priority;
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

Dpa normalize_priorities(Dpa dpa) {
  auto const used = dpa.distinct_priorities();
  std::map<priority_t, priority_t> remap;
  priority_t next = 0;
  bool first = true;
  for (auto p : used) {
    if (first) {
      next = p % 2;
      first = false;
    } else if ((next % 2) != (p % 2)) {
      ++next;
    }
    remap[p] = next;
  }
  for (auto& p : dpa.priority) p = remap[p];
  return dpa;
}

bool isomorphic_by_index(Dpa const& a, Dpa const& b) {
  if (a.state_count != b.state_count || a.alphabet != b.alphabet || a.initial != b.initial)
    return false;
  if (a.delta != b.delta) return false;
  return normalize_priorities(a).priority == normalize_priorities(b).priority;
}

}  // namespace buchidet
