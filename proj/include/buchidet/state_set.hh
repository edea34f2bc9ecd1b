#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

namespace buchidet {

using state_t = std::uint32_t;
using symbol_t = std::uint32_t;

/// Dense bit-vector over NBA state indices.
///
/// Sets compare equal independently of their word capacity, so sets created
/// for different universe sizes can still be mixed freely.
class StateSet {
 public:
  StateSet() = default;
  StateSet(std::initializer_list<state_t> states) {
    for (auto s : states) insert(s);
  }

  static StateSet full(std::size_t n) {
    StateSet r;
    for (std::size_t i = 0; i < n; ++i) r.insert(static_cast<state_t>(i));
    return r;
  }

  void insert(state_t s) {
    auto const w = s / 64;
    if (w >= words_.size()) words_.resize(w + 1, 0);
    words_[w] |= std::uint64_t{1} << (s % 64);
  }

  void erase(state_t s) {
    auto const w = s / 64;
    if (w < words_.size()) {
      words_[w] &= ~(std::uint64_t{1} << (s % 64));
      shrink();
    }
  }

  [[nodiscard]] bool contains(state_t s) const {
    auto const w = s / 64;
    return w < words_.size() && ((words_[w] >> (s % 64)) & 1U);
  }

  [[nodiscard]] bool empty() const { return words_.empty(); }

  [[nodiscard]] std::size_t size() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  void clear() { words_.clear(); }

  StateSet& operator|=(StateSet const& o) {
    if (o.words_.size() > words_.size()) words_.resize(o.words_.size(), 0);
    for (std::size_t i = 0; i < o.words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }

  StateSet& operator&=(StateSet const& o) {
    if (words_.size() > o.words_.size()) words_.resize(o.words_.size());
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    shrink();
    return *this;
  }

  /// Set difference.
  StateSet& operator-=(StateSet const& o) {
    auto const n = std::min(words_.size(), o.words_.size());
    for (std::size_t i = 0; i < n; ++i) words_[i] &= ~o.words_[i];
    shrink();
    return *this;
  }

  friend StateSet operator|(StateSet a, StateSet const& b) { return a |= b; }
  friend StateSet operator&(StateSet a, StateSet const& b) { return a &= b; }
  friend StateSet operator-(StateSet a, StateSet const& b) { return a -= b; }

  [[nodiscard]] bool intersects(StateSet const& o) const {
    auto const n = std::min(words_.size(), o.words_.size());
    for (std::size_t i = 0; i < n; ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  [[nodiscard]] bool subset_of(StateSet const& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      auto const ow = i < o.words_.size() ? o.words_[i] : 0;
      if (words_[i] & ~ow) return false;
    }
    return true;
  }

  /// Smallest element; only valid on nonempty sets.
  [[nodiscard]] state_t min() const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i])
        return static_cast<state_t>(i * 64 + static_cast<std::size_t>(std::countr_zero(words_[i])));
    return 0;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      auto w = words_[i];
      while (w) {
        auto const b = static_cast<std::size_t>(std::countr_zero(w));
        f(static_cast<state_t>(i * 64 + b));
        w &= w - 1;
      }
    }
  }

  [[nodiscard]] std::vector<state_t> to_vector() const {
    std::vector<state_t> r;
    for_each([&](state_t s) { r.push_back(s); });
    return r;
  }

  [[nodiscard]] std::size_t hash() const {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (auto w : words_) h = (h ^ std::hash<std::uint64_t>{}(w)) * 0x100000001b3ULL + (h >> 7);
    return h;
  }

  friend bool operator==(StateSet const&, StateSet const&) = default;
  friend auto operator<=>(StateSet const& a, StateSet const& b) {
    // compares as sorted element sequences, so ordering is by smallest element first
    return a.to_vector() <=> b.to_vector();
  }

  [[nodiscard]] std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for_each([&](state_t q) {
      if (!first) s += ",";
      s += std::to_string(q);
      first = false;
    });
    return s + "}";
  }

 private:
  void shrink() {
    while (!words_.empty() && words_.back() == 0) words_.pop_back();
  }

  std::vector<std::uint64_t> words_;
};

struct StateSetHash {
  std::size_t operator()(StateSet const& s) const { return s.hash(); }
};

inline void hash_combine(std::size_t& seed, std::size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

}  // namespace buchidet
