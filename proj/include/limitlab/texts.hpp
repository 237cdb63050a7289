#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "limitlab/core.hpp"
#include "limitlab/language.hpp"

namespace limitlab {

inline NatSet content(std::span<const Symbol> seq) {
  std::vector<Nat> xs;
  xs.reserve(seq.size());
  for (Symbol s : seq)
    if (!is_pause(s)) xs.push_back(static_cast<Nat>(s));
  return NatSet(std::move(xs));
}

inline Sequence prefix(const Sequence& seq, std::size_t n) {
  return Sequence(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(std::min(n, seq.size())));
}

inline bool is_prefix(const Sequence& a, const Sequence& b) {
  return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

inline Sequence concat(Sequence a, const Sequence& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// First occurrences of the numbers in order; pauses are dropped too.
inline Sequence dedup(const Sequence& seq) {
  Sequence out;
  for (Symbol s : seq) {
    if (is_pause(s)) continue;
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  }
  return out;
}

inline Sequence canonical_sequence(const NatSet& d) {
  Sequence out;
  out.reserve(d.size());
  for (Nat x : d) out.push_back(static_cast<Symbol>(x));
  return out;
}

// First n items of the canonical text: members ascending, then pauses
// once a finite language is exhausted.
inline Sequence canonical_text_prefix(const Language& lang, std::size_t n) {
  Sequence out = canonical_sequence(lang.smallest(n));
  out.resize(n, kPause);
  return out;
}

// Shortlex on sequences, pause below every number.
inline bool shortlex_less(const Sequence& a, const Sequence& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

inline std::vector<Symbol> symbols_of(const NatSet& alphabet, bool include_pause) {
  std::vector<Symbol> syms;
  if (include_pause) syms.push_back(kPause);
  for (Nat x : alphabet) syms.push_back(static_cast<Symbol>(x));
  return syms;
}

/// Visits every sequence over `symbols` with length in [min_len, max_len]
/// in shortlex order. `visit` returns true to stop early; the function
/// returns whether it stopped.
template <typename Visit>
bool for_each_sequence(const std::vector<Symbol>& symbols, std::size_t min_len, std::size_t max_len,
                       Visit&& visit) {
  std::vector<Symbol> sorted = symbols;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t len = min_len; len <= max_len; ++len) {
    if (len > 0 && sorted.empty()) break;
    std::vector<std::size_t> digits(len, 0);
    Sequence seq(len, len ? sorted[0] : kPause);
    while (true) {
      if (visit(static_cast<const Sequence&>(seq))) return true;
      bool carry = true;
      for (std::size_t pos = len; carry && pos > 0;) {
        --pos;
        if (++digits[pos] < sorted.size()) {
          seq[pos] = sorted[digits[pos]];
          carry = false;
        } else {
          digits[pos] = 0;
          seq[pos] = sorted[0];
        }
      }
      if (carry) break;
    }
  }
  return false;
}

// Every sequence over alphabet (plus pause) of length <= max_len, each once,
// in shortlex order.
inline std::vector<Sequence> all_sequences(const NatSet& alphabet, bool include_pause, std::size_t max_len) {
  std::vector<Sequence> out;
  for_each_sequence(symbols_of(alphabet, include_pause), 0, max_len, [&](const Sequence& s) {
    out.push_back(s);
    return false;
  });
  return out;
}

inline std::size_t count_sequences(std::size_t symbols, std::size_t max_len) {
  std::size_t total = 0, layer = 1;
  for (std::size_t i = 0; i <= max_len; ++i) {
    total += layer;
    layer *= symbols;
  }
  return total;
}

// Sq(A): all repetition-free, pause-free sequences over a finite set,
// including the empty one, in shortlex order.
inline std::vector<Sequence> repetition_free_sequences(const NatSet& a) {
  std::vector<Sequence> out{Sequence{}};
  std::vector<Sequence> frontier{Sequence{}};
  for (std::size_t len = 1; len <= a.size(); ++len) {
    std::vector<Sequence> next;
    for (const auto& s : frontier)
      for (Nat x : a) {
        auto sx = static_cast<Symbol>(x);
        if (std::find(s.begin(), s.end(), sx) != s.end()) continue;
        Sequence t = s;
        t.push_back(sx);
        next.push_back(std::move(t));
      }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

// All subsets of a finite set, by increasing size.
inline std::vector<NatSet> subsets_of(const NatSet& a) {
  if (a.size() > 20) throw std::length_error("subsets_of: set too large");
  std::vector<NatSet> out;
  const std::size_t n = a.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<Nat> xs;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) xs.push_back(a[i]);
    out.emplace_back(std::move(xs));
  }
  std::stable_sort(out.begin(), out.end(), [](const NatSet& x, const NatSet& y) { return x.size() < y.size(); });
  return out;
}

// All D with lo ⊆ D ⊆ hi.
inline std::vector<NatSet> sets_between(const NatSet& lo, const NatSet& hi) {
  std::vector<NatSet> out;
  if (!lo.is_subset_of(hi)) return out;
  for (auto& extra : subsets_of(hi.minus(lo))) out.push_back(lo.united(extra));
  return out;
}

}  // namespace limitlab
