#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

namespace limitlab {

using Nat = std::uint64_t;

// A text item: a natural number or the pause symbol. Pause sorts below
// every number, which fixes the shortlex order used by all searches.
using Symbol = std::int64_t;
inline constexpr Symbol kPause = -1;

inline bool is_pause(Symbol s) { return s == kPause; }

using Sequence = std::vector<Symbol>;

inline std::string symbol_to_string(Symbol s) {
  return is_pause(s) ? std::string("#") : std::to_string(s);
}

inline std::string to_string(const Sequence& seq) {
  std::string out = "(";
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) out += ',';
    out += symbol_to_string(seq[i]);
  }
  return out + ")";
}

/// Finite set of naturals stored as a sorted, duplicate-free vector.
class NatSet {
 public:
  NatSet() = default;
  NatSet(std::initializer_list<Nat> xs) : items_(xs) { normalize(); }
  explicit NatSet(std::vector<Nat> xs) : items_(std::move(xs)) { normalize(); }

  static NatSet range(Nat lo, Nat hi_inclusive) {
    NatSet s;
    for (Nat x = lo; x <= hi_inclusive; ++x) s.items_.push_back(x);
    return s;
  }

  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }
  const std::vector<Nat>& values() const { return items_; }
  Nat max() const { return items_.back(); }
  Nat operator[](std::size_t i) const { return items_[i]; }

  bool contains(Nat x) const { return std::binary_search(items_.begin(), items_.end(), x); }

  void insert(Nat x) {
    auto it = std::lower_bound(items_.begin(), items_.end(), x);
    if (it == items_.end() || *it != x) items_.insert(it, x);
  }

  void insert_all(const NatSet& other) {
    if (other.empty()) return;
    std::vector<Nat> merged;
    merged.reserve(items_.size() + other.items_.size());
    std::set_union(items_.begin(), items_.end(), other.items_.begin(), other.items_.end(),
                   std::back_inserter(merged));
    items_ = std::move(merged);
  }

  bool is_subset_of(const NatSet& other) const {
    return std::includes(other.items_.begin(), other.items_.end(), items_.begin(), items_.end());
  }
  bool is_proper_subset_of(const NatSet& other) const {
    return size() < other.size() && is_subset_of(other);
  }

  NatSet united(const NatSet& other) const {
    NatSet r = *this;
    r.insert_all(other);
    return r;
  }
  NatSet minus(const NatSet& other) const {
    NatSet r;
    std::set_difference(items_.begin(), items_.end(), other.items_.begin(), other.items_.end(),
                        std::back_inserter(r.items_));
    return r;
  }
  NatSet intersected(const NatSet& other) const {
    NatSet r;
    std::set_intersection(items_.begin(), items_.end(), other.items_.begin(), other.items_.end(),
                          std::back_inserter(r.items_));
    return r;
  }

  // Elements strictly above `bound`; an empty optional bound stands for
  // max(∅) = -infinity and keeps everything.
  NatSet above(std::optional<Nat> bound) const {
    if (!bound) return *this;
    NatSet r;
    r.items_.assign(std::upper_bound(items_.begin(), items_.end(), *bound), items_.end());
    return r;
  }
  NatSet below(Nat bound) const {
    NatSet r;
    r.items_.assign(items_.begin(), std::lower_bound(items_.begin(), items_.end(), bound));
    return r;
  }

  // The k smallest elements; the whole set when k exceeds the size.
  NatSet first(std::size_t k) const {
    NatSet r;
    r.items_.assign(items_.begin(), items_.begin() + static_cast<std::ptrdiff_t>(std::min(k, size())));
    return r;
  }

  std::optional<Nat> max_or_none() const {
    if (empty()) return std::nullopt;
    return items_.back();
  }

  friend bool operator==(const NatSet&, const NatSet&) = default;
  friend auto operator<=>(const NatSet& a, const NatSet& b) { return a.items_ <=> b.items_; }

  std::string to_string() const {
    std::string out = "{";
    for (std::size_t i = 0; i < items_.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(items_[i]);
    }
    return out + "}";
  }

 private:
  void normalize() {
    std::sort(items_.begin(), items_.end());
    items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
  }

  std::vector<Nat> items_;
};

inline std::size_t hash_combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

struct NatSetHash {
  std::size_t operator()(const NatSet& s) const {
    std::size_t h = s.size();
    for (Nat x : s) h = hash_combine(h, std::hash<Nat>{}(x));
    return h;
  }
};

struct SequenceHash {
  std::size_t operator()(const Sequence& s) const {
    std::size_t h = s.size();
    for (Symbol x : s) h = hash_combine(h, std::hash<Symbol>{}(x));
    return h;
  }
};

/// Three-valued answer to a budgeted semantic question.
enum class Truth { no, yes, unknown };

inline Truth truth_of(bool b) { return b ? Truth::yes : Truth::no; }

inline Truth operator!(Truth t) {
  switch (t) {
    case Truth::no: return Truth::yes;
    case Truth::yes: return Truth::no;
    default: return Truth::unknown;
  }
}

inline Truth operator&&(Truth a, Truth b) {
  if (a == Truth::no || b == Truth::no) return Truth::no;
  if (a == Truth::yes && b == Truth::yes) return Truth::yes;
  return Truth::unknown;
}

inline Truth operator||(Truth a, Truth b) {
  if (a == Truth::yes || b == Truth::yes) return Truth::yes;
  if (a == Truth::no && b == Truth::no) return Truth::no;
  return Truth::unknown;
}

}  // namespace limitlab
