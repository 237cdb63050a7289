#pragma once

#include <cmath>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "limitlab/core.hpp"
#include "limitlab/language.hpp"

namespace limitlab {

/// Handle of a hypothesis in a Registry. Only the registry issues these.
struct Index {
  std::uint32_t id = 0;
  friend auto operator<=>(const Index&, const Index&) = default;
};

struct BaseKind {
  std::string family;
  std::size_t member = 0;
};
struct IndKind {
  NatSet set;
};
struct PadKind {
  Index inner;
  Nat tag = 0;
};
struct ConstructedKind {
  std::string transform;
  std::string arguments;
};
using IndexKind = std::variant<BaseKind, IndKind, PadKind, ConstructedKind>;

class KindError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Step-bounded semantics t -> W^t of one index.
///
/// Implementations must be monotone in t and deterministic. `saturation`
/// returns a step s <= budget such that at(s') == at(s) for every s' >= s,
/// or nothing when no such step can be certified within the budget.
class EnumerationProcedure {
 public:
  virtual ~EnumerationProcedure() = default;
  virtual NatSet at(Nat t) const = 0;
  virtual std::optional<Nat> saturation(Nat budget) const = 0;
};

/// Enumerator given by a plain function plus an optional declared
/// saturation step.
class FunctionEnumerator final : public EnumerationProcedure {
 public:
  FunctionEnumerator(std::function<NatSet(Nat)> eval, std::optional<Nat> saturation)
      : eval_(std::move(eval)), saturation_(saturation) {}

  NatSet at(Nat t) const override {
    if (saturation_ && t > *saturation_) t = *saturation_;
    return eval_(t);
  }
  std::optional<Nat> saturation(Nat budget) const override {
    if (saturation_ && *saturation_ <= budget) return saturation_;
    return std::nullopt;
  }

 private:
  std::function<NatSet(Nat)> eval_;
  std::optional<Nat> saturation_;
};

/// Member of a registered family.
struct MemberSpec {
  std::function<NatSet(Nat)> eval;
  std::optional<Nat> saturation;
  std::function<bool(Nat)> membership;  // optional
  std::string description;
};

enum class Speed { instant, stepwise };

// Enumerator for a language: `instant` lists a finite language at step 0,
// `stepwise` adds one element per step (W^t holds the t+1 smallest).
inline MemberSpec member_for(const Language& lang, Speed speed) {
  MemberSpec m;
  m.description = lang.name();
  m.membership = [lang](Nat x) { return lang.contains(x); };
  if (speed == Speed::instant) {
    if (!lang.is_finite())
      throw std::invalid_argument("instant enumeration needs a finite language: " + lang.name());
    NatSet all = lang.elements();
    m.eval = [all](Nat) { return all; };
    m.saturation = 0;
    return m;
  }
  m.eval = [lang](Nat t) { return lang.smallest(static_cast<std::size_t>(t) + 1); };
  if (lang.is_finite()) m.saturation = lang.elements().empty() ? 0 : lang.elements().size() - 1;
  return m;
}

/// Emulated effective numbering: an append-only table of indices, each
/// backed by a monotone, deterministic, step-bounded enumerator.
///
/// Safe for concurrent enumeration and registration; enumerators are called
/// without holding the table lock, so they may register further indices.
class Registry {
 public:
  struct Window {
    NatSet elements;
    bool saturated = false;
  };

  Registry() = default;
  Registry(const Registry&) = delete;
  Registry& operator=(const Registry&) = delete;

  std::vector<Index> register_family(const std::string& name, std::vector<MemberSpec> members) {
    for (std::size_t i = 0; i < members.size(); ++i) check_monotone(name, i, members[i]);
    std::unique_lock lock(mutex_);
    auto& ids = families_[name];
    std::vector<Index> issued;
    for (auto& m : members) {
      auto entry = std::make_unique<Entry>();
      entry->kind = BaseKind{name, ids.size()};
      entry->description = m.description.empty()
                               ? name + "[" + std::to_string(ids.size()) + "]"
                               : m.description;
      entry->membership = m.membership;
      entry->procedure = std::make_shared<FunctionEnumerator>(std::move(m.eval), m.saturation);
      Index idx = push(std::move(entry));
      ids.push_back(idx);
      issued.push_back(idx);
    }
    return issued;
  }

  const std::vector<Index>& family(const std::string& name) const {
    std::shared_lock lock(mutex_);
    auto it = families_.find(name);
    if (it == families_.end()) throw std::out_of_range("unknown family " + name);
    return it->second;
  }

  bool has_family(const std::string& name) const {
    std::shared_lock lock(mutex_);
    return families_.contains(name);
  }

  // Index for a finite set; saturates at step 0 and is idempotent.
  Index ind(const NatSet& d) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = ind_ids_.find(d); it != ind_ids_.end()) return it->second;
    }
    std::unique_lock lock(mutex_);
    if (auto it = ind_ids_.find(d); it != ind_ids_.end()) return it->second;
    auto entry = std::make_unique<Entry>();
    entry->kind = IndKind{d};
    entry->description = "ind" + d.to_string();
    entry->procedure = std::make_shared<FunctionEnumerator>([d](Nat) { return d; }, Nat{0});
    Index idx = push(std::move(entry));
    ind_ids_.emplace(d, idx);
    return idx;
  }

  Index pad(Index e, Nat k) {
    auto inner = entry(e);
    const auto key = std::make_pair(e.id, k);
    {
      std::shared_lock lock(mutex_);
      if (auto it = pad_ids_.find(key); it != pad_ids_.end()) return it->second;
    }
    std::unique_lock lock(mutex_);
    if (auto it = pad_ids_.find(key); it != pad_ids_.end()) return it->second;
    auto padded = std::make_unique<Entry>();
    padded->kind = PadKind{e, k};
    padded->description = "pad(" + inner->description + "," + std::to_string(k) + ")";
    padded->membership = inner->membership;
    padded->procedure = inner->procedure;
    padded->cacheable = inner->cacheable;
    Index idx = push(std::move(padded));
    pad_ids_.emplace(key, idx);
    return idx;
  }

  Index unpad1(Index e) const { return pad_kind(e).inner; }
  Nat unpad2(Index e) const { return pad_kind(e).tag; }

  // Registers (or returns the existing) index for a transform's hypothesis.
  // `make` runs only for a new (transform, arguments) key.
  template <typename Make>
  Index constructed(const std::string& transform, const std::string& arguments, Make&& make) {
    const std::string key = transform + '\x1f' + arguments;
    {
      std::shared_lock lock(mutex_);
      if (auto it = constructed_ids_.find(key); it != constructed_ids_.end()) return it->second;
    }
    std::shared_ptr<const EnumerationProcedure> proc = make();
    std::unique_lock lock(mutex_);
    if (auto it = constructed_ids_.find(key); it != constructed_ids_.end()) return it->second;
    auto entry = std::make_unique<Entry>();
    entry->kind = ConstructedKind{transform, arguments};
    entry->description = transform + "<" + arguments + ">";
    entry->procedure = std::move(proc);
    entry->cacheable = true;
    Index idx = push(std::move(entry));
    constructed_ids_.emplace(key, idx);
    return idx;
  }

  NatSet enumerate(Index e, Nat t) const { return window(e, t).elements; }

  std::optional<Nat> saturation(Index e, Nat budget) const {
    return entry(e)->procedure->saturation(budget);
  }

  // W_e^budget together with whether it is certified final.
  Window window(Index e, Nat budget) const {
    const Entry* en = entry(e);
    auto sat = en->procedure->saturation(budget);
    const Nat t = sat ? *sat : budget;
    if (!en->cacheable) return {en->procedure->at(t), sat.has_value()};
    {
      std::lock_guard lock(en->cache_mutex);
      if (auto it = en->cache.find(t); it != en->cache.end()) return {it->second, sat.has_value()};
    }
    NatSet value = en->procedure->at(t);
    std::lock_guard lock(en->cache_mutex);
    en->cache.emplace(t, value);
    return {std::move(value), sat.has_value()};
  }

  const IndexKind& kind(Index e) const { return entry(e)->kind; }
  const std::string& describe(Index e) const { return entry(e)->description; }

  // Intensional membership test of a Base index, when one was registered.
  const std::function<bool(Nat)>& membership(Index e) const { return entry(e)->membership; }

  // Nonzero code for an arbitrary key; stable within a run.
  Nat code_of(const std::string& key) {
    std::unique_lock lock(mutex_);
    auto [it, inserted] = codes_.try_emplace(key, codes_.size() + 1);
    return it->second;
  }

  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return entries_.size();
  }

  bool contains(Index e) const {
    std::shared_lock lock(mutex_);
    return e.id < entries_.size();
  }

  // --- budgeted semantic queries -------------------------------------------

  Truth member(Nat x, Index e, Nat budget) const {
    auto w = window(e, budget);
    if (w.elements.contains(x)) return Truth::yes;
    return w.saturated ? Truth::no : Truth::unknown;
  }

  Truth includes(Index e, const NatSet& d, Nat budget) const {
    auto w = window(e, budget);
    if (d.is_subset_of(w.elements)) return Truth::yes;
    return w.saturated ? Truth::no : Truth::unknown;
  }

  // W_a ⊆ W_b
  Truth subset(Index a, Index b, Nat budget) const {
    if (a == b) return Truth::yes;
    auto wa = window(a, budget);
    auto wb = window(b, budget);
    if (!wa.elements.is_subset_of(wb.elements)) return wb.saturated ? Truth::no : Truth::unknown;
    return wa.saturated ? Truth::yes : Truth::unknown;
  }

  Truth equal(Index a, Index b, Nat budget) const {
    if (a == b) return Truth::yes;
    return subset(a, b, budget) && subset(b, a, budget);
  }

 private:
  struct Entry {
    IndexKind kind;
    std::string description;
    std::function<bool(Nat)> membership;
    std::shared_ptr<const EnumerationProcedure> procedure;
    bool cacheable = false;
    mutable std::mutex cache_mutex;
    mutable std::unordered_map<Nat, NatSet> cache;
  };

  struct PairHash {
    std::size_t operator()(const std::pair<std::uint32_t, Nat>& p) const {
      return hash_combine(std::hash<std::uint32_t>{}(p.first), std::hash<Nat>{}(p.second));
    }
  };

  Index push(std::unique_ptr<Entry> e) {
    entries_.push_back(std::move(e));
    return Index{static_cast<std::uint32_t>(entries_.size() - 1)};
  }

  const Entry* entry(Index e) const {
    std::shared_lock lock(mutex_);
    if (e.id >= entries_.size()) throw std::out_of_range("unregistered index " + std::to_string(e.id));
    return entries_[e.id].get();
  }

  const PadKind& pad_kind(Index e) const {
    const auto* p = std::get_if<PadKind>(&entry(e)->kind);
    if (!p) throw KindError("index " + std::to_string(e.id) + " is not a padded index");
    return *p;
  }

  static void check_monotone(const std::string& family, std::size_t i, const MemberSpec& m) {
    if (!m.eval) throw std::invalid_argument(family + ": member without enumerator");
    static constexpr Nat probes[] = {0, 1, 2, 4, 8};
    NatSet prev = m.eval(probes[0]);
    for (std::size_t k = 1; k < std::size(probes); ++k) {
      NatSet cur = m.eval(probes[k]);
      if (!prev.is_subset_of(cur))
        throw std::invalid_argument(family + "[" + std::to_string(i) + "]: enumerator not monotone between steps " +
                                    std::to_string(probes[k - 1]) + " and " + std::to_string(probes[k]));
      prev = std::move(cur);
    }
    if (m.saturation && m.eval(*m.saturation) != m.eval(*m.saturation + 8))
      throw std::invalid_argument(family + "[" + std::to_string(i) + "]: enumerator grows after its declared saturation");
  }

  mutable std::shared_mutex mutex_;
  std::deque<std::unique_ptr<Entry>> entries_;
  std::map<std::string, std::vector<Index>> families_;
  std::unordered_map<NatSet, Index, NatSetHash> ind_ids_;
  std::unordered_map<std::pair<std::uint32_t, Nat>, Index, PairHash> pad_ids_;
  std::unordered_map<std::string, Index> constructed_ids_;
  std::unordered_map<std::string, Nat> codes_;
};

// Cantor pairing <x,y> = (x+y)(x+y+1)/2 + y.
constexpr Nat pair(Nat x, Nat y) { return (x + y) * (x + y + 1) / 2 + y; }

namespace detail {
inline Nat triangular_root(Nat z) {
  // largest w with w(w+1)/2 <= z
  auto w = static_cast<Nat>((std::sqrt(8.0L * static_cast<long double>(z) + 1.0L) - 1.0L) / 2.0L);
  while (w * (w + 1) / 2 > z) --w;
  while ((w + 1) * (w + 2) / 2 <= z) ++w;
  return w;
}
}  // namespace detail

inline Nat proj2(Nat z) {
  const Nat w = detail::triangular_root(z);
  return z - w * (w + 1) / 2;
}
inline Nat proj1(Nat z) { return detail::triangular_root(z) - proj2(z); }

}  // namespace limitlab
