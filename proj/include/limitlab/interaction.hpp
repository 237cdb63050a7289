#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "limitlab/core.hpp"
#include "limitlab/language.hpp"
#include "limitlab/numbering.hpp"
#include "limitlab/texts.hpp"
#include "limitlab/verdict.hpp"

namespace limitlab {

/// Interaction operator: what a learner gets to see of a text prefix.
enum class Operator { gold, partial_set, set };

inline const char* to_string(Operator op) {
  switch (op) {
    case Operator::gold: return "G";
    case Operator::partial_set: return "Psd";
    default: return "Sd";
  }
}

struct GoldInfo {
  Sequence seq;
  friend bool operator==(const GoldInfo&, const GoldInfo&) = default;
};
struct PsdInfo {
  NatSet content;
  Nat count = 0;
  friend bool operator==(const PsdInfo&, const PsdInfo&) = default;
};
struct SdInfo {
  NatSet content;
  friend bool operator==(const SdInfo&, const SdInfo&) = default;
};

// The learner-visible digest of a sequence (β(σ)).
using Digest = std::variant<GoldInfo, PsdInfo, SdInfo>;

inline Operator operator_of(const Digest& d) { return static_cast<Operator>(d.index()); }

inline Digest digest(Operator op, const Sequence& seq) {
  switch (op) {
    case Operator::gold: return GoldInfo{seq};
    case Operator::partial_set: return PsdInfo{content(seq), seq.size()};
    default: return SdInfo{content(seq)};
  }
}

inline std::string to_string(const Digest& d) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, GoldInfo>) return to_string(x.seq);
        else if constexpr (std::is_same_v<T, PsdInfo>) return "(" + x.content.to_string() + "," + std::to_string(x.count) + ")";
        else return x.content.to_string();
      },
      d);
}

struct DigestHash {
  std::size_t operator()(const Digest& d) const {
    std::size_t h = d.index();
    std::visit(
        [&h](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, GoldInfo>) h = hash_combine(h, SequenceHash{}(x.seq));
          else if constexpr (std::is_same_v<T, PsdInfo>) h = hash_combine(hash_combine(h, NatSetHash{}(x.content)), x.count);
          else h = hash_combine(h, NatSetHash{}(x.content));
        },
        d);
    return h;
  }
};

// A digest can arise from some sequence (Psd needs count >= |content|).
inline bool realizable(const Digest& d) {
  if (const auto* p = std::get_if<PsdInfo>(&d)) return p->count >= p->content.size();
  return true;
}

/// a ⪯ b: some extension of a sequence with digest a has digest b.
inline bool beta_leq(const Digest& a, const Digest& b) {
  if (a.index() != b.index()) throw std::invalid_argument("beta_leq: operator mismatch");
  if (const auto* ga = std::get_if<GoldInfo>(&a)) return is_prefix(ga->seq, std::get<GoldInfo>(b).seq);
  if (const auto* pa = std::get_if<PsdInfo>(&a)) {
    const auto& pb = std::get<PsdInfo>(b);
    if (!pa->content.is_subset_of(pb.content) || pa->count > pb.count) return false;
    return pb.content.size() - pa->content.size() <= pb.count - pa->count;
  }
  return std::get<SdInfo>(a).content.is_subset_of(std::get<SdInfo>(b).content);
}

// Every realizable digest a with a ⪯ b.
inline std::vector<Digest> digests_below(const Digest& b) {
  std::vector<Digest> out;
  if (const auto* g = std::get_if<GoldInfo>(&b)) {
    for (std::size_t i = 0; i <= g->seq.size(); ++i) out.push_back(GoldInfo{prefix(g->seq, i)});
  } else if (const auto* p = std::get_if<PsdInfo>(&b)) {
    for (const auto& d : subsets_of(p->content)) {
      const Nat missing = p->content.size() - d.size();
      for (Nat t = d.size(); t <= p->count; ++t)
        if (missing <= p->count - t) out.push_back(PsdInfo{d, t});
    }
  } else {
    for (const auto& d : subsets_of(std::get<SdInfo>(b).content)) out.push_back(SdInfo{d});
  }
  return out;
}

// The shortlex-least sequence with the given digest; pauses sort first.
inline Sequence least_realization(const Digest& d) {
  if (const auto* g = std::get_if<GoldInfo>(&d)) return g->seq;
  if (const auto* p = std::get_if<PsdInfo>(&d)) {
    Sequence s(p->count - p->content.size(), kPause);
    for (Nat x : p->content) s.push_back(static_cast<Symbol>(x));
    return s;
  }
  return canonical_sequence(std::get<SdInfo>(d).content);
}

inline bool digest_order_less(const Digest& a, const Digest& b) {
  return shortlex_less(least_realization(a), least_realization(b));
}

/// Defined(Index) or Undefined (nullopt).
using Hypothesis = std::optional<Index>;

inline std::string to_string(const Hypothesis& h) {
  return h ? "e" + std::to_string(h->id) : std::string("undefined");
}

// Properties a learner is declared to have; transforms check for them.
enum class Property {
  target_cautious,
  consistent,
  semantically_conservative,
  globally_consistent,
  globally_semantically_conservative,
};

inline const char* to_string(Property p) {
  switch (p) {
    case Property::target_cautious: return "target-cautious";
    case Property::consistent: return "consistent";
    case Property::semantically_conservative: return "semantically-conservative";
    case Property::globally_consistent: return "globally-consistent";
    default: return "globally-semantically-conservative";
  }
}

struct LearnerTraits {
  bool total = false;
  // Output depends only on the content of the digest (Psd count ignored).
  bool content_only = false;
  std::set<Property> declared;
};

/// A learner: a deterministic map from digests of one operator to
/// hypotheses. Copies share one memo table; evaluation is thread-safe.
class Learner {
 public:
  using Fn = std::function<Hypothesis(const Digest&)>;

  Learner(std::string name, Operator op, Fn fn, LearnerTraits traits = {})
      : impl_(std::make_shared<Impl>(std::move(name), op, std::move(fn), std::move(traits))) {}

  const std::string& name() const { return impl_->name; }
  Operator op() const { return impl_->op; }
  const LearnerTraits& traits() const { return impl_->traits; }
  bool declares(Property p) const { return impl_->traits.declared.contains(p); }

  Hypothesis operator()(const Digest& d) const {
    if (operator_of(d) != impl_->op)
      throw std::invalid_argument(impl_->name + " expects " + to_string(impl_->op) + " digests");
    {
      std::lock_guard lock(impl_->memo_mutex);
      if (auto it = impl_->memo.find(d); it != impl_->memo.end()) return it->second;
    }
    Hypothesis h = impl_->fn(d);
    if (!h && impl_->traits.total)
      throw std::logic_error(impl_->name + " is tagged total but is undefined on " + to_string(d));
    std::lock_guard lock(impl_->memo_mutex);
    impl_->memo.emplace(d, h);
    return h;
  }

  Hypothesis on(const Sequence& seq) const { return (*this)(digest(impl_->op, seq)); }
  Hypothesis gold(const Sequence& seq) const { return (*this)(GoldInfo{seq}); }
  Hypothesis psd(const NatSet& d, Nat count) const { return (*this)(PsdInfo{d, count}); }
  Hypothesis sd(const NatSet& d) const { return (*this)(SdInfo{d}); }

  // Same behavior with additional declared properties.
  Learner declaring(std::initializer_list<Property> props) const {
    LearnerTraits t = impl_->traits;
    t.declared.insert(props.begin(), props.end());
    Learner copy = *this;
    copy.impl_ = std::make_shared<Impl>(impl_->name, impl_->op, impl_->fn, std::move(t));
    return copy;
  }

 private:
  struct Impl {
    Impl(std::string n, Operator o, Fn f, LearnerTraits t)
        : name(std::move(n)), op(o), fn(std::move(f)), traits(std::move(t)) {}
    std::string name;
    Operator op;
    Fn fn;
    LearnerTraits traits;
    std::mutex memo_mutex;
    std::unordered_map<Digest, Hypothesis, DigestHash> memo;
  };
  std::shared_ptr<Impl> impl_;
};

/// Learner outputs on every prefix of a text prefix: entry i = h(β(σ[i])).
using LearningSequence = std::vector<Hypothesis>;

inline LearningSequence run(const Learner& h, const Sequence& seq) {
  LearningSequence p;
  p.reserve(seq.size() + 1);
  for (std::size_t i = 0; i <= seq.size(); ++i) p.push_back(h.on(prefix(seq, i)));
  return p;
}

// Whether W_e = L, decided within the budget.
inline Truth denotes(const Registry& reg, Index e, const Language& lang, Nat budget) {
  auto w = reg.window(e, budget);
  for (Nat x : w.elements)
    if (!lang.contains(x)) return Truth::no;
  if (lang.is_finite()) {
    if (!lang.elements().is_subset_of(w.elements)) return w.saturated ? Truth::no : Truth::unknown;
    return w.saturated ? Truth::yes : Truth::unknown;
  }
  return w.saturated ? Truth::no : Truth::unknown;
}

/// Checks whether `info` is a (Bc-)locking information of h on L, probing
/// all extensions by at most `probe_len` further items drawn from L.
/// Holds therefore means "locking up to the probe length".
inline Verdict is_locking(const Registry& reg, const Learner& h, const Digest& info, const Language& lang,
                          std::size_t probe_len, Nat budget, bool bc_only = false) {
  const NatSet window = lang.is_finite() ? lang.elements() : lang.smallest(std::max<std::size_t>(probe_len, 1));
  const Hypothesis base = h(info);

  auto info_content = [](const Digest& d) -> NatSet {
    if (const auto* g = std::get_if<GoldInfo>(&d)) return content(g->seq);
    if (const auto* p = std::get_if<PsdInfo>(&d)) return p->content;
    return std::get<SdInfo>(d).content;
  };
  for (Nat x : info_content(info))
    if (!lang.contains(x)) return Verdict::violated({.datum = x, .detail = "information is not drawn from " + lang.name()});

  VerdictAccumulator acc;
  std::unordered_map<std::uint32_t, Truth> correct;
  auto probe = [&](const Digest& ext) {
    const Hypothesis out = h(ext);
    if (!out) {
      acc.add(Verdict::violated({.detail = "undefined on extension " + to_string(ext)}));
      return acc.violated();
    }
    if (!bc_only && out != base) {
      acc.add(Verdict::violated({.detail = "hypothesis changes on extension " + to_string(ext)}));
      return true;
    }
    auto [it, fresh] = correct.try_emplace(out->id, Truth::unknown);
    if (fresh) it->second = denotes(reg, *out, lang, budget);
    if (it->second == Truth::no) {
      acc.add(Verdict::violated({.detail = "extension " + to_string(ext) + " conjectures a wrong language"}));
      return true;
    }
    if (it->second == Truth::unknown)
      acc.add(Verdict::inconclusive("cannot decide W = " + lang.name() + " within budget"));
    return false;
  };

  if (const auto* g = std::get_if<GoldInfo>(&info)) {
    for_each_sequence(symbols_of(window, true), 0, probe_len,
                      [&](const Sequence& tau) { return probe(GoldInfo{concat(g->seq, tau)}); });
  } else if (const auto* p = std::get_if<PsdInfo>(&info)) {
    for (const auto& d : sets_between(p->content, p->content.united(window))) {
      for (Nat t = p->count; t <= p->count + probe_len; ++t) {
        PsdInfo ext{d, t};
        if (!beta_leq(info, ext)) continue;
        if (probe(ext)) return acc.take();
      }
    }
  } else {
    const auto& d0 = std::get<SdInfo>(info).content;
    for (const auto& d : sets_between(d0, d0.united(window))) {
      if (d.size() - d0.size() > probe_len) continue;
      if (probe(SdInfo{d})) return acc.take();
    }
  }
  return acc.take();
}

}  // namespace limitlab
