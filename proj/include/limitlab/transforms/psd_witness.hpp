#pragma once

#include <memory>

#include "limitlab/transforms/common.hpp"

namespace limitlab {

/// ĥ(D,t) = h(D,2t).
inline Learner psd_strongly_locking(const Learner& h) {
  if (h.op() != Operator::partial_set) throw PreconditionError("strongly-locking expects a Psd learner");
  auto fn = [h](const Digest& d) -> Hypothesis {
    const auto& info = std::get<PsdInfo>(d);
    return h.psd(info.content, 2 * info.count);
  };
  return Learner("strongly-locking(" + h.name() + ")", Operator::partial_set, fn,
                 detail::derived_traits(h, h.traits().content_only, h.traits().declared));
}

/// Whether h changes its mind somewhere between (D,|D|) and (D',t'): some
/// (D'',t'') with D ⊆ D'' ⊆ D' and |D''| ≤ t'' ≤ t' has a different
/// (or undefined) hypothesis. Throws UndefinedValue if h(D,|D|) is.
inline bool refuted(const Learner& h, const NatSet& d, const NatSet& d2, Nat t2) {
  const Index base = detail::need(h.psd(d, d.size()));
  for (const auto& mid : sets_between(d, d2))
    for (Nat t = mid.size(); t <= t2; ++t)
      if (h.psd(mid, t) != base) return true;
  return false;
}

namespace detail {

// ⋃_{s ≤ last} W^s_{h(D,|D|)}, cut off at the first s whose enumeration
// reveals a mind change (refuted is monotone, so later s add nothing).
inline NatSet poisoned_union(const Registry& reg, const Learner& h, const NatSet& d, std::int64_t last) {
  NatSet out;
  if (last < 0) return out;
  const Index guess = need(h.psd(d, d.size()));
  Nat stop = static_cast<Nat>(last);
  if (auto sat = reg.saturation(guess, stop)) stop = *sat;
  for (Nat s = 0; s <= stop; ++s) {
    NatSet w = reg.enumerate(guess, s);
    if (refuted(h, d, d.united(w), d.size() + s + 1)) break;
    out = std::move(w);
  }
  return out;
}

class PoisonedHypothesis final : public EnumerationProcedure {
 public:
  PoisonedHypothesis(const Registry& reg, Learner h, NatSet d, Index guess)
      : reg_(reg), h_(std::move(h)), d_(std::move(d)), guess_(guess) {}

  NatSet at(Nat t) const override {
    try {
      return poisoned_union(reg_, h_, d_, static_cast<std::int64_t>(t));
    } catch (const UndefinedValue&) {
      return {};
    }
  }
  std::optional<Nat> saturation(Nat budget) const override { return reg_.saturation(guess_, budget); }

 private:
  const Registry& reg_;
  Learner h_;
  NatSet d_;
  Index guess_;
};

class CutHypothesis final : public EnumerationProcedure {
 public:
  CutHypothesis(const Registry& reg, Index inner, NatSet d) : reg_(reg), inner_(inner), d_(std::move(d)) {}

  NatSet at(Nat t) const override { return reg_.enumerate(inner_, t).above(d_.max_or_none()).united(d_); }
  std::optional<Nat> saturation(Nat budget) const override { return reg_.saturation(inner_, budget); }

 private:
  const Registry& reg_;
  Index inner_;
  NatSet d_;
};

}  // namespace detail

/// c(e,D): D together with the elements of W_e above max(D).
inline Index cut_index(Registry& reg, Index e, const NatSet& d) {
  return reg.constructed("cut", std::to_string(e.id) + "|" + d.to_string(),
                         [&] { return std::make_shared<detail::CutHypothesis>(reg, e, d); });
}

/// p(D): W_{h(D,|D|)} until a mind change of h becomes visible.
inline Index poisoned_index(Registry& reg, const Learner& h, const NatSet& d) {
  const Index guess = detail::need(h.psd(d, d.size()));
  return reg.constructed("poisoned|" + h.name(), d.to_string(),
                         [&] { return std::make_shared<detail::PoisonedHypothesis>(reg, h, d, guess); });
}

/// q(D) = c(p(D), D).
inline Index q_index(Registry& reg, const Learner& h, const NatSet& d) {
  return cut_index(reg, poisoned_index(reg, h, d), d);
}

/// Decides D' ⊆ W_{q(D)} for D'[|D|] = D and refuted(D, D', t').
inline bool subset_of_q(const Registry& reg, const Learner& h, const NatSet& d, const NatSet& d2, Nat t2) {
  const auto last = static_cast<std::int64_t>(t2) - static_cast<std::int64_t>(d.size()) - 1;
  const NatSet reach = detail::poisoned_union(reg, h, d, last).above(d.max_or_none()).united(d);
  return d2.is_subset_of(reach);
}

/// Witness-based Psd learner built from a target-cautious one: simulates
/// the strongly locking variant of h on ascending text, delays until
/// refutation and until consistency, and poisons refuted hypotheses.
inline Learner psd_witness(Registry& reg, const Learner& source) {
  detail::require(source, Operator::partial_set, {Property::target_cautious}, "psd-witness");
  const Learner h = psd_strongly_locking(source);

  auto fn = [&reg, h](const Digest& digest) -> Hypothesis {
    return detail::undefined_on_gap([&]() -> Hypothesis {
      const auto& info = std::get<PsdInfo>(digest);
      const NatSet& d = info.content;
      const Nat t = info.count;
      const std::size_t size = d.size();
      auto head = [&d](std::size_t k) { return d.first(k); };

      for (std::size_t k = 0; k < size; ++k)
        if (refuted(h, head(k), d, t) && subset_of_q(reg, h, head(k), d, t)) return q_index(reg, h, head(k));

      std::size_t k0 = size + 1;
      for (std::size_t k = 0; k <= size; ++k)
        if (!refuted(h, head(k), d, t)) {
          k0 = k;
          break;
        }
      if (k0 > size) return reg.ind(d);

      for (Nat s = k0; s <= t; ++s)
        for (std::size_t k = k0; k <= std::min<std::size_t>(s, size); ++k) {
          bool rejected = true;
          for (std::size_t k2 = 0; k2 < k0 && rejected; ++k2)
            rejected = refuted(h, head(k2), head(k), s) && !subset_of_q(reg, h, head(k2), head(k), s);
          if (!rejected) continue;
          if (k < size && head(k + 1).is_subset_of(reg.enumerate(q_index(reg, h, head(k0)), t)))
            return q_index(reg, h, head(k0));
          return reg.ind(head(k));
        }
      // Not reached: at s = t, k = |D| every k' < k0 is refuted and rejected.
      return reg.ind(d);
    });
  };
  return Learner("psd-witness(" + h.name() + ")", Operator::partial_set, fn, detail::derived_traits(source, false, {}));
}

}  // namespace limitlab
