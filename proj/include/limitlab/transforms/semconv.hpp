#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "limitlab/transforms/common.hpp"

namespace limitlab {

namespace detail {

// Stepwise machine for ĥ(σ) on a repetition-free σ. E_0 = content(σ); each
// step either follows earlier ĥ-hypotheses that already cover content(σ),
// or, while no earlier h-hypothesis covers it, adds W^{t'}_{h(σ)} once every
// repetition-free continuation agrees, then advances t'.
class SemConvMachine final : public EnumerationProcedure {
 public:
  SemConvMachine(const Registry& reg, Learner h, Sequence sigma, std::vector<Index> earlier_hat,
                 std::vector<Index> earlier_h, Index guess)
      : reg_(reg),
        h_(std::move(h)),
        sigma_(std::move(sigma)),
        seen_(content(sigma_)),
        earlier_hat_(std::move(earlier_hat)),
        earlier_h_(std::move(earlier_h)),
        guess_(guess) {
    steps_.push_back({seen_, 0, false});
  }

  NatSet at(Nat t) const override {
    std::lock_guard lock(mutex_);
    advance(t);
    return steps_[t].elements;
  }

  std::optional<Nat> saturation(Nat budget) const override {
    std::lock_guard lock(mutex_);
    advance(budget);
    for (Nat t = 0; t < budget; ++t)
      if (steps_[t].settled) return t + 1;
    return std::nullopt;
  }

 private:
  struct Step {
    NatSet elements;  // E_t
    Nat level = 0;    // t' before step t runs
    bool settled = false;  // E_{t+1} = E_{t+2} = ... is certified
  };

  void advance(Nat t) const {
    while (steps_.size() <= t) run_step(steps_.size() - 1);
  }

  void run_step(std::size_t t) const {
    Step& cur = steps_[t];
    Step next{cur.elements, cur.level, false};
    bool stable = true;

    NatSet gathered;
    bool backward = false;
    for (Index e : earlier_hat_) {
      auto w = reg_.window(e, t);
      stable = stable && w.saturated;
      if (seen_.is_subset_of(w.elements)) {
        backward = true;
        gathered.insert_all(w.elements);
      }
    }

    if (backward) {
      next.elements.insert_all(gathered);
    } else {
      bool forward = true;
      for (Index e : earlier_h_) {
        auto w = reg_.window(e, t);
        stable = stable && w.saturated;
        if (seen_.is_subset_of(w.elements)) forward = false;
      }
      if (forward) {
        const auto base = reg_.window(guess_, cur.level);
        stable = stable && base.saturated;
        const auto continuations = repetition_free_sequences(base.elements.minus(seen_));
        bool agreed = true;
        NatSet promised;
        for (const auto& tau : continuations) {
          const Hypothesis e = h_.gold(concat(sigma_, tau));
          if (!e) {
            agreed = false;
            continue;
          }
          auto w = reg_.window(*e, cur.level);
          stable = stable && w.saturated;
          promised.insert_all(w.elements);
        }
        for (const auto& tau : continuations) {
          if (!agreed) break;
          const Hypothesis e = h_.gold(concat(sigma_, tau));
          auto w = reg_.window(*e, t);
          stable = stable && w.saturated;
          agreed = promised.is_subset_of(w.elements);
        }
        if (agreed) {
          next.elements.insert_all(base.elements);
          ++next.level;
        }
      }
    }
    cur.settled = stable;
    steps_.push_back(std::move(next));
  }

  const Registry& reg_;
  Learner h_;
  Sequence sigma_;
  NatSet seen_;
  std::vector<Index> earlier_hat_;
  std::vector<Index> earlier_h_;
  Index guess_;
  mutable std::mutex mutex_;
  mutable std::vector<Step> steps_;
};

// W_{h'(D)}: D, the part of W_{h(σ_D)} above max(D), and each smaller x of
// W_{h(σ_D)} for which h on the canonical sequence of D_{<x} covers D ∪ {x}.
class CanonicalOrderHypothesis final : public EnumerationProcedure {
 public:
  CanonicalOrderHypothesis(const Registry& reg, NatSet d, Index guess, std::vector<Index> heads)
      : reg_(reg), d_(std::move(d)), guess_(guess), heads_(std::move(heads)) {}

  NatSet at(Nat t) const override {
    const NatSet w = reg_.enumerate(guess_, t);
    NatSet out = d_.united(w.above(d_.max_or_none()));
    if (d_.empty()) return out;
    for (Nat x : w) {
      if (x >= d_.max() || d_.contains(x)) continue;
      NatSet with_x = d_;
      with_x.insert(x);
      const std::size_t below = d_.below(x).size();
      if (with_x.is_subset_of(reg_.enumerate(heads_[below], t))) out.insert(x);
    }
    return out;
  }

  std::optional<Nat> saturation(Nat budget) const override {
    auto sat = reg_.saturation(guess_, budget);
    for (Index e : heads_) {
      if (!sat) break;
      auto s = reg_.saturation(e, budget);
      sat = s ? std::optional<Nat>(std::max(*sat, *s)) : std::nullopt;
    }
    return sat;
  }

 private:
  const Registry& reg_;
  NatSet d_;
  Index guess_;
  std::vector<Index> heads_;  // h(σ_{D[i]}) for i < |D|
};

}  // namespace detail

/// Globally semantically conservative Gold-style learner from a consistent,
/// semantically conservative one: h'(σ) = ĥ(σ without pauses and repeats).
inline Learner semconv_globalize(Registry& reg, const Learner& source) {
  detail::require(source, Operator::gold, {Property::globally_consistent, Property::semantically_conservative},
                  "semconv-globalize");
  const Learner h = source;
  const std::string tag = "semconv-hat|" + h.name();

  auto fn = [&reg, h, tag](const Digest& digest) -> Hypothesis {
    return detail::undefined_on_gap([&]() -> Hypothesis {
      const Sequence sigma = dedup(std::get<GoldInfo>(digest).seq);
      std::vector<Index> hats;
      std::vector<Index> guesses;
      for (std::size_t i = 0; i <= sigma.size(); ++i) {
        const Sequence head = prefix(sigma, i);
        const Index guess = detail::need(h.gold(head));
        const Index hat = reg.constructed(tag, to_string(head), [&] {
          return std::make_shared<detail::SemConvMachine>(reg, h, head, hats, guesses, guess);
        });
        hats.push_back(hat);
        guesses.push_back(guess);
      }
      return hats.back();
    });
  };
  return Learner("semconv-global(" + h.name() + ")", Operator::gold, fn,
                 detail::derived_traits(source, false,
                                        {Property::consistent, Property::globally_consistent,
                                         Property::semantically_conservative,
                                         Property::globally_semantically_conservative}));
}

/// Set-driven learner from a globally consistent, globally semantically
/// conservative Gold-style one, simulating it on the canonical sequence.
inline Learner semconv_to_sd(Registry& reg, const Learner& source) {
  detail::require(source, Operator::gold,
                  {Property::globally_consistent, Property::globally_semantically_conservative}, "semconv-to-sd");
  const Learner h = source;
  const std::string tag = "canonical-sd|" + h.name();

  auto fn = [&reg, h, tag](const Digest& digest) -> Hypothesis {
    return detail::undefined_on_gap([&]() -> Hypothesis {
      const NatSet& d = std::get<SdInfo>(digest).content;
      const Index guess = detail::need(h.gold(canonical_sequence(d)));
      std::vector<Index> heads;
      for (std::size_t i = 0; i < d.size(); ++i) heads.push_back(detail::need(h.gold(canonical_sequence(d.first(i)))));
      return reg.constructed(tag, d.to_string(), [&] {
        return std::make_shared<detail::CanonicalOrderHypothesis>(reg, d, guess, heads);
      });
    });
  };
  return Learner("semconv-sd(" + h.name() + ")", Operator::set, fn,
                 detail::derived_traits(source, true,
                                        {Property::consistent, Property::globally_consistent,
                                         Property::semantically_conservative,
                                         Property::globally_semantically_conservative}));
}

}  // namespace limitlab
