#pragma once

#include <memory>
#include <mutex>
#include <unordered_map>

#include "limitlab/transforms/common.hpp"
#include "limitlab/transforms/syndec.hpp"

namespace limitlab {

namespace detail {

// W_{p(σ)}: content(σ) while h(σ) is inconsistent, then W_{h(σ)} for as
// long as no extension by its own elements (up to the step) changes h(σ).
class GoldWitnessHypothesis final : public EnumerationProcedure {
 public:
  GoldWitnessHypothesis(const Registry& reg, Learner h, Sequence sigma, Index guess)
      : reg_(reg), h_(std::move(h)), sigma_(std::move(sigma)), guess_(guess), seen_(content(sigma_)) {}

  NatSet at(Nat t) const override {
    if (auto sat = reg_.saturation(guess_, t)) t = *sat;
    NatSet out;
    for (Nat s = 0; s <= t; ++s) {
      NatSet w = reg_.enumerate(guess_, s);
      if (!seen_.is_subset_of(w)) {
        out.insert_all(seen_);
        continue;
      }
      // Locking fails monotonically in s, so later steps add nothing.
      if (!locked(w, s)) break;
      out.insert_all(w);
    }
    return out;
  }

  std::optional<Nat> saturation(Nat budget) const override { return reg_.saturation(guess_, budget); }

 private:
  bool locked(const NatSet& w, Nat len) const {
    const bool broken = for_each_sequence(symbols_of(w, false), 0, len, [&](const Sequence& rho) {
      return h_.gold(concat(sigma_, rho)) != guess_;
    });
    return !broken;
  }

  const Registry& reg_;
  Learner h_;
  Sequence sigma_;
  Index guess_;
  NatSet seen_;
};

}  // namespace detail

/// Witness-based Gold-style learner built from a target-cautious one. The
/// output mimics p(σ') for a base sequence σ' and only moves on once some
/// extension τ of σ' with data seen so far changes h and brings a datum
/// not yet enumerated by h(σ') after |τ|-1 steps.
inline Learner gold_witness(Registry& reg, const Learner& source, bool syndec_first = true) {
  detail::require(source, Operator::gold, {Property::target_cautious}, "gold-witness");
  const Learner h = syndec_first ? syndec(reg, source) : source;
  const std::string tag = "gold-witness-p|" + h.name();

  struct State {
    std::mutex mutex;
    std::unordered_map<Sequence, Sequence, SequenceHash> base;
  };
  auto state = std::make_shared<State>();

  auto hypothesis_for = [&reg, h, tag](const Sequence& base) {
    const Index guess = detail::need(h.gold(base));
    return reg.constructed(tag, to_string(base), [&] {
      return std::make_shared<detail::GoldWitnessHypothesis>(reg, h, base, guess);
    });
  };

  // One step of the base sequence: from the base of σ⁻ to the base of σ.
  auto advance = [&reg, h](const Sequence& prev, const Sequence& sigma) -> Sequence {
    const NatSet seen = content(sigma);
    if (!content(prev).is_proper_subset_of(seen) || prev.size() > sigma.size()) return prev;
    const Index old_guess = detail::need(h.gold(prev));
    // Any qualifying τ is longer than prev and draws from content(σ); windows only grow.
    if (seen.is_subset_of(reg.enumerate(old_guess, prev.size()))) return prev;
    Sequence result = prev;
    for_each_sequence(symbols_of(seen, true), 0, sigma.size() - prev.size(), [&](const Sequence& rho) {
      const Sequence tau = concat(prev, rho);
      if (detail::need(h.gold(tau)) == old_guess) return false;
      const auto steps = static_cast<std::int64_t>(tau.size()) - 1;
      if (content(tau).is_subset_of(detail::window_at(reg, old_guess, steps))) return false;
      result = concat(tau, sigma);
      return true;
    });
    return result;
  };

  // The sequence whose p-index h' outputs on σ.
  auto base_of = [state, advance](const Sequence& sigma) -> Sequence {
    Sequence base;
    for (std::size_t i = 1; i <= sigma.size(); ++i) {
      const Sequence head = prefix(sigma, i);
      {
        std::lock_guard lock(state->mutex);
        if (auto it = state->base.find(head); it != state->base.end()) {
          base = it->second;
          continue;
        }
      }
      base = advance(base, head);
      std::lock_guard lock(state->mutex);
      state->base.emplace(head, base);
    }
    return base;
  };

  auto fn = [hypothesis_for, base_of](const Digest& d) -> Hypothesis {
    return detail::undefined_on_gap([&]() -> Hypothesis { return hypothesis_for(base_of(std::get<GoldInfo>(d).seq)); });
  };
  return Learner("gold-witness(" + h.name() + ")", Operator::gold, fn, detail::derived_traits(source, false, {}));
}

}  // namespace limitlab
