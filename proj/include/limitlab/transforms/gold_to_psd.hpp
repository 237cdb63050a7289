#pragma once

#include "limitlab/transforms/common.hpp"

namespace limitlab {

/// Psd learner from a Gold-style one: on (D,t) it answers h(σ) for the
/// shortlex-least σ ∈ D_#^{≤t} that no τ ∈ D_#^{≤t} moves, else h(ε).
inline Learner gold_to_psd(const Learner& h) {
  detail::require(h, Operator::gold, {}, "gold-to-psd");
  auto fn = [h](const Digest& digest) -> Hypothesis {
    return detail::undefined_on_gap([&]() -> Hypothesis {
      const auto& info = std::get<PsdInfo>(digest);
      const auto symbols = symbols_of(info.content, true);
      const auto len = static_cast<std::size_t>(info.count);
      Hypothesis chosen;
      for_each_sequence(symbols, 0, len, [&](const Sequence& sigma) {
        const Index guess = detail::need(h.gold(sigma));
        const bool moved = for_each_sequence(symbols, 0, len, [&](const Sequence& tau) {
          return detail::need(h.gold(concat(sigma, tau))) != guess;
        });
        if (moved) return false;
        chosen = guess;
        return true;
      });
      if (chosen) return chosen;
      return detail::need(h.gold({}));
    });
  };
  return Learner("gold-to-psd(" + h.name() + ")", Operator::partial_set, fn,
                 detail::derived_traits(h, false, h.declares(Property::target_cautious)
                                                      ? std::set<Property>{Property::target_cautious}
                                                      : std::set<Property>{}));
}

}  // namespace limitlab
