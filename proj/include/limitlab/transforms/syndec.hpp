#pragma once

#include <algorithm>
#include <vector>

#include "limitlab/transforms/common.hpp"

namespace limitlab {

/// Syntactically decisive variant of h: never returns to a hypothesis it
/// abandoned along the digest order. Outputs pad(h(β(σ)), 0) while h(β(σ))
/// has been conjectured without interruption, otherwise pads with a
/// nonzero code of the least digest from which h stayed constant.
inline Learner syndec(Registry& reg, const Learner& h) {
  auto fn = [&reg, h](const Digest& d) -> Hypothesis {
    return detail::undefined_on_gap([&]() -> Hypothesis {
      const Index current = detail::need(h(d));
      std::vector<Digest> below = digests_below(d);
      std::sort(below.begin(), below.end(), digest_order_less);

      // stable[i]: h is constant (= current) on the interval [below[i], d].
      std::vector<bool> stable(below.size());
      for (std::size_t i = 0; i < below.size(); ++i) {
        bool ok = true;
        for (const auto& mid : below)
          if (beta_leq(below[i], mid) && h(mid) != current) {
            ok = false;
            break;
          }
        stable[i] = ok;
      }

      bool uninterrupted = true;
      for (std::size_t i = 0; i < below.size() && uninterrupted; ++i)
        if (h(below[i]) == current && !stable[i]) uninterrupted = false;
      if (uninterrupted) return reg.pad(current, 0);

      // d itself is stable, so a least stable digest exists.
      const auto first = std::find(stable.begin(), stable.end(), true) - stable.begin();
      return reg.pad(current, reg.code_of(h.name() + "|" + to_string(below[static_cast<std::size_t>(first)])));
    });
  };
  return Learner("syndec(" + h.name() + ")", h.op(), fn,
                 detail::derived_traits(h, h.traits().content_only, h.traits().declared));
}

}  // namespace limitlab
