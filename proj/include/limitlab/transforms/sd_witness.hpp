#pragma once

#include <memory>

#include "limitlab/transforms/common.hpp"
#include "limitlab/transforms/syndec.hpp"

namespace limitlab {

namespace detail {

// W_{p(D)}: D plus the part of W_{h(D)} above max(D), enumerated while h(D)
// is consistent and no set between D and the current enumeration exposes a
// mind change (or an undefined value) of h.
class SdWitnessHypothesis final : public EnumerationProcedure {
 public:
  SdWitnessHypothesis(const Registry& reg, Learner h, NatSet d, Index guess)
      : reg_(reg), h_(std::move(h)), d_(std::move(d)), guess_(guess) {}

  NatSet at(Nat t) const override {
    if (auto sat = reg_.saturation(guess_, t)) t = *sat;
    NatSet out = d_;
    for (Nat s = 0; s <= t; ++s) {
      NatSet w = reg_.enumerate(guess_, s);
      if (!d_.is_subset_of(w)) continue;
      // The stop condition only grows with s.
      if (exposed(w)) break;
      out.insert_all(w.above(d_.max_or_none()));
    }
    return out;
  }

  std::optional<Nat> saturation(Nat budget) const override { return reg_.saturation(guess_, budget); }

 private:
  bool exposed(const NatSet& w) const {
    const auto between = sets_between(d_, w);
    for (const auto& d1 : between) {
      const Hypothesis h1 = h_.sd(d1);
      if (!h1) return true;
      if (*h1 != guess_) continue;
      for (const auto& d2 : between)
        if (h_.sd(d2) != guess_) return true;
    }
    return false;
  }

  const Registry& reg_;
  Learner h_;
  NatSet d_;
  Index guess_;
};

}  // namespace detail

/// Witness-based Sd learner: on D it uses the smallest head D[k] from which
/// the syntactically decisive variant of h stays constant up to D.
inline Learner sd_witness(Registry& reg, const Learner& source) {
  detail::require(source, Operator::set, {}, "sd-witness");
  const Learner h = syndec(reg, source);
  const std::string tag = "sd-witness-p|" + h.name();

  auto fn = [&reg, h, tag](const Digest& digest) -> Hypothesis {
    return detail::undefined_on_gap([&]() -> Hypothesis {
      const NatSet& d = std::get<SdInfo>(digest).content;
      const Index target = detail::need(h.sd(d));
      std::size_t k = 0;
      for (; k < d.size(); ++k) {
        bool constant = true;
        for (const auto& mid : sets_between(d.first(k), d))
          if (h.sd(mid) != target) {
            constant = false;
            break;
          }
        if (constant) break;
      }
      const NatSet head = d.first(k);
      const Index guess = detail::need(h.sd(head));
      return reg.constructed(tag, head.to_string(), [&] {
        return std::make_shared<detail::SdWitnessHypothesis>(reg, h, head, guess);
      });
    });
  };
  return Learner("sd-witness(" + h.name() + ")", Operator::set, fn, detail::derived_traits(source, true, {}));
}

}  // namespace limitlab
