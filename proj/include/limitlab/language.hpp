#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "limitlab/core.hpp"

namespace limitlab {

// A language with a decidable membership test. Finite languages carry
// their elements; infinite ones are described intensionally.
class Language {
 public:
  static Language finite(NatSet elements, std::string name = {}) {
    Language l;
    l.name_ = name.empty() ? elements.to_string() : std::move(name);
    l.finite_ = std::move(elements);
    return l;
  }

  // {0, 1, ..., k}; k < 0 gives the empty language.
  static Language initial_segment(std::int64_t k) {
    if (k < 0) return finite({}, "{}");
    return finite(NatSet::range(0, static_cast<Nat>(k)), "{0.." + std::to_string(k) + "}");
  }

  // {start, start+step, start+2*step, ...}
  static Language progression(Nat start, Nat step, std::string name = {}) {
    if (step == 0) throw std::invalid_argument("progression step must be positive");
    Language l;
    l.name_ = name.empty() ? "AP(" + std::to_string(start) + "," + std::to_string(step) + ")"
                           : std::move(name);
    l.member_ = [start, step](Nat x) { return x >= start && (x - start) % step == 0; };
    l.nth_ = [start, step](Nat i) { return start + i * step; };
    return l;
  }

  // Infinite language given by a membership test; the test must accept
  // infinitely many numbers, otherwise canonical texts do not terminate.
  static Language intensional(std::string name, std::function<bool(Nat)> member) {
    if (!member) throw std::invalid_argument("intensional language needs a membership test");
    Language l;
    l.name_ = std::move(name);
    l.member_ = std::move(member);
    return l;
  }

  const std::string& name() const { return name_; }
  bool is_finite() const { return finite_.has_value(); }

  bool contains(Nat x) const { return finite_ ? finite_->contains(x) : member_(x); }

  const NatSet& elements() const {
    if (!finite_) throw std::logic_error("language " + name_ + " is infinite");
    return *finite_;
  }

  // Elements x <= bound.
  NatSet elements_up_to(Nat bound) const {
    if (finite_) return finite_->below(bound + 1);
    NatSet r;
    for (Nat x = 0; x <= bound; ++x)
      if (member_(x)) r.insert(x);
    return r;
  }

  // The n smallest elements (fewer when the language is smaller).
  NatSet smallest(std::size_t n) const {
    if (finite_) return finite_->first(n);
    NatSet r;
    if (nth_) {
      for (Nat i = 0; i < n; ++i) r.insert(nth_(i));
      return r;
    }
    for (Nat x = 0; r.size() < n; ++x)
      if (member_(x)) r.insert(x);
    return r;
  }

 private:
  Language() = default;

  std::string name_;
  std::optional<NatSet> finite_;
  std::function<bool(Nat)> member_;
  std::function<Nat(Nat)> nth_;
};

}  // namespace limitlab
