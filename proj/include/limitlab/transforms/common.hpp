#pragma once

#include <initializer_list>
#include <set>
#include <stdexcept>
#include <string>

#include "limitlab/interaction.hpp"

namespace limitlab {

// Thrown when a transform's input lacks a property it relies on.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

// Signals that a consulted learner value is undefined; caught at the
// boundary of the constructed learner (-> Undefined) or enumerator (-> no
// elements this step).
struct UndefinedValue {};

inline Index need(const Hypothesis& h) {
  if (!h) throw UndefinedValue{};
  return *h;
}

template <typename F>
Hypothesis undefined_on_gap(F&& f) {
  try {
    return f();
  } catch (const UndefinedValue&) {
    return std::nullopt;
  }
}

inline void require(const Learner& h, Operator op, std::initializer_list<Property> props, const std::string& transform) {
  if (h.op() != op)
    throw PreconditionError(transform + " expects a " + to_string(op) + " learner, got " + to_string(h.op()));
  for (Property p : props)
    if (!h.declares(p))
      throw PreconditionError(transform + " requires " + h.name() + " to be declared " + to_string(p));
}

inline LearnerTraits derived_traits(const Learner& source, bool content_only, std::set<Property> props) {
  LearnerTraits t;
  t.total = source.traits().total;
  t.content_only = content_only;
  t.declared = std::move(props);
  return t;
}

// W^t of an index at an explicit step, or nothing when t is negative.
inline NatSet window_at(const Registry& reg, Index e, std::int64_t t) {
  if (t < 0) return {};
  return reg.enumerate(e, static_cast<Nat>(t));
}

}  // namespace detail
}  // namespace limitlab
