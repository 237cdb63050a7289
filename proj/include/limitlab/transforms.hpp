#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "limitlab/transforms/gold_to_psd.hpp"
#include "limitlab/transforms/gold_witness.hpp"
#include "limitlab/transforms/psd_witness.hpp"
#include "limitlab/transforms/sd_witness.hpp"
#include "limitlab/transforms/semconv.hpp"
#include "limitlab/transforms/syndec.hpp"

namespace limitlab {

struct TransformEntry {
  std::string id;
  std::string description;
  std::function<Learner(Registry&, const Learner&)> apply;
};

inline const std::vector<TransformEntry>& transform_catalog() {
  static const std::vector<TransformEntry> catalog = {
      {"syndec", "syntactically decisive variant (any operator)",
       [](Registry& reg, const Learner& h) { return syndec(reg, h); }},
      {"gold-witness", "witness-based G learner from a target-cautious one",
       [](Registry& reg, const Learner& h) { return gold_witness(reg, h, true); }},
      {"gold-witness-direct", "gold-witness without the syndec preprocessing",
       [](Registry& reg, const Learner& h) { return gold_witness(reg, h, false); }},
      {"strongly-locking", "Psd learner answering (D,t) with h(D,2t)",
       [](Registry&, const Learner& h) { return psd_strongly_locking(h); }},
      {"psd-witness", "witness-based Psd learner from a target-cautious one",
       [](Registry& reg, const Learner& h) { return psd_witness(reg, h); }},
      {"gold-to-psd", "Psd learner simulating a G learner on its least possible locking sequence",
       [](Registry&, const Learner& h) { return gold_to_psd(h); }},
      {"sd-witness", "witness-based Sd learner", [](Registry& reg, const Learner& h) { return sd_witness(reg, h); }},
      {"semconv-globalize", "globally semantically conservative G learner",
       [](Registry& reg, const Learner& h) { return semconv_globalize(reg, h); }},
      {"semconv-to-sd", "Sd learner simulating a G learner on canonical sequences",
       [](Registry& reg, const Learner& h) { return semconv_to_sd(reg, h); }},
  };
  return catalog;
}

inline const TransformEntry& transform_entry(const std::string& id) {
  for (const auto& t : transform_catalog())
    if (t.id == id) return t;
  throw std::invalid_argument("unknown transform " + id);
}

}  // namespace limitlab
