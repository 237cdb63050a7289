#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "limitlab/interaction.hpp"
#include "limitlab/numbering.hpp"

namespace limitlab {

inline constexpr std::int64_t kInitMax = 3;

/// Registers the standard families once: INIT = {0..k} for k = 0..3, listed
/// at step 0, and EVEN = {0, 2, 4, ...}, one element per step.
inline void register_standard_families(Registry& reg) {
  if (!reg.has_family("INIT")) {
    std::vector<MemberSpec> members;
    for (std::int64_t k = 0; k <= kInitMax; ++k) members.push_back(member_for(Language::initial_segment(k), Speed::instant));
    reg.register_family("INIT", std::move(members));
  }
  if (!reg.has_family("EVEN")) reg.register_family("EVEN", {member_for(Language::progression(0, 2, "EVEN"), Speed::stepwise)});
}

inline Language even_language() { return Language::progression(0, 2, "EVEN"); }

// The INIT languages {}, {0}, ..., {0..3}.
inline std::vector<Language> init_languages() {
  std::vector<Language> out;
  for (std::int64_t k = -1; k <= kInitMax; ++k) out.push_back(Language::initial_segment(k));
  return out;
}

namespace detail {

// Index for {0..max(d)}: the INIT member when registered, else ind.
inline Index initial_segment_index(Registry& reg, const NatSet& d) {
  if (d.empty()) return reg.ind({});
  const Nat top = d.max();
  if (top <= static_cast<Nat>(kInitMax)) return reg.family("INIT")[top];
  return reg.ind(NatSet::range(0, top));
}

inline bool is_initial_segment(const NatSet& d) { return d.empty() || d.max() + 1 == d.size(); }

}  // namespace detail

struct CatalogEntry {
  std::string id;
  Operator op;
  std::string description;
  std::function<Learner(Registry&)> make;
};

/// Hand-built learners used by the suites. Declared properties hold on
/// the families each one is used with (and globally where declared so).
inline const std::vector<CatalogEntry>& learner_catalog() {
  using P = Property;
  static const std::vector<CatalogEntry> catalog = {
      {"init-g", Operator::gold, "guesses {0..max(content)}; learns INIT",
       [](Registry& reg) {
         register_standard_families(reg);
         auto fn = [&reg](const Digest& d) -> Hypothesis {
           return detail::initial_segment_index(reg, content(std::get<GoldInfo>(d).seq));
         };
         return Learner("init-g", Operator::gold, fn,
                        {true, false,
                         {P::target_cautious, P::consistent, P::semantically_conservative, P::globally_consistent,
                          P::globally_semantically_conservative}});
       }},
      {"init-psd", Operator::partial_set, "INIT member when the content is an initial segment, else ind(content)",
       [](Registry& reg) {
         register_standard_families(reg);
         auto fn = [&reg](const Digest& d) -> Hypothesis {
           const NatSet& seen = std::get<PsdInfo>(d).content;
           return detail::is_initial_segment(seen) ? detail::initial_segment_index(reg, seen) : reg.ind(seen);
         };
         return Learner("init-psd", Operator::partial_set, fn, {true, true, {P::target_cautious, P::consistent}});
       }},
      {"ind-g", Operator::gold, "ind(content)",
       [](Registry& reg) {
         auto fn = [&reg](const Digest& d) -> Hypothesis { return reg.ind(content(std::get<GoldInfo>(d).seq)); };
         return Learner("ind-g", Operator::gold, fn,
                        {true, false,
                         {P::target_cautious, P::consistent, P::semantically_conservative, P::globally_consistent,
                          P::globally_semantically_conservative}});
       }},
      {"ind-psd", Operator::partial_set, "ind(content)",
       [](Registry& reg) {
         auto fn = [&reg](const Digest& d) -> Hypothesis { return reg.ind(std::get<PsdInfo>(d).content); };
         return Learner("ind-psd", Operator::partial_set, fn, {true, true, {P::target_cautious, P::consistent}});
       }},
      {"ind-sd", Operator::set, "ind(content)",
       [](Registry& reg) {
         auto fn = [&reg](const Digest& d) -> Hypothesis { return reg.ind(std::get<SdInfo>(d).content); };
         return Learner("ind-sd", Operator::set, fn, {true, true, {P::target_cautious, P::consistent}});
       }},
      {"constant-g", Operator::gold, "always the INIT member {0,1,2}",
       [](Registry& reg) {
         register_standard_families(reg);
         const Index e = reg.family("INIT")[2];
         return Learner("constant-g", Operator::gold, [e](const Digest&) -> Hypothesis { return e; }, {true, false, {}});
       }},
      {"returning-g", Operator::gold, "ind(content), but ind({}) right after each new datum",
       [](Registry& reg) {
         auto fn = [&reg](const Digest& d) -> Hypothesis {
           const Sequence& seq = std::get<GoldInfo>(d).seq;
           if (!seq.empty() && !is_pause(seq.back()) &&
               !content(std::span(seq).first(seq.size() - 1)).contains(static_cast<Nat>(seq.back())))
             return reg.ind({});
           return reg.ind(content(seq));
         };
         return Learner("returning-g", Operator::gold, fn, {true, false, {P::target_cautious}});
       }},
      {"oscillating-g", Operator::gold, "alternates two paddings of ind(content) until two data are seen",
       [](Registry& reg) {
         auto fn = [&reg](const Digest& d) -> Hypothesis {
           const Sequence& seq = std::get<GoldInfo>(d).seq;
           const NatSet seen = content(seq);
           if (seen.size() >= 2) return reg.ind(seen);
           return reg.pad(reg.ind(seen), seq.size() % 2);
         };
         return Learner("oscillating-g", Operator::gold, fn, {true, false, {P::target_cautious}});
       }},
      {"settling-psd", Operator::partial_set, "pad(ind(D), min(t, 2|D|+1)): changes with the count, then settles",
       [](Registry& reg) {
         auto fn = [&reg](const Digest& d) -> Hypothesis {
           const auto& info = std::get<PsdInfo>(d);
           return reg.pad(reg.ind(info.content), std::min<Nat>(info.count, 2 * info.content.size() + 1));
         };
         return Learner("settling-psd", Operator::partial_set, fn, {true, false, {P::target_cautious}});
       }},
      {"even-g", Operator::gold, "EVEN as soon as any datum is seen",
       [](Registry& reg) {
         register_standard_families(reg);
         const Index even = reg.family("EVEN")[0];
         auto fn = [&reg, even](const Digest& d) -> Hypothesis {
           if (content(std::get<GoldInfo>(d).seq).empty()) return reg.ind({});
           return even;
         };
         return Learner("even-g", Operator::gold, fn, {true, false, {}});
       }},
  };
  return catalog;
}

inline const CatalogEntry& catalog_entry(const std::string& id) {
  for (const auto& e : learner_catalog())
    if (e.id == id) return e;
  throw std::invalid_argument("unknown learner " + id);
}

inline Learner make_learner(Registry& reg, const std::string& id) { return catalog_entry(id).make(reg); }

}  // namespace limitlab
