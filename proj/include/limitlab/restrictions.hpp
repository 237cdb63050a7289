#pragma once

#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <unordered_set>
#include <vector>

#include "limitlab/interaction.hpp"
#include "limitlab/parallel.hpp"

namespace limitlab {

enum class Restriction { ex, bc, wb, sem_wb, cons, conv, sem_conv, caut, caut_tar, wmon, syn_dec, always };

inline constexpr std::pair<Restriction, std::string_view> kRestrictionNames[] = {
    {Restriction::ex, "Ex"},           {Restriction::bc, "Bc"},           {Restriction::wb, "Wb"},
    {Restriction::sem_wb, "SemWb"},    {Restriction::cons, "Cons"},       {Restriction::conv, "Conv"},
    {Restriction::sem_conv, "SemConv"}, {Restriction::caut, "Caut"},      {Restriction::caut_tar, "CautTar"},
    {Restriction::wmon, "WMon"},       {Restriction::syn_dec, "SynDec"},  {Restriction::always, "T"},
};

inline std::string to_string(Restriction r) {
  for (auto [id, name] : kRestrictionNames)
    if (id == r) return std::string(name);
  return "?";
}

inline Restriction parse_restriction(std::string_view name) {
  for (auto [id, n] : kRestrictionNames)
    if (n == name) return id;
  throw std::invalid_argument("unknown restriction " + std::string(name));
}

namespace detail {

// Three-valued set predicates over budgeted windows.
class Semantics {
 public:
  Semantics(const Registry& reg, Nat budget) : reg_(reg), budget_(budget) {}

  Truth member(Nat x, Index e) const { return reg_.member(x, e, budget_); }
  Truth includes(Index e, const NatSet& d) const { return reg_.includes(e, d, budget_); }
  Truth subset(Index a, Index b) const { return reg_.subset(a, b, budget_); }
  Truth equal(Index a, Index b) const { return reg_.equal(a, b, budget_); }

  // d ⊊ W_e for a finite d.
  Truth strictly_below(const NatSet& d, Index e) const {
    auto w = reg_.window(e, budget_);
    const Truth covers = d.is_subset_of(w.elements) ? Truth::yes : (w.saturated ? Truth::no : Truth::unknown);
    const Truth exceeds = !w.elements.is_subset_of(d) ? Truth::yes : (w.saturated ? Truth::no : Truth::unknown);
    return covers && exceeds;
  }

  // L ⊊ W_e for a language given by membership.
  Truth strictly_below(const Language& lang, Index e) const {
    if (lang.is_finite()) return strictly_below(lang.elements(), e);
    auto w = reg_.window(e, budget_);
    // A finite W cannot contain an infinite language.
    return w.saturated ? Truth::no : Truth::unknown;
  }

  Truth denotes(Index e, const Language& lang) const { return limitlab::denotes(reg_, e, lang, budget_); }

  // (c ∩ W_new) \ W_old ≠ ∅, with the first decided witness.
  std::pair<Truth, std::optional<Nat>> justified(const NatSet& c, Index newer, Index older) const {
    Truth any = Truth::no;
    for (Nat x : c) {
      Truth t = member(x, newer) && !member(x, older);
      if (t == Truth::yes) return {Truth::yes, x};
      any = any || t;
    }
    return {any, std::nullopt};
  }

 private:
  const Registry& reg_;
  Nat budget_;
};

inline Verdict from_truth(Truth t, Witness w, const std::string& undecided) {
  if (t == Truth::yes) return Verdict::holds();
  if (t == Truth::no) return Verdict::violated(std::move(w));
  return Verdict::inconclusive(undecided, std::move(w));
}

inline std::string pair_label(std::size_t n, std::size_t m) {
  return "(" + std::to_string(n) + "," + std::to_string(m) + ")";
}

inline constexpr const char* kPartialNote = "partiality: pairs with undefined entries were skipped";

}  // namespace detail

/// Checks restriction `r` on the learning sequence `p` of the text prefix
/// `seq` (p(i) = h(β(seq[i]))). Quantifiers range over 0..|seq|. `target`
/// is needed by Ex, Bc and, optionally, CautTar; without it CautTar treats
/// seq followed by pauses forever as the text.
inline Verdict check(const Registry& reg, Restriction r, const LearningSequence& p, const Sequence& seq,
                     const Language* target, Nat budget) {
  if (p.size() != seq.size() + 1)
    throw std::invalid_argument("learning sequence length must be |seq| + 1");
  const detail::Semantics sem(reg, budget);
  const std::size_t last = seq.size();
  VerdictAccumulator acc;
  bool partial = false;

  std::vector<NatSet> contents(last + 1);
  for (std::size_t i = 0; i <= last; ++i) contents[i] = content(std::span(seq).first(i));

  auto defined_range = [&](std::size_t n, std::size_t m) {
    for (std::size_t k = n; k <= m; ++k)
      if (!p[k]) {
        partial = true;
        return false;
      }
    return true;
  };

  // Runs `pair_check(n, m)` for every defined pair n < m (or n <= m).
  auto for_pairs = [&](bool strict, auto&& pair_check) {
    for (std::size_t m = 0; m <= last; ++m)
      for (std::size_t n = 0; n <= m; ++n) {
        if (strict && n == m) continue;
        if (!p[n] || !p[m]) {
          partial = true;
          continue;
        }
        acc.add(pair_check(n, m));
        if (acc.violated()) return;
      }
  };

  switch (r) {
    case Restriction::always:
      break;

    case Restriction::cons:
      for (std::size_t n = 0; n <= last && !acc.violated(); ++n) {
        if (!p[n]) {
          partial = true;
          continue;
        }
        Witness w{.n = n, .detail = "content not contained in hypothesis"};
        for (Nat x : contents[n])
          if (sem.member(x, *p[n]) == Truth::no) {
            w.datum = x;
            break;
          }
        acc.add(detail::from_truth(sem.includes(*p[n], contents[n]), w, "consistency undecided within budget"));
      }
      break;

    case Restriction::wb:
    case Restriction::sem_wb:
      for_pairs(true, [&](std::size_t n, std::size_t m) {
        Truth changed = Truth::no;
        if (r == Restriction::wb) {
          if (!defined_range(n, m)) return Verdict::holds();
          for (std::size_t k = n; k <= m; ++k) changed = changed || truth_of(*p[k] != *p[n]);
        } else {
          for (std::size_t k = n; k <= m; ++k) {
            if (!p[k]) {
              partial = true;
              continue;
            }
            changed = changed || !sem.equal(*p[n], *p[k]);
          }
        }
        if (changed == Truth::no) return Verdict::holds();
        auto [just, datum] = sem.justified(contents[m], *p[m], *p[n]);
        Witness w{.n = n, .m = m, .datum = datum, .detail = "mind change " + detail::pair_label(n, m) + " without a witness"};
        return detail::from_truth(!changed || just, w, "mind-change justification undecided within budget");
      });
      break;

    case Restriction::conv:
    case Restriction::sem_conv:
    case Restriction::wmon:
      for_pairs(true, [&](std::size_t n, std::size_t m) {
        const Truth trigger = sem.includes(*p[n], contents[m]);
        Truth outcome;
        std::string what;
        if (r == Restriction::conv) {
          outcome = truth_of(*p[n] == *p[m]);
          what = "changes its hypothesis while consistent";
        } else if (r == Restriction::sem_conv) {
          outcome = sem.equal(*p[n], *p[m]);
          what = "changes its language while consistent";
        } else {
          outcome = sem.subset(*p[n], *p[m]);
          what = "drops elements while consistent";
        }
        Witness w{.n = n, .m = m, .detail = what + " at " + detail::pair_label(n, m)};
        return detail::from_truth(!trigger || outcome, w, "undecided within budget at " + detail::pair_label(n, m));
      });
      break;

    case Restriction::caut:
      for_pairs(true, [&](std::size_t n, std::size_t m) {
        const Truth shrinks = sem.subset(*p[m], *p[n]) && !sem.subset(*p[n], *p[m]);
        Witness w{.n = n, .m = m, .detail = "falls back to a proper subset at " + detail::pair_label(n, m)};
        return detail::from_truth(!shrinks, w, "undecided within budget at " + detail::pair_label(n, m));
      });
      break;

    case Restriction::caut_tar:
      for (std::size_t n = 0; n <= last && !acc.violated(); ++n) {
        if (!p[n]) {
          partial = true;
          continue;
        }
        const Truth over = target ? sem.strictly_below(*target, *p[n]) : sem.strictly_below(contents[last], *p[n]);
        Witness w{.n = n, .text = seq, .detail = "hypothesis properly contains the content of the text"};
        acc.add(detail::from_truth(!over, w, "target-cautiousness undecided within budget"));
      }
      break;

    case Restriction::syn_dec:
      for_pairs(true, [&](std::size_t n, std::size_t m) {
        if (*p[n] != *p[m]) return Verdict::holds();
        for (std::size_t k = n + 1; k < m; ++k)
          if (!p[k] || *p[k] != *p[n])
            return Verdict::violated({.n = n, .m = m, .datum = std::nullopt, .text = std::nullopt,
                                      .detail = "returns at " + std::to_string(m) + " to a hypothesis abandoned at " +
                                                std::to_string(k)});
        return Verdict::holds();
      });
      break;

    case Restriction::ex:
    case Restriction::bc: {
      if (!target) throw std::invalid_argument(to_string(r) + " needs a target language");
      if (!p[last]) return Verdict::violated({.m = last, .detail = "undefined at the end of the text prefix"});
      std::size_t start = last;
      if (r == Restriction::ex) {
        while (start > 0 && p[start - 1] && *p[start - 1] == *p[last]) --start;
      } else {
        while (start > 0 && p[start - 1] && sem.denotes(*p[start - 1], *target) == Truth::yes) --start;
      }
      Witness w{.n = start, .m = last, .detail = "final hypothesis does not denote " + target->name()};
      acc.add(detail::from_truth(sem.denotes(*p[last], *target), w, "correctness of the final hypothesis undecided"));
      break;
    }
  }

  Verdict v = acc.take();
  if (partial) v.note(detail::kPartialNote);
  return v;
}

inline Verdict check(const Registry& reg, Restriction r, const LearningSequence& p, const Sequence& seq,
                     const Language& target, Nat budget) {
  return check(reg, r, p, seq, &target, budget);
}

enum class Success { ex, bc };

inline Restriction as_restriction(Success s) { return s == Success::ex ? Restriction::ex : Restriction::bc; }

/// A learning criterion: `alpha` must hold on all generated texts (global
/// scope), `delta` and `success` on texts of the target.
struct Criterion {
  Restriction alpha = Restriction::always;
  Restriction delta = Restriction::always;
  Success success = Success::ex;
};

/// Where restrictions are required: only on target texts, or additionally
/// on every sequence over a finite alphabet (the texts of all its subsets).
struct ScopeSpec {
  bool global = false;
  NatSet alphabet;
  std::size_t max_len = 0;

  static ScopeSpec on_target_texts() { return {}; }
  static ScopeSpec over(NatSet alphabet, std::size_t max_len) { return {true, std::move(alphabet), max_len}; }
};

struct Bounds {
  std::size_t horizon = 4;
  Nat budget = 32;
  // Pauses appended to each content-complete prefix before judging success.
  std::size_t grace = 0;
  // Finite window of an infinite target used for text generation.
  std::optional<NatSet> support;
  unsigned workers = default_workers();
};

struct LearnResult {
  Verdict verdict;
  Verdict restriction;
  Verdict success;
  Verdict global;
  std::size_t sequences_checked = 0;
};

namespace detail {

inline Verdict with_text(Verdict v, const Sequence& seq) {
  if (v.witness && !v.witness->text) v.witness->text = seq;
  return v;
}

inline Verdict guarded(const std::function<Verdict()>& f, const Sequence& seq) {
  try {
    return f();
  } catch (const std::exception& e) {
    return Verdict::violated({.text = seq, .detail = std::string("learner failed: ") + e.what()});
  }
}

}  // namespace detail

/// Checks a restriction on every sequence of length `scope.max_len` over
/// the scope alphabet plus pause (which covers all shorter prefixes).
/// Returns the verdict and the number of sequences checked.
inline std::pair<Verdict, std::size_t> check_everywhere(const Registry& reg, const Learner& h, Restriction r,
                                                        const ScopeSpec& scope, const Bounds& bounds) {
  std::vector<Sequence> all;
  for_each_sequence(symbols_of(scope.alphabet, true), scope.max_len, scope.max_len, [&](const Sequence& s) {
    all.push_back(s);
    return false;
  });
  Verdict v = parallel_fold(all.size(), bounds.workers, [&](std::size_t i) {
    const Sequence& s = all[i];
    return detail::guarded([&] { return detail::with_text(check(reg, r, run(h, s), s, nullptr, bounds.budget), s); }, s);
  });
  return {std::move(v), all.size()};
}

/// Exhaustively checks that h learns `lang` under the criterion on all text
/// prefixes of length `horizon` over the (windowed) language plus pause.
/// Success is judged on every content-complete prefix extended by `grace`
/// pauses; for infinite targets it is judged on the canonical text.
inline LearnResult learns(const Registry& reg, const Learner& h, const Criterion& crit, const Language& lang,
                          const Bounds& bounds, const ScopeSpec& scope = ScopeSpec::on_target_texts()) {
  LearnResult res;
  const NatSet support = lang.is_finite()
                             ? (bounds.support ? lang.elements().intersected(*bounds.support) : lang.elements())
                             : (bounds.support ? *bounds.support : lang.smallest(bounds.horizon));
  for (Nat x : support)
    if (!lang.contains(x)) throw std::invalid_argument("support element " + std::to_string(x) + " is not in " + lang.name());

  const auto texts = all_sequences(support, true, bounds.horizon);
  std::vector<Sequence> maximal;
  for (const auto& s : texts)
    if (s.size() == bounds.horizon) maximal.push_back(s);
  res.sequences_checked = maximal.size();

  res.restriction = parallel_fold(maximal.size(), bounds.workers, [&](std::size_t i) {
    const Sequence& s = maximal[i];
    return detail::guarded([&] { return detail::with_text(check(reg, crit.delta, run(h, s), s, &lang, bounds.budget), s); }, s);
  });

  std::vector<Sequence> judged;
  if (lang.is_finite()) {
    std::unordered_set<Sequence, SequenceHash> seen;
    const Sequence pauses(bounds.grace, kPause);
    for (const auto& s : texts)
      if (content(s) == lang.elements() && seen.insert(s).second) judged.push_back(concat(s, pauses));
  } else if (bounds.horizon > 0) {
    judged.push_back(canonical_text_prefix(lang, bounds.horizon));
  }

  if (bounds.horizon == 0) {
    res.success = Verdict::inconclusive("horizon 0 generates no text");
  } else if (judged.empty()) {
    res.success = Verdict::inconclusive("no content-complete text prefix within the horizon");
  } else {
    const Restriction goal = as_restriction(crit.success);
    res.success = parallel_fold(judged.size(), bounds.workers, [&](std::size_t i) {
      const Sequence& s = judged[i];
      return detail::guarded([&] {
        const auto p = run(h, s);
        for (std::size_t k = 0; k < p.size(); ++k)
          if (!p[k]) return Verdict::violated({.m = k, .text = s, .detail = "undefined on a text of the target"});
        return detail::with_text(check(reg, goal, p, s, &lang, bounds.budget), s);
      }, s);
    });
    res.sequences_checked += judged.size();
  }

  if (scope.global && crit.alpha != Restriction::always) {
    auto [verdict, count] = check_everywhere(reg, h, crit.alpha, scope, bounds);
    res.global = std::move(verdict);
    res.sequences_checked += count;
  }

  VerdictAccumulator acc;
  acc.add(res.restriction);
  acc.add(res.success);
  acc.add(res.global);
  res.verdict = acc.take();
  return res;
}

/// For sequences with Cons holding and saturated hypotheses, SemWb and
/// SemConv must agree; a disagreement is reported as a violation.
inline Verdict consistent_equivalence_probe(const Registry& reg, const LearningSequence& p, const Sequence& seq,
                                            Nat budget) {
  if (!check(reg, Restriction::cons, p, seq, nullptr, budget).is_holds())
    return Verdict::inconclusive("precondition: sequence is not consistent");
  for (const auto& e : p)
    if (!e || !reg.saturation(*e, budget)) return Verdict::inconclusive("precondition: unsaturated or undefined entry");
  const Verdict wb = check(reg, Restriction::sem_wb, p, seq, nullptr, budget);
  const Verdict conv = check(reg, Restriction::sem_conv, p, seq, nullptr, budget);
  if (wb.status == conv.status) return Verdict::holds();
  return Verdict::violated({.text = seq,
                            .detail = std::string("SemWb is ") + to_string(wb.status) + " but SemConv is " +
                                      to_string(conv.status)});
}

/// Checks a declared property of a learner on a set of languages.
inline Verdict validate_declaration(const Registry& reg, const Learner& h, Property prop,
                                    const std::vector<Language>& family, const Bounds& bounds,
                                    const ScopeSpec& scope) {
  Criterion crit;
  crit.success = Success::bc;
  bool global = false;
  switch (prop) {
    case Property::target_cautious: crit.delta = Restriction::caut_tar; break;
    case Property::consistent: crit.delta = Restriction::cons; break;
    case Property::semantically_conservative: crit.delta = Restriction::sem_conv; break;
    case Property::globally_consistent: crit.alpha = Restriction::cons; global = true; break;
    case Property::globally_semantically_conservative: crit.alpha = Restriction::sem_conv; global = true; break;
  }
  if (global) return check_everywhere(reg, h, crit.alpha, scope, bounds).first;
  VerdictAccumulator acc;
  for (const auto& lang : family) {
    acc.add(learns(reg, h, crit, lang, bounds).restriction);
    if (acc.violated()) break;
  }
  return acc.take();
}

/// Pause-extension diagnostic for target-cautiousness on arbitrary texts:
/// once h on T[n] conjectures more than content(T[n]), the text T[n]
/// followed only by pauses is overgeneralized. Scans the canonical text of
/// `lang` up to `horizon`.
inline Verdict pause_extension_diagnostic(const Registry& reg, const Learner& h, const Language& lang,
                                          std::size_t horizon, std::size_t pauses, Nat budget) {
  const Sequence text = canonical_text_prefix(lang, horizon);
  for (std::size_t n = 0; n <= horizon; ++n) {
    const Sequence head = prefix(text, n);
    const Hypothesis e = h.on(head);
    if (!e) continue;
    const NatSet seen = content(head);
    if (reg.enumerate(*e, budget).is_subset_of(seen)) continue;
    const Sequence extended = concat(head, Sequence(pauses, kPause));
    const Language paused = Language::finite(seen);
    Verdict v = check(reg, Restriction::caut_tar, run(h, extended), extended, &paused, budget);
    return detail::with_text(std::move(v), extended);
  }
  Verdict v = Verdict::holds();
  v.note("no hypothesis beyond the seen content within the horizon");
  return v;
}

}  // namespace limitlab
