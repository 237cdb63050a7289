#include <gtest/gtest.h>

#include <map>
#include <random>

#include "limitlab/learners.hpp"
#include "limitlab/restrictions.hpp"

using namespace limitlab;

namespace {

constexpr Symbol P = kPause;

// A learning sequence over padded ind-indices with the languages kept on
// the side, so restrictions can be evaluated directly on sets.
struct Plain {
  Sequence text;
  LearningSequence p;
  std::vector<NatSet> w;
};

Plain random_plain(Registry& reg, std::mt19937_64& rng, std::size_t len) {
  Plain s;
  for (std::size_t i = 0; i < len; ++i) {
    const auto r = rng() % 4;
    s.text.push_back(r == 3 ? P : static_cast<Symbol>(r));
  }
  for (std::size_t i = 0; i <= len; ++i) {
    NatSet w;
    if (i > 0 && rng() % 2) {
      w = s.w.back();
    } else {
      for (Nat x = 0; x < 4; ++x)
        if (rng() % 2) w.insert(x);
    }
    if (rng() % 3 == 0) w.insert_all(content(std::span(s.text).first(i)));
    s.p.push_back(reg.pad(reg.ind(w), rng() % 2));
    s.w.push_back(w);
  }
  return s;
}

// Independent set-level definitions.
bool oracle(Restriction r, const Plain& s, const NatSet& target) {
  const std::size_t last = s.text.size();
  auto c = [&](std::size_t i) { return content(std::span(s.text).first(i)); };
  auto proper = [](const NatSet& a, const NatSet& b) { return a.is_subset_of(b) && a != b; };
  for (std::size_t m = 0; m <= last; ++m)
    for (std::size_t n = 0; n <= m; ++n) {
      const bool lt = n < m;
      switch (r) {
        case Restriction::cons:
          if (n == m && !c(n).is_subset_of(s.w[n])) return false;
          break;
        case Restriction::caut_tar:
          if (n == m && proper(target, s.w[n])) return false;
          break;
        case Restriction::wb:
        case Restriction::sem_wb: {
          if (!lt) break;
          bool changed = false;
          for (std::size_t k = n; k <= m; ++k)
            changed = changed || (r == Restriction::wb ? s.p[k] != s.p[n] : s.w[k] != s.w[n]);
          if (changed && c(m).intersected(s.w[m]).minus(s.w[n]).empty()) return false;
          break;
        }
        case Restriction::sem_conv:
          if (lt && c(m).is_subset_of(s.w[n]) && s.w[n] != s.w[m]) return false;
          break;
        case Restriction::conv:
          if (lt && c(m).is_subset_of(s.w[n]) && s.p[n] != s.p[m]) return false;
          break;
        case Restriction::wmon:
          if (lt && c(m).is_subset_of(s.w[n]) && !s.w[n].is_subset_of(s.w[m])) return false;
          break;
        case Restriction::caut:
          if (lt && proper(s.w[m], s.w[n])) return false;
          break;
        case Restriction::syn_dec:
          if (lt && s.p[n] == s.p[m])
            for (std::size_t k = n; k <= m; ++k)
              if (s.p[k] != s.p[n]) return false;
          break;
        default:
          break;
      }
    }
  return true;
}

LearningSequence ind_sequence(Registry& reg, const std::vector<NatSet>& ws) {
  LearningSequence p;
  for (const auto& w : ws) p.push_back(reg.ind(w));
  return p;
}

}  // namespace

TEST(Check, AgreesWithSetOracle) {
  Registry reg;
  std::mt19937_64 rng(5);
  const Restriction rs[] = {Restriction::cons, Restriction::caut_tar, Restriction::wb,   Restriction::sem_wb,
                            Restriction::sem_conv, Restriction::conv, Restriction::wmon, Restriction::caut,
                            Restriction::syn_dec};
  const Language target = Language::finite({0, 1});
  for (int i = 0; i < 3000; ++i) {
    const Plain s = random_plain(reg, rng, 1 + i % 5);
    for (Restriction r : rs) {
      const Verdict v = check(reg, r, s.p, s.text, &target, 4);
      ASSERT_FALSE(v.is_inconclusive()) << to_string(r);
      ASSERT_EQ(v.is_holds(), oracle(r, s, target.elements())) << to_string(r) << " on " << to_string(s.text);
    }
  }
}

TEST(Check, WitnessesReverify) {
  Registry reg;
  std::mt19937_64 rng(9);
  int seen = 0;
  for (int i = 0; i < 2000; ++i) {
    const Plain s = random_plain(reg, rng, 4);
    const Verdict v = check(reg, Restriction::wb, s.p, s.text, nullptr, 4);
    if (!v.is_violated()) continue;
    ++seen;
    const std::size_t n = *v.witness->n, m = *v.witness->m;
    // The quoted pair alone violates the formula.
    Plain sub{prefix(s.text, m), {s.p.begin(), s.p.begin() + static_cast<std::ptrdiff_t>(m) + 1},
              {s.w.begin(), s.w.begin() + static_cast<std::ptrdiff_t>(m) + 1}};
    EXPECT_FALSE(oracle(Restriction::wb, sub, {}));
    EXPECT_LT(n, m);
    const NatSet cm = content(std::span(s.text).first(m));
    EXPECT_TRUE(cm.intersected(s.w[m]).minus(s.w[n]).empty());
  }
  EXPECT_GT(seen, 0);
}

TEST(Check, ViolationsPersistAtLongerPrefixes) {
  Registry reg;
  std::mt19937_64 rng(13);
  for (int i = 0; i < 1000; ++i) {
    const Plain s = random_plain(reg, rng, 5);
    for (Restriction r : {Restriction::wb, Restriction::sem_conv, Restriction::cons, Restriction::syn_dec}) {
      bool violated = false;
      for (std::size_t len = 0; len <= 5; ++len) {
        const LearningSequence p(s.p.begin(), s.p.begin() + static_cast<std::ptrdiff_t>(len) + 1);
        const bool now = check(reg, r, p, prefix(s.text, len), nullptr, 4).is_violated();
        ASSERT_TRUE(!violated || now) << to_string(r);
        violated = now;
      }
    }
  }
}

TEST(Check, WitnessBasedExample) {
  Registry reg;
  const auto p = ind_sequence(reg, {{}, {0}, {0, 1}});
  EXPECT_TRUE(check(reg, Restriction::wb, p, {0, 1}, nullptr, 4).is_holds());
}

TEST(Check, SemanticConservativenessExample) {
  Registry reg;
  const auto p = ind_sequence(reg, {{0, 1}, {0}});
  const Verdict v = check(reg, Restriction::sem_conv, p, {0}, nullptr, 4);
  ASSERT_TRUE(v.is_violated());
  EXPECT_EQ(v.witness->n, std::size_t{0});
  EXPECT_EQ(v.witness->m, std::size_t{1});
}

TEST(Check, TargetCautiousAndExamples) {
  Registry reg;
  const Learner h = make_learner(reg, "ind-g");
  for (const auto& s : all_sequences({0, 1, 2}, true, 4))
    for (const auto& target : {Language::finite({0, 1, 2}), Language::finite({0, 1, 2, 5})})
      ASSERT_TRUE(check(reg, Restriction::caut_tar, run(h, s), s, &target, 4).is_holds());

  const Index e = reg.ind({1, 3});
  const LearningSequence p{e, e, e};
  EXPECT_TRUE(check(reg, Restriction::ex, p, {1, 3}, Language::finite({1, 3}), 4).is_holds());
  EXPECT_TRUE(check(reg, Restriction::ex, p, {1, 3}, Language::finite({1}), 4).is_violated());
  EXPECT_THROW(check(reg, Restriction::ex, p, {1, 3}, nullptr, 4), std::invalid_argument);
}

TEST(Check, BcToleratesSyntacticChanges) {
  Registry reg;
  const Index a = reg.ind({1});
  const LearningSequence p{reg.ind({}), reg.pad(a, 1), reg.pad(a, 2)};
  EXPECT_TRUE(check(reg, Restriction::bc, p, {1, P}, Language::finite({1}), 4).is_holds());
  EXPECT_TRUE(check(reg, Restriction::ex, p, {1, P}, Language::finite({1}), 4).is_holds());
  EXPECT_TRUE(check(reg, Restriction::wb, p, {1, P}, nullptr, 4).is_violated());
}

TEST(Check, UndefinedEntriesAreSkippedWithNote) {
  Registry reg;
  const LearningSequence p{std::nullopt, reg.ind({0}), reg.ind({0})};
  const Verdict v = check(reg, Restriction::sem_conv, p, {0, P}, nullptr, 4);
  EXPECT_TRUE(v.is_holds());
  ASSERT_EQ(v.notes.size(), 1u);
  EXPECT_NE(v.notes[0].find("partiality"), std::string::npos);
  const LearningSequence q{reg.ind({0}), std::nullopt};
  EXPECT_TRUE(check(reg, Restriction::ex, q, {0}, Language::finite({0}), 4).is_violated());
}

TEST(Check, UnsaturatedComparisonsAreInconclusive) {
  Registry reg;
  register_standard_families(reg);
  const Index even = reg.family("EVEN")[0];
  const LearningSequence p{even, reg.pad(even, 1)};
  EXPECT_TRUE(check(reg, Restriction::sem_conv, p, {0}, nullptr, 8).is_inconclusive());
  // A membership witness still decides a violation.
  const LearningSequence q{even, reg.ind({0})};
  EXPECT_TRUE(check(reg, Restriction::sem_conv, q, {0}, nullptr, 8).is_violated());
}

TEST(Learns, Examples) {
  Registry reg;
  const Learner h = make_learner(reg, "ind-sd");
  const Criterion wb_ex{Restriction::always, Restriction::wb, Success::ex};
  Bounds b;
  b.horizon = 4;
  EXPECT_TRUE(learns(reg, h, wb_ex, Language::finite({1, 3}), b).verdict.is_holds());

  const LearnResult even = learns(reg, h, wb_ex, even_language(), b);
  EXPECT_TRUE(even.success.is_violated());

  b.horizon = 0;
  const LearnResult vacuous = learns(reg, h, wb_ex, Language::finite({1}), b);
  EXPECT_TRUE(vacuous.restriction.is_holds());
  EXPECT_TRUE(vacuous.success.is_inconclusive());
}

TEST(Learns, GlobalScopeFindsOffTargetViolations) {
  Registry reg;
  const Learner h = make_learner(reg, "returning-g");
  Bounds b;
  b.horizon = 3;
  b.grace = 1;
  const Criterion crit{Restriction::syn_dec, Restriction::always, Success::ex};
  const LearnResult local = learns(reg, h, crit, Language::finite({0, 1}), b, ScopeSpec::on_target_texts());
  EXPECT_TRUE(local.verdict.is_holds());
  const LearnResult global = learns(reg, h, crit, Language::finite({0, 1}), b, ScopeSpec::over({0, 1}, 3));
  EXPECT_TRUE(global.verdict.is_violated());
  ASSERT_TRUE(global.global.is_violated());
  EXPECT_TRUE(global.global.witness->text.has_value());
}

TEST(Probe, ConsistentSequencesAgree) {
  Registry reg;
  std::mt19937_64 rng(21);
  int judged = 0;
  for (int i = 0; i < 3000; ++i) {
    const Plain s = random_plain(reg, rng, 4);
    const Verdict v = consistent_equivalence_probe(reg, s.p, s.text, 4);
    if (v.is_inconclusive()) continue;
    ++judged;
    ASSERT_TRUE(v.is_holds());
    ASSERT_EQ(oracle(Restriction::sem_wb, s, {}), oracle(Restriction::sem_conv, s, {}));
  }
  EXPECT_GT(judged, 0);
  Registry other;
  const auto p = ind_sequence(other, {{0, 1}, {1}});
  EXPECT_TRUE(consistent_equivalence_probe(other, p, {0}, 4).is_inconclusive());
}

TEST(Diagnostic, PauseExtensionOnEven) {
  Registry reg;
  const Learner h = make_learner(reg, "even-g");
  const Verdict v = pause_extension_diagnostic(reg, h, even_language(), 4, 3, 16);
  ASSERT_TRUE(v.is_violated());
  EXPECT_EQ(*v.witness->text, (Sequence{0, P, P, P}));
  const Learner careful = make_learner(reg, "ind-g");
  EXPECT_TRUE(pause_extension_diagnostic(reg, careful, even_language(), 4, 3, 16).is_holds());
}

TEST(Declarations, Validation) {
  Registry reg;
  const Learner h = make_learner(reg, "init-g");
  Bounds b;
  b.horizon = 3;
  const ScopeSpec scope = ScopeSpec::over({0, 1, 2}, 3);
  for (Property p : h.traits().declared)
    EXPECT_TRUE(validate_declaration(reg, h, p, init_languages(), b, scope).is_holds()) << to_string(p);
  // init-g overgeneralizes {1}: the declaration does not extend to it.
  EXPECT_TRUE(validate_declaration(reg, h, Property::target_cautious, {Language::finite({1})}, b, scope).is_violated());
}

TEST(Names, RoundTrip) {
  for (const auto& [r, name] : kRestrictionNames) EXPECT_EQ(parse_restriction(name), r);
  EXPECT_THROW(parse_restriction("Nope"), std::invalid_argument);
}
