#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "limitlab/harness.hpp"

using namespace limitlab;
using namespace limitlab::harness;

namespace {

constexpr Symbol P = kPause;

Json load(const std::filesystem::path& path) {
  std::ifstream in(path);
  return Json::parse(in);
}

std::vector<Json> suites_in(const Json& file) {
  if (file.contains("suites")) return file.at("suites").get<std::vector<Json>>();
  return {file};
}

Json minimal_suite() {
  return Json{{"name", "mini"},
              {"learner", "ind-sd"},
              {"languages", Json::array({Json{{"finite", {1, 3}}}})},
              {"scope", Json{{"alphabet", {0, 1}}, {"max_len", 2}}},
              {"horizon", 3},
              {"checks", Json::array({Json{{"kind", "learns"}, {"delta", "Wb"}, {"success", "Ex"}}})}};
}

}  // namespace

TEST(Json, SequencesAndSets) {
  const Sequence s{1, P, 0};
  EXPECT_EQ(to_json(s).dump(), R"([1,"#",0])");
  EXPECT_EQ(sequence_from_json(to_json(s)), s);
  EXPECT_EQ(natset_from_json(to_json(NatSet{4, 2})), (NatSet{2, 4}));
  EXPECT_THROW(sequence_from_json(Json::parse(R"(["x"])")), std::exception);
}

TEST(Json, Languages) {
  EXPECT_EQ(language_from_json(Json::parse(R"({"finite":[3,1]})")).elements(), (NatSet{1, 3}));
  EXPECT_EQ(language_from_json(Json::parse(R"({"initial":2})")).elements(), (NatSet{0, 1, 2}));
  const Language prog = language_from_json(Json::parse(R"({"progression":[2,4],"name":"2 mod 4"})"));
  EXPECT_FALSE(prog.is_finite());
  EXPECT_TRUE(prog.contains(6));
  EXPECT_FALSE(prog.contains(4));
  EXPECT_EQ(prog.name(), "2 mod 4");
}

TEST(Json, VerdictEncoding) {
  const Json v = to_json(Verdict::violated({.n = 1, .m = 2, .text = Sequence{0, P}, .detail = "d"}));
  EXPECT_EQ(v.at("status"), "violated");
  EXPECT_EQ(v.at("witness").at("n"), 1);
  EXPECT_EQ(v.at("witness").at("text").dump(), R"([0,"#"])");
  EXPECT_TRUE(to_json(Verdict::holds()).at("witness").is_null());
}

TEST(SuiteSpec, RoundTrip) {
  const SuiteSpec a = SuiteSpec::from_json(minimal_suite());
  const SuiteSpec b = SuiteSpec::from_json(a.to_json());
  EXPECT_EQ(a.to_json(), b.to_json());
  EXPECT_EQ(b.horizon, 3u);
  EXPECT_EQ(b.checks.size(), 1u);
  for (const Json& builtin : builtin_suites()) {
    const SuiteSpec s = SuiteSpec::from_json(builtin);
    EXPECT_EQ(SuiteSpec::from_json(s.to_json()).to_json(), s.to_json()) << s.name;
  }
}

TEST(SuiteSpec, RejectsUnknownNamesAndOversizedScopes) {
  Json j = minimal_suite();
  j["learner"] = "nobody";
  EXPECT_THROW(SuiteSpec::from_json(j), std::invalid_argument);
  j = minimal_suite();
  j["transforms"] = {"nothing"};
  EXPECT_THROW(SuiteSpec::from_json(j), std::invalid_argument);
  j = minimal_suite();
  j["checks"][0]["kind"] = "vibes";
  EXPECT_THROW(SuiteSpec::from_json(j), std::invalid_argument);
  j = minimal_suite();
  j["horizon"] = kMaxHorizon + 1;
  EXPECT_THROW(SuiteSpec::from_json(j), std::invalid_argument);
  j = minimal_suite();
  j["scope"]["max_len"] = kMaxScopeLength + 1;
  EXPECT_THROW(SuiteSpec::from_json(j), std::invalid_argument);
}

TEST(RunSuite, EmptySuiteGivesEmptyReport) {
  const SuiteReport r = run_suite(SuiteSpec::from_json(Json{{"name", "empty"}}), 1);
  EXPECT_TRUE(r.checks.empty());
  EXPECT_EQ(r.status(), Status::holds);
  EXPECT_EQ(r.sequences_checked(), 0u);
}

TEST(RunSuite, MinimalSuiteHolds) {
  const SuiteReport r = run_suite(SuiteSpec::from_json(minimal_suite()), 1);
  ASSERT_EQ(r.checks.size(), 1u);
  EXPECT_TRUE(r.checks[0].verdict.is_holds());
  EXPECT_GT(r.sequences_checked(), 0u);
}

TEST(RunSuite, ReportsAreDeterministic) {
  Report a, b;
  for (const char* name : {"hierarchy", "syndec-returning-g", "pause-extension"}) {
    const SuiteSpec spec = SuiteSpec::from_json(*builtin_suite(name));
    a.suites.push_back(run_suite(spec, 1));
    b.suites.push_back(run_suite(spec, 2));
  }
  EXPECT_EQ(a.to_json(false).dump(), b.to_json(false).dump());
  EXPECT_TRUE(a.any_violated());
  const Json summary = a.to_json(false).at("summary");
  EXPECT_EQ(summary.at("violated"), 1);
}

TEST(RandomStreams, SeedsReproduce) {
  RandomOptions opt;
  opt.seed = 42;
  opt.count = 50;
  opt.alphabet = {0, 1, 2};
  opt.universe = {0, 1, 2, 3};
  Registry r1, r2;
  const auto a = random_learning_sequences(r1, opt);
  const auto b = random_learning_sequences(r2, opt);
  ASSERT_EQ(a.size(), 50u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    ASSERT_EQ(a[i].text, b[i].text);
    for (std::size_t k = 0; k < a[i].p.size(); ++k)
      ASSERT_EQ(r1.enumerate(*a[i].p[k], 0), r2.enumerate(*b[i].p[k], 0));
  }
  opt.seed = 43;
  Registry r3;
  const auto c = random_learning_sequences(r3, opt);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) differs = differs || a[i].text != c[i].text;
  EXPECT_TRUE(differs);
}

TEST(RandomStreams, ConsistencyOption) {
  RandomOptions opt;
  opt.count = 1000;
  opt.alphabet = {0, 1, 2};
  opt.universe = {0, 1, 2, 3};
  Registry reg;
  std::size_t consistent = 0;
  for (const auto& s : random_learning_sequences(reg, opt))
    consistent += check(reg, Restriction::cons, s.p, s.text, nullptr, 0).is_holds();
  EXPECT_GT(consistent, 0u);
  EXPECT_LT(consistent, 1000u);

  opt.consistent = true;
  for (const auto& s : random_learning_sequences(reg, opt))
    ASSERT_TRUE(check(reg, Restriction::cons, s.p, s.text, nullptr, 0).is_holds());
}

TEST(Replay, ReproducesRecordedViolations) {
  std::size_t replayed = 0;
  for (const char* name : {"pause-extension", "syndec-returning-g"}) {
    const Json config = *builtin_suite(name);
    const SuiteReport r = run_suite(SuiteSpec::from_json(config), 1);
    for (const auto& c : r.checks) {
      if (!c.verdict.is_violated()) continue;
      ASSERT_FALSE(c.replay.is_null()) << c.label;
      EXPECT_TRUE(replay(config, c.replay).is_violated()) << c.label;
      ++replayed;
    }
  }
  // The pause-extension violation, plus the source learner breaking SynDec.
  EXPECT_GE(replayed, 1u);
}

TEST(Replay, DetectsStaleWitnesses) {
  const Json config = *builtin_suite("pause-extension");
  const SuiteReport r = run_suite(SuiteSpec::from_json(config), 1);
  ASSERT_EQ(r.checks.size(), 1u);
  Json witness = r.checks[0].replay;
  witness["text"] = Json::array();
  EXPECT_FALSE(replay(config, witness).is_violated());
}

TEST(Workspace, FamiliesFromConfig) {
  Workspace ws;
  ws.register_families(Json::parse(R"([{"name":"F","speed":"stepwise",
      "members":[{"finite":[1,3]},{"finite":[0,3],"saturation":1}]}])"));
  const auto langs = ws.expand(Json::parse(R"([{"family":"F"},{"subsets_of":[0,1]},{"initial":1}])"));
  ASSERT_EQ(langs.size(), 2u + 4u + 1u);
  EXPECT_EQ(langs[0].language.elements(), (NatSet{1, 3}));
  const Index second = ws.registry().family("F")[1];
  EXPECT_EQ(ws.registry().saturation(second, 10), Nat{1});
  EXPECT_THROW(ws.expand(Json::parse(R"([{"family":"G"}])")), std::exception);
}

TEST(SampleSuites, ParseAndRun) {
  std::size_t files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(LIMITLAB_SUITES_DIR)) {
    if (entry.path().extension() != ".json") continue;
    ++files;
    for (const Json& j : suites_in(load(entry.path()))) {
      const SuiteSpec spec = SuiteSpec::from_json(j);
      const SuiteReport r = run_suite(spec, 1);
      EXPECT_FALSE(r.checks.empty()) << spec.name;
      for (const auto& c : r.checks) {
        if (c.verdict.is_violated()) {
          EXPECT_TRUE(replay(j, c.replay).is_violated()) << spec.name << ": " << c.label;
        }
      }
    }
  }
  EXPECT_GE(files, 3u);
}
