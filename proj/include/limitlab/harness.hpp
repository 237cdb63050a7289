#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "limitlab/learners.hpp"
#include "limitlab/restrictions.hpp"
#include "limitlab/transforms.hpp"

namespace limitlab::harness {

using Json = nlohmann::ordered_json;

// Desk-scale caps on suite parameters.
inline constexpr std::size_t kMaxHorizon = 8;
inline constexpr std::size_t kMaxScopeLength = 7;
inline constexpr std::size_t kMaxAlphabet = 6;
inline constexpr std::size_t kMaxGrace = 16;
inline constexpr Nat kMaxBudget = 4096;

// ---------------------------------------------------------------------------
// JSON encodings

inline Json to_json(const Sequence& seq) {
  Json out = Json::array();
  for (Symbol s : seq) {
    if (is_pause(s)) out.push_back("#");
    else out.push_back(s);
  }
  return out;
}

inline Sequence sequence_from_json(const Json& j) {
  Sequence out;
  for (const auto& item : j) {
    if (item.is_string()) {
      if (item.get<std::string>() != "#") throw std::invalid_argument("sequence items are naturals or \"#\"");
      out.push_back(kPause);
    } else {
      out.push_back(static_cast<Symbol>(item.get<Nat>()));
    }
  }
  return out;
}

inline Json to_json(const NatSet& d) {
  Json out = Json::array();
  for (Nat x : d) out.push_back(x);
  return out;
}

inline NatSet natset_from_json(const Json& j) {
  std::vector<Nat> xs;
  for (const auto& item : j) xs.push_back(item.get<Nat>());
  return NatSet(std::move(xs));
}

inline Json to_json(const Verdict& v) {
  Json out;
  out["status"] = to_string(v.status);
  out["reason"] = v.reason;
  if (v.witness) {
    Json w;
    w["n"] = v.witness->n ? Json(*v.witness->n) : Json(nullptr);
    w["m"] = v.witness->m ? Json(*v.witness->m) : Json(nullptr);
    w["datum"] = v.witness->datum ? Json(*v.witness->datum) : Json(nullptr);
    w["text"] = v.witness->text ? to_json(*v.witness->text) : Json(nullptr);
    w["detail"] = v.witness->detail;
    out["witness"] = std::move(w);
  } else {
    out["witness"] = nullptr;
  }
  out["notes"] = v.notes;
  return out;
}

// Languages: {"finite": [..]}, {"initial": k}, {"progression": [start, step]}.
inline Language language_from_json(const Json& j) {
  const std::string name = j.value("name", std::string());
  if (j.contains("finite")) return Language::finite(natset_from_json(j.at("finite")), name);
  if (j.contains("initial")) return Language::initial_segment(j.at("initial").get<std::int64_t>());
  if (j.contains("progression")) {
    const auto& p = j.at("progression");
    return Language::progression(p.at(0).get<Nat>(), p.at(1).get<Nat>(), name);
  }
  throw std::invalid_argument("unknown language description " + j.dump());
}

inline Json finite_language_json(const NatSet& d) { return Json{{"finite", to_json(d)}}; }

// ---------------------------------------------------------------------------
// Workspace: a registry with its named families and learner chains

struct NamedLanguage {
  Json spec;
  Language language;
};

class Workspace {
 public:
  Workspace() {
    register_standard_families(reg_);
    for (std::int64_t k = 0; k <= kInitMax; ++k)
      families_["INIT"].push_back({Json{{"initial", k}}, Language::initial_segment(k)});
    families_["EVEN"].push_back({Json{{"progression", {0, 2}}, {"name", "EVEN"}}, even_language()});
  }
  Workspace(const Workspace&) = delete;
  Workspace& operator=(const Workspace&) = delete;

  Registry& registry() { return reg_; }

  // [{"name": .., "speed": "instant"|"stepwise", "members": [language, ..]}]
  // A member may carry "saturation" to override the derived step.
  void register_families(const Json& families) {
    for (const auto& fam : families) {
      const std::string name = fam.at("name").get<std::string>();
      if (families_.contains(name)) throw std::invalid_argument("family " + name + " is already registered");
      const std::string speed = fam.value("speed", std::string("instant"));
      if (speed != "instant" && speed != "stepwise") throw std::invalid_argument("unknown speed " + speed);
      std::vector<MemberSpec> members;
      std::vector<NamedLanguage> langs;
      for (const auto& m : fam.at("members")) {
        Language lang = language_from_json(m);
        MemberSpec spec = member_for(lang, speed == "instant" ? Speed::instant : Speed::stepwise);
        if (m.contains("saturation")) spec.saturation = m.at("saturation").get<Nat>();
        members.push_back(std::move(spec));
        langs.push_back({m, std::move(lang)});
      }
      reg_.register_family(name, std::move(members));
      families_[name] = std::move(langs);
    }
  }

  // Expands language descriptions; {"family": NAME} and {"subsets_of": [..]}
  // stand for several languages.
  std::vector<NamedLanguage> expand(const Json& languages) const {
    std::vector<NamedLanguage> out;
    for (const auto& j : languages) {
      if (j.contains("family")) {
        const auto it = families_.find(j.at("family").get<std::string>());
        if (it == families_.end()) throw std::invalid_argument("unknown family " + j.dump());
        out.insert(out.end(), it->second.begin(), it->second.end());
      } else if (j.contains("subsets_of")) {
        for (const auto& d : subsets_of(natset_from_json(j.at("subsets_of"))))
          out.push_back({finite_language_json(d), Language::finite(d)});
      } else {
        out.push_back({j, language_from_json(j)});
      }
    }
    return out;
  }

  // Source learner followed by each transform; stage 0 is the source.
  std::vector<Learner> chain(const std::string& learner, const std::vector<std::string>& transforms) {
    std::vector<Learner> stages{make_learner(reg_, learner)};
    for (const auto& t : transforms) stages.push_back(transform_entry(t).apply(reg_, stages.back()));
    return stages;
  }

 private:
  Registry reg_;
  std::map<std::string, std::vector<NamedLanguage>> families_;
};

// ---------------------------------------------------------------------------
// Random learning sequences

struct RandomSample {
  Sequence text;
  LearningSequence p;
};

struct RandomOptions {
  std::uint64_t seed = 0;
  std::size_t count = 1;
  NatSet alphabet;
  NatSet universe;
  std::size_t length = 4;
  // Force every hypothesis to contain the data seen so far.
  bool consistent = false;
};

/// Reproducible stream of (p, σ) pairs built from ind-indices over the
/// universe. Uses raw mt19937_64 output so streams agree across platforms.
inline std::vector<RandomSample> random_learning_sequences(Registry& reg, const RandomOptions& opt) {
  if (opt.universe.size() > 20) throw std::invalid_argument("universe too large");
  std::mt19937_64 rng(opt.seed);
  const auto symbols = symbols_of(opt.alphabet, true);
  std::vector<RandomSample> out;
  out.reserve(opt.count);
  for (std::size_t c = 0; c < opt.count; ++c) {
    RandomSample s;
    for (std::size_t i = 0; i < opt.length; ++i) s.text.push_back(symbols[rng() % symbols.size()]);
    NatSet previous;
    for (std::size_t i = 0; i <= opt.length; ++i) {
      NatSet w;
      if (i > 0 && rng() % 2 == 0) {
        w = previous;
      } else {
        const std::uint64_t bits = rng();
        for (std::size_t k = 0; k < opt.universe.size(); ++k)
          if (bits >> k & 1u) w.insert(opt.universe[k]);
      }
      if (opt.consistent) w.insert_all(content(std::span(s.text).first(i)));
      s.p.push_back(reg.ind(w));
      previous = std::move(w);
    }
    out.push_back(std::move(s));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Suite specification

struct CheckSpec {
  std::string kind;
  Json params = Json::object();
};

inline constexpr const char* kCheckKinds[] = {"learns", "global", "invariance", "containment", "pause-extension",
                                              "consistency-probe", "declarations"};

struct SuiteSpec {
  std::string name;
  std::string tag;
  std::optional<std::string> learner;
  std::vector<std::string> transforms;
  Json families = Json::array();
  Json languages = Json::array();
  NatSet alphabet;
  std::size_t max_len = 0;
  std::size_t horizon = 4;
  Nat budget = 32;
  std::size_t grace = 0;
  std::uint64_t seed = 0;
  std::vector<CheckSpec> checks;

  static SuiteSpec from_json(const Json& j) {
    SuiteSpec s;
    s.name = j.at("name").get<std::string>();
    s.tag = j.value("tag", std::string());
    if (j.contains("learner") && !j.at("learner").is_null()) s.learner = j.at("learner").get<std::string>();
    if (j.contains("transforms")) s.transforms = j.at("transforms").get<std::vector<std::string>>();
    if (j.contains("families")) s.families = j.at("families");
    if (j.contains("languages")) s.languages = j.at("languages");
    if (j.contains("scope")) {
      s.alphabet = natset_from_json(j.at("scope").at("alphabet"));
      s.max_len = j.at("scope").value("max_len", std::size_t{0});
    }
    s.horizon = j.value("horizon", s.horizon);
    s.budget = j.value("budget", s.budget);
    s.grace = j.value("grace", s.grace);
    s.seed = j.value("seed", s.seed);
    if (j.contains("checks"))
      for (const auto& c : j.at("checks")) {
        CheckSpec cs;
        cs.kind = c.at("kind").get<std::string>();
        for (const auto& [key, value] : c.items())
          if (key != "kind") cs.params[key] = value;
        s.checks.push_back(std::move(cs));
      }
    s.validate();
    return s;
  }

  Json to_json() const {
    Json j;
    j["name"] = name;
    j["tag"] = tag;
    j["learner"] = learner ? Json(*learner) : Json(nullptr);
    j["transforms"] = transforms;
    j["families"] = families;
    j["languages"] = languages;
    j["scope"] = Json{{"alphabet", harness::to_json(alphabet)}, {"max_len", max_len}};
    j["horizon"] = horizon;
    j["budget"] = budget;
    j["grace"] = grace;
    j["seed"] = seed;
    Json cs = Json::array();
    for (const auto& c : checks) {
      Json cj{{"kind", c.kind}};
      for (const auto& [key, value] : c.params.items()) cj[key] = value;
      cs.push_back(std::move(cj));
    }
    j["checks"] = std::move(cs);
    return j;
  }

  void validate() const {
    auto fail = [this](const std::string& what) { throw std::invalid_argument("suite " + name + ": " + what); };
    if (learner) catalog_entry(*learner);
    for (const auto& t : transforms) transform_entry(t);
    if (!learner && !transforms.empty()) fail("transforms need a source learner");
    if (horizon > kMaxHorizon) fail("horizon above " + std::to_string(kMaxHorizon));
    if (max_len > kMaxScopeLength) fail("scope length above " + std::to_string(kMaxScopeLength));
    if (alphabet.size() > kMaxAlphabet) fail("alphabet larger than " + std::to_string(kMaxAlphabet));
    if (grace > kMaxGrace) fail("grace above " + std::to_string(kMaxGrace));
    if (budget > kMaxBudget) fail("budget above " + std::to_string(kMaxBudget));
    for (const auto& c : checks) {
      bool known = false;
      for (const char* k : kCheckKinds) known = known || c.kind == k;
      if (!known) fail("unknown check kind " + c.kind);
      if (c.kind != "consistency-probe" && !learner) fail(c.kind + " needs a learner");
    }
  }
};

// ---------------------------------------------------------------------------
// Reports

struct CheckOutcome {
  std::size_t check = 0;
  std::string kind;
  std::string label;
  Verdict verdict;
  std::size_t sequences_checked = 0;
  // Everything replay needs besides the suite configuration.
  Json replay = nullptr;
};

struct SuiteReport {
  std::string name;
  std::string tag;
  std::string learner;
  std::vector<CheckOutcome> checks;
  double wall_ms = 0;
  Json config;

  Status status() const {
    VerdictAccumulator acc;
    for (const auto& c : checks) acc.add(Verdict{c.verdict.status, std::nullopt, {}, {}});
    return acc.result().status;
  }
  std::size_t sequences_checked() const {
    std::size_t n = 0;
    for (const auto& c : checks) n += c.sequences_checked;
    return n;
  }
};

struct Report {
  std::vector<SuiteReport> suites;

  bool any_violated() const {
    for (const auto& s : suites)
      if (s.status() == Status::violated) return true;
    return false;
  }

  // Same configuration and seed give the same JSON apart from "wall_ms".
  Json to_json(bool with_timing = true) const {
    Json out;
    std::size_t counts[3] = {0, 0, 0};
    Json suites_json = Json::array();
    for (const auto& s : suites) {
      Json sj;
      sj["name"] = s.name;
      sj["tag"] = s.tag;
      sj["learner"] = s.learner;
      sj["status"] = to_string(s.status());
      sj["sequences_checked"] = s.sequences_checked();
      if (with_timing) sj["wall_ms"] = s.wall_ms;
      Json checks = Json::array();
      for (const auto& c : s.checks) {
        ++counts[static_cast<int>(c.verdict.status)];
        Json cj;
        cj["check"] = c.check;
        cj["kind"] = c.kind;
        cj["label"] = c.label;
        Json v = harness::to_json(c.verdict);
        for (auto& [key, value] : v.items()) cj[key] = value;
        cj["sequences_checked"] = c.sequences_checked;
        cj["replay"] = c.replay;
        checks.push_back(std::move(cj));
      }
      sj["checks"] = std::move(checks);
      sj["config"] = s.config;
      suites_json.push_back(std::move(sj));
    }
    out["suites"] = std::move(suites_json);
    out["summary"] = Json{{"holds", counts[0]}, {"violated", counts[1]}, {"inconclusive", counts[2]}};
    return out;
  }
};

namespace detail {

inline Verdict text_check(const Registry& reg, const Learner& h, Restriction r, const Sequence& text,
                          const Language* target, Nat budget) {
  const LearningSequence p = run(h, text);
  if (r == Restriction::ex || r == Restriction::bc)
    for (std::size_t k = 0; k < p.size(); ++k)
      if (!p[k]) return Verdict::violated({.m = k, .text = text, .detail = "undefined on a text of the target"});
  return limitlab::detail::with_text(check(reg, r, p, text, target, budget), text);
}

inline Json restriction_replay(Restriction r, const Verdict& v, const Json& target) {
  if (!v.is_violated() || !v.witness || !v.witness->text) return nullptr;
  return Json{{"restriction", to_string(r)}, {"target", target}, {"text", to_json(*v.witness->text)}};
}

inline std::size_t stage_of(const CheckSpec& c, const std::vector<Learner>& stages, const char* key = "stage") {
  const auto last = static_cast<std::int64_t>(stages.size()) - 1;
  const std::int64_t stage = c.params.value(key, last);
  if (stage < 0 || stage > last) throw std::invalid_argument("stage out of range in " + c.kind);
  return static_cast<std::size_t>(stage);
}

inline Verdict probe_sample(const Registry& reg, const RandomSample& s, Nat budget) {
  if (!check(reg, Restriction::cons, s.p, s.text, nullptr, budget).is_holds())
    return Verdict::inconclusive("sample is not consistent");
  const bool wb = check(reg, Restriction::sem_wb, s.p, s.text, nullptr, budget).is_holds();
  const bool conv = check(reg, Restriction::sem_conv, s.p, s.text, nullptr, budget).is_holds();
  if (wb && !conv) return Verdict::violated({.text = s.text, .detail = "SemWb holds but SemConv does not"});
  return consistent_equivalence_probe(reg, s.p, s.text, budget);
}

inline RandomOptions probe_options(const SuiteSpec& spec, const CheckSpec& c) {
  RandomOptions opt;
  opt.seed = spec.seed;
  opt.count = c.params.value("count", std::size_t{1000});
  opt.alphabet = spec.alphabet;
  opt.universe = natset_from_json(c.params.value("universe", Json::array({0, 1, 2, 3})));
  opt.length = c.params.value("length", std::size_t{4});
  opt.consistent = c.params.value("consistent", true);
  return opt;
}

}  // namespace detail

/// Runs every check of a suite in a fresh workspace.
inline SuiteReport run_suite(const SuiteSpec& spec, unsigned workers = default_workers()) {
  const auto start = std::chrono::steady_clock::now();
  spec.validate();
  Workspace ws;
  ws.register_families(spec.families);
  Registry& reg = ws.registry();
  const auto langs = ws.expand(spec.languages);
  const std::vector<Learner> stages = spec.learner ? ws.chain(*spec.learner, spec.transforms) : std::vector<Learner>{};

  SuiteReport report;
  report.name = spec.name;
  report.tag = spec.tag;
  report.learner = stages.empty() ? "" : stages.back().name();
  report.config = spec.to_json();

  Bounds bounds;
  bounds.horizon = spec.horizon;
  bounds.budget = spec.budget;
  bounds.grace = spec.grace;
  bounds.workers = workers;
  const ScopeSpec scope = ScopeSpec::over(spec.alphabet, spec.max_len);

  for (std::size_t ci = 0; ci < spec.checks.size(); ++ci) {
    const CheckSpec& c = spec.checks[ci];
    auto add = [&](std::string label, Verdict v, std::size_t count, Json replay) {
      if (!replay.is_null()) replay["check"] = ci;
      report.checks.push_back({ci, c.kind, std::move(label), std::move(v), count, std::move(replay)});
    };

    if (c.kind == "learns") {
      const std::size_t stage = detail::stage_of(c, stages);
      const Learner& h = stages[stage];
      Criterion crit;
      crit.delta = parse_restriction(c.params.value("delta", std::string("T")));
      crit.success = c.params.value("success", std::string("Ex")) == "Bc" ? Success::bc : Success::ex;
      const std::string head = "learns(" + to_string(crit.delta) + "," + to_string(as_restriction(crit.success)) +
                               ")[" + h.name() + "] on ";
      for (const auto& nl : langs) {
        LearnResult r = learns(reg, h, crit, nl.language, bounds);
        Json replay = detail::restriction_replay(crit.delta, r.restriction, nl.spec);
        if (replay.is_null()) replay = detail::restriction_replay(as_restriction(crit.success), r.success, nl.spec);
        if (!replay.is_null()) replay["stage"] = stage;
        add(head + nl.language.name(), std::move(r.verdict), r.sequences_checked, std::move(replay));
      }
    } else if (c.kind == "global") {
      const std::size_t stage = detail::stage_of(c, stages);
      const Restriction r = parse_restriction(c.params.at("restriction").get<std::string>());
      auto [v, count] = check_everywhere(reg, stages[stage], r, scope, bounds);
      Json replay = detail::restriction_replay(r, v, nullptr);
      if (!replay.is_null()) replay["stage"] = stage;
      add("global " + to_string(r) + "[" + stages[stage].name() + "] over " + spec.alphabet.to_string() + "_#^" +
              std::to_string(spec.max_len),
          std::move(v), count, std::move(replay));
    } else if (c.kind == "invariance") {
      // Outputs must depend only on the chosen digest of the sequence.
      const std::size_t stage = detail::stage_of(c, stages);
      const Learner& h = stages[stage];
      const std::string under = c.params.value("under", std::string("Sd"));
      const Operator op = under == "Sd" ? Operator::set : under == "Psd" ? Operator::partial_set : Operator::gold;
      std::unordered_map<Digest, std::pair<Sequence, Hypothesis>, DigestHash> first;
      Verdict v = Verdict::holds();
      const auto all = all_sequences(spec.alphabet, true, spec.max_len);
      for (const auto& s : all) {
        const Hypothesis out = h.on(s);
        auto [it, fresh] = first.try_emplace(digest(op, s), s, out);
        if (!fresh && it->second.second != out) {
          v = Verdict::violated({.text = s, .detail = "differs from " + to_string(it->second.first) + " with the same " +
                                                     under + " digest"});
          add("invariance under " + under + "[" + h.name() + "]", v, all.size(),
              Json{{"stage", stage}, {"under", under}, {"texts", {to_json(it->second.first), to_json(s)}}});
          break;
        }
      }
      if (!v.is_violated()) add("invariance under " + under + "[" + h.name() + "]", v, all.size(), nullptr);
    } else if (c.kind == "containment") {
      // W of the checked stage inside W of the reference stage, prefix by prefix.
      const std::size_t stage = detail::stage_of(c, stages);
      const std::size_t of = detail::stage_of(c, stages, "of");
      for (const auto& nl : langs) {
        const NatSet support = nl.language.is_finite() ? nl.language.elements() : nl.language.smallest(spec.horizon);
        std::vector<Sequence> texts;
        for_each_sequence(symbols_of(support, true), spec.horizon, spec.horizon, [&](const Sequence& s) {
          texts.push_back(s);
          return false;
        });
        Json replay = nullptr;
        Verdict v = parallel_fold(texts.size(), workers, [&](std::size_t i) {
          const Sequence& s = texts[i];
          VerdictAccumulator acc;
          for (std::size_t n = 0; n <= s.size(); ++n) {
            const Hypothesis a = stages[stage].on(prefix(s, n));
            const Hypothesis b = stages[of].on(prefix(s, n));
            if (!a || !b) continue;
            const Truth t = reg.subset(*a, *b, spec.budget);
            if (t == Truth::no) return Verdict::violated({.n = n, .text = s, .detail = "not contained"});
            if (t == Truth::unknown) acc.add(Verdict::inconclusive("containment undecided within budget"));
          }
          return acc.take();
        });
        if (v.is_violated())
          replay = Json{{"stage", stage}, {"of", of}, {"text", to_json(*v.witness->text)}, {"n", *v.witness->n}};
        add("containment[" + stages[stage].name() + " in " + stages[of].name() + "] on " + nl.language.name(),
            std::move(v), texts.size(), std::move(replay));
      }
    } else if (c.kind == "pause-extension") {
      const std::size_t stage = detail::stage_of(c, stages);
      const std::size_t pauses = c.params.value("pauses", std::size_t{2});
      for (const auto& nl : langs) {
        Verdict v = pause_extension_diagnostic(reg, stages[stage], nl.language, spec.horizon, pauses, spec.budget);
        Json replay = nullptr;
        if (v.is_violated()) {
          const Sequence& text = *v.witness->text;
          replay = detail::restriction_replay(Restriction::caut_tar, v, finite_language_json(content(text)));
          replay["stage"] = stage;
        }
        add("pause-extension[" + stages[stage].name() + "] on " + nl.language.name(), std::move(v), 1,
            std::move(replay));
      }
    } else if (c.kind == "consistency-probe") {
      const auto samples = random_learning_sequences(reg, detail::probe_options(spec, c));
      std::size_t retained = 0;
      std::size_t with_sem_wb = 0;
      std::optional<std::size_t> bad;
      Verdict v = Verdict::holds();
      for (std::size_t i = 0; i < samples.size() && !bad; ++i) {
        Verdict one = detail::probe_sample(reg, samples[i], spec.budget);
        if (one.is_inconclusive()) continue;
        ++retained;
        if (check(reg, Restriction::sem_wb, samples[i].p, samples[i].text, nullptr, spec.budget).is_holds()) ++with_sem_wb;
        if (one.is_violated()) {
          bad = i;
          v = std::move(one);
        }
      }
      v.note("consistent samples: " + std::to_string(retained) + " of " + std::to_string(samples.size()) +
             ", SemWb held on " + std::to_string(with_sem_wb));
      if (retained == 0 && !bad) v = Verdict::inconclusive("no consistent sample in the stream");
      add("consistency-probe seed " + std::to_string(spec.seed), std::move(v), samples.size(),
          bad ? Json{{"sample", *bad}} : Json(nullptr));
    } else if (c.kind == "declarations") {
      // Declared properties of the source, checked on the suite languages and scope.
      const Learner& h = stages.front();
      std::vector<Language> fam;
      for (const auto& nl : langs) fam.push_back(nl.language);
      for (Property p : h.traits().declared) {
        Verdict v = validate_declaration(reg, h, p, fam, bounds, scope);
        add(std::string("declared ") + to_string(p) + "[" + h.name() + "]", std::move(v), 0, nullptr);
      }
    }
  }
  report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

/// Re-evaluates one recorded violation; Violated means it reproduced.
inline Verdict replay(const Json& config, const Json& witness) {
  const SuiteSpec spec = SuiteSpec::from_json(config);
  const CheckSpec& c = spec.checks.at(witness.at("check").get<std::size_t>());
  Workspace ws;
  ws.register_families(spec.families);
  Registry& reg = ws.registry();

  if (c.kind == "consistency-probe") {
    const auto samples = random_learning_sequences(reg, detail::probe_options(spec, c));
    return detail::probe_sample(reg, samples.at(witness.at("sample").get<std::size_t>()), spec.budget);
  }
  const auto stages = ws.chain(*spec.learner, spec.transforms);
  const Learner& h = stages.at(witness.at("stage").get<std::size_t>());

  if (witness.contains("restriction")) {
    const Restriction r = parse_restriction(witness.at("restriction").get<std::string>());
    const Sequence text = sequence_from_json(witness.at("text"));
    const Json& target = witness.at("target");
    if (target.is_null()) return detail::text_check(reg, h, r, text, nullptr, spec.budget);
    const auto langs = ws.expand(Json::array({target}));
    return detail::text_check(reg, h, r, text, &langs.front().language, spec.budget);
  }
  if (witness.contains("texts")) {
    const std::string under = witness.at("under").get<std::string>();
    const Operator op = under == "Sd" ? Operator::set : under == "Psd" ? Operator::partial_set : Operator::gold;
    const Sequence a = sequence_from_json(witness.at("texts").at(0));
    const Sequence b = sequence_from_json(witness.at("texts").at(1));
    if (digest(op, a) == digest(op, b) && h.on(a) != h.on(b))
      return Verdict::violated({.text = b, .detail = "outputs differ on equal digests"});
    return Verdict::holds();
  }
  if (witness.contains("of")) {
    const Learner& ref = stages.at(witness.at("of").get<std::size_t>());
    const Sequence text = prefix(sequence_from_json(witness.at("text")), witness.at("n").get<std::size_t>());
    const Hypothesis a = h.on(text);
    const Hypothesis b = ref.on(text);
    if (a && b && reg.subset(*a, *b, spec.budget) == Truth::no)
      return Verdict::violated({.n = text.size(), .text = text, .detail = "not contained"});
    return Verdict::holds();
  }
  throw std::invalid_argument("witness is not replayable: " + witness.dump());
}

// ---------------------------------------------------------------------------
// Built-in suites

inline std::vector<Json> builtin_suites() {
  const Json init_family = Json::array({Json{{"finite", Json::array()}}, Json{{"initial", 0}}, Json{{"initial", 1}},
                                        Json{{"initial", 2}}});
  const Json scope012 = Json{{"alphabet", {0, 1, 2}}, {"max_len", 4}};
  const Json scope0123 = Json{{"alphabet", {0, 1, 2, 3}}, {"max_len", 5}};
  auto learns = [](const char* delta, const char* success, int stage = -1) {
    Json j{{"kind", "learns"}, {"delta", delta}, {"success", success}};
    if (stage >= 0) j["stage"] = stage;
    return j;
  };
  auto global = [](const char* r) { return Json{{"kind", "global"}, {"restriction", r}}; };
  const Json declarations = Json{{"kind", "declarations"}};

  std::vector<Json> suites;
  suites.push_back({{"name", "hierarchy"},
                    {"tag", "consistent-equivalence"},
                    {"scope", {{"alphabet", {0, 1, 2}}, {"max_len", 0}}},
                    {"budget", 8},
                    {"seed", 0},
                    {"checks", {{{"kind", "consistency-probe"}, {"count", 1000}, {"length", 4}, {"universe", {0, 1, 2, 3}}}}}});
  const std::pair<const char*, Json> syndec_sources[] = {
      {"constant-g", Json::array({Json{{"initial", 2}}})},
      {"returning-g", Json::array({Json{{"subsets_of", {0, 1, 2}}}})},
      {"oscillating-g", Json::array({Json{{"finite", {0, 1}}}, Json{{"finite", {0, 2}}}, Json{{"finite", {1, 2}}},
                                     Json{{"finite", {0, 1, 2}}}})},
  };
  for (const auto& [learner, family] : syndec_sources)
    suites.push_back({{"name", std::string("syndec-") + learner},
                      {"tag", "syndec"},
                      {"learner", learner},
                      {"transforms", {"syndec"}},
                      {"languages", family},
                      {"scope", scope012},
                      {"horizon", 5},
                      {"grace", 1},
                      {"checks", {global("SynDec"), learns("T", "Ex", 0), learns("T", "Ex")}}});
  suites.push_back({{"name", "gold-witness"},
                    {"tag", "witness-based G"},
                    {"learner", "init-g"},
                    {"transforms", {"gold-witness"}},
                    {"languages", init_family},
                    {"scope", scope0123},
                    {"horizon", 6},
                    {"grace", 8},
                    {"checks", {declarations, global("Wb"), learns("Wb", "Ex")}}});
  suites.push_back({{"name", "psd-witness"},
                    {"tag", "witness-based Psd"},
                    {"learner", "init-psd"},
                    {"transforms", {"psd-witness"}},
                    {"languages", {{{"family", "INIT"}}, {{"subsets_of", {0, 1, 2}}}}},
                    {"scope", scope0123},
                    {"horizon", 6},
                    {"grace", 4},
                    {"checks", {declarations, global("Wb"), learns("Wb", "Ex")}}});
  suites.push_back({{"name", "psd-witness-settling"},
                    {"tag", "witness-based Psd"},
                    {"learner", "settling-psd"},
                    {"transforms", {"psd-witness"}},
                    {"languages", {{{"subsets_of", {0, 1, 2}}}}},
                    {"scope", scope0123},
                    {"horizon", 6},
                    {"grace", 4},
                    {"checks", {declarations, global("Wb"), learns("Wb", "Ex")}}});
  suites.push_back({{"name", "gold-to-psd"},
                    {"tag", "G to Psd"},
                    {"learner", "init-g"},
                    {"transforms", {"gold-to-psd"}},
                    {"languages", init_family},
                    {"scope", scope012},
                    {"horizon", 5},
                    {"grace", 2},
                    {"checks", {declarations, learns("CautTar", "Ex", 0), learns("CautTar", "Ex"), {{"kind", "invariance"}, {"under", "Psd"}}}}});
  suites.push_back({{"name", "sd-witness"},
                    {"tag", "witness-based Sd"},
                    {"learner", "ind-sd"},
                    {"transforms", {"sd-witness"}},
                    {"languages", {{{"subsets_of", {0, 1, 2, 3}}}}},
                    {"scope", scope0123},
                    {"horizon", 5},
                    {"checks", {global("Wb"), learns("Wb", "Ex")}}});
  suites.push_back({{"name", "semconv-globalize"},
                    {"tag", "global SemConv"},
                    {"learner", "init-g"},
                    {"transforms", {"semconv-globalize"}},
                    {"languages", init_family},
                    {"scope", scope0123},
                    {"horizon", 6},
                    {"checks",
                     {declarations, global("SemConv"), learns("SemConv", "Bc"), {{"kind", "containment"}, {"of", 0}}}}});
  suites.push_back({{"name", "semconv-to-sd"},
                    {"tag", "global SemConv Sd"},
                    {"learner", "init-g"},
                    {"transforms", {"semconv-globalize", "semconv-to-sd"}},
                    {"languages", init_family},
                    {"scope", scope0123},
                    {"horizon", 6},
                    {"checks", {{{"kind", "invariance"}, {"under", "Sd"}}, global("SemConv"), learns("SemConv", "Bc")}}});
  suites.push_back({{"name", "pause-extension"},
                    {"tag", "global target-cautiousness"},
                    {"learner", "even-g"},
                    {"languages", {{{"progression", {0, 2}}, {"name", "EVEN"}}}},
                    {"horizon", 4},
                    {"checks", {{{"kind", "pause-extension"}, {"pauses", 3}}}}});
  return suites;
}

inline std::optional<Json> builtin_suite(const std::string& name) {
  for (auto& s : builtin_suites())
    if (s.at("name") == name) return s;
  return std::nullopt;
}

}  // namespace limitlab::harness
