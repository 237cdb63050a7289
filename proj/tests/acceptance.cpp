// Acceptance run: one PASS/FAIL line per criterion, each under its time cap.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>

#include "limitlab/harness.hpp"

using namespace limitlab;
using namespace limitlab::harness;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

bool run_criterion(int number, const std::string& title, double cap_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.fail(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (out.pass && secs >= cap_seconds) out.fail("over the time cap");
  std::printf("%s criterion %d: %s (%.2f s, cap %.0f s)%s%s\n", out.pass ? "PASS" : "FAIL", number, title.c_str(), secs,
              cap_seconds, out.detail.empty() ? "" : " -- ", out.detail.c_str());
  std::fflush(stdout);
  return out.pass;
}

// Runs a builtin suite and requires every check to hold.
void require_suite(Outcome& out, const std::string& name) {
  const auto config = builtin_suite(name);
  if (!config) return out.fail("missing builtin suite " + name);
  const SuiteReport r = run_suite(SuiteSpec::from_json(*config));
  for (const auto& c : r.checks)
    if (!c.verdict.is_holds())
      return out.fail(name + ": " + c.label + " is " + to_string(c.verdict.status) +
                      (c.verdict.reason.empty() ? "" : " (" + c.verdict.reason + ")"));
  if (r.checks.empty()) out.fail(name + " has no checks");
}

Outcome foundations() {
  Outcome out;
  Registry reg;
  register_standard_families(reg);
  reg.register_family("MIXED", {member_for(Language::progression(1, 3), Speed::stepwise),
                                member_for(Language::finite({4, 9, 2}), Speed::stepwise),
                                member_for(Language::finite({0, 5}), Speed::instant)});
  const std::size_t base = reg.size();
  for (std::uint32_t id = 0; id < base; ++id)
    for (Nat k : {0u, 1u, 5u}) reg.pad(Index{id}, k);
  reg.pad(reg.pad(reg.family("EVEN")[0], 2), 3);

  std::mt19937_64 rng(1);
  std::map<std::uint32_t, NatSet> issued;
  auto issue = [&](const NatSet& d) {
    const Index e = reg.ind(d);
    const auto [it, fresh] = issued.try_emplace(e.id, d);
    if (it->second != d) out.fail("ind maps two sets to one id");
    if (reg.enumerate(e, 0) != d || reg.enumerate(e, 64) != d) out.fail("ind does not enumerate its set");
  };
  for (const auto& d : subsets_of(NatSet::range(0, 11))) issue(d);
  for (int i = 0; i < 20000; ++i) {
    const std::uint64_t bits = rng() & 0xffffffffu;
    NatSet d;
    for (Nat k = 0; k < 32; ++k)
      if (bits >> k & 1u) d.insert(k);
    issue(d);
  }
  std::set<NatSet> distinct;
  for (const auto& [id, d] : issued) distinct.insert(d);
  if (distinct.size() != issued.size()) out.fail("ind issues two ids for one set");

  for (std::uint32_t id = 0; id < reg.size(); ++id) {
    const Index e{id};
    NatSet prev;
    for (Nat t = 0; t <= 64; ++t) {
      NatSet now = reg.enumerate(e, t);
      if (!prev.is_subset_of(now)) out.fail("non-monotone enumeration of " + reg.describe(e));
      prev = std::move(now);
    }
    if (std::holds_alternative<PadKind>(reg.kind(e)))
      for (Nat t = 0; t <= 64; ++t)
        if (reg.enumerate(e, t) != reg.enumerate(reg.unpad1(e), t)) out.fail("pad is not transparent");
  }

  std::set<Nat> codes;
  for (Nat x = 0; x <= 200; ++x)
    for (Nat y = 0; y <= 200; ++y) {
      const Nat z = pair(x, y);
      if (proj1(z) != x || proj2(z) != y) out.fail("pairing projections disagree");
      codes.insert(z);
    }
  if (codes.size() != 201u * 201u) out.fail("pairing is not injective");
  return out;
}

Outcome hierarchy() {
  Outcome out;
  Registry reg;
  RandomOptions opt;
  opt.count = 1000;
  opt.alphabet = {0, 1, 2};
  opt.universe = {0, 1, 2, 3};
  opt.length = 4;
  opt.consistent = true;
  std::size_t disagreements = 0, wb_held = 0;
  for (const auto& s : random_learning_sequences(reg, opt)) {
    if (!check(reg, Restriction::cons, s.p, s.text, nullptr, 0).is_holds()) return out.fail("sample is not consistent"), out;
    const Verdict wb = check(reg, Restriction::sem_wb, s.p, s.text, nullptr, 0);
    const Verdict conv = check(reg, Restriction::sem_conv, s.p, s.text, nullptr, 0);
    if (wb.is_holds()) ++wb_held;
    if (wb.is_holds() && !conv.is_holds()) ++disagreements;
    if (!consistent_equivalence_probe(reg, s.p, s.text, 0).is_holds()) ++disagreements;
  }
  if (disagreements) out.fail(std::to_string(disagreements) + " disagreements");
  if (wb_held == 0 || wb_held == 1000) out.fail("degenerate sample: SemWb held on " + std::to_string(wb_held));
  require_suite(out, "hierarchy");
  out.detail = out.pass ? "SemWb held on " + std::to_string(wb_held) + " of 1000" : out.detail;
  return out;
}

Outcome syndec_suites() {
  Outcome out;
  for (const char* name : {"syndec-constant-g", "syndec-returning-g", "syndec-oscillating-g"}) require_suite(out, name);
  // The hand-built sources that return to abandoned hypotheses really do.
  Registry reg;
  Bounds b;
  for (const char* id : {"returning-g", "oscillating-g"})
    if (!check_everywhere(reg, make_learner(reg, id), Restriction::syn_dec, ScopeSpec::over({0, 1, 2}, 4), b)
             .first.is_violated())
      out.fail(std::string(id) + " unexpectedly syntactically decisive");
  return out;
}

Outcome psd_witness_suites() {
  Outcome out;
  require_suite(out, "psd-witness");
  require_suite(out, "psd-witness-settling");
  // Every head refuted: the output is ind of the content.
  Registry reg;
  const Learner w = psd_witness(reg, make_learner(reg, "settling-psd"));
  std::size_t hits = 0;
  for (const auto& d : subsets_of({0, 1, 2}))
    for (Nat t = d.size() + 1; t <= 6; ++t) {
      if (w.psd(d, t) != reg.ind(d)) return out.fail("expected ind" + d.to_string() + " at count " + std::to_string(t)), out;
      ++hits;
    }
  if (hits == 0) out.fail("fallback path not exercised");
  return out;
}

Outcome pause_extension() {
  Outcome out;
  Registry reg;
  auto expect_witness = [&](const Learner& h, const Language& lang) {
    const Verdict v = pause_extension_diagnostic(reg, h, lang, 4, 3, 64);
    if (!v.is_violated() || !v.witness || !v.witness->text) return out.fail(h.name() + ": no witness");
    const Sequence& text = *v.witness->text;
    const Language paused = Language::finite(content(text));
    if (!check(reg, Restriction::caut_tar, run(h, text), text, &paused, 64).is_violated())
      out.fail(h.name() + ": witness does not reproduce");
  };
  expect_witness(make_learner(reg, "even-g"), even_language());
  register_standard_families(reg);
  const Index even = reg.family("EVEN")[0];
  const Learner eager("eager", Operator::gold, [&reg, even](const Digest& d) -> Hypothesis {
    const NatSet c = content(std::get<GoldInfo>(d).seq);
    return c.size() >= 2 ? even : reg.ind(c);
  });
  expect_witness(eager, Language::finite({0, 2, 4}));
  return out;
}

}  // namespace

int main() {
  bool ok = true;
  ok &= run_criterion(1, "numbering invariants (monotone, pad, ind, pairing)", 5, foundations);
  ok &= run_criterion(2, "SemWb implies SemConv on 1000 consistent samples", 30, hierarchy);
  ok &= run_criterion(3, "syntactic decisiveness transform", 60, syndec_suites);
  ok &= run_criterion(4, "witness-based Gold-style transform", 180, [] {
    Outcome out;
    require_suite(out, "gold-witness");
    return out;
  });
  ok &= run_criterion(5, "witness-based Psd transform", 300, psd_witness_suites);
  ok &= run_criterion(6, "Gold-style to Psd transform", 60, [] {
    Outcome out;
    require_suite(out, "gold-to-psd");
    return out;
  });
  ok &= run_criterion(7, "witness-based Sd transform", 60, [] {
    Outcome out;
    require_suite(out, "sd-witness");
    return out;
  });
  ok &= run_criterion(8, "global semantic conservativeness transform", 300, [] {
    Outcome out;
    require_suite(out, "semconv-globalize");
    return out;
  });
  ok &= run_criterion(9, "set-driven pipeline", 300, [] {
    Outcome out;
    require_suite(out, "semconv-to-sd");
    return out;
  });
  ok &= run_criterion(10, "pause-extension witness", 5, pause_extension);
  std::printf("%s\n", ok ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
  return ok ? 0 : 1;
}
