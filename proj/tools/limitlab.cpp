// Command-line front end: run suites, list them, replay witnesses, and
// evaluate learner chains on single texts.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "limitlab/harness.hpp"

namespace {

using limitlab::harness::Json;

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path + " (not a file or built-in suite; see list-suites)");
  return Json::parse(in);
}

// A config file holds one suite object or {"suites": [...]}; a bare name
// selects a built-in suite, and "all" selects every built-in suite.
std::vector<Json> load_suites(const std::string& source) {
  if (source == "all") return limitlab::harness::builtin_suites();
  if (auto builtin = limitlab::harness::builtin_suite(source)) return {*builtin};
  Json j = read_json(source);
  if (j.contains("suites")) return j.at("suites").get<std::vector<Json>>();
  return {j};
}

limitlab::Sequence parse_text(const std::string& text) {
  limitlab::Sequence out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (item == "#") out.push_back(limitlab::kPause);
    else out.push_back(static_cast<limitlab::Symbol>(std::stoull(item)));
  }
  return out;
}

int run_command(const std::vector<std::string>& sources, const std::string& report_path, unsigned workers,
                bool no_timing) {
  limitlab::harness::Report report;
  for (const auto& source : sources)
    for (const auto& j : load_suites(source)) {
      auto spec = limitlab::harness::SuiteSpec::from_json(j);
      auto suite = limitlab::harness::run_suite(spec, workers);
      const char* label = suite.status() == limitlab::Status::violated ? "VIOLATED "
                          : suite.status() == limitlab::Status::holds  ? "HOLDS    "
                                                                       : "UNDECIDED";
      std::cout << label << " " << suite.name << "  (" << suite.sequences_checked() << " sequences, " << suite.wall_ms
                << " ms)\n";
      for (const auto& c : suite.checks)
        if (!c.verdict.is_holds()) {
          std::cout << "    " << limitlab::to_string(c.verdict.status) << ": " << c.label;
          if (c.verdict.witness) {
            const auto& w = *c.verdict.witness;
            if (w.text) std::cout << " text=" << limitlab::to_string(*w.text);
            if (!w.detail.empty()) std::cout << " (" << w.detail << ")";
          }
          if (!c.verdict.reason.empty()) std::cout << " [" << c.verdict.reason << "]";
          std::cout << "\n";
        }
      report.suites.push_back(std::move(suite));
    }
  const Json out = report.to_json(!no_timing);
  if (!report_path.empty()) {
    std::ofstream f(report_path);
    f << out.dump(2) << "\n";
  }
  std::cout << "summary: " << out.at("summary").dump() << "\n";
  return report.any_violated() ? 1 : 0;
}

int replay_command(const std::string& path) {
  const Json j = read_json(path);
  std::vector<std::pair<Json, Json>> items;  // (config, witness)
  if (j.contains("suites")) {
    for (const auto& s : j.at("suites"))
      for (const auto& c : s.at("checks"))
        if (c.at("status") == "violated" && !c.at("replay").is_null()) items.emplace_back(s.at("config"), c.at("replay"));
  } else {
    items.emplace_back(j.at("config"), j.at("witness"));
  }
  int missed = 0;
  for (const auto& [config, witness] : items) {
    const auto v = limitlab::harness::replay(config, witness);
    const bool reproduced = v.is_violated();
    missed += reproduced ? 0 : 1;
    std::cout << (reproduced ? "reproduced " : "NOT reproduced ") << config.at("name").get<std::string>() << " "
              << witness.dump() << "\n";
  }
  std::cout << items.size() - static_cast<std::size_t>(missed) << " of " << items.size() << " witnesses reproduced\n";
  return missed == 0 ? 0 : 1;
}

int eval_command(const std::string& learner, const std::vector<std::string>& transforms, const std::string& text,
                 limitlab::Nat budget) {
  limitlab::harness::Workspace ws;
  const auto stages = ws.chain(learner, transforms);
  const auto& h = stages.back();
  const auto seq = parse_text(text);
  auto& reg = ws.registry();
  std::cout << h.name() << " (" << limitlab::to_string(h.op()) << ")\n";
  for (std::size_t i = 0; i <= seq.size(); ++i) {
    const auto head = limitlab::prefix(seq, i);
    const auto e = h.on(head);
    std::cout << "  " << limitlab::to_string(head) << " -> ";
    if (!e) {
      std::cout << "undefined\n";
      continue;
    }
    const auto w = reg.window(*e, budget);
    std::cout << reg.describe(*e) << "  W=" << w.elements.to_string() << (w.saturated ? "" : " (not saturated)") << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"limitlab: finite-horizon workbench for learning in the limit"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run suites from config files or built-in names ('all' for every built-in)");
  std::vector<std::string> sources;
  std::string report_path;
  unsigned workers = limitlab::default_workers();
  bool no_timing = false;
  run->add_option("suites", sources, "config paths or built-in suite names")->required();
  run->add_option("-r,--report", report_path, "write the JSON report here");
  run->add_option("-j,--workers", workers, "worker threads")->check(CLI::PositiveNumber);
  run->add_flag("--no-timing", no_timing, "omit wall-clock fields from the report");

  auto* list = app.add_subcommand("list-suites", "list built-in suites, learners and transforms");

  auto* replay = app.add_subcommand("replay", "re-evaluate the violations recorded in a report or witness file");
  std::string replay_path;
  replay->add_option("file", replay_path, "report or witness JSON")->required();

  auto* eval = app.add_subcommand("eval", "show a learner chain's hypotheses along one text");
  std::string learner;
  std::vector<std::string> transforms;
  std::string text;
  limitlab::Nat budget = 32;
  eval->add_option("-l,--learner", learner, "source learner id")->required();
  eval->add_option("-t,--transform", transforms, "transform ids, applied in order");
  eval->add_option("text", text, "comma-separated items, '#' for a pause")->required();
  eval->add_option("-b,--budget", budget, "enumeration budget");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return run_command(sources, report_path, workers, no_timing);
    if (*replay) return replay_command(replay_path);
    if (*eval) return eval_command(learner, transforms, text, budget);
    if (*list) {
      std::cout << "suites:\n";
      for (const auto& s : limitlab::harness::builtin_suites())
        std::cout << "  " << s.at("name").get<std::string>() << "  [" << s.at("tag").get<std::string>() << "]\n";
      std::cout << "learners:\n";
      for (const auto& e : limitlab::learner_catalog())
        std::cout << "  " << e.id << " (" << limitlab::to_string(e.op) << ")  " << e.description << "\n";
      std::cout << "transforms:\n";
      for (const auto& t : limitlab::transform_catalog()) std::cout << "  " << t.id << "  " << t.description << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
