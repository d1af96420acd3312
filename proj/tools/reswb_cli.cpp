/*
 * Copyright 2026 the reswb authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "reswb/scenarios.hpp"

namespace {

using reswb::Bounds;
using reswb::CheckReport;
using reswb::Json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::string now_iso8601() {
  using std::chrono::system_clock;
  std::time_t t = system_clock::to_time_t(system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

struct ScenarioRun {
  std::string name;
  CheckReport report;
  std::string error;
};

using reswb::RunConfig;

unsigned worker_count(std::size_t jobs) {
  if (const char* env = std::getenv("RESWB_JOBS")) {
    long n = std::strtol(env, nullptr, 10);
    if (n > 0) return static_cast<unsigned>(n);
  }
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  return static_cast<unsigned>(std::min<std::size_t>(jobs, hw));
}

int run_check(const std::vector<std::string>& scenario_names,
              const RunConfig& base) {
  std::vector<ScenarioRun> runs(scenario_names.size());
  for (std::size_t i = 0; i < runs.size(); ++i)
    runs[i].name = scenario_names[i];

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= runs.size()) return;
      try {
        runs[i].report = reswb::run_scenario(runs[i].name, base.bounds);
      } catch (const std::exception& e) {
        runs[i].error = e.what();
      }
    }
  };
  unsigned jobs = worker_count(runs.size());
  if (jobs <= 1 || runs.size() <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  bool any_fail = false;
  std::ostringstream text;
  Json jreports = Json::array();
  for (auto& run : runs) {
    if (!run.error.empty()) {
      std::cerr << "error: " << run.error << "\n";
      return kExitUsage;
    }
    if (!base.checks.empty()) {
      std::vector<reswb::CheckEntry> kept;
      for (const auto& c : run.report.checks)
        for (const auto& want : base.checks)
          if (c.name == want) kept.push_back(c);
      run.report.checks = std::move(kept);
    }
    any_fail |= !run.report.ok();
    text << run.report.to_text();
    jreports.push_back(run.report.to_json(now_iso8601()));

    if (!run.report.ok()) {
      // Persist a witness for replay, preferring a replayable trace.
      std::vector<const reswb::CheckEntry*> failed;
      for (const auto& c : run.report.checks)
        if (c.status == reswb::CheckStatus::kFail && c.witness)
          failed.push_back(&c);
      std::stable_sort(failed.begin(), failed.end(),
                       [](const reswb::CheckEntry* a,
                          const reswb::CheckEntry* b) {
                         auto is_trace = [](const reswb::CheckEntry* e) {
                           return e->witness->contains("kind") &&
                                  (*e->witness)["kind"] == "trace";
                         };
                         return is_trace(a) > is_trace(b);
                       });
      for (const reswb::CheckEntry* cp : failed) {
        const auto& c = *cp;
        Json w;
        w["scenario"] = run.report.scenario;
        w["check"] = c.name;
        w["bounds"] = run.report.bounds.to_json();
        w["witness"] = *c.witness;
        std::string path = base.output_path.empty()
                               ? run.report.scenario + ".witness.json"
                               : base.output_path + ".witness.json";
        std::ofstream out(path);
        out << w.dump(2) << "\n";
        text << "witness written to " << path << "\n";
        break;
      }
    }
  }

  std::string rendered;
  if (base.output == "json") {
    rendered = (jreports.size() == 1 ? jreports[0] : jreports).dump(2) + "\n";
  } else {
    rendered = text.str();
  }
  if (!base.output_path.empty()) {
    std::ofstream out(base.output_path);
    out << rendered;
    std::cout << "report written to " << base.output_path << "\n";
  } else {
    std::cout << rendered;
  }
  return any_fail ? kExitFail : kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "reswb: a bounded-exhaustive workbench for resource algebras, "
      "morphisms, simulations and program triples"};
  app.require_subcommand(1);

  // check
  auto* check = app.add_subcommand("check", "run a scenario's check list");
  std::vector<std::string> scenarios_opt;
  std::string config_path, report_kind, out_path;
  std::optional<std::uint32_t> max_ts, max_nat, pool, unroll;
  std::optional<std::string> interference;
  check->add_option("--scenario", scenarios_opt,
                    "scenario name(s); see `list`");
  check->add_option("--config", config_path,
                    "JSON config file (flags override its values)");
  check->add_option("--max-timestamp", max_ts, "history timestamp bound");
  check->add_option("--max-nat", max_nat, "bounded-naturals cap");
  check->add_option("--pointer-pool", pool, "heap pointer pool size");
  check->add_option("--unroll", unroll, "loop unroll depth");
  check->add_option("--interference", interference, "full|none");
  check->add_option("--report", report_kind, "text|json (default text)");
  check->add_option("--out", out_path, "write the report to this path");

  // list
  auto* list = app.add_subcommand("list", "list the scenario catalog");

  // replay
  auto* replay_cmd =
      app.add_subcommand("replay", "re-execute a recorded failure witness");
  std::string witness_path;
  replay_cmd->add_option("--witness", witness_path, "witness JSON file")
      ->required();
  replay_cmd->add_option("--max-timestamp", max_ts, "must match the witness");
  replay_cmd->add_option("--max-nat", max_nat, "must match the witness");
  replay_cmd->add_option("--unroll", unroll, "must match the witness");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (list->parsed()) {
      for (const auto& def : reswb::scenario_registry())
        std::cout << def.name << "\t" << def.description << "\n";
      return kExitPass;
    }

    if (replay_cmd->parsed()) {
      std::ifstream in(witness_path);
      if (!in) {
        std::cerr << "error: cannot open " << witness_path << "\n";
        return kExitUsage;
      }
      Json w = Json::parse(in);
      Bounds recorded = Bounds::from_json(w.at("bounds"));
      if ((max_ts && *max_ts != recorded.max_timestamp) ||
          (max_nat && *max_nat != recorded.max_nat) ||
          (unroll && *unroll != recorded.unroll_depth)) {
        std::cerr << "error: bounds mismatch: witness was recorded at "
                  << recorded.to_json().dump() << "\n";
        return kExitUsage;
      }
      auto result = reswb::replay(w);
      std::cout << result.rendering;
      return result.reproduced ? kExitPass : kExitFail;
    }

    // check
    RunConfig cfg;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) {
        std::cerr << "error: cannot open " << config_path << "\n";
        return kExitUsage;
      }
      cfg = reswb::parse_config(Json::parse(in));
    }
    if (!scenarios_opt.empty()) cfg.scenario = scenarios_opt.front();
    std::vector<std::string> names =
        scenarios_opt.empty() ? std::vector<std::string>{cfg.scenario}
                              : scenarios_opt;
    if (names.empty() || names.front().empty()) {
      std::cerr << "error: no scenario given (use --scenario or --config)\n";
      return kExitUsage;
    }
    for (const auto& n : names)
      if (!reswb::find_scenario(n)) {
        std::cerr << "error: unknown scenario \"" << n << "\"\n";
        return kExitUsage;
      }
    if (max_ts) cfg.bounds.max_timestamp = *max_ts;
    if (max_nat) cfg.bounds.max_nat = *max_nat;
    if (pool) cfg.bounds.pointer_pool_size = *pool;
    if (unroll) cfg.bounds.unroll_depth = *unroll;
    if (interference) {
      if (*interference == "full") cfg.bounds.interference_full = true;
      else if (*interference == "none") cfg.bounds.interference_full = false;
      else {
        std::cerr << "error: --interference must be full or none\n";
        return kExitUsage;
      }
    }
    if (!report_kind.empty()) {
      if (report_kind != "text" && report_kind != "json") {
        std::cerr << "error: --report must be text or json\n";
        return kExitUsage;
      }
      cfg.output = report_kind;
    }
    if (!out_path.empty()) cfg.output_path = out_path;
    return run_check(names, cfg);
  } catch (const reswb::ConstructionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
