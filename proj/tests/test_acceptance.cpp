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

// Acceptance suite: each case drives whole scenarios end to end at the
// default bounds and prints one verdict line, including the wall time
// against the scenario family's budget.

#include <catch2/catch_amalgamated.hpp>

#include <chrono>
#include <iostream>

#include "reswb/scenarios.hpp"

using namespace reswb;

namespace {

struct Stopwatch {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  double secs() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  }
};

bool all_ok(const std::vector<std::string>& names, std::string* why,
            std::vector<CheckReport>* out = nullptr) {
  for (const auto& name : names) {
    CheckReport rep = run_scenario(name, Bounds{});
    if (!rep.ok()) {
      for (const auto& c : rep.checks)
        if (c.status == CheckStatus::kFail) {
          *why = name + "/" + c.name;
          return false;
        }
    }
    if (out) out->push_back(std::move(rep));
  }
  return true;
}

void verdict(int criterion, const std::string& what, bool ok, double secs,
             double budget) {
  std::cout << "[criterion " << criterion << "] "
            << (ok ? "PASS" : "FAIL") << " " << what << " (" << secs
            << "s of " << budget << "s budget)" << std::endl;
}

}  // namespace

TEST_CASE("criterion 1: monoid and compatibility law suites") {
  Stopwatch w;
  std::string why;
  bool ok = all_ok({"pcm-laws-hist", "pcm-laws-heap", "pcm-laws-nat",
                    "pcm-laws-o", "pcm-laws-products", "pcm-compat-omega"},
                   &why);
  double t = w.secs();
  bool in_budget = t < 5.0;
  verdict(1, "pcm law suites" + (ok ? "" : " [" + why + "]"), ok && in_budget,
          t, 5.0);
  CHECK(ok);
  CHECK(in_budget);
}

TEST_CASE("criterion 2: transition and state-space suites") {
  Stopwatch w;
  std::string why;
  bool ok = all_ok({"resource-spin", "resource-spin-perm", "resource-counter",
                    "resource-cslx", "resource-stack", "resource-priv"},
                   &why);
  double t = w.secs();
  bool in_budget = t < 10.0;
  verdict(2, "resource suites" + (ok ? "" : " [" + why + "]"), ok && in_budget,
          t, 10.0);
  CHECK(ok);
  CHECK(in_budget);
}

TEST_CASE("criterion 3: morphism and simulation suites") {
  Stopwatch w;
  std::string why;
  std::vector<CheckReport> reps;
  bool ok = all_ok({"morph-laws", "sim-spin-counter", "sim-csl"}, &why, &reps);

  // The not-an-invariant witness must be present, not merely a pass flag.
  bool witnessed = false;
  for (const auto& rep : reps)
    if (const CheckEntry* e = rep.find("sim-not-invariant-witnessed"))
      witnessed = e->status == CheckStatus::kPass && e->witness.has_value();
  // The critical coupled-unlock case must actually fire.
  bool critical = false;
  for (const auto& rep : reps)
    if (const CheckEntry* e = rep.find("critical-unlock-close-exercised"))
      critical = e->status == CheckStatus::kPass &&
                 e->stats["fired"].get<std::uint64_t>() > 0;
  double t = w.secs();
  bool in_budget = t < 30.0;
  bool pass = ok && witnessed && critical && in_budget;
  verdict(3,
          std::string("morphism/simulation suites") +
              (ok ? "" : " [" + why + "]") +
              (witnessed ? "" : " [missing Sim counterexample]") +
              (critical ? "" : " [unlock*close never fired]"),
          pass, t, 30.0);
  CHECK(ok);
  CHECK(witnessed);
  CHECK(critical);
  CHECK(in_budget);
}

TEST_CASE("criterion 4: composite counter program end to end") {
  Stopwatch w;
  CheckReport rep = run_scenario("spin-fig4", Bounds{});
  bool ok = rep.ok();
  const CheckEntry* e = rep.find("counter-gains-three");
  bool genuine = e && e->status == CheckStatus::kPass &&
                 e->stats["finished_executions"].get<std::uint64_t>() > 0;

  CheckReport neg = run_scenario("fixtures-negative", Bounds{});
  const CheckEntry* mutated = neg.find("counter-gains-two-is-wrong");
  bool counterexampled = mutated && mutated->status == CheckStatus::kFail &&
                         mutated->witness &&
                         (*mutated->witness)["kind"] == "trace";
  double t = w.secs();
  bool in_budget = t < 120.0;
  verdict(4, "composite program gains exactly three",
          ok && genuine && counterexampled && in_budget, t, 120.0);
  CHECK(ok);
  CHECK(genuine);
  CHECK(counterexampled);
  CHECK(in_budget);
}

TEST_CASE("criterion 5: lock and unlock meet their history specs") {
  Stopwatch w;
  CheckReport rep = run_scenario("spin-lock-spec", Bounds{});
  bool ok = rep.ok();
  const CheckEntry* lk = rep.find("lock-logs-fresh-lock");
  bool genuine = lk && lk->status == CheckStatus::kPass &&
                 lk->stats["finished_executions"].get<std::uint64_t>() > 0;
  double t = w.secs();
  bool in_budget = t < 60.0;
  verdict(5, "lock/unlock specs", ok && genuine && in_budget, t, 60.0);
  CHECK(ok);
  CHECK(genuine);
  CHECK(in_budget);
}

TEST_CASE("criterion 6: exclusive locking by morphing") {
  Stopwatch w;
  CheckReport rep = run_scenario("csl-exclusive", Bounds{});
  bool ok = rep.ok();
  const CheckEntry* elim = rep.find("exunlock-failure-disjunct-unreachable");
  bool witnessed = elim && elim->status == CheckStatus::kPass &&
                   elim->stats["finished_executions"].get<std::uint64_t>() > 0;
  double t = w.secs();
  bool in_budget = t < 120.0;
  verdict(6, "exclusive lock/unlock specs", ok && witnessed && in_budget, t,
          120.0);
  CHECK(ok);
  CHECK(witnessed);
  CHECK(in_budget);
}

TEST_CASE("criterion 7: quiescent pushes leave one of the two layouts") {
  Stopwatch w;
  CheckReport rep = run_scenario("stack-quiescent", Bounds{});
  bool ok = rep.ok();
  const CheckEntry* both = rep.find("both-interleavings-reached");
  bool complete = both && both->status == CheckStatus::kPass;
  double t = w.secs();
  bool in_budget = t < 60.0;
  verdict(7, "quiescent stack layouts (both outcomes)",
          ok && complete && in_budget, t, 60.0);
  CHECK(ok);
  CHECK(complete);
  CHECK(in_budget);
}

TEST_CASE("criterion 8: stepping lemmas and the vrf rule suite") {
  Stopwatch w;
  CheckReport rep = run_scenario("semantics-lemmas", Bounds{});
  bool ok = rep.ok();
  bool enough = true;
  for (const char* rule : {"vrf_post", "vrf_ret", "vrf_bnd", "vrf_par",
                           "vrf_frame", "vrf_act", "vrf_morph", "vrf_cond"}) {
    const CheckEntry* e = rep.find(rule);
    if (!e || e->stats["instances"].get<std::uint64_t>() < 1000) {
      enough = false;
      break;
    }
  }
  double t = w.secs();
  bool in_budget = t < 120.0;
  verdict(8, "semantics lemmas + vrf rules (>=1000 instances each)",
          ok && enough && in_budget, t, 120.0);
  CHECK(ok);
  CHECK(enough);
  CHECK(in_budget);
}

TEST_CASE("criterion 9: byte-identical reports at identical bounds") {
  Stopwatch w;
  bool ok = true;
  for (const char* name :
       {"spin-fig4", "stack-quiescent", "sim-csl", "fixtures-negative"}) {
    std::string a = run_scenario(name, Bounds{}).to_json().dump();
    std::string b = run_scenario(name, Bounds{}).to_json().dump();
    if (a != b) {
      ok = false;
      break;
    }
  }
  verdict(9, "determinism of reports", ok, w.secs(), 120.0);
  CHECK(ok);
}
