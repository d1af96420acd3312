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

#include <catch2/catch_amalgamated.hpp>

#include "reswb/scenarios.hpp"

using namespace reswb;

TEST_CASE("config parsing: defaults, overrides, and rejections") {
  RunConfig cfg = parse_config(Json{{"scenario", "spin-fig4"}});
  CHECK(cfg.scenario == "spin-fig4");
  CHECK(cfg.bounds.max_timestamp == 4);
  CHECK(cfg.bounds.max_nat == 8);
  CHECK(cfg.bounds.pointer_pool_size == 2);
  CHECK(cfg.bounds.unroll_depth == 3);
  CHECK(cfg.bounds.interference_full);

  CHECK_THROWS_AS(parse_config(Json{{"scenario", "nope"}}), ConstructionError);
  CHECK_THROWS_AS(parse_config(Json{{"scenario", "spin-fig4"},
                                    {"zounds", 3}}),
                  ConstructionError);
  CHECK_THROWS_AS(
      parse_config(Json{{"scenario", "spin-fig4"},
                        {"bounds", Json{{"max_timestamp", 0}}}}),
      ConstructionError);

  RunConfig z = parse_config(Json{{"scenario", "spin-fig4"},
                                  {"bounds", Json{{"unroll_depth", 0}}}});
  CHECK(z.bounds.unroll_depth == 0);
}

TEST_CASE("unknown scenarios are rejected") {
  CHECK_THROWS_AS(run_scenario("nope", Bounds{}), ConstructionError);
}

TEST_CASE("the scenario catalog is stable-sorted") {
  const auto& defs = scenario_registry();
  for (std::size_t i = 1; i < defs.size(); ++i)
    CHECK(defs[i - 1].name < defs[i].name);
}

TEST_CASE("zero unrolling is a flagged vacuous pass") {
  Bounds b;
  b.unroll_depth = 0;
  CheckReport rep = run_scenario("spin-fig4", b);
  REQUIRE(rep.checks.size() == 1);
  CHECK(rep.checks[0].status == CheckStatus::kVacuous);
  CHECK(rep.checks[0].stats["note"].get<std::string>().find("no finished") !=
        std::string::npos);
  CHECK(rep.ok());
}

TEST_CASE("reports are deterministic for fixed scenario and bounds") {
  for (const char* name : {"pcm-laws-hist", "spin-fig4", "sim-csl"}) {
    CheckReport a = run_scenario(name, Bounds{});
    CheckReport b = run_scenario(name, Bounds{});
    CHECK(a.to_json().dump() == b.to_json().dump());
  }
}

TEST_CASE("exploration statistics grow with the bounds") {
  Bounds small;
  small.max_timestamp = 3;
  CheckReport a = run_scenario("spin-lock-spec", small);
  CheckReport b = run_scenario("spin-lock-spec", Bounds{});
  const CheckEntry* ea = a.find("lock-logs-fresh-lock");
  const CheckEntry* eb = b.find("lock-logs-fresh-lock");
  REQUIRE(ea);
  REQUIRE(eb);
  CHECK(ea->stats["instances"].get<std::uint64_t>() <=
        eb->stats["instances"].get<std::uint64_t>());
  CHECK(ea->stats["configs"].get<std::uint64_t>() <=
        eb->stats["configs"].get<std::uint64_t>());
}

TEST_CASE("stability checks match their examples") {
  Catalog cat{Bounds{}};
  // the lock precondition shape is stable
  Val h = Val::empty_map();
  CHECK(check_stability(*cat.spin(), "pre",
                        [h](const SubjState& s) {
                          auto th = map_disjoint_union(s.self, s.other);
                          return s.self == h && th && last_stamp(*th) >= 1;
                        })
            .ok());
  // a lower bound on the environment's log is stable
  CHECK(check_stability(*cat.spin(), "env-bound",
                        [](const SubjState& s) {
                          return last_stamp(s.other) >= 2;
                        })
            .ok());
  // emptiness of the environment's log is not
  auto rep = check_stability(*cat.spin(), "env-empty",
                             [](const SubjState& s) {
                               return s.other == Val::empty_map();
                             });
  REQUIRE_FALSE(rep.ok());
  REQUIRE(rep.checks[0].witness);
}

TEST_CASE("witnesses replay to the recorded verdict") {
  CheckReport rep = run_scenario("fixtures-negative", Bounds{});
  const CheckEntry* wrong = rep.find("counter-gains-two-is-wrong");
  REQUIRE(wrong);
  REQUIRE(wrong->status == CheckStatus::kFail);
  REQUIRE(wrong->witness);
  CHECK((*wrong->witness)["kind"] == "trace");

  Json file;
  file["scenario"] = "fixtures-negative";
  file["check"] = "counter-gains-two-is-wrong";
  file["bounds"] = Bounds{}.to_json();
  file["witness"] = *wrong->witness;
  ReplayResult r = replay(file);
  CHECK(r.reproduced);
  CHECK(r.rendering.find("failure reproduced") != std::string::npos);

  SECTION("an empty trace renders the initial state only") {
    Json w = *wrong->witness;
    w["steps"] = Json::array();
    Json file2 = file;
    file2["witness"] = w;
    ReplayResult r2 = replay(file2);
    CHECK_FALSE(r2.reproduced);  // a drifted witness does not reproduce
    CHECK(r2.rendering.find("initial:") != std::string::npos);
  }
}

TEST_CASE("report JSON carries the documented shape") {
  CheckReport rep = run_scenario("pcm-laws-o", Bounds{});
  Json j = rep.to_json("2026-01-01T00:00:00Z");
  CHECK(j.contains("scenario"));
  CHECK(j.contains("bounds"));
  CHECK(j.contains("timestamp"));
  REQUIRE(j.contains("checks"));
  for (const auto& c : j["checks"]) {
    CHECK(c.contains("name"));
    CHECK(c.contains("anchor"));
    CHECK(c.contains("status"));
    CHECK(c.contains("stats"));
    std::string st = c["status"].get<std::string>();
    CHECK((st == "pass" || st == "fail" || st == "vacuous"));
  }
  // excluding the timestamp, rendering is reproducible
  CHECK(rep.to_json().dump() ==
        run_scenario("pcm-laws-o", Bounds{}).to_json().dump());
}

TEST_CASE("interference can be switched off for quiescent runs") {
  Bounds quiet;
  quiet.interference_full = false;
  Catalog cat{quiet};
  auto spin = cat.spin();
  for (const SubjState& s : spin->states()) {
    int i = spin->state_index(s);
    // under no interference, stabilization is pointwise truth
    CHECK(stab(*spin, [](const SubjState&) { return false; }, i, false) ==
          false);
    CHECK(stab(*spin, [&s](const SubjState& x) { return x == s; }, i, false));
  }
  CheckReport rep = run_scenario("spin-fig4", quiet);
  CHECK(rep.ok());
}
