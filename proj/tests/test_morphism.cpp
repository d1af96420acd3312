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

#include "reswb/catalog.hpp"
#include "reswb/scenarios.hpp"

using namespace reswb;

TEST_CASE("identity morphism satisfies the laws and is a unit") {
  Catalog cat{Bounds{}};
  auto id = identity_morphism(cat.spin());
  CHECK(check_morphism_laws(id).ok());
  for (const SubjState& s : cat.spin()->states())
    CHECK(*id.state_map(Val::unit(), s) == s);

  auto f1 = cat.f_n(1);
  CHECK(scenarios::morphisms_extensionally_equal(
            "right-unit", compose(*f1, id), *f1)
            .status == CheckStatus::kPass);
  CHECK(scenarios::morphisms_extensionally_equal(
            "left-unit", compose(identity_morphism(cat.sc()), *f1), *f1)
            .status == CheckStatus::kPass);
}

TEST_CASE("the counter-attaching morphisms satisfy the morphism laws") {
  Catalog cat{Bounds{}};
  for (std::uint32_t n : {1u, 2u, 42u})
    CHECK(check_morphism_laws(*cat.f_n(n)).ok());
}

TEST_CASE("a transition map inspecting the self component is not local") {
  Catalog cat{Bounds{}};
  auto f1 = cat.f_n(1);
  MorphismDef bad = *f1;
  bad.name = "bad";
  bad.trans_map = [](const Val&, const SubjState& sw,
                     const std::string& t) -> std::optional<std::string> {
    if (t == "lock_tr")
      return proj_state(sw, 2).self == Val::nat(0)
                 ? "lock_tr*incr_tr.1"
                 : "lock_tr*incr_tr.2";
    if (t == "unlock_tr") return "unlock_tr*id_tr";
    return "id_tr";
  };
  auto rep = check_morphism_laws(bad);
  const CheckEntry* e = rep.find("trans-map-locality:bad");
  REQUIRE(e);
  CHECK(e->status == CheckStatus::kFail);
}

TEST_CASE("the quiescence family satisfies the indexed laws") {
  Catalog cat{Bounds{}};
  auto g = cat.quiescence_family();
  auto rep = check_morphism_laws(*g);
  CHECK(rep.ok());
  // index injectivity is non-vacuous: several indices map somewhere
  const CheckEntry* inj = rep.find("index-injectivity:g");
  REQUIRE(inj);
  CHECK(inj->status == CheckStatus::kPass);

  // quiescence is literal: every mapped state has an empty other history,
  // its history is the index, and the private heap splits around the stack
  std::uint64_t mapped = 0;
  for (const Val& x : g->index_set) {
    for (const SubjState& sp : cat.priv()->states()) {
      auto sv = g->state_map(x, sp);
      if (!sv) continue;
      ++mapped;
      CHECK(sv->other.first() == Val::empty_map());
      CHECK(sv->self.first() == x);
      auto joined = map_disjoint_union(sv->self.second(), sv->joint);
      REQUIRE(joined);
      CHECK(*joined == sp.self);
      CHECK(sv->other.second() == sp.other);
    }
  }
  CHECK(mapped > 0);
}

TEST_CASE("composition is associative extensionally") {
  Catalog cat{Bounds{}};
  auto iota = cat.iota_csl();
  auto f = cat.spin_to_cslp();
  auto idp = identity_morphism(cat.spin_perm());
  CHECK(scenarios::morphisms_extensionally_equal(
            "assoc", compose(compose(*iota, *f), idp),
            compose(*iota, compose(*f, idp)))
            .status == CheckStatus::kPass);
  CHECK(check_morphism_laws(*cat.spin_to_csl()).ok());
}

TEST_CASE("environment closure: reflexive, self-fixed, and exhaustive") {
  Catalog cat{Bounds{}};
  auto spin = cat.spin();
  SubjState s{Val::empty_map(), Val::unit(), Val::empty_map()};
  auto reached = osteps(*spin, s);
  bool self_found = false;
  bool locked_by_env = false, unlocked_after = false;
  for (const SubjState& r : reached) {
    self_found |= r == s;
    CHECK(r.self == s.self);  // the environment never touches our log
    if (r.other == map_singleton(1, ev_lock())) locked_by_env = true;
    auto two = map_disjoint_union(map_singleton(1, ev_lock()),
                                  map_singleton(2, ev_unlock()));
    if (two && r.other == *two) unlocked_after = true;
  }
  CHECK(self_found);
  CHECK(locked_by_env);
  CHECK(unlocked_after);
}

TEST_CASE("counter-tracking predicates are simulations for f_n") {
  Catalog cat{Bounds{}};
  for (std::uint32_t n : {1u, 2u}) {
    auto sim = cat.counter_tracks_locks_sim(n, 0, Val::empty_map(),
                                            cat.f_n(n));
    auto rep = check_simulation(sim);
    CHECK(rep.ok());
    const CheckEntry* fwd = rep.checks.empty() ? nullptr : &rep.checks[0];
    REQUIRE(fwd);
    CHECK(fwd->stats["squares"].get<std::uint64_t>() > 0);
  }
}

TEST_CASE("the restriction relation is an invariant of the combined resource") {
  Catalog cat{Bounds{}};
  CHECK(check_invariant(cat.cslp(), "restriction", cat.inv_state_pred()).ok());

  SECTION("the always-true predicate is an invariant") {
    CHECK(check_invariant(cat.cslp(), "true",
                          [](const SubjState&) { return true; })
              .ok());
  }
  SECTION("a self-emptiness predicate is not") {
    CHECK_FALSE(check_invariant(cat.spin(), "self-empty",
                                [](const SubjState& s) {
                                  return s.self == Val::empty_map();
                                })
                    .ok());
  }
}

TEST_CASE("ownership/heap correspondence: simulation yes, invariant no") {
  Catalog cat{Bounds{}};
  CHECK(check_simulation(cat.csl_sim()).ok());
  auto rep = check_invariant(cat.csl(), "Sim", cat.sim_pred());
  REQUIRE_FALSE(rep.ok());
  // the counterexample mutates the acquired heap
  const CheckEntry* fwd = rep.find("diagram-forward:Sim");
  REQUIRE(fwd);
  REQUIRE(fwd->witness);
  CHECK((*fwd->witness)["transition"].get<std::string>().find("write_tr") !=
        std::string::npos);
}

TEST_CASE("stable source predicates transport along simulations") {
  Catalog cat{Bounds{}};
  auto sim = cat.counter_tracks_locks_sim(1, 0, Val::empty_map(), cat.f_n(1));
  auto e = check_stability_transport(sim, "laststamp>=1",
                                     [](const SubjState& s) {
                                       auto th =
                                           map_disjoint_union(s.self, s.other);
                                       return th && last_stamp(*th) >= 1;
                                     });
  CHECK(e.status == CheckStatus::kPass);
}
