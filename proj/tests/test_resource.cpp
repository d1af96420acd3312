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

using namespace reswb;

TEST_CASE("history abbreviations behave per their definitions") {
  CHECK(fresh_stamp(Val::empty_map()) == 1);
  CHECK_FALSE(omega(Val::empty_map()));
  CHECK(alternate(Val::empty_map()));
  Val good = map_set(map_singleton(1, ev_lock()), 2, ev_unlock());
  CHECK(alternate(good));
  Val bad = map_set(map_singleton(1, ev_lock()), 2, ev_lock());
  CHECK_FALSE(alternate(bad));
  CHECK(omega(map_singleton(1, ev_lock())));
}

TEST_CASE("spin lock state space and erasure") {
  Catalog cat{Bounds{}};
  auto spin = cat.spin();
  CHECK(check_state_space(*spin).ok());

  for (const SubjState& s : spin->states()) {
    auto th = map_disjoint_union(s.self, s.other);
    REQUIRE(th);
    auto h = spin->erase(s);
    REQUIRE(h);
    CHECK(*h == map_singleton(Catalog::kLockPtr, Val::boolean(omega(*th))));
  }
}

TEST_CASE("spin transitions satisfy the transition laws") {
  Catalog cat{Bounds{}};
  auto spin = cat.spin();
  for (const Transition& t : spin->transitions())
    CHECK(check_transition(*spin, t).ok());

  SECTION("lock adds a fresh lock entry only when free") {
    const Transition* lock = spin->transition("lock_tr");
    SubjState free{Val::empty_map(), Val::unit(), Val::empty_map()};
    StepOut r = lock->step(free);
    REQUIRE(r.ok());
    CHECK(r.next.self == map_singleton(1, ev_lock()));
    SubjState taken{map_singleton(1, ev_lock()), Val::unit(),
                    Val::empty_map()};
    CHECK_FALSE(lock->step(taken).ok());
  }

  SECTION("a transition mutating the other component is rejected") {
    Transition bad;
    bad.name = "steal_tr";
    bad.step = [](const SubjState& s) -> StepOut {
      if (s.other.entries().empty()) return StepOut::blocked();
      auto es = s.other.entries();
      Val::MapRep keep(es.begin() + 1, es.end());
      return StepOut::stepped(SubjState{
          map_set(s.self, es[0].first, es[0].second), s.joint,
          Val::map(std::move(keep))});
    };
    auto rep = check_transition(*spin, bad);
    const CheckEntry* e = rep.find("other-fixity:steal_tr");
    REQUIRE(e);
    CHECK(e->status == CheckStatus::kFail);
  }
}

TEST_CASE("actions: effects, locality and erasure to reference commands") {
  Catalog cat{Bounds{}};
  auto spin = cat.spin();
  auto trylock = cat.trylock_act();
  auto unlock = cat.unlock_act();

  SubjState free{Val::empty_map(), Val::unit(), Val::empty_map()};
  auto eff = apply_action(*spin, *trylock, free);
  REQUIRE(eff);
  CHECK(eff->second == Val::boolean(true));
  CHECK(map_has(eff->first.self, 1));

  SubjState taken{map_singleton(1, ev_lock()), Val::unit(), Val::empty_map()};
  auto eff2 = apply_action(*spin, *trylock, taken);
  REQUIRE(eff2);
  CHECK(eff2->second == Val::boolean(false));
  CHECK(eff2->first == taken);

  CHECK(check_action_local(*spin, *trylock).ok());
  CHECK(check_action_local(*spin, *unlock).ok());
  CHECK(check_erases_to(*spin, *trylock, Catalog::cas_rmw).ok());
  CHECK(check_erases_to(*spin, *unlock, Catalog::write_false_rmw).ok());

  SECTION("an action branching on private state is not local") {
    ActionDef bad{"selfish",
                  [](const SubjState& s)
                      -> std::optional<std::pair<std::string, Val>> {
                    return std::make_pair(
                        std::string("id_tr"),
                        Val::boolean(s.self == Val::empty_map()));
                  },
                  {Val::boolean(false), Val::boolean(true)}};
    CHECK_FALSE(check_action_local(*spin, bad).ok());
  }

  SECTION("the wrong reference command is caught") {
    CHECK_FALSE(
        check_erases_to(*spin, *trylock, Catalog::write_false_rmw).ok());
  }
}

TEST_CASE("coupling runs both halves simultaneously") {
  Catalog cat{Bounds{}};
  auto sc = cat.sc();
  const Transition* both = sc->transition("lock_tr*incr_tr.1");
  REQUIRE(both);
  SubjState s = pair_state(
      SubjState{Val::empty_map(), Val::unit(), Val::empty_map()},
      SubjState{Val::nat(2), Val::unit(), Val::nat(0)});
  StepOut r = both->step(s);
  REQUIRE(r.ok());
  CHECK(proj_state(r.next, 1).self == map_singleton(1, ev_lock()));
  CHECK(proj_state(r.next, 2).self == Val::nat(3));

  SECTION("coupling with the idle transition acts on one side") {
    const Transition* unl = sc->transition("unlock_tr*id_tr");
    SubjState s2 = pair_state(
        SubjState{map_singleton(1, ev_lock()), Val::unit(), Val::empty_map()},
        SubjState{Val::nat(2), Val::unit(), Val::nat(0)});
    StepOut r2 = unl->step(s2);
    REQUIRE(r2.ok());
    CHECK(proj_state(r2.next, 2) == proj_state(s2, 2));
    CHECK(map_has(proj_state(r2.next, 1).self, 2));
  }

  SECTION("a blocked half blocks the coupling") {
    SubjState staken = pair_state(
        SubjState{map_singleton(1, ev_lock()), Val::unit(), Val::empty_map()},
        SubjState{Val::nat(0), Val::unit(), Val::nat(0)});
    CHECK_FALSE(both->step(staken).ok());
  }
}

TEST_CASE("tensor state spaces are products with disjoint-union erasure") {
  Catalog cat{Bounds{}};
  auto sc = cat.sc();
  for (const SubjState& s : sc->states()) {
    CHECK(cat.spin()->member(proj_state(s, 1)));
    CHECK(cat.counter()->member(proj_state(s, 2)));
    CHECK(pair_state(proj_state(s, 1), proj_state(s, 2)) == s);
    auto h = sc->erase(s);
    REQUIRE(h);
  }

  SECTION("a unit-like resource tensors to an isomorphic space") {
    auto unit_res = std::make_shared<ResourceDef>(
        "One", unit_pcm(), std::vector<Val>{Val::unit()},
        StateSpace{[](const SubjState&) { return true; },
                   [](const SubjState&) -> std::optional<Val> {
                     return Val::empty_map();
                   }},
        std::vector<Transition>{});
    auto t = tensor(cat.spin(), unit_res, {{"id_tr", "id_tr"}});
    CHECK(t->states().size() == cat.spin()->states().size());
  }
}

TEST_CASE("sub-resources restrict the space and expose the inclusion") {
  Catalog cat{Bounds{}};
  const SubResource& slice = cat.csl_slice();
  CHECK(slice.resource->states().size() < cat.cslp()->states().size());
  for (const SubjState& s : slice.resource->states()) {
    CHECK(cat.cslp()->member(s));
    CHECK(slice.pcm.rel(s.self, s.other));
  }
  // iota: inclusion on states, identity on transitions
  for (const SubjState& s : slice.resource->states()) {
    auto img = slice.iota.state_map(Val::unit(), s);
    REQUIRE(img);
    CHECK(*img == s);
  }
  CHECK(*slice.iota.trans_map(Val::unit(), slice.resource->states().front(),
                              "lock_tr*open_tr") == "lock_tr*open_tr");

  SECTION("the trivial relation leaves the space unchanged") {
    auto spin = cat.spin();
    SubResource sub =
        sub_resource(spin, defined_rel(spin->pcm_ptr()), "SpinAgain");
    CHECK(sub.resource->states().size() == spin->states().size());
  }

  SECTION("a non-invariant relation is refused with the transition named") {
    PcmPtr parent = cat.cslp()->pcm_ptr();
    CompatRel weak{"histories-only", parent,
                   [parent](const Val& x, const Val& y) {
                     return parent->defined(x, y) &&
                            omega_compat(x.first().first(),
                                         y.first().first());
                   }};
    try {
      sub_resource(cat.cslp(), weak, "Broken");
      FAIL("expected refusal");
    } catch (const ConstructionError& e) {
      CHECK(std::string(e.what()).find("close_tr") != std::string::npos);
    }
  }
}

TEST_CASE("heap-transfer resource: open and close move the protected heap") {
  Catalog cat{Bounds{}};
  auto cslx = cat.cslx();
  CHECK(check_state_space(*cslx).ok());

  Val bar = Val::atom(Val::kAtomOwnBar);
  Val own = Val::atom(Val::kAtomOwn);
  Val rheap = map_singleton(Catalog::kResPtr, Val::boolean(true));
  SubjState closed{Val::pair(bar, Val::empty_map()), rheap,
                   Val::pair(bar, Val::empty_map())};
  REQUIRE(cslx->member(closed));

  StepOut opened = cslx->transition("open_tr")->step(closed);
  REQUIRE(opened.ok());
  CHECK(opened.next.self == Val::pair(own, rheap));
  CHECK(opened.next.joint == Val::empty_map());
  REQUIRE(cslx->member(opened.next));

  StepOut closed2 = cslx->transition("close_tr")->step(opened.next);
  REQUIRE(closed2.ok());
  CHECK(closed2.next == closed);
}

TEST_CASE("stack resource: pushes are footprint-preserving root updates") {
  Catalog cat{Bounds{}};
  auto st = cat.stack();
  CHECK(check_state_space(*st).ok());
  for (const Transition& t : st->transitions())
    CHECK(check_transition(*st, t).ok());

  SubjState empty{Val::pair(Val::empty_map(), Val::empty_map()),
                  map_singleton(Catalog::kStackPtr, enc_list({})),
                  Val::pair(Val::empty_map(), Val::empty_map())};
  REQUIRE(st->member(empty));
  StepOut p1 = st->transition("push_tr.1")->step(empty);
  REQUIRE(p1.ok());
  CHECK(p1.next.joint == map_singleton(Catalog::kStackPtr, enc_list({1})));
  StepOut p2 = st->transition("push_tr.2")->step(p1.next);
  REQUIRE(p2.ok());
  CHECK(p2.next.joint == map_singleton(Catalog::kStackPtr, enc_list({2, 1})));
  // full stack: pushing beyond the length bound is a horizon, not a fault
  CHECK(st->transition("push_tr.1")->step(p2.next).kind ==
        StepOut::Kind::kHorizon);
}
