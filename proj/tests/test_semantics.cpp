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

#include <algorithm>
#include <set>

#include "reswb/catalog.hpp"

using namespace reswb;

namespace {

int max_act_depth(const Tree* t) {
  switch (t->kind) {
    case Tree::Kind::kUnfinished:
    case Tree::Kind::kRet:
      return 0;
    case Tree::Kind::kAct:
      return 1;
    case Tree::Kind::kMorph:
      return max_act_depth(t->a);
    case Tree::Kind::kSeq: {
      int k = 0;
      for (const auto& [v, sub] : t->table)
        k = std::max(k, max_act_depth(sub));
      return max_act_depth(t->a) + k;
    }
    case Tree::Kind::kPar: {
      int k = 0;
      for (const auto& [v, sub] : t->table)
        k = std::max(k, max_act_depth(sub));
      return max_act_depth(t->a) + max_act_depth(t->b) + k;
    }
  }
  return 0;
}

bool subset(const std::vector<const Tree*>& a,
            const std::vector<const Tree*>& b) {
  std::set<const Tree*> bs(b.begin(), b.end());
  for (const Tree* t : a)
    if (!bs.count(t)) return false;
  return true;
}

}  // namespace

TEST_CASE("denotations build the expected tree sets") {
  Catalog cat{Bounds{}};
  TreeArena& ar = cat.arena();
  auto spin = cat.spin();

  SECTION("ret") {
    auto den = den_ret(ar, spin, Val::nat(3));
    auto ts = den.trees(5);
    REQUIRE(ts.size() == 2);
    CHECK(ts[0]->kind == Tree::Kind::kUnfinished);
    CHECK(ts[1]->kind == Tree::Kind::kRet);
    CHECK(ts[1]->val == Val::nat(3));
  }

  SECTION("par of two rets contains the paired return") {
    auto den = den_par(ar, den_ret(ar, spin, Val::nat(1)),
                       den_ret(ar, spin, Val::nat(2)));
    bool found = false;
    for (const Tree* t : den.trees(1)) {
      if (t->kind != Tree::Kind::kPar) continue;
      if (t->a->kind == Tree::Kind::kRet && t->b->kind == Tree::Kind::kRet) {
        const Tree* k = t->lookup(Val::pair(Val::nat(1), Val::nat(2)));
        REQUIRE(k);
        CHECK(k->kind == Tree::Kind::kRet);
        found = true;
      }
    }
    CHECK(found);
  }

  SECTION("bind with a bottom prefix only grows unfinished sequences") {
    ProgDenotation bottom(
        spin, {Val::unit()},
        [&ar](int) { return std::vector<const Tree*>{ar.unfinished()}; },
        [&ar](int) { return std::vector<const Tree*>{ar.unfinished()}; });
    auto den = den_bind(ar, bottom, den_ret(ar, spin, Val::unit()));
    auto ts = den.trees(1);
    REQUIRE(ts.size() == 3);  // Unfinished itself plus Seq Unfinished K
    int seqs = 0;
    for (const Tree* t : ts)
      if (t->kind == Tree::Kind::kSeq) {
        CHECK(t->a->kind == Tree::Kind::kUnfinished);
        ++seqs;
      }
    CHECK(seqs == 2);
  }
}

TEST_CASE("bounded fixed points: bottom at zero, attempts per unroll, monotone") {
  Catalog cat{Bounds{}};
  auto lock = cat.lock_program(cat.spin());

  auto level0 = lock.trees(0);
  REQUIRE(level0.size() == 1);
  CHECK(level0[0]->kind == Tree::Kind::kUnfinished);

  for (const Tree* t : lock.trees(2))
    CHECK(max_act_depth(t) <= 2);
  bool has_two = false;
  for (const Tree* t : lock.trees(2)) has_two |= max_act_depth(t) == 2;
  CHECK(has_two);

  for (int k = 0; k < 3; ++k) {
    CHECK(subset(lock.trees(k), lock.trees(k + 1)));
    CHECK(subset(lock.maximal_trees(k), lock.trees(k)));
  }
  auto composite = cat.composite_incr3_program();
  CHECK(subset(composite.trees(1), composite.trees(2)));
}

TEST_CASE("good paths follow the recognizer table") {
  Catalog cat{Bounds{}};
  TreeArena& ar = cat.arena();
  auto trylock = cat.trylock_act();
  const Tree* act = ar.action(trylock.get());
  CHECK(good(act, {PathStep::kChoiceAct}));
  CHECK_FALSE(good(ar.unfinished(), {PathStep::kParR, PathStep::kChoiceAct}));
  CHECK_FALSE(good(ar.ret(Val::unit()), {PathStep::kChoiceAct}));

  Tree::Table k{{Val::pair(Val::nat(1), Val::nat(2)),
                 ar.ret(Val::pair(Val::nat(1), Val::nat(2)))}};
  const Tree* par = ar.par(ar.ret(Val::nat(1)), ar.ret(Val::nat(2)), k);
  CHECK(good(par, {PathStep::kParRet}));
  CHECK_FALSE(good(par, {PathStep::kSeqRet}));
}

TEST_CASE("stepping: actions, beta steps, and morph contexts") {
  Catalog cat{Bounds{}};
  TreeArena& ar = cat.arena();
  auto spin = cat.spin();
  auto trylock = cat.trylock_act();

  SECTION("an action at a free lock steps to its return") {
    const Tree* act = ar.action(trylock.get());
    SubjState free{Val::empty_map(), Val::unit(), Val::empty_map()};
    TreeStep r = tree_step(ar, *spin, free, act, {PathStep::kChoiceAct});
    REQUIRE(r.ok());
    CHECK(r.tree->kind == Tree::Kind::kRet);
    CHECK(r.tree->val == Val::boolean(true));
    CHECK(r.next.self == map_singleton(1, ev_lock()));
    CHECK(r.acted);
    CHECK(r.outer_trans == "lock_tr");
  }

  SECTION("SeqRet hands the value to the continuation, state unchanged") {
    Tree::Table k{{Val::nat(7), ar.ret(Val::nat(9))}};
    const Tree* seq = ar.seq(ar.ret(Val::nat(7)), k);
    SubjState s{Val::empty_map(), Val::unit(), Val::empty_map()};
    TreeStep r = tree_step(ar, *spin, s, seq, {PathStep::kSeqRet});
    REQUIRE(r.ok());
    CHECK(r.next == s);
    CHECK(r.tree->val == Val::nat(9));
  }

  SECTION("under the counter morphism, lock and increment fire together") {
    auto f1 = cat.f_n(1);
    const Tree* m = ar.morph(f1.get(), Val::unit(), ar.action(trylock.get()));
    SubjState sw = pair_state(
        SubjState{Val::empty_map(), Val::unit(), Val::empty_map()},
        SubjState{Val::nat(4), Val::unit(), Val::nat(0)});
    TreeStep r = tree_step(ar, *cat.sc(), sw, m,
                           {PathStep::kMorphStep, PathStep::kChoiceAct});
    REQUIRE(r.ok());
    CHECK(proj_state(r.next, 1).self == map_singleton(1, ev_lock()));
    CHECK(proj_state(r.next, 2).self == Val::nat(5));
    CHECK(r.tree->kind == Tree::Kind::kMorph);
    CHECK(r.tree->a->kind == Tree::Kind::kRet);
  }
}

TEST_CASE("unwinding an empty context is exactly the action effect") {
  Catalog cat{Bounds{}};
  auto spin = cat.spin();
  for (const auto& act : {cat.trylock_act(), cat.unlock_act()}) {
    for (const SubjState& s : spin->states()) {
      UnwindOut u = unwind_act(*spin, {}, {}, *act, s);
      auto eff = apply_action(*spin, *act, s);
      if (eff) {
        REQUIRE(u.ok());
        CHECK(u.next == eff->first);
        CHECK(u.value == eff->second);
      } else {
        CHECK_FALSE(u.ok());
      }
    }
  }
}

TEST_CASE("states outside the state map's domain make morphed actions stuck") {
  Catalog cat{Bounds{}};
  TreeArena& ar = cat.arena();
  auto g = cat.quiescence_family();
  auto push = cat.push_act(1);
  const Tree* m = ar.morph(g.get(), map_singleton(1, Val::pair(enc_list({}),
                                                               enc_list({1}))),
                           ar.action(push.get()));
  // chi_s lacks the laid-out stack for that index: the state map is undefined
  SubjState bad{Val::empty_map(), Val::unit(), Val::empty_map()};
  TreeStep r = tree_step(ar, *cat.priv(), bad, m,
                         {PathStep::kMorphStep, PathStep::kChoiceAct});
  CHECK(r.kind == TreeStep::Kind::kStuck);
  CHECK_FALSE(safe(ar, *cat.priv(), bad, m,
                   {PathStep::kMorphStep, PathStep::kChoiceAct}));
}

TEST_CASE("rets and unfinished trees are safe; stuck good paths are not") {
  Catalog cat{Bounds{}};
  TreeArena& ar = cat.arena();
  auto spin = cat.spin();
  SubjState s{Val::empty_map(), Val::unit(), Val::empty_map()};
  for (const Path& p :
       {Path{PathStep::kChoiceAct}, Path{PathStep::kSeqRet},
        Path{PathStep::kParL, PathStep::kChoiceAct}}) {
    CHECK(safe(ar, *spin, s, ar.ret(Val::unit()), p));
    CHECK(safe(ar, *spin, s, ar.unfinished(), p));
  }

  // an action insisting on a semantically blocked transition is unsafe
  ActionDef forced{"force_unlock",
                   [](const SubjState&)
                       -> std::optional<std::pair<std::string, Val>> {
                     return std::make_pair(std::string("unlock_tr"),
                                           Val::unit());
                   },
                   {Val::unit()}};
  const Tree* t = ar.action(&forced);
  CHECK_FALSE(safe(ar, *spin, s, t, {PathStep::kChoiceAct}));
}

TEST_CASE("after on a finished tree is exactly the stabilized postcondition") {
  Catalog cat{Bounds{}};
  auto spin = cat.spin();
  TreeArena& ar = cat.arena();
  PostPred q = [](const Val&, const SubjState& s) {
    auto th = map_disjoint_union(s.self, s.other);
    return th && last_stamp(*th) <= 2;
  };
  for (const SubjState& s0 : spin->states()) {
    int i = spin->state_index(s0);
    Explorer ex(ar, spin, true);
    auto v = after(ex, ar.ret(Val::unit()), i, q);
    bool direct = stab(*spin, [&q](const SubjState& s) {
      return q(Val::unit(), s);
    }, i);
    CHECK(v.ok == direct);
  }

  SECTION("after on an unfinished tree holds for any postcondition") {
    Explorer ex(ar, spin, true);
    auto v = after(ex, ar.unfinished(), 0,
                   [](const Val&, const SubjState&) { return false; });
    CHECK(v.ok);
    CHECK(v.vacuous);
  }
}

TEST_CASE("vrf over maximal trees agrees with vrf over the full sets") {
  Catalog cat{Bounds{}};
  auto spin = cat.spin();
  TreeArena& ar = cat.arena();
  auto trylock = cat.trylock_act();
  auto unlock = cat.unlock_act();

  std::vector<ProgDenotation> programs;
  programs.push_back(den_act(ar, spin, trylock.get()));
  programs.push_back(den_bind(ar, den_act(ar, spin, trylock.get()),
                              [&](const Val& b) {
                                return b.as_bool()
                                           ? den_ret(ar, spin, Val::unit())
                                           : den_act(ar, spin, unlock.get());
                              }));
  programs.push_back(den_par(ar, den_act(ar, spin, unlock.get()),
                             den_act(ar, spin, unlock.get())));
  programs.push_back(cat.lock_program(spin));

  std::vector<PostPred> qs = {
      [](const Val&, const SubjState&) { return true; },
      [](const Val&, const SubjState& s) {
        return count_lock_events(s.self) >= 1;
      },
      [](const Val& v, const SubjState&) {
        return v.tag() != Val::Tag::kBool || v.as_bool();
      },
      [](const Val&, const SubjState& s) {
        auto th = map_disjoint_union(s.self, s.other);
        return th && !omega(*th);
      }};

  for (const auto& den : programs) {
    for (const auto& q : qs) {
      Explorer ex_max(ar, spin, true);
      Explorer ex_full(ar, spin, true);
      for (const SubjState& s0 : spin->states()) {
        int i = spin->state_index(s0);
        auto vm = vrf(ex_max, den, den.maximal_trees(2), i, q);
        auto vf = vrf(ex_full, den, den.trees(2), i, q);
        REQUIRE(vm.ok == vf.ok);
        REQUIRE(vm.vacuous == vf.vacuous);
      }
    }
  }
}

TEST_CASE("a mutated postcondition yields a counterexample trace") {
  Catalog cat{Bounds{}};
  auto composite = cat.composite_incr3_program();
  auto sc = cat.sc();
  Explorer ex(cat.arena(), sc, true);
  SubjState init = pair_state(
      SubjState{Val::empty_map(), Val::unit(), Val::empty_map()},
      SubjState{Val::nat(0), Val::unit(), Val::nat(0)});
  int idx = sc->state_index(init);
  REQUIRE(idx >= 0);
  PostPred wrong = [](const Val&, const SubjState& s) {
    return s.self.second() == Val::nat(2);
  };
  auto v = vrf(ex, composite, composite.maximal_trees(3), idx, wrong);
  REQUIRE_FALSE(v.ok);
  REQUIRE(v.bad_kind == Explorer::Verdict::Bad::kPost);
  std::vector<int> inits;
  for (const Tree* t : composite.maximal_trees(3))
    inits.push_back(ex.intern(t, idx));
  Json trace = ex.trace(inits, v.bad_config, "postcondition");
  CHECK(trace["kind"] == "trace");
  CHECK(trace["steps"].size() > 0);
}
