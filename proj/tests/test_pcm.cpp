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

namespace {
Val hist(std::initializer_list<std::pair<std::uint32_t, bool>> entries) {
  Val h = Val::empty_map();
  for (auto [t, is_lock] : entries)
    h = map_set(h, t, is_lock ? ev_lock() : ev_unlock());
  return h;
}
}  // namespace

TEST_CASE("history join: disjoint union with unit and clash cases") {
  auto pcm = hist_pcm(9, {ev_lock(), ev_unlock()});
  Val a = hist({{2, false}});
  Val b = hist({{7, true}, {9, true}});
  auto joined = pcm->join(a, b);
  REQUIRE(joined);
  CHECK(*joined == hist({{2, false}, {7, true}, {9, true}}));

  // unit law on every element
  for (const Val& x : pcm->carrier()) {
    auto u = pcm->join(x, pcm->unit());
    REQUIRE(u);
    CHECK(*u == x);
  }

  // shared timestamp: undefined, symmetrically
  CHECK_FALSE(pcm->join(hist({{2, false}}), hist({{2, true}})));
  CHECK_FALSE(pcm->join(hist({{2, true}}), hist({{2, false}})));
}

TEST_CASE("ownership tokens: own+own stays undefined") {
  auto o = o_pcm();
  Val own = Val::atom(Val::kAtomOwn);
  Val bar = Val::atom(Val::kAtomOwnBar);
  CHECK_FALSE(o->join(own, own));
  CHECK(*o->join(own, bar) == own);
  CHECK(*o->join(bar, bar) == bar);
}

TEST_CASE("carrier violation is an error, distinct from undefined join") {
  auto pcm = nat_pcm(4);
  CHECK_FALSE(pcm->join(Val::nat(3), Val::nat(2)));  // undefined, no throw
  CHECK_THROWS_AS(pcm->join(Val::nat(7), Val::nat(0)), ConstructionError);
  CHECK_THROWS_AS(pcm->join(Val::boolean(true), Val::nat(0)),
                  ConstructionError);
}

TEST_CASE("monoid law suites pass for the stock carriers") {
  CHECK(check_pcm_laws(*hist_pcm(4, {ev_lock(), ev_unlock()})).ok());
  CHECK(check_pcm_laws(*nat_pcm(8)).ok());
  CHECK(check_pcm_laws(*o_pcm()).ok());
  CHECK(check_pcm_laws(
            *heap_pcm(2, {Val::boolean(false), Val::boolean(true)}))
            .ok());
}

TEST_CASE("a join that drops an operand is caught as non-commutative") {
  PcmDef broken("broken", {Val::nat(0), Val::nat(1), Val::nat(2)},
                Val::nat(0),
                [](const Val& a, const Val&) -> std::optional<Val> {
                  return a;
                });
  auto rep = check_pcm_laws(broken);
  REQUIRE_FALSE(rep.ok());
  const CheckEntry* comm = rep.find("commutative:broken");
  REQUIRE(comm);
  CHECK(comm->status == CheckStatus::kFail);
  REQUIRE(comm->witness);
}

TEST_CASE("compatibility axioms: definedness and the lock-status refinement") {
  auto pcm = hist_pcm(4, {ev_lock(), ev_unlock()});
  CHECK(check_compat_laws(defined_rel(pcm)).ok());

  CompatRel om{"omega-compat", pcm, [](const Val& a, const Val& b) {
                 return omega_compat(a, b);
               }};
  CHECK(check_compat_laws(om).ok());
}

TEST_CASE("a relation that skips the unit fails the unitary axiom at (1,1)") {
  auto pcm = hist_pcm(2, {ev_lock(), ev_unlock()});
  CompatRel r{"nonempty", pcm, [&pcm](const Val& a, const Val& b) {
                return pcm->defined(a, b) && a != Val::empty_map() &&
                       b != Val::empty_map();
              }};
  auto rep = check_compat_laws(r);
  const CheckEntry* u = rep.find("unitary:nonempty");
  REQUIRE(u);
  REQUIRE(u->status == CheckStatus::kFail);
  REQUIRE(u->witness);
  CHECK((*u->witness)["elems"][0] == "{}");
  CHECK((*u->witness)["elems"][1] == "{}");
}

TEST_CASE("products lift joins componentwise") {
  auto h = hist_pcm(4, {ev_lock(), ev_unlock()});
  auto n = nat_pcm(8);
  auto p = product_pcm(h, n);
  CHECK(p->size() == h->size() * n->size());
  CHECK(p->unit() == Val::pair(h->unit(), n->unit()));
  CHECK(check_pcm_laws(*p).ok());

  auto with_unit = product_pcm(h, unit_pcm());
  CHECK(with_unit->size() == h->size());

  // defined iff both components defined
  Val x = Val::pair(hist({{1, true}}), Val::nat(5));
  Val y = Val::pair(hist({{2, false}}), Val::nat(3));
  CHECK(p->defined(x, y));
  Val z = Val::pair(hist({{1, true}}), Val::nat(3));
  CHECK_FALSE(p->defined(x, z));  // 1:L clashes
  CHECK_FALSE(
      p->defined(Val::pair(hist({{1, true}}), Val::nat(5)),
                 Val::pair(hist({{2, false}}), Val::nat(4))));  // 5+4 > 8
}

TEST_CASE("sub-PCM laws hold for the exclusive-locking restriction") {
  Catalog cat{Bounds{}};
  const SubPcm& sp = cat.csl_slice().pcm;
  CHECK(sp.axioms.ok());
  CHECK(sp.recheck.ok());
  CHECK(sp.derived->size() <= sp.parent->size());

  // roundtrips, re-stated directly
  for (const Val& a : sp.derived->carrier()) {
    auto b = sp.inj.map(a);
    REQUIRE(b);
    auto back = sp.retr.map(*b);
    REQUIRE(back);
    CHECK(*back == a);
  }
  for (const Val& b : sp.parent->carrier()) {
    if (!sp.rel(b, sp.parent->unit())) continue;
    auto a = sp.retr.map(b);
    REQUIRE(a);
    CHECK(*sp.inj.map(*a) == b);
  }
}

TEST_CASE("sub-PCM over plain definedness is the whole PCM") {
  auto pcm = hist_pcm(3, {ev_lock(), ev_unlock()});
  SubPcm sp = sub_pcm(pcm, defined_rel(pcm));
  CHECK(sp.derived->size() == pcm->size());
  CHECK(check_pcm_laws(*sp.derived).ok());
}

TEST_CASE("sub-PCM construction refuses a broken relation, naming the axiom") {
  auto pcm = hist_pcm(2, {ev_lock(), ev_unlock()});
  CompatRel bad{"nonempty", pcm, [&pcm](const Val& a, const Val& b) {
                  return pcm->defined(a, b) && a != Val::empty_map();
                }};
  try {
    sub_pcm(pcm, bad);
    FAIL("expected refusal");
  } catch (const ConstructionError& e) {
    CHECK(std::string(e.what()).find("compat/") != std::string::npos);
  }
}

TEST_CASE("PCM morphism laws: projections and the lock-status morphism") {
  auto h = hist_pcm(4, {ev_lock(), ev_unlock()});
  auto n = nat_pcm(8);
  auto o = o_pcm();
  auto hn = product_pcm(h, n);

  PcmMorphDef proj{"fst", hn, h,
                   [](const Val& x) -> std::optional<Val> {
                     return x.first();
                   },
                   defined_rel(hn)};
  CHECK(check_pcm_morph_laws(proj).ok());

  Val own = Val::atom(Val::kAtomOwn), bar = Val::atom(Val::kAtomOwnBar);
  PcmMorphDef om{"lock-status", h, o,
                 [own, bar](const Val& x) -> std::optional<Val> {
                   return omega(x) ? own : bar;
                 },
                 CompatRel{"omega-compat", h, [](const Val& a, const Val& b) {
                             return omega_compat(a, b);
                           }}};
  CHECK(check_pcm_morph_laws(om).ok());

  SECTION("swapping the unit fails the first clause") {
    PcmMorphDef bad{"unit-swap", h, o,
                    [own](const Val&) -> std::optional<Val> { return own; },
                    defined_rel(h)};
    auto rep = check_pcm_morph_laws(bad);
    const CheckEntry* e = rep.find("preserves-unit:unit-swap");
    REQUIRE(e);
    CHECK(e->status == CheckStatus::kFail);
  }

  SECTION("kernel of the identity relates exactly the units") {
    PcmMorphDef idm{"id", h, h,
                    [](const Val& x) -> std::optional<Val> { return x; },
                    defined_rel(h)};
    CompatRel ker = morph_kernel(idm);
    for (const Val& x : h->carrier())
      for (const Val& y : h->carrier())
        CHECK(ker(x, y) == (x == h->unit() && y == h->unit()));
  }

  SECTION("composition with the identity is extensionally the morphism") {
    PcmMorphDef idm{"id", h, h,
                    [](const Val& x) -> std::optional<Val> { return x; },
                    defined_rel(h)};
    auto c = morph_compose(om, idm);
    for (const Val& x : h->carrier()) {
      auto a = c.map(x);
      auto b = om.map(x);
      CHECK(((a && b && *a == *b) || (!a && !b)));
      for (const Val& y : h->carrier())
        CHECK(c.domrel(x, y) == om.domrel(x, y));
    }
  }

  SECTION("kernel, equalizer and restriction are compatibility relations") {
    CHECK(check_compat_laws(morph_kernel(om)).ok());
    CHECK(check_compat_laws(morph_equalizer(om, om)).ok());
    CHECK(check_compat_laws(morph_restrict(om, defined_rel(h)).domrel).ok());
  }
}

TEST_CASE("the restriction relation equals the equalizer construction") {
  // At a reduced timestamp bound for speed; the full-bound comparison runs
  // in the pcm-morphisms scenario.
  Bounds b;
  b.max_timestamp = 3;
  Catalog cat{b};
  PcmPtr parent = cat.cslp()->pcm_ptr();
  PcmPtr h = cat.lock_hist_pcm();
  PcmPtr n = cat.nats_pcm();
  PcmPtr o = cat.own_pcm();
  PcmPtr oo = product_pcm(o, o);
  Val own = Val::atom(Val::kAtomOwn), bar = Val::atom(Val::kAtomOwnBar);

  PcmMorphDef perm_to_o{"permO", n, o,
                        [own, bar](const Val& x) -> std::optional<Val> {
                          if (x.as_nat() == 0) return bar;
                          if (x.as_nat() == 1) return own;
                          return std::nullopt;
                        },
                        CompatRel{"sum<=1", n,
                                  [](const Val& a, const Val& b) {
                                    return a.as_nat() + b.as_nat() <= 1;
                                  }}};
  PcmMorphDef pi{"perm", parent, n,
                 [](const Val& x) -> std::optional<Val> {
                   return x.first().second();
                 },
                 defined_rel(parent)};
  PcmMorphDef alpha{"auth", parent, o,
                    [](const Val& x) -> std::optional<Val> {
                      return x.second().first();
                    },
                    defined_rel(parent)};
  PcmMorphDef tau{"hist", parent, h,
                  [](const Val& x) -> std::optional<Val> {
                    return x.first().first();
                  },
                  defined_rel(parent)};
  PcmMorphDef inl{"inl", o, oo,
                  [bar](const Val& x) -> std::optional<Val> {
                    return Val::pair(x, bar);
                  },
                  defined_rel(o)};
  PcmMorphDef inr{"inr", o, oo,
                  [bar](const Val& x) -> std::optional<Val> {
                    return Val::pair(bar, x);
                  },
                  defined_rel(o)};
  PcmMorphDef diag{"diag", o, oo,
                   [](const Val& x) -> std::optional<Val> {
                     return Val::pair(x, x);
                   },
                   defined_rel(o)};
  PcmMorphDef om{"lock-status", h, o,
                 [own, bar](const Val& x) -> std::optional<Val> {
                   return omega(x) ? own : bar;
                 },
                 CompatRel{"omega-compat", h, [](const Val& a, const Val& b) {
                             return omega_compat(a, b);
                           }}};

  auto f = morph_join(morph_compose(inl, morph_compose(perm_to_o, pi)),
                      morph_compose(inr, alpha));
  auto g = morph_compose(morph_compose(diag, om), tau);
  CompatRel eq = morph_equalizer(f, g);
  CompatRel direct = cat.inv_rel();
  for (const Val& x : parent->carrier())
    for (const Val& y : parent->carrier())
      REQUIRE(eq(x, y) == direct(x, y));
}
