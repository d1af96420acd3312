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

#include <set>

#include "reswb/catalog.hpp"

using namespace reswb;

namespace {
Val one_lock(std::uint32_t t) { return map_singleton(t, ev_lock()); }
}  // namespace

TEST_CASE("framing moves material between the subjective components") {
  auto pcm = hist_pcm(4, {ev_lock(), ev_unlock()});
  SubjState s{Val::empty_map(), Val::unit(), one_lock(2)};

  auto framed = self_frame(*pcm, s, one_lock(1));
  REQUIRE(framed);
  CHECK(framed->self == one_lock(1));
  CHECK(framed->other == s.other);

  auto unit_framed = self_frame(*pcm, s, pcm->unit());
  REQUIRE(unit_framed);
  CHECK(*unit_framed == s);

  SubjState taken{one_lock(1), Val::unit(), Val::empty_map()};
  CHECK_FALSE(self_frame(*pcm, taken, one_lock(1)));

  auto other_framed = other_frame(*pcm, s, one_lock(3));
  REQUIRE(other_framed);
  CHECK(other_framed->self == s.self);
  CHECK(map_has(other_framed->other, 3));
}

TEST_CASE("transposition swaps the subjective components and is involutive") {
  auto pcm = hist_pcm(4, {ev_lock(), ev_unlock()});
  SubjState s{Val::empty_map(), Val::unit(), one_lock(1)};
  CHECK(transpose(s) == SubjState{one_lock(1), Val::unit(), Val::empty_map()});
  for (const SubjState& x :
       enumerate_states(*pcm, {Val::unit()}))
    CHECK(transpose(transpose(x)) == x);
  SubjState sym{one_lock(1), Val::unit(), one_lock(1)};
  // symmetric states are fixed points (with a carrier where that is legal)
  CHECK(transpose(sym) == sym);
}

TEST_CASE("star join matches the three-thread picture") {
  auto pcm = hist_pcm(6, {ev_lock(), ev_unlock()});
  Val a1 = one_lock(1), a2 = map_singleton(2, ev_unlock()), a3 = one_lock(3);
  Val a23 = *pcm->join(a2, a3);
  Val a31 = *pcm->join(a3, a1);
  Val a12 = *pcm->join(a1, a2);
  SubjState s1{a1, Val::unit(), a23};
  SubjState s2{a2, Val::unit(), a31};
  auto joined = star_join(*pcm, s1, s2);
  REQUIRE(joined.state);
  CHECK_FALSE(joined.ambiguous);
  CHECK(*joined.state == SubjState{a12, Val::unit(), a3});

  SECTION("the unit-shaped sibling reproduces the state") {
    SubjState s{a1, Val::unit(), a2};
    SubjState idle{pcm->unit(), Val::unit(), *pcm->join(a1, a2)};
    auto again = star_join(*pcm, s, idle);
    REQUIRE(again.state);
    CHECK(*again.state == s);
  }

  SECTION("mismatched joint components never join") {
    SubjState t1{a1, Val::boolean(true), a23};
    SubjState t2{a2, Val::boolean(false), a31};
    auto r = star_join(*pcm, t1, t2);
    CHECK_FALSE(r.state);
    CHECK_FALSE(r.ambiguous);
  }
}

TEST_CASE("star split enumerates exactly the rejoining pairs") {
  auto pcm = hist_pcm(3, {ev_lock(), ev_unlock()});
  Val self = *pcm->join(one_lock(1), map_singleton(2, ev_unlock()));
  SubjState s{self, Val::unit(), one_lock(3)};
  auto splits = star_split(*pcm, s);

  // contains the four expected self-splittings
  std::set<std::pair<std::string, std::string>> selves;
  for (const auto& [s1, s2] : splits)
    selves.insert({s1.self.str(), s2.self.str()});
  CHECK(selves.count({one_lock(1).str(),
                      map_singleton(2, ev_unlock()).str()}) == 1);
  CHECK(selves.count({Val::empty_map().str(), self.str()}) == 1);
  CHECK(selves.count({self.str(), Val::empty_map().str()}) == 1);
  CHECK(selves.size() == 4);

  // every split rejoins to s
  for (const auto& [s1, s2] : splits) {
    auto joined = star_join(*pcm, s1, s2);
    REQUIRE(joined.state);
    CHECK(*joined.state == s);
  }

  // oracle: brute-force all candidate pairs and compare the sets
  std::set<std::pair<std::string, std::string>> expected;
  auto all = enumerate_states(*pcm, {Val::unit()});
  for (const SubjState& c1 : all)
    for (const SubjState& c2 : all) {
      auto j = star_join(*pcm, c1, c2);
      if (j.state && *j.state == s)
        expected.insert({c1.str(), c2.str()});
    }
  std::set<std::pair<std::string, std::string>> got;
  for (const auto& [s1, s2] : splits) got.insert({s1.str(), s2.str()});
  CHECK(got == expected);

  SECTION("the empty self splits only into units") {
    SubjState u{Val::empty_map(), Val::unit(), self};
    auto us = star_split(*pcm, u);
    REQUIRE(us.size() == 1);
    CHECK(us[0].first.self == pcm->unit());
    CHECK(us[0].second.self == pcm->unit());
  }
}

TEST_CASE("star join reports ambiguity on non-cancellative carriers") {
  // max on {0,1} is a total commutative idempotent monoid
  PcmPtr maxp = std::make_shared<PcmDef>(
      "max", std::vector<Val>{Val::nat(0), Val::nat(1)}, Val::nat(0),
      [](const Val& a, const Val& b) -> std::optional<Val> {
        return Val::nat(std::max(a.as_nat(), b.as_nat()));
      });
  REQUIRE(check_pcm_laws(*maxp).ok());
  SubjState s1{Val::nat(1), Val::unit(), Val::nat(1)};
  auto r = star_join(*maxp, s1, s1);
  CHECK(r.ambiguous);
  CHECK_FALSE(r.state);
}

TEST_CASE("globality of history predicates and functions") {
  auto pcm = hist_pcm(3, {ev_lock(), ev_unlock()});
  auto candidates = enumerate_states(*pcm, {Val::unit()});

  StatePred compat = [&pcm](const SubjState& s) {
    return pcm->defined(s.self, s.other);
  };
  CHECK(check_global("compat", compat, candidates, *pcm).status ==
        CheckStatus::kPass);

  StateFn total = [](const SubjState& s) -> std::optional<Val> {
    return map_disjoint_union(s.self, s.other);
  };
  CHECK(check_global_fn("total-history", total, candidates, *pcm).status ==
        CheckStatus::kPass);

  StatePred self_empty = [](const SubjState& s) {
    return s.self == Val::empty_map();
  };
  auto e = check_global("self-empty", self_empty, candidates, *pcm);
  CHECK(e.status == CheckStatus::kFail);
  REQUIRE(e.witness);

  // conditional globality: under a global condition restricting the space
  StatePred under = [&pcm](const SubjState& s) {
    auto th = map_disjoint_union(s.self, s.other);
    return th && alternate(*th);
  };
  CHECK(check_global_under("compat-under", compat, under, candidates, *pcm)
            .status == CheckStatus::kPass);
}

TEST_CASE("framing preserves global functions") {
  auto pcm = hist_pcm(3, {ev_lock(), ev_unlock()});
  auto candidates = enumerate_states(*pcm, {Val::unit()});
  for (const SubjState& s : candidates) {
    for (const Val& p : pcm->carrier()) {
      auto up = self_frame(*pcm, s, p);
      auto down = other_frame(*pcm, s, p);
      if (!up || !down) continue;
      auto a = map_disjoint_union(down->self, down->other);
      auto b = map_disjoint_union(up->self, up->other);
      CHECK(((a && b && *a == *b) || (!a && !b)));
    }
  }
}
