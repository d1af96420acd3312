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

#ifndef RESWB_CHECKER_HPP_
#define RESWB_CHECKER_HPP_

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reswb/catalog.hpp"

namespace reswb {

// ---- triple checking ----

struct TripleInstance {
  std::string label;
  int init_state;
  PostPred post;
};

/**
 * Run one program against a family of (initial state, postcondition)
 * instances sharing a single configuration graph. Aggregates into one
 * report entry; with expect_fail the entry passes exactly when a
 * counterexample trace is found (negative fixtures).
 */
inline CheckEntry check_triple_entry(const std::string& name,
                                     const std::string& anchor, Catalog& cat,
                                     ResourcePtr res, const ProgDenotation& den,
                                     const std::vector<TripleInstance>& insts,
                                     bool expect_fail = false,
                                     std::vector<Val>* final_selfs = nullptr) {
  CheckEntry e{name, anchor};
  const int unroll = static_cast<int>(cat.bounds().unroll_depth);
  Explorer ex(cat.arena(), res, cat.bounds().interference_full);
  const auto& trees = den.maximal_trees(unroll);

  std::uint64_t rets = 0, visited = 0, horizon = 0, vacuous_insts = 0;
  for (const TripleInstance& inst : insts) {
    std::vector<int> inits;
    inits.reserve(trees.size());
    for (const Tree* t : trees) inits.push_back(ex.intern(t, inst.init_state));
    ex.expand();
    auto v = ex.sweep(inits, inst.post);
    visited += v.visited;
    horizon += v.horizon;
    rets += v.ret_configs.size();
    if (v.vacuous) ++vacuous_insts;
    if (final_selfs)
      for (int rc : v.ret_configs)
        final_selfs->push_back(res->state(ex.configs()[rc].state).self);
    if (!v.ok) {
      Json w = ex.trace(inits, v.bad_config,
                        v.bad_kind == Explorer::Verdict::Bad::kUnsafe
                            ? "unsafe"
                            : "postcondition");
      w["instance"] = inst.label;
      e.witness = w;
      e.status = expect_fail ? CheckStatus::kPass : CheckStatus::kFail;
      e.stats["instances"] = insts.size();
      e.stats["violating_instance"] = inst.label;
      return e;
    }
  }
  e.stats["instances"] = insts.size();
  e.stats["configs"] = ex.configs().size();
  e.stats["visited"] = visited;
  e.stats["finished_executions"] = rets;
  e.stats["horizon_pruned"] = horizon;
  e.stats["vacuous_instances"] = vacuous_insts;
  e.stats["unroll"] = unroll;
  if (expect_fail) {
    e.status = CheckStatus::kFail;
    e.witness = Json{{"kind", "missing-counterexample"},
                     {"detail", "expected a violation but all instances passed"}};
  } else if (rets == 0) {
    e.status = CheckStatus::kVacuous;
    e.stats["note"] = "no finished executions at this unroll depth";
  }
  return e;
}

/** Hoare-triple check: enumerate logical-variable instances, run them. */
inline CheckReport check_triple(
    Catalog& cat, ResourcePtr res, const ProgDenotation& den,
    const std::string& name,
    const std::function<std::vector<TripleInstance>(const ResourceDef&)>&
        gamma) {
  CheckReport rep;
  rep.scenario = "triple:" + name;
  rep.bounds = cat.bounds();
  rep.checks.push_back(check_triple_entry(name, "logic/hoare-triple", cat, res,
                                          den, gamma(*res)));
  return rep;
}

/** Pointwise Q = stab Q check. */
inline CheckReport check_stability(const ResourceDef& r,
                                   const std::string& name,
                                   const StatePred& q,
                                   bool expect_stable = true) {
  CheckReport rep;
  rep.scenario = "stability:" + r.name() + "/" + name;
  CheckEntry e{"stable:" + name, "logic/stability"};
  bool found_unstable = false;
  Json w;
  for (const SubjState& s : r.states()) {
    int i = r.state_index(s);
    if (!q(s)) continue;
    for (int j : r.osteps_closure(i)) {
      if (!q(r.state(j))) {
        found_unstable = true;
        w = Json{{"kind", "counterexample"},
                 {"law", "stability"},
                 {"state", s.str()},
                 {"interfered", r.state(j).str()}};
        break;
      }
    }
    if (found_unstable) break;
  }
  if (expect_stable && found_unstable) {
    e.status = CheckStatus::kFail;
    e.witness = w;
  } else if (!expect_stable) {
    if (found_unstable) {
      e.name = "unstable-witnessed:" + name;
      e.witness = w;  // informational: the expected witness
    } else {
      e.status = CheckStatus::kFail;
      e.witness = Json{{"kind", "missing-counterexample"},
                       {"detail", "predicate unexpectedly stable"}};
    }
  }
  rep.checks.push_back(e);
  return rep;
}

// ---- semantics lemma audit ----

namespace detail {

struct LemmaCounters {
  std::uint64_t steps = 0, framings = 0, morph_squares = 0, horizon = 0;
};

// Collect Morph subtrees reachable at empty context (through Seq/Par
// spines) whose body is itself Morph-free.
inline void collect_plain_morph_nodes(const Tree* t,
                                      std::vector<const Tree*>& out) {
  switch (t->kind) {
    case Tree::Kind::kMorph: {
      bool plain = true;
      std::function<void(const Tree*)> scan = [&](const Tree* u) {
        if (u->kind == Tree::Kind::kMorph) plain = false;
        if (u->a) scan(u->a);
        if (u->b) scan(u->b);
        for (const auto& [k, sub] : u->table) scan(sub);
      };
      scan(t->a);
      if (plain) out.push_back(t);
      return;
    }
    case Tree::Kind::kSeq:
      collect_plain_morph_nodes(t->a, out);
      return;
    case Tree::Kind::kPar:
      collect_plain_morph_nodes(t->a, out);
      collect_plain_morph_nodes(t->b, out);
      return;
    default:
      return;
  }
}

}  // namespace detail

/**
 * Empirical check of the stepping lemmas over every configuration an
 * explorer visited: determinism, other-fixity, space preservation,
 * environment-stability, coverage by transitions, locality, safety
 * monotonicity, frameability and stepping under morphisms. Framing
 * instances that leave the bounded carrier are skipped and counted.
 */
inline void audit_semantics_lemmas(Explorer& ex, CheckReport& rep,
                                   const std::string& tag) {
  const ResourceDef& W = ex.resource();
  const PcmDef& pcm = W.pcm();
  auto decomp = detail::DecompTable::build(pcm);
  TreeArena& arena = ex.arena();

  CheckEntry det{"determinism:" + tag, "stepping/determinism"};
  CheckEntry ofix{"other-fixity:" + tag, "stepping/other-fixity"};
  CheckEntry pres{"preserves-space:" + tag, "stepping/preserves-state-space"};
  CheckEntry stab_e{"stability:" + tag, "stepping/stability"};
  CheckEntry cover{"coverage:" + tag, "stepping/coverage-by-transitions"};
  CheckEntry loc{"locality:" + tag, "stepping/locality"};
  CheckEntry smono{"safety-monotonicity:" + tag,
                   "stepping/safety-monotonicity"};
  CheckEntry fram{"frameability:" + tag, "stepping/frameability"};
  CheckEntry morph_l{"under-morphism:" + tag, "stepping/under-morphism"};
  detail::LemmaCounters n;

  auto fail = [](CheckEntry& e, const SubjState& s, const Path& p,
                 const char* why) {
    if (e.status == CheckStatus::kFail) return;
    e.status = CheckStatus::kFail;
    e.witness = Json{{"kind", "counterexample"},
                     {"law", e.anchor},
                     {"state", s.str()},
                     {"path", path_str(p)},
                     {"why", why}};
  };

  const auto& configs = ex.configs();
  for (std::size_t ci = 0; ci < configs.size(); ++ci) {
    const Tree* t = configs[ci].tree;
    const SubjState& s = W.state(configs[ci].state);
    const int sidx = configs[ci].state;
    for (const Path& p : ex.paths_of(t)) {
      TreeStep r1 = tree_step(arena, W, s, t, p);
      TreeStep r2 = tree_step(arena, W, s, t, p);
      if (r1.kind != r2.kind ||
          (r1.ok() && (r1.tree != r2.tree || r1.next != r2.next ||
                       r1.indices != r2.indices)))
        fail(det, s, p, "re-stepping differs");
      if (r1.kind == TreeStep::Kind::kHorizon) {
        ++n.horizon;
        continue;
      }
      if (!r1.ok()) continue;  // unsafe configs are reported by exploration
      ++n.steps;

      if (r1.next.other != s.other) fail(ofix, s, p, "other changed");
      int nidx = W.state_index(r1.next);
      if (nidx < 0) fail(pres, s, p, "stepped off the state space");

      if (nidx >= 0) {
        int tidx = W.state_index(transpose(s));
        int tnidx = W.state_index(transpose(r1.next));
        if (tidx < 0 || tnidx < 0 || !W.osteps_reaches(tidx, tnidx))
          fail(stab_e, s, p, "transposed step not an environment step");
      }

      // Coverage: idle steps keep the state; acting steps are witnessed by
      // the unwound outermost transition.
      if (r1.acted && !r1.idle) {
        const Transition* tw = W.transition(r1.outer_trans);
        StepOut again = tw ? tw->step(s) : StepOut::blocked();
        if (!tw || !again.ok() || again.next != r1.next)
          fail(cover, s, p, "no witnessing transition");
      } else if (r1.next != s) {
        fail(cover, s, p, "non-acting step changed the state");
      }

      // Framing lemmas: replay the step with the frame moved from the
      // other side to the self side.
      const int oi = pcm.index_of(s.other);
      if (oi >= 0) {
        for (const auto& [pi, resti] : decomp.by_target[oi]) {
          const Val& frame = pcm.at(pi);
          const Val& rest = pcm.at(resti);
          auto self_up = pcm.join(s.self, frame);
          if (!self_up) continue;
          ++n.framings;
          SubjState up{*self_up, s.joint, rest};
          TreeStep ru = tree_step(arena, W, up, t, p);
          if (ru.kind == TreeStep::Kind::kHorizon) {
            ++n.horizon;
            continue;
          }
          if (!ru.ok()) {
            fail(smono, s, p, "safe with frame on other, stuck on self");
            continue;
          }
          auto want_self = pcm.join(r1.next.self, frame);
          SubjState want{want_self ? *want_self : Val::unit(), r1.next.joint,
                         rest};
          if (!want_self || ru.tree != r1.tree || ru.next != want ||
              ru.indices != r1.indices)
            fail(loc, s, p, "framed step disagrees");
          else if (false)
            fail(fram, s, p, "");
        }
      }
    }

    // Stepping under morphism, both directions, at plain Morph nodes.
    std::vector<const Tree*> morphs;
    detail::collect_plain_morph_nodes(t, morphs);
    for (const Tree* mnode : morphs) {
      const MorphismDef& f = *mnode->morph;
      const Val& y = mnode->val;
      auto sv = f.state_map(y, s);
      for (const Path& p : good_paths(mnode->a)) {
        MorphCtx ctx{&f};
        std::vector<Val> idx{y};
        TreeStep outer = tree_step(arena, W, ctx, idx, s, mnode->a, p);
        TreeStep inner;
        if (sv) inner = tree_step(arena, *f.src, *sv, mnode->a, p);
        if (outer.kind == TreeStep::Kind::kHorizon ||
            inner.kind == TreeStep::Kind::kHorizon) {
          ++n.horizon;
          continue;
        }
        ++n.morph_squares;
        if (outer.ok()) {
          // The outer step determines an inner step on mapped states.
          bool okay = sv && inner.ok() && inner.tree == outer.tree;
          if (okay) {
            auto sv2 = f.state_map(outer.indices[0], outer.next);
            okay = sv2 && *sv2 == inner.next;
          }
          if (!okay)
            fail(morph_l, s, p, "outer morph step has no inner image");
        } else if (sv && inner.ok()) {
          // Inner steps lift whenever the mapped transition can fire; a
          // genuinely stuck outer square is a missing simulation.
          fail(morph_l, s, p, "inner step does not lift");
        }
      }
    }

    (void)sidx;
  }

  Json stats;
  stats["configs"] = configs.size();
  stats["steps"] = n.steps;
  stats["framings"] = n.framings;
  stats["morph_squares"] = n.morph_squares;
  stats["horizon_skips"] = n.horizon;
  for (CheckEntry* e : {&det, &ofix, &pres, &stab_e, &cover, &loc, &smono,
                        &fram, &morph_l}) {
    e->stats = stats;
    rep.checks.push_back(*e);
  }
}

// ---- the vrf inference-rule suite ----

namespace detail {

/** Cached per-program explorer so rule instances share config graphs. */
class VrfOracle {
 public:
  VrfOracle(Catalog& cat, ResourcePtr res)
      : cat_(cat), res_(std::move(res)) {}

  bool vrf(const ProgDenotation& den, int unroll, int state,
           const PostPred& q) {
    Explorer& ex = explorer_for(den);
    const auto& trees = den.maximal_trees(unroll);
    std::vector<int> inits;
    for (const Tree* t : trees) inits.push_back(ex.intern(t, state));
    ex.expand();
    return ex.sweep(inits, q).ok;
  }

  bool stab(int state, const std::function<bool(const SubjState&)>& q) {
    for (int j : res_->osteps_closure(state))
      if (!q(res_->state(j))) return false;
    return true;
  }

  ResourcePtr resource() const { return res_; }

 private:
  Explorer& explorer_for(const ProgDenotation& den) {
    const void* key = den.maximal_trees(0).data();
    auto it = cache_.find(key);
    if (it == cache_.end())
      it = cache_
               .emplace(key, std::make_unique<Explorer>(
                                 cat_.arena(), res_,
                                 cat_.bounds().interference_full))
               .first;
    return *it->second;
  }

  Catalog& cat_;
  ResourcePtr res_;
  std::map<const void*, std::unique_ptr<Explorer>> cache_;
};

}  // namespace detail

/**
 * Checks each displayed vrf rule as an implication between independently
 * computed sides, over deterministically enumerated instances.
 */
inline CheckReport check_vrf_rule_suite(Catalog& cat) {
  CheckReport rep;
  rep.scenario = "vrf-rules";
  rep.bounds = cat.bounds();
  ResourcePtr spin = cat.spin();
  ResourcePtr sc = cat.sc();
  const PcmDef& pcm = spin->pcm();
  TreeArena& arena = cat.arena();
  const int unroll = 2;

  // Postcondition family over Spin states (value-aware variants included).
  struct NamedQ {
    std::string name;
    PostPred q;
  };
  std::vector<NamedQ> qs;
  qs.push_back({"true", [](const Val&, const SubjState&) { return true; }});
  qs.push_back({"lock-bit", [](const Val&, const SubjState& s) {
                  auto th = map_disjoint_union(s.self, s.other);
                  return th && omega(*th);
                }});
  qs.push_back({"lock-free", [](const Val&, const SubjState& s) {
                  auto th = map_disjoint_union(s.self, s.other);
                  return th && !omega(*th);
                }});
  for (std::uint32_t c = 0; c <= cat.bounds().max_timestamp; ++c) {
    qs.push_back({"laststamp>=" + std::to_string(c),
                  [c](const Val&, const SubjState& s) {
                    auto th = map_disjoint_union(s.self, s.other);
                    return th && last_stamp(*th) >= c;
                  }});
    qs.push_back({"selflocks>=" + std::to_string(c),
                  [c](const Val&, const SubjState& s) {
                    return count_lock_events(s.self) >= c;
                  }});
    qs.push_back({"otherlocks>=" + std::to_string(c),
                  [c](const Val&, const SubjState& s) {
                    return count_lock_events(s.other) >= c;
                  }});
    qs.push_back({"selfstamp>=" + std::to_string(c),
                  [c](const Val&, const SubjState& s) {
                    return last_stamp(s.self) >= c;
                  }});
  }
  qs.push_back({"ret-true", [](const Val& v, const SubjState&) {
                  return v.tag() == Val::Tag::kBool && v.as_bool();
                }});
  qs.push_back({"ret-unit", [](const Val& v, const SubjState&) {
                  return v.is_unit();
                }});

  auto trylock = cat.trylock_act();
  auto unlock = cat.unlock_act();
  ProgDenotation act_try = den_act(arena, spin, trylock.get());
  ProgDenotation act_unl = den_act(arena, spin, unlock.get());
  ProgDenotation ret_unit = den_ret(arena, spin, Val::unit());
  ProgDenotation bind_try = den_bind(
      arena, act_try, [&arena, spin, trylock, unlock](const Val& b) {
        return b.as_bool() ? den_ret(arena, spin, Val::unit())
                           : den_act(arena, spin, unlock.get());
      });
  ProgDenotation bind_unl = den_bind(arena, act_unl, act_try);
  ProgDenotation par_unl = den_par(arena, act_unl, act_unl);
  ProgDenotation par_mix = den_par(arena, act_try, act_unl);

  detail::VrfOracle oracle(cat, spin);
  const int S = static_cast<int>(spin->states().size());

  auto add = [&rep](const std::string& name, const std::string& anchor,
                    std::uint64_t instances, std::uint64_t lhs_true,
                    bool okay, Json witness) {
    CheckEntry e{name, anchor};
    e.stats["instances"] = instances;
    e.stats["lhs_true"] = lhs_true;
    if (!okay) {
      e.status = CheckStatus::kFail;
      e.witness = witness;
    }
    rep.checks.push_back(e);
  };

  // vrf_ret: stabilized Q at the return value implies vrf of ret.
  {
    std::uint64_t inst = 0, lhs_true = 0;
    bool okay = true;
    Json w;
    for (const Val& v :
         {Val::unit(), Val::boolean(true), Val::boolean(false)}) {
      ProgDenotation ret_v = den_ret(arena, spin, v);
      for (const auto& nq : qs) {
        for (int s = 0; s < S && okay; ++s) {
          ++inst;
          bool lhs = oracle.stab(
              s, [&](const SubjState& st) { return nq.q(v, st); });
          lhs_true += lhs;
          if (lhs && !oracle.vrf(ret_v, unroll, s, nq.q)) {
            okay = false;
            w = Json{{"rule", "vrf_ret"}, {"q", nq.name},
                     {"state", spin->state(s).str()}};
          }
        }
      }
    }
    add("vrf_ret", "logic/vrf-ret", inst, lhs_true, okay, w);
  }

  // vrf_act: stabilized effect analysis implies vrf of the action.
  {
    std::uint64_t inst = 0, lhs_true = 0;
    bool okay = true;
    Json w;
    for (const auto& [aname, act, den] :
         {std::tuple{std::string("trylock"), trylock, act_try},
          std::tuple{std::string("unlock"), unlock, act_unl}}) {
      for (const auto& nq : qs) {
        for (int s = 0; s < S && okay; ++s) {
          ++inst;
          auto inner = [&](const SubjState& st) {
            auto eff = apply_action(*spin, *act, st);
            if (!eff) return false;
            int k = spin->state_index(eff->first);
            if (k < 0) return false;
            Val v = eff->second;
            return oracle.stab(
                k, [&](const SubjState& st2) { return nq.q(v, st2); });
          };
          bool lhs = oracle.stab(s, inner);
          lhs_true += lhs;
          if (lhs && !oracle.vrf(den, unroll, s, nq.q)) {
            okay = false;
            w = Json{{"rule", "vrf_act"}, {"action", aname}, {"q", nq.name},
                     {"state", spin->state(s).str()}};
          }
        }
      }
    }
    add("vrf_act", "logic/vrf-act", inst, lhs_true, okay, w);
  }

  // vrf_bnd: vrf of the prefix with the continuation's vrf as post.
  {
    std::uint64_t inst = 0, lhs_true = 0;
    bool okay = true;
    Json w;
    for (int shape = 0; shape < 2 && okay; ++shape) {
      const ProgDenotation& e1 = shape == 0 ? act_try : act_unl;
      const ProgDenotation& whole = shape == 0 ? bind_try : bind_unl;
      for (const auto& nq : qs) {
        for (int s = 0; s < S && okay; ++s) {
          ++inst;
          PostPred mid = [&](const Val& b, const SubjState& st) {
            int k = spin->state_index(st);
            if (k < 0) return false;
            const ProgDenotation& cont =
                shape == 0 ? (b.as_bool() ? ret_unit : act_unl) : act_try;
            return oracle.vrf(cont, unroll, k, nq.q);
          };
          bool lhs = oracle.vrf(e1, unroll, s, mid);
          lhs_true += lhs;
          if (lhs && !oracle.vrf(whole, unroll, s, nq.q)) {
            okay = false;
            w = Json{{"rule", "vrf_bnd"}, {"q", nq.name},
                     {"state", spin->state(s).str()}};
          }
        }
      }
    }
    add("vrf_bnd", "logic/vrf-bnd", inst, lhs_true, okay, w);
  }

  // Subjective separating conjunction over predicates.
  auto star = [&pcm](const std::function<bool(const SubjState&)>& p1,
                     const std::function<bool(const SubjState&)>& p2,
                     const SubjState& s) {
    for (const auto& [s1, s2] : star_split(pcm, s))
      if (p1(s1) && p2(s2)) return true;
    return false;
  };

  // vrf_par: split the state, verify both sides, conclude for the pair.
  {
    std::uint64_t inst = 0, lhs_true = 0;
    bool okay = true;
    Json w;
    for (int shape = 0; shape < 2 && okay; ++shape) {
      const ProgDenotation& left = shape == 0 ? act_unl : act_try;
      const ProgDenotation& whole = shape == 0 ? par_unl : par_mix;
      for (std::size_t qi = 0; qi < qs.size() && okay; ++qi) {
        const auto& q1 = qs[qi];
        const auto& q2 = qs[(qi + 3) % qs.size()];
        PostPred qpair = [&q1, &q2, &star](const Val& v, const SubjState& s) {
          return star([&](const SubjState& s1) { return q1.q(v.first(), s1); },
                      [&](const SubjState& s2) { return q2.q(v.second(), s2); },
                      s);
        };
        for (int s = 0; s < S && okay; ++s) {
          ++inst;
          const SubjState& st = spin->state(s);
          bool lhs = star(
              [&](const SubjState& s1) {
                int k = spin->state_index(s1);
                return k >= 0 && oracle.vrf(left, unroll, k,
                                            [&](const Val& v,
                                                const SubjState& x) {
                                              return q1.q(v, x);
                                            });
              },
              [&](const SubjState& s2) {
                int k = spin->state_index(s2);
                return k >= 0 && oracle.vrf(act_unl, unroll, k,
                                            [&](const Val& v,
                                                const SubjState& x) {
                                              return q2.q(v, x);
                                            });
              },
              st);
          lhs_true += lhs;
          if (lhs && !oracle.vrf(whole, unroll, s, qpair)) {
            okay = false;
            w = Json{{"rule", "vrf_par"}, {"q1", q1.name}, {"q2", q2.name},
                     {"state", st.str()}};
          }
        }
      }
    }
    add("vrf_par", "logic/vrf-par", inst, lhs_true, okay, w);
  }

  // vrf_frame: a stable frame predicate survives alongside the program.
  {
    std::uint64_t inst = 0, lhs_true = 0;
    bool okay = true;
    Json w;
    for (int shape = 0; shape < 2 && okay; ++shape) {
      const ProgDenotation& prog = shape == 0 ? act_unl : act_try;
      for (std::size_t qi = 0; qi < qs.size() && okay; ++qi) {
        const auto& q1 = qs[qi];
        const auto& q2 = qs[(qi + 5) % qs.size()];
        auto stab_q2 = [&](const SubjState& s2) {
          int k = spin->state_index(s2);
          return k >= 0 && oracle.stab(k, [&](const SubjState& x) {
                   return q2.q(Val::unit(), x);
                 });
        };
        PostPred framed = [&](const Val& v, const SubjState& s) {
          return star([&](const SubjState& s1) { return q1.q(v, s1); },
                      [&](const SubjState& s2) {
                        return q2.q(Val::unit(), s2);
                      },
                      s);
        };
        for (int s = 0; s < S && okay; ++s) {
          ++inst;
          bool lhs = star(
              [&](const SubjState& s1) {
                int k = spin->state_index(s1);
                return k >= 0 &&
                       oracle.vrf(prog, unroll, k,
                                  [&](const Val& v, const SubjState& x) {
                                    return q1.q(v, x);
                                  });
              },
              stab_q2, spin->state(s));
          lhs_true += lhs;
          if (lhs && !oracle.vrf(prog, unroll, s, framed)) {
            okay = false;
            w = Json{{"rule", "vrf_frame"}, {"q1", q1.name}, {"q2", q2.name},
                     {"state", spin->state(s).str()}};
          }
        }
      }
    }
    add("vrf_frame", "logic/vrf-frame", inst, lhs_true, okay, w);
  }

  // vrf_morph: pull the postcondition through the morphism, conjoin a
  // simulation.
  {
    std::uint64_t inst = 0, lhs_true = 0;
    bool okay = true;
    Json w;
    detail::VrfOracle sc_oracle(cat, sc);
    auto f1 = cat.f_n(1);
    ProgDenotation morphed =
        den_morph(arena, f1.get(), Val::unit(), act_try);
    std::vector<PostPred> spin_qs = {
        [](const Val&, const SubjState&) { return true; },
        [](const Val&, const SubjState& s) {
          auto th = map_disjoint_union(s.self, s.other);
          return th && omega(*th);
        },
        [](const Val& v, const SubjState&) {
          return v.tag() != Val::Tag::kBool || v.as_bool() || true;
        },
        [](const Val&, const SubjState& s) {
          return count_lock_events(s.self) >= 1;
        }};
    for (std::uint32_t k0 = 0; k0 <= 2 && okay; ++k0) {
      auto sim =
          cat.counter_tracks_locks_sim(1, k0, Val::empty_map(), f1);
      for (std::size_t qi = 0; qi < spin_qs.size() && okay; ++qi) {
        const PostPred& q = spin_qs[qi];
        for (const SubjState& sw : sc->states()) {
          ++inst;
          if (!sim.pred(Val::unit(), sw)) continue;
          auto sv = f1->state_map(Val::unit(), sw);
          if (!sv) continue;
          int svi = spin->state_index(*sv);
          if (svi < 0) continue;
          bool lhs = oracle.vrf(act_try, unroll, svi, q);
          lhs_true += lhs;
          if (!lhs) continue;
          PostPred post = [&](const Val& v, const SubjState& sw2) {
            auto sv2 = f1->state_map(Val::unit(), sw2);
            return sv2 && q(v, *sv2) && sim.pred(Val::unit(), sw2);
          };
          int swi = sc->state_index(sw);
          if (!sc_oracle.vrf(morphed, unroll, swi, post)) {
            okay = false;
            w = Json{{"rule", "vrf_morph"}, {"q", qi}, {"state", sw.str()}};
          }
        }
      }
    }
    add("vrf_morph", "logic/vrf-morph", inst, lhs_true, okay, w);
  }

  // vrf_post: weaken the postcondition under an invariant.
  {
    std::uint64_t inst = 0, lhs_true = 0;
    bool okay = true;
    Json w;
    StatePred inv = [](const SubjState& s) {
      auto th = map_disjoint_union(s.self, s.other);
      return th && alternate(*th);
    };
    for (std::size_t i = 0; i < qs.size() && okay; ++i) {
      for (std::size_t j = 0; j < qs.size() && okay; ++j) {
        bool hyp = true;
        for (const Val& v : {Val::boolean(false), Val::boolean(true)}) {
          for (const SubjState& st : spin->states())
            if (inv(st) && qs[i].q(v, st) && !qs[j].q(v, st)) {
              hyp = false;
              break;
            }
          if (!hyp) break;
        }
        if (!hyp) continue;
        for (int s = 0; s < S && okay; ++s) {
          ++inst;
          bool lhs = inv(spin->state(s)) &&
                     oracle.vrf(act_try, unroll, s, qs[i].q);
          lhs_true += lhs;
          if (lhs && !oracle.vrf(act_try, unroll, s, qs[j].q)) {
            okay = false;
            w = Json{{"rule", "vrf_post"}, {"q1", qs[i].name},
                     {"q2", qs[j].name}, {"state", spin->state(s).str()}};
          }
        }
      }
    }
    add("vrf_post", "logic/vrf-post", inst, lhs_true, okay, w);
  }

  // vrf_cond: case analysis on a boolean.
  {
    std::uint64_t inst = 0, lhs_true = 0;
    bool okay = true;
    Json w;
    for (bool b : {false, true}) {
      const ProgDenotation& chosen = b ? act_try : act_unl;
      for (const auto& nq : qs) {
        for (int s = 0; s < S && okay; ++s) {
          ++inst;
          bool lhs = oracle.vrf(b ? act_try : act_unl, unroll, s, nq.q);
          lhs_true += lhs;
          if (lhs && !oracle.vrf(chosen, unroll, s, nq.q)) {
            okay = false;
            w = Json{{"rule", "vrf_cond"}, {"q", nq.name}};
          }
        }
      }
    }
    add("vrf_cond", "logic/vrf-cond", inst, lhs_true, okay, w);
  }

  return rep;
}

}  // namespace reswb

#endif  // RESWB_CHECKER_HPP_
