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

#ifndef RESWB_SCENARIOS_HPP_
#define RESWB_SCENARIOS_HPP_

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "reswb/checker.hpp"

namespace reswb {

struct ScenarioDef {
  std::string name;
  std::string description;
  std::function<void(Catalog&, CheckReport&)> run;
};

namespace scenarios {

inline void append(CheckReport& dst, const CheckReport& src) {
  for (const auto& c : src.checks) dst.checks.push_back(c);
}

// ---- triple instance builders ----

// lock: [h, k] from histories at most last_stamp; post logs a fresh lock.
inline std::vector<TripleInstance> lock_spec_instances(Catalog& cat,
                                                       const ResourceDef& r,
                                                       bool with_perm) {
  std::vector<TripleInstance> out;
  const std::uint32_t tmax = cat.bounds().max_timestamp;
  for (const SubjState& s0 : r.states()) {
    const Val self_h = with_perm ? s0.self.first() : s0.self;
    const Val other_h = with_perm ? s0.other.first() : s0.other;
    if (with_perm && s0.self.second() != Val::nat(0)) continue;  // pi_s = 0
    auto th = map_disjoint_union(self_h, other_h);
    for (std::uint32_t k = 0; k <= last_stamp(*th); ++k) {
      PostPred post = [self_h, k, tmax, with_perm](const Val&,
                                                   const SubjState& s) {
        const Val& h2 = with_perm ? s.self.first() : s.self;
        if (with_perm && s.self.second() != Val::nat(1)) return false;
        for (std::uint32_t t = k + 1; t <= tmax; ++t) {
          auto want = map_disjoint_union(self_h, map_singleton(t, ev_lock()));
          if (want && *want == h2) return true;
        }
        return false;
      };
      out.push_back(TripleInstance{
          "h=" + self_h.str() + ",k=" + std::to_string(k),
          r.state_index(s0), post});
    }
  }
  return out;
}

// unlock: either a fresh unlock got logged, or someone already had.
inline std::vector<TripleInstance> unlock_spec_instances(Catalog& cat,
                                                         const ResourceDef& r) {
  std::vector<TripleInstance> out;
  const std::uint32_t tmax = cat.bounds().max_timestamp;
  for (const SubjState& s0 : r.states()) {
    const Val self_h = s0.self;
    auto th0 = map_disjoint_union(s0.self, s0.other);
    for (std::uint32_t k = 0; k <= last_stamp(*th0); ++k) {
      PostPred post = [self_h, k, tmax](const Val&, const SubjState& s) {
        for (std::uint32_t t = k + 1; t <= tmax; ++t) {
          auto want = map_disjoint_union(self_h, map_singleton(t, ev_unlock()));
          if (want && *want == s.self) return true;
        }
        if (s.self != self_h) return false;
        auto th = map_disjoint_union(s.self, s.other);
        if (!th) return false;
        // Time 0 reads as unlocked, matching the last-op convention on the
        // empty history.
        if (k == 0) return true;
        for (std::uint32_t t = k; t <= tmax; ++t)
          if (map_lookup(*th, t) == std::optional<Val>(ev_unlock()))
            return true;
        return false;
      };
      out.push_back(TripleInstance{
          "h=" + self_h.str() + ",k=" + std::to_string(k),
          r.state_index(s0), post});
    }
  }
  return out;
}

// Composite counter program: kappa ends exactly bump higher than its
// snapshot.
inline std::vector<TripleInstance> composite_instances(Catalog& cat,
                                                       const ResourceDef& sc,
                                                       std::uint32_t bump) {
  std::vector<TripleInstance> out;
  const std::uint32_t n_cap =
      std::min(cat.bounds().gamma_n_max,
               cat.bounds().max_nat >= 3 ? cat.bounds().max_nat - 3 : 0);
  for (const SubjState& s0 : sc.states()) {
    std::uint32_t n = s0.self.second().as_nat();
    if (n > n_cap) continue;
    PostPred post = [n, bump](const Val&, const SubjState& s) {
      return s.self.second() == Val::nat(n + bump);
    };
    out.push_back(TripleInstance{"n=" + std::to_string(n) + ",h=" +
                                     s0.self.first().str(),
                                 sc.state_index(s0), post});
  }
  return out;
}

inline std::vector<TripleInstance> exlock_instances(const ResourceDef& csl) {
  std::vector<TripleInstance> out;
  for (const SubjState& s0 : csl.states()) {
    if (s0.self.second().first() != Val::atom(Val::kAtomOwnBar)) continue;
    if (s0.self.second().second() != Val::empty_map()) continue;
    PostPred post = [](const Val&, const SubjState& s) {
      return s.self.second().first() == Val::atom(Val::kAtomOwn) &&
             Catalog::res_invariant(s.self.second().second());
    };
    out.push_back(TripleInstance{"s=" + s0.str(), csl.state_index(s0), post});
  }
  return out;
}

inline std::vector<TripleInstance> exunlock_instances(Catalog& cat,
                                                      const ResourceDef& csl,
                                                      bool strong) {
  std::vector<TripleInstance> out;
  const std::uint32_t tmax = cat.bounds().max_timestamp;
  for (const SubjState& s0 : csl.states()) {
    if (s0.self.second().first() != Val::atom(Val::kAtomOwn)) continue;
    if (!Catalog::res_invariant(s0.self.second().second())) continue;
    const Val h = s0.self.first().first();
    PostPred post = [h, strong, tmax](const Val&, const SubjState& s) {
      if (s.self.second().first() != Val::atom(Val::kAtomOwnBar)) return false;
      if (s.self.second().second() != Val::empty_map()) return false;
      if (!strong) return true;
      // Disjunct elimination: the unlock always logged a fresh U event.
      for (std::uint32_t t = 1; t <= tmax; ++t) {
        auto want = map_disjoint_union(h, map_singleton(t, ev_unlock()));
        if (want && *want == s.self.first().first()) return true;
      }
      return false;
    };
    out.push_back(TripleInstance{"s=" + s0.str(), csl.state_index(s0), post});
  }
  return out;
}

inline std::vector<TripleInstance> quiescent_instances(const ResourceDef& priv,
                                                       std::uint32_t a,
                                                       std::uint32_t b) {
  std::vector<TripleInstance> out;
  for (const SubjState& s0 : priv.states()) {
    if (!Catalog::layout(enc_list({}), s0.self)) continue;
    PostPred post = [a, b](const Val&, const SubjState& s) {
      return Catalog::layout(enc_list({a, b}), s.self) ||
             Catalog::layout(enc_list({b, a}), s.self);
    };
    out.push_back(TripleInstance{"s=" + s0.str(), priv.state_index(s0), post});
  }
  return out;
}

// Paper push spec on Stack: starts with empty self history and heap, ends
// having logged exactly one fresh push event.
inline std::vector<TripleInstance> push_spec_instances(Catalog& cat,
                                                       const ResourceDef& st,
                                                       std::uint32_t v) {
  std::vector<TripleInstance> out;
  const std::uint32_t tmax = cat.stack_ts_max();
  for (const SubjState& s0 : st.states()) {
    if (s0.self.first() != Val::empty_map()) continue;   // tau_s = empty
    if (s0.self.second() != Val::empty_map()) continue;  // sigma_s = empty
    const std::uint32_t k = last_stamp(s0.other.first());
    PostPred post = [v, k, tmax](const Val&, const SubjState& s) {
      if (s.self.second() != Val::empty_map()) return false;
      const auto& es = s.self.first().entries();
      if (es.size() != 1) return false;
      std::uint32_t t = es[0].first;
      if (t <= k || t > tmax) return false;
      auto vs = dec_list(es[0].second.first());
      auto vs2 = dec_list(es[0].second.second());
      if (!vs || !vs2) return false;
      auto grown = *vs;
      grown.insert(grown.begin(), v);
      return grown == *vs2;
    };
    out.push_back(TripleInstance{"s=" + s0.str(), st.state_index(s0), post});
  }
  return out;
}

// ---- morphism extensional equality (category laws) ----

inline CheckEntry morphisms_extensionally_equal(const std::string& name,
                                                const MorphismDef& a,
                                                const MorphismDef& b) {
  CheckEntry e{name, "morphism/extensional-equality"};
  if (a.index_set != b.index_set || a.src->name() != b.src->name() ||
      a.dst->name() != b.dst->name()) {
    e.status = CheckStatus::kFail;
    e.witness = Json{{"kind", "counterexample"}, {"why", "shape mismatch"}};
    return e;
  }
  std::uint64_t inst = 0;
  for (const Val& x : a.index_set) {
    for (const SubjState& sw : a.dst->states()) {
      ++inst;
      auto sa = a.state_map(x, sw);
      auto sb = b.state_map(x, sw);
      bool same = (!sa && !sb) || (sa && sb && *sa == *sb);
      if (same) {
        for (const Transition& t : a.src->transitions()) {
          auto ta = a.trans_map(x, sw, t.name);
          auto tb = b.trans_map(x, sw, t.name);
          if (!((!ta && !tb) || (ta && tb && *ta == *tb))) {
            same = false;
            break;
          }
        }
      }
      if (!same) {
        e.status = CheckStatus::kFail;
        e.witness = Json{{"kind", "counterexample"},
                         {"state", sw.str()},
                         {"index", x.str()}};
        return e;
      }
    }
  }
  e.stats["instances"] = inst;
  return e;
}

// ---- the registry ----

inline std::vector<ScenarioDef> build_registry() {
  std::vector<ScenarioDef> defs;

  defs.push_back({"pcm-laws-hist", "monoid laws for bounded lock histories",
                  [](Catalog& cat, CheckReport& rep) {
                    append(rep, check_pcm_laws(*cat.lock_hist_pcm()));
                  }});
  defs.push_back({"pcm-laws-heap", "monoid laws for bounded boolean heaps",
                  [](Catalog& cat, CheckReport& rep) {
                    append(rep, check_pcm_laws(*cat.bool_heap_pcm()));
                  }});
  defs.push_back({"pcm-laws-nat", "monoid laws for bounded naturals",
                  [](Catalog& cat, CheckReport& rep) {
                    append(rep, check_pcm_laws(*cat.nats_pcm()));
                  }});
  defs.push_back({"pcm-laws-o", "monoid laws for the exclusive-ownership tokens",
                  [](Catalog& cat, CheckReport& rep) {
                    append(rep, check_pcm_laws(*cat.own_pcm()));
                  }});
  defs.push_back(
      {"pcm-laws-products", "monoid laws for product constructions",
       [](Catalog& cat, CheckReport& rep) {
         auto hist_nat = product_pcm(cat.lock_hist_pcm(), cat.nats_pcm());
         append(rep, check_pcm_laws(*hist_nat));
         append(rep, check_pcm_laws(
                         *product_pcm(cat.bool_heap_pcm(), cat.own_pcm())));
         append(rep,
                check_pcm_laws(*product_pcm(cat.nats_pcm(), cat.own_pcm())));
         CheckEntry unit_iso{"product-with-unit-size", "pcm/product-unit-iso"};
         auto u = product_pcm(cat.lock_hist_pcm(), unit_pcm());
         if (u->size() != cat.lock_hist_pcm()->size())
           unit_iso.status = CheckStatus::kFail;
         unit_iso.stats["carrier"] = u->size();
         rep.checks.push_back(unit_iso);
         CheckEntry scp{"sc-pcm-is-product", "pcm/product"};
         scp.stats["carrier"] = cat.sc()->pcm().size();
         if (cat.sc()->pcm().size() !=
             cat.lock_hist_pcm()->size() * cat.nats_pcm()->size())
           scp.status = CheckStatus::kFail;
         rep.checks.push_back(scp);
       }});
  defs.push_back(
      {"pcm-compat-omega", "compatibility axioms for history disjointness "
                           "and the exclusive-locking refinement",
       [](Catalog& cat, CheckReport& rep) {
         append(rep, check_compat_laws(defined_rel(cat.lock_hist_pcm())));
         CompatRel om{"omega-compat", cat.lock_hist_pcm(),
                      [](const Val& a, const Val& b) {
                        return omega_compat(a, b);
                      }};
         append(rep, check_compat_laws(om));
       }});
  defs.push_back(
      {"pcm-morphisms",
       "monoid morphisms: projections, the lock-status morphism, kernels, "
       "equalizers, restriction, and the restriction relation as an equalizer",
       [](Catalog& cat, CheckReport& rep) {
         PcmPtr hist = cat.lock_hist_pcm();
         PcmPtr nats = cat.nats_pcm();
         PcmPtr o = cat.own_pcm();
         PcmPtr hist_nat = product_pcm(hist, nats);
         PcmMorphDef proj{"fst", hist_nat, hist,
                          [](const Val& x) -> std::optional<Val> {
                            return x.first();
                          },
                          defined_rel(hist_nat)};
         append(rep, check_pcm_morph_laws(proj));
         Val own = Val::atom(Val::kAtomOwn), bar = Val::atom(Val::kAtomOwnBar);
         PcmMorphDef omega_m{"lock-status", hist, o,
                             [own, bar](const Val& h) -> std::optional<Val> {
                               return omega(h) ? own : bar;
                             },
                             CompatRel{"omega-compat", hist,
                                       [](const Val& a, const Val& b) {
                                         return omega_compat(a, b);
                                       }}};
         append(rep, check_pcm_morph_laws(omega_m));

         PcmMorphDef idm{"id", hist, hist,
                         [](const Val& x) -> std::optional<Val> { return x; },
                         defined_rel(hist)};
         CompatRel ker = morph_kernel(idm);
         CheckEntry ko{"kernel-of-identity-units-only", "pcm-morphism/kernel"};
         for (const Val& x : hist->carrier())
           for (const Val& y : hist->carrier())
             if (ker(x, y) != (x == hist->unit() && y == hist->unit())) {
               ko.status = CheckStatus::kFail;
               ko.witness = elem_witness("kernel", {x, y});
             }
         rep.checks.push_back(ko);
         append(rep, check_compat_laws(morph_kernel(omega_m)));
         append(rep, check_compat_laws(morph_equalizer(omega_m, omega_m)));
         append(rep,
                check_compat_laws(
                    morph_restrict(omega_m, defined_rel(hist)).domrel));

         // compose with identity is extensional identity
         auto composed = morph_compose(omega_m, idm);
         CheckEntry ce{"compose-with-identity", "pcm-morphism/composition-unit"};
         for (const Val& x : hist->carrier()) {
           auto a = composed.map(x);
           auto b = omega_m.map(x);
           if (!((!a && !b) || (a && b && *a == *b))) {
             ce.status = CheckStatus::kFail;
             ce.witness = elem_witness("compose-with-identity", {x});
             break;
           }
         }
         rep.checks.push_back(ce);

         // The exclusive-locking restriction relation, rebuilt with the
         // morphism combinators (token pairing against the lock status),
         // agrees with the direct encoding everywhere.
         PcmPtr parent = cat.cslp()->pcm_ptr();
         PcmPtr oo = product_pcm(o, o);
         PcmMorphDef perm_to_o{
             "permO", nats, o,
             [own, bar](const Val& n) -> std::optional<Val> {
               if (n.as_nat() == 0) return bar;
               if (n.as_nat() == 1) return own;
               return std::nullopt;
             },
             CompatRel{"sum<=1", nats, [](const Val& a, const Val& b) {
                         return a.as_nat() + b.as_nat() <= 1;
                       }}};
         PcmMorphDef proj_pi{"perm", parent, nats,
                             [](const Val& x) -> std::optional<Val> {
                               return x.first().second();
                             },
                             defined_rel(parent)};
         PcmMorphDef proj_alpha{"auth", parent, o,
                                [](const Val& x) -> std::optional<Val> {
                                  return x.second().first();
                                },
                                defined_rel(parent)};
         PcmMorphDef proj_tau{"hist", parent, hist,
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
         auto f = morph_join(
             morph_compose(inl, morph_compose(perm_to_o, proj_pi)),
             morph_compose(inr, proj_alpha));
         auto g = morph_compose(morph_compose(diag, omega_m), proj_tau);
         CompatRel eq = morph_equalizer(f, g);
         CompatRel direct = cat.inv_rel();
         CheckEntry eqe{"restriction-equals-equalizer",
                        "pcm-morphism/equalizer-restriction"};
         std::uint64_t pairs = 0;
         for (const Val& x : parent->carrier()) {
           for (const Val& y : parent->carrier()) {
             ++pairs;
             if (eq(x, y) != direct(x, y)) {
               eqe.status = CheckStatus::kFail;
               eqe.witness = elem_witness("equalizer-restriction", {x, y});
               break;
             }
           }
           if (eqe.status == CheckStatus::kFail) break;
         }
         eqe.stats["pairs"] = pairs;
         rep.checks.push_back(eqe);

         // sub-PCM over the trivial relation is the whole PCM.
         SubPcm triv = sub_pcm(hist, defined_rel(hist));
         CheckEntry se{"sub-pcm-of-defined-is-identity", "sub-pcm/trivial"};
         se.stats["carrier"] = triv.derived->size();
         if (triv.derived->size() != hist->size())
           se.status = CheckStatus::kFail;
         rep.checks.push_back(se);
         CheckEntry sz{"sub-pcm-carrier-shrinks", "sub-pcm/carrier-bound"};
         sz.stats["parent"] = cat.csl_slice().pcm.parent->size();
         sz.stats["derived"] = cat.csl_slice().pcm.derived->size();
         if (cat.csl_slice().pcm.derived->size() >
             cat.csl_slice().pcm.parent->size())
           sz.status = CheckStatus::kFail;
         rep.checks.push_back(sz);
       }});

  // ---- resource suites ----

  auto resource_scenario = [](const std::string& name, const std::string& desc,
                              std::function<ResourcePtr(Catalog&)> get,
                              bool with_lock_actions = false) {
    return ScenarioDef{
        name, desc, [get, with_lock_actions](Catalog& cat, CheckReport& rep) {
          ResourcePtr r = get(cat);
          append(rep, check_state_space(*r));
          for (const Transition& t : r->transitions())
            append(rep, check_transition(*r, t));
          if (with_lock_actions) {
            append(rep, check_action_local(*r, *cat.trylock_act()));
            append(rep, check_action_local(*r, *cat.unlock_act()));
            append(rep, check_erases_to(*r, *cat.trylock_act(),
                                        Catalog::cas_rmw));
            append(rep, check_erases_to(*r, *cat.unlock_act(),
                                        Catalog::write_false_rmw));
          }
        }};
  };

  defs.push_back(resource_scenario(
      "resource-spin", "spin lock resource: space, transitions, actions",
      [](Catalog& c) { return c.spin(); }, true));
  defs.push_back(resource_scenario(
      "resource-spin-perm",
      "spin lock with permissions to unlock: space, transitions, actions",
      [](Catalog& c) { return c.spin_perm(); }, true));
  defs.push_back(resource_scenario(
      "resource-counter", "ghost counter resource",
      [](Catalog& c) { return c.counter(); }));
  defs.push_back(resource_scenario(
      "resource-cslx", "heap-transfer resource for exclusive locking",
      [](Catalog& c) { return c.cslx(); }));
  defs.push_back(
      {"resource-stack", "concurrent stack resource with push histories",
       [](Catalog& cat, CheckReport& rep) {
         ResourcePtr r = cat.stack();
         append(rep, check_state_space(*r));
         for (const Transition& t : r->transitions())
           append(rep, check_transition(*r, t));
         for (std::uint32_t v = 1; v <= cat.bounds().stack_values; ++v) {
           append(rep, check_action_local(*r, *cat.push_act(v)));
           append(rep, check_erases_to(
                           *r, *cat.push_act(v),
                           [v](const Val& h) ->
                           std::optional<std::pair<Val, Val>> {
                             auto cell = map_lookup(h, Catalog::kStackPtr);
                             if (!cell) return std::nullopt;
                             auto xs = dec_list(*cell);
                             if (!xs) return std::nullopt;
                             auto grown = *xs;
                             grown.insert(grown.begin(), v);
                             return std::make_pair(
                                 map_set(h, Catalog::kStackPtr,
                                         enc_list(grown)),
                                 Val::unit());
                           }));
         }
         // Layout precision: at most one sub-heap lays out a given value.
         CheckEntry prec{"layout-precise", "stack/layout-precise"};
         std::uint64_t inst = 0;
         for (const Val& h : cat.side_heap_pcm()->carrier()) {
           for (const Val& vs : cat.stack_values()) {
             int found = 0;
             for (const auto& [h1, h2] : map_splits(h))
               if (Catalog::layout(vs, h1)) ++found;
             ++inst;
             if (found > 1) {
               prec.status = CheckStatus::kFail;
               prec.witness = elem_witness("layout-precise", {h, vs});
             }
           }
         }
         prec.stats["instances"] = inst;
         rep.checks.push_back(prec);
         // Global histories of members have no timestamp gaps.
         CheckEntry gaps{"history-gap-free", "stack/gap-free-history"};
         for (const SubjState& s : r->states()) {
           auto th = map_disjoint_union(s.self.first(), s.other.first());
           const auto& es = th->entries();
           for (std::size_t i = 0; i < es.size(); ++i)
             if (es[i].first != i + 1) {
               gaps.status = CheckStatus::kFail;
               gaps.witness = elem_witness("gap-free-history", {*th});
             }
         }
         rep.checks.push_back(gaps);
       }});
  defs.push_back(resource_scenario(
      "resource-priv", "private-heap resource with single-pointer commands",
      [](Catalog& c) { return c.priv(); }));

  defs.push_back(
      {"resource-sc", "combined spin/counter resource (tensor laws)",
       [](Catalog& cat, CheckReport& rep) {
         ResourcePtr sc = cat.sc();
         CheckEntry built{"couplings-footprint-preserving",
                          "tensor/footprint-re-checked"};
         built.stats["transitions"] = sc->transitions().size();
         rep.checks.push_back(built);  // construction would have thrown

         for (const char* tn : {"id_tr", "lock_tr*incr_tr.1",
                                "unlock_tr*id_tr"})
           append(rep, check_transition(*sc, *sc->transition(tn)));

         CheckEntry beta{"pair-projection-beta-eta", "product/beta-eta"};
         std::uint64_t inst = 0;
         for (const SubjState& s : sc->states()) {
           SubjState s1 = proj_state(s, 1);
           SubjState s2 = proj_state(s, 2);
           ++inst;
           if (pair_state(s1, s2) != s ||
               proj_state(pair_state(s1, s2), 1) != s1 ||
               proj_state(pair_state(s1, s2), 2) != s2) {
             beta.status = CheckStatus::kFail;
             beta.witness = Json{{"kind", "counterexample"},
                                 {"state", s.str()}};
             break;
           }
         }
         beta.stats["instances"] = inst;
         rep.checks.push_back(beta);

         CheckEntry er{"erasure-is-disjoint-union", "tensor/erasure-union"};
         for (const SubjState& s : sc->states()) {
           auto h = sc->erase(s);
           auto h1 = cat.spin()->erase(proj_state(s, 1));
           auto h2 = cat.counter()->erase(proj_state(s, 2));
           auto want = h1 && h2 ? map_disjoint_union(*h1, *h2) : std::nullopt;
           if (!h || !want || *h != *want) {
             er.status = CheckStatus::kFail;
             er.witness = Json{{"kind", "counterexample"}, {"state", s.str()}};
             break;
           }
         }
         rep.checks.push_back(er);

         CheckEntry mem{"member-implies-components-and-erasure",
                        "tensor/membership"};
         mem.stats["members"] = sc->states().size();
         for (const SubjState& s : sc->states())
           if (!cat.spin()->member(proj_state(s, 1)) ||
               !cat.counter()->member(proj_state(s, 2)) || !sc->erase(s)) {
             mem.status = CheckStatus::kFail;
             mem.witness = Json{{"kind", "counterexample"}, {"state", s.str()}};
             break;
           }
         rep.checks.push_back(mem);
       }});

  defs.push_back(
      {"resource-csl",
       "exclusive-locking resource: tensor, restriction relation, sub-PCM "
       "and sub-resource construction",
       [](Catalog& cat, CheckReport& rep) {
         const SubResource& slice = cat.csl_slice();
         append(rep, slice.pcm.axioms);
         append(rep, slice.pcm.recheck);
         ResourcePtr csl = slice.resource;

         CheckEntry strengthen{"membership-strengthened-by-relation",
                               "sub-resource/membership"};
         strengthen.stats["members"] = csl->states().size();
         strengthen.stats["parent_members"] = cat.cslp()->states().size();
         CompatRel rel = cat.inv_rel();
         for (const SubjState& s : csl->states())
           if (!cat.cslp()->member(s) || !rel(s.self, s.other)) {
             strengthen.status = CheckStatus::kFail;
             strengthen.witness =
                 Json{{"kind", "counterexample"}, {"state", s.str()}};
             break;
           }
         rep.checks.push_back(strengthen);

         append(rep, check_state_space(*csl));
         for (const char* tn :
              {"id_tr", "lock_tr*open_tr", "unlock_tr*close_tr",
               "id_tr*write_tr.true"})
           append(rep, check_transition(*csl, *csl->transition(tn)));
         append(rep, check_morphism_laws(*cat.iota_csl()));

         // In every restricted state at most one side holds the single
         // permission to unlock.
         CheckEntry perms{"permission-is-exclusive-bit",
                          "sub-resource/permission-range"};
         for (const SubjState& s : csl->states()) {
           std::uint32_t ps = s.self.first().second().as_nat();
           std::uint32_t po = s.other.first().second().as_nat();
           if (ps > 1 || po > 1 || ps + po > 1) {
             perms.status = CheckStatus::kFail;
             perms.witness =
                 Json{{"kind", "counterexample"}, {"state", s.str()}};
             break;
           }
         }
         perms.stats["members"] = csl->states().size();
         rep.checks.push_back(perms);
       }});

  // ---- morphisms and simulations ----

  defs.push_back(
      {"morph-laws",
       "resource morphism laws and the category structure (identity, "
       "composition, associativity)",
       [](Catalog& cat, CheckReport& rep) {
         for (std::uint32_t n : {1u, 2u, 42u})
           append(rep, check_morphism_laws(*cat.f_n(n)));
         append(rep, check_morphism_laws(*cat.spin_to_cslp()));
         append(rep, check_morphism_laws(*cat.spin_to_csl()));
         append(rep, check_morphism_laws(*cat.quiescence_family()));

         auto id_spin = identity_morphism(cat.spin());
         auto id_sc = identity_morphism(cat.sc());
         append(rep, check_morphism_laws(id_spin));
         rep.checks.push_back(morphisms_extensionally_equal(
             "identity-right-unit", compose(*cat.f_n(1), id_spin),
             *cat.f_n(1)));
         rep.checks.push_back(morphisms_extensionally_equal(
             "identity-left-unit", compose(id_sc, *cat.f_n(1)), *cat.f_n(1)));
         auto iota = cat.iota_csl();
         auto f = cat.spin_to_cslp();
         auto id_perm = identity_morphism(cat.spin_perm());
         rep.checks.push_back(morphisms_extensionally_equal(
             "composition-associative",
             compose(compose(*iota, *f), id_perm),
             compose(*iota, compose(*f, id_perm))));
       }});

  defs.push_back(
      {"sim-spin-counter",
       "counter-tracking simulations for the counter-attaching morphisms",
       [](Catalog& cat, CheckReport& rep) {
         for (std::uint32_t n : {1u, 2u, 42u}) {
           for (std::uint32_t k0 : {0u, 1u, 2u}) {
             auto sim = cat.counter_tracks_locks_sim(n, k0, Val::empty_map(),
                                                     cat.f_n(n));
             append(rep, check_simulation(sim, cat.bounds().interference_full));
           }
         }
         // Stability transport through f1 with a stable source predicate.
         auto sim = cat.counter_tracks_locks_sim(1, 0, Val::empty_map(),
                                                 cat.f_n(1));
         rep.checks.push_back(check_stability_transport(
             sim, "laststamp>=1", [](const SubjState& s) {
               auto th = map_disjoint_union(s.self, s.other);
               return th && last_stamp(*th) >= 1;
             }));
       }});

  defs.push_back(
      {"sim-csl",
       "the exclusive-locking restriction is an invariant; the ownership/"
       "heap correspondence is a simulation but not an invariant",
       [](Catalog& cat, CheckReport& rep) {
         auto inv_rep = check_invariant(cat.cslp(), "restriction-relation",
                                        cat.inv_state_pred(),
                                        cat.bounds().interference_full);
         append(rep, inv_rep);

         // The critical square: the restriction survives unlock*close.
         CheckEntry crit{"critical-unlock-close-exercised",
                         "simulation/critical-case"};
         std::uint64_t fired = 0;
         const Transition* t = cat.cslp()->transition("unlock_tr*close_tr");
         StatePred inv = cat.inv_state_pred();
         for (const SubjState& s : cat.cslp()->states()) {
           if (!inv(s)) continue;
           StepOut o = t->step(s);
           if (o.ok()) {
             ++fired;
             if (!inv(o.next)) {
               crit.status = CheckStatus::kFail;
               crit.witness =
                   Json{{"kind", "counterexample"}, {"state", s.str()}};
             }
           }
         }
         crit.stats["fired"] = fired;
         if (fired == 0) crit.status = CheckStatus::kVacuous;
         rep.checks.push_back(crit);

         append(rep, check_simulation(cat.csl_sim(),
                                      cat.bounds().interference_full));

         CheckEntry notinv{"sim-not-invariant-witnessed",
                           "simulation/not-an-invariant"};
         auto simrep = check_invariant(cat.csl(), "Sim", cat.sim_pred(),
                                       cat.bounds().interference_full);
         if (simrep.ok()) {
           notinv.status = CheckStatus::kFail;
           notinv.witness = Json{{"kind", "missing-counterexample"},
                                 {"detail", "Sim unexpectedly invariant"}};
         } else {
           for (const auto& c : simrep.checks)
             if (c.status == CheckStatus::kFail && c.witness)
               notinv.witness = *c.witness;
         }
         rep.checks.push_back(notinv);

         // A stable source predicate (our permission count is private)
         // pulled through the composed morphism stays stable in CSL.
         auto sim = cat.csl_sim();
         rep.checks.push_back(check_stability_transport(
             sim, "perm-at-most-one", [](const SubjState& s) {
               return s.self.is_pair() &&
                      s.self.second().tag() == Val::Tag::kNat &&
                      s.self.second().as_nat() <= 1;
             }));
       }});

  // ---- verified programs ----

  defs.push_back(
      {"spin-fig4",
       "composite program: lock bumping by one, vacuous unlock, lock "
       "bumping by two; the counter lands exactly three higher",
       [](Catalog& cat, CheckReport& rep) {
         auto prog = cat.composite_incr3_program();
         rep.checks.push_back(check_triple_entry(
             "counter-gains-three", "logic/hoare-triple", cat, cat.sc(), prog,
             composite_instances(cat, *cat.sc(), 3)));
       }});

  defs.push_back(
      {"spin-lock-spec",
       "lock meets its history spec; unlock meets its two-outcome spec",
       [](Catalog& cat, CheckReport& rep) {
         auto lock = cat.lock_program(cat.spin());
         rep.checks.push_back(check_triple_entry(
             "lock-logs-fresh-lock", "logic/hoare-triple", cat, cat.spin(),
             lock, lock_spec_instances(cat, *cat.spin(), false)));
         auto unlock = cat.unlock_program(cat.spin());
         rep.checks.push_back(check_triple_entry(
             "unlock-two-outcomes", "logic/hoare-triple", cat, cat.spin(),
             unlock, unlock_spec_instances(cat, *cat.spin())));
       }});

  defs.push_back(
      {"csl-exclusive",
       "exclusive lock/unlock derived by morphing the spin lock into the "
       "restricted heap-transfer resource",
       [](Catalog& cat, CheckReport& rep) {
         rep.checks.push_back(check_triple_entry(
             "exlock-acquires-heap", "logic/hoare-triple", cat, cat.csl(),
             cat.exlock_program(), exlock_instances(*cat.csl())));
         rep.checks.push_back(check_triple_entry(
             "exunlock-releases-heap", "logic/hoare-triple", cat, cat.csl(),
             cat.exunlock_program(),
             exunlock_instances(cat, *cat.csl(), false)));
         rep.checks.push_back(check_triple_entry(
             "exunlock-failure-disjunct-unreachable", "logic/hoare-triple",
             cat, cat.csl(), cat.exunlock_program(),
             exunlock_instances(cat, *cat.csl(), true)));
       }});

  defs.push_back(
      {"stack-quiescent",
       "two pushes in parallel, run quiescently in private state, leave "
       "exactly one of the two interleaved layouts",
       [](Catalog& cat, CheckReport& rep) {
         const std::uint32_t a = 1, b = 2;
         auto prog = cat.quiescent_push_pair(a, b);
         std::vector<Val> finals;
         rep.checks.push_back(check_triple_entry(
             "quiescent-final-layout", "logic/hoare-triple", cat, cat.priv(),
             prog, quiescent_instances(*cat.priv(), a, b), false, &finals));
         CheckEntry both{"both-interleavings-reached",
                         "logic/disjunction-complete"};
         bool ab = false, ba = false;
         for (const Val& chi : finals) {
           auto cell = map_lookup(chi, Catalog::kStackPtr);
           if (!cell) continue;
           ab |= *cell == enc_list({a, b});
           ba |= *cell == enc_list({b, a});
         }
         both.stats["finals"] = finals.size();
         if (!(ab && ba)) {
           both.status = CheckStatus::kFail;
           both.witness = Json{{"kind", "missing-counterexample"},
                               {"detail", "an interleaving never completed"}};
         }
         rep.checks.push_back(both);
         rep.checks.push_back(check_triple_entry(
             "push-logs-fresh-event", "logic/hoare-triple", cat, cat.stack(),
             cat.push_program(a), push_spec_instances(cat, *cat.stack(), a)));
       }});

  defs.push_back(
      {"semantics-lemmas",
       "stepping lemmas over every explored configuration of the program "
       "suites, the vrf rule suite, and stability checks",
       [](Catalog& cat, CheckReport& rep) {
         const int unroll = static_cast<int>(cat.bounds().unroll_depth);
         const bool full = cat.bounds().interference_full;

         struct Suite {
           std::string tag;
           ResourcePtr res;
           ProgDenotation den;
           std::vector<int> inits;
         };
         std::vector<Suite> suites;
         {
           auto insts = composite_instances(cat, *cat.sc(), 3);
           std::vector<int> inits;
           for (auto& i : insts) inits.push_back(i.init_state);
           suites.push_back(
               {"composite", cat.sc(), cat.composite_incr3_program(), inits});
         }
         {
           std::vector<int> inits;
           for (const SubjState& s : cat.spin()->states())
             inits.push_back(cat.spin()->state_index(s));
           suites.push_back(
               {"lock", cat.spin(), cat.lock_program(cat.spin()), inits});
           suites.push_back(
               {"unlock", cat.spin(), cat.unlock_program(cat.spin()), inits});
         }
         {
           std::vector<int> inits;
           for (auto& i : exlock_instances(*cat.csl()))
             inits.push_back(i.init_state);
           for (auto& i : exunlock_instances(cat, *cat.csl(), false))
             inits.push_back(i.init_state);
           suites.push_back(
               {"exclusive", cat.csl(), cat.exlock_program(), inits});
           suites.push_back(
               {"exclusive-unlock", cat.csl(), cat.exunlock_program(), inits});
         }
         {
           std::vector<int> inits;
           for (auto& i : quiescent_instances(*cat.priv(), 1, 2))
             inits.push_back(i.init_state);
           suites.push_back({"quiescent", cat.priv(),
                             cat.quiescent_push_pair(1, 2), inits});
         }
         for (auto& su : suites) {
           Explorer ex(cat.arena(), su.res, full);
           for (const Tree* t : su.den.maximal_trees(unroll))
             for (int s : su.inits) ex.intern(t, s);
           ex.expand();
           audit_semantics_lemmas(ex, rep, su.tag);
         }

         append(rep, check_vrf_rule_suite(cat));

         // Stability of the pre/postconditions used above.
         {
           const SubjState& some = cat.spin()->states().front();
           (void)some;
           Val h0 = Val::empty_map();
           append(rep, check_stability(
                           *cat.spin(), "lock-pre",
                           [h0](const SubjState& s) {
                             auto th = map_disjoint_union(s.self, s.other);
                             return s.self == h0 && th && last_stamp(*th) >= 1;
                           }));
           append(rep, check_stability(
                           *cat.spin(), "other-laststamp-lower-bound",
                           [](const SubjState& s) {
                             return last_stamp(s.other) >= 1;
                           }));
         }

         CheckEntry note{"seqstep-index-threading", "stepping/notation-note"};
         note.stats["note"] =
             "sequencing steps thread the evolved index tuple through, "
             "matching the parallel cases";
         rep.checks.push_back(note);
       }});

  // ---- deliberate failures ----

  defs.push_back(
      {"fixtures-negative",
       "deliberately broken fixtures: every check here is expected to fail",
       [](Catalog& cat, CheckReport& rep) {
         // A join that drops its right operand: commutativity breaks.
         {
           std::vector<Val> carrier{Val::nat(0), Val::nat(1), Val::nat(2)};
           PcmDef broken("broken-join", carrier, Val::nat(0),
                         [](const Val& a, const Val&) -> std::optional<Val> {
                           return a;
                         });
           append(rep, check_pcm_laws(broken));
         }
         // A relation that misses unitality at the unit itself.
         {
           PcmPtr hist = cat.lock_hist_pcm();
           CompatRel r{"nonempty-disjoint", hist,
                       [hist](const Val& a, const Val& b) {
                         return hist->defined(a, b) &&
                                a != Val::empty_map() && b != Val::empty_map();
                       }};
           append(rep, check_compat_laws(r));
         }
         // A map that swaps the unit.
         {
           PcmPtr hist = cat.lock_hist_pcm();
           PcmPtr o = cat.own_pcm();
           PcmMorphDef bad{"unit-swap", hist, o,
                           [](const Val&) -> std::optional<Val> {
                             return Val::atom(Val::kAtomOwn);
                           },
                           defined_rel(hist)};
           append(rep, check_pcm_morph_laws(bad));
         }
         // A non-global membership predicate.
         {
           auto fixture = std::make_shared<ResourceDef>(
               "NonGlobal", cat.lock_hist_pcm(),
               std::vector<Val>{Val::unit()},
               StateSpace{[](const SubjState& s) {
                            return s.self == Val::empty_map();
                          },
                          [](const SubjState&) -> std::optional<Val> {
                            return Val::empty_map();
                          }},
               std::vector<Transition>{});
           append(rep, check_state_space(*fixture));
         }
         // A transition that mutates the other component.
         {
           Transition bad;
           bad.name = "steal_tr";
           bad.step = [](const SubjState& s) -> StepOut {
             if (s.other.entries().empty()) return StepOut::blocked();
             auto es = s.other.entries();
             Val::MapRep keep(es.begin() + 1, es.end());
             auto grown = map_set(s.self, es[0].first, es[0].second);
             return StepOut::stepped(
                 SubjState{grown, s.joint, Val::map(std::move(keep))});
           };
           append(rep, check_transition(*cat.spin(), bad));
         }
         // An action that branches on private state: not local.
         {
           ActionDef bad{"selfish_act",
                         [](const SubjState& s)
                             -> std::optional<std::pair<std::string, Val>> {
                           if (s.self == Val::empty_map())
                             return std::make_pair(std::string("id_tr"),
                                                   Val::boolean(false));
                           return std::make_pair(std::string("id_tr"),
                                                 Val::boolean(true));
                         },
                         {Val::boolean(false), Val::boolean(true)}};
           append(rep, check_action_local(*cat.spin(), bad));
         }
         // The wrong reference command for trylock.
         {
           append(rep, check_erases_to(*cat.spin(), *cat.trylock_act(),
                                       Catalog::write_false_rmw));
         }
         // A non-invariant relation is refused by the sub-resource
         // construction, naming the violating transition.
         {
           CheckEntry e{"sub-resource-of-noninvariant-relation",
                        "sub-resource/requires-invariant"};
           PcmPtr parent = cat.cslp()->pcm_ptr();
           CompatRel weak{"histories-only", parent,
                          [parent](const Val& x, const Val& y) {
                            return parent->defined(x, y) &&
                                   omega_compat(x.first().first(),
                                                y.first().first());
                          }};
           e.status = CheckStatus::kFail;
           try {
             sub_resource(cat.cslp(), weak, "CSL-broken");
             e.witness = Json{{"kind", "missing-counterexample"},
                              {"detail", "construction was not refused"}};
           } catch (const ConstructionError& err) {
             e.witness = Json{{"kind", "refusal"},
                              {"detail", err.what()},
                              {"info", err.detail}};
           }
           rep.checks.push_back(e);
         }
         // The mutated composite postcondition: counter gains only two.
         {
           auto prog = cat.composite_incr3_program();
           CheckEntry e = check_triple_entry(
               "counter-gains-two-is-wrong", "logic/hoare-triple", cat,
               cat.sc(), prog, composite_instances(cat, *cat.sc(), 2));
           rep.checks.push_back(e);
         }
         // An unstable predicate.
         {
           append(rep, check_stability(*cat.spin(), "other-history-empty",
                                       [](const SubjState& s) {
                                         return s.other == Val::empty_map();
                                       }));
         }
       }});

  std::sort(defs.begin(), defs.end(),
            [](const ScenarioDef& a, const ScenarioDef& b) {
              return a.name < b.name;
            });
  return defs;
}

}  // namespace scenarios

inline const std::vector<ScenarioDef>& scenario_registry() {
  static const std::vector<ScenarioDef> defs = scenarios::build_registry();
  return defs;
}

inline const ScenarioDef* find_scenario(const std::string& name) {
  for (const auto& d : scenario_registry())
    if (d.name == name) return &d;
  return nullptr;
}

/** Run a registered scenario at the given bounds. */
inline CheckReport run_scenario(const std::string& name, const Bounds& bounds) {
  const ScenarioDef* def = find_scenario(name);
  if (!def) throw ConstructionError("unknown scenario \"" + name + "\"");
  Catalog cat(bounds);
  CheckReport rep;
  rep.scenario = name;
  rep.bounds = bounds;
  def->run(cat, rep);
  return rep;
}

/** Scenario run configuration; unknown keys are rejected. */
struct RunConfig {
  std::string scenario;
  Bounds bounds;
  std::vector<std::string> checks;  // empty: the scenario's full list
  std::string output = "text";
  std::string output_path;
};

inline RunConfig parse_config(const Json& j) {
  RunConfig cfg;
  for (const auto& [key, val] : j.items()) {
    if (key == "scenario") {
      cfg.scenario = val.get<std::string>();
    } else if (key == "bounds") {
      cfg.bounds = Bounds::from_json(val);
    } else if (key == "checks") {
      for (const auto& c : val) cfg.checks.push_back(c.get<std::string>());
    } else if (key == "output") {
      cfg.output = val.get<std::string>();
      if (cfg.output != "text" && cfg.output != "json")
        throw ConstructionError("output must be \"text\" or \"json\"");
    } else if (key == "output_path") {
      cfg.output_path = val.get<std::string>();
    } else {
      throw ConstructionError("unknown config key \"" + key + "\"");
    }
  }
  if (cfg.scenario.empty())
    throw ConstructionError("config is missing \"scenario\"");
  if (!find_scenario(cfg.scenario))
    throw ConstructionError("unknown scenario \"" + cfg.scenario + "\"");
  return cfg;
}

/**
 * Re-execute a recorded failure: re-run the check at the recorded bounds
 * and require the identical witness, then render the trace states.
 */
struct ReplayResult {
  bool reproduced = false;
  std::string rendering;
};

inline ReplayResult replay(const Json& witness_file) {
  ReplayResult out;
  const std::string scenario = witness_file.at("scenario").get<std::string>();
  const std::string check = witness_file.at("check").get<std::string>();
  Bounds bounds = Bounds::from_json(witness_file.at("bounds"));
  const Json& recorded = witness_file.at("witness");

  CheckReport rep = run_scenario(scenario, bounds);
  const CheckEntry* entry = rep.find(check);
  std::string render;
  render += "scenario " + scenario + ", check " + check + "\n";
  if (recorded.contains("initial"))
    render += "initial: " + recorded.at("initial").get<std::string>() + "\n";
  if (recorded.contains("steps"))
    for (const auto& st : recorded.at("steps")) {
      std::string kind = st.at("kind").get<std::string>();
      render += "  " + kind + " " +
                (kind == "env" ? st.at("transition").get<std::string>()
                               : st.at("path").get<std::string>()) +
                " -> " + st.at("state").get<std::string>();
      if (st.contains("erasure"))
        render += "  |erased " + st.at("erasure").get<std::string>();
      render += "\n";
    }
  if (recorded.contains("violation"))
    render += "violation: " + recorded.at("violation").get<std::string>() + "\n";
  if (!entry || !entry->witness) {
    render += "replay: check no longer produces a witness\n";
    out.rendering = render;
    return out;
  }
  out.reproduced = *entry->witness == recorded;
  render += out.reproduced ? "replay: failure reproduced\n"
                           : "replay: witness drifted\n";
  out.rendering = render;
  return out;
}

}  // namespace reswb

#endif  // RESWB_SCENARIOS_HPP_
