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

#ifndef RESWB_MORPHISM_HPP_
#define RESWB_MORPHISM_HPP_

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "reswb/resource.hpp"

namespace reswb {

/**
 * An indexed family of resource morphisms src -> dst. The state map is
 * contravariant (dst states to src states), the transition map covariant
 * (src transitions to dst transitions, with access to the current dst
 * state), and the frame map carries dst frames to src frames. A plain
 * morphism is the singleton-index case.
 */
struct MorphismDef {
  std::string name;
  ResourcePtr src;
  ResourcePtr dst;
  std::vector<Val> index_set;  // singleton {()} for plain morphisms
  std::function<std::optional<SubjState>(const Val&, const SubjState&)>
      state_map;
  std::function<std::optional<std::string>(const Val&, const SubjState&,
                                           const std::string&)>
      trans_map;
  std::function<Val(const Val&)> frame_map;  // M(dst) -> M(src), total

  bool singleton() const {
    return index_set.size() == 1 && index_set[0].is_unit();
  }
};

inline MorphismDef identity_morphism(ResourcePtr v) {
  return MorphismDef{
      "id[" + v->name() + "]",
      v,
      v,
      {Val::unit()},
      [](const Val&, const SubjState& s) -> std::optional<SubjState> {
        return s;
      },
      [](const Val&, const SubjState&,
         const std::string& t) -> std::optional<std::string> { return t; },
      [](const Val& p) { return p; }};
}

/**
 * Composition g o f for f : U -> V and g : V -> W. Indices pair up
 * componentwise; a singleton side collapses away so plain compositions
 * stay plain.
 */
inline MorphismDef compose(const MorphismDef& g, const MorphismDef& f) {
  if (f.dst->name() != g.src->name())
    throw ConstructionError("compose: " + f.name + " lands in " +
                            f.dst->name() + " but " + g.name + " starts at " +
                            g.src->name());
  const bool gs = g.singleton(), fs = f.singleton();
  std::vector<Val> index_set;
  if (gs && fs) {
    index_set = {Val::unit()};
  } else if (gs) {
    index_set = f.index_set;
  } else if (fs) {
    index_set = g.index_set;
  } else {
    for (const Val& xg : g.index_set)
      for (const Val& xf : f.index_set) index_set.push_back(Val::pair(xg, xf));
  }
  auto split = [gs, fs](const Val& x) -> std::pair<Val, Val> {
    if (gs && fs) return {Val::unit(), Val::unit()};
    if (gs) return {Val::unit(), x};
    if (fs) return {x, Val::unit()};
    return {x.first(), x.second()};
  };

  auto gsm = g.state_map;
  auto fsm = f.state_map;
  auto gtm = g.trans_map;
  auto ftm = f.trans_map;
  auto gfm = g.frame_map;
  auto ffm = f.frame_map;

  return MorphismDef{
      g.name + "o" + f.name, f.src, g.dst, std::move(index_set),
      [gsm, fsm, split](const Val& x,
                        const SubjState& sw) -> std::optional<SubjState> {
        auto [xg, xf] = split(x);
        auto sv = gsm(xg, sw);
        if (!sv) return std::nullopt;
        return fsm(xf, *sv);
      },
      [gsm, gtm, ftm, split](const Val& x, const SubjState& sw,
                             const std::string& tu)
          -> std::optional<std::string> {
        auto [xg, xf] = split(x);
        auto sv = gsm(xg, sw);
        if (!sv) return std::nullopt;
        auto tv = ftm(xf, *sv, tu);
        if (!tv) return std::nullopt;
        return gtm(xg, sw, *tv);
      },
      [gfm, ffm](const Val& p) { return ffm(gfm(p)); }};
}

/** The other-steps set for a state: reflexive-transitive environment closure. */
inline std::vector<SubjState> osteps(const ResourceDef& r, const SubjState& s) {
  int i = r.state_index(s);
  if (i < 0)
    throw ConstructionError("osteps: state is not in the space of " + r.name());
  std::vector<SubjState> out;
  for (int j : r.osteps_closure(i)) out.push_back(r.state(j));
  return out;
}

// Stabilization: Q must survive any amount of environment interference.
inline bool stab(const ResourceDef& r, const StatePred& q, int state_idx,
                 bool full_interference = true) {
  if (!full_interference) return q(r.state(state_idx));
  for (int j : r.osteps_closure(state_idx))
    if (!q(r.state(j))) return false;
  return true;
}

/** Morphism laws: locality of both maps, other-fixity, index injectivity. */
inline CheckReport check_morphism_laws(const MorphismDef& m) {
  CheckReport rep;
  rep.scenario = "morphism-laws:" + m.name;
  const ResourceDef& W = *m.dst;
  const ResourceDef& V = *m.src;
  const PcmDef& pw = W.pcm();
  const PcmDef& pv = V.pcm();
  auto decomp_w = detail::DecompTable::build(pw);
  auto decomp_v = detail::DecompTable::build(pv);

  CheckEntry locS{"state-map-locality:" + m.name, "morphism/state-map-locality"};
  CheckEntry locD{"trans-map-locality:" + m.name, "morphism/trans-map-locality"};
  CheckEntry ofix{"other-fixity:" + m.name, "morphism/other-fixity"};
  CheckEntry inj{"index-injectivity:" + m.name, "morphism/index-injectivity"};

  std::uint64_t framings = 0;
  for (const Val& x : m.index_set) {
    for (const SubjState& mw : W.states()) {
      auto sv = m.state_map(x, mw);
      const int oi = pw.index_of(mw.other);
      for (const auto& [pi, resti] : decomp_w.by_target[oi]) {
        const Val& frame = pw.at(pi);
        const Val& rest = pw.at(resti);
        auto self_up = pw.join(mw.self, frame);
        if (!self_up) continue;
        ++framings;
        SubjState up{*self_up, mw.joint, rest};  // s_w <| p

        if (locS.status == CheckStatus::kPass && sv) {
          // mw = s_w |> p; find s'_v with sv = s'_v |> phi(p) and
          // f_Sigma x (s_w <| p) = s'_v <| phi(p).
          const Val fp = m.frame_map(frame);
          bool found = false;
          int fpi = pv.index_of(fp);
          int svoi = pv.index_of(sv->other);
          if (fpi >= 0 && svoi >= 0) {
            auto mapped_up = m.state_map(x, up);
            for (const auto& [qi, rvi] : decomp_v.by_target[svoi]) {
              if (qi != fpi) continue;
              const Val& rest_v = pv.at(rvi);
              auto self_v_up = pv.join(sv->self, fp);
              if (!self_v_up) continue;
              if (mapped_up &&
                  *mapped_up == SubjState{*self_v_up, sv->joint, rest_v}) {
                found = true;
                break;
              }
            }
          }
          if (!found) {
            locS.status = CheckStatus::kFail;
            locS.witness = state_witness("state-map-locality", mw, frame);
          }
        }

        if (locD.status == CheckStatus::kPass) {
          for (const Transition& tv : V.transitions()) {
            auto t1 = m.trans_map(x, mw, tv.name);
            if (!t1) continue;
            auto t2 = m.trans_map(x, up, tv.name);
            if (!t2 || *t2 != *t1) {
              locD.status = CheckStatus::kFail;
              locD.witness = state_witness("trans-map-locality", mw, frame);
              break;
            }
          }
        }
      }
    }
  }
  locS.stats["framings"] = framings;
  rep.checks.push_back(locS);
  rep.checks.push_back(locD);

  // Other-fixity across indices: equal dst others give equal src others.
  {
    std::unordered_map<Val, std::optional<Val>, ValHash> seen;
    for (const Val& x : m.index_set) {
      for (const SubjState& sw : W.states()) {
        auto sv = m.state_map(x, sw);
        if (!sv) continue;
        auto [it, fresh] = seen.emplace(sw.other, sv->other);
        if (!fresh && *(it->second) != sv->other) {
          ofix.status = CheckStatus::kFail;
          Json w;
          w["kind"] = "counterexample";
          w["law"] = "other-fixity";
          w["state"] = sw.str();
          w["index"] = x.str();
          ofix.witness = w;
          break;
        }
      }
      if (ofix.status == CheckStatus::kFail) break;
    }
  }
  rep.checks.push_back(ofix);

  {
    std::unordered_map<SubjState, Val, SubjStateHash> image;
    for (const Val& x : m.index_set) {
      for (const SubjState& sw : W.states()) {
        auto sv = m.state_map(x, sw);
        if (!sv) continue;
        auto [it, fresh] = image.emplace(*sv, x);
        if (!fresh && it->second != x) {
          inj.status = CheckStatus::kFail;
          Json w;
          w["kind"] = "counterexample";
          w["law"] = "index-injectivity";
          w["indices"] = Json::array({it->second.str(), x.str()});
          w["image"] = sv->str();
          inj.witness = w;
          break;
        }
      }
      if (inj.status == CheckStatus::kFail) break;
    }
  }
  rep.checks.push_back(inj);
  return rep;
}

/**
 * An f-simulation: a predicate over indices and dst states making the
 * morphing squares commute and surviving environment interference.
 */
struct SimulationDef {
  std::string name;
  const MorphismDef* morphism;
  std::function<bool(const Val&, const SubjState&)> pred;
};

/**
 * Simulation laws. Clause 1: every src transition step from a mapped state
 * is matched by the mapped transition in dst, re-establishing the
 * predicate at a possibly new index. Clause 2: dst interference stays
 * inside the predicate and maps to src interference. Steps that are stuck
 * only at the bounded-model horizon are skipped and counted.
 */
inline CheckReport check_simulation(const SimulationDef& sim,
                                    bool full_interference = true) {
  CheckReport rep;
  rep.scenario = "simulation:" + sim.name;
  const MorphismDef& m = *sim.morphism;
  const ResourceDef& W = *m.dst;
  const ResourceDef& V = *m.src;

  CheckEntry fwd{"diagram-forward:" + sim.name, "simulation/diagram-forward"};
  CheckEntry bwd{"interference-backward:" + sim.name,
                 "simulation/interference-backward"};
  std::uint64_t squares = 0, horizon_skips = 0, pred_states = 0;

  for (const Val& x : m.index_set) {
    for (const SubjState& sw : W.states()) {
      if (!sim.pred(x, sw)) continue;
      ++pred_states;
      auto sv = m.state_map(x, sw);
      if (!sv) continue;

      if (fwd.status == CheckStatus::kPass) {
        for (const Transition& tv : V.transitions()) {
          StepOut sv_out = tv.step(*sv);
          if (sv_out.kind == StepOut::Kind::kHorizon) {
            ++horizon_skips;
            continue;
          }
          if (!sv_out.ok()) continue;
          ++squares;
          auto fail = [&](const char* why) {
            fwd.status = CheckStatus::kFail;
            Json w;
            w["kind"] = "counterexample";
            w["law"] = "diagram-forward";
            w["why"] = why;
            w["index"] = x.str();
            w["state"] = sw.str();
            w["transition"] = tv.name;
            fwd.witness = w;
          };
          auto twn = m.trans_map(x, sw, tv.name);
          if (!twn) {
            fail("transition-map-undefined");
            break;
          }
          const Transition* tw = W.transition(*twn);
          if (!tw) {
            fail("transition-map-off-resource");
            break;
          }
          StepOut sw_out = tw->step(sw);
          if (sw_out.kind == StepOut::Kind::kHorizon) {
            ++horizon_skips;
            continue;
          }
          if (!sw_out.ok()) {
            fail("target-stuck");
            break;
          }
          bool matched = false;
          for (const Val& x2 : m.index_set) {
            auto sv2 = m.state_map(x2, sw_out.next);
            if (sv2 && *sv2 == sv_out.next && sim.pred(x2, sw_out.next)) {
              matched = true;
              break;
            }
          }
          if (!matched) {
            fail("square-does-not-close");
            break;
          }
        }
      }

      if (bwd.status == CheckStatus::kPass) {
        int swi = W.state_index(sw);
        int svi = V.state_index(*sv);
        if (svi < 0) {
          bwd.status = CheckStatus::kFail;
          Json w;
          w["kind"] = "counterexample";
          w["law"] = "interference-backward";
          w["why"] = "state-map-off-space";
          w["state"] = sw.str();
          bwd.witness = w;
        } else if (full_interference) {
          for (int j : W.osteps_closure(swi)) {
            const SubjState& sw2 = W.state(j);
            auto sv2 = m.state_map(x, sw2);
            bool okay = sim.pred(x, sw2) && sv2.has_value();
            if (okay) {
              int svi2 = V.state_index(*sv2);
              okay = svi2 >= 0 && V.osteps_reaches(svi, svi2);
            }
            if (!okay) {
              bwd.status = CheckStatus::kFail;
              Json w;
              w["kind"] = "counterexample";
              w["law"] = "interference-backward";
              w["index"] = x.str();
              w["state"] = sw.str();
              w["interfered"] = sw2.str();
              bwd.witness = w;
              break;
            }
          }
        }
      }
    }
    if (fwd.status == CheckStatus::kFail && bwd.status == CheckStatus::kFail)
      break;
  }
  fwd.stats["squares"] = squares;
  fwd.stats["horizon_skips"] = horizon_skips;
  fwd.stats["pred_states"] = pred_states;
  rep.checks.push_back(fwd);
  rep.checks.push_back(bwd);
  return rep;
}

/** An invariant is an id-simulation. */
inline CheckReport check_invariant(ResourcePtr v, const std::string& name,
                                   const StatePred& j,
                                   bool full_interference = true) {
  auto id = std::make_shared<MorphismDef>(identity_morphism(v));
  SimulationDef sim{name, id.get(),
                    [j](const Val&, const SubjState& s) { return j(s); }};
  CheckReport rep = check_simulation(sim, full_interference);
  rep.scenario = "invariant:" + name;
  return rep;
}

/** Sub-resource: same type, transitions and erasure, restricted PCM/space. */
struct SubResource {
  ResourcePtr resource;
  MorphismDef iota;  // parent -> sub, inclusion on states, identity on trans
  SubPcm pcm;
};

inline SubResource sub_resource(ResourcePtr v, const CompatRel& rel,
                                const std::string& name) {
  // The relation must induce an invariant of v, else the restricted space
  // would not be closed under v's transitions. Checked before carving the
  // sub-PCM, which is the expensive part.
  auto induced = [rel](const SubjState& s) { return rel(s.self, s.other); };
  CheckReport inv = check_invariant(v, "induced:" + rel.name, induced);
  if (!inv.ok()) {
    for (const auto& c : inv.checks)
      if (c.status == CheckStatus::kFail)
        throw ConstructionError(
            "sub_resource refused: relation " + rel.name +
                " is not invariant under " +
                (c.witness && c.witness->contains("transition")
                     ? (*c.witness)["transition"].get<std::string>()
                     : std::string("interference")),
            c.witness ? *c.witness : Json::object());
  }

  SubPcm sp = sub_pcm(v->pcm_ptr(), rel);

  auto vmember = v->space().member;
  StatePred member = [vmember, rel](const SubjState& s) {
    return vmember(s) && rel(s.self, s.other);
  };
  auto res = std::make_shared<ResourceDef>(
      name, sp.derived, v->joint_universe(),
      StateSpace{member, v->space().erase}, v->transitions(),
      ResourceDef::Candidates::kExplicit, v->states());

  ResourcePtr sub = res;
  MorphismDef iota{
      "iota[" + name + "]",
      v,
      sub,
      {Val::unit()},
      [](const Val&, const SubjState& s) -> std::optional<SubjState> {
        return s;
      },
      [](const Val&, const SubjState&,
         const std::string& t) -> std::optional<std::string> { return t; },
      [](const Val& p) { return p; }};
  return SubResource{sub, std::move(iota), std::move(sp)};
}

/**
 * Stability transport: a src-stable predicate pulled back through a
 * morphism and conjoined with a simulation is dst-stable. This is the
 * soundness core of the morphing rule, checked empirically.
 */
inline CheckEntry check_stability_transport(const SimulationDef& sim,
                                            const std::string& qname,
                                            const StatePred& q_src) {
  const MorphismDef& m = *sim.morphism;
  const ResourceDef& W = *m.dst;
  const ResourceDef& V = *m.src;
  CheckEntry e{"stability-transport:" + sim.name + "/" + qname,
               "morphism/stability-transport"};

  // Hypothesis: q is stable in the source.
  for (const SubjState& sv : V.states()) {
    int i = V.state_index(sv);
    if (q_src(sv) && !stab(V, q_src, i)) {
      e.status = CheckStatus::kFail;
      e.witness = elem_witness("hypothesis-not-stable", {sv.self});
      return e;
    }
  }

  std::uint64_t instances = 0;
  for (const Val& x : m.index_set) {
    auto lifted = [&](const SubjState& sw) {
      if (!sim.pred(x, sw)) return false;
      auto sv = m.state_map(x, sw);
      return sv && q_src(*sv);
    };
    for (const SubjState& sw : W.states()) {
      if (!lifted(sw)) continue;
      ++instances;
      for (int j : W.osteps_closure(W.state_index(sw))) {
        if (!lifted(W.state(j))) {
          e.status = CheckStatus::kFail;
          Json w;
          w["kind"] = "counterexample";
          w["law"] = "stability-transport";
          w["state"] = sw.str();
          w["interfered"] = W.state(j).str();
          e.witness = w;
          return e;
        }
      }
    }
  }
  e.stats["instances"] = instances;
  return e;
}

}  // namespace reswb

#endif  // RESWB_MORPHISM_HPP_
