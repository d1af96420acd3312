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

#ifndef RESWB_RESOURCE_HPP_
#define RESWB_RESOURCE_HPP_

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "reswb/pcm.hpp"
#include "reswb/state.hpp"
#include "reswb/val.hpp"

namespace reswb {

/**
 * Outcome of applying a transition's step function.
 *
 * kBlocked means the guard is semantically false (the transition cannot
 * fire, ever). kHorizon means the guard holds but the update would leave
 * the bounded carrier (a fresh timestamp past the last representable one, a
 * sum past the nat bound, ...). Explorers treat horizon steps as the edge
 * of the bounded model rather than as faults.
 */
struct StepOut {
  enum class Kind { kStepped, kBlocked, kHorizon };
  Kind kind = Kind::kBlocked;
  SubjState next;

  static StepOut stepped(SubjState s) {
    return StepOut{Kind::kStepped, std::move(s)};
  }
  static StepOut blocked() { return StepOut{}; }
  static StepOut horizon() { return StepOut{Kind::kHorizon, {}}; }
  bool ok() const { return kind == Kind::kStepped; }
};

/**
 * A transition: deterministic partial step function, plus an optional
 * relational formula used to re-verify partial-functionality against the
 * declarative definition.
 */
struct Transition {
  std::string name;
  std::function<StepOut(const SubjState&)> step;
  std::function<bool(const SubjState&, const SubjState&)> rel;  // optional

  bool is_idle() const { return name == "id_tr"; }
};

inline Transition id_transition() {
  return Transition{
      "id_tr", [](const SubjState& s) { return StepOut::stepped(s); },
      [](const SubjState& s, const SubjState& s2) { return s == s2; }};
}

/** State space: global membership predicate plus heap erasure. */
struct StateSpace {
  StatePred member;
  StateFn erase;  // into heap values (Val maps keyed by pointer)
};

/**
 * A resource: PCM, joint universe, state space and named transitions.
 * Member states are enumerated once at construction; every later check and
 * exploration works over that canonical enumeration.
 */
class ResourceDef {
 public:
  // How candidate (not necessarily member) states are quantified in
  // globality checks: the full self x joint x other cube, or an explicit
  // list (used by tensors, whose cube would be enormous).
  enum class Candidates { kFullSpace, kExplicit };

  ResourceDef(std::string name, PcmPtr pcm, std::vector<Val> joint_universe,
              StateSpace space, std::vector<Transition> transitions,
              Candidates cand_kind = Candidates::kFullSpace,
              std::vector<SubjState> explicit_candidates = {})
      : name_(std::move(name)),
        pcm_(std::move(pcm)),
        joint_(std::move(joint_universe)),
        space_(std::move(space)),
        cand_kind_(cand_kind),
        candidates_(std::move(explicit_candidates)) {
    bool has_idle = false;
    for (auto& t : transitions) has_idle |= t.is_idle();
    trans_ = std::move(transitions);
    if (!has_idle) trans_.insert(trans_.begin(), id_transition());
    for (std::size_t i = 0; i < trans_.size(); ++i)
      trans_index_[trans_[i].name] = static_cast<int>(i);
    enumerate_members();
  }

  const std::string& name() const { return name_; }
  const PcmDef& pcm() const { return *pcm_; }
  PcmPtr pcm_ptr() const { return pcm_; }
  const std::vector<Val>& joint_universe() const { return joint_; }
  const StateSpace& space() const { return space_; }
  const std::vector<Transition>& transitions() const { return trans_; }
  Candidates candidate_kind() const { return cand_kind_; }
  const std::vector<SubjState>& explicit_candidates() const {
    return candidates_;
  }

  const Transition* transition(const std::string& n) const {
    auto it = trans_index_.find(n);
    return it == trans_index_.end() ? nullptr : &trans_[it->second];
  }

  bool member(const SubjState& s) const { return space_.member(s); }
  std::optional<Val> erase(const SubjState& s) const { return space_.erase(s); }

  const std::vector<SubjState>& states() const { return members_; }
  int state_index(const SubjState& s) const {
    auto it = member_index_.find(s);
    return it == member_index_.end() ? -1 : it->second;
  }
  const SubjState& state(int i) const {
    return members_[static_cast<std::size_t>(i)];
  }

  // ---- environment steps ----
  // One other-step: transpose, fire any transition, transpose back.
  const std::vector<int>& ostep_successors(int i) const {
    ensure_osteps();
    return osucc_[static_cast<std::size_t>(i)];
  }

  // Reflexive-transitive closure of other-steps, as sorted member indices.
  const std::vector<int>& osteps_closure(int i) const {
    ensure_osteps();
    auto& slot = oclo_[static_cast<std::size_t>(i)];
    if (!slot) {
      std::vector<bool> seen(members_.size(), false);
      std::deque<int> work{i};
      seen[static_cast<std::size_t>(i)] = true;
      std::vector<int> out;
      while (!work.empty()) {
        int cur = work.front();
        work.pop_front();
        out.push_back(cur);
        for (int nxt : osucc_[static_cast<std::size_t>(cur)]) {
          if (!seen[static_cast<std::size_t>(nxt)]) {
            seen[static_cast<std::size_t>(nxt)] = true;
            work.push_back(nxt);
          }
        }
      }
      std::sort(out.begin(), out.end());
      slot = std::move(out);
    }
    return *slot;
  }

  bool osteps_reaches(int from, int to) const {
    const auto& c = osteps_closure(from);
    return std::binary_search(c.begin(), c.end(), to);
  }

  // States whose other-step image leaves the member enumeration (a law
  // violation surfaced by the transition checks and lemma audits).
  const std::vector<std::pair<std::string, SubjState>>& ostep_anomalies()
      const {
    ensure_osteps();
    return oanomalies_;
  }

 private:
  void enumerate_members() {
    if (cand_kind_ == Candidates::kFullSpace) {
      for (const Val& a : pcm_->carrier())
        for (const Val& j : joint_)
          for (const Val& o : pcm_->carrier()) {
            SubjState s{a, j, o};
            if (space_.member(s)) members_.push_back(std::move(s));
          }
    } else {
      for (const SubjState& s : candidates_)
        if (space_.member(s)) members_.push_back(s);
      std::sort(members_.begin(), members_.end());
      members_.erase(std::unique(members_.begin(), members_.end()),
                     members_.end());
    }
    member_index_.reserve(members_.size() * 2);
    for (std::size_t i = 0; i < members_.size(); ++i)
      member_index_.emplace(members_[i], static_cast<int>(i));
  }

  void ensure_osteps() const {
    if (osteps_ready_) return;
    osucc_.assign(members_.size(), {});
    oclo_.assign(members_.size(), std::nullopt);
    for (std::size_t i = 0; i < members_.size(); ++i) {
      const SubjState flipped = transpose(members_[i]);
      std::vector<int>& out = osucc_[i];
      for (const Transition& t : trans_) {
        StepOut r = t.step(flipped);
        if (!r.ok()) continue;
        SubjState back = transpose(r.next);
        int idx = state_index(back);
        if (idx < 0) {
          oanomalies_.emplace_back(t.name, members_[i]);
          continue;
        }
        out.push_back(idx);
      }
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
    }
    osteps_ready_ = true;
  }

  std::string name_;
  PcmPtr pcm_;
  std::vector<Val> joint_;
  StateSpace space_;
  std::vector<Transition> trans_;
  std::map<std::string, int> trans_index_;
  Candidates cand_kind_;
  std::vector<SubjState> candidates_;
  std::vector<SubjState> members_;
  std::unordered_map<SubjState, int, SubjStateHash> member_index_;

  mutable bool osteps_ready_ = false;
  mutable std::vector<std::vector<int>> osucc_;
  mutable std::vector<std::optional<std::vector<int>>> oclo_;
  mutable std::vector<std::pair<std::string, SubjState>> oanomalies_;
};

using ResourcePtr = std::shared_ptr<const ResourceDef>;

// ---- pair states (products) ----

inline SubjState pair_state(const SubjState& s1, const SubjState& s2) {
  return SubjState{Val::pair(s1.self, s2.self), Val::pair(s1.joint, s2.joint),
                   Val::pair(s1.other, s2.other)};
}

inline SubjState proj_state(const SubjState& s, int side) {
  if (side == 1)
    return SubjState{s.self.first(), s.joint.first(), s.other.first()};
  return SubjState{s.self.second(), s.joint.second(), s.other.second()};
}

// ---- state space checking ----

namespace detail {

// Decompositions join(p, rest) = target, per target index. Built on demand;
// used by transition locality and action locality.
struct DecompTable {
  std::vector<std::vector<std::pair<int, int>>> by_target;

  static DecompTable build(const PcmDef& p) {
    DecompTable t;
    const int n = static_cast<int>(p.size());
    t.by_target.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        int r = p.join_index(i, j);
        if (r >= 0)
          t.by_target[static_cast<std::size_t>(r)].emplace_back(i, j);
      }
    return t;
  }
};

}  // namespace detail

/**
 * Def-coh checks: membership is global, erasure is global under
 * membership, and membership implies subjective compatibility plus a
 * defined erasure.
 */
inline CheckReport check_state_space(const ResourceDef& r) {
  CheckReport rep;
  rep.scenario = "state-space:" + r.name();
  const PcmDef& p = r.pcm();

  if (r.candidate_kind() == ResourceDef::Candidates::kFullSpace) {
    // Index-based sweep: precompute membership and erasure over the full
    // cube once, then walk frame moves with join-table lookups.
    const int n = static_cast<int>(p.size());
    const int jn = static_cast<int>(r.joint_universe().size());
    auto cube_at = [n, jn](int a, int j, int o) {
      return (static_cast<std::size_t>(a) * jn + j) * n + o;
    };
    std::vector<bool> mem(static_cast<std::size_t>(n) * jn * n, false);
    std::vector<int> ers(static_cast<std::size_t>(n) * jn * n, -2);
    std::unordered_map<Val, int, ValHash> heap_ids;
    auto heap_id = [&heap_ids](const std::optional<Val>& h) {
      if (!h) return -1;
      auto [it, fresh] =
          heap_ids.emplace(*h, static_cast<int>(heap_ids.size()));
      return it->second;
    };
    for (int a = 0; a < n; ++a)
      for (int j = 0; j < jn; ++j)
        for (int o = 0; o < n; ++o) {
          SubjState s{p.at(a), r.joint_universe()[static_cast<std::size_t>(j)],
                      p.at(o)};
          mem[cube_at(a, j, o)] = r.member(s);
          ers[cube_at(a, j, o)] = heap_id(r.erase(s));
        }

    CheckEntry mg{"member-global:" + r.name(), "state/global-predicate"};
    CheckEntry eg{"erase-global-under-member:" + r.name(),
                  "state/global-function-under"};
    CheckEntry mi{"member-implies-compatible-erased:" + r.name(),
                  "space/member-implies-compatible-erased"};
    std::uint64_t tried = 0;
    for (int a = 0; a < n; ++a) {
      for (int f = 0; f < n; ++f) {
        const int af = p.join_index(a, f);
        if (af < 0) continue;
        for (int o = 0; o < n; ++o) {
          const int fo = p.join_index(f, o);
          if (fo < 0) continue;
          for (int j = 0; j < jn; ++j) {
            ++tried;
            const auto up = cube_at(af, j, o);    // s <| f
            const auto down = cube_at(a, j, fo);  // s |> f
            if (mg.status == CheckStatus::kPass && mem[up] != mem[down]) {
              mg.status = CheckStatus::kFail;
              mg.witness = state_witness(
                  "global-predicate",
                  SubjState{p.at(a), r.joint_universe()[j], p.at(o)}, p.at(f));
            }
            if (eg.status == CheckStatus::kPass && mem[up] &&
                ers[up] != ers[down]) {
              eg.status = CheckStatus::kFail;
              eg.witness = state_witness(
                  "global-function-under",
                  SubjState{p.at(a), r.joint_universe()[j], p.at(o)}, p.at(f));
            }
          }
        }
      }
    }
    mg.stats["instances"] = tried;
    eg.stats["instances"] = tried;
    for (int a = 0; a < n && mi.status == CheckStatus::kPass; ++a)
      for (int j = 0; j < jn && mi.status == CheckStatus::kPass; ++j)
        for (int o = 0; o < n; ++o) {
          if (!mem[cube_at(a, j, o)]) continue;
          if (p.join_index(a, o) < 0 || ers[cube_at(a, j, o)] < 0) {
            mi.status = CheckStatus::kFail;
            mi.witness = elem_witness("member-implies-compatible-erased",
                                      {p.at(a), p.at(o)});
            break;
          }
        }
    mi.stats["members"] = r.states().size();
    rep.checks.push_back(mg);
    rep.checks.push_back(eg);
    rep.checks.push_back(mi);
    return rep;
  }

  const auto& cands = r.explicit_candidates();
  rep.checks.push_back(
      check_global("member-global:" + r.name(), r.space().member, cands, p));
  rep.checks.push_back(check_global_fn("erase-global-under-member:" + r.name(),
                                       r.space().erase, cands, p,
                                       r.space().member));
  CheckEntry mi{"member-implies-compatible-erased:" + r.name(),
                "space/member-implies-compatible-erased"};
  for (const SubjState& s : cands) {
    if (!r.member(s)) continue;
    if (!p.defined(s.self, s.other) || !r.erase(s)) {
      mi.status = CheckStatus::kFail;
      mi.witness = elem_witness("member-implies-compatible-erased",
                                {s.self, s.other});
      break;
    }
  }
  mi.stats["members"] = r.states().size();
  rep.checks.push_back(mi);
  return rep;
}

/**
 * Transition laws: partial functionality against the relational view,
 * other-fixity, locality under framing, footprint preservation, and
 * closure over the state space.
 */
inline CheckReport check_transition(const ResourceDef& r, const Transition& t) {
  CheckReport rep;
  rep.scenario = "transition:" + r.name() + "/" + t.name;
  const PcmDef& p = r.pcm();

  CheckEntry fun{"partial-function:" + t.name, "transition/partial-function"};
  std::uint64_t rel_pairs = 0;
  if (t.rel) {
    for (const SubjState& s : r.states()) {
      StepOut out = t.step(s);
      int related = 0;
      SubjState found;
      for (const SubjState& s2 : r.states()) {
        if (t.rel(s, s2)) {
          ++related;
          found = s2;
          ++rel_pairs;
          if (related > 1) break;
        }
      }
      bool okay = related <= 1;
      if (okay && related == 1) okay = out.ok() && out.next == found;
      if (okay && related == 0) okay = !out.ok();
      if (!okay) {
        fun.status = CheckStatus::kFail;
        Json w;
        w["kind"] = "counterexample";
        w["law"] = "partial-function";
        w["state"] = s.str();
        w["related"] = related;
        fun.witness = w;
        break;
      }
    }
    fun.stats["relational_pairs"] = rel_pairs;
  } else {
    fun.stats["note"] = "functional by step representation";
  }
  rep.checks.push_back(fun);

  CheckEntry ofix{"other-fixity:" + t.name, "transition/other-fixity"};
  CheckEntry onspace{"on-space:" + t.name, "transition/preserves-membership"};
  CheckEntry foot{"footprint:" + t.name, "transition/footprint-preserving"};
  std::uint64_t fired = 0, horizon = 0;
  for (const SubjState& s : r.states()) {
    StepOut out = t.step(s);
    if (out.kind == StepOut::Kind::kHorizon) {
      ++horizon;
      continue;
    }
    if (!out.ok()) continue;
    ++fired;
    if (ofix.status == CheckStatus::kPass && out.next.other != s.other) {
      ofix.status = CheckStatus::kFail;
      ofix.witness = state_witness("other-fixity", s, s.other);
    }
    if (onspace.status == CheckStatus::kPass && !r.member(out.next)) {
      onspace.status = CheckStatus::kFail;
      Json w;
      w["kind"] = "counterexample";
      w["law"] = "preserves-membership";
      w["state"] = s.str();
      w["next"] = out.next.str();
      onspace.witness = w;
    }
    if (foot.status == CheckStatus::kPass) {
      auto h1 = r.erase(s);
      auto h2 = r.erase(out.next);
      bool okay = h1 && h2 && map_dom(*h1) == map_dom(*h2);
      if (!okay) {
        foot.status = CheckStatus::kFail;
        foot.witness = state_witness("footprint-preserving", s, s.self);
      }
    }
  }
  ofix.stats["fired"] = fired;
  ofix.stats["horizon"] = horizon;
  rep.checks.push_back(ofix);
  rep.checks.push_back(onspace);
  rep.checks.push_back(foot);

  // Locality: a step taken with a frame on the other side can be replayed
  // with the frame moved to the self side.
  CheckEntry loc{"locality:" + t.name, "transition/locality"};
  auto decomp = detail::DecompTable::build(p);
  std::uint64_t framings = 0;
  for (const SubjState& m : r.states()) {
    StepOut out = t.step(m);
    if (!out.ok()) continue;
    const int oi = p.index_of(m.other);
    for (const auto& [pi, resti] : decomp.by_target[oi]) {
      ++framings;
      const Val& frame = p.at(pi);
      const Val& rest = p.at(resti);
      // m = s |> frame with s = (self, joint, rest).
      auto self_up = p.join(m.self, frame);
      if (!self_up) continue;  // s <| frame does not exist
      SubjState up{*self_up, m.joint, rest};
      StepOut out_up = t.step(up);
      auto want_self = p.join(out.next.self, frame);
      bool okay = out_up.ok() && want_self &&
                  out_up.next == SubjState{*want_self, out.next.joint, rest};
      if (!okay) {
        loc.status = CheckStatus::kFail;
        loc.witness = state_witness("locality", m, frame);
        break;
      }
    }
    if (loc.status == CheckStatus::kFail) break;
  }
  loc.stats["framings"] = framings;
  rep.checks.push_back(loc);
  return rep;
}

// ---- actions ----

/**
 * An action maps a state to a transition choice and a return value; its
 * effect runs the chosen transition. Actions combine the real and ghost
 * step and erase to a read-modify-write on heaps.
 */
struct ActionDef {
  std::string name;
  std::function<std::optional<std::pair<std::string, Val>>(const SubjState&)>
      choose;
  std::vector<Val> values;  // finite return-value universe
};

struct ActResult {
  enum class Kind { kOk, kUndefined, kBlocked, kHorizon };
  Kind kind = Kind::kUndefined;
  SubjState next;
  Val value;
  const Transition* trans = nullptr;

  bool ok() const { return kind == Kind::kOk; }
};

inline ActResult apply_action_full(const ResourceDef& r, const ActionDef& a,
                                   const SubjState& s) {
  ActResult out;
  auto choice = a.choose(s);
  if (!choice) return out;
  const Transition* t = r.transition(choice->first);
  if (!t)
    throw ConstructionError("action " + a.name + " names unknown transition " +
                            choice->first);
  StepOut step = t->step(s);
  if (step.kind == StepOut::Kind::kHorizon) {
    out.kind = ActResult::Kind::kHorizon;
    return out;
  }
  if (!step.ok()) {
    out.kind = ActResult::Kind::kBlocked;
    return out;
  }
  out.kind = ActResult::Kind::kOk;
  out.next = std::move(step.next);
  out.value = choice->second;
  out.trans = t;
  return out;
}

// The effect [a]: absent when the action is undefined or its transition
// cannot fire (including at the bounded-model horizon).
inline std::optional<std::pair<SubjState, Val>> apply_action(
    const ResourceDef& r, const ActionDef& a, const SubjState& s) {
  ActResult res = apply_action_full(r, a, s);
  if (!res.ok()) return std::nullopt;
  return std::make_pair(res.next, res.value);
}

/** Locality of an action: framing does not change its choice. */
inline CheckReport check_action_local(const ResourceDef& r,
                                      const ActionDef& a) {
  CheckReport rep;
  rep.scenario = "action-local:" + r.name() + "/" + a.name;
  const PcmDef& p = r.pcm();
  CheckEntry e{"local:" + a.name, "action/local"};
  auto decomp = detail::DecompTable::build(p);
  std::uint64_t framings = 0;
  for (const SubjState& m : r.states()) {
    auto at_m = a.choose(m);
    const int oi = p.index_of(m.other);
    for (const auto& [pi, resti] : decomp.by_target[oi]) {
      const Val& frame = p.at(pi);
      const Val& rest = p.at(resti);
      auto self_up = p.join(m.self, frame);
      if (!self_up) continue;
      ++framings;
      SubjState up{*self_up, m.joint, rest};
      auto at_up = a.choose(up);
      bool equal = (!at_m && !at_up) ||
                   (at_m && at_up && at_m->first == at_up->first &&
                    at_m->second == at_up->second);
      if (!equal) {
        e.status = CheckStatus::kFail;
        e.witness = state_witness("action-local", m, frame);
        break;
      }
    }
    if (e.status == CheckStatus::kFail) break;
  }
  e.stats["framings"] = framings;
  rep.checks.push_back(e);
  return rep;
}

/**
 * Erasure correspondence: wherever the action's effect is defined, the
 * given heap-level read-modify-write does the same thing to erased states.
 */
inline CheckReport check_erases_to(
    const ResourceDef& r, const ActionDef& a,
    const std::function<std::optional<std::pair<Val, Val>>(const Val&)>& rmw) {
  CheckReport rep;
  rep.scenario = "erases-to:" + r.name() + "/" + a.name;
  CheckEntry e{"erases-to:" + a.name, "action/erases-to-rmw"};
  std::uint64_t checked = 0, skipped = 0;
  for (const SubjState& s : r.states()) {
    auto eff = apply_action(r, a, s);
    if (!eff) {
      ++skipped;
      continue;
    }
    ++checked;
    auto h = r.erase(s);
    auto h2 = r.erase(eff->first);
    auto c = h ? rmw(*h) : std::nullopt;
    bool okay = h && h2 && c && c->first == *h2 && c->second == eff->second;
    if (!okay) {
      e.status = CheckStatus::kFail;
      Json w;
      w["kind"] = "counterexample";
      w["law"] = "erases-to-rmw";
      w["state"] = s.str();
      w["heap"] = h ? h->str() : "undefined";
      e.witness = w;
      break;
    }
  }
  e.stats["checked"] = checked;
  e.stats["effect_undefined"] = skipped;
  rep.checks.push_back(e);
  return rep;
}

// ---- coupling and tensor ----

/** Couple two transitions to fire simultaneously on a pair state. */
inline Transition couple(const Transition& t1, const Transition& t2) {
  if (t1.is_idle() && t2.is_idle()) return id_transition();
  auto s1 = t1.step;
  auto s2 = t2.step;
  Transition out;
  out.name = t1.name + "*" + t2.name;
  out.step = [s1, s2](const SubjState& s) -> StepOut {
    StepOut a = s1(proj_state(s, 1));
    if (a.kind == StepOut::Kind::kBlocked) return StepOut::blocked();
    StepOut b = s2(proj_state(s, 2));
    if (b.kind == StepOut::Kind::kBlocked) return StepOut::blocked();
    if (a.kind == StepOut::Kind::kHorizon || b.kind == StepOut::Kind::kHorizon)
      return StepOut::horizon();
    return StepOut::stepped(pair_state(a.next, b.next));
  };
  if (t1.rel && t2.rel) {
    auto r1 = t1.rel;
    auto r2 = t2.rel;
    out.rel = [r1, r2](const SubjState& s, const SubjState& s2_) {
      return r1(proj_state(s, 1), proj_state(s2_, 1)) &&
             r2(proj_state(s, 2), proj_state(s2_, 2));
    };
  }
  return out;
}

/**
 * Combined (tensor) resource: product state space, erasure by disjoint
 * union, transitions given by the listed couplings. Couplings are
 * re-checked for footprint preservation.
 */
inline ResourcePtr tensor(
    ResourcePtr v, ResourcePtr w,
    const std::vector<std::pair<std::string, std::string>>& pairs,
    const std::string& name = "") {
  PcmPtr pcm = product_pcm(v->pcm_ptr(), w->pcm_ptr());
  std::vector<Val> joint;
  for (const Val& j1 : v->joint_universe())
    for (const Val& j2 : w->joint_universe()) joint.push_back(Val::pair(j1, j2));

  auto erase = [v, w](const SubjState& s) -> std::optional<Val> {
    auto h1 = v->erase(proj_state(s, 1));
    if (!h1) return std::nullopt;
    auto h2 = w->erase(proj_state(s, 2));
    if (!h2) return std::nullopt;
    return map_disjoint_union(*h1, *h2);
  };
  StatePred member = [v, w, erase](const SubjState& s) {
    if (!s.self.is_pair() || !s.joint.is_pair() || !s.other.is_pair())
      return false;
    return v->member(proj_state(s, 1)) && w->member(proj_state(s, 2)) &&
           erase(s).has_value();
  };

  std::vector<Transition> trans;
  for (const auto& [n1, n2] : pairs) {
    const Transition* t1 = v->transition(n1);
    const Transition* t2 = w->transition(n2);
    if (!t1 || !t2)
      throw ConstructionError("tensor coupling names unknown transition " +
                              (t1 ? n2 : n1));
    trans.push_back(couple(*t1, *t2));
  }

  std::vector<SubjState> cands;
  cands.reserve(v->states().size() * w->states().size());
  for (const SubjState& s1 : v->states())
    for (const SubjState& s2 : w->states())
      cands.push_back(pair_state(s1, s2));

  auto res = std::make_shared<ResourceDef>(
      name.empty() ? v->name() + "(x)" + w->name() : name, pcm,
      std::move(joint), StateSpace{member, erase}, std::move(trans),
      ResourceDef::Candidates::kExplicit, std::move(cands));

  // Re-check footprint preservation of every coupling over the members.
  for (const Transition& t : res->transitions()) {
    for (const SubjState& s : res->states()) {
      StepOut out = t.step(s);
      if (!out.ok()) continue;
      auto h1 = res->erase(s);
      auto h2 = res->erase(out.next);
      if (!h1 || !h2 || map_dom(*h1) != map_dom(*h2))
        throw ConstructionError("tensor coupling " + t.name +
                                " is not footprint preserving at " + s.str());
    }
  }
  return res;
}

}  // namespace reswb

#endif  // RESWB_RESOURCE_HPP_
