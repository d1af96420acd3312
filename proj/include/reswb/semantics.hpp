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

#ifndef RESWB_SEMANTICS_HPP_
#define RESWB_SEMANTICS_HPP_

#include <algorithm>
#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "reswb/tree.hpp"

namespace reswb {

/**
 * A morphism context: the stack of morphisms a tree executes under,
 * outermost first. A context f0,...,fn has resource type V -> W where
 * f0 : V1 -> W and fn : V -> Vn; the paired index tuple travels with it.
 */
using MorphCtx = std::vector<const MorphismDef*>;

inline const ResourceDef& innermost_resource(const ResourceDef& outer,
                                             const MorphCtx& ctx) {
  return ctx.empty() ? outer : *ctx.back()->src;
}

/**
 * Result of unwinding an action (or a bare transition) through a morphism
 * context: the composed commuting squares yield the outer successor state
 * and the evolved index tuple. kStuck is a genuine fault; kHorizon means
 * some square was blocked only by the bounded carrier.
 */
struct UnwindOut {
  enum class Kind { kOk, kStuck, kHorizon };
  Kind kind = Kind::kStuck;
  std::vector<Val> indices;
  SubjState next;
  Val value;
  std::string inner_trans;  // transition chosen by the action
  std::string outer_trans;  // its image at the outermost level
  bool idle = false;        // whole square chain collapsed to idle

  bool ok() const { return kind == Kind::kOk; }
};

/**
 * unwind_act: walk the state maps inward from the outer state, apply the
 * action at the innermost resource, then map the chosen transition back
 * outward square by square, re-solving each square's index.
 */
inline UnwindOut unwind_act(const ResourceDef& outer, const MorphCtx& ctx,
                            const std::vector<Val>& indices,
                            const ActionDef& act, const SubjState& sw) {
  UnwindOut out;
  const std::size_t n = ctx.size();
  std::vector<SubjState> states(n + 1);
  states[0] = sw;
  for (std::size_t i = 0; i < n; ++i) {
    auto inner = ctx[i]->state_map(indices[i], states[i]);
    if (!inner) return out;  // outside the state map's domain: unsafe
    states[i + 1] = *inner;
  }

  const ResourceDef& vres = innermost_resource(outer, ctx);
  auto choice = act.choose(states[n]);
  if (!choice) return out;
  const Transition* t = vres.transition(choice->first);
  if (!t)
    throw ConstructionError("action " + act.name + " names unknown transition " +
                            choice->first);
  out.inner_trans = t->name;
  out.value = choice->second;

  StepOut inner_step = t->step(states[n]);
  if (inner_step.kind == StepOut::Kind::kHorizon) {
    out.kind = UnwindOut::Kind::kHorizon;
    return out;
  }
  if (!inner_step.ok()) return out;

  std::vector<SubjState> nexts(n + 1);
  nexts[n] = inner_step.next;
  std::string tname = t->name;
  bool idle = t->is_idle();
  std::vector<Val> idx2 = indices;
  for (std::size_t i = n; i-- > 0;) {
    const MorphismDef& f = *ctx[i];
    auto mapped = f.trans_map(indices[i], states[i], tname);
    if (!mapped) return out;
    const ResourceDef& level = i == 0 ? outer : *ctx[i - 1]->src;
    const Transition* ti = level.transition(*mapped);
    if (!ti)
      throw ConstructionError("morphism " + f.name +
                              " maps to unknown transition " + *mapped);
    StepOut st = ti->step(states[i]);
    if (st.kind == StepOut::Kind::kHorizon) {
      out.kind = UnwindOut::Kind::kHorizon;
      return out;
    }
    if (!st.ok()) return out;
    nexts[i] = st.next;
    // Re-solve the square's index: the new inner state must be the image
    // of the new outer state at some (unique) index.
    bool solved = false;
    for (const Val& x2 : f.index_set) {
      auto img = f.state_map(x2, nexts[i]);
      if (img && *img == nexts[i + 1]) {
        idx2[i] = x2;
        solved = true;
        break;
      }
    }
    if (!solved) return out;
    tname = ti->name;
    idle = idle && ti->is_idle();
  }

  out.kind = UnwindOut::Kind::kOk;
  out.indices = std::move(idx2);
  out.next = nexts[0];
  out.outer_trans = tname;
  out.idle = idle;
  return out;
}

/** Small-step outcome for a tree at a path. */
struct TreeStep {
  enum class Kind { kOk, kStuck, kHorizon, kIllFormed };
  Kind kind = Kind::kIllFormed;
  std::vector<Val> indices;
  SubjState next;
  const Tree* tree = nullptr;
  // Audit payload for the ChoiceAct case.
  bool acted = false;
  bool idle = false;
  std::string inner_trans;
  std::string outer_trans;

  bool ok() const { return kind == Kind::kOk; }
};

/**
 * The small-step judgment on trees: reduce `t` in state `s` at path `p`.
 * The morphism context and index tuple thread through; Morph nodes push
 * their morphism and carry the evolved index in the residual tree.
 */
inline TreeStep tree_step(TreeArena& arena, const ResourceDef& outer,
                          MorphCtx& ctx, std::vector<Val>& indices,
                          const SubjState& s, const Tree* t, const Path& p,
                          std::size_t at = 0) {
  TreeStep out;
  if (at >= p.size()) return out;
  const bool last = at + 1 == p.size();
  switch (p[at]) {
    case PathStep::kChoiceAct: {
      if (!last || t->kind != Tree::Kind::kAct) return out;
      UnwindOut u = unwind_act(outer, ctx, indices, *t->act, s);
      if (u.kind == UnwindOut::Kind::kHorizon) {
        out.kind = TreeStep::Kind::kHorizon;
        return out;
      }
      if (!u.ok()) {
        out.kind = TreeStep::Kind::kStuck;
        return out;
      }
      out.kind = TreeStep::Kind::kOk;
      out.indices = std::move(u.indices);
      out.next = std::move(u.next);
      out.tree = arena.ret(u.value);
      out.acted = true;
      out.idle = u.idle;
      out.inner_trans = std::move(u.inner_trans);
      out.outer_trans = std::move(u.outer_trans);
      return out;
    }
    case PathStep::kSeqRet: {
      if (!last || t->kind != Tree::Kind::kSeq ||
          t->a->kind != Tree::Kind::kRet)
        return out;
      const Tree* k = t->lookup(t->a->val);
      if (!k) return out;  // value escaped the branch table
      out.kind = TreeStep::Kind::kOk;
      out.indices = indices;
      out.next = s;
      out.tree = k;
      out.idle = true;
      return out;
    }
    case PathStep::kSeqStep: {
      if (t->kind != Tree::Kind::kSeq) return out;
      TreeStep sub = tree_step(arena, outer, ctx, indices, s, t->a, p, at + 1);
      if (!sub.ok()) return sub;
      sub.tree = arena.seq(sub.tree, t->table);
      return sub;
    }
    case PathStep::kParRet: {
      if (!last || t->kind != Tree::Kind::kPar ||
          t->a->kind != Tree::Kind::kRet || t->b->kind != Tree::Kind::kRet)
        return out;
      const Tree* k = t->lookup(Val::pair(t->a->val, t->b->val));
      if (!k) return out;
      out.kind = TreeStep::Kind::kOk;
      out.indices = indices;
      out.next = s;
      out.tree = k;
      out.idle = true;
      return out;
    }
    case PathStep::kParL: {
      if (t->kind != Tree::Kind::kPar) return out;
      TreeStep sub = tree_step(arena, outer, ctx, indices, s, t->a, p, at + 1);
      if (!sub.ok()) return sub;
      sub.tree = arena.par(sub.tree, t->b, t->table);
      return sub;
    }
    case PathStep::kParR: {
      if (t->kind != Tree::Kind::kPar) return out;
      TreeStep sub = tree_step(arena, outer, ctx, indices, s, t->b, p, at + 1);
      if (!sub.ok()) return sub;
      sub.tree = arena.par(t->a, sub.tree, t->table);
      return sub;
    }
    case PathStep::kMorphRet: {
      if (!last || t->kind != Tree::Kind::kMorph ||
          t->a->kind != Tree::Kind::kRet)
        return out;
      out.kind = TreeStep::Kind::kOk;
      out.indices = indices;
      out.next = s;
      out.tree = t->a;
      out.idle = true;
      return out;
    }
    case PathStep::kMorphStep: {
      if (t->kind != Tree::Kind::kMorph) return out;
      ctx.push_back(t->morph);
      indices.push_back(t->val);
      TreeStep sub = tree_step(arena, outer, ctx, indices, s, t->a, p, at + 1);
      ctx.pop_back();
      indices.pop_back();
      if (!sub.ok()) return sub;
      Val y2 = sub.indices.back();
      sub.indices.pop_back();
      sub.tree = arena.morph(t->morph, y2, sub.tree);
      return sub;
    }
  }
  return out;
}

/** Top-level step with an empty context. */
inline TreeStep tree_step(TreeArena& arena, const ResourceDef& outer,
                          const SubjState& s, const Tree* t, const Path& p) {
  MorphCtx ctx;
  std::vector<Val> indices;
  return tree_step(arena, outer, ctx, indices, s, t, p, 0);
}

/**
 * Def-safe: a configuration is safe for a path when the path is not good
 * or the step exists. Bounded-horizon steps do not exist, so they are not
 * safe in this strict sense; explorers track them separately.
 */
inline bool safe(TreeArena& arena, const ResourceDef& outer,
                 const SubjState& s, const Tree* t, const Path& p) {
  if (!good(t, p)) return true;
  return tree_step(arena, outer, s, t, p).ok();
}

using PostPred = std::function<bool(const Val&, const SubjState&)>;

/**
 * Configuration-graph explorer implementing the always/after semantics:
 * every reachable configuration (under alternating environment closure and
 * good-path steps) must be safe, and every Ret payload must satisfy the
 * postcondition. The graph is built once and shared by all postconditions
 * and initial-state instances of a scenario.
 */
class Explorer {
 public:
  struct Config {
    const Tree* tree;
    int state;
    bool unsafe = false;
    Path unsafe_path;
    std::uint32_t horizon = 0;     // pruned branches at this config
    std::vector<int> env_succ;     // config ids
    std::vector<int> step_succ;    // config ids
  };

  Explorer(TreeArena& arena, ResourcePtr res, bool interference_full)
      : arena_(arena), res_(std::move(res)), full_(interference_full) {}

  int intern(const Tree* t, int state) {
    auto key = std::make_pair(t, state);
    auto it = ids_.find(key);
    if (it != ids_.end()) return it->second;
    int id = static_cast<int>(configs_.size());
    ids_.emplace(key, id);
    configs_.push_back(Config{t, state});
    work_.push_back(id);
    return id;
  }

  void expand() {
    while (!work_.empty()) {
      int id = work_.front();
      work_.pop_front();
      expand_one(id);
    }
  }

  const std::vector<Config>& configs() const { return configs_; }
  const ResourceDef& resource() const { return *res_; }
  TreeArena& arena() { return arena_; }
  bool interference_full() const { return full_; }

  const std::vector<Path>& paths_of(const Tree* t) {
    auto it = paths_cache_.find(t);
    if (it == paths_cache_.end())
      it = paths_cache_.emplace(t, good_paths(t)).first;
    return it->second;
  }

  struct Verdict {
    bool ok = true;
    bool vacuous = true;           // no finished execution reached
    int bad_config = -1;
    enum class Bad { kNone, kUnsafe, kPost } bad_kind = Bad::kNone;
    std::uint64_t visited = 0;
    std::uint64_t horizon = 0;
    std::vector<int> ret_configs;
  };

  /** Reachability sweep for one triple instance. */
  Verdict sweep(const std::vector<int>& init_configs, const PostPred& post) {
    expand();
    Verdict v;
    std::vector<bool> seen(configs_.size(), false);
    std::deque<int> work;
    for (int c : init_configs) {
      if (!seen[static_cast<std::size_t>(c)]) {
        seen[static_cast<std::size_t>(c)] = true;
        work.push_back(c);
      }
    }
    while (!work.empty()) {
      int id = work.front();
      work.pop_front();
      const Config& c = configs_[static_cast<std::size_t>(id)];
      ++v.visited;
      v.horizon += c.horizon;
      if (c.unsafe) {
        v.ok = false;
        v.bad_config = id;
        v.bad_kind = Verdict::Bad::kUnsafe;
        return v;
      }
      if (c.tree->kind == Tree::Kind::kRet) {
        v.vacuous = false;
        v.ret_configs.push_back(id);
        if (post && !post(c.tree->val, res_->state(c.state))) {
          v.ok = false;
          v.bad_config = id;
          v.bad_kind = Verdict::Bad::kPost;
          return v;
        }
      }
      for (int nxt : c.env_succ)
        if (!seen[static_cast<std::size_t>(nxt)]) {
          seen[static_cast<std::size_t>(nxt)] = true;
          work.push_back(nxt);
        }
      for (int nxt : c.step_succ)
        if (!seen[static_cast<std::size_t>(nxt)]) {
          seen[static_cast<std::size_t>(nxt)] = true;
          work.push_back(nxt);
        }
    }
    return v;
  }

  /**
   * Shortest witness trace from one of the initial configurations to the
   * offending configuration, rendered as a replayable JSON object.
   */
  Json trace(const std::vector<int>& init_configs, int bad,
             const std::string& violation) {
    std::vector<int> parent(configs_.size(), -1);
    std::vector<int> via_env(configs_.size(), -1);  // successor state idx
    std::vector<int> via_path(configs_.size(), -1);
    std::vector<bool> seen(configs_.size(), false);
    std::deque<int> work;
    for (int c : init_configs) {
      seen[static_cast<std::size_t>(c)] = true;
      work.push_back(c);
    }
    int found_init = -1;
    while (!work.empty() && !seen[static_cast<std::size_t>(bad)]) {
      int id = work.front();
      work.pop_front();
      const Config& c = configs_[static_cast<std::size_t>(id)];
      for (std::size_t k = 0; k < c.env_succ.size(); ++k) {
        int nxt = c.env_succ[k];
        if (seen[static_cast<std::size_t>(nxt)]) continue;
        seen[static_cast<std::size_t>(nxt)] = true;
        parent[static_cast<std::size_t>(nxt)] = id;
        via_env[static_cast<std::size_t>(nxt)] = 1;
        work.push_back(nxt);
      }
      for (std::size_t k = 0; k < c.step_succ.size(); ++k) {
        int nxt = c.step_succ[k];
        if (seen[static_cast<std::size_t>(nxt)]) continue;
        seen[static_cast<std::size_t>(nxt)] = true;
        parent[static_cast<std::size_t>(nxt)] = id;
        via_path[static_cast<std::size_t>(nxt)] = static_cast<int>(k);
        work.push_back(nxt);
      }
    }
    // Reconstruct.
    std::vector<int> chain;
    for (int cur = bad; cur >= 0; cur = parent[static_cast<std::size_t>(cur)])
      chain.push_back(cur);
    std::reverse(chain.begin(), chain.end());
    found_init = chain.front();

    Json steps = Json::array();
    for (std::size_t i = 1; i < chain.size(); ++i) {
      const Config& prev = configs_[static_cast<std::size_t>(chain[i - 1])];
      const Config& cur = configs_[static_cast<std::size_t>(chain[i])];
      Json st;
      if (via_env[static_cast<std::size_t>(chain[i])] == 1) {
        st["kind"] = "env";
        st["transition"] = env_transition_name(prev.state, cur.state);
      } else {
        st["kind"] = "path";
        // Identify which good path produced this successor.
        const auto& paths = paths_of(prev.tree);
        std::string label = "?";
        for (const Path& p : paths) {
          TreeStep ts = tree_step(arena_, *res_, res_->state(prev.state),
                                  prev.tree, p);
          if (ts.ok() && ts.tree == cur.tree &&
              res_->state_index(ts.next) == cur.state) {
            label = path_str(p);
            break;
          }
        }
        st["path"] = label;
      }
      st["state"] = res_->state(cur.state).str();
      auto h = res_->erase(res_->state(cur.state));
      st["erasure"] = h ? h->str() : "undefined";
      steps.push_back(st);
    }

    Json w;
    w["kind"] = "trace";
    w["resource"] = res_->name();
    w["initial"] = res_->state(configs_[static_cast<std::size_t>(found_init)]
                                   .state)
                       .str();
    w["steps"] = steps;
    w["violation"] = violation;
    const Config& bc = configs_[static_cast<std::size_t>(bad)];
    if (bc.tree->kind == Tree::Kind::kRet) w["ret"] = bc.tree->val.str();
    if (bc.unsafe) w["stuck_path"] = path_str(bc.unsafe_path);
    return w;
  }

 private:
  std::string env_transition_name(int from, int to) {
    const SubjState flipped = transpose(res_->state(from));
    for (const Transition& t : res_->transitions()) {
      StepOut r = t.step(flipped);
      if (r.ok() && res_->state_index(transpose(r.next)) == to) return t.name;
    }
    return "?";
  }

  void expand_one(int id) {
    const Tree* tree = configs_[static_cast<std::size_t>(id)].tree;
    const int state = configs_[static_cast<std::size_t>(id)].state;
    std::vector<int> env, steps;
    if (full_) {
      for (int j : res_->ostep_successors(state))
        env.push_back(intern(tree, j));
    }
    bool unsafe = false;
    Path unsafe_path;
    std::uint32_t horizon = 0;
    for (const Path& p : paths_of(tree)) {
      TreeStep ts = tree_step(arena_, *res_, res_->state(state), tree, p);
      switch (ts.kind) {
        case TreeStep::Kind::kOk: {
          int j = res_->state_index(ts.next);
          if (j < 0) {
            unsafe = true;  // stepped off the state space: surfaced as fault
            unsafe_path = p;
            break;
          }
          steps.push_back(intern(ts.tree, j));
          break;
        }
        case TreeStep::Kind::kHorizon:
          ++horizon;
          break;
        case TreeStep::Kind::kStuck:
        case TreeStep::Kind::kIllFormed:
          unsafe = true;
          unsafe_path = p;
          break;
      }
      if (unsafe) break;
    }
    Config& c = configs_[static_cast<std::size_t>(id)];
    c.env_succ = std::move(env);
    c.step_succ = std::move(steps);
    c.unsafe = unsafe;
    c.unsafe_path = std::move(unsafe_path);
    c.horizon = horizon;
  }

  struct KeyHash {
    std::size_t operator()(const std::pair<const Tree*, int>& k) const {
      return static_cast<std::size_t>(k.first->id) * 0x9e3779b97f4a7c15ull ^
             static_cast<std::size_t>(k.second);
    }
  };

  TreeArena& arena_;
  ResourcePtr res_;
  bool full_;
  std::vector<Config> configs_;
  std::unordered_map<std::pair<const Tree*, int>, int, KeyHash> ids_;
  std::deque<int> work_;
  std::unordered_map<const Tree*, std::vector<Path>> paths_cache_;
};

/**
 * after: the tree runs safely under arbitrary interference and every
 * finished execution satisfies the postcondition.
 */
inline Explorer::Verdict after(Explorer& ex, const Tree* t, int state_idx,
                               const PostPred& post) {
  std::vector<int> init{ex.intern(t, state_idx)};
  ex.expand();
  return ex.sweep(init, post);
}

/**
 * vrf: after, over every tree of the denotation at the unroll depth.
 * Exploration runs on the maximal trees; every denotation element is a
 * prefix approximation of a maximal one, so the verdict is unchanged
 * (cross-checked against the full set in the test suite).
 */
inline Explorer::Verdict vrf(Explorer& ex, const ProgDenotation& den,
                             const std::vector<const Tree*>& trees,
                             int state_idx, const PostPred& post) {
  (void)den;
  std::vector<int> inits;
  inits.reserve(trees.size());
  for (const Tree* t : trees) inits.push_back(ex.intern(t, state_idx));
  ex.expand();
  return ex.sweep(inits, post);
}

}  // namespace reswb

#endif  // RESWB_SEMANTICS_HPP_
