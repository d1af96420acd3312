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

#ifndef RESWB_TREE_HPP_
#define RESWB_TREE_HPP_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "reswb/morphism.hpp"
#include "reswb/resource.hpp"

namespace reswb {

/**
 * Action trees: finite approximations of one program execution.
 * Continuations are materialized as branch tables over the finite value
 * universe, so trees are finite objects and stepping strictly shrinks the
 * constructor count. Trees are hash-consed inside an arena; node pointers
 * double as identity, and arena ids give a deterministic order.
 */
struct Tree {
  enum class Kind { kUnfinished, kRet, kAct, kSeq, kPar, kMorph };
  using Table = std::vector<std::pair<Val, const Tree*>>;  // sorted by value

  Kind kind = Kind::kUnfinished;
  Val val;                            // Ret payload / Morph index
  const ActionDef* act = nullptr;     // Act
  const Tree* a = nullptr;            // Seq body / Par left / Morph body
  const Tree* b = nullptr;            // Par right
  const MorphismDef* morph = nullptr; // Morph
  Table table;                        // Seq / Par continuation
  int id = 0;                         // arena sequence number
  int size = 1;                       // constructor count, branches included

  const Tree* lookup(const Val& v) const {
    for (const auto& [key, t] : table)
      if (key == v) return t;
    return nullptr;
  }
};

class TreeArena {
 public:
  const Tree* unfinished() { return intern(Tree{}); }

  const Tree* ret(Val v) {
    Tree t;
    t.kind = Tree::Kind::kRet;
    t.val = std::move(v);
    return intern(std::move(t));
  }

  const Tree* action(const ActionDef* a) {
    Tree t;
    t.kind = Tree::Kind::kAct;
    t.act = a;
    return intern(std::move(t));
  }

  const Tree* seq(const Tree* body, Tree::Table k) {
    Tree t;
    t.kind = Tree::Kind::kSeq;
    t.a = body;
    t.table = std::move(k);
    return intern(std::move(t));
  }

  const Tree* par(const Tree* left, const Tree* right, Tree::Table k) {
    Tree t;
    t.kind = Tree::Kind::kPar;
    t.a = left;
    t.b = right;
    t.table = std::move(k);
    return intern(std::move(t));
  }

  const Tree* morph(const MorphismDef* f, Val index, const Tree* body) {
    Tree t;
    t.kind = Tree::Kind::kMorph;
    t.morph = f;
    t.val = std::move(index);
    t.a = body;
    return intern(std::move(t));
  }

  std::size_t node_count() const { return nodes_.size(); }

 private:
  struct Hash {
    std::size_t operator()(const Tree* t) const {
      std::size_t h = static_cast<std::size_t>(t->kind) * 0x9e3779b97f4a7c15ull;
      auto mix = [&h](std::size_t v) {
        h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      };
      mix(t->val.hash());
      mix(reinterpret_cast<std::size_t>(t->act));
      mix(t->a ? static_cast<std::size_t>(t->a->id) : 0);
      mix(t->b ? static_cast<std::size_t>(t->b->id) : 0);
      mix(reinterpret_cast<std::size_t>(t->morph));
      for (const auto& [k, sub] : t->table) {
        mix(k.hash());
        mix(static_cast<std::size_t>(sub->id));
      }
      return h;
    }
  };
  struct Eq {
    bool operator()(const Tree* x, const Tree* y) const {
      if (x->kind != y->kind || x->act != y->act || x->a != y->a ||
          x->b != y->b || x->morph != y->morph || x->val != y->val ||
          x->table.size() != y->table.size())
        return false;
      for (std::size_t i = 0; i < x->table.size(); ++i)
        if (x->table[i].second != y->table[i].second ||
            x->table[i].first != y->table[i].first)
          return false;
      return true;
    }
  };

  const Tree* intern(Tree t) {
    t.size = 1;
    if (t.a) t.size += t.a->size;
    if (t.b) t.size += t.b->size;
    for (const auto& [k, sub] : t.table) t.size += sub->size;
    auto probe = std::make_unique<Tree>(std::move(t));
    probe->id = static_cast<int>(nodes_.size()) + 1;
    auto it = interned_.find(probe.get());
    if (it != interned_.end()) return *it;
    const Tree* out = probe.get();
    interned_.insert(out);
    nodes_.push_back(std::move(probe));
    return out;
  }

  std::vector<std::unique_ptr<Tree>> nodes_;
  std::unordered_set<const Tree*, Hash, Eq> interned_;
};

/**
 * Paths address a redex inside a tree. Every constructor nests at most one
 * sub-path, so a path is a plain sequence of steps.
 */
enum class PathStep : std::uint8_t {
  kChoiceAct,
  kSeqRet,
  kSeqStep,
  kParRet,
  kParL,
  kParR,
  kMorphRet,
  kMorphStep,
};

using Path = std::vector<PathStep>;

inline std::string path_str(const Path& p) {
  static const char* names[] = {"ChoiceAct", "SeqRet",   "SeqStep", "ParRet",
                                "ParL",      "ParR",     "MorphRet", "MorphStep"};
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ".";
    out += names[static_cast<std::uint8_t>(p[i])];
  }
  return out;
}

/** Recognizer for good paths; Unfinished and Ret have none. */
inline bool good(const Tree* t, const Path& p, std::size_t at = 0) {
  if (at >= p.size()) return false;
  const bool last = at + 1 == p.size();
  switch (p[at]) {
    case PathStep::kChoiceAct:
      return last && t->kind == Tree::Kind::kAct;
    case PathStep::kSeqRet:
      return last && t->kind == Tree::Kind::kSeq &&
             t->a->kind == Tree::Kind::kRet;
    case PathStep::kSeqStep:
      return t->kind == Tree::Kind::kSeq && good(t->a, p, at + 1);
    case PathStep::kParRet:
      return last && t->kind == Tree::Kind::kPar &&
             t->a->kind == Tree::Kind::kRet && t->b->kind == Tree::Kind::kRet;
    case PathStep::kParL:
      return t->kind == Tree::Kind::kPar && good(t->a, p, at + 1);
    case PathStep::kParR:
      return t->kind == Tree::Kind::kPar && good(t->b, p, at + 1);
    case PathStep::kMorphRet:
      return last && t->kind == Tree::Kind::kMorph &&
             t->a->kind == Tree::Kind::kRet;
    case PathStep::kMorphStep:
      return t->kind == Tree::Kind::kMorph && good(t->a, p, at + 1);
  }
  return false;
}

/** All good paths of a tree, in canonical order. */
inline void good_paths(const Tree* t, Path& prefix, std::vector<Path>& out) {
  switch (t->kind) {
    case Tree::Kind::kUnfinished:
    case Tree::Kind::kRet:
      return;
    case Tree::Kind::kAct:
      prefix.push_back(PathStep::kChoiceAct);
      out.push_back(prefix);
      prefix.pop_back();
      return;
    case Tree::Kind::kSeq:
      if (t->a->kind == Tree::Kind::kRet) {
        prefix.push_back(PathStep::kSeqRet);
        out.push_back(prefix);
        prefix.pop_back();
      }
      prefix.push_back(PathStep::kSeqStep);
      good_paths(t->a, prefix, out);
      prefix.pop_back();
      return;
    case Tree::Kind::kPar:
      if (t->a->kind == Tree::Kind::kRet && t->b->kind == Tree::Kind::kRet) {
        prefix.push_back(PathStep::kParRet);
        out.push_back(prefix);
        prefix.pop_back();
      }
      prefix.push_back(PathStep::kParL);
      good_paths(t->a, prefix, out);
      prefix.pop_back();
      prefix.push_back(PathStep::kParR);
      good_paths(t->b, prefix, out);
      prefix.pop_back();
      return;
    case Tree::Kind::kMorph:
      if (t->a->kind == Tree::Kind::kRet) {
        prefix.push_back(PathStep::kMorphRet);
        out.push_back(prefix);
        prefix.pop_back();
      }
      prefix.push_back(PathStep::kMorphStep);
      good_paths(t->a, prefix, out);
      prefix.pop_back();
      return;
  }
}

inline std::vector<Path> good_paths(const Tree* t) {
  std::vector<Path> out;
  Path prefix;
  good_paths(t, prefix, out);
  return out;
}

/**
 * A program denotation: for each unrolling depth, a finite set of trees
 * that always contains Unfinished and grows monotonically with the depth.
 *
 * Every element of the set is a prefix approximation (some subtrees cut to
 * Unfinished) of one of the set's maximal trees, and a maximal tree only
 * adds proof obligations over its prefixes. The denotation therefore also
 * carries the far smaller maximal set, which verification quantifies over;
 * the equivalence is re-checked empirically by the test suite.
 */
class ProgDenotation {
 public:
  using Gen = std::function<std::vector<const Tree*>(int)>;

  ProgDenotation() = default;
  ProgDenotation(ResourcePtr res, std::vector<Val> universe, Gen gen,
                 Gen gen_max)
      : res_(std::move(res)),
        universe_(std::move(universe)),
        gen_(std::move(gen)),
        gen_max_(std::move(gen_max)),
        memo_(std::make_shared<std::map<int, std::vector<const Tree*>>>()),
        memo_max_(std::make_shared<std::map<int, std::vector<const Tree*>>>()) {
  }

  const ResourcePtr& resource() const { return res_; }
  const std::vector<Val>& universe() const { return universe_; }

  const std::vector<const Tree*>& trees(int depth) const {
    auto it = memo_->find(depth);
    if (it == memo_->end()) it = memo_->emplace(depth, gen_(depth)).first;
    return it->second;
  }

  const std::vector<const Tree*>& maximal_trees(int depth) const {
    auto it = memo_max_->find(depth);
    if (it == memo_max_->end())
      it = memo_max_->emplace(depth, gen_max_(depth)).first;
    return it->second;
  }

 private:
  ResourcePtr res_;
  std::vector<Val> universe_;
  Gen gen_;
  Gen gen_max_;
  std::shared_ptr<std::map<int, std::vector<const Tree*>>> memo_;
  std::shared_ptr<std::map<int, std::vector<const Tree*>>> memo_max_;
};

// Denotation constructors. Each produces the set construction for the
// corresponding program former, evaluated per depth bound.

inline ProgDenotation den_ret(TreeArena& arena, ResourcePtr res, Val v) {
  TreeArena* ar = &arena;
  Val vv = v;
  return ProgDenotation(
      res, {v},
      [ar, vv](int) {
        return std::vector<const Tree*>{ar->unfinished(), ar->ret(vv)};
      },
      [ar, vv](int) { return std::vector<const Tree*>{ar->ret(vv)}; });
}

inline ProgDenotation den_act(TreeArena& arena, ResourcePtr res,
                              const ActionDef* a) {
  TreeArena* ar = &arena;
  return ProgDenotation(
      res, a->values,
      [ar, a](int) {
        return std::vector<const Tree*>{ar->unfinished(), ar->action(a)};
      },
      [ar, a](int) { return std::vector<const Tree*>{ar->action(a)}; });
}

namespace detail {

// All branch tables over `universe` with the slot for value i drawn from
// choices[i]; the Cartesian product in canonical order.
inline std::vector<Tree::Table> all_tables(
    const std::vector<Val>& universe,
    const std::vector<std::vector<const Tree*>>& choices) {
  std::vector<Tree::Table> out;
  Tree::Table cur(universe.size());
  for (std::size_t i = 0; i < universe.size(); ++i) cur[i].first = universe[i];
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == universe.size()) {
      out.push_back(cur);
      return;
    }
    for (const Tree* t : choices[i]) {
      cur[i].second = t;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

}  // namespace detail

inline ProgDenotation den_bind(TreeArena& arena, const ProgDenotation& e1,
                               std::function<ProgDenotation(const Val&)> e2) {
  TreeArena* ar = &arena;
  std::vector<Val> verse;
  std::vector<ProgDenotation> conts;
  for (const Val& v : e1.universe()) conts.push_back(e2(v));
  for (const auto& c : conts)
    for (const Val& v : c.universe())
      if (std::find(verse.begin(), verse.end(), v) == verse.end())
        verse.push_back(v);
  std::sort(verse.begin(), verse.end());
  ProgDenotation e1c = e1;
  std::vector<Val> dom = e1.universe();
  auto make = [ar, e1c, conts, dom](int k, bool maximal) {
    std::vector<const Tree*> out;
    if (!maximal) out.push_back(ar->unfinished());
    std::vector<std::vector<const Tree*>> choices;
    for (const auto& c : conts)
      choices.push_back(maximal ? c.maximal_trees(k) : c.trees(k));
    auto tables = detail::all_tables(dom, choices);
    const auto& firsts = maximal ? e1c.maximal_trees(k) : e1c.trees(k);
    for (const Tree* t1 : firsts)
      for (const auto& tab : tables) out.push_back(ar->seq(t1, tab));
    return out;
  };
  return ProgDenotation(
      e1.resource(), verse, [make](int k) { return make(k, false); },
      [make](int k) { return make(k, true); });
}

inline ProgDenotation den_bind(TreeArena& arena, const ProgDenotation& e1,
                               const ProgDenotation& e2) {
  return den_bind(arena, e1, [e2](const Val&) { return e2; });
}

inline ProgDenotation den_par(TreeArena& arena, const ProgDenotation& e1,
                              const ProgDenotation& e2) {
  TreeArena* ar = &arena;
  std::vector<Val> verse;
  for (const Val& v1 : e1.universe())
    for (const Val& v2 : e2.universe()) verse.push_back(Val::pair(v1, v2));
  std::sort(verse.begin(), verse.end());
  ProgDenotation a = e1, b = e2;
  std::vector<Val> dom = verse;
  auto make = [ar, a, b, dom](int k, bool maximal) {
    std::vector<const Tree*> out;
    if (!maximal) out.push_back(ar->unfinished());
    Tree::Table ret_table;
    for (const Val& v : dom) ret_table.emplace_back(v, ar->ret(v));
    const auto& lefts = maximal ? a.maximal_trees(k) : a.trees(k);
    const auto& rights = maximal ? b.maximal_trees(k) : b.trees(k);
    for (const Tree* t1 : lefts)
      for (const Tree* t2 : rights) out.push_back(ar->par(t1, t2, ret_table));
    return out;
  };
  return ProgDenotation(
      e1.resource(), verse, [make](int k) { return make(k, false); },
      [make](int k) { return make(k, true); });
}

inline ProgDenotation den_morph(TreeArena& arena, const MorphismDef* f, Val x,
                                const ProgDenotation& e) {
  TreeArena* ar = &arena;
  ProgDenotation inner = e;
  Val xv = std::move(x);
  ResourcePtr res = f->dst;
  auto make = [ar, f, xv, inner](int k, bool maximal) {
    std::vector<const Tree*> out;
    if (!maximal) out.push_back(ar->unfinished());
    const auto& bodies = maximal ? inner.maximal_trees(k) : inner.trees(k);
    for (const Tree* t : bodies) out.push_back(ar->morph(f, xv, t));
    return out;
  };
  return ProgDenotation(
      res, e.universe(), [make](int k) { return make(k, false); },
      [make](int k) { return make(k, true); });
}

/**
 * Bounded fixed point: the k-fold iterate of the program transformer from
 * the bottom denotation {Unfinished}. Results are sound for partial
 * correctness up to the unroll depth.
 */
inline ProgDenotation den_fix(
    TreeArena& arena, ResourcePtr res,
    std::function<ProgDenotation(const ProgDenotation&)> body) {
  TreeArena* ar = &arena;
  ProgDenotation bottom(
      res, {},
      [ar](int) { return std::vector<const Tree*>{ar->unfinished()}; },
      [ar](int) { return std::vector<const Tree*>{ar->unfinished()}; });
  ProgDenotation probe = body(bottom);  // one unfolding fixes the universe
  std::vector<Val> verse = probe.universe();
  auto cache = std::make_shared<std::map<int, ProgDenotation>>();
  auto unrolled = [body, bottom, cache](int k) {
    auto it = cache->find(k);
    if (it != cache->end()) return it->second;
    ProgDenotation cur = bottom;
    for (int i = 0; i < k; ++i) cur = body(cur);
    return cache->emplace(k, cur).first->second;
  };
  return ProgDenotation(
      res, verse, [unrolled](int k) { return unrolled(k).trees(k); },
      [unrolled](int k) { return unrolled(k).maximal_trees(k); });
}

}  // namespace reswb

#endif  // RESWB_TREE_HPP_
