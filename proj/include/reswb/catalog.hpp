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

#ifndef RESWB_CATALOG_HPP_
#define RESWB_CATALOG_HPP_

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "reswb/semantics.hpp"

namespace reswb {

// ---- lock histories: timestamped L/U logs ----

inline Val ev_lock() { return Val::atom(Val::kAtomL); }
inline Val ev_unlock() { return Val::atom(Val::kAtomU); }

inline std::uint32_t last_stamp(const Val& h) {
  const auto& es = h.entries();
  return es.empty() ? 0 : es.back().first;
}

inline Val last_op(const Val& h) {
  std::uint32_t t = last_stamp(h);
  if (t == 0) return ev_unlock();
  return *map_lookup(h, t);
}

// Lock status computed from a history: taken iff the last entry locked.
inline bool omega(const Val& h) { return last_op(h) == ev_lock(); }

inline std::uint32_t fresh_stamp(const Val& h) { return last_stamp(h) + 1; }

// Gap-free alternating log: 1 maps to L, 2 to U, and so on to the last stamp.
inline bool alternate(const Val& h) {
  const auto& es = h.entries();
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (es[i].first != i + 1) return false;
    const bool odd = (i % 2) == 0;
    if (es[i].second != (odd ? ev_lock() : ev_unlock())) return false;
  }
  return true;
}

inline std::uint32_t count_lock_events(const Val& h) {
  std::uint32_t n = 0;
  for (const auto& [t, e] : h.entries()) n += e == ev_lock() ? 1 : 0;
  return n;
}

// h (x)w k: whoever holds the lock per its own log logged last overall.
inline bool omega_compat(const Val& h, const Val& k) {
  if (!map_disjoint_union(h, k)) return false;
  if (omega(h) && !(last_stamp(k) < last_stamp(h))) return false;
  if (omega(k) && !(last_stamp(h) < last_stamp(k))) return false;
  return true;
}

// ---- bounded list values (stack contents) ----

inline Val enc_list(const std::vector<std::uint32_t>& xs) {
  Val out = Val::nil();
  for (std::size_t i = xs.size(); i-- > 0;)
    out = Val::pair(Val::nat(xs[i]), out);
  return out;
}

inline std::optional<std::vector<std::uint32_t>> dec_list(const Val& v) {
  std::vector<std::uint32_t> out;
  const Val* cur = &v;
  while (cur->tag() == Val::Tag::kPair) {
    if (cur->first().tag() != Val::Tag::kNat) return std::nullopt;
    out.push_back(cur->first().as_nat());
    cur = &cur->second();
  }
  if (cur->tag() != Val::Tag::kNil) return std::nullopt;
  return out;
}

inline std::vector<Val> list_universe(std::uint32_t values,
                                      std::uint32_t max_len) {
  std::vector<Val> out;
  std::vector<std::vector<std::uint32_t>> layer{{}};
  out.push_back(enc_list({}));
  for (std::uint32_t l = 1; l <= max_len; ++l) {
    std::vector<std::vector<std::uint32_t>> next;
    for (const auto& xs : layer)
      for (std::uint32_t v = 1; v <= values; ++v) {
        auto grown = xs;
        grown.insert(grown.begin(), v);
        out.push_back(enc_list(grown));
        next.push_back(std::move(grown));
      }
    layer.swap(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/**
 * The worked examples: resources, morphisms, simulations, programs and
 * specs, instantiated at the given bounds. Construction is lazy so a
 * scenario only pays for the slices it touches.
 */
class Catalog {
 public:
  static constexpr std::uint32_t kLockPtr = 1;   // the spin lock cell
  static constexpr std::uint32_t kResPtr = 2;    // protected by the lock
  static constexpr std::uint32_t kStackPtr = 1;  // root cell of the stack

  explicit Catalog(Bounds bounds) : bounds_(std::move(bounds)) {}
  Catalog(const Catalog&) = delete;
  Catalog& operator=(const Catalog&) = delete;

  const Bounds& bounds() const { return bounds_; }
  TreeArena& arena() { return arena_; }

  // ---- PCMs ----

  PcmPtr lock_hist_pcm() {
    return memo(lock_hist_, [this] {
      return hist_pcm(bounds_.max_timestamp, {ev_lock(), ev_unlock()});
    });
  }
  PcmPtr nats_pcm() {
    return memo(nats_, [this] { return nat_pcm(bounds_.max_nat); });
  }
  PcmPtr own_pcm() {
    return memo(own_, [] { return o_pcm(); });
  }
  PcmPtr bool_heap_pcm() {
    return memo(bool_heap_, [this] {
      return heap_pcm(bounds_.pointer_pool_size,
                      {Val::boolean(false), Val::boolean(true)}, "heapB");
    });
  }

  // ---- Spin (history-only form) ----

  ResourcePtr spin() {
    return memo(spin_, [this] { return build_spin(false); });
  }

  // ---- Spin with permissions to unlock ----

  ResourcePtr spin_perm() {
    return memo(spin_perm_, [this] { return build_spin(true); });
  }

  // ---- Counter ----

  ResourcePtr counter() {
    return memo(counter_, [this] {
      PcmPtr pcm = nats_pcm();
      StateSpace space{
          [pcm](const SubjState& s) { return pcm->defined(s.self, s.other); },
          [](const SubjState&) -> std::optional<Val> {
            return Val::empty_map();
          }};
      std::vector<Transition> ts;
      for (std::uint32_t n : incr_amounts()) ts.push_back(incr_tr(n));
      return std::make_shared<ResourceDef>("Counter", pcm,
                                           std::vector<Val>{Val::unit()},
                                           std::move(space), std::move(ts));
    });
  }

  // Increment amounts: each representable amount, plus one oversized
  // amount used by the vacuous unlock morphism. The oversized increment
  // only ever fires beyond the bounded horizon.
  std::vector<std::uint32_t> incr_amounts() const {
    std::vector<std::uint32_t> ns;
    for (std::uint32_t n = 0; n <= bounds_.max_nat; ++n) ns.push_back(n);
    if (42 > bounds_.max_nat) ns.push_back(42);
    return ns;
  }

  static std::string incr_name(std::uint32_t n) {
    return "incr_tr." + std::to_string(n);
  }

  // ---- SC: Spin tensored with Counter ----

  ResourcePtr sc() {
    return memo(sc_, [this] {
      std::vector<std::pair<std::string, std::string>> pairs;
      for (std::uint32_t n : incr_amounts())
        pairs.emplace_back("lock_tr", incr_name(n));
      pairs.emplace_back("unlock_tr", "id_tr");
      pairs.emplace_back("id_tr", "id_tr");
      return tensor(spin(), counter(), pairs, "SC");
    });
  }

  // The counter-attaching morphism family: locking increments by n.
  std::shared_ptr<const MorphismDef> f_n(std::uint32_t n) {
    auto it = fns_.find(n);
    if (it != fns_.end()) return it->second;
    auto m = std::make_shared<MorphismDef>(MorphismDef{
        "f" + std::to_string(n),
        spin(),
        sc(),
        {Val::unit()},
        [](const Val&, const SubjState& s) -> std::optional<SubjState> {
          if (!s.self.is_pair()) return std::nullopt;
          return proj_state(s, 1);
        },
        [n](const Val&, const SubjState&,
            const std::string& t) -> std::optional<std::string> {
          if (t == "lock_tr") return "lock_tr*" + incr_name(n);
          if (t == "unlock_tr") return "unlock_tr*id_tr";
          if (t == "id_tr") return "id_tr";
          return std::nullopt;
        },
        [](const Val& p) { return p.first(); }});
    fns_.emplace(n, m);
    return m;
  }

  // The counter-tracks-locks simulation: the counter equals its snapshot n
  // plus n-per-fresh-lock-event since the history snapshot h.
  SimulationDef counter_tracks_locks_sim(
      std::uint32_t n, std::uint32_t snapshot_kappa, const Val& h,
      std::shared_ptr<const MorphismDef> f) {
    keepalive_.push_back(f);
    const long base = count_lock_events(h);
    return SimulationDef{
        "I" + std::to_string(n) + "@" + h.str(), f.get(),
        [n, snapshot_kappa, base](const Val&, const SubjState& s) {
          if (!s.self.is_pair() || s.self.second().tag() != Val::Tag::kNat)
            return false;
          const long kappa = static_cast<long>(s.self.second().as_nat());
          const long fresh_locks = count_lock_events(s.self.first()) - base;
          return kappa == static_cast<long>(snapshot_kappa) +
                              static_cast<long>(n) * fresh_locks;
        }};
  }

  // ---- actions ----

  std::shared_ptr<const ActionDef> trylock_act() {
    return memo(trylock_, [] {
      return std::make_shared<ActionDef>(ActionDef{
          "trylock_act",
          [](const SubjState& s)
              -> std::optional<std::pair<std::string, Val>> {
            auto total = total_hist(s);
            if (!total) return std::nullopt;
            if (!omega(*total))
              return std::make_pair(std::string("lock_tr"),
                                    Val::boolean(true));
            return std::make_pair(std::string("id_tr"), Val::boolean(false));
          },
          {Val::boolean(false), Val::boolean(true)}});
    });
  }

  std::shared_ptr<const ActionDef> unlock_act() {
    return memo(unlock_, [] {
      return std::make_shared<ActionDef>(ActionDef{
          "unlock_act",
          [](const SubjState& s)
              -> std::optional<std::pair<std::string, Val>> {
            auto total = total_hist(s);
            if (!total) return std::nullopt;
            if (omega(*total))
              return std::make_pair(std::string("unlock_tr"), Val::unit());
            return std::make_pair(std::string("id_tr"), Val::unit());
          },
          {Val::unit()}});
    });
  }

  // Heap-level reference commands for the erasure checks.
  static std::optional<std::pair<Val, Val>> cas_rmw(const Val& heap) {
    auto cur = map_lookup(heap, kLockPtr);
    if (!cur || cur->tag() != Val::Tag::kBool) return std::nullopt;
    if (!cur->as_bool())
      return std::make_pair(map_set(heap, kLockPtr, Val::boolean(true)),
                            Val::boolean(true));
    return std::make_pair(heap, Val::boolean(false));
  }
  static std::optional<std::pair<Val, Val>> write_false_rmw(const Val& heap) {
    if (!map_has(heap, kLockPtr)) return std::nullopt;
    return std::make_pair(map_set(heap, kLockPtr, Val::boolean(false)),
                          Val::unit());
  }

  // ---- CSLX: heap transfer protected by ownership ----

  // The resource invariant: the protected pointer stores true.
  static bool res_invariant(const Val& heap) {
    return heap == map_singleton(kResPtr, Val::boolean(true));
  }

  PcmPtr cslx_pcm() {
    return memo(cslx_pcm_, [this] {
      return product_pcm(own_pcm(), sigma_heap_pcm());
    });
  }

  PcmPtr sigma_heap_pcm() {
    return memo(sigma_heap_, [] {
      return fmap_pcm("heapR",
                      {{kResPtr, {Val::boolean(false), Val::boolean(true)}}});
    });
  }

  ResourcePtr cslx() {
    return memo(cslx_, [this] {
      PcmPtr pcm = cslx_pcm();
      std::vector<Val> joints;
      for (const Val& h : sigma_heap_pcm()->carrier()) joints.push_back(h);
      auto member = [pcm](const SubjState& s) {
        if (!s.self.is_pair() || !s.other.is_pair() || !s.joint.is_map())
          return false;
        if (!pcm->defined(s.self, s.other)) return false;
        auto sj = map_disjoint_union(s.self.second(), s.joint);
        if (!sj) return false;
        if (!map_disjoint_union(*sj, s.other.second())) return false;
        const bool owned = s.self.first() == Val::atom(Val::kAtomOwn) ||
                           s.other.first() == Val::atom(Val::kAtomOwn);
        return owned ? s.joint == Val::empty_map() : res_invariant(s.joint);
      };
      auto erase = [](const SubjState& s) -> std::optional<Val> {
        auto sj = map_disjoint_union(s.self.second(), s.joint);
        if (!sj) return std::nullopt;
        return map_disjoint_union(*sj, s.other.second());
      };

      std::vector<Transition> ts;
      ts.push_back(open_tr());
      ts.push_back(close_tr());
      for (bool b : {false, true}) ts.push_back(heap_write_tr(b));
      return std::make_shared<ResourceDef>("CSLX", pcm, std::move(joints),
                                           StateSpace{member, erase},
                                           std::move(ts));
    });
  }

  // ---- CSLp = SpinPerm (x) CSLX, and CSL = CSLp restricted by Inv ----

  ResourcePtr cslp() {
    return memo(cslp_, [this] {
      std::vector<std::pair<std::string, std::string>> pairs{
          {"lock_tr", "open_tr"},
          {"unlock_tr", "close_tr"},
          {"id_tr", "write_tr.false"},
          {"id_tr", "write_tr.true"},
          {"id_tr", "id_tr"}};
      return tensor(spin_perm(), cslx(), pairs, "CSLp");
    });
  }

  // Per-element coherence of the exclusive-locking discipline: the lock
  // bit computed from the history agrees with the ownership token, and the
  // permission count is exactly one when owning.
  bool coherent_elem(const Val& x) const {
    const Val& h = x.first().first();
    std::uint32_t perm = x.first().second().as_nat();
    const bool owns = x.second().first() == Val::atom(Val::kAtomOwn);
    if (omega(h) != owns) return false;
    return perm == (owns ? 1u : 0u);
  }

  // Direct encoding of the restriction relation for exclusive locking.
  CompatRel inv_rel() {
    build_csl_slice();
    return *inv_rel_;
  }

  StatePred inv_state_pred() {
    CompatRel r = inv_rel();
    return [r](const SubjState& s) { return r(s.self, s.other); };
  }

  const SubResource& csl_slice() {
    build_csl_slice();
    return *csl_;
  }
  ResourcePtr csl() { return csl_slice().resource; }

  std::shared_ptr<const MorphismDef> spin_to_cslp() {
    return memo(spin_to_cslp_, [this] {
      auto src = spin_perm();
      auto dst = cslp();
      return std::make_shared<MorphismDef>(MorphismDef{
          "f",
          src,
          dst,
          {Val::unit()},
          [](const Val&, const SubjState& s) -> std::optional<SubjState> {
            if (!s.self.is_pair()) return std::nullopt;
            return proj_state(s, 1);
          },
          [](const Val&, const SubjState&,
             const std::string& t) -> std::optional<std::string> {
            if (t == "lock_tr") return "lock_tr*open_tr";
            if (t == "unlock_tr") return "unlock_tr*close_tr";
            if (t == "id_tr") return "id_tr";
            return std::nullopt;
          },
          [](const Val& p) { return p.first(); }});
    });
  }

  std::shared_ptr<const MorphismDef> iota_csl() {
    build_csl_slice();
    return iota_;
  }

  std::shared_ptr<const MorphismDef> spin_to_csl() {
    return memo(spin_to_csl_, [this] {
      return std::make_shared<MorphismDef>(
          compose(*iota_csl(), *spin_to_cslp()));
    });
  }

  // The self heap satisfies the resource invariant iff we own the lock.
  // A simulation for the composed morphism, but not an invariant: the
  // owner is free to mutate the acquired heap.
  StatePred sim_pred() {
    return [](const SubjState& s) {
      const Val& alpha = s.self.second().first();
      const Val& sigma = s.self.second().second();
      if (alpha == Val::atom(Val::kAtomOwn)) return res_invariant(sigma);
      return sigma == Val::empty_map();
    };
  }

  SimulationDef csl_sim() {
    auto f = spin_to_csl();
    StatePred p = sim_pred();
    return SimulationDef{"Sim", f.get(), [p](const Val&, const SubjState& s) {
                           return p(s);
                         }};
  }

  // ---- Stack and Priv (quiescence) ----

  std::uint32_t stack_ts_max() const { return bounds_.stack_max_len; }

  std::vector<Val> stack_values() const {
    return list_universe(bounds_.stack_values, bounds_.stack_max_len);
  }

  // Push events: (contents, pushed value consed on).
  std::vector<Val> stack_events() const {
    std::vector<Val> out;
    for (const Val& vs : list_universe(bounds_.stack_values,
                                       bounds_.stack_max_len - 1))
      for (std::uint32_t v = 1; v <= bounds_.stack_values; ++v) {
        auto xs = dec_list(vs);
        auto grown = *xs;
        grown.insert(grown.begin(), v);
        out.push_back(Val::pair(vs, enc_list(grown)));
      }
    std::sort(out.begin(), out.end());
    return out;
  }

  PcmPtr stack_hist_pcm() {
    return memo(stack_hist_, [this] {
      std::vector<std::uint32_t> keys;
      for (std::uint32_t t = 1; t <= stack_ts_max(); ++t) keys.push_back(t);
      return fmap_pcm("stackhist", keys, stack_events());
    });
  }

  PcmPtr side_heap_pcm() {
    return memo(side_heap_, [this] {
      return fmap_pcm("heapS",
                      {{kStackPtr, stack_values()},
                       {kResPtr, {Val::boolean(false), Val::boolean(true)}}});
    });
  }

  PcmPtr stack_pcm() {
    return memo(stack_pcm_, [this] {
      return product_pcm(stack_hist_pcm(), side_heap_pcm());
    });
  }

  // Chain-consistent, gap-free histories; the abstract stack value is the
  // outcome of the last push.
  static bool chain_consistent(const Val& h) {
    const auto& es = h.entries();
    Val cur = enc_list({});
    for (std::size_t i = 0; i < es.size(); ++i) {
      if (es[i].first != i + 1) return false;
      if (es[i].second.first() != cur) return false;
      cur = es[i].second.second();
    }
    return true;
  }

  static Val abstract_stack(const Val& h) {
    const auto& es = h.entries();
    return es.empty() ? enc_list({}) : es.back().second.second();
  }

  static bool layout(const Val& vs, const Val& heap) {
    return heap == map_singleton(kStackPtr, vs);
  }

  static std::string push_name(std::uint32_t v) {
    return "push_tr." + std::to_string(v);
  }
  static std::string swrite_name(bool b) {
    return std::string("swrite_tr.") + (b ? "true" : "false");
  }

  ResourcePtr stack() {
    return memo(stack_, [this] {
      PcmPtr pcm = stack_pcm();
      std::vector<Val> joints;
      for (const Val& vs : stack_values())
        joints.push_back(map_singleton(kStackPtr, vs));
      auto member = [pcm](const SubjState& s) {
        if (!s.self.is_pair() || !s.other.is_pair() || !s.joint.is_map())
          return false;
        if (!pcm->defined(s.self, s.other)) return false;
        auto th = map_disjoint_union(s.self.first(), s.other.first());
        if (!th || !chain_consistent(*th)) return false;
        if (!layout(abstract_stack(*th), s.joint)) return false;
        auto sj = map_disjoint_union(s.self.second(), s.joint);
        if (!sj) return false;
        return map_disjoint_union(*sj, s.other.second()).has_value();
      };
      auto erase = [](const SubjState& s) -> std::optional<Val> {
        auto sj = map_disjoint_union(s.self.second(), s.joint);
        if (!sj) return std::nullopt;
        return map_disjoint_union(*sj, s.other.second());
      };
      std::vector<Transition> ts;
      for (std::uint32_t v = 1; v <= bounds_.stack_values; ++v)
        ts.push_back(push_tr(v));
      for (bool b : {false, true}) ts.push_back(stack_write_tr(b));
      return std::make_shared<ResourceDef>("Stack", pcm, std::move(joints),
                                           StateSpace{member, erase},
                                           std::move(ts));
    });
  }

  static std::string priv_cas_name(const Val& old_v, const Val& new_v) {
    return "cas_tr." + old_v.str() + ">" + new_v.str();
  }
  static std::string priv_wr_name(std::uint32_t p, const Val& v) {
    return "wr_tr." + std::to_string(p) + ":" + v.str();
  }

  ResourcePtr priv() {
    return memo(priv_, [this] {
      PcmPtr pcm = side_heap_pcm();
      auto member = [pcm](const SubjState& s) {
        return s.self.is_map() && s.other.is_map() &&
               pcm->defined(s.self, s.other);
      };
      auto erase = [](const SubjState& s) -> std::optional<Val> {
        return map_disjoint_union(s.self, s.other);
      };
      std::vector<Transition> ts;
      for (const Val& o : stack_values())
        for (const Val& n : stack_values()) ts.push_back(priv_cas_tr(o, n));
      for (bool b : {false, true})
        ts.push_back(priv_wr_tr(kResPtr, Val::boolean(b)));
      return std::make_shared<ResourceDef>(
          "Priv", pcm, std::vector<Val>{Val::unit()}, StateSpace{member, erase},
          std::move(ts));
    });
  }

  // Index set of the quiescence family: every reachable self history.
  std::vector<Val> stack_chains() {
    std::vector<Val> out;
    for (const Val& h : stack_hist_pcm()->carrier())
      if (chain_consistent(h)) out.push_back(h);
    std::sort(out.begin(), out.end());
    return out;
  }

  // g : Stack -> Priv indexed by histories; forgets ghost state, forcing
  // the other history empty (quiescence).
  std::shared_ptr<const MorphismDef> quiescence_family() {
    return memo(quiescence_, [this] {
      auto src = stack();
      auto dst = priv();
      std::vector<Val> chains = stack_chains();
      return std::make_shared<MorphismDef>(MorphismDef{
          "g",
          src,
          dst,
          chains,
          [src](const Val& x, const SubjState& sp) -> std::optional<SubjState> {
            // chi_s splits into the laid-out stack plus the leftover self
            // heap; precision of the layout makes the split unique.
            Val want = abstract_stack(x);
            auto cell = map_lookup(sp.self, kStackPtr);
            if (!cell || *cell != want) return std::nullopt;
            Val::MapRep rest;
            for (const auto& [k, v] : sp.self.entries())
              if (k != kStackPtr) rest.emplace_back(k, v);
            SubjState sv{Val::pair(x, Val::map(std::move(rest))),
                         map_singleton(kStackPtr, want),
                         Val::pair(Val::empty_map(), sp.other)};
            if (!src->member(sv)) return std::nullopt;
            return sv;
          },
          [](const Val& x, const SubjState&,
             const std::string& t) -> std::optional<std::string> {
            if (t == "id_tr") return "id_tr";
            if (t.rfind("push_tr.", 0) == 0) {
              std::uint32_t v =
                  static_cast<std::uint32_t>(std::stoul(t.substr(8)));
              Val old_v = abstract_stack(x);
              auto xs = dec_list(old_v);
              if (!xs) return std::nullopt;
              auto grown = *xs;
              grown.insert(grown.begin(), v);
              return priv_cas_name(old_v, enc_list(grown));
            }
            if (t == swrite_name(false))
              return priv_wr_name(kResPtr, Val::boolean(false));
            if (t == swrite_name(true))
              return priv_wr_name(kResPtr, Val::boolean(true));
            return std::nullopt;
          },
          [](const Val& p) { return Val::pair(Val::empty_map(), p); }});
    });
  }

  std::shared_ptr<const ActionDef> push_act(std::uint32_t v) {
    auto it = push_acts_.find(v);
    if (it != push_acts_.end()) return it->second;
    auto a = std::make_shared<ActionDef>(ActionDef{
        "push_act." + std::to_string(v),
        [v](const SubjState&) -> std::optional<std::pair<std::string, Val>> {
          return std::make_pair(push_name(v), Val::unit());
        },
        {Val::unit()}});
    push_acts_.emplace(v, a);
    return a;
  }

  // ---- programs ----

  // lock: spin on trylock until it lands.
  ProgDenotation lock_program(ResourcePtr over) {
    auto act = trylock_act();
    keepalive_act_.push_back(act);
    TreeArena* ar = &arena_;
    ProgDenotation attempt = den_act(arena_, over, act.get());
    ProgDenotation ret_unit = den_ret(arena_, over, Val::unit());
    return den_fix(arena_, over,
                   [ar, attempt, ret_unit](const ProgDenotation& loop) {
                     return den_bind(*ar, attempt,
                                     [ret_unit, loop](const Val& b) {
                                       return b.as_bool() ? ret_unit : loop;
                                     });
                   });
  }

  ProgDenotation unlock_program(ResourcePtr over) {
    auto act = unlock_act();
    keepalive_act_.push_back(act);
    return den_act(arena_, over, act.get());
  }

  // Lock and bump by one, unlock vacuously, lock and bump by two.
  ProgDenotation composite_incr3_program() {
    auto m1 = f_n(1);
    auto m42 = f_n(42);
    auto m2 = f_n(2);
    keepalive_.insert(keepalive_.end(), {m1, m42, m2});
    ProgDenotation lock1 = den_morph(arena_, m1.get(), Val::unit(),
                                     lock_program(spin()));
    ProgDenotation unl = den_morph(arena_, m42.get(), Val::unit(),
                                   unlock_program(spin()));
    ProgDenotation lock2 = den_morph(arena_, m2.get(), Val::unit(),
                                     lock_program(spin()));
    return den_bind(arena_, lock1, den_bind(arena_, unl, lock2));
  }

  ProgDenotation exlock_program() {
    auto f = spin_to_csl();
    keepalive_.push_back(f);
    return den_morph(arena_, f.get(), Val::unit(), lock_program(spin_perm()));
  }

  ProgDenotation exunlock_program() {
    auto f = spin_to_csl();
    keepalive_.push_back(f);
    return den_morph(arena_, f.get(), Val::unit(),
                     unlock_program(spin_perm()));
  }

  // morph g empty (push a || push b) on Priv.
  ProgDenotation quiescent_push_pair(std::uint32_t a, std::uint32_t b) {
    auto g = quiescence_family();
    keepalive_.push_back(g);
    auto pa = push_act(a);
    auto pb = push_act(b);
    ProgDenotation ea = den_act(arena_, stack(), pa.get());
    ProgDenotation eb = den_act(arena_, stack(), pb.get());
    return den_morph(arena_, g.get(), Val::empty_map(),
                     den_par(arena_, ea, eb));
  }

  ProgDenotation push_program(std::uint32_t v) {
    auto pv = push_act(v);
    return den_act(arena_, stack(), pv.get());
  }

 private:
  template <typename T, typename F>
  T memo(std::optional<T>& slot, F&& build) {
    if (!slot) slot = build();
    return *slot;
  }

  static std::optional<Val> total_hist(const SubjState& s) {
    // Works for plain history states and for (hist, perm) pairs.
    const Val& a = s.self.is_pair() && s.self.first().is_map() &&
                           s.self.second().tag() == Val::Tag::kNat
                       ? s.self.first()
                       : s.self;
    const Val& o = s.other.is_pair() && s.other.first().is_map() &&
                           s.other.second().tag() == Val::Tag::kNat
                       ? s.other.first()
                       : s.other;
    if (!a.is_map() || !o.is_map()) return std::nullopt;
    return map_disjoint_union(a, o);
  }

  ResourcePtr build_spin(bool with_perm) {
    PcmPtr hist = lock_hist_pcm();
    PcmPtr pcm = with_perm ? product_pcm(hist, nats_pcm()) : hist;
    const std::uint32_t tmax = bounds_.max_timestamp;
    const std::uint32_t nmax = bounds_.max_nat;

    auto hist_of = [with_perm](const Val& a) {
      return with_perm ? a.first() : a;
    };
    auto member = [pcm, hist_of](const SubjState& s) {
      if (!pcm->contains(s.self) || !pcm->contains(s.other)) return false;
      if (!pcm->defined(s.self, s.other)) return false;
      auto th = map_disjoint_union(hist_of(s.self), hist_of(s.other));
      return th && alternate(*th);
    };
    auto erase = [hist_of](const SubjState& s) -> std::optional<Val> {
      auto th = map_disjoint_union(hist_of(s.self), hist_of(s.other));
      if (!th) return std::nullopt;
      return map_singleton(kLockPtr, Val::boolean(omega(*th)));
    };

    // Builds lock_tr / unlock_tr; the permissioned form also counts
    // permissions to unlock up/down.
    auto log_tr = [with_perm, tmax, nmax](bool lock) {
      Transition t;
      t.name = lock ? "lock_tr" : "unlock_tr";
      t.step = [with_perm, tmax, nmax, lock](const SubjState& s) -> StepOut {
        const Val& a = with_perm ? s.self.first() : s.self;
        const Val& o = with_perm ? s.other.first() : s.other;
        if (!a.is_map() || !o.is_map()) return StepOut::blocked();
        auto th = map_disjoint_union(a, o);
        if (!th) return StepOut::blocked();
        if (omega(*th) == lock) return StepOut::blocked();
        std::uint32_t perm = 0;
        if (with_perm) {
          perm = s.self.second().as_nat();
          if (!lock && perm == 0) return StepOut::blocked();
        }
        std::uint32_t t2 = fresh_stamp(*th);
        if (t2 > tmax) return StepOut::horizon();
        if (with_perm && lock &&
            perm + 1 + s.other.second().as_nat() > nmax)
          return StepOut::horizon();
        Val hist2 = map_set(a, t2, lock ? ev_lock() : ev_unlock());
        Val self2 = with_perm
                        ? Val::pair(hist2,
                                    Val::nat(lock ? perm + 1 : perm - 1))
                        : hist2;
        return StepOut::stepped(SubjState{self2, s.joint, s.other});
      };
      t.rel = [with_perm, lock](const SubjState& s, const SubjState& s2) {
        const Val& a = with_perm ? s.self.first() : s.self;
        const Val& o = with_perm ? s.other.first() : s.other;
        if (!a.is_map() || !o.is_map()) return false;
        auto th = map_disjoint_union(a, o);
        if (!th || omega(*th) == lock) return false;
        if (s2.joint != s.joint || s2.other != s.other) return false;
        const Val& a2 = with_perm ? s2.self.first() : s2.self;
        Val want = map_set(a, fresh_stamp(*th), lock ? ev_lock() : ev_unlock());
        if (a2 != want) return false;
        if (with_perm) {
          std::uint32_t perm = s.self.second().as_nat();
          if (!lock && perm == 0) return false;
          if (s2.self.second() != Val::nat(lock ? perm + 1 : perm - 1))
            return false;
        }
        return true;
      };
      return t;
    };

    std::vector<Transition> ts{log_tr(true), log_tr(false)};
    return std::make_shared<ResourceDef>(
        with_perm ? "SpinPerm" : "Spin", pcm, std::vector<Val>{Val::unit()},
        StateSpace{member, erase}, std::move(ts));
  }

  Transition incr_tr(std::uint32_t n) {
    const std::uint32_t nmax = bounds_.max_nat;
    Transition t;
    t.name = incr_name(n);
    t.step = [n, nmax](const SubjState& s) -> StepOut {
      if (s.self.tag() != Val::Tag::kNat) return StepOut::blocked();
      std::uint64_t sum = static_cast<std::uint64_t>(s.self.as_nat()) + n;
      if (sum > nmax) return StepOut::horizon();
      if (s.other.tag() == Val::Tag::kNat && sum + s.other.as_nat() > nmax)
        return StepOut::horizon();
      return StepOut::stepped(SubjState{
          Val::nat(static_cast<std::uint32_t>(sum)), s.joint, s.other});
    };
    t.rel = [n](const SubjState& s, const SubjState& s2) {
      if (s.self.tag() != Val::Tag::kNat || s2.self.tag() != Val::Tag::kNat)
        return false;
      return s2.joint == s.joint && s2.other == s.other &&
             static_cast<std::uint64_t>(s2.self.as_nat()) ==
                 static_cast<std::uint64_t>(s.self.as_nat()) + n;
    };
    return t;
  }

  Transition open_tr() {
    Transition t;
    t.name = "open_tr";
    t.step = [](const SubjState& s) -> StepOut {
      if (s.self.first() != Val::atom(Val::kAtomOwnBar))
        return StepOut::blocked();
      if (s.other.first() == Val::atom(Val::kAtomOwn))
        return StepOut::blocked();  // exclusive: cannot own twice
      auto grown = map_disjoint_union(s.self.second(), s.joint);
      if (!grown) return StepOut::blocked();
      return StepOut::stepped(SubjState{
          Val::pair(Val::atom(Val::kAtomOwn), *grown), Val::empty_map(),
          s.other});
    };
    t.rel = [](const SubjState& s, const SubjState& s2) {
      if (s.self.first() != Val::atom(Val::kAtomOwnBar)) return false;
      if (s2.self.first() != Val::atom(Val::kAtomOwn)) return false;
      auto grown = map_disjoint_union(s.self.second(), s.joint);
      return grown && s2.self.second() == *grown &&
             s2.joint == Val::empty_map() && s2.other == s.other;
    };
    return t;
  }

  Transition close_tr() {
    Transition t;
    t.name = "close_tr";
    t.step = [](const SubjState& s) -> StepOut {
      if (s.self.first() != Val::atom(Val::kAtomOwn)) return StepOut::blocked();
      // Precision of the resource invariant picks the unique split.
      auto cell = map_lookup(s.self.second(), kResPtr);
      if (!cell || *cell != Val::boolean(true)) return StepOut::blocked();
      Val::MapRep rest;
      for (const auto& [k, v] : s.self.second().entries())
        if (k != kResPtr) rest.emplace_back(k, v);
      return StepOut::stepped(SubjState{
          Val::pair(Val::atom(Val::kAtomOwnBar), Val::map(std::move(rest))),
          map_singleton(kResPtr, Val::boolean(true)), s.other});
    };
    t.rel = [](const SubjState& s, const SubjState& s2) {
      if (s.self.first() != Val::atom(Val::kAtomOwn)) return false;
      if (s2.self.first() != Val::atom(Val::kAtomOwnBar)) return false;
      if (!res_invariant(s2.joint) || s2.other != s.other) return false;
      auto back = map_disjoint_union(s2.self.second(), s2.joint);
      return back && *back == s.self.second();
    };
    return t;
  }

  Transition heap_write_tr(bool b) {
    Transition t;
    t.name = std::string("write_tr.") + (b ? "true" : "false");
    t.step = [b](const SubjState& s) -> StepOut {
      if (!s.self.is_pair() || !s.self.second().is_map())
        return StepOut::blocked();
      if (!map_has(s.self.second(), kResPtr)) return StepOut::blocked();
      return StepOut::stepped(SubjState{
          Val::pair(s.self.first(),
                    map_set(s.self.second(), kResPtr, Val::boolean(b))),
          s.joint, s.other});
    };
    t.rel = [b](const SubjState& s, const SubjState& s2) {
      if (!s.self.is_pair() || !map_has(s.self.second(), kResPtr)) return false;
      return s2.joint == s.joint && s2.other == s.other &&
             s2.self == Val::pair(s.self.first(),
                                  map_set(s.self.second(), kResPtr,
                                          Val::boolean(b)));
    };
    return t;
  }

  Transition push_tr(std::uint32_t v) {
    const std::uint32_t ts_max = stack_ts_max();
    const std::uint32_t max_len = bounds_.stack_max_len;
    Transition t;
    t.name = push_name(v);
    t.step = [v, ts_max, max_len](const SubjState& s) -> StepOut {
      if (!s.self.is_pair() || !s.other.is_pair() || !s.joint.is_map())
        return StepOut::blocked();
      auto cell = map_lookup(s.joint, kStackPtr);
      if (!cell) return StepOut::blocked();
      auto xs = dec_list(*cell);
      if (!xs) return StepOut::blocked();
      auto th = map_disjoint_union(s.self.first(), s.other.first());
      if (!th) return StepOut::blocked();
      if (xs->size() + 1 > max_len) return StepOut::horizon();
      std::uint32_t stamp = fresh_stamp(*th);
      if (stamp > ts_max) return StepOut::horizon();
      auto grown = *xs;
      grown.insert(grown.begin(), v);
      Val ev = Val::pair(*cell, enc_list(grown));
      return StepOut::stepped(SubjState{
          Val::pair(map_set(s.self.first(), stamp, ev), s.self.second()),
          map_singleton(kStackPtr, enc_list(grown)), s.other});
    };
    t.rel = [v, ts_max, max_len](const SubjState& s, const SubjState& s2) {
      if (!s.self.is_pair() || !s.joint.is_map()) return false;
      auto cell = map_lookup(s.joint, kStackPtr);
      if (!cell) return false;
      auto xs = dec_list(*cell);
      if (!xs || xs->size() + 1 > max_len) return false;
      auto th = map_disjoint_union(s.self.first(), s.other.first());
      if (!th) return false;
      std::uint32_t stamp = fresh_stamp(*th);
      if (stamp > ts_max) return false;
      auto grown = *xs;
      grown.insert(grown.begin(), v);
      Val ev = Val::pair(*cell, enc_list(grown));
      return s2.other == s.other &&
             s2.joint == map_singleton(kStackPtr, enc_list(grown)) &&
             s2.self == Val::pair(map_set(s.self.first(), stamp, ev),
                                  s.self.second());
    };
    return t;
  }

  Transition stack_write_tr(bool b) {
    Transition t;
    t.name = swrite_name(b);
    t.step = [b](const SubjState& s) -> StepOut {
      if (!s.self.is_pair() || !s.self.second().is_map())
        return StepOut::blocked();
      if (!map_has(s.self.second(), kResPtr)) return StepOut::blocked();
      return StepOut::stepped(SubjState{
          Val::pair(s.self.first(),
                    map_set(s.self.second(), kResPtr, Val::boolean(b))),
          s.joint, s.other});
    };
    return t;
  }

  Transition priv_cas_tr(const Val& old_v, const Val& new_v) {
    Transition t;
    t.name = priv_cas_name(old_v, new_v);
    t.step = [old_v, new_v](const SubjState& s) -> StepOut {
      if (!s.self.is_map()) return StepOut::blocked();
      auto cur = map_lookup(s.self, kStackPtr);
      if (!cur || *cur != old_v) return StepOut::blocked();
      return StepOut::stepped(
          SubjState{map_set(s.self, kStackPtr, new_v), s.joint, s.other});
    };
    return t;
  }

  Transition priv_wr_tr(std::uint32_t p, const Val& v) {
    Transition t;
    t.name = priv_wr_name(p, v);
    t.step = [p, v](const SubjState& s) -> StepOut {
      if (!s.self.is_map() || !map_has(s.self, p)) return StepOut::blocked();
      return StepOut::stepped(
          SubjState{map_set(s.self, p, v), s.joint, s.other});
    };
    return t;
  }

  void build_csl_slice() {
    if (csl_) return;
    PcmPtr parent = cslp()->pcm_ptr();
    // Per-element coherence precomputed once; the relation stays cheap over
    // the quadratic pair walks of the axiom checks.
    auto coherent = std::make_shared<std::unordered_map<Val, bool, ValHash>>();
    for (const Val& x : parent->carrier())
      coherent->emplace(x, coherent_elem(x));
    CompatRel rel{
        "Inv", parent, [coherent](const Val& x, const Val& y) {
          auto cx = coherent->find(x);
          auto cy = coherent->find(y);
          if (cx == coherent->end() || !cx->second) return false;
          if (cy == coherent->end() || !cy->second) return false;
          if (!omega_compat(x.first().first(), y.first().first())) return false;
          // Full subjective compatibility: the heap halves must be disjoint.
          return map_disjoint_union(x.second().second(), y.second().second())
              .has_value();
        }};
    inv_rel_ = rel;
    SubResource sub = sub_resource(cslp(), rel, "CSL");
    iota_ = std::make_shared<MorphismDef>(sub.iota);
    csl_ = std::make_unique<SubResource>(std::move(sub));
  }

  Bounds bounds_;
  TreeArena arena_;

  std::optional<PcmPtr> lock_hist_, nats_, own_, bool_heap_, cslx_pcm_,
      sigma_heap_, stack_hist_, side_heap_, stack_pcm_;
  std::optional<ResourcePtr> spin_, spin_perm_, counter_, sc_, cslx_, cslp_,
      stack_, priv_;
  std::optional<std::shared_ptr<const MorphismDef>> spin_to_cslp_,
      spin_to_csl_, quiescence_;
  std::map<std::uint32_t, std::shared_ptr<const MorphismDef>> fns_;
  std::map<std::uint32_t, std::shared_ptr<const ActionDef>> push_acts_;
  std::optional<std::shared_ptr<const ActionDef>> trylock_, unlock_;
  std::optional<CompatRel> inv_rel_;
  std::shared_ptr<const MorphismDef> iota_;
  std::unique_ptr<SubResource> csl_;
  std::vector<std::shared_ptr<const MorphismDef>> keepalive_;
  std::vector<std::shared_ptr<const ActionDef>> keepalive_act_;
};

}  // namespace reswb

#endif  // RESWB_CATALOG_HPP_
