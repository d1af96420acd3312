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

#ifndef RESWB_STATE_HPP_
#define RESWB_STATE_HPP_

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reswb/pcm.hpp"
#include "reswb/val.hpp"

namespace reswb {

/**
 * Subjective state: the view one thread has of the world. `self` and
 * `other` are elements of the owning resource's PCM, `joint` ranges over a
 * finite joint universe. Equality is componentwise; well-formedness lives
 * in the owning state space.
 */
struct SubjState {
  Val self;
  Val joint;
  Val other;

  friend bool operator==(const SubjState& a, const SubjState& b) {
    return a.self == b.self && a.joint == b.joint && a.other == b.other;
  }
  friend bool operator!=(const SubjState& a, const SubjState& b) {
    return !(a == b);
  }
  friend bool operator<(const SubjState& a, const SubjState& b) {
    int c = a.self.cmp(b.self);
    if (c != 0) return c < 0;
    c = a.joint.cmp(b.joint);
    if (c != 0) return c < 0;
    return a.other.cmp(b.other) < 0;
  }

  std::string str() const {
    return "(self=" + self.str() + ", joint=" + joint.str() +
           ", other=" + other.str() + ")";
  }
};

struct SubjStateHash {
  std::size_t operator()(const SubjState& s) const {
    std::size_t h = s.self.hash();
    h ^= s.joint.hash() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h ^= s.other.hash() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  }
};

// Framing moves existing material between the subjective components; it
// never invents state.

inline std::optional<SubjState> self_frame(const PcmDef& p, const SubjState& s,
                                           const Val& frame) {
  auto j = p.join(s.self, frame);
  if (!j) return std::nullopt;
  return SubjState{*j, s.joint, s.other};
}

inline std::optional<SubjState> other_frame(const PcmDef& p,
                                            const SubjState& s,
                                            const Val& frame) {
  auto j = p.join(frame, s.other);
  if (!j) return std::nullopt;
  return SubjState{s.self, s.joint, *j};
}

inline SubjState transpose(const SubjState& s) {
  return SubjState{s.other, s.joint, s.self};
}

/**
 * Result of the subjective star join. When the witness for the common
 * environment is not unique (non-cancellative carrier) the join reports
 * ambiguity instead of picking a representative.
 */
struct StarJoinResult {
  std::optional<SubjState> state;
  bool ambiguous = false;
};

// s1 * s2: both children agree on the joint component, each sees the other
// child joined with the shared environment x; the parent keeps x as other.
inline StarJoinResult star_join(const PcmDef& p, const SubjState& s1,
                                const SubjState& s2) {
  StarJoinResult out;
  if (s1.joint != s2.joint) return out;
  auto self = p.join(s1.self, s2.self);
  if (!self) return out;
  std::optional<Val> witness;
  for (const Val& x : p.carrier()) {
    auto o1 = p.join(s2.self, x);
    if (!o1 || *o1 != s1.other) continue;
    auto o2 = p.join(s1.self, x);
    if (!o2 || *o2 != s2.other) continue;
    if (witness && *witness != x) {
      out.ambiguous = true;
      return out;
    }
    witness = x;
  }
  if (!witness) return out;
  out.state = SubjState{*self, s1.joint, *witness};
  return out;
}

// All splittings s = s1 * s2, driven by the decompositions of s.self.
inline std::vector<std::pair<SubjState, SubjState>> star_split(
    const PcmDef& p, const SubjState& s) {
  std::vector<std::pair<SubjState, SubjState>> out;
  for (const Val& b1 : p.carrier()) {
    for (const Val& b2 : p.carrier()) {
      auto j = p.join(b1, b2);
      if (!j || *j != s.self) continue;
      auto o1 = p.join(b2, s.other);
      auto o2 = p.join(b1, s.other);
      if (!o1 || !o2) continue;
      out.emplace_back(SubjState{b1, s.joint, *o1}, SubjState{b2, s.joint, *o2});
    }
  }
  return out;
}

/**
 * Shared state generator: every module enumerates candidate states the
 * same way, as (self, joint, other) triples over the carrier and joint
 * universe, optionally filtered by a membership predicate.
 */
inline std::vector<SubjState> enumerate_states(
    const PcmDef& p, const std::vector<Val>& joint_universe,
    const std::function<bool(const SubjState&)>& keep = {}) {
  std::vector<SubjState> out;
  for (const Val& a : p.carrier())
    for (const Val& j : joint_universe)
      for (const Val& o : p.carrier()) {
        SubjState s{a, j, o};
        if (!keep || keep(s)) out.push_back(std::move(s));
      }
  return out;
}

using StatePred = std::function<bool(const SubjState&)>;
using StateFn = std::function<std::optional<Val>(const SubjState&)>;

inline Json state_witness(const std::string& law, const SubjState& s,
                          const Val& frame) {
  Json w;
  w["kind"] = "counterexample";
  w["law"] = law;
  w["state"] = s.str();
  w["frame"] = frame.str();
  return w;
}

/**
 * Globality: invariance under moving a frame between the subjective
 * components. Quantifies over all candidate states and frames p with
 * self(s) # p and p # other(s).
 */
inline CheckEntry check_global(const std::string& name, const StatePred& pred,
                               const std::vector<SubjState>& candidates,
                               const PcmDef& pcm) {
  CheckEntry e{name, "state/global-predicate"};
  std::uint64_t tried = 0;
  for (const SubjState& s : candidates) {
    if (!pcm.contains(s.self) || !pcm.contains(s.other)) continue;
    for (const Val& p : pcm.carrier()) {
      auto up = self_frame(pcm, s, p);
      auto down = other_frame(pcm, s, p);
      if (!up || !down) continue;
      ++tried;
      if (pred(*down) != pred(*up)) {
        e.status = CheckStatus::kFail;
        e.witness = state_witness("global-predicate", s, p);
        e.stats["instances"] = tried;
        return e;
      }
    }
  }
  e.stats["instances"] = tried;
  return e;
}

// Same shape for (partial) functions: Kleene equality of the two framings.
// When `under` is supplied, only framings with under(s <| p) count.
inline CheckEntry check_global_fn(const std::string& name, const StateFn& fn,
                                  const std::vector<SubjState>& candidates,
                                  const PcmDef& pcm,
                                  const StatePred& under = {}) {
  CheckEntry e{name, under ? "state/global-function-under"
                           : "state/global-function"};
  std::uint64_t tried = 0;
  for (const SubjState& s : candidates) {
    if (!pcm.contains(s.self) || !pcm.contains(s.other)) continue;
    for (const Val& p : pcm.carrier()) {
      auto up = self_frame(pcm, s, p);
      auto down = other_frame(pcm, s, p);
      if (!up || !down) continue;
      if (under && !under(*up)) continue;
      ++tried;
      auto a = fn(*down);
      auto b = fn(*up);
      bool equal = (!a && !b) || (a && b && *a == *b);
      if (!equal) {
        e.status = CheckStatus::kFail;
        e.witness = state_witness("global-function", s, p);
        e.stats["instances"] = tried;
        return e;
      }
    }
  }
  e.stats["instances"] = tried;
  return e;
}

inline CheckEntry check_global_under(const std::string& name,
                                     const StatePred& pred,
                                     const StatePred& under,
                                     const std::vector<SubjState>& candidates,
                                     const PcmDef& pcm) {
  CheckEntry e{name, "state/global-predicate-under"};
  std::uint64_t tried = 0;
  for (const SubjState& s : candidates) {
    if (!pcm.contains(s.self) || !pcm.contains(s.other)) continue;
    for (const Val& p : pcm.carrier()) {
      auto up = self_frame(pcm, s, p);
      auto down = other_frame(pcm, s, p);
      if (!up || !down) continue;
      if (!under(*up)) continue;
      ++tried;
      if (pred(*down) != pred(*up)) {
        e.status = CheckStatus::kFail;
        e.witness = state_witness("global-predicate-under", s, p);
        e.stats["instances"] = tried;
        return e;
      }
    }
  }
  e.stats["instances"] = tried;
  return e;
}

}  // namespace reswb

#endif  // RESWB_STATE_HPP_
