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

#ifndef RESWB_VAL_HPP_
#define RESWB_VAL_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace reswb {

/**
 * Uniform finite value universe.
 *
 * One algebraic value type covers everything the workbench enumerates:
 * monoid elements (histories, naturals, ownership tokens, heaps, products),
 * joint-state components, heap cell contents, action return values, logical
 * variables and morphism-family indices. Values are immutable, totally
 * ordered (for deterministic enumeration and reporting) and hashable.
 */
class Val {
 public:
  enum class Tag : std::uint8_t {
    kUnit = 0,
    kBool = 1,
    kNat = 2,
    kPtr = 3,
    kNil = 4,
    kAtom = 5,
    kPair = 6,
    kMap = 7,
  };

  // Interned atom ids.
  enum : std::uint32_t {
    kAtomL = 0,       // lock event
    kAtomU = 1,       // unlock event
    kAtomOwn = 2,     // lock ownership token
    kAtomOwnBar = 3,  // absence of ownership (PCM unit of O)
  };

  using MapRep = std::vector<std::pair<std::uint32_t, Val>>;  // sorted by key

  Val() : tag_(Tag::kUnit), num_(0), hash_(hash_scalar(Tag::kUnit, 0)) {}

  static Val unit() { return Val(); }
  static Val boolean(bool b) { return Val(Tag::kBool, b ? 1u : 0u); }
  static Val nat(std::uint32_t n) { return Val(Tag::kNat, n); }
  static Val ptr(std::uint32_t p) { return Val(Tag::kPtr, p); }
  static Val nil() { return Val(Tag::kNil, 0); }
  static Val atom(std::uint32_t id) { return Val(Tag::kAtom, id); }

  static Val pair(Val a, Val b) {
    Val v;
    v.tag_ = Tag::kPair;
    std::size_t h = 0x9e3779b97f4a7c15ull;
    h = mix(h, a.hash());
    h = mix(h, b.hash());
    v.pair_ = std::make_shared<const std::pair<Val, Val>>(std::move(a),
                                                          std::move(b));
    v.hash_ = mix(h, static_cast<std::size_t>(Tag::kPair));
    return v;
  }

  // `entries` must be sorted by key with no duplicates.
  static Val map(MapRep entries) {
    Val v;
    v.tag_ = Tag::kMap;
    std::size_t h = 0xd1b54a32d192ed03ull;
    for (const auto& [k, x] : entries) {
      h = mix(h, k);
      h = mix(h, x.hash());
    }
    v.map_ = std::make_shared<const MapRep>(std::move(entries));
    v.hash_ = mix(h, static_cast<std::size_t>(Tag::kMap));
    return v;
  }

  static Val empty_map() { return map({}); }

  Tag tag() const { return tag_; }
  bool is_unit() const { return tag_ == Tag::kUnit; }
  bool is_map() const { return tag_ == Tag::kMap; }
  bool is_pair() const { return tag_ == Tag::kPair; }

  bool as_bool() const { return num_ != 0; }
  std::uint32_t as_nat() const { return num_; }
  std::uint32_t as_ptr() const { return num_; }
  std::uint32_t atom_id() const { return num_; }
  const Val& first() const { return pair_->first; }
  const Val& second() const { return pair_->second; }
  const MapRep& entries() const { return *map_; }

  std::size_t hash() const { return hash_; }

  int cmp(const Val& o) const {
    if (tag_ != o.tag_) return tag_ < o.tag_ ? -1 : 1;
    switch (tag_) {
      case Tag::kUnit:
      case Tag::kNil:
        return 0;
      case Tag::kBool:
      case Tag::kNat:
      case Tag::kPtr:
      case Tag::kAtom:
        return num_ < o.num_ ? -1 : (num_ > o.num_ ? 1 : 0);
      case Tag::kPair: {
        if (pair_ == o.pair_) return 0;
        int c = pair_->first.cmp(o.pair_->first);
        if (c != 0) return c;
        return pair_->second.cmp(o.pair_->second);
      }
      case Tag::kMap: {
        if (map_ == o.map_) return 0;
        const MapRep& a = *map_;
        const MapRep& b = *o.map_;
        std::size_t n = a.size() < b.size() ? a.size() : b.size();
        for (std::size_t i = 0; i < n; ++i) {
          if (a[i].first != b[i].first)
            return a[i].first < b[i].first ? -1 : 1;
          int c = a[i].second.cmp(b[i].second);
          if (c != 0) return c;
        }
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        return 0;
      }
    }
    return 0;
  }

  friend bool operator==(const Val& a, const Val& b) {
    return a.hash_ == b.hash_ && a.cmp(b) == 0;
  }
  friend bool operator!=(const Val& a, const Val& b) { return !(a == b); }
  friend bool operator<(const Val& a, const Val& b) { return a.cmp(b) < 0; }

  std::string str() const {
    switch (tag_) {
      case Tag::kUnit:
        return "()";
      case Tag::kBool:
        return num_ ? "true" : "false";
      case Tag::kNat:
        return std::to_string(num_);
      case Tag::kPtr:
        return "p" + std::to_string(num_);
      case Tag::kNil:
        return "nil";
      case Tag::kAtom:
        switch (num_) {
          case kAtomL: return "L";
          case kAtomU: return "U";
          case kAtomOwn: return "own";
          case kAtomOwnBar: return "ownbar";
          default: return "atom" + std::to_string(num_);
        }
      case Tag::kPair:
        return "(" + pair_->first.str() + "," + pair_->second.str() + ")";
      case Tag::kMap: {
        std::string out = "{";
        bool sep = false;
        for (const auto& [k, x] : *map_) {
          if (sep) out += ",";
          sep = true;
          out += std::to_string(k) + ":" + x.str();
        }
        return out + "}";
      }
    }
    return "?";
  }

 private:
  Val(Tag t, std::uint32_t n) : tag_(t), num_(n), hash_(hash_scalar(t, n)) {}

  static std::size_t mix(std::size_t h, std::size_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  }
  static std::size_t hash_scalar(Tag t, std::uint32_t n) {
    return mix(static_cast<std::size_t>(t) * 0x100000001b3ull, n);
  }

  Tag tag_;
  std::uint32_t num_;
  std::shared_ptr<const std::pair<Val, Val>> pair_;
  std::shared_ptr<const MapRep> map_;
  std::size_t hash_;
};

struct ValHash {
  std::size_t operator()(const Val& v) const { return v.hash(); }
};

// Finite-map surgery on Val::Tag::kMap values. Maps model histories
// (timestamp to event) and heaps (pointer to content); keys are never 0 for
// heaps (null stays out of every domain).

inline std::optional<Val> map_lookup(const Val& m, std::uint32_t key) {
  for (const auto& [k, v] : m.entries())
    if (k == key) return v;
  return std::nullopt;
}

inline bool map_has(const Val& m, std::uint32_t key) {
  return map_lookup(m, key).has_value();
}

// Disjoint union; nullopt when the domains overlap.
inline std::optional<Val> map_disjoint_union(const Val& a, const Val& b) {
  Val::MapRep out;
  const auto& xs = a.entries();
  const auto& ys = b.entries();
  out.reserve(xs.size() + ys.size());
  std::size_t i = 0, j = 0;
  while (i < xs.size() && j < ys.size()) {
    if (xs[i].first == ys[j].first) return std::nullopt;
    if (xs[i].first < ys[j].first)
      out.push_back(xs[i++]);
    else
      out.push_back(ys[j++]);
  }
  while (i < xs.size()) out.push_back(xs[i++]);
  while (j < ys.size()) out.push_back(ys[j++]);
  return Val::map(std::move(out));
}

inline Val map_set(const Val& m, std::uint32_t key, const Val& v) {
  Val::MapRep out = m.entries();
  for (auto& kv : out) {
    if (kv.first == key) {
      kv.second = v;
      return Val::map(std::move(out));
    }
  }
  out.emplace_back(key, v);
  std::size_t i = out.size() - 1;
  while (i > 0 && out[i - 1].first > out[i].first) {
    std::swap(out[i - 1], out[i]);
    --i;
  }
  return Val::map(std::move(out));
}

inline Val map_singleton(std::uint32_t key, const Val& v) {
  return Val::map({{key, v}});
}

inline std::vector<std::uint32_t> map_dom(const Val& m) {
  std::vector<std::uint32_t> out;
  out.reserve(m.entries().size());
  for (const auto& [k, v] : m.entries()) out.push_back(k);
  return out;
}

// All sub-maps of m paired with their complements, in canonical order.
inline std::vector<std::pair<Val, Val>> map_splits(const Val& m) {
  const auto& es = m.entries();
  std::size_t n = es.size();
  std::vector<std::pair<Val, Val>> out;
  out.reserve(static_cast<std::size_t>(1) << n);
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    Val::MapRep left, right;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1ull << i))
        left.push_back(es[i]);
      else
        right.push_back(es[i]);
    }
    out.emplace_back(Val::map(std::move(left)), Val::map(std::move(right)));
  }
  return out;
}

}  // namespace reswb

#endif  // RESWB_VAL_HPP_
