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

#ifndef RESWB_PCM_HPP_
#define RESWB_PCM_HPP_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "reswb/report.hpp"
#include "reswb/val.hpp"

namespace reswb {

/**
 * A finite-carrier partial commutative monoid.
 *
 * The carrier is an explicit sorted enumeration so every universal law is
 * decidable by brute force. The join is a partial binary function; "join
 * undefined" is an ordinary outcome while applying it to elements outside
 * the carrier is a carrier violation and throws.
 */
class PcmDef {
 public:
  using JoinFn = std::function<std::optional<Val>(const Val&, const Val&)>;

  PcmDef(std::string name, std::vector<Val> carrier, Val unit, JoinFn join)
      : name_(std::move(name)),
        carrier_(std::move(carrier)),
        unit_(std::move(unit)),
        join_(std::move(join)) {
    std::sort(carrier_.begin(), carrier_.end());
    carrier_.erase(std::unique(carrier_.begin(), carrier_.end()),
                   carrier_.end());
    index_.reserve(carrier_.size() * 2);
    for (std::size_t i = 0; i < carrier_.size(); ++i)
      index_.emplace(carrier_[i], static_cast<int>(i));
  }

  const std::string& name() const { return name_; }
  const std::vector<Val>& carrier() const { return carrier_; }
  const Val& unit() const { return unit_; }
  std::size_t size() const { return carrier_.size(); }

  int index_of(const Val& v) const {
    auto it = index_.find(v);
    return it == index_.end() ? -1 : it->second;
  }
  bool contains(const Val& v) const { return index_of(v) >= 0; }

  // Partial join over the carrier; arguments outside it are violations.
  std::optional<Val> join(const Val& a, const Val& b) const {
    int ia = index_of(a), ib = index_of(b);
    if (ia < 0 || ib < 0)
      throw ConstructionError("carrier violation in " + name_ + ": " +
                              (ia < 0 ? a.str() : b.str()) +
                              " is not a carrier element");
    int r = join_index(ia, ib);
    if (r < 0) return std::nullopt;
    return carrier_[static_cast<std::size_t>(r)];
  }

  // Non-throwing definedness: false outside the carrier.
  bool defined(const Val& a, const Val& b) const {
    int ia = index_of(a), ib = index_of(b);
    if (ia < 0 || ib < 0) return false;
    return join_index(ia, ib) >= 0;
  }

  // Index-level join; -1 encodes "undefined". Backed by a dense table for
  // small carriers, recomputed otherwise.
  int join_index(int ia, int ib) const {
    if (table_ready_) return table_[table_at(ia, ib)];
    if (carrier_.size() <= kTableCap) {
      build_table();
      return table_[table_at(ia, ib)];
    }
    return raw_join_index(ia, ib);
  }

  const Val& at(int i) const { return carrier_[static_cast<std::size_t>(i)]; }

 private:
  static constexpr std::size_t kTableCap = 2048;

  std::size_t table_at(int ia, int ib) const {
    return static_cast<std::size_t>(ia) * carrier_.size() +
           static_cast<std::size_t>(ib);
  }

  int raw_join_index(int ia, int ib) const {
    auto r = join_(carrier_[static_cast<std::size_t>(ia)],
                   carrier_[static_cast<std::size_t>(ib)]);
    if (!r) return -1;
    return index_of(*r);  // -1 when the join escapes the carrier
  }

  void build_table() const {
    const std::size_t n = carrier_.size();
    table_.assign(n * n, -1);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        table_[i * n + j] = raw_join_index(static_cast<int>(i),
                                           static_cast<int>(j));
    table_ready_ = true;
  }

  std::string name_;
  std::vector<Val> carrier_;
  Val unit_;
  JoinFn join_;
  std::unordered_map<Val, int, ValHash> index_;
  mutable std::vector<int> table_;
  mutable bool table_ready_ = false;
};

using PcmPtr = std::shared_ptr<const PcmDef>;

inline Json elem_witness(const std::string& law,
                         std::initializer_list<Val> elems) {
  Json w;
  w["kind"] = "counterexample";
  w["law"] = law;
  Json xs = Json::array();
  for (const auto& v : elems) xs.push_back(v.str());
  w["elems"] = xs;
  return w;
}

/** Exhaustive monoid-law check; failures become report entries. */
inline CheckReport check_pcm_laws(const PcmDef& p) {
  CheckReport rep;
  rep.scenario = "pcm-laws:" + p.name();
  const int n = static_cast<int>(p.size());

  CheckEntry unit_in{"unit-in-carrier:" + p.name(), "pcm/unit-in-carrier"};
  if (!p.contains(p.unit())) {
    unit_in.status = CheckStatus::kFail;
    unit_in.witness = elem_witness("unit-in-carrier", {p.unit()});
  }
  rep.checks.push_back(unit_in);
  if (unit_in.status == CheckStatus::kFail) return rep;
  const int ui = p.index_of(p.unit());

  CheckEntry unit_law{"unit-law:" + p.name(), "pcm/unit-law"};
  CheckEntry comm{"commutative:" + p.name(), "pcm/commutative"};
  CheckEntry assoc{"associative:" + p.name(), "pcm/associative-kleene"};

  for (int a = 0; a < n && unit_law.status == CheckStatus::kPass; ++a) {
    if (p.join_index(a, ui) != a || p.join_index(ui, a) != a) {
      unit_law.status = CheckStatus::kFail;
      unit_law.witness = elem_witness("unit-law", {p.at(a), p.unit()});
    }
  }
  rep.checks.push_back(unit_law);

  for (int a = 0; a < n && comm.status == CheckStatus::kPass; ++a) {
    for (int b = a; b < n; ++b) {
      if (p.join_index(a, b) != p.join_index(b, a)) {
        comm.status = CheckStatus::kFail;
        comm.witness = elem_witness("commutative", {p.at(a), p.at(b)});
        break;
      }
    }
  }
  comm.stats["pairs"] = static_cast<std::uint64_t>(n) * n;
  rep.checks.push_back(comm);

  // Kleene reading: both association orders are defined together and equal.
  std::uint64_t triples = 0;
  for (int a = 0; a < n && assoc.status == CheckStatus::kPass; ++a) {
    for (int b = 0; b < n && assoc.status == CheckStatus::kPass; ++b) {
      const int ab = p.join_index(a, b);
      for (int c = 0; c < n; ++c) {
        ++triples;
        const int bc = p.join_index(b, c);
        const int lhs = ab < 0 ? -1 : p.join_index(ab, c);
        const int rhs = bc < 0 ? -1 : p.join_index(a, bc);
        if (lhs != rhs) {
          assoc.status = CheckStatus::kFail;
          assoc.witness =
              elem_witness("associative", {p.at(a), p.at(b), p.at(c)});
          break;
        }
      }
    }
  }
  assoc.stats["triples"] = triples;
  rep.checks.push_back(assoc);
  return rep;
}

/**
 * A binary compatibility relation refining definedness of the join; the
 * five axioms make it usable for carving sub-PCMs.
 */
struct CompatRel {
  std::string name;
  PcmPtr base;
  std::function<bool(const Val&, const Val&)> rel;

  bool operator()(const Val& x, const Val& y) const { return rel(x, y); }
};

// The trivially compatible relation: definedness of the join itself.
inline CompatRel defined_rel(PcmPtr p) {
  auto base = p;
  return CompatRel{"defined", base, [base](const Val& x, const Val& y) {
                     return base->defined(x, y);
                   }};
}

namespace detail {

/** Materialized view of a CompatRel over the carrier, for sparse axiom walks. */
struct RelMatrix {
  int n = 0;
  std::vector<bool> bits;
  std::vector<std::vector<int>> adj;
  std::uint64_t related = 0;

  bool at(int i, int j) const {
    return bits[static_cast<std::size_t>(i) * n + j];
  }

  static RelMatrix build(const CompatRel& r) {
    RelMatrix m;
    const PcmDef& p = *r.base;
    m.n = static_cast<int>(p.size());
    m.bits.assign(static_cast<std::size_t>(m.n) * m.n, false);
    m.adj.resize(m.n);
    for (int i = 0; i < m.n; ++i) {
      for (int j = 0; j < m.n; ++j) {
        if (r(p.at(i), p.at(j))) {
          m.bits[static_cast<std::size_t>(i) * m.n + j] = true;
          m.adj[i].push_back(j);
          ++m.related;
        }
      }
    }
    return m;
  }
};

}  // namespace detail

/** Checks the five compatibility-relation axioms over all pairs/triples. */
inline CheckReport check_compat_laws(const CompatRel& r) {
  CheckReport rep;
  rep.scenario = "compat-laws:" + r.name;
  const PcmDef& p = *r.base;
  const auto m = detail::RelMatrix::build(r);
  const int ui = p.index_of(p.unit());

  CheckEntry unitary{"unitary:" + r.name, "compat/unitary"};
  if (!m.at(ui, ui)) {
    unitary.status = CheckStatus::kFail;
    unitary.witness = elem_witness("unitary", {p.unit(), p.unit()});
  }
  rep.checks.push_back(unitary);

  CheckEntry comm{"commutative:" + r.name, "compat/commutative"};
  for (int i = 0; i < m.n && comm.status == CheckStatus::kPass; ++i)
    for (int j : m.adj[i])
      if (!m.at(j, i)) {
        comm.status = CheckStatus::kFail;
        comm.witness = elem_witness("commutative", {p.at(i), p.at(j)});
        break;
      }
  rep.checks.push_back(comm);

  CheckEntry compat{"compatible:" + r.name, "compat/compatible"};
  for (int i = 0; i < m.n && compat.status == CheckStatus::kPass; ++i)
    for (int j : m.adj[i])
      if (p.join_index(i, j) < 0) {
        compat.status = CheckStatus::kFail;
        compat.witness = elem_witness("compatible", {p.at(i), p.at(j)});
        break;
      }
  rep.checks.push_back(compat);

  CheckEntry unital{"unital:" + r.name, "compat/unital"};
  for (int i = 0; i < m.n && unital.status == CheckStatus::kPass; ++i)
    for (int j : m.adj[i])
      if (!m.at(i, ui)) {
        unital.status = CheckStatus::kFail;
        unital.witness = elem_witness("unital", {p.at(i), p.at(j)});
        break;
      }
  rep.checks.push_back(unital);

  CheckEntry assoc{"associative:" + r.name, "compat/associative"};
  std::uint64_t triples = 0;
  for (int i = 0; i < m.n && assoc.status == CheckStatus::kPass; ++i) {
    for (int j : m.adj[i]) {
      const int ij = p.join_index(i, j);
      if (ij < 0) continue;  // reported by the compatible axiom
      for (int k : m.adj[ij]) {
        ++triples;
        const int jk = p.join_index(j, k);
        if (jk < 0 || !m.at(i, jk) || !m.at(j, k)) {
          assoc.status = CheckStatus::kFail;
          assoc.witness =
              elem_witness("associative", {p.at(i), p.at(j), p.at(k)});
          break;
        }
      }
      if (assoc.status == CheckStatus::kFail) break;
    }
  }
  assoc.stats["triples"] = triples;
  assoc.stats["related_pairs"] = m.related;
  rep.checks.push_back(assoc);
  return rep;
}

/**
 * A PCM morphism: partial map between carriers together with the
 * compatibility relation that delimits where it is homomorphic.
 */
struct PcmMorphDef {
  std::string name;
  PcmPtr src;
  PcmPtr dst;
  std::function<std::optional<Val>(const Val&)> map;
  CompatRel domrel;  // over src

  std::optional<Val> operator()(const Val& x) const { return map(x); }
};

inline CheckReport check_pcm_morph_laws(const PcmMorphDef& f) {
  CheckReport rep;
  rep.scenario = "pcm-morph-laws:" + f.name;
  const PcmDef& a = *f.src;
  const PcmDef& b = *f.dst;

  CheckEntry u{"preserves-unit:" + f.name, "pcm-morphism/preserves-unit"};
  auto fu = f.map(a.unit());
  if (!fu || *fu != b.unit()) {
    u.status = CheckStatus::kFail;
    u.witness = elem_witness("preserves-unit", {a.unit()});
  }
  rep.checks.push_back(u);

  CheckEntry h{"homomorphic:" + f.name, "pcm-morphism/homomorphic-on-compatible"};
  std::uint64_t pairs = 0;
  for (const Val& x : a.carrier()) {
    for (const Val& y : a.carrier()) {
      if (!f.domrel(x, y)) continue;
      ++pairs;
      auto fx = f.map(x);
      auto fy = f.map(y);
      auto xy = a.defined(x, y) ? a.join(x, y) : std::nullopt;
      bool okay = fx && fy && xy && b.defined(*fx, *fy);
      if (okay) {
        auto fxy = f.map(*xy);
        okay = fxy && *fxy == *b.join(*fx, *fy);
      }
      if (!okay) {
        h.status = CheckStatus::kFail;
        h.witness = elem_witness("homomorphic", {x, y});
        break;
      }
    }
    if (h.status == CheckStatus::kFail) break;
  }
  h.stats["compatible_pairs"] = pairs;
  rep.checks.push_back(h);
  return rep;
}

/** Point-wise product of two PCMs; defined iff both components are. */
inline PcmPtr product_pcm(PcmPtr p1, PcmPtr p2) {
  std::vector<Val> carrier;
  carrier.reserve(p1->size() * p2->size());
  for (const Val& a : p1->carrier())
    for (const Val& b : p2->carrier()) carrier.push_back(Val::pair(a, b));
  Val unit = Val::pair(p1->unit(), p2->unit());
  auto join = [p1, p2](const Val& x, const Val& y) -> std::optional<Val> {
    auto a = p1->join(x.first(), y.first());
    if (!a) return std::nullopt;
    auto b = p2->join(x.second(), y.second());
    if (!b) return std::nullopt;
    return Val::pair(*a, *b);
  };
  return std::make_shared<PcmDef>(p1->name() + "*" + p2->name(),
                                  std::move(carrier), std::move(unit),
                                  std::move(join));
}

/** Sub-PCM carved out of `parent` by a compatibility relation. */
struct SubPcm {
  PcmPtr parent;
  CompatRel rel;
  PcmPtr derived;
  PcmMorphDef inj;   // derived -> parent, total
  PcmMorphDef retr;  // parent -> derived, defined on {b | b rel 1}
  CheckReport axioms;   // the relation's compatibility axioms
  CheckReport recheck;  // sub-PCM laws plus the carved monoid's laws
};

inline SubPcm sub_pcm(PcmPtr parent, const CompatRel& rel) {
  auto axioms = check_compat_laws(rel);
  if (!axioms.ok()) {
    for (const auto& c : axioms.checks)
      if (c.status == CheckStatus::kFail)
        throw ConstructionError("sub_pcm refused: axiom " + c.anchor +
                                    " fails for relation " + rel.name,
                                c.witness ? *c.witness : Json::object());
  }

  std::vector<Val> carrier;
  for (const Val& x : parent->carrier())
    if (rel(x, parent->unit())) carrier.push_back(x);

  CompatRel r = rel;
  PcmPtr par = parent;
  auto join = [par, r](const Val& x, const Val& y) -> std::optional<Val> {
    if (!r(x, y)) return std::nullopt;
    return par->join(x, y);
  };
  auto derived = std::make_shared<PcmDef>(parent->name() + "/" + rel.name,
                                          std::move(carrier), parent->unit(),
                                          std::move(join));

  PcmMorphDef inj{
      "inj:" + derived->name(), derived, parent,
      [derived](const Val& x) -> std::optional<Val> {
        if (!derived->contains(x)) return std::nullopt;
        return x;
      },
      defined_rel(derived)};
  PcmMorphDef retr{
      "retr:" + derived->name(), parent, derived,
      [par, r](const Val& x) -> std::optional<Val> {
        if (!r(x, par->unit())) return std::nullopt;
        return x;
      },
      CompatRel{rel.name, parent, rel.rel}};

  SubPcm out{parent, rel,           derived, std::move(inj),
             std::move(retr), std::move(axioms), {}};

  // Re-check the three sub-PCM laws plus the monoid laws of the carved PCM.
  CheckReport rc;
  rc.scenario = "sub-pcm:" + derived->name();
  CheckEntry roundtrip{"retraction-of-injection", "sub-pcm/retraction-of-injection"};
  for (const Val& x : derived->carrier()) {
    auto b = out.inj.map(x);
    auto a = b ? out.retr.map(*b) : std::nullopt;
    if (!a || *a != x) {
      roundtrip.status = CheckStatus::kFail;
      roundtrip.witness = elem_witness("retraction-of-injection", {x});
      break;
    }
  }
  rc.checks.push_back(roundtrip);

  CheckEntry back{"injection-of-retraction", "sub-pcm/injection-of-retraction"};
  for (const Val& b : parent->carrier()) {
    if (!rel(b, parent->unit())) continue;
    auto a = out.retr.map(b);
    auto b2 = a ? out.inj.map(*a) : std::nullopt;
    if (!b2 || *b2 != b) {
      back.status = CheckStatus::kFail;
      back.witness = elem_witness("injection-of-retraction", {b});
      break;
    }
  }
  rc.checks.push_back(back);

  CheckEntry refl{"compatibility-reflection", "sub-pcm/compatibility-reflection"};
  {
    std::vector<const Val*> in_range;
    for (const Val& x : parent->carrier())
      if (rel(x, parent->unit())) in_range.push_back(&x);
    for (const Val* x : in_range) {
      for (const Val* y : in_range) {
        if (derived->defined(*x, *y) && !rel(*x, *y)) {
          refl.status = CheckStatus::kFail;
          refl.witness = elem_witness("compatibility-reflection", {*x, *y});
          break;
        }
      }
      if (refl.status == CheckStatus::kFail) break;
    }
  }
  rc.checks.push_back(refl);

  auto monoid = check_pcm_laws(*derived);
  for (auto& c : monoid.checks) rc.checks.push_back(c);
  if (!rc.ok())
    throw ConstructionError("sub_pcm recheck failed for " + derived->name());
  out.recheck = std::move(rc);
  return out;
}

// ---- Derived morphisms and relations (composition, join, kernel,
// ---- equalizer, restriction). Each derived compatibility relation is
// ---- again a compatibility relation; scenarios re-verify that.

inline PcmMorphDef morph_compose(const PcmMorphDef& f, const PcmMorphDef& g) {
  // (f o g)(x) = f(g(x)), so g runs first; src = g.src, dst = f.dst.
  auto fm = f.map;
  auto gm = g.map;
  auto frel = f.domrel.rel;
  auto grel = g.domrel.rel;
  CompatRel dom{
      f.name + "o" + g.name, g.src,
      [fm, gm, frel, grel](const Val& x, const Val& y) {
        if (!grel(x, y)) return false;
        auto gx = gm(x);
        auto gy = gm(y);
        return gx && gy && frel(*gx, *gy);
      }};
  return PcmMorphDef{f.name + "o" + g.name, g.src, f.dst,
                     [fm, gm](const Val& x) -> std::optional<Val> {
                       auto gx = gm(x);
                       if (!gx) return std::nullopt;
                       return fm(*gx);
                     },
                     std::move(dom)};
}

inline PcmMorphDef morph_join(const PcmMorphDef& f, const PcmMorphDef& g) {
  if (f.dst->name() != g.dst->name())
    throw ConstructionError("morph_join requires a common target PCM");
  auto fm = f.map;
  auto gm = g.map;
  auto frel = f.domrel.rel;
  auto grel = g.domrel.rel;
  PcmPtr src = f.src;
  PcmPtr dst = f.dst;
  auto apply = [fm, gm, dst](const Val& x) -> std::optional<Val> {
    auto fx = fm(x);
    auto gx = gm(x);
    if (!fx || !gx) return std::nullopt;
    return dst->join(*fx, *gx);
  };
  CompatRel dom{
      f.name + "+" + g.name, src,
      [frel, grel, apply, src](const Val& x, const Val& y) {
        if (!frel(x, y) || !grel(x, y)) return false;
        auto xy = src->join(x, y);
        if (!xy) return false;
        return apply(*xy).has_value();  // f(x+y) compatible with g(x+y)
      }};
  return PcmMorphDef{f.name + "+" + g.name, src, dst, apply, std::move(dom)};
}

inline CompatRel morph_kernel(const PcmMorphDef& f) {
  auto fm = f.map;
  auto frel = f.domrel.rel;
  Val u = f.dst->unit();
  return CompatRel{"ker:" + f.name, f.src,
                   [fm, frel, u](const Val& x, const Val& y) {
                     if (!frel(x, y)) return false;
                     auto fx = fm(x);
                     auto fy = fm(y);
                     return fx && fy && *fx == u && *fy == u;
                   }};
}

inline CompatRel morph_equalizer(const PcmMorphDef& f, const PcmMorphDef& g) {
  auto fm = f.map;
  auto gm = g.map;
  auto frel = f.domrel.rel;
  auto grel = g.domrel.rel;
  return CompatRel{"eqlz:" + f.name + "," + g.name, f.src,
                   [fm, gm, frel, grel](const Val& x, const Val& y) {
                     if (!frel(x, y) || !grel(x, y)) return false;
                     auto fx = fm(x);
                     auto gx = gm(x);
                     auto fy = fm(y);
                     auto gy = gm(y);
                     return fx && gx && fy && gy && *fx == *gx && *fy == *gy;
                   }};
}

inline PcmMorphDef morph_restrict(const PcmMorphDef& f, const CompatRel& r) {
  auto fm = f.map;
  auto frel = f.domrel.rel;
  auto rr = r.rel;
  Val u = f.src->unit();
  return PcmMorphDef{f.name + "/" + r.name, f.src, f.dst,
                     [fm, rr, u](const Val& x) -> std::optional<Val> {
                       if (!rr(x, u)) return std::nullopt;
                       return fm(x);
                     },
                     CompatRel{f.name + "/" + r.name, f.src,
                               [frel, rr](const Val& x, const Val& y) {
                                 return frel(x, y) && rr(x, y);
                               }}};
}

// ---- Stock PCMs ----

inline PcmPtr unit_pcm() {
  return std::make_shared<PcmDef>(
      "unit", std::vector<Val>{Val::unit()}, Val::unit(),
      [](const Val&, const Val&) -> std::optional<Val> { return Val::unit(); });
}

// Naturals 0..max with addition, undefined past the bound.
inline PcmPtr nat_pcm(std::uint32_t max) {
  std::vector<Val> carrier;
  for (std::uint32_t i = 0; i <= max; ++i) carrier.push_back(Val::nat(i));
  return std::make_shared<PcmDef>(
      "nat<=" + std::to_string(max), std::move(carrier), Val::nat(0),
      [max](const Val& a, const Val& b) -> std::optional<Val> {
        std::uint64_t s = static_cast<std::uint64_t>(a.as_nat()) + b.as_nat();
        if (s > max) return std::nullopt;
        return Val::nat(static_cast<std::uint32_t>(s));
      });
}

// Exclusive ownership: ownbar is the unit and own+own stays undefined.
inline PcmPtr o_pcm() {
  Val own = Val::atom(Val::kAtomOwn);
  Val bar = Val::atom(Val::kAtomOwnBar);
  return std::make_shared<PcmDef>(
      "O", std::vector<Val>{own, bar}, bar,
      [own, bar](const Val& a, const Val& b) -> std::optional<Val> {
        if (a == bar) return b;
        if (b == bar) return a;
        return std::nullopt;
      });
}

// Finite maps keys -> values under disjoint union (histories and heaps).
// Each key may carry its own value universe.
inline PcmPtr fmap_pcm(
    const std::string& name,
    const std::vector<std::pair<std::uint32_t, std::vector<Val>>>& slots) {
  std::vector<Val> carrier;
  carrier.push_back(Val::empty_map());
  for (const auto& [k, values] : slots) {
    std::vector<Val> grown;
    grown.reserve(carrier.size() * (values.size() + 1));
    for (const Val& m : carrier) {
      grown.push_back(m);
      for (const Val& v : values) grown.push_back(map_set(m, k, v));
    }
    carrier.swap(grown);
  }
  return std::make_shared<PcmDef>(
      name, std::move(carrier), Val::empty_map(),
      [](const Val& a, const Val& b) { return map_disjoint_union(a, b); });
}

inline PcmPtr fmap_pcm(const std::string& name,
                       const std::vector<std::uint32_t>& keys,
                       const std::vector<Val>& values) {
  std::vector<std::pair<std::uint32_t, std::vector<Val>>> slots;
  for (std::uint32_t k : keys) slots.emplace_back(k, values);
  return fmap_pcm(name, slots);
}

inline PcmPtr hist_pcm(std::uint32_t max_timestamp,
                       const std::vector<Val>& events) {
  std::vector<std::uint32_t> keys;
  for (std::uint32_t t = 1; t <= max_timestamp; ++t) keys.push_back(t);
  return fmap_pcm("hist<=" + std::to_string(max_timestamp), keys, events);
}

inline PcmPtr heap_pcm(std::uint32_t pool_size, const std::vector<Val>& cells,
                       const std::string& name = "") {
  std::vector<std::uint32_t> keys;
  for (std::uint32_t p = 1; p <= pool_size; ++p) keys.push_back(p);
  return fmap_pcm(name.empty() ? "heap" + std::to_string(pool_size) : name,
                  keys, cells);
}

}  // namespace reswb

#endif  // RESWB_PCM_HPP_
