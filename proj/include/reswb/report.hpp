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

#ifndef RESWB_REPORT_HPP_
#define RESWB_REPORT_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace reswb {

using Json = nlohmann::ordered_json;

/**
 * Finite instantiation knobs. All universes the workbench enumerates are
 * derived from these; identical bounds must reproduce identical reports.
 */
struct Bounds {
  std::uint32_t max_timestamp = 4;   // history timestamps range over 1..max
  std::uint32_t max_nat = 8;         // bounded naturals: join defined iff sum <= max
  std::uint32_t pointer_pool_size = 2;  // heap pointers range over 1..size
  std::uint32_t unroll_depth = 3;    // loop unrolling for fixed points
  bool interference_full = true;     // false: environment steps restricted to idle
  // Logical-variable domains.
  std::uint32_t gamma_n_max = 5;     // counter snapshots n (kept <= max_nat - 3)
  std::uint32_t stack_max_len = 2;   // abstract stack length bound
  std::uint32_t stack_values = 2;    // stack elements range over 1..stack_values

  Json to_json() const {
    Json j;
    j["max_timestamp"] = max_timestamp;
    j["max_nat"] = max_nat;
    j["pointer_pool_size"] = pointer_pool_size;
    j["unroll_depth"] = unroll_depth;
    j["interference"] = interference_full ? "full" : "none";
    j["gamma"] = Json{{"n_max", gamma_n_max},
                      {"stack_max_len", stack_max_len},
                      {"stack_values", stack_values}};
    return j;
  }

  static Bounds from_json(const Json& j);

  bool operator==(const Bounds& o) const {
    return to_json() == o.to_json();
  }
};

enum class CheckStatus { kPass, kFail, kVacuous };

inline const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::kPass: return "pass";
    case CheckStatus::kFail: return "fail";
    case CheckStatus::kVacuous: return "vacuous";
  }
  return "?";
}

/** One law / diagram / triple verdict inside a scenario report. */
struct CheckEntry {
  std::string name;    // unique within the scenario
  std::string anchor;  // law family this check instantiates, e.g. "pcm/commutative"
  CheckStatus status = CheckStatus::kPass;
  std::optional<Json> witness;  // replayable counterexample, present iff fail
  Json stats = Json::object();

  Json to_json() const {
    Json j;
    j["name"] = name;
    j["anchor"] = anchor;
    j["status"] = status_name(status);
    if (witness) j["witness"] = *witness;
    j["stats"] = stats;
    return j;
  }
};

struct CheckReport {
  std::string scenario;
  Bounds bounds;
  std::vector<CheckEntry> checks;

  bool ok() const {
    for (const auto& c : checks)
      if (c.status == CheckStatus::kFail) return false;
    return true;
  }

  CheckEntry* find(const std::string& name) {
    for (auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
  const CheckEntry* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }

  // `timestamp` is the only nondeterministic field; comparisons exclude it.
  Json to_json(const std::string& timestamp = "") const {
    Json j;
    j["scenario"] = scenario;
    j["bounds"] = bounds.to_json();
    if (!timestamp.empty()) j["timestamp"] = timestamp;
    Json cs = Json::array();
    for (const auto& c : checks) cs.push_back(c.to_json());
    j["checks"] = cs;
    return j;
  }

  std::string to_text() const {
    std::string out = "scenario " + scenario + "\n";
    for (const auto& c : checks) {
      std::string tag = status_name(c.status);
      for (auto& ch : tag) ch = static_cast<char>(::toupper(ch));
      out += "[" + tag + "] " + c.name + " (" + c.anchor + ")";
      if (!c.stats.empty()) out += " " + c.stats.dump();
      out += "\n";
      if (c.witness) out += "  witness: " + c.witness->dump() + "\n";
    }
    out += report_summary();
    return out;
  }

  std::string report_summary() const {
    int pass = 0, fail = 0, vac = 0;
    for (const auto& c : checks) {
      switch (c.status) {
        case CheckStatus::kPass: ++pass; break;
        case CheckStatus::kFail: ++fail; break;
        case CheckStatus::kVacuous: ++vac; break;
      }
    }
    return "total " + std::to_string(checks.size()) + " checks: " +
           std::to_string(pass) + " pass, " + std::to_string(fail) +
           " fail, " + std::to_string(vac) + " vacuous\n";
  }
};

/** Raised when a construction's preconditions fail (distinct from check fails). */
class ConstructionError : public std::runtime_error {
 public:
  ConstructionError(std::string what, Json detail = Json::object())
      : std::runtime_error(std::move(what)), detail(std::move(detail)) {}
  Json detail;
};

inline Bounds Bounds::from_json(const Json& j) {
  Bounds b;
  for (const auto& [key, val] : j.items()) {
    if (key == "max_timestamp") b.max_timestamp = val.get<std::uint32_t>();
    else if (key == "max_nat") b.max_nat = val.get<std::uint32_t>();
    else if (key == "pointer_pool_size") b.pointer_pool_size = val.get<std::uint32_t>();
    else if (key == "unroll_depth") b.unroll_depth = val.get<std::uint32_t>();
    else if (key == "interference") {
      std::string s = val.get<std::string>();
      if (s == "full") b.interference_full = true;
      else if (s == "none") b.interference_full = false;
      else throw ConstructionError("bounds.interference must be \"full\" or \"none\", got \"" + s + "\"");
    } else if (key == "gamma") {
      for (const auto& [gk, gv] : val.items()) {
        if (gk == "n_max") b.gamma_n_max = gv.get<std::uint32_t>();
        else if (gk == "stack_max_len") b.stack_max_len = gv.get<std::uint32_t>();
        else if (gk == "stack_values") b.stack_values = gv.get<std::uint32_t>();
        else throw ConstructionError("unknown bounds.gamma key \"" + gk + "\"");
      }
    } else {
      throw ConstructionError("unknown bounds key \"" + key + "\"");
    }
  }
  if (b.max_timestamp == 0 || b.max_nat == 0 || b.pointer_pool_size == 0 ||
      b.stack_max_len == 0 || b.stack_values == 0)
    throw ConstructionError("bounds must be positive");
  return b;
}

}  // namespace reswb

#endif  // RESWB_REPORT_HPP_
