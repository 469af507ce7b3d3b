// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "permitlab/mechanism_io.h"

#include "json_util.h"
#include "permitlab/errors.h"

namespace permitlab {

using nlohmann::json;
using internal::RationalFromJson;
using internal::RationalsFromJson;
using internal::RationalsToJson;
using internal::RationalToJson;

namespace {

json MapToJson(const Instance& inst, const ThresholdMap& map) {
  json out = json::array();
  for (int i = 0; i < inst.num_buyers(); ++i) {
    json buyer = json::array();
    for (int j = 0; j < inst.num_items(); ++j) {
      std::vector<Rational> row;
      for (int c = 0; c < inst.costs().size(); ++c) row.push_back(map.at(i, j, c));
      buyer.push_back(RationalsToJson(row));
    }
    out.push_back(buyer);
  }
  return out;
}

void MapFromJson(const Instance& inst, const json& j, const char* name,
                 ThresholdMap* map) {
  const int n = inst.num_buyers();
  const int m = inst.num_items();
  const int nc = inst.costs().size();
  if (!j.is_array() || static_cast<int>(j.size()) != n) {
    throw InvalidInput(std::string(name) + " needs one entry per buyer");
  }
  for (int i = 0; i < n; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != m) {
      throw InvalidInput(std::string(name) + " needs one entry per item");
    }
    for (int x = 0; x < m; ++x) {
      std::vector<Rational> row = RationalsFromJson(j[i][x]);
      if (static_cast<int>(row.size()) != nc) {
        throw InvalidInput(std::string(name) + " needs one entry per cost atom");
      }
      for (int c = 0; c < nc; ++c) map->at(i, x, c) = row[c];
    }
  }
}

std::vector<std::vector<Rational>> MatrixFromJson(const json& j, int rows, int cols,
                                                  const char* name) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows) {
    throw InvalidInput(std::string(name) + " needs one row per buyer");
  }
  std::vector<std::vector<Rational>> out;
  for (const json& row : j) {
    out.push_back(RationalsFromJson(row));
    if (static_cast<int>(out.back().size()) != cols) {
      throw InvalidInput(std::string(name) + " needs one entry per item");
    }
  }
  return out;
}

}  // namespace

std::string SpecToJson(const Instance& inst, const MechanismSpec& spec) {
  ValidateSpec(inst, spec);
  json out;
  out["kind"] = MechanismKindName(spec.kind);
  out["order"] = spec.order;
  out["item_prices"] = MapToJson(inst, spec.item_prices);
  out["tie_accept"] = MapToJson(inst, spec.tie_accept);
  out["show_probs"] = MapToJson(inst, spec.show_probs);
  json permits = json::array();
  for (const auto& row : spec.permit_prices) permits.push_back(RationalsToJson(row));
  out["permit_prices"] = permits;
  json ties = json::array();
  for (const auto& row : spec.permit_tie_accept) ties.push_back(RationalsToJson(row));
  out["permit_tie_accept"] = ties;
  out["bundle_prices"] = RationalsToJson(spec.bundle_prices);
  if (!spec.sub_constraint.empty()) {
    json sub = json::array();
    for (const PairConstraint& pc : spec.sub_constraint) {
      json members = json::array();
      for (PairSet a : pc.Members()) {
        json pairs = json::array();
        for (int e = 0; e < pc.num_pairs(); ++e) {
          if ((a >> e) & 1) {
            pairs.push_back({e / inst.num_items(), e % inst.num_items()});
          }
        }
        members.push_back(pairs);
      }
      sub.push_back(members);
    }
    out["sub_constraint"] = sub;
  }
  return out.dump(2);
}

MechanismSpec SpecFromJson(const Instance& inst, std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed mechanism JSON: ") + e.what());
  }
  if (!j.is_object()) throw InvalidInput("mechanism JSON must be an object");
  const int n = inst.num_buyers();
  const int m = inst.num_items();
  const json& kind = internal::Field(j, "kind");
  if (!kind.is_string()) throw InvalidInput("kind must be a string");
  MechanismSpec spec = DefaultSpec(inst, ParseMechanismKind(kind.get<std::string>()));
  try {
    if (j.contains("order")) spec.order = j["order"].get<std::vector<int>>();
  } catch (const json::exception&) {
    throw InvalidInput("order must be a list of buyer indices");
  }
  if (j.contains("item_prices")) MapFromJson(inst, j["item_prices"], "item_prices", &spec.item_prices);
  if (j.contains("tie_accept")) MapFromJson(inst, j["tie_accept"], "tie_accept", &spec.tie_accept);
  if (j.contains("show_probs")) MapFromJson(inst, j["show_probs"], "show_probs", &spec.show_probs);
  if (j.contains("permit_prices")) {
    spec.permit_prices = MatrixFromJson(j["permit_prices"], n, m, "permit_prices");
  }
  if (j.contains("permit_tie_accept")) {
    spec.permit_tie_accept = MatrixFromJson(j["permit_tie_accept"], n, m, "permit_tie_accept");
  }
  if (j.contains("bundle_prices")) {
    spec.bundle_prices = RationalsFromJson(j["bundle_prices"]);
  }
  if (j.contains("sub_constraint")) {
    const json& sub = j["sub_constraint"];
    if (!sub.is_array()) throw InvalidInput("sub_constraint must be a list");
    const int e = n * m;
    for (const json& members : sub) {
      std::vector<bool> table(size_t{1} << e, false);
      if (!members.is_array()) throw InvalidInput("sub_constraint entries must be lists");
      for (const json& pairs : members) {
        PairSet a = 0;
        if (!pairs.is_array()) throw InvalidInput("allocations must be lists of pairs");
        for (const json& pair : pairs) {
          if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
              !pair[1].is_number_integer()) {
            throw InvalidInput("allocation pairs must be [buyer, item]");
          }
          int i = pair[0].get<int>();
          int x = pair[1].get<int>();
          if (i < 0 || i >= n || x < 0 || x >= m) {
            throw InvalidInput("allocation pair out of range");
          }
          a |= PairSet{1} << PairBit(m, i, x);
        }
        table[a] = true;
      }
      spec.sub_constraint.emplace_back(e, std::move(table));
    }
  }
  ValidateSpec(inst, spec);
  return spec;
}

MechanismSpec LoadSpec(const Instance& inst, const std::string& path) {
  return SpecFromJson(inst, internal::ReadFile(path));
}

void SaveSpec(const Instance& inst, const MechanismSpec& spec,
              const std::string& path) {
  internal::WriteFile(path, SpecToJson(inst, spec) + "\n");
}

}  // namespace permitlab
