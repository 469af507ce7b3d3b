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

#include "permitlab/instance_io.h"

#include <string>
#include <vector>

#include "json_util.h"

namespace permitlab {

using nlohmann::json;
using internal::Field;
using internal::ItemSetFromJson;
using internal::ItemSetToJson;
using internal::RationalFromJson;
using internal::RationalsFromJson;
using internal::RationalsToJson;

namespace {

json FamilyToJson(const FeasibilityFamily& f) {
  const int m = f.ground_size();
  json params = json::object();
  std::string kind = FamilyKindName(f.kind());
  switch (f.kind()) {
    case FamilyKind::kUniform:
      if (f.uniform_rank() == m) {
        kind = "additive";
      } else {
        params["rank"] = f.uniform_rank();
      }
      break;
    case FamilyKind::kPartition: {
      json parts = json::array();
      for (ItemSet p : f.parts()) parts.push_back(ItemSetToJson(p, m));
      params["parts"] = parts;
      params["capacities"] = f.capacities();
      break;
    }
    case FamilyKind::kBases: {
      json bases = json::array();
      for (ItemSet b : f.bases()) bases.push_back(ItemSetToJson(b, m));
      params["bases"] = bases;
      break;
    }
    case FamilyKind::kExplicit: {
      json members = json::array();
      for (ItemSet s : f.Members()) members.push_back(ItemSetToJson(s, m));
      params["members"] = members;
      break;
    }
  }
  return json{{"kind", kind}, {"params", params}};
}

FeasibilityFamily FamilyFromJson(const json& j, int m) {
  std::string kind = Field(j, "kind").get<std::string>();
  json params = j.contains("params") ? j.at("params") : json::object();
  auto sets = [&](const char* name) {
    std::vector<ItemSet> out;
    for (const auto& e : Field(params, name)) out.push_back(ItemSetFromJson(e, m));
    return out;
  };
  if (kind == "additive") return FeasibilityFamily::Additive(m);
  if (kind == "uniform") {
    return FeasibilityFamily::Uniform(m, Field(params, "rank").get<int>());
  }
  if (kind == "partition") {
    return FeasibilityFamily::Partition(
        m, sets("parts"), Field(params, "capacities").get<std::vector<int>>());
  }
  if (kind == "bases") return FeasibilityFamily::FromBases(m, sets("bases"));
  if (kind == "explicit") return FeasibilityFamily::Explicit(m, sets("members"));
  throw InvalidInput("unknown family kind '" + kind + "'");
}

}  // namespace

std::string InstanceToJson(const Instance& inst) {
  const int n = inst.num_buyers();
  const int m = inst.num_items();
  json dists = json::array();
  for (int i = 0; i < n; ++i) {
    json row = json::array();
    for (int j = 0; j < m; ++j) {
      row.push_back({{"support", RationalsToJson(inst.dist(i, j).support())},
                     {"probs", RationalsToJson(inst.dist(i, j).probs())}});
    }
    dists.push_back(row);
  }
  json costs = json::array();
  for (const CostAtom& a : inst.costs().atoms()) {
    costs.push_back({{"vector", RationalsToJson(a.costs)},
                     {"prob", FormatRational(a.prob)}});
  }
  json families = json::array();
  for (int i = 0; i < n; ++i) families.push_back(FamilyToJson(inst.family(i)));
  json out = {{"n", n},
              {"m", m},
              {"dists", dists},
              {"costs", costs},
              {"families", families}};
  return out.dump(1);
}

Instance InstanceFromJson(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("instance is not valid JSON: ") + e.what());
  }
  try {
    const int n = Field(j, "n").get<int>();
    const int m = Field(j, "m").get<int>();
    if (n < 1 || m < 1) throw InvalidInput("n and m must be positive");
    const json& jd = Field(j, "dists");
    if (!jd.is_array() || static_cast<int>(jd.size()) != n) {
      throw InvalidInput("'dists' needs one row per buyer");
    }
    std::vector<std::vector<DiscreteDist>> dists(n);
    for (int i = 0; i < n; ++i) {
      if (!jd[i].is_array() || static_cast<int>(jd[i].size()) != m) {
        throw InvalidInput("'dists' row needs one entry per item");
      }
      for (int j2 = 0; j2 < m; ++j2) {
        dists[i].emplace_back(RationalsFromJson(Field(jd[i][j2], "support")),
                              RationalsFromJson(Field(jd[i][j2], "probs")));
      }
    }
    std::vector<CostAtom> atoms;
    for (const auto& a : Field(j, "costs")) {
      atoms.push_back(CostAtom{RationalsFromJson(Field(a, "vector")),
                               RationalFromJson(Field(a, "prob"))});
    }
    std::vector<FeasibilityFamily> families;
    const json& jf = Field(j, "families");
    if (!jf.is_array() || static_cast<int>(jf.size()) != n) {
      throw InvalidInput("'families' needs one entry per buyer");
    }
    for (const auto& f : jf) families.push_back(FamilyFromJson(f, m));
    return Instance(n, m, std::move(dists), CostModel(m, std::move(atoms)),
                    std::move(families));
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed instance: ") + e.what());
  }
}

Instance LoadInstance(const std::string& path) {
  return InstanceFromJson(internal::ReadFile(path));
}

void SaveInstance(const Instance& inst, const std::string& path) {
  internal::WriteFile(path, InstanceToJson(inst) + "\n");
}

}  // namespace permitlab
