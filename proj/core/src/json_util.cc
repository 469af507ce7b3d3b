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

#include "json_util.h"

#include <fstream>
#include <sstream>

namespace permitlab::internal {

Rational RationalFromJson(const nlohmann::json& j) {
  if (j.is_string()) return ParseRational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_number_float()) return ParseRational(j.dump());
  throw InvalidInput("expected a rational, got " + j.dump());
}

nlohmann::json RationalToJson(const Rational& r) { return FormatRational(r); }

std::vector<Rational> RationalsFromJson(const nlohmann::json& j) {
  if (!j.is_array()) throw InvalidInput("expected an array, got " + j.dump());
  std::vector<Rational> out;
  for (const auto& e : j) out.push_back(RationalFromJson(e));
  return out;
}

nlohmann::json RationalsToJson(const std::vector<Rational>& values) {
  nlohmann::json out = nlohmann::json::array();
  for (const Rational& v : values) out.push_back(FormatRational(v));
  return out;
}

ItemSet ItemSetFromJson(const nlohmann::json& j, int m) {
  if (!j.is_array()) throw InvalidInput("expected an item list, got " + j.dump());
  ItemSet s = 0;
  for (const auto& e : j) {
    if (!e.is_number_integer()) throw InvalidInput("bad item index " + e.dump());
    int item = e.get<int>();
    if (item < 0 || item >= m) {
      throw InvalidInput("item index out of range: " + std::to_string(item));
    }
    s |= Singleton(item);
  }
  return s;
}

nlohmann::json ItemSetToJson(ItemSet s, int m) {
  nlohmann::json out = nlohmann::json::array();
  for (int j = 0; j < m; ++j) {
    if (HasItem(s, j)) out.push_back(j);
  }
  return out;
}

const nlohmann::json& Field(const nlohmann::json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    throw InvalidInput(std::string("missing field '") + name + "'");
  }
  return j.at(name);
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path);
  out << text;
}

}  // namespace permitlab::internal
