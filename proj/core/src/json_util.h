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

#ifndef PERMITLAB_JSON_UTIL_H_
#define PERMITLAB_JSON_UTIL_H_

#include <string>
#include <vector>

#include "json.hpp"
#include "permitlab/core_model.h"
#include "permitlab/errors.h"
#include "permitlab/rational.h"

namespace permitlab::internal {

Rational RationalFromJson(const nlohmann::json& j);
nlohmann::json RationalToJson(const Rational& r);
std::vector<Rational> RationalsFromJson(const nlohmann::json& j);
nlohmann::json RationalsToJson(const std::vector<Rational>& values);
ItemSet ItemSetFromJson(const nlohmann::json& j, int m);
nlohmann::json ItemSetToJson(ItemSet s, int m);
const nlohmann::json& Field(const nlohmann::json& j, const char* name);
std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, const std::string& text);

}  // namespace permitlab::internal

#endif  // PERMITLAB_JSON_UTIL_H_
