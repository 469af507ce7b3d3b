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

#ifndef PERMITLAB_MECHANISM_IO_H_
#define PERMITLAB_MECHANISM_IO_H_

#include <string>
#include <string_view>

#include "permitlab/core_model.h"
#include "permitlab/mechanisms.h"

namespace permitlab {

// Fields missing from the JSON take their DefaultSpec values.
std::string SpecToJson(const Instance& inst, const MechanismSpec& spec);
MechanismSpec SpecFromJson(const Instance& inst, std::string_view text);

MechanismSpec LoadSpec(const Instance& inst, const std::string& path);
void SaveSpec(const Instance& inst, const MechanismSpec& spec,
              const std::string& path);

}  // namespace permitlab

#endif  // PERMITLAB_MECHANISM_IO_H_
