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

#ifndef PERMITLAB_INSTANCE_IO_H_
#define PERMITLAB_INSTANCE_IO_H_

#include <string>
#include <string_view>

#include "permitlab/core_model.h"

namespace permitlab {

// JSON layout:
//   {"n": 1, "m": 2,
//    "dists": [[{"support": ["1/1", "2/1"], "probs": ["1/2", "1/2"]}, ...]],
//    "costs": [{"vector": ["0/1", "1/1"], "prob": "1/1"}],
//    "families": [{"kind": "uniform", "params": {"rank": 1}}]}
// Family kinds: "additive" {}, "uniform" {"rank"}, "partition" {"parts",
// "capacities"}, "bases" {"bases"}, "explicit" {"members"}. Item sets are
// lists of 0-based item indices. Rationals are "p/q" strings; plain numbers
// are accepted on input.
std::string InstanceToJson(const Instance& inst);
Instance InstanceFromJson(std::string_view text);

Instance LoadInstance(const std::string& path);
void SaveInstance(const Instance& inst, const std::string& path);

}  // namespace permitlab

#endif  // PERMITLAB_INSTANCE_IO_H_
