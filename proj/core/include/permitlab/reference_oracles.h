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

#ifndef PERMITLAB_REFERENCE_ORACLES_H_
#define PERMITLAB_REFERENCE_ORACLES_H_

#include <string>

#include "permitlab/core_model.h"
#include "permitlab/mechanisms.h"
#include "permitlab/profit_lp.h"
#include "permitlab/rational.h"

namespace permitlab {

struct OracleResult {
  std::string quantity;
  Rational value;
  long enumeration_size = 0;
  std::string method;
};

// Single buyer, kind in {IP, PP, PB}. Enumerates the full price grid.
OracleResult BrutePostedPriceOpt(const Instance& inst, MechanismKind kind);

// Truncated equal-revenue values on {1, 2, ..., 2^K} for every item of one
// additive buyer; cost atom j puts cost 0 on item j and a prohibitive cost
// elsewhere, each with probability 1/m.
Instance BundleGapInstance(int m, int K);

struct BenchmarkRecompute {
  OracleResult most_surplus;
  OracleResult prophet;
  OracleResult less_surplus;
};
// Recomputes the three benchmark terms without the benchmark module. With
// zero_thresholds every beta is 0.
BenchmarkRecompute DirectBenchmarkRecompute(const Instance& inst,
                                            const DirectMechanism& mech,
                                            bool zero_thresholds = false);

}  // namespace permitlab

#endif  // PERMITLAB_REFERENCE_ORACLES_H_
