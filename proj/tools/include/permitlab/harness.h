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

#ifndef PERMITLAB_HARNESS_H_
#define PERMITLAB_HARNESS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "permitlab/core_model.h"
#include "permitlab/rational.h"

namespace permitlab::harness {

enum class FamilyMode { kAdditive, kDownwardClosed, kMatroid };

struct GeneratorParams {
  int count = 20;
  int n_min = 1;
  int n_max = 2;
  int m_min = 1;
  int m_max = 2;
  int support_max = 3;
  int costs_max = 2;
  FamilyMode family = FamilyMode::kDownwardClosed;
};

struct NamedInstance {
  std::string id;
  Instance inst;
};

Instance RandomInstance(const GeneratorParams& params, std::uint64_t seed);
std::vector<NamedInstance> GenerateCorpus(const GeneratorParams& params,
                                          std::uint64_t seed,
                                          const std::string& prefix = "inst");
// One instance per pair of two-item matroid families, two buyers.
std::vector<NamedInstance> MatroidPairCorpus(std::uint64_t seed);
// Bundle-gap family with truncation 6 for m in {2, 4, 8}.
std::vector<NamedInstance> BundleGapCorpus();

void WriteCorpus(const std::vector<NamedInstance>& corpus, const std::string& dir);
// Reads every *.json file of `dir`, sorted by name.
std::vector<NamedInstance> ReadCorpus(const std::string& dir);

struct CheckResult {
  std::string name;
  bool passed = false;
  // Both sides of the checked relation.
  std::string lhs;
  std::string rhs;
};

struct InstanceRow {
  std::string id;
  std::map<std::string, Rational> columns;
  std::vector<CheckResult> checks;
  // Checks whose individual failure does not fail the suite.
  bool advisory_checks = false;
};

struct SuiteReport {
  std::string suite;
  std::vector<InstanceRow> rows;
  std::vector<CheckResult> aggregate;
  std::map<std::string, std::string> summary;
  long checks_total = 0;
  long checks_failed = 0;
  bool passed = true;
};

struct SuiteOptions {
  int jobs = 1;
  std::uint64_t seed = 1;
  long mc_samples = 100000;
  // Where failing instances are written; empty means nowhere.
  std::string failure_dir;
};

class SuiteAborted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> SuiteNames();
// Corpus used by a suite when no instance source is given.
std::vector<NamedInstance> DefaultCorpus(const std::string& suite, std::uint64_t seed);
// Whether the suite's preconditions accept the instance.
bool SuiteApplies(const std::string& suite, const Instance& inst);
InstanceRow RunInstance(const std::string& suite, const NamedInstance& item,
                        const SuiteOptions& options, long index);
// Runs every instance, sorted by id; rethrows internal errors as SuiteAborted
// after serializing the instance to options.failure_dir.
SuiteReport RunSuite(const std::string& suite, const std::vector<NamedInstance>& corpus,
                     const SuiteOptions& options);

extern const std::vector<std::string> kCsvColumns;
std::string ReportCsv(const SuiteReport& report);
std::string ReportJson(const SuiteReport& report);

}  // namespace permitlab::harness

#endif  // PERMITLAB_HARNESS_H_
