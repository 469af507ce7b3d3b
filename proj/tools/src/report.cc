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

#include <sstream>

#include <json.hpp>

#include "permitlab/harness.h"

namespace permitlab::harness {

const std::vector<std::string> kCsvColumns = {
    "instance_id", "opt_profit", "ip",   "pp",           "pb",      "csip", "rspp",
    "spb",         "most_surplus", "prophet", "less_surplus", "tail", "core", "checks_passed"};

std::string ReportCsv(const SuiteReport& report) {
  std::ostringstream out;
  for (size_t k = 0; k < kCsvColumns.size(); ++k) out << (k ? "," : "") << kCsvColumns[k];
  out << '\n';
  for (const auto& row : report.rows) {
    out << row.id;
    for (size_t k = 1; k + 1 < kCsvColumns.size(); ++k) {
      out << ',';
      auto it = row.columns.find(kCsvColumns[k]);
      if (it != row.columns.end()) out << FormatRational(it->second);
    }
    long passed = 0;
    for (const auto& check : row.checks) passed += check.passed ? 1 : 0;
    out << ',' << passed << '/' << row.checks.size() << '\n';
  }
  return out.str();
}

namespace {

nlohmann::json CheckJson(const CheckResult& check) {
  return {{"name", check.name}, {"passed", check.passed}, {"lhs", check.lhs}, {"rhs", check.rhs}};
}

}  // namespace

std::string ReportJson(const SuiteReport& report) {
  nlohmann::json out;
  out["suite"] = report.suite;
  out["passed"] = report.passed;
  out["checks_total"] = report.checks_total;
  out["checks_failed"] = report.checks_failed;
  out["summary"] = report.summary;
  out["aggregate"] = nlohmann::json::array();
  for (const auto& check : report.aggregate) out["aggregate"].push_back(CheckJson(check));
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& row : report.rows) {
    for (const auto& check : row.checks) {
      if (check.passed) continue;
      nlohmann::json f = CheckJson(check);
      f["instance"] = row.id;
      f["advisory"] = row.advisory_checks;
      failures.push_back(f);
    }
  }
  out["failures"] = failures;
  return out.dump(2) + "\n";
}

}  // namespace permitlab::harness
