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

// Runs every suite on the default corpora and prints one line per criterion.

#include <chrono>
#include <cmath>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "permitlab/harness.h"

namespace {

using permitlab::harness::SuiteReport;

struct Tally {
  long instances = 0;
  long checks = 0;
  long failed = 0;
};

Tally Count(const SuiteReport& r, const std::string& prefix = "") {
  Tally t;
  t.instances = static_cast<long>(r.rows.size());
  for (const auto& row : r.rows) {
    if (row.advisory_checks) continue;
    for (const auto& c : row.checks) {
      if (c.name.rfind(prefix, 0) != 0) continue;
      ++t.checks;
      if (!c.passed) ++t.failed;
    }
  }
  for (const auto& c : r.aggregate) {
    if (c.name.rfind(prefix, 0) != 0) continue;
    ++t.checks;
    if (!c.passed) ++t.failed;
  }
  return t;
}

void FirstFailures(const SuiteReport& r, std::ostream& out) {
  int shown = 0;
  for (const auto& row : r.rows) {
    for (const auto& c : row.checks) {
      if (c.passed || shown >= 3) continue;
      out << "    " << row.id << " " << c.name << ": " << c.lhs << " vs " << c.rhs << "\n";
      ++shown;
    }
  }
  for (const auto& c : r.aggregate) {
    if (!c.passed) out << "    aggregate " << c.name << ": " << c.lhs << " vs " << c.rhs << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance"};
  int jobs = 1;
  std::uint64_t seed = 1;
  long samples = 100000;
  app.add_option("--jobs", jobs);
  app.add_option("--seed", seed);
  app.add_option("--samples", samples);
  CLI11_PARSE(app, argc, argv);

  permitlab::harness::SuiteOptions options;
  options.jobs = jobs;
  options.seed = seed;
  options.mc_samples = samples;

  std::map<std::string, SuiteReport> reports;
  std::map<std::string, double> seconds;
  for (const std::string& suite : permitlab::harness::SuiteNames()) {
    auto start = std::chrono::steady_clock::now();
    try {
      reports[suite] = permitlab::harness::RunSuite(suite, permitlab::harness::DefaultCorpus(suite, seed), options);
    } catch (const std::exception& e) {
      SuiteReport failed;
      failed.suite = suite;
      failed.passed = false;
      failed.aggregate.push_back({"aborted", false, e.what(), ""});
      reports[suite] = failed;
    }
    seconds[suite] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }

  bool all = true;
  auto line = [&](int number, const std::string& suite, bool ok, const std::string& detail) {
    all = all && ok;
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << number << ": " << detail << "\n";
    if (!ok) FirstFailures(reports[suite], std::cout);
  };
  auto standard = [&](int number, const std::string& suite, long min_instances, const std::string& what) {
    Tally t = Count(reports[suite]);
    bool ok = reports[suite].passed && t.failed == 0 && t.instances >= min_instances && t.checks > 0;
    std::ostringstream d;
    d << what << " [" << suite << "] " << t.instances << " instances (min " << min_instances << "), "
      << t.failed << "/" << t.checks << " checks failed, tolerance 0 (exact)";
    line(number, suite, ok, d.str());
  };

  {
    Tally t = Count(reports["benchmark"]);
    double secs = seconds["benchmark"];
    bool ok = reports["benchmark"].passed && t.failed == 0 && t.instances >= 200 && secs < 600;
    std::ostringstream d;
    d << "benchmark validity [benchmark] " << t.instances << " instances (min 200), " << t.failed << "/" << t.checks
      << " checks failed, tolerance 0 (exact), " << std::round(secs * 10) / 10 << "s (limit 600s)";
    line(1, "benchmark", ok, d.str());
  }
  standard(2, "single_additive", 100, "single buyer additive");
  standard(3, "single_constrained", 100, "single buyer constrained additive");
  standard(4, "copies_bound", 1, "copies chain");
  {
    Tally a = Count(reports["single_additive"], "conversion_");
    Tally b = Count(reports["single_constrained"], "conversion_");
    bool ok = a.failed + b.failed == 0 && a.checks > 0 && b.checks > 0;
    std::ostringstream d;
    d << "permit conversion [single_additive, single_constrained] " << a.failed + b.failed << "/"
      << a.checks + b.checks << " conversion checks failed, tolerance 0 (exact)";
    line(5, "single_additive", ok, d.str());
  }
  standard(6, "vbar_properties", 50, "surplus function properties");
  standard(7, "multi_buyer", 50, "multi-buyer chain");
  standard(8, "ocrs", 1, "OCRS selectability");
  standard(9, "bundle_gap", 3, "bundle gap");
  standard(10, "single_item", 50, "single item exactness");
  {
    const SuiteReport& r = reports["monte_carlo"];
    long covered = 0;
    for (const auto& row : r.rows) {
      for (const auto& c : row.checks) {
        if (c.name == "mc_interval_covers_exact" && c.passed) ++covered;
      }
    }
    const long n = static_cast<long>(r.rows.size());
    bool ok = r.passed && n >= 20 && Count(r).failed == 0;
    std::ostringstream d;
    d << "Monte Carlo coverage [monte_carlo] " << covered << "/" << n << " intervals cover (min "
      << (9 * n + 9) / 10 << "), 99% normal interval, " << samples << " samples";
    line(11, "monte_carlo", ok, d.str());
  }
  std::cout << (all ? "ALL PASS" : "SOME FAILED") << "\n";
  return all ? 0 : 1;
}
