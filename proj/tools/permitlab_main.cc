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

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "permitlab/errors.h"
#include "permitlab/harness.h"
#include "permitlab/instance_io.h"
#include "permitlab/mechanism_io.h"
#include "permitlab/mechanisms.h"
#include "permitlab/profit_lp.h"

namespace fs = std::filesystem;
using namespace permitlab;
using namespace permitlab::harness;

namespace {

void WriteText(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out << text;
}

std::vector<std::string> ExpandSuites(const std::string& suite) {
  if (suite == "all") return SuiteNames();
  for (const auto& name : SuiteNames()) {
    if (name == suite) return {suite};
  }
  throw InvalidInput("unknown suite '" + suite + "'");
}

void PrintFailures(const SuiteReport& report) {
  for (const auto& row : report.rows) {
    for (const auto& check : row.checks) {
      if (!check.passed) {
        std::cout << "  " << (row.advisory_checks ? "advisory " : "FAILED ") << row.id << " "
                  << check.name << ": " << check.lhs << " vs " << check.rhs << "\n";
      }
    }
  }
  for (const auto& check : report.aggregate) {
    std::cout << "  " << (check.passed ? "ok " : "FAILED ") << check.name << ": " << check.lhs
              << " vs " << check.rhs << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"permitlab: profit-maximization mechanisms laboratory"};
  app.require_subcommand(1);
  std::uint64_t seed = 1;
  std::string out_dir = "out";
  std::string suite = "all";
  std::string instance_path;
  std::string corpus_dir;
  std::string spec_path;
  std::string kind_name;
  int jobs = 1;
  long samples = 100000;
  int count = 0;

  auto* generate = app.add_subcommand("generate", "write a suite's default corpus as JSON files");
  generate->add_option("--suite", suite, "suite whose corpus is generated")->required();
  generate->add_option("--seed", seed, "generator seed");
  generate->add_option("--out", out_dir, "output directory");
  generate->add_option("--count", count, "keep only the first N instances");

  auto* run = app.add_subcommand("run", "run a verification suite and write CSV and JSON reports");
  run->add_option("--suite", suite, "suite name or 'all'");
  run->add_option("--seed", seed, "corpus and Monte Carlo seed");
  run->add_option("--out", out_dir, "report directory");
  run->add_option("--corpus", corpus_dir, "read instances from this directory");
  run->add_option("--instance", instance_path, "run on a single instance file");
  run->add_option("--jobs", jobs, "worker threads");
  run->add_option("--samples", samples, "Monte Carlo samples");

  auto* verify = app.add_subcommand("verify", "run every applicable suite on one instance");
  verify->add_option("--instance", instance_path, "instance file")->required();
  verify->add_option("--seed", seed, "Monte Carlo seed");
  verify->add_option("--samples", samples, "Monte Carlo samples");
  verify->add_option("--out", out_dir, "report directory");

  auto* eval = app.add_subcommand("eval", "evaluate a mechanism on an instance");
  eval->add_option("--instance", instance_path, "instance file")->required();
  eval->add_option("--spec", spec_path, "mechanism spec file");
  eval->add_option("--kind", kind_name, "search the best mechanism of this kind instead");
  eval->add_option("--samples", samples, "Monte Carlo samples (0 to skip)");
  eval->add_option("--seed", seed, "Monte Carlo seed");
  eval->add_option("--out", out_dir, "write the mechanism spec here when searching");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) {
      auto corpus = DefaultCorpus(suite, seed);
      if (count > 0 && static_cast<size_t>(count) < corpus.size()) corpus.resize(count);
      WriteCorpus(corpus, out_dir);
      std::cout << "wrote " << corpus.size() << " instances to " << out_dir << "\n";
      return 0;
    }
    if (eval->parsed()) {
      Instance inst = LoadInstance(instance_path);
      MechanismSpec spec;
      if (!kind_name.empty()) {
        MechanismKind kind = ParseMechanismKind(kind_name);
        SearchResult found = SearchBest(inst, kind, DefaultGrid(inst));
        spec = found.spec;
        if (app.get_subcommand("eval")->count("--out") > 0) {
          fs::create_directories(out_dir);
          SaveSpec(inst, spec, (fs::path(out_dir) / "spec.json").string());
        }
      } else if (!spec_path.empty()) {
        spec = LoadSpec(inst, spec_path);
      } else {
        throw InvalidInput("eval needs --spec or --kind");
      }
      EvalResult result = Evaluate(inst, spec);
      std::cout << "kind " << MechanismKindName(spec.kind) << "\n";
      std::cout << "profit " << FormatRational(result.profit) << "\n";
      for (int i = 0; i < inst.num_buyers(); ++i) {
        std::cout << "buyer " << i << " revenue " << FormatRational(result.revenue[i]) << " cost "
                  << FormatRational(result.cost[i]) << "\n";
      }
      if (samples > 0) {
        MonteCarloResult mc = MonteCarloProfit(inst, spec, samples, seed);
        std::cout << "monte_carlo mean " << mc.mean << " interval [" << mc.lower << ", "
                  << mc.upper << "] samples " << mc.samples << "\n";
      }
      return 0;
    }
    SuiteOptions options;
    options.seed = seed;
    options.jobs = jobs;
    options.mc_samples = samples;
    options.failure_dir = (fs::path(out_dir) / "failures").string();
    std::vector<std::string> suites;
    std::vector<NamedInstance> fixed;
    bool use_fixed = false;
    if (verify->parsed()) {
      fixed.push_back({fs::path(instance_path).stem().string(), LoadInstance(instance_path)});
      use_fixed = true;
      // bundle_gap compares several instances, so a single file skips it.
      for (const auto& name : SuiteNames()) {
        if (name != "bundle_gap" && SuiteApplies(name, fixed.front().inst)) suites.push_back(name);
      }
    } else {
      suites = ExpandSuites(suite);
      if (!instance_path.empty()) {
        fixed.push_back({fs::path(instance_path).stem().string(), LoadInstance(instance_path)});
        use_fixed = true;
      } else if (!corpus_dir.empty()) {
        fixed = ReadCorpus(corpus_dir);
        use_fixed = true;
      }
    }
    bool all_passed = true;
    for (const auto& name : suites) {
      auto corpus = use_fixed ? fixed : DefaultCorpus(name, seed);
      SuiteReport report = RunSuite(name, corpus, options);
      if (run->parsed()) {
        WriteText(fs::path(out_dir) / (name + ".csv"), ReportCsv(report));
        WriteText(fs::path(out_dir) / (name + ".json"), ReportJson(report));
      }
      std::cout << (report.passed ? "PASS " : "FAIL ") << name << ": " << report.rows.size()
                << " instances, " << report.checks_failed << "/" << report.checks_total
                << " checks failed";
      for (const auto& [key, value] : report.summary) {
        if (key.rfind("worst_", 0) == 0) std::cout << ", " << key << " " << value;
      }
      std::cout << "\n";
      PrintFailures(report);
      all_passed = all_passed && report.passed;
    }
    return all_passed ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
