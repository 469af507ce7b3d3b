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

#include <algorithm>
#include <filesystem>
#include <random>

#include "permitlab/errors.h"
#include "permitlab/harness.h"
#include "permitlab/instance_io.h"
#include "permitlab/reference_oracles.h"

namespace permitlab::harness {

namespace {

std::uint64_t Mix(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

int Uniform(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

DiscreteDist RandomDist(std::mt19937_64& rng, int support_max) {
  std::vector<int> grid = {1, 2, 3, 4, 5, 6, 7, 8};
  std::shuffle(grid.begin(), grid.end(), rng);
  int size = Uniform(rng, 1, support_max);
  std::vector<int> picked(grid.begin(), grid.begin() + size);
  std::sort(picked.begin(), picked.end());
  std::vector<Rational> support;
  std::vector<int> weights;
  int total = 0;
  for (int v : picked) {
    support.push_back(Frac(v, 2));
    weights.push_back(Uniform(rng, 1, 4));
    total += weights.back();
  }
  std::vector<Rational> probs;
  for (int w : weights) probs.push_back(Frac(w, total));
  return DiscreteDist(support, probs);
}

CostModel RandomCosts(std::mt19937_64& rng, int m, int costs_max) {
  int count = Uniform(rng, 1, costs_max);
  std::vector<std::vector<int>> seen;
  std::vector<CostAtom> atoms;
  std::vector<int> weights;
  int total = 0;
  for (int a = 0; a < count; ++a) {
    std::vector<int> raw(m);
    for (int attempt = 0; attempt < 20; ++attempt) {
      for (int j = 0; j < m; ++j) raw[j] = Uniform(rng, 0, 6);
      if (std::find(seen.begin(), seen.end(), raw) == seen.end()) break;
    }
    if (std::find(seen.begin(), seen.end(), raw) != seen.end()) continue;
    seen.push_back(raw);
    CostAtom atom;
    for (int v : raw) atom.costs.push_back(Frac(v, 2));
    atoms.push_back(atom);
    weights.push_back(Uniform(rng, 1, 3));
    total += weights.back();
  }
  for (size_t a = 0; a < atoms.size(); ++a) atoms[a].prob = Frac(weights[a], total);
  return CostModel(m, atoms);
}

FeasibilityFamily RandomMatroid(std::mt19937_64& rng, int m) {
  if (Uniform(rng, 0, 1) == 0) return FeasibilityFamily::Uniform(m, Uniform(rng, 1, m));
  int parts = Uniform(rng, 1, m);
  std::vector<ItemSet> sets(parts, 0);
  for (int j = 0; j < m; ++j) sets[j < parts ? j : Uniform(rng, 0, parts - 1)] |= Singleton(j);
  std::vector<int> caps;
  for (ItemSet s : sets) caps.push_back(Uniform(rng, 0, SetSize(s)));
  return FeasibilityFamily::Partition(m, sets, caps);
}

FeasibilityFamily RandomFamily(std::mt19937_64& rng, int m, FamilyMode mode) {
  switch (mode) {
    case FamilyMode::kAdditive:
      return FeasibilityFamily::Additive(m);
    case FamilyMode::kMatroid:
      return RandomMatroid(rng, m);
    case FamilyMode::kDownwardClosed:
      break;
  }
  if (Uniform(rng, 0, 3) == 0) return FeasibilityFamily::Additive(m);
  int count = Uniform(rng, 1, 3);
  std::vector<ItemSet> bases;
  for (int b = 0; b < count; ++b) bases.push_back(Uniform(rng, 1, (1 << m) - 1));
  return FeasibilityFamily::FromBases(m, bases);
}

void CheckParams(const GeneratorParams& p) {
  if (p.count < 0 || p.n_min < 1 || p.n_max < p.n_min || p.m_min < 1 || p.m_max < p.m_min ||
      p.support_max < 1 || p.support_max > 8 || p.costs_max < 1 || p.n_max * p.m_max > 12) {
    throw InvalidInput("invalid generator bounds");
  }
}

}  // namespace

Instance RandomInstance(const GeneratorParams& params, std::uint64_t seed) {
  CheckParams(params);
  std::mt19937_64 rng(seed);
  int n = Uniform(rng, params.n_min, params.n_max);
  int m = Uniform(rng, params.m_min, params.m_max);
  std::vector<std::vector<DiscreteDist>> dists(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) dists[i].push_back(RandomDist(rng, params.support_max));
  }
  CostModel costs = RandomCosts(rng, m, params.costs_max);
  std::vector<FeasibilityFamily> families;
  for (int i = 0; i < n; ++i) families.push_back(RandomFamily(rng, m, params.family));
  return Instance(n, m, dists, costs, families);
}

std::vector<NamedInstance> GenerateCorpus(const GeneratorParams& params, std::uint64_t seed,
                                          const std::string& prefix) {
  CheckParams(params);
  std::vector<NamedInstance> out;
  for (int k = 0; k < params.count; ++k) {
    char id[64];
    std::snprintf(id, sizeof(id), "%s_%04d", prefix.c_str(), k);
    out.push_back({id, RandomInstance(params, Mix(seed, k))});
  }
  return out;
}

std::vector<NamedInstance> MatroidPairCorpus(std::uint64_t seed) {
  std::vector<FeasibilityFamily> fams = {
      FeasibilityFamily::Additive(2),
      FeasibilityFamily::Uniform(2, 1),
      FeasibilityFamily::Partition(2, {Singleton(0), Singleton(1)}, {1, 0}),
      FeasibilityFamily::Partition(2, {Singleton(0), Singleton(1)}, {0, 1}),
      FeasibilityFamily::Partition(2, {FullSet(2)}, {0}),
  };
  std::vector<NamedInstance> out;
  std::mt19937_64 rng(seed);
  for (size_t a = 0; a < fams.size(); ++a) {
    for (size_t b = 0; b < fams.size(); ++b) {
      std::vector<std::vector<DiscreteDist>> dists(2);
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) dists[i].push_back(RandomDist(rng, 2));
      }
      char id[64];
      std::snprintf(id, sizeof(id), "matroids_%zu_%zu", a, b);
      out.push_back({id, Instance(2, 2, dists, RandomCosts(rng, 2, 2), {fams[a], fams[b]})});
    }
  }
  return out;
}

std::vector<NamedInstance> BundleGapCorpus() {
  std::vector<NamedInstance> out;
  for (int m : {2, 4, 8}) out.push_back({"bundle_gap_m" + std::to_string(m), BundleGapInstance(m, 6)});
  return out;
}

void WriteCorpus(const std::vector<NamedInstance>& corpus, const std::string& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& item : corpus) {
    SaveInstance(item.inst, (std::filesystem::path(dir) / (item.id + ".json")).string());
  }
}

std::vector<NamedInstance> ReadCorpus(const std::string& dir) {
  if (!std::filesystem::is_directory(dir)) throw InvalidInput("no corpus directory " + dir);
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<NamedInstance> out;
  for (const auto& f : files) out.push_back({f.stem().string(), LoadInstance(f.string())});
  return out;
}

}  // namespace permitlab::harness
